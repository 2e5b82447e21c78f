// global_mme.hpp: master equation derived in the eigenbasis of the coupled
// network. Each bath drives both normal modes d_+ and d_-, weighted by the
// overlap of the mode with the node the bath touches.

#pragma once

#include "qheat/model.hpp"

namespace qheat::global {

struct GlobalSteadyState {
    NormalModeBasis basis;
    double n_plus{0.0};
    double n_minus{0.0};
    double nA{0.0};
    double nB{0.0};
    double J_h{0.0};
    double J_c{0.0};
    double sigma{0.0};
    bool secular_warning{false};
};

/// Rates and Boltzmann factors seen by one normal mode.
struct ModeCoupling {
    double omega{0.0};
    double weight_h{0.0}; // cos^2 or sin^2 overlap with node A
    double weight_c{0.0};
    double gamma_h{0.0};  // gamma_h(omega), unweighted
    double gamma_c{0.0};
    double boltz_h{0.0};  // e^{-beta_h omega}
    double boltz_c{0.0};
};

struct ModeCouplings {
    NormalModeBasis basis;
    ModeCoupling plus;
    ModeCoupling minus;
};

/// Throws GaplessSpectrum or UnsupportedStatistics.
ModeCouplings mode_couplings(const NetworkParams& params);

/// Separation of the Bohr frequencies is below ten times the largest rate.
bool secular_warning(const ModeCouplings& modes);

GlobalSteadyState steady_state(const NetworkParams& params);

enum class Bath { Hot, Cold };

/// Tr[(L_bath rho) H_S] for a state diagonal in the normal-mode Fock basis
/// with populations n_plus, n_minus. Evaluated term by term from the
/// dissipator, with no use of the steady-state condition.
double bath_current(const ModeCouplings& modes, Bath bath, double n_plus, double n_minus);

/// Two-term closed-form hot-bath current.
double heat_current_closed_form(const NetworkParams& params);

/// Weights of one normal mode's contribution to a bath generator, written
/// in the local operators a, b:
///   a * D[a] + b * D[b] + cross * C[a, b]   (downward)
///   boltzmann * (a * D[a^dag] + b * D[b^dag] + cross * C[a^dag, b^dag])   (upward)
/// with D[L] rho = L rho L^dag - {L^dag L, rho}/2 and
/// C[A, B] rho = A rho B^dag + B rho A^dag - {A^dag B + B^dag A, rho}/2.
struct ChannelWeights {
    double a{0.0};
    double b{0.0};
    double cross{0.0};
    double boltzmann{0.0};
};

struct BathGenerator {
    ChannelWeights plus;
    ChannelWeights minus;
};

struct LocalBasisGenerator {
    NormalModeBasis basis;
    BathGenerator hot;
    BathGenerator cold;
};

LocalBasisGenerator local_basis_generator(const NetworkParams& params);

} // namespace qheat::global
