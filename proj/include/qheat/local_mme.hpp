// local_mme.hpp: local master equation: each node relaxes to its own bath
// with a dissipator built from the bare node operators.
//
// The network is closed under four moments: the populations <a^dag a>,
// <b^dag b> and the correlations X = <a^dag b + a b^dag>, Y = i<a^dag b - a b^dag>.

#pragma once

#include <vector>

#include "qheat/model.hpp"

namespace qheat::local {

struct MomentState {
    double nA{0.0};
    double nB{0.0};
    double X{0.0};
    double Y{0.0};
};

struct LocalSteadyState {
    MomentState moments;
    double J_h{0.0};
    double J_c{0.0};
    double prefactor_F{0.0}; // J_h = (e^{beta_c omega_c} - e^{beta_h omega_h}) F
    double sigma{0.0};
};

/// Bath rates evaluated at the bare node frequencies.
struct LocalRates {
    double gamma_h{0.0};
    double gamma_c{0.0};
    double boltz_h{0.0}; // e^{-beta_h omega_h}
    double boltz_c{0.0};
    double Gamma_h{0.0}; // gamma_h (1 + delta boltz_h): population relaxation rate
    double Gamma_c{0.0};
};

LocalRates local_rates(const NetworkParams& params);

/// Time derivative of the four moments.
MomentState moment_rhs(const NetworkParams& params, const MomentState& state);

/// Steady state from the 4x4 affine system, currents from the bath generators.
/// Throws SingularSystem if the solve fails.
LocalSteadyState steady_state(const NetworkParams& params);

struct ClosedFormCurrent {
    double J_h{0.0};
    double prefactor_F{0.0};
};

/// Explicit rational expression for the hot-bath current with the steady
/// state substituted in.
ClosedFormCurrent heat_current_closed_form(const NetworkParams& params);

/// Fixed-step RK4 trajectory of the moments; returns steps + 1 states
/// including the initial one.
std::vector<MomentState> evolve(const NetworkParams& params, const MomentState& initial,
                                double dt, int steps);

} // namespace qheat::local
