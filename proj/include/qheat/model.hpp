// model.hpp: physical parameters of the two-node network and its normal modes
//
// Units: hbar = k_B = 1. Frequencies and temperatures share one energy unit.

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

namespace qheat {

/// Node statistics. The commutation sign delta enters the moment equations:
/// a a^dag + delta a^dag a = 1, with delta = -1 for oscillators and +1 for
/// two-level systems.
enum class Statistics { Boson, TLS };

constexpr double delta_sign(Statistics s) noexcept
{
    return s == Statistics::Boson ? -1.0 : 1.0;
}

std::string_view to_string(Statistics s) noexcept;
Statistics parse_statistics(std::string_view text);

struct NetworkParams {
    double omega_h{10.0}; // node A frequency (hot side)
    double omega_c{5.0};  // node B frequency (cold side)
    double epsilon{1e-3}; // swap coupling eps (a^dag b + a b^dag)
    double T_h{12.0};
    double T_c{10.0};
    double kappa{1e-7};   // phonon bath constant
    Statistics statistics{Statistics::Boson};

    double beta_h() const noexcept { return 1.0 / T_h; }
    double beta_c() const noexcept { return 1.0 / T_c; }
};

/// Throws Error{NonPositiveParameter} or Error{NegativeCoupling}.
NetworkParams validate(const NetworkParams& params);

/// Diagonalization of the one-body Hamiltonian [[omega_h, eps], [eps, omega_c]]:
///   d_+ = a cos(theta) + b sin(theta),  d_- = b cos(theta) - a sin(theta),
/// with theta in [0, pi/2].
struct NormalModeBasis {
    double theta{0.0};
    double omega_plus{0.0};
    double omega_minus{0.0};
    double c2{1.0};
    double s2{0.0};

    double cos_theta() const;
    double sin_theta() const;
};

/// Throws GaplessSpectrum when omega_minus <= 0 and UnsupportedStatistics for TLS.
NormalModeBasis normal_mode_basis(const NetworkParams& params);

/// Steady-state entropy production rate -J_h/T_h - J_c/T_c. The internal
/// entropy is stationary and no matter is exchanged.
double entropy_production(const NetworkParams& params, double J_h, double J_c);

/// Thermal occupation 1/(e^{omega/T} + delta) of a single node.
double thermal_occupation(Statistics s, double omega, double T);

// Parameter ingestion: plain `key = value` lines, '#' comments. Keys not
// listed leave the corresponding field of `base` untouched.
NetworkParams parse_config(std::istream& in, NetworkParams base = {});
NetworkParams load_config(const std::string& path, NetworkParams base = {});

/// Sets one named field (omega_h, omega_c, epsilon, T_h, T_c, kappa).
void set_field(NetworkParams& params, std::string_view name, double value);
double get_field(const NetworkParams& params, std::string_view name);
bool is_field_name(std::string_view name) noexcept;

} // namespace qheat
