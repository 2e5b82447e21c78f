// bath.hpp: relaxation rates of a 3-D phonon bath with linear dispersion

#pragma once

#include "qheat/model.hpp"

namespace qheat {

struct BathSpec {
    double temperature{1.0};
    double kappa{1.0};
};

inline BathSpec hot_bath(const NetworkParams& p) { return {p.T_h, p.kappa}; }
inline BathSpec cold_bath(const NetworkParams& p) { return {p.T_c, p.kappa}; }

/// gamma(Omega) = kappa Omega^3 / (1 - e^{-Omega/T}).
/// Returns 0 at Omega = 0 (the analytic limit kappa T Omega^2 -> 0).
/// Throws NegativeFrequency for Omega < 0 and NonPositiveParameter for a bad bath.
double rate(const BathSpec& bath, double omega);

} // namespace qheat
