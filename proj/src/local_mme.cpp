// local_mme.cpp

#include "qheat/local_mme.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "qheat/bath.hpp"
#include "qheat/error.hpp"

namespace qheat::local {

LocalRates local_rates(const NetworkParams& params)
{
    const double delta = delta_sign(params.statistics);
    LocalRates r;
    r.gamma_h = rate(hot_bath(params), params.omega_h);
    r.gamma_c = rate(cold_bath(params), params.omega_c);
    r.boltz_h = std::exp(-params.omega_h / params.T_h);
    r.boltz_c = std::exp(-params.omega_c / params.T_c);
    r.Gamma_h = r.gamma_h * (1.0 + delta * r.boltz_h);
    r.Gamma_c = r.gamma_c * (1.0 + delta * r.boltz_c);
    return r;
}

MomentState moment_rhs(const NetworkParams& params, const MomentState& s)
{
    const LocalRates r = local_rates(params);
    const double eps = params.epsilon;
    const double detuning = params.omega_h - params.omega_c;
    const double coherence_decay = 0.5 * (r.Gamma_h + r.Gamma_c);

    MomentState d;
    d.nA = -r.Gamma_h * s.nA + r.gamma_h * r.boltz_h - eps * s.Y;
    d.nB = -r.Gamma_c * s.nB + r.gamma_c * r.boltz_c + eps * s.Y;
    d.X = -coherence_decay * s.X + detuning * s.Y;
    d.Y = -coherence_decay * s.Y - detuning * s.X + 2.0 * eps * (s.nA - s.nB);
    return d;
}

LocalSteadyState steady_state(const NetworkParams& params)
{
    validate(params);
    const LocalRates r = local_rates(params);
    if (!(r.Gamma_h > 0.0) || !(r.Gamma_c > 0.0)) {
        throw Error(ErrorKind::SingularSystem, "relaxation rates must be positive");
    }
    const double delta = delta_sign(params.statistics);
    const double eps = params.epsilon;
    const double detuning = params.omega_h - params.omega_c;
    const double coherence_decay = 0.5 * (r.Gamma_h + r.Gamma_c);

    const double xh = params.omega_h / params.T_h;
    const double xc = params.omega_c / params.T_c;
    const double nA_th = thermal_occupation(params.statistics, params.omega_h, params.T_h);
    const double nB_th = thermal_occupation(params.statistics, params.omega_c, params.T_c);
    // nA_th - nB_th = nB_th * e^{xh}/(e^{xh}+delta) * (e^{xc-xh} - 1), cancellation-free
    const double thermal_gap = nB_th / (1.0 + delta * r.boltz_h) * std::expm1(xc - xh);

    // Unknowns are deviations from the decoupled thermal point, so the
    // O(eps^2) currents keep full relative precision. The population and X
    // equations are eliminated in favour of Y; every denominator is a sum of
    // positive terms. (A pivoted 4x4 LU picks 2 eps over Gamma_h as pivot for
    // weak baths and loses ~1e-9 relative accuracy in the currents.)
    const double y_denominator = 2.0 * eps * eps * (1.0 / r.Gamma_h + 1.0 / r.Gamma_c)
                                 + detuning * detuning / coherence_decay + coherence_decay;
    Eigen::Vector4d dev;
    dev(3) = 2.0 * eps * thermal_gap / y_denominator;
    dev(0) = -eps * dev(3) / r.Gamma_h;
    dev(1) = eps * dev(3) / r.Gamma_c;
    dev(2) = detuning * dev(3) / coherence_decay;
    if (!dev.allFinite()) {
        throw Error(ErrorKind::SingularSystem, "moment system could not be solved");
    }

    LocalSteadyState out;
    out.moments = {nA_th + dev(0), nB_th + dev(1), dev(2), dev(3)};
    // J_l = Tr[(L_l rho)(H_0 + H_AB)]; the thermal parts of the population
    // terms cancel identically.
    out.J_h = -params.omega_h * r.Gamma_h * dev(0) - 0.5 * eps * r.Gamma_h * dev(2);
    out.J_c = -params.omega_c * r.Gamma_c * dev(1) - 0.5 * eps * r.Gamma_c * dev(2);
    out.prefactor_F = heat_current_closed_form(params).prefactor_F;
    out.sigma = entropy_production(params, out.J_h, out.J_c);
    return out;
}

ClosedFormCurrent heat_current_closed_form(const NetworkParams& params)
{
    validate(params);
    const LocalRates r = local_rates(params);
    const double d = delta_sign(params.statistics);
    const double eps = params.epsilon;
    const double eps2 = eps * eps;
    const double wh = params.omega_h;
    const double wc = params.omega_c;
    const double gh = r.gamma_h;
    const double gc = r.gamma_c;
    const double xh = wh / params.T_h;
    const double xc = wc / params.T_c;
    const double Eh = std::exp(xh);
    const double Ec = std::exp(xc);
    const double Ehd = Eh + d;
    const double Ecd = Ec + d;

    const double numerator =
        4.0 * eps2 * gc * gh * Ec * Eh * (wc * gh * Ec * Ehd + gc * wh * Eh * Ecd);
    const double denominator =
        gc * gc * gc * gh * Eh * Eh * Ecd * Ecd * Ecd * Ehd
        + 2.0 * gc * gc * Ecd * Ecd * Ec * Eh * (gh * gh * Ehd * Ehd + 2.0 * eps2 * Eh * Eh)
        + gc * gh * Ec * Ec * Ecd * Ehd
              * (4.0 * Eh * Eh * ((wc - wh) * (wc - wh) + 2.0 * eps2) + gh * gh * Ehd * Ehd)
        + 4.0 * eps2 * gh * gh * Ec * Ec * Ec * Eh * Ehd * Ehd;

    ClosedFormCurrent out;
    out.prefactor_F = numerator / denominator;
    // e^{xc} - e^{xh} written as e^{xh}(e^{xc-xh} - 1)
    out.J_h = Eh * std::expm1(xc - xh) * out.prefactor_F;
    return out;
}

std::vector<MomentState> evolve(const NetworkParams& params, const MomentState& initial,
                                double dt, int steps)
{
    validate(params);
    if (!(dt > 0.0) || steps < 0) throw Error(ErrorKind::InvalidInput, "evolve needs dt > 0, steps >= 0");

    auto axpy = [](const MomentState& x, double h, const MomentState& k) {
        return MomentState{x.nA + h * k.nA, x.nB + h * k.nB, x.X + h * k.X, x.Y + h * k.Y};
    };

    std::vector<MomentState> trajectory;
    trajectory.reserve(static_cast<std::size_t>(steps) + 1);
    trajectory.push_back(initial);
    MomentState s = initial;
    for (int i = 0; i < steps; ++i) {
        const MomentState k1 = moment_rhs(params, s);
        const MomentState k2 = moment_rhs(params, axpy(s, 0.5 * dt, k1));
        const MomentState k3 = moment_rhs(params, axpy(s, 0.5 * dt, k2));
        const MomentState k4 = moment_rhs(params, axpy(s, dt, k3));
        s.nA += dt / 6.0 * (k1.nA + 2.0 * k2.nA + 2.0 * k3.nA + k4.nA);
        s.nB += dt / 6.0 * (k1.nB + 2.0 * k2.nB + 2.0 * k3.nB + k4.nB);
        s.X += dt / 6.0 * (k1.X + 2.0 * k2.X + 2.0 * k3.X + k4.X);
        s.Y += dt / 6.0 * (k1.Y + 2.0 * k2.Y + 2.0 * k3.Y + k4.Y);
        trajectory.push_back(s);
    }
    return trajectory;
}

} // namespace qheat::local
