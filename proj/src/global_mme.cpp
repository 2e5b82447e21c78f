// global_mme.cpp

#include "qheat/global_mme.hpp"

#include <algorithm>
#include <cmath>

#include "qheat/bath.hpp"
#include "qheat/error.hpp"

namespace qheat::global {

namespace {

ModeCoupling make_mode(const NetworkParams& p, double omega, double weight_h, double weight_c)
{
    ModeCoupling m;
    m.omega = omega;
    m.weight_h = weight_h;
    m.weight_c = weight_c;
    m.gamma_h = rate(hot_bath(p), omega);
    m.gamma_c = rate(cold_bath(p), omega);
    m.boltz_h = std::exp(-omega / p.T_h);
    m.boltz_c = std::exp(-omega / p.T_c);
    return m;
}

struct ModeBalance {
    double n{0.0};
    double J_h{0.0};
    double J_c{0.0};
};

// Rate equation dn/dt = sum_l G_l (e_l - (1 - e_l) n) with G_l = gamma_l w_l.
// Each bath pulls n toward its own Bose occupation n_l; the flux from bath l is
// omega G_l (1 - e_l) (n_l - n).
ModeBalance balance(const NetworkParams& p, const ModeCoupling& m)
{
    const double down_h = m.gamma_h * m.weight_h * (1.0 - m.boltz_h);
    const double down_c = m.gamma_c * m.weight_c * (1.0 - m.boltz_c);
    const double total = down_h + down_c;

    const double xh = m.omega / p.T_h;
    const double xc = m.omega / p.T_c;
    const double n_hot = 1.0 / std::expm1(xh);
    const double n_cold = 1.0 / std::expm1(xc);
    // n_hot - n_cold = e^{xh}(e^{xc - xh} - 1) n_hot n_cold
    const double gap = std::exp(xh) * std::expm1(xc - xh) * n_hot * n_cold;

    ModeBalance out;
    if (down_c == 0.0) {
        out.n = n_hot;
    } else if (down_h == 0.0) {
        out.n = n_cold;
    } else {
        out.n = (down_h * n_hot + down_c * n_cold) / total;
    }
    if (total > 0.0) {
        // n_hot - n = down_c gap / total and n_cold - n = -down_h gap / total
        out.J_h = m.omega * down_h * (down_c * gap / total);
        out.J_c = m.omega * down_c * (-down_h * gap / total);
    }
    return out;
}

ChannelWeights channel(double gamma, double weight_a, double weight_b, double weight_cross,
                       double boltzmann)
{
    return {gamma * weight_a, gamma * weight_b, gamma * weight_cross, boltzmann};
}

} // namespace

ModeCouplings mode_couplings(const NetworkParams& params)
{
    ModeCouplings modes;
    modes.basis = normal_mode_basis(params);
    const auto& b = modes.basis;
    modes.plus = make_mode(params, b.omega_plus, b.c2, b.s2);
    modes.minus = make_mode(params, b.omega_minus, b.s2, b.c2);
    return modes;
}

bool secular_warning(const ModeCouplings& modes)
{
    const double largest = std::max({modes.plus.gamma_h, modes.plus.gamma_c,
                                     modes.minus.gamma_h, modes.minus.gamma_c});
    return modes.basis.omega_plus - modes.basis.omega_minus < 10.0 * largest;
}

GlobalSteadyState steady_state(const NetworkParams& params)
{
    const ModeCouplings modes = mode_couplings(params);
    const ModeBalance plus = balance(params, modes.plus);
    const ModeBalance minus = balance(params, modes.minus);

    GlobalSteadyState out;
    out.basis = modes.basis;
    out.n_plus = plus.n;
    out.n_minus = minus.n;
    out.nA = plus.n * modes.basis.c2 + minus.n * modes.basis.s2;
    out.nB = plus.n * modes.basis.s2 + minus.n * modes.basis.c2;
    out.J_h = plus.J_h + minus.J_h;
    out.J_c = plus.J_c + minus.J_c;
    out.sigma = entropy_production(params, out.J_h, out.J_c);
    out.secular_warning = secular_warning(modes);
    return out;
}

double bath_current(const ModeCouplings& modes, Bath bath, double n_plus, double n_minus)
{
    auto term = [bath](const ModeCoupling& m, double n) {
        const double g = bath == Bath::Hot ? m.gamma_h * m.weight_h : m.gamma_c * m.weight_c;
        const double e = bath == Bath::Hot ? m.boltz_h : m.boltz_c;
        return m.omega * g * (e - (1.0 - e) * n);
    };
    return term(modes.plus, n_plus) + term(modes.minus, n_minus);
}

double heat_current_closed_form(const NetworkParams& params)
{
    const ModeCouplings modes = mode_couplings(params);
    const double c2 = modes.basis.c2;
    const double s2 = modes.basis.s2;
    if (c2 == 0.0 || s2 == 0.0) return 0.0; // every term carries 1/cos^2 or 1/sin^2 below

    const double bh = params.beta_h();
    const double bc = params.beta_c();

    const ModeCoupling& mm = modes.minus;
    const double Ehm = std::exp(bh * mm.omega);
    const double Ecm = std::exp(bc * mm.omega);
    const double gap_m = Ehm * std::expm1((bc - bh) * mm.omega); // e^{bc w} - e^{bh w}
    const double minus_term =
        gap_m * mm.gamma_c * mm.gamma_h * mm.omega
        / (Ehm * std::expm1(bc * mm.omega) * mm.gamma_c / s2
           + Ecm * std::expm1(bh * mm.omega) * mm.gamma_h / c2);

    const ModeCoupling& mp = modes.plus;
    const double Ehp = std::exp(bh * mp.omega);
    const double Ecp = std::exp(bc * mp.omega);
    const double gap_p = Ehp * std::expm1((bc - bh) * mp.omega);
    const double plus_term =
        gap_p * mp.gamma_c * mp.gamma_h * mp.omega
        / (Ehp * std::expm1(bc * mp.omega) * mp.gamma_c / c2
           + Ecp * std::expm1(bh * mp.omega) * mp.gamma_h / s2);

    return minus_term + plus_term;
}

LocalBasisGenerator local_basis_generator(const NetworkParams& params)
{
    const ModeCouplings modes = mode_couplings(params);
    const double c = modes.basis.cos_theta();
    const double s = modes.basis.sin_theta();
    const double c2 = c * c;
    const double s2 = s * s;

    LocalBasisGenerator g;
    g.basis = modes.basis;
    // d_+ = c a + s b and d_- = c b - s a, expanded inside D[d_+-]
    g.hot.plus = channel(modes.plus.gamma_h, c2 * c2, c2 * s2, c2 * c * s, modes.plus.boltz_h);
    g.hot.minus = channel(modes.minus.gamma_h, s2 * s2, c2 * s2, -c * s2 * s, modes.minus.boltz_h);
    g.cold.plus = channel(modes.plus.gamma_c, c2 * s2, s2 * s2, c * s2 * s, modes.plus.boltz_c);
    g.cold.minus = channel(modes.minus.gamma_c, c2 * s2, c2 * c2, -c2 * c * s, modes.minus.boltz_c);
    return g;
}

} // namespace qheat::global
