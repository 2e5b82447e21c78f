#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "qheat/error.hpp"
#include "qheat/global_mme.hpp"
#include "qheat/local_mme.hpp"
#include "test_support.hpp"

using namespace qheat;
using qheat::testing::Draws;
using qheat::testing::fig3_params;
using qheat::testing::fig4_params;
using qheat::testing::rel_close;

TEST_CASE("equal temperatures give the Gibbs state of the network")
{
    Draws draws(31);
    for (int i = 0; i < 200; ++i) {
        NetworkParams p = draws.params();
        p.T_c = p.T_h;
        const auto ss = global::steady_state(p);
        CHECK(rel_close(ss.n_plus, 1.0 / std::expm1(ss.basis.omega_plus / p.T_h), 1e-12));
        CHECK(rel_close(ss.n_minus, 1.0 / std::expm1(ss.basis.omega_minus / p.T_h), 1e-12));
        CHECK(ss.J_h == 0.0);
        CHECK(ss.J_c == 0.0);
        CHECK(ss.sigma == 0.0);
        CHECK(global::heat_current_closed_form(p) == 0.0);
    }
}

TEST_CASE("fig3-preset global steady state matches 50-digit reference")
{
    const auto ss = global::steady_state(fig3_params(1e-2));
    CHECK(rel_close(ss.n_plus, 0.76865073966899137, 1e-13));
    CHECK(rel_close(ss.n_minus, 1.5415034904335996, 1e-13));
    CHECK(rel_close(ss.nA, 0.76865383104289799, 1e-13));
    CHECK(rel_close(ss.J_h, 8.4497979247571302e-7, 1e-12));
    CHECK(ss.J_h > 0.0);
    CHECK(rel_close(global::heat_current_closed_form(fig3_params(1e-2)), 8.4497979247571302e-7, 1e-12));
}

TEST_CASE("fig4-preset point near resonance matches 50-digit reference")
{
    const auto p = fig4_params(5.001);
    const auto ss = global::steady_state(p);
    CHECK(rel_close(ss.n_plus, 1.8252353380259231, 1e-13));
    CHECK(rel_close(ss.n_minus, 1.6504080673033263, 1e-13));
    CHECK(rel_close(ss.J_h, 9.8311182538277908e-6, 1e-11));
    CHECK(rel_close(global::heat_current_closed_form(p), ss.J_h, 1e-10));
}

TEST_CASE("closed form: special points")
{
    NetworkParams p = fig3_params(1e-2);
    p.T_h = p.T_c;
    CHECK(global::heat_current_closed_form(p) == 0.0);
    CHECK(global::heat_current_closed_form(fig3_params(0.0)) == 0.0);
    CHECK(global::steady_state(fig3_params(0.0)).J_h == 0.0);
}

TEST_CASE("weak coupling: populations approach the local ones")
{
    double previous = 1.0;
    for (double eps : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5}) {
        const auto g = global::steady_state(fig3_params(eps));
        const auto l = local::steady_state(fig3_params(eps));
        const double diff = std::abs(g.nA - l.moments.nA);
        CHECK(diff < previous);
        previous = diff;
    }
    const double thermal = 1.0 / std::expm1(10.0 / 12.0);
    CHECK(previous < 1e-4 * thermal);
}

TEST_CASE("global approach invariants over random draws")
{
    Draws draws(37);
    for (int i = 0; i < 1000; ++i) {
        const auto p = i % 2 ? draws.params() : draws.violating_params();
        const auto ss = global::steady_state(p);
        const auto modes = global::mode_couplings(p);
        INFO("omega_h=" << p.omega_h << " omega_c=" << p.omega_c << " eps=" << p.epsilon
                        << " T_h=" << p.T_h << " T_c=" << p.T_c << " kappa=" << p.kappa);
        CHECK(ss.n_plus >= 0.0);
        CHECK(ss.n_minus >= 0.0);
        CHECK(ss.sigma >= -1e-12);
        CHECK(std::abs(ss.J_h + ss.J_c) <= 1e-10 * std::max(1.0, std::abs(ss.J_h)));
        // cold current straight from the dissipator
        const double J_c_direct = global::bath_current(modes, global::Bath::Cold, ss.n_plus, ss.n_minus);
        CHECK(std::abs(ss.J_h + J_c_direct) <= 1e-10 * std::max(1.0, std::abs(ss.J_h)));
        CHECK(rel_close(global::heat_current_closed_form(p), ss.J_h, 1e-10));
        CHECK(rel_close(ss.nA, ss.n_plus * ss.basis.c2 + ss.n_minus * ss.basis.s2, 1e-15));
        if (p.T_h > p.T_c) CHECK(ss.J_h >= 0.0);
    }
}

TEST_CASE("secular warning near resonance with weak coupling")
{
    NetworkParams p = fig4_params(5.0);
    p.epsilon = 1e-9;
    CHECK(global::steady_state(p).secular_warning);
    CHECK_FALSE(global::steady_state(fig4_params(10.0)).secular_warning);
}

TEST_CASE("TLS and gapless parameters are rejected")
{
    NetworkParams p = fig3_params(1e-2);
    p.statistics = Statistics::TLS;
    CHECK_THROWS_AS(global::steady_state(p), Error);
    CHECK_THROWS_AS(global::heat_current_closed_form(p), Error);
    CHECK_THROWS_AS(global::local_basis_generator(p), Error);
    NetworkParams g = fig3_params(8.0);
    try {
        global::steady_state(g);
        FAIL("expected GaplessSpectrum");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::GaplessSpectrum);
    }
}

TEST_CASE("local-basis table: decoupled limit recovers the local dissipators")
{
    const auto p = fig3_params(0.0);
    const auto g = global::local_basis_generator(p);
    const auto r = local::local_rates(p);
    CHECK(rel_close(g.hot.plus.a, r.gamma_h, 1e-15));
    CHECK(g.hot.plus.cross == 0.0);
    CHECK(g.hot.minus.cross == 0.0);
    CHECK(g.hot.minus.a == 0.0);
    CHECK(g.hot.plus.b == 0.0);
    CHECK(rel_close(g.cold.minus.b, r.gamma_c, 1e-15));
    CHECK(g.cold.plus.cross == 0.0);
    CHECK(rel_close(g.hot.plus.boltzmann, r.boltz_h, 1e-15));
}

TEST_CASE("local-basis table on resonance: c = s = 1/sqrt(2)")
{
    NetworkParams p = fig3_params(0.2);
    p.omega_h = p.omega_c = 5.0;
    const auto g = global::local_basis_generator(p);
    const auto m = global::mode_couplings(p);
    const double gp = m.plus.gamma_h;
    const double gm = m.minus.gamma_h;
    CHECK(rel_close(g.hot.plus.a + g.hot.minus.a, gp / 4 + gm / 4, 1e-14));
    CHECK(rel_close(g.hot.plus.cross, gp / 4, 1e-14));
    CHECK(rel_close(g.hot.minus.cross, -gm / 4, 1e-14));
    CHECK(rel_close(g.hot.plus.b, gp / 4, 1e-14));
}
