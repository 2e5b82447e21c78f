#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "qheat/error.hpp"
#include "qheat/gaussian.hpp"
#include "qheat/global_mme.hpp"
#include "qheat/local_mme.hpp"
#include "qheat/oracle.hpp"
#include "test_support.hpp"

using namespace qheat;
using oracle::Approach;
using oracle::CMatrix;
using qheat::testing::Draws;
using qheat::testing::fig3_params;
using qheat::testing::fig4_params;

namespace {

ErrorKind kind_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no qheat::Error thrown");
    return ErrorKind::InvalidInput;
}

CMatrix random_hermitian(Eigen::Index dim, std::mt19937_64& rng)
{
    std::normal_distribution<double> n(0.0, 1.0);
    CMatrix m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = {n(rng), n(rng)};
    }
    return m + m.adjoint();
}

double max_moment_gap(const local::MomentState& a, const local::MomentState& b)
{
    return std::max({std::abs(a.nA - b.nA), std::abs(a.nB - b.nB), std::abs(a.X - b.X), std::abs(a.Y - b.Y)});
}

} // namespace

TEST_CASE("build preconditions")
{
    const auto p = fig3_params(1e-2);
    CHECK(kind_of([&] { oracle::build(p, Approach::LocalGen, 1); }) == ErrorKind::TruncationTooSmall);
    auto tls = p;
    tls.statistics = Statistics::TLS;
    CHECK(kind_of([&] { oracle::build(tls, Approach::GlobalGen, 4); }) == ErrorKind::UnsupportedStatistics);
    CHECK(oracle::build(tls, Approach::LocalGen, 0).dimension == 4);
    auto gapless = p;
    gapless.epsilon = 8.0;
    CHECK(kind_of([&] { oracle::build(gapless, Approach::GlobalGen, 4); }) == ErrorKind::GaplessSpectrum);
    CHECK(oracle::build(p, Approach::LocalGen, 4).dimension == 25);
}

TEST_CASE("generators are trace and Hermiticity preserving")
{
    std::mt19937_64 rng(5);
    Draws draws(6);
    for (int i = 0; i < 6; ++i) {
        const auto p = draws.oracle_params(Statistics::Boson);
        for (auto approach : {Approach::LocalGen, Approach::GlobalGen}) {
            const auto liou = oracle::build(p, approach, 3);
            const auto total = liou.total();
            const CMatrix L = total.dense();
            const auto D = liou.dimension;
            // trace row: sum of the diagonal-element rows vanishes in every column
            for (Eigen::Index col = 0; col < D * D; ++col) {
                std::complex<double> tr{};
                for (Eigen::Index k = 0; k < D; ++k) tr += L(k + k * D, col);
                CHECK(std::abs(tr) < 1e-12);
            }
            const CMatrix rho = random_hermitian(D, rng);
            const CMatrix out = total.apply(rho);
            CHECK((out - out.adjoint()).norm() < 1e-12 * out.norm());
            CHECK(std::abs(out.trace()) < 1e-12 * out.norm());
            // dense matrix acts on column-stacked vec(rho)
            const Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(rho.data(), D * D);
            const Eigen::VectorXcd w = L * v;
            CHECK((w - Eigen::Map<const Eigen::VectorXcd>(out.data(), D * D)).norm() < 1e-12 * out.norm());
        }
    }
}

TEST_CASE("sector matrix is the restriction of the dense generator")
{
    const auto liou = oracle::build(fig3_params(0.3), Approach::GlobalGen, 4);
    const auto total = liou.total();
    const CMatrix L = total.dense();
    const auto sector = liou.zero_coherence_sector();
    const auto S = total.sector_matrix(sector);
    const auto D = liou.dimension;
    double worst = 0.0;
    for (std::size_t q = 0; q < sector.size(); ++q) {
        const auto cq = sector[q].row + sector[q].col * D;
        // columns of the sector never leak outside it
        double inside = 0.0;
        for (std::size_t r = 0; r < sector.size(); ++r) {
            const auto cr = sector[r].row + sector[r].col * D;
            worst = std::max(worst, std::abs(S.coeff(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(q))
                                             - L(cr, cq)));
            inside += std::norm(L(cr, cq));
        }
        CHECK(std::abs(L.col(cq).squaredNorm() - inside) <= 1e-12 * L.col(cq).squaredNorm());
    }
    CHECK(worst < 1e-14);

    std::vector<oracle::ElementIndex> leaky = {{0, 0}, {1, 0}};
    CHECK(kind_of([&] { total.sector_matrix(leaky); }) == ErrorKind::InvalidInput);
    CHECK(kind_of([&] { total.sector_matrix_serial(leaky); }) == ErrorKind::InvalidInput);
}

TEST_CASE("parallel sector assembly matches the serial reference exactly")
{
    const auto liou = oracle::build(fig3_params(1e-2), Approach::GlobalGen, 10);
    const auto total = liou.total();
    const auto sector = liou.zero_coherence_sector();
    const auto a = total.sector_matrix(sector);
    const auto b = total.sector_matrix_serial(sector);
    REQUIRE(a.nonZeros() == b.nonZeros());
    CHECK(oracle::SpMatrix(a - b).norm() == 0.0);
}

TEST_CASE("decoupled two-level nodes relax to the product Gibbs state")
{
    auto p = fig3_params(0.0);
    p.statistics = Statistics::TLS;
    const auto r = oracle::solve(p, Approach::LocalGen);
    const double eh = std::exp(-p.omega_h / p.T_h);
    const double ec = std::exp(-p.omega_c / p.T_c);
    CHECK(std::abs(r.moments.nA - eh / (1.0 + eh)) < 1e-12);
    CHECK(std::abs(r.moments.nB - ec / (1.0 + ec)) < 1e-12);
    CHECK(std::abs(r.moments.X) < 1e-14);
    CHECK(std::abs(r.J_h) < 1e-16);
}

TEST_CASE("decoupled oscillators reach Bose-Einstein populations")
{
    const auto p = NetworkParams{.omega_h = 6.0, .omega_c = 4.0, .epsilon = 0.0, .T_h = 2.0, .T_c = 1.5, .kappa = 1e-3};
    const int n = oracle::required_nmax(p, Approach::LocalGen);
    const auto r = oracle::solve(p, Approach::LocalGen, n);
    CHECK(r.n_max == n);
    CHECK(std::abs(r.moments.nA - 1.0 / std::expm1(p.omega_h / p.T_h)) < 1e-8);
    CHECK(std::abs(r.moments.nB - 1.0 / std::expm1(p.omega_c / p.T_c)) < 1e-8);
}

TEST_CASE("two-level moment equations are exact")
{
    Draws draws(8);
    for (int i = 0; i < 20; ++i) {
        const auto p = draws.oracle_params(Statistics::TLS);
        const auto r = oracle::solve(p, Approach::LocalGen);
        const auto ss = local::steady_state(p);
        CHECK(max_moment_gap(r.moments, ss.moments) < 1e-10);
        CHECK(std::abs(r.J_h - ss.J_h) < 1e-12);
        CHECK(std::abs(r.J_c - ss.J_c) < 1e-12);
    }
}

TEST_CASE("oracle at the fig3-preset point, eps = 1e-2")
{
    // 1e-8 targets: a 3e-9 mean tail keeps the cutoffs near 47
    const auto p = fig3_params(1e-2);

    const auto loc = oracle::solve(p, Approach::LocalGen, oracle::required_nmax(p, Approach::LocalGen, 3e-9));
    const auto lss = local::steady_state(p);
    INFO("local n_max " << loc.n_max);
    CHECK(max_moment_gap(loc.moments, lss.moments) < 1e-8);
    CHECK(std::abs(loc.J_h - lss.J_h) < 1e-8);
    CHECK(loc.J_h < 0.0);
    CHECK(std::abs(loc.J_h + loc.J_c) < 1e-12);
    CHECK((loc.covariance - gaussian::covariance_local(lss.moments).entries).cwiseAbs().maxCoeff() < 1e-8);

    const auto glo = oracle::solve(p, Approach::GlobalGen, oracle::required_nmax(p, Approach::GlobalGen, 3e-9));
    const auto gss = global::steady_state(p);
    CHECK(glo.J_h > 0.0);
    CHECK(std::abs(glo.J_h - gss.J_h) < 1e-8);
    CHECK(std::abs(glo.n_plus - gss.n_plus) < 1e-8);
    CHECK(std::abs(glo.n_minus - gss.n_minus) < 1e-8);
    CHECK(std::abs(glo.moments.Y) < 1e-8);
    const auto V = gaussian::covariance_global(gss.basis, gss.n_plus, gss.n_minus).entries;
    CHECK((glo.covariance - V).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("oracle at fig4-preset points")
{
    {
        const auto p = fig4_params(5.001);
        const auto r = oracle::solve(p, Approach::GlobalGen, oracle::required_nmax(p, Approach::GlobalGen, 3e-9));
        const auto ss = global::steady_state(p);
        INFO("n_max " << r.n_max);
        CHECK(std::abs(r.J_h - ss.J_h) < 1e-8);
        CHECK(std::abs(r.J_h - global::heat_current_closed_form(p)) < 1e-8);
        CHECK(std::abs(r.moments.nA - ss.nA) < 1e-8);
        CHECK(std::abs(r.moments.nB - ss.nB) < 1e-8);
    }
    {
        const auto p = fig4_params(6.0);
        const auto r = oracle::solve(p, Approach::GlobalGen, oracle::required_nmax(p, Approach::GlobalGen, 3e-9));
        const auto ss = global::steady_state(p);
        const auto V = gaussian::covariance_global(ss.basis, ss.n_plus, ss.n_minus).entries;
        CHECK((r.covariance - V).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("covariance is linear in the four moments")
{
    // the oracle computes <{dxi_i, dxi_j}>/2 from rho directly
    Draws draws(13);
    for (int i = 0; i < 10; ++i) {
        const auto p = draws.oracle_params(Statistics::Boson, 10);
        const auto liou = oracle::build(p, Approach::LocalGen, 10);
        const auto rho = oracle::steady_state(liou);
        const auto m = oracle::moments(liou, rho);
        const Eigen::Matrix4d V = oracle::quadrature_covariance(liou, rho);
        CHECK((V - gaussian::covariance_local(m).entries).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("local-basis table reproduces the normal-mode dissipators")
{
    Draws draws(21);
    for (int i = 0; i < 20; ++i) {
        const auto p = draws.params();
        const auto liou = oracle::build(p, Approach::LocalGen, 4);
        const auto table = global::local_basis_generator(p);
        for (auto bath : {global::Bath::Hot, global::Bath::Cold}) {
            const CMatrix modes = oracle::global_dissipator_from_modes(p, liou.a, liou.b, bath).dense();
            const CMatrix local = oracle::global_dissipator_from_table(
                bath == global::Bath::Hot ? table.hot : table.cold, liou.a, liou.b).dense();
            CHECK((modes - local).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("required_nmax rejects a tail outside (0, 1)")
{
    CHECK(kind_of([] { oracle::required_nmax(fig3_params(1e-2), Approach::LocalGen, 0.0); }) == ErrorKind::InvalidInput);
    CHECK(oracle::required_nmax(fig3_params(1e-2), Approach::LocalGen, 1e-9)
          < oracle::required_nmax(fig3_params(1e-2), Approach::LocalGen));
}

TEST_CASE("truncation convergence on the oracle draws")
{
    Draws draws(17);
    for (int i = 0; i < 10; ++i) {
        const auto p = draws.oracle_params(Statistics::Boson);
        for (auto approach : {Approach::LocalGen, Approach::GlobalGen}) {
            const int n = oracle::required_nmax(p, approach);
            const auto a = oracle::solve(p, approach, n);
            const auto b = oracle::solve(p, approach, n + 4);
            CHECK(max_moment_gap(a.moments, b.moments) < 1e-9);
        }
    }
}

TEST_CASE("steady-state failure modes")
{
    // the top Fock level is far from empty at this cutoff
    CHECK(kind_of([] { oracle::solve(fig3_params(1e-2), Approach::LocalGen, 8); }) == ErrorKind::TruncationTooSmall);

    // no dissipation and no hopping: every diagonal state is stationary
    auto liou = oracle::build(fig3_params(0.0), Approach::LocalGen, 3);
    liou.hot = oracle::Superoperator(liou.dimension);
    liou.cold = oracle::Superoperator(liou.dimension);
    CHECK(kind_of([&] { oracle::steady_state(liou); }) == ErrorKind::DegenerateNullspace);
}
