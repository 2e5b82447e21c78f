// gaussian.cpp

#include "qheat/gaussian.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "qheat/error.hpp"

namespace qheat::gaussian {

CovarianceMatrix covariance_local(const local::MomentState& m, Statistics statistics)
{
    if (statistics != Statistics::Boson) {
        throw Error(ErrorKind::StatisticsMismatch, "covariance matrices need harmonic nodes");
    }
    const double a = m.nA + 0.5;
    const double b = m.nB + 0.5;
    const double x = 0.5 * m.X;
    const double y = 0.5 * m.Y;
    CovarianceMatrix V;
    V.entries << a, 0.0, x, -y,
                 0.0, a, y, x,
                 x, y, b, 0.0,
                 -y, x, 0.0, b;
    return V;
}

CovarianceMatrix covariance_global(const NormalModeBasis& basis, double n_plus, double n_minus)
{
    const double cs = std::cos(basis.theta) * std::sin(basis.theta);
    const double a = n_plus * basis.c2 + n_minus * basis.s2 + 0.5;
    const double b = n_plus * basis.s2 + n_minus * basis.c2 + 0.5;
    const double x = (n_plus - n_minus) * cs;
    CovarianceMatrix V;
    V.entries << a, 0.0, x, 0.0,
                 0.0, a, 0.0, x,
                 x, 0.0, b, 0.0,
                 0.0, x, 0.0, b;
    return V;
}

Eigen::Matrix4d symplectic_form()
{
    Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
    omega(0, 1) = 1.0;
    omega(1, 0) = -1.0;
    omega(2, 3) = 1.0;
    omega(3, 2) = -1.0;
    return omega;
}

std::array<double, 2> symplectic_eigenvalues(const Eigen::Matrix4d& V)
{
    // Omega V is real; its eigenvalues are +-i nu for the symplectic nu.
    const Eigen::Matrix4d M = symplectic_form() * V;
    const Eigen::EigenSolver<Eigen::Matrix4d> solver(M, false);
    std::array<double, 4> moduli{};
    for (int i = 0; i < 4; ++i) moduli[static_cast<std::size_t>(i)] = std::abs(solver.eigenvalues()(i));
    std::sort(moduli.begin(), moduli.end());
    // each nu appears twice; average the pair
    return {0.5 * (moduli[0] + moduli[1]), 0.5 * (moduli[2] + moduli[3])};
}

Eigen::Matrix4d partial_transpose(const Eigen::Matrix4d& V)
{
    const Eigen::Vector4d flip(1.0, 1.0, 1.0, -1.0);
    return flip.asDiagonal() * V * flip.asDiagonal();
}

CorrelationReport correlations(const CovarianceMatrix& cov)
{
    const Eigen::Matrix4d& V = cov.entries;
    if ((V - V.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, V.cwiseAbs().maxCoeff())) {
        throw Error(ErrorKind::UnphysicalCovariance, "covariance matrix is not symmetric");
    }
    const auto nu = symplectic_eigenvalues(V);
    if (nu[0] < 0.5 - kSymplecticTolerance) {
        throw Error(ErrorKind::UnphysicalCovariance,
                    "smallest symplectic eigenvalue " + std::to_string(nu[0]) + " < 1/2");
    }

    auto cor = [&V](int i, int j) { return V(i, j) / std::sqrt(V(i, i) * V(j, j)); };
    CorrelationReport r;
    r.cor_xAxB = cor(0, 2);
    r.cor_xApB = cor(0, 3);
    r.cor_pAxB = cor(1, 2);
    r.cor_pApB = cor(1, 3);
    r.separable = symplectic_eigenvalues(partial_transpose(V))[0] >= 0.5 - kSymplecticTolerance;
    return r;
}

} // namespace qheat::gaussian
