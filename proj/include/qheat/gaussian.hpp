// gaussian.hpp: two-mode covariance matrices, correlations and the PPT
// separability test for the steady states of both master equations.
//
// Quadratures x = (a + a^dag)/sqrt(2), p = i(a^dag - a)/sqrt(2), ordered
// (x_A, p_A, x_B, p_B). V_ij is the symmetrized second moment, so the vacuum
// has V = I/2.

#pragma once

#include <array>

#include <Eigen/Dense>

#include "qheat/local_mme.hpp"
#include "qheat/model.hpp"

namespace qheat::gaussian {

struct CovarianceMatrix {
    Eigen::Matrix4d entries{Eigen::Matrix4d::Identity() * 0.5};
};

struct CorrelationReport {
    double cor_xAxB{0.0};
    double cor_xApB{0.0};
    double cor_pAxB{0.0};
    double cor_pApB{0.0};
    bool separable{true};
};

/// Throws StatisticsMismatch for TLS nodes.
CovarianceMatrix covariance_local(const local::MomentState& moments,
                                  Statistics statistics = Statistics::Boson);

CovarianceMatrix covariance_global(const NormalModeBasis& basis, double n_plus, double n_minus);

/// Standard two-mode symplectic form diag(J, J), J = [[0, 1], [-1, 0]].
Eigen::Matrix4d symplectic_form();

/// Symplectic eigenvalues in ascending order: moduli of the eigenvalues of i Omega V.
std::array<double, 2> symplectic_eigenvalues(const Eigen::Matrix4d& V);

/// V with p_B -> -p_B.
Eigen::Matrix4d partial_transpose(const Eigen::Matrix4d& V);

inline constexpr double kSymplecticTolerance = 1e-10;

/// Normalized correlations and the PPT verdict.
/// Throws UnphysicalCovariance if V itself violates the uncertainty relation.
CorrelationReport correlations(const CovarianceMatrix& V);

} // namespace qheat::gaussian
