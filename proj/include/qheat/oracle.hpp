// oracle.hpp: brute-force Liouvillian on a truncated Fock space (harmonic
// nodes) or the exact 4-dimensional space (two-level nodes). Used as ground
// truth for the moment equations and the normal-mode rate equations.
//
// Both generators commute with the phase rotation a -> a e^{i phi},
// b -> b e^{i phi}, so the density-matrix elements |n><m| with equal total
// excitation on both sides form an invariant set that holds the steady state.
// The steady state is solved on that sector only.

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "qheat/global_mme.hpp"
#include "qheat/local_mme.hpp"
#include "qheat/model.hpp"

namespace qheat::oracle {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using SpMatrix = Eigen::SparseMatrix<Complex>;

enum class Approach { LocalGen, GlobalGen };

/// Index pair (row, col) of a density-matrix element.
struct ElementIndex {
    Eigen::Index row{0};
    Eigen::Index col{0};
};

/// A superoperator stored as a sum of sandwiches  coeff * left * rho * right.
class Superoperator {
public:
    struct Term {
        Complex coeff;
        SpMatrix left;
        SpMatrix right;
    };

    explicit Superoperator(Eigen::Index dim = 0) : dim_(dim) {}

    Eigen::Index dim() const noexcept { return dim_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }

    void add(Complex coeff, const SpMatrix& left, const SpMatrix& right);
    /// -i [H, rho]
    void add_commutator(const SpMatrix& H);
    /// rate (L rho L^dag - {L^dag L, rho}/2)
    void add_dissipator(double rate, const SpMatrix& L);
    /// rate (A rho B^dag + B rho A^dag - {A^dag B + B^dag A, rho}/2)
    void add_cross_dissipator(double rate, const SpMatrix& A, const SpMatrix& B);
    void append(const Superoperator& other);

    CMatrix apply(const CMatrix& rho) const;

    /// Full D^2 x D^2 matrix on column-stacked vec(rho). Small D only.
    CMatrix dense() const;

    /// Sparse matrix restricted to `elements`, which must be invariant under
    /// the superoperator. OpenMP-parallel over input elements.
    SpMatrix sector_matrix(const std::vector<ElementIndex>& elements) const;
    /// Single-threaded reference for sector_matrix().
    SpMatrix sector_matrix_serial(const std::vector<ElementIndex>& elements) const;

private:
    Eigen::Index dim_;
    std::vector<Term> terms_;
};

struct FockLiouvillian {
    Statistics statistics{Statistics::Boson};
    Approach approach{Approach::LocalGen};
    int n_max{0};            // per-mode cutoff; 1 for two-level nodes
    Eigen::Index dimension{0};
    SpMatrix a;              // node A lowering operator on the joint space
    SpMatrix b;
    SpMatrix hamiltonian;    // H_0 + H_AB
    Superoperator unitary;
    Superoperator hot;       // L_h
    Superoperator cold;      // L_c
    std::vector<int> excitations; // a^dag a + b^dag b of each basis state

    Superoperator total() const;
    CMatrix generator() const { return total().dense(); }
    /// Elements |i><j| with equal excitation number.
    std::vector<ElementIndex> zero_coherence_sector() const;
};

inline constexpr int kDefaultNmax = 12;

/// Smallest cutoff (>= 2) at which the discarded levels of either node's
/// geometric marginal, q = nbar/(nbar+1), contribute less than mean_tail to
/// <n>: q^{n_max+1} (n_max + 1 + nbar) < mean_tail. This also bounds the
/// discarded probability q^{n_max+1}. nbar comes from the moment solution of
/// the same generator; the occupancy check in steady_state() confirms the
/// choice independently.
int required_nmax(const NetworkParams& params, Approach approach, double mean_tail = 1e-10);

/// Throws TruncationTooSmall (Boson, n_max < 2) or UnsupportedStatistics
/// (TLS with GlobalGen). n_max is ignored for TLS.
FockLiouvillian build(const NetworkParams& params, Approach approach, int n_max = kDefaultNmax);

/// Global bath generator assembled from the normal-mode jump operators d_+-.
Superoperator global_dissipator_from_modes(const NetworkParams& params, const SpMatrix& a,
                                           const SpMatrix& b, global::Bath bath);
/// Same generator assembled from the local-operator weight table.
Superoperator global_dissipator_from_table(const global::BathGenerator& table, const SpMatrix& a,
                                           const SpMatrix& b);

/// Null vector of the generator with unit trace, as a sparse D x D density
/// matrix. Throws DegenerateNullspace, NonConvergence, or TruncationTooSmall
/// when the top Fock level is occupied above 1e-8.
SpMatrix steady_state(const FockLiouvillian& liou);

enum class Which { Hot, Cold };

/// Tr[(L rho)(H_0 + H_AB)].
double heat_current(const FockLiouvillian& liou, const SpMatrix& rho, Which bath);

/// Tr(rho op).
Complex expectation(const SpMatrix& rho, const SpMatrix& op);

local::MomentState moments(const FockLiouvillian& liou, const SpMatrix& rho);

struct ModePopulations {
    double n_plus{0.0};
    double n_minus{0.0};
};

ModePopulations mode_populations(const FockLiouvillian& liou, const NormalModeBasis& basis,
                                 const SpMatrix& rho);

/// Symmetrized quadrature covariance with means subtracted, built from
/// normal-ordered moments of rho and the canonical commutators.
Eigen::Matrix4d quadrature_covariance(const FockLiouvillian& liou, const SpMatrix& rho);

/// Everything the cross-checks need from one oracle run.
struct OracleResult {
    int n_max{0};
    local::MomentState moments;
    double n_plus{0.0};
    double n_minus{0.0};
    double J_h{0.0};
    double J_c{0.0};
    Eigen::Matrix4d covariance{Eigen::Matrix4d::Zero()};
};

/// build + steady_state + observables. n_max <= 0 selects required_nmax().
OracleResult solve(const NetworkParams& params, Approach approach, int n_max = 0);

} // namespace qheat::oracle
