// oracle.cpp

#include "qheat/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>
#include <Eigen/UmfPackSupport>

#include "qheat/bath.hpp"
#include "qheat/error.hpp"

namespace qheat::oracle {

namespace {

constexpr Complex I{0.0, 1.0};

using Triplet = Eigen::Triplet<Complex>;

SpMatrix kron(const SpMatrix& A, const SpMatrix& B)
{
    std::vector<Triplet> trips;
    for (int ka = 0; ka < A.outerSize(); ++ka) {
        for (SpMatrix::InnerIterator ia(A, ka); ia; ++ia) {
            for (int kb = 0; kb < B.outerSize(); ++kb) {
                for (SpMatrix::InnerIterator ib(B, kb); ib; ++ib) {
                    trips.emplace_back(ia.row() * B.rows() + ib.row(), ia.col() * B.cols() + ib.col(),
                                       ia.value() * ib.value());
                }
            }
        }
    }
    SpMatrix out(A.rows() * B.rows(), A.cols() * B.cols());
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

SpMatrix identity(Eigen::Index dim)
{
    SpMatrix id(dim, dim);
    id.setIdentity();
    return id;
}

SpMatrix lowering(int levels)
{
    std::vector<Triplet> trips;
    for (int n = 1; n < levels; ++n) trips.emplace_back(n - 1, n, std::sqrt(static_cast<double>(n)));
    SpMatrix a(levels, levels);
    a.setFromTriplets(trips.begin(), trips.end());
    return a;
}

SpMatrix adjoint(const SpMatrix& m)
{
    return SpMatrix(m.adjoint());
}

void add_bath_channel(Superoperator& op, double gamma, double boltzmann, const SpMatrix& L)
{
    op.add_dissipator(gamma, L);
    op.add_dissipator(gamma * boltzmann, adjoint(L));
}

// Position of each element (row + col * D) inside the sector list, -1 outside.
std::vector<std::int32_t> sector_lookup(const std::vector<ElementIndex>& elements, Eigen::Index dim)
{
    std::vector<std::int32_t> lookup(static_cast<std::size_t>(dim * dim), -1);
    for (std::size_t p = 0; p < elements.size(); ++p) {
        lookup[static_cast<std::size_t>(elements[p].row + elements[p].col * dim)] = static_cast<std::int32_t>(p);
    }
    return lookup;
}

using Column = std::vector<std::pair<std::int32_t, Complex>>;

// Column q of the sector matrix: the image of |k><l| under all terms.
Column sector_column(const std::vector<Superoperator::Term>& terms, const std::vector<SpMatrix>& right_t,
                     const std::vector<std::int32_t>& lookup, Eigen::Index dim, const ElementIndex& in)
{
    Column col;
    for (std::size_t t = 0; t < terms.size(); ++t) {
        const auto& term = terms[t];
        // left(i, k) with i free, right(l, j) with j free
        for (SpMatrix::InnerIterator il(term.left, static_cast<Eigen::Index>(in.row)); il; ++il) {
            for (SpMatrix::InnerIterator ir(right_t[t], static_cast<Eigen::Index>(in.col)); ir; ++ir) {
                const auto p = lookup[static_cast<std::size_t>(il.row() + ir.row() * dim)];
                if (p < 0) {
                    throw Error(ErrorKind::InvalidInput, "element set is not invariant under the superoperator");
                }
                col.emplace_back(p, term.coeff * il.value() * ir.value());
            }
        }
    }
    std::sort(col.begin(), col.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    Column merged;
    for (const auto& [p, v] : col) {
        if (!merged.empty() && merged.back().first == p) {
            merged.back().second += v;
        } else {
            merged.emplace_back(p, v);
        }
    }
    return merged;
}

SpMatrix assemble_columns(const std::vector<Column>& columns)
{
    const auto m = static_cast<Eigen::Index>(columns.size());
    SpMatrix out(m, m);
    Eigen::VectorXi sizes(m);
    for (Eigen::Index q = 0; q < m; ++q) sizes(q) = static_cast<int>(columns[static_cast<std::size_t>(q)].size());
    out.reserve(sizes);
    for (Eigen::Index q = 0; q < m; ++q) {
        for (const auto& [p, v] : columns[static_cast<std::size_t>(q)]) {
            if (v != Complex{}) out.insert(p, q) = v;
        }
    }
    out.makeCompressed();
    return out;
}

std::vector<SpMatrix> transposed_rights(const std::vector<Superoperator::Term>& terms)
{
    std::vector<SpMatrix> out;
    out.reserve(terms.size());
    for (const auto& t : terms) out.emplace_back(t.right.transpose());
    return out;
}

} // namespace

void Superoperator::add(Complex coeff, const SpMatrix& left, const SpMatrix& right)
{
    terms_.push_back({coeff, left, right});
}

void Superoperator::add_commutator(const SpMatrix& H)
{
    const SpMatrix id = identity(dim_);
    add(-I, H, id);
    add(I, id, H);
}

void Superoperator::add_dissipator(double rate, const SpMatrix& L)
{
    if (rate == 0.0) return;
    const SpMatrix id = identity(dim_);
    const SpMatrix Ld = adjoint(L);
    const SpMatrix LdL = Ld * L;
    add(rate, L, Ld);
    add(-0.5 * rate, LdL, id);
    add(-0.5 * rate, id, LdL);
}

void Superoperator::add_cross_dissipator(double rate, const SpMatrix& A, const SpMatrix& B)
{
    if (rate == 0.0) return;
    const SpMatrix id = identity(dim_);
    const SpMatrix anti = adjoint(A) * B + adjoint(B) * A;
    add(rate, A, adjoint(B));
    add(rate, B, adjoint(A));
    add(-0.5 * rate, anti, id);
    add(-0.5 * rate, id, anti);
}

void Superoperator::append(const Superoperator& other)
{
    terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
}

CMatrix Superoperator::apply(const CMatrix& rho) const
{
    CMatrix out = CMatrix::Zero(dim_, dim_);
    for (const auto& t : terms_) {
        const CMatrix left_rho = t.left * rho;
        out.noalias() += t.coeff * (left_rho * t.right);
    }
    return out;
}

CMatrix Superoperator::dense() const
{
    const Eigen::Index D = dim_;
    CMatrix out = CMatrix::Zero(D * D, D * D);
    // vec(A rho B) = (B^T kron A) vec(rho), column-stacked
    for (const auto& t : terms_) {
        for (int kr = 0; kr < t.right.outerSize(); ++kr) {
            for (SpMatrix::InnerIterator ir(t.right, kr); ir; ++ir) {
                const Eigen::Index l = ir.row();
                const Eigen::Index j = ir.col();
                for (int kl = 0; kl < t.left.outerSize(); ++kl) {
                    for (SpMatrix::InnerIterator il(t.left, kl); il; ++il) {
                        out(il.row() + j * D, il.col() + l * D) += t.coeff * il.value() * ir.value();
                    }
                }
            }
        }
    }
    return out;
}

SpMatrix Superoperator::sector_matrix_serial(const std::vector<ElementIndex>& elements) const
{
    const auto lookup = sector_lookup(elements, dim_);
    const auto right_t = transposed_rights(terms_);
    std::vector<Column> columns(elements.size());
    for (std::size_t q = 0; q < elements.size(); ++q) {
        columns[q] = sector_column(terms_, right_t, lookup, dim_, elements[q]);
    }
    return assemble_columns(columns);
}

SpMatrix Superoperator::sector_matrix(const std::vector<ElementIndex>& elements) const
{
    const auto lookup = sector_lookup(elements, dim_);
    const auto right_t = transposed_rights(terms_);
    std::vector<Column> columns(elements.size());
    const auto m = static_cast<std::ptrdiff_t>(elements.size());
    bool invariant = true;
#pragma omp parallel for schedule(dynamic, 256) reduction(&& : invariant)
    for (std::ptrdiff_t q = 0; q < m; ++q) {
        try {
            columns[static_cast<std::size_t>(q)] =
                sector_column(terms_, right_t, lookup, dim_, elements[static_cast<std::size_t>(q)]);
        } catch (const Error&) {
            invariant = false;
        }
    }
    if (!invariant) throw Error(ErrorKind::InvalidInput, "element set is not invariant under the superoperator");
    return assemble_columns(columns);
}

Superoperator FockLiouvillian::total() const
{
    Superoperator out(dimension);
    out.append(unitary);
    out.append(hot);
    out.append(cold);
    return out;
}

std::vector<ElementIndex> FockLiouvillian::zero_coherence_sector() const
{
    std::vector<ElementIndex> out;
    for (Eigen::Index col = 0; col < dimension; ++col) {
        for (Eigen::Index row = 0; row < dimension; ++row) {
            if (excitations[static_cast<std::size_t>(row)] == excitations[static_cast<std::size_t>(col)]) {
                out.push_back({row, col});
            }
        }
    }
    return out;
}

int required_nmax(const NetworkParams& params, Approach approach, double mean_tail)
{
    if (!(mean_tail > 0.0 && mean_tail < 1.0)) throw Error(ErrorKind::InvalidInput, "mean_tail must lie in (0, 1)");
    if (params.statistics == Statistics::TLS) return 1;
    // The steady states are phase-invariant Gaussian states, so each node's
    // marginal is geometric, p(n) = (1 - q) q^n with q = nbar / (nbar + 1).
    double nbar = 0.0;
    if (approach == Approach::LocalGen) {
        const auto ss = local::steady_state(params);
        nbar = std::max(ss.moments.nA, ss.moments.nB);
    } else {
        const auto ss = global::steady_state(params);
        nbar = std::max(ss.nA, ss.nB);
    }
    if (!(nbar > 0.0)) return 2;
    // Dropped levels carry sum_{n>N} n p(n) = q^{N+1} (N + 1 + nbar) of the mean.
    const double log_q = -std::log1p(1.0 / nbar);
    const double log_tol = std::log(mean_tail);
    int n = 2;
    while ((n + 1) * log_q + std::log(n + 1 + nbar) > log_tol) ++n;
    return n;
}

Superoperator global_dissipator_from_modes(const NetworkParams& params, const SpMatrix& a,
                                           const SpMatrix& b, global::Bath bath)
{
    const auto modes = global::mode_couplings(params);
    const double c = modes.basis.cos_theta();
    const double s = modes.basis.sin_theta();
    const SpMatrix d_plus = c * a + s * b;
    const SpMatrix d_minus = c * b - s * a;

    Superoperator op(a.rows());
    if (bath == global::Bath::Hot) {
        add_bath_channel(op, modes.plus.gamma_h * modes.plus.weight_h, modes.plus.boltz_h, d_plus);
        add_bath_channel(op, modes.minus.gamma_h * modes.minus.weight_h, modes.minus.boltz_h, d_minus);
    } else {
        add_bath_channel(op, modes.plus.gamma_c * modes.plus.weight_c, modes.plus.boltz_c, d_plus);
        add_bath_channel(op, modes.minus.gamma_c * modes.minus.weight_c, modes.minus.boltz_c, d_minus);
    }
    return op;
}

Superoperator global_dissipator_from_table(const global::BathGenerator& table, const SpMatrix& a,
                                           const SpMatrix& b)
{
    Superoperator op(a.rows());
    const SpMatrix ad = adjoint(a);
    const SpMatrix bd = adjoint(b);
    for (const auto& w : {table.plus, table.minus}) {
        op.add_dissipator(w.a, a);
        op.add_dissipator(w.b, b);
        op.add_cross_dissipator(w.cross, a, b);
        op.add_dissipator(w.a * w.boltzmann, ad);
        op.add_dissipator(w.b * w.boltzmann, bd);
        op.add_cross_dissipator(w.cross * w.boltzmann, ad, bd);
    }
    return op;
}

FockLiouvillian build(const NetworkParams& params, Approach approach, int n_max)
{
    validate(params);
    FockLiouvillian liou;
    liou.statistics = params.statistics;
    liou.approach = approach;

    int levels = 2;
    if (params.statistics == Statistics::TLS) {
        if (approach == Approach::GlobalGen) {
            throw Error(ErrorKind::UnsupportedStatistics, "global generator needs harmonic nodes");
        }
        liou.n_max = 1;
    } else {
        if (n_max < 2) {
            throw Error(ErrorKind::TruncationTooSmall, "n_max must be at least 2, got " + std::to_string(n_max));
        }
        liou.n_max = n_max;
        levels = n_max + 1;
    }
    if (approach == Approach::GlobalGen) normal_mode_basis(params); // GaplessSpectrum check

    // two-level lowering operators on different nodes commute, as the
    // moment equations assume
    const SpMatrix single = lowering(levels);
    const SpMatrix id = identity(levels);
    liou.a = kron(single, id);
    liou.b = kron(id, single);
    liou.dimension = liou.a.rows();
    const SpMatrix& a = liou.a;
    const SpMatrix& b = liou.b;
    const SpMatrix ad = adjoint(a);
    const SpMatrix bd = adjoint(b);

    liou.excitations.resize(static_cast<std::size_t>(liou.dimension));
    for (int na = 0; na < levels; ++na) {
        for (int nb = 0; nb < levels; ++nb) liou.excitations[static_cast<std::size_t>(na * levels + nb)] = na + nb;
    }

    liou.hamiltonian = SpMatrix(params.omega_h * (ad * a) + params.omega_c * (bd * b)
                                + params.epsilon * (ad * b + a * bd));
    liou.unitary = Superoperator(liou.dimension);
    liou.unitary.add_commutator(liou.hamiltonian);

    if (approach == Approach::LocalGen) {
        liou.hot = Superoperator(liou.dimension);
        liou.cold = Superoperator(liou.dimension);
        add_bath_channel(liou.hot, rate(hot_bath(params), params.omega_h),
                         std::exp(-params.omega_h / params.T_h), a);
        add_bath_channel(liou.cold, rate(cold_bath(params), params.omega_c),
                         std::exp(-params.omega_c / params.T_c), b);
    } else {
        liou.hot = global_dissipator_from_modes(params, a, b, global::Bath::Hot);
        liou.cold = global_dissipator_from_modes(params, a, b, global::Bath::Cold);
    }
    return liou;
}

SpMatrix steady_state(const FockLiouvillian& liou)
{
    const auto sector = liou.zero_coherence_sector();
    const auto m = static_cast<Eigen::Index>(sector.size());
    const SpMatrix M = liou.total().sector_matrix(sector);

    double scale = 0.0;
    for (int k = 0; k < M.outerSize(); ++k) {
        for (SpMatrix::InnerIterator it(M, k); it; ++it) scale = std::max(scale, std::abs(it.value()));
    }

    // The first balance equation (element |0><0|) is replaced by the trace
    // condition. The system is regular exactly when the null space is
    // one-dimensional.
    using WideTriplet = Eigen::Triplet<Complex, SuiteSparse_long>;
    std::vector<WideTriplet> trips;
    trips.reserve(static_cast<std::size_t>(M.nonZeros() + m));
    for (int k = 0; k < M.outerSize(); ++k) {
        for (SpMatrix::InnerIterator it(M, k); it; ++it) {
            if (it.row() != 0) trips.emplace_back(it.row(), it.col(), it.value());
        }
    }
    for (Eigen::Index p = 0; p < m; ++p) {
        const auto& e = sector[static_cast<std::size_t>(p)];
        if (e.row == e.col) trips.emplace_back(0, p, scale);
    }
    // 64-bit indices: the 32-bit UMFPACK variant caps its workspace near 2^31 units
    using WideSpMatrix = Eigen::SparseMatrix<Complex, Eigen::ColMajor, SuiteSparse_long>;
    WideSpMatrix A(m, m);
    A.setFromTriplets(trips.begin(), trips.end());
    trips = {};
    CVector rhs = CVector::Zero(m);
    rhs(0) = scale;

    Eigen::UmfPackLU<WideSpMatrix> lu;
    // the sector pattern is structurally symmetric; nested dissection roughly
    // halves the fill of the default column ordering
    lu.umfpackControl()(UMFPACK_ORDERING) = UMFPACK_ORDERING_METIS;
    lu.umfpackControl()(UMFPACK_STRATEGY) = UMFPACK_STRATEGY_SYMMETRIC;
    lu.compute(A);
    if (lu.info() != Eigen::Success) {
        const int code = lu.umfpackFactorizeReturncode();
        if (code == UMFPACK_WARNING_singular_matrix) {
            throw Error(ErrorKind::DegenerateNullspace, "generator null space is not one-dimensional");
        }
        throw Error(ErrorKind::NonConvergence, "sparse factorization failed, UMFPACK status " + std::to_string(code));
    }
    const CVector x = lu.solve(rhs);
    if (lu.info() != Eigen::Success || !x.allFinite()) {
        throw Error(ErrorKind::DegenerateNullspace, "steady-state solve failed");
    }

    // Hermitian part, unit trace
    const auto lookup = sector_lookup(sector, liou.dimension);
    CVector herm(m);
    double trace = 0.0;
    for (Eigen::Index p = 0; p < m; ++p) {
        const auto& e = sector[static_cast<std::size_t>(p)];
        const auto t = lookup[static_cast<std::size_t>(e.col + e.row * liou.dimension)];
        herm(p) = 0.5 * (x(p) + std::conj(x(t)));
        if (e.row == e.col) trace += herm(p).real();
    }
    herm /= trace;

    const double residual = (M * herm).norm();
    if (!(residual <= 1e-10)) {
        throw Error(ErrorKind::NonConvergence, "steady-state residual " + std::to_string(residual));
    }

    std::vector<Triplet> rho_trips;
    rho_trips.reserve(static_cast<std::size_t>(m));
    for (Eigen::Index p = 0; p < m; ++p) {
        const auto& e = sector[static_cast<std::size_t>(p)];
        rho_trips.emplace_back(e.row, e.col, herm(p));
    }
    SpMatrix rho(liou.dimension, liou.dimension);
    rho.setFromTriplets(rho_trips.begin(), rho_trips.end());

    // rho is block diagonal in the total excitation number
    const int top_excitation = *std::max_element(liou.excitations.begin(), liou.excitations.end());
    for (int s = 0; s <= top_excitation; ++s) {
        std::vector<Eigen::Index> idx;
        for (Eigen::Index i = 0; i < liou.dimension; ++i) {
            if (liou.excitations[static_cast<std::size_t>(i)] == s) idx.push_back(i);
        }
        const auto n = static_cast<Eigen::Index>(idx.size());
        CMatrix block(n, n);
        for (Eigen::Index r = 0; r < n; ++r) {
            for (Eigen::Index c = 0; c < n; ++c) {
                block(r, c) = rho.coeff(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]);
            }
        }
        const Eigen::SelfAdjointEigenSolver<CMatrix> eig(block, Eigen::EigenvaluesOnly);
        if (eig.eigenvalues().minCoeff() < -1e-10) {
            throw Error(ErrorKind::NonConvergence, "steady state is not positive semidefinite");
        }
    }

    if (liou.statistics == Statistics::Boson) {
        const int levels = liou.n_max + 1;
        double top = 0.0;
        for (int k = 0; k < levels; ++k) {
            top += rho.coeff(liou.n_max * levels + k, liou.n_max * levels + k).real(); // n_A = n_max
            if (k != liou.n_max) top += rho.coeff(k * levels + liou.n_max, k * levels + liou.n_max).real();
        }
        if (top > 1e-8) {
            throw Error(ErrorKind::TruncationTooSmall,
                        "top Fock level occupied with probability " + std::to_string(top));
        }
    }
    return rho;
}

Complex expectation(const SpMatrix& rho, const SpMatrix& op)
{
    const SpMatrix op_t = op.transpose();
    return rho.cwiseProduct(op_t).sum();
}

double heat_current(const FockLiouvillian& liou, const SpMatrix& rho, Which bath)
{
    // Tr[(A rho B) H] = Tr[rho (B H A)]
    const Superoperator& L = bath == Which::Hot ? liou.hot : liou.cold;
    Complex total{};
    for (const auto& t : L.terms()) {
        const SpMatrix kernel = t.right * liou.hamiltonian * t.left;
        total += t.coeff * expectation(rho, kernel);
    }
    return total.real();
}

local::MomentState moments(const FockLiouvillian& liou, const SpMatrix& rho)
{
    const SpMatrix& a = liou.a;
    const SpMatrix& b = liou.b;
    const SpMatrix ad = adjoint(a);
    const SpMatrix bd = adjoint(b);
    const SpMatrix adb = ad * b;
    const SpMatrix abd = a * bd;
    local::MomentState m;
    m.nA = expectation(rho, ad * a).real();
    m.nB = expectation(rho, bd * b).real();
    m.X = expectation(rho, SpMatrix(adb + abd)).real();
    m.Y = (I * expectation(rho, SpMatrix(adb - abd))).real();
    return m;
}

ModePopulations mode_populations(const FockLiouvillian& liou, const NormalModeBasis& basis,
                                 const SpMatrix& rho)
{
    const double c = basis.cos_theta();
    const double s = basis.sin_theta();
    const SpMatrix d_plus = c * liou.a + s * liou.b;
    const SpMatrix d_minus = c * liou.b - s * liou.a;
    return {expectation(rho, adjoint(d_plus) * d_plus).real(),
            expectation(rho, adjoint(d_minus) * d_minus).real()};
}

Eigen::Matrix4d quadrature_covariance(const FockLiouvillian& liou, const SpMatrix& rho)
{
    // ladder operators alpha = (a, a^dag, b, b^dag)
    const SpMatrix ops[4] = {liou.a, adjoint(liou.a), liou.b, adjoint(liou.b)};
    const bool creation[4] = {false, true, false, true};
    const int mode[4] = {0, 0, 1, 1};

    Eigen::Matrix4cd sym; // <(alpha_k alpha_l + alpha_l alpha_k)/2>
    Eigen::Vector4cd mean;
    for (int k = 0; k < 4; ++k) mean(k) = expectation(rho, ops[k]);
    for (int k = 0; k < 4; ++k) {
        for (int l = 0; l < 4; ++l) {
            // normal order, creation operators on the left; exact under truncation
            const bool swap = !creation[k] && creation[l];
            const SpMatrix prod = swap ? SpMatrix(ops[l] * ops[k]) : SpMatrix(ops[k] * ops[l]);
            Complex value = expectation(rho, prod);
            if (mode[k] == mode[l] && creation[k] != creation[l]) value += 0.5;
            sym(k, l) = value;
        }
    }

    const double r = 1.0 / std::sqrt(2.0);
    Eigen::Matrix4cd T = Eigen::Matrix4cd::Zero(); // xi = T alpha
    T(0, 0) = r;      T(0, 1) = r;
    T(1, 0) = -I * r; T(1, 1) = I * r;
    T(2, 2) = r;      T(2, 3) = r;
    T(3, 2) = -I * r; T(3, 3) = I * r;

    const Eigen::Matrix4cd second = T * sym * T.transpose();
    const Eigen::Vector4cd xi_mean = T * mean;
    Eigen::Matrix4d V;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) V(i, j) = (second(i, j) - xi_mean(i) * xi_mean(j)).real();
    }
    return V;
}

OracleResult solve(const NetworkParams& params, Approach approach, int n_max)
{
    if (n_max <= 0) n_max = required_nmax(params, approach);
    const FockLiouvillian liou = build(params, approach, n_max);
    const SpMatrix rho = steady_state(liou);

    OracleResult out;
    out.n_max = liou.n_max;
    out.moments = moments(liou, rho);
    out.J_h = heat_current(liou, rho, Which::Hot);
    out.J_c = heat_current(liou, rho, Which::Cold);
    if (params.statistics == Statistics::Boson) {
        if (params.epsilon * params.epsilon < params.omega_h * params.omega_c) {
            const auto pops = mode_populations(liou, normal_mode_basis(params), rho);
            out.n_plus = pops.n_plus;
            out.n_minus = pops.n_minus;
        }
        out.covariance = quadrature_covariance(liou, rho);
    }
    return out;
}

} // namespace qheat::oracle
