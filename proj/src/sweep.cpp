// sweep.cpp

#include "qheat/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "qheat/error.hpp"
#include "qheat/gaussian.hpp"
#include "qheat/global_mme.hpp"
#include "qheat/local_mme.hpp"
#include "qheat/oracle.hpp"

namespace qheat::sweep {

namespace {

void check_range(const std::string& name, double start, double stop, int count)
{
    if (count < 2) throw Error(ErrorKind::InvalidInput, "axis '" + name + "' needs count >= 2");
    if (!(start < stop)) throw Error(ErrorKind::InvalidInput, "axis '" + name + "' needs start < stop");
    if (!is_field_name(name)) throw Error(ErrorKind::InvalidInput, "cannot sweep unknown parameter '" + name + "'");
}

void fill_correlations(ResultRow& row, const gaussian::CovarianceMatrix& V)
{
    const auto report = gaussian::correlations(V);
    row.cor_xAxB = report.cor_xAxB;
    row.cor_xApB = report.cor_xApB;
    row.cor_pAxB = report.cor_pAxB;
    row.cor_pApB = report.cor_pApB;
    row.separable = report.separable;
}

ResultRow local_row(const NetworkParams& p)
{
    ResultRow row;
    row.approach = "local";
    row.params = p;
    try {
        const auto ss = local::steady_state(p);
        row.n_A = ss.moments.nA;
        row.n_B = ss.moments.nB;
        row.X = ss.moments.X;
        row.Y = ss.moments.Y;
        row.J_h = ss.J_h;
        row.J_c = ss.J_c;
        row.sigma = ss.sigma;
        if (p.statistics == Statistics::Boson) fill_correlations(row, gaussian::covariance_local(ss.moments));
    } catch (const Error& e) {
        row.error = std::string(to_string(e.kind()));
    }
    return row;
}

ResultRow global_row(const NetworkParams& p)
{
    ResultRow row;
    row.approach = "global";
    row.params = p;
    try {
        const auto ss = global::steady_state(p);
        const double cs = ss.basis.cos_theta() * ss.basis.sin_theta();
        row.n_A = ss.nA;
        row.n_B = ss.nB;
        row.X = 2.0 * cs * (ss.n_plus - ss.n_minus);
        row.Y = 0.0;
        row.n_plus = ss.n_plus;
        row.n_minus = ss.n_minus;
        row.J_h = ss.J_h;
        row.J_c = ss.J_c;
        row.sigma = ss.sigma;
        row.secular_warning = ss.secular_warning;
        fill_correlations(row, gaussian::covariance_global(ss.basis, ss.n_plus, ss.n_minus));
    } catch (const Error& e) {
        row.error = std::string(to_string(e.kind()));
    }
    return row;
}

ResultRow oracle_row(const NetworkParams& p, oracle::Approach approach, int nmax)
{
    ResultRow row;
    row.approach = approach == oracle::Approach::LocalGen ? "oracle-local" : "oracle-global";
    row.params = p;
    try {
        const auto r = oracle::solve(p, approach, nmax);
        row.n_A = r.moments.nA;
        row.n_B = r.moments.nB;
        row.X = r.moments.X;
        row.Y = r.moments.Y;
        row.J_h = r.J_h;
        row.J_c = r.J_c;
        row.sigma = entropy_production(p, r.J_h, r.J_c);
        if (p.statistics == Statistics::Boson) {
            if (approach == oracle::Approach::GlobalGen) {
                row.n_plus = r.n_plus;
                row.n_minus = r.n_minus;
                row.secular_warning = global::secular_warning(global::mode_couplings(p));
            }
            fill_correlations(row, gaussian::CovarianceMatrix{r.covariance});
        }
    } catch (const Error& e) {
        row.error = std::string(to_string(e.kind()));
    }
    return row;
}

std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string{}; }
std::string cell(const std::optional<bool>& v) { return v ? (*v ? "true" : "false") : std::string{}; }

std::vector<std::string> row_cells(const ResultRow& r)
{
    const auto& p = r.params;
    return {r.approach,
            format_double(p.omega_h), format_double(p.omega_c), format_double(p.epsilon),
            format_double(p.T_h), format_double(p.T_c), format_double(p.kappa),
            std::string(to_string(p.statistics)),
            cell(r.n_A), cell(r.n_B), cell(r.X), cell(r.Y), cell(r.n_plus), cell(r.n_minus),
            cell(r.J_h), cell(r.J_c), cell(r.sigma),
            cell(r.cor_xAxB), cell(r.cor_xApB), cell(r.cor_pAxB), cell(r.cor_pApB),
            cell(r.separable), cell(r.secular_warning), r.error};
}

std::vector<ResultRow> flatten(std::vector<std::vector<ResultRow>>&& per_point)
{
    std::vector<ResultRow> rows;
    for (auto& point : per_point) {
        for (auto& row : point) rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

SweepAxis SweepAxis::linear(std::string name, double start, double stop, int count)
{
    check_range(name, start, stop, count);
    SweepAxis axis{std::move(name), {}};
    axis.values.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        axis.values.push_back(start + (stop - start) * static_cast<double>(i) / (count - 1));
    }
    return axis;
}

SweepAxis SweepAxis::logarithmic(std::string name, double start, double stop, int count)
{
    check_range(name, start, stop, count);
    if (!(start > 0.0)) throw Error(ErrorKind::InvalidInput, "log axis needs start > 0");
    SweepAxis axis{std::move(name), {}};
    const double l0 = std::log10(start);
    const double l1 = std::log10(stop);
    for (int i = 0; i < count; ++i) {
        axis.values.push_back(std::pow(10.0, l0 + (l1 - l0) * static_cast<double>(i) / (count - 1)));
    }
    return axis;
}

SweepAxis SweepAxis::parse(const std::string& text)
{
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 4 && parts.size() != 5) {
        throw Error(ErrorKind::InvalidInput, "axis spec '" + text + "' is not name:start:stop:count[:lin|log]");
    }
    double start = 0.0;
    double stop = 0.0;
    int count = 0;
    try {
        start = std::stod(parts[1]);
        stop = std::stod(parts[2]);
        count = std::stoi(parts[3]);
    } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidInput, "axis spec '" + text + "' has a malformed number");
    }
    const std::string scale = parts.size() == 5 ? parts[4] : "lin";
    if (scale == "log") return logarithmic(parts[0], start, stop, count);
    if (scale == "lin") return linear(parts[0], start, stop, count);
    throw Error(ErrorKind::InvalidInput, "axis scale must be lin or log, got '" + scale + "'");
}

std::vector<ResultRow> run_point(const NetworkParams& params, const ApproachSet& approaches, int oracle_nmax)
{
    std::vector<ResultRow> rows;
    // parameter problems are reported once per approach, like module errors
    std::string invalid;
    try {
        validate(params);
    } catch (const Error& e) {
        invalid = std::string(to_string(e.kind()));
    }
    auto emit = [&](const char* name, auto&& make) {
        if (!invalid.empty()) {
            ResultRow row;
            row.approach = name;
            row.params = params;
            row.error = invalid;
            rows.push_back(row);
        } else {
            rows.push_back(make());
        }
    };
    if (approaches.local) emit("local", [&] { return local_row(params); });
    if (approaches.global) emit("global", [&] { return global_row(params); });
    if (approaches.oracle_local) {
        emit("oracle-local", [&] { return oracle_row(params, oracle::Approach::LocalGen, oracle_nmax); });
    }
    if (approaches.oracle_global) {
        emit("oracle-global", [&] { return oracle_row(params, oracle::Approach::GlobalGen, oracle_nmax); });
    }
    return rows;
}

std::vector<NetworkParams> grid_points(const SweepSpec& spec)
{
    std::vector<NetworkParams> points;
    for (double v1 : spec.axis1.values) {
        NetworkParams p = spec.fixed;
        set_field(p, spec.axis1.name, v1);
        if (!spec.axis2) {
            points.push_back(p);
            continue;
        }
        for (double v2 : spec.axis2->values) {
            NetworkParams q = p;
            set_field(q, spec.axis2->name, v2);
            points.push_back(q);
        }
    }
    return points;
}

std::vector<ResultRow> evaluate_serial(const SweepSpec& spec)
{
    const auto points = grid_points(spec);
    std::vector<std::vector<ResultRow>> per_point(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        per_point[i] = run_point(points[i], spec.approaches, spec.oracle_nmax);
    }
    return flatten(std::move(per_point));
}

std::vector<ResultRow> evaluate_parallel(const SweepSpec& spec)
{
    const auto points = grid_points(spec);
    std::vector<std::vector<ResultRow>> per_point(points.size());
    const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        per_point[static_cast<std::size_t>(i)] =
            run_point(points[static_cast<std::size_t>(i)], spec.approaches, spec.oracle_nmax);
    }
    return flatten(std::move(per_point));
}

SweepSpec preset_fig2()
{
    SweepSpec spec;
    spec.fixed = NetworkParams{.omega_h = 10.0, .omega_c = 5.0, .epsilon = 1e-4,
                               .T_h = 12.0, .T_c = 10.0, .kappa = 1e-7};
    spec.axis1 = SweepAxis::linear("omega_h", 0.5, 15.0, 200);
    // The hot bath stays hotter than the cold one (T_c = 10).
    spec.axis2 = SweepAxis::linear("T_h", 10.5, 30.0, 200);
    spec.approaches = {.local = true, .global = true};
    return spec;
}

SweepSpec preset_fig3()
{
    SweepSpec spec;
    spec.fixed = NetworkParams{.omega_h = 10.0, .omega_c = 5.0, .epsilon = 1e-3,
                               .T_h = 12.0, .T_c = 10.0, .kappa = 1e-4};
    spec.axis1 = SweepAxis::logarithmic("epsilon", 1e-5, 1.0, 101);
    return spec;
}

SweepSpec preset_fig4()
{
    SweepSpec spec;
    spec.fixed = NetworkParams{.omega_h = 10.0, .omega_c = 5.0, .epsilon = 1e-3,
                               .T_h = 12.0, .T_c = 10.0, .kappa = 1e-7};
    auto coarse = SweepAxis::linear("omega_h", 0.5, 15.0, 291);  // step 0.05
    const auto inset = SweepAxis::linear("omega_h", 4.95, 5.05, 101); // step 0.001
    for (double v : inset.values) coarse.values.push_back(v);
    std::sort(coarse.values.begin(), coarse.values.end());
    coarse.values.erase(std::unique(coarse.values.begin(), coarse.values.end(),
                                    [](double x, double y) { return std::abs(x - y) < 1e-9; }),
                        coarse.values.end());
    spec.axis1 = std::move(coarse);
    return spec;
}

const std::vector<std::string>& csv_columns()
{
    static const std::vector<std::string> columns = {
        "approach", "omega_h", "omega_c", "epsilon", "T_h", "T_c", "kappa", "statistics",
        "n_A", "n_B", "X", "Y", "n_plus", "n_minus", "J_h", "J_c", "sigma",
        "cor_xAxB", "cor_xApB", "cor_pAxB", "cor_pApB", "separable", "secular_warning", "error"};
    return columns;
}

std::string format_double(double value)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows, CsvOptions options)
{
    const auto& columns = csv_columns();
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    if (options.sigma_sign) out << ",sigma_sign";
    out << '\n';
    for (const auto& row : rows) {
        const auto cells = row_cells(row);
        for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
        if (options.sigma_sign) {
            out << ',';
            if (row.sigma) out << (*row.sigma > 0.0 ? 1 : (*row.sigma < 0.0 ? -1 : 0));
        }
        out << '\n';
    }
}

void write_gnuplot(std::ostream& out, const std::vector<ResultRow>& rows, const SweepSpec& spec)
{
    const auto& columns = csv_columns();
    out << '#';
    for (const auto& c : columns) out << ' ' << c;
    out << '\n';
    std::optional<double> previous;
    for (const auto& row : rows) {
        const double key = get_field(row.params, spec.axis1.name);
        if (spec.axis2 && previous && *previous != key) out << '\n';
        previous = key;
        const auto cells = row_cells(row);
        for (std::size_t i = 0; i < cells.size(); ++i) {
            out << (i ? " " : "") << (cells[i].empty() ? "NaN" : cells[i]);
        }
        out << '\n';
    }
}

} // namespace qheat::sweep
