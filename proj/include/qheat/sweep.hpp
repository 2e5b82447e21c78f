// sweep.hpp: single-point evaluation, parameter sweeps, figure presets and
// CSV emission. Grid points are independent; evaluate_parallel() spreads them
// over OpenMP threads and evaluate_serial() is the reference it must match.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qheat/model.hpp"

namespace qheat::sweep {

struct ApproachSet {
    bool local{true};
    bool global{true};
    bool oracle_local{false};
    bool oracle_global{false};
};

struct SweepAxis {
    std::string name;
    std::vector<double> values;

    /// count >= 2 and start < stop, else InvalidInput.
    static SweepAxis linear(std::string name, double start, double stop, int count);
    static SweepAxis logarithmic(std::string name, double start, double stop, int count);
    /// Parses "name:start:stop:count[:lin|log]".
    static SweepAxis parse(const std::string& text);
};

struct SweepSpec {
    SweepAxis axis1;
    std::optional<SweepAxis> axis2;
    NetworkParams fixed;
    ApproachSet approaches;
    int oracle_nmax{0}; // 0 = tail-bound choice
};

struct ResultRow {
    std::string approach;
    NetworkParams params;
    std::optional<double> n_A, n_B, X, Y, n_plus, n_minus, J_h, J_c, sigma;
    std::optional<double> cor_xAxB, cor_xApB, cor_pAxB, cor_pApB;
    std::optional<bool> separable;
    std::optional<bool> secular_warning;
    std::string error;
};

/// One row per requested approach; module errors land in the error column.
std::vector<ResultRow> run_point(const NetworkParams& params, const ApproachSet& approaches,
                                 int oracle_nmax = 0);

/// Parameter sets of the grid, axis1 outermost.
std::vector<NetworkParams> grid_points(const SweepSpec& spec);

std::vector<ResultRow> evaluate_serial(const SweepSpec& spec);
std::vector<ResultRow> evaluate_parallel(const SweepSpec& spec);

// Presets with the constants of the published figures.
SweepSpec preset_fig2(); // local entropy production over (omega_h, T_h)
SweepSpec preset_fig3(); // log sweep in epsilon
SweepSpec preset_fig4(); // sweep in omega_h, refined around resonance

struct CsvOptions {
    bool sigma_sign{false}; // append a sign(sigma) column
};

const std::vector<std::string>& csv_columns();
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows, CsvOptions options = {});

/// Whitespace-separated columns, '#' header, blank line whenever the axis1
/// value changes (gnuplot's grid layout). Missing values print as NaN.
void write_gnuplot(std::ostream& out, const std::vector<ResultRow>& rows, const SweepSpec& spec);

std::string format_double(double value);

} // namespace qheat::sweep
