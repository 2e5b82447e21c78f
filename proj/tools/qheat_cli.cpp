// qheat: steady-state heat transport through a two-node quantum network,
// local versus global master equations.
//
//   qheat point  [params]                  one row per approach
//   qheat sweep  --axis1 name:a:b:n[:log] [--axis2 ...] [params]
//   qheat fig2 | fig3 | fig4               presets with the published constants

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "qheat/error.hpp"
#include "qheat/sweep.hpp"

namespace {

struct Options {
    std::string config;
    std::string approach{"both"};
    bool oracle{false};
    int nmax{0};
    std::string out;
    bool gnuplot{false};
    std::optional<double> omega_h, omega_c, epsilon, T_h, T_c, kappa;
    std::string statistics;
    std::string axis1;
    std::string axis2;
};

void add_common(CLI::App* cmd, Options& o, bool with_params)
{
    cmd->add_option("--approach", o.approach, "local | global | both")
        ->check(CLI::IsMember({"local", "global", "both"}));
    cmd->add_flag("--oracle", o.oracle, "add truncated-Fock Liouvillian rows (slow)");
    cmd->add_option("--nmax", o.nmax, "Fock cutoff per mode for --oracle (default: tail bound)");
    cmd->add_option("--out", o.out, "output file (default: stdout)");
    cmd->add_flag("--gnuplot", o.gnuplot, "whitespace-separated gnuplot layout instead of CSV");
    if (!with_params) return;
    cmd->add_option("--config", o.config, "key=value parameter file");
    cmd->add_option("--omega_h", o.omega_h);
    cmd->add_option("--omega_c", o.omega_c);
    cmd->add_option("--epsilon", o.epsilon);
    cmd->add_option("--T_h", o.T_h);
    cmd->add_option("--T_c", o.T_c);
    cmd->add_option("--kappa", o.kappa);
    cmd->add_option("--statistics", o.statistics, "boson | tls");
}

qheat::NetworkParams resolve_params(const Options& o)
{
    qheat::NetworkParams p;
    if (!o.config.empty()) p = qheat::load_config(o.config, p);
    if (o.omega_h) p.omega_h = *o.omega_h;
    if (o.omega_c) p.omega_c = *o.omega_c;
    if (o.epsilon) p.epsilon = *o.epsilon;
    if (o.T_h) p.T_h = *o.T_h;
    if (o.T_c) p.T_c = *o.T_c;
    if (o.kappa) p.kappa = *o.kappa;
    if (!o.statistics.empty()) p.statistics = qheat::parse_statistics(o.statistics);
    return p;
}

qheat::sweep::ApproachSet approaches(const Options& o)
{
    qheat::sweep::ApproachSet set;
    set.local = o.approach != "global";
    set.global = o.approach != "local";
    set.oracle_local = o.oracle && set.local;
    set.oracle_global = o.oracle && set.global;
    return set;
}

void emit(const Options& o, const qheat::sweep::SweepSpec& spec, bool sigma_sign)
{
    const auto rows = qheat::sweep::evaluate_parallel(spec);
    std::ofstream file;
    if (!o.out.empty()) {
        file.open(o.out);
        if (!file) throw qheat::Error(qheat::ErrorKind::InvalidInput, "cannot write '" + o.out + "'");
    }
    std::ostream& os = o.out.empty() ? std::cout : file;
    if (o.gnuplot) {
        qheat::sweep::write_gnuplot(os, rows, spec);
    } else {
        qheat::sweep::write_csv(os, rows, {.sigma_sign = sigma_sign});
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Local vs global master equations for a two-node heat-transport network"};
    app.require_subcommand(1);

    Options o;
    auto* point = app.add_subcommand("point", "evaluate one parameter set");
    add_common(point, o, true);

    auto* sweep = app.add_subcommand("sweep", "1-D or 2-D parameter sweep");
    add_common(sweep, o, true);
    sweep->add_option("--axis1", o.axis1, "name:start:stop:count[:lin|log]")->required();
    sweep->add_option("--axis2", o.axis2, "optional second axis");

    auto* fig2 = app.add_subcommand("fig2", "local entropy-production sign map over (omega_h, T_h)");
    auto* fig3 = app.add_subcommand("fig3", "populations and currents versus epsilon");
    auto* fig4 = app.add_subcommand("fig4", "populations and currents versus omega_h");
    for (auto* cmd : {fig2, fig3, fig4}) add_common(cmd, o, false);

    CLI11_PARSE(app, argc, argv);

    try {
        namespace sw = qheat::sweep;
        if (point->parsed()) {
            const auto p = resolve_params(o);
            sw::SweepSpec spec;
            spec.fixed = p;
            spec.axis1 = sw::SweepAxis{"omega_h", {p.omega_h}};
            spec.approaches = approaches(o);
            spec.oracle_nmax = o.nmax;
            emit(o, spec, false);
        } else if (sweep->parsed()) {
            sw::SweepSpec spec;
            spec.fixed = resolve_params(o);
            spec.axis1 = sw::SweepAxis::parse(o.axis1);
            if (!o.axis2.empty()) spec.axis2 = sw::SweepAxis::parse(o.axis2);
            spec.approaches = approaches(o);
            spec.oracle_nmax = o.nmax;
            emit(o, spec, false);
        } else {
            sw::SweepSpec spec = fig2->parsed() ? sw::preset_fig2()
                                 : fig3->parsed() ? sw::preset_fig3()
                                                  : sw::preset_fig4();
            spec.approaches = approaches(o);
            spec.oracle_nmax = o.nmax;
            emit(o, spec, fig2->parsed());
        }
    } catch (const qheat::Error& e) {
        std::cerr << "qheat: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
