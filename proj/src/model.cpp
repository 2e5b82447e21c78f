// model.cpp: parameter validation, normal modes, config ingestion

#include "qheat/model.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>

#include "qheat/error.hpp"

namespace qheat {

namespace {

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

void require_positive(double value, const char* name)
{
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw Error(ErrorKind::NonPositiveParameter,
                    std::string(name) + " must be positive and finite, got " + std::to_string(value));
    }
}

} // namespace

std::string_view to_string(Statistics s) noexcept
{
    return s == Statistics::Boson ? "boson" : "tls";
}

Statistics parse_statistics(std::string_view text)
{
    const std::string t = trim(text);
    if (t == "boson" || t == "Boson" || t == "ho") return Statistics::Boson;
    if (t == "tls" || t == "TLS") return Statistics::TLS;
    throw Error(ErrorKind::InvalidInput, "unknown statistics '" + t + "' (expected boson or tls)");
}

NetworkParams validate(const NetworkParams& params)
{
    require_positive(params.omega_h, "omega_h");
    require_positive(params.omega_c, "omega_c");
    require_positive(params.T_h, "T_h");
    require_positive(params.T_c, "T_c");
    require_positive(params.kappa, "kappa");
    if (!(params.epsilon >= 0.0) || !std::isfinite(params.epsilon)) {
        throw Error(ErrorKind::NegativeCoupling,
                    "epsilon must be non-negative, got " + std::to_string(params.epsilon));
    }
    return params;
}

double NormalModeBasis::cos_theta() const { return std::sqrt(c2); }
double NormalModeBasis::sin_theta() const { return std::sqrt(s2); }

NormalModeBasis normal_mode_basis(const NetworkParams& params)
{
    validate(params);
    if (params.statistics != Statistics::Boson) {
        throw Error(ErrorKind::UnsupportedStatistics,
                    "normal modes are only defined for harmonic nodes");
    }
    const double wh = params.omega_h;
    const double wc = params.omega_c;
    const double eps = params.epsilon;
    const double gap_product = wh * wc - eps * eps;
    if (!(gap_product > 0.0)) {
        throw Error(ErrorKind::GaplessSpectrum, "eps^2 >= omega_h * omega_c gives omega_minus <= 0");
    }

    NormalModeBasis basis;
    const double radius = std::hypot(0.5 * (wh - wc), eps);
    basis.omega_plus = 0.5 * (wh + wc) + radius;
    // product form avoids cancellation when omega_minus is small
    basis.omega_minus = gap_product / basis.omega_plus;
    basis.theta = 0.5 * std::atan2(2.0 * eps, wh - wc);
    // cos^2 and sin^2 from the half-angle identities; the small one goes
    // through sin^2(2 theta) so it keeps full relative precision
    const double cos2 = 0.5 * (wh - wc) / radius;
    const double sin2 = eps / radius;
    if (radius == 0.0) {
        basis.c2 = 1.0;
        basis.s2 = 0.0;
    } else if (cos2 >= 0.0) {
        basis.c2 = 0.5 * (1.0 + cos2);
        basis.s2 = 0.25 * sin2 * sin2 / basis.c2;
    } else {
        basis.s2 = 0.5 * (1.0 - cos2);
        basis.c2 = 0.25 * sin2 * sin2 / basis.s2;
    }
    return basis;
}

double entropy_production(const NetworkParams& params, double J_h, double J_c)
{
    return -J_h / params.T_h - J_c / params.T_c;
}

double thermal_occupation(Statistics s, double omega, double T)
{
    const double x = omega / T;
    if (s == Statistics::Boson) return 1.0 / std::expm1(x);
    return 1.0 / (std::exp(x) + 1.0);
}

bool is_field_name(std::string_view name) noexcept
{
    return name == "omega_h" || name == "omega_c" || name == "epsilon" || name == "T_h" ||
           name == "T_c" || name == "kappa";
}

void set_field(NetworkParams& params, std::string_view name, double value)
{
    if (name == "omega_h") params.omega_h = value;
    else if (name == "omega_c") params.omega_c = value;
    else if (name == "epsilon") params.epsilon = value;
    else if (name == "T_h") params.T_h = value;
    else if (name == "T_c") params.T_c = value;
    else if (name == "kappa") params.kappa = value;
    else throw Error(ErrorKind::InvalidInput, "unknown parameter '" + std::string(name) + "'");
}

double get_field(const NetworkParams& params, std::string_view name)
{
    if (name == "omega_h") return params.omega_h;
    if (name == "omega_c") return params.omega_c;
    if (name == "epsilon") return params.epsilon;
    if (name == "T_h") return params.T_h;
    if (name == "T_c") return params.T_c;
    if (name == "kappa") return params.kappa;
    throw Error(ErrorKind::InvalidInput, "unknown parameter '" + std::string(name) + "'");
}

NetworkParams parse_config(std::istream& in, NetworkParams base)
{
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorKind::InvalidInput,
                        "config line " + std::to_string(lineno) + ": expected key=value");
        }
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        if (key == "statistics") {
            base.statistics = parse_statistics(value);
            continue;
        }
        if (!is_field_name(key)) {
            throw Error(ErrorKind::InvalidInput,
                        "config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
        std::size_t used = 0;
        double parsed = 0.0;
        try {
            parsed = std::stod(value, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != value.size()) {
            throw Error(ErrorKind::InvalidInput,
                        "config line " + std::to_string(lineno) + ": bad number '" + value + "'");
        }
        set_field(base, key, parsed);
    }
    return base;
}

NetworkParams load_config(const std::string& path, NetworkParams base)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidInput, "cannot open config file '" + path + "'");
    return parse_config(in, base);
}

} // namespace qheat
