// bath.cpp

#include "qheat/bath.hpp"

#include <cmath>
#include <string>

#include "qheat/error.hpp"

namespace qheat {

double rate(const BathSpec& bath, double omega)
{
    if (!(bath.temperature > 0.0) || !(bath.kappa > 0.0)) {
        throw Error(ErrorKind::NonPositiveParameter, "bath temperature and kappa must be positive");
    }
    if (omega < 0.0 || std::isnan(omega)) {
        throw Error(ErrorKind::NegativeFrequency, "rate requested at Omega = " + std::to_string(omega));
    }
    if (omega == 0.0) return 0.0;
    // -expm1(-x) = 1 - e^{-x} without cancellation for small x
    const double bose_denominator = -std::expm1(-omega / bath.temperature);
    return bath.kappa * omega * omega * omega / bose_denominator;
}

} // namespace qheat
