// error.hpp: error kinds raised by the qheat modules

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qheat {

enum class ErrorKind {
    NonPositiveParameter,
    NegativeCoupling,
    GaplessSpectrum,
    UnsupportedStatistics,
    NegativeFrequency,
    SingularSystem,
    StatisticsMismatch,
    UnphysicalCovariance,
    TruncationTooSmall,
    DegenerateNullspace,
    NonConvergence,
    InvalidInput,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::NonPositiveParameter: return "NonPositiveParameter";
    case ErrorKind::NegativeCoupling: return "NegativeCoupling";
    case ErrorKind::GaplessSpectrum: return "GaplessSpectrum";
    case ErrorKind::UnsupportedStatistics: return "UnsupportedStatistics";
    case ErrorKind::NegativeFrequency: return "NegativeFrequency";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::StatisticsMismatch: return "StatisticsMismatch";
    case ErrorKind::UnphysicalCovariance: return "UnphysicalCovariance";
    case ErrorKind::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorKind::DegenerateNullspace: return "DegenerateNullspace";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace qheat
