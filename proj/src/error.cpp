#include "cfgn/error.hpp"

namespace cfgn {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::domain_error: return "DomainError";
    case ErrorKind::singular_parameter: return "SingularParameter";
    case ErrorKind::singular_frequency: return "SingularFrequency";
    case ErrorKind::non_convergence: return "NonConvergence";
    case ErrorKind::factorization_failure: return "FactorizationFailure";
    case ErrorKind::length_mismatch: return "LengthMismatch";
    case ErrorKind::grid_overrun: return "GridOverrun";
    case ErrorKind::period_mismatch: return "PeriodMismatch";
    case ErrorKind::unknown_cyclic_frequency: return "UnknownCyclicFrequency";
    case ErrorKind::config_error: return "ConfigError";
    case ErrorKind::io_error: return "IoError";
    }
    return "Unknown";
}

} // namespace cfgn
