#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cfgn {

enum class ErrorKind {
    domain_error,
    singular_parameter,
    singular_frequency,
    non_convergence,
    factorization_failure,
    length_mismatch,
    grid_overrun,
    period_mismatch,
    unknown_cyclic_frequency,
    config_error,
    io_error,
};

[[nodiscard]] std::string_view to_string(ErrorKind kind) noexcept;

// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace cfgn
