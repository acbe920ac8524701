#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cfgn/config.hpp"
#include "cfgn/error.hpp"

namespace cfgn {

inline constexpr int exit_success = 0;
inline constexpr int exit_comparison_failed = 1;
inline constexpr int exit_config_error = 2;
inline constexpr int exit_numerical_error = 3;

struct RunOutcome {
    int exit_code = exit_success;
    std::vector<std::filesystem::path> artifacts;
    std::string summary; // JSON
};

inline const std::vector<std::string> subcommands{"simulate", "theory", "estimate", "compare", "figures"};

/// Runs a subcommand, writing artifacts below cfg.out_dir. Library errors
/// propagate as cfgn::Error.
[[nodiscard]] RunOutcome run(std::string_view subcommand, const ExperimentConfig& cfg);

[[nodiscard]] int exit_code_for(ErrorKind kind) noexcept;
[[nodiscard]] std::string error_json(const Error& e);

// '#' comment lines identifying the artifact, the config hash, seed and tool.
[[nodiscard]] std::string artifact_header(const ExperimentConfig& cfg, std::string_view artifact);

} // namespace cfgn
