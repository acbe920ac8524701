#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cfgn/estimation.hpp"
#include "cfgn/params.hpp"

namespace cfgn {

/// Experiment description, read from a key = value file with [tables]:
///
///   [process]     h1 h2 sigma1 sigma2 rho variant lambda0_over_pi a1 a2 half_limit
///   [simulation]  n_points reps asymptote_reps seed threads
///   [estimation]  acvf_n h_max spectrum_h_max window tol
///   [freq_grid]   count max_over_pi
///   [output]      dir statistics
///
/// Every key is optional; defaults are the values below.
struct ExperimentConfig {
    double h1 = 0.4;
    double h2 = 0.7;
    double sigma1 = 1.0;
    double sigma2 = 1.0;
    double rho = 0.15;
    Variant variant = Variant::causal;
    double lambda0_over_pi = 0.1;
    double a1 = 1.0;
    double a2 = 1.0;
    bool half_limit = false;

    long n_points = 64;
    long reps = 10000;
    long asymptote_reps = 50000; // ensembles behind the asymptote figures
    std::uint64_t seed = 1;
    long threads = 1;

    long acvf_n = 20;
    long h_max = 20;          // lags of the ACVF and CAF tables
    long spectrum_h_max = 20; // lag truncation of the spectrum estimator
    LagWindow window = LagWindow::none;
    double tol = 4.0;

    long freq_count = 1024;
    double freq_max_over_pi = 1.0;

    std::string out_dir = "out";
    std::vector<std::string> statistics{"acvf", "caf", "spectrum", "asymptote"};

    [[nodiscard]] CfgnParams cfgn_params() const;
    // freq_count equispaced points on (0, freq_max_over_pi * pi].
    [[nodiscard]] std::vector<double> freq_grid() const;
    [[nodiscard]] bool wants(std::string_view statistic) const;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

inline const std::vector<std::string> known_statistics{"acvf", "caf", "spectrum", "asymptote"};

/// ConfigError on syntax errors, unknown keys, wrong value types or out of
/// range settings; process parameters rejected upstream keep their error kind
/// (DomainError, SingularParameter).
[[nodiscard]] ExperimentConfig parse_config(std::string_view text);
[[nodiscard]] ExperimentConfig load_config(const std::filesystem::path& file);
void validate(const ExperimentConfig& cfg);

/// Canonical text form; parse_config(to_text(c)) == c.
[[nodiscard]] std::string to_text(const ExperimentConfig& cfg);

// Hash of the canonical text form, ignoring threads and output.dir (neither
// changes any result).
[[nodiscard]] std::uint64_t config_hash(const ExperimentConfig& cfg);

[[nodiscard]] std::string_view to_string(Variant v) noexcept;
[[nodiscard]] Variant parse_variant(std::string_view s);

} // namespace cfgn
