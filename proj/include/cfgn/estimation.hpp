#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "cfgn/covariance.hpp"
#include "cfgn/cyclic.hpp"
#include "cfgn/sampler.hpp"
#include "cfgn/spectral.hpp"

namespace cfgn {

struct EstimationOptions {
    // Replications are reduced in fixed chunks combined pairwise, so results
    // do not depend on the thread count.
    unsigned threads = 1;
};

/// Ensemble ACVF gamma_hat(n, h) = mean_r Y_r(n) Y_r(n + h), h = 0..h_max.
struct EmpiricalAcvf {
    LagSeries estimate;
    std::vector<double> std_error;
};

[[nodiscard]] EmpiricalAcvf empirical_acvf(const Ensemble& e, long n, long h_max, const EstimationOptions& opt = {});

struct ComplexEstimate {
    complex value;
    double se_re = 0.0;
    double se_im = 0.0;
};

/// Largest multiple of the modulation period not exceeding length - h_max.
[[nodiscard]] long snap_window(const CfgnParams& cp, std::size_t length, long h_max);

/// R_hat^alpha(h) = (1/N) sum_{n < N} gamma_hat(n, h) e^{-i alpha n}, h = 0..h_max.
/// For alpha != 0, N must be a multiple of the modulation period (PeriodMismatch).
[[nodiscard]] std::vector<ComplexEstimate> empirical_caf_series(const Ensemble& e, CyclicFrequency alpha, long h_max,
                                                                long n_window, const EstimationOptions& opt = {});

[[nodiscard]] ComplexEstimate empirical_caf(const Ensemble& e, double alpha, long h, long n_window,
                                            const EstimationOptions& opt = {});

enum class LagWindow { none, bartlett };

struct EmpiricalSpectrum {
    SpectrumSeries estimate;
    std::vector<double> se_re;
    std::vector<double> se_im;
};

/// S_hat^alpha(lambda) = (1/2pi) sum_{|h| <= h_max} w(h) R_hat^alpha(h) e^{-i lambda h},
/// with R_hat^alpha(-h) = e^{-i alpha h} R_hat^alpha(h). n_window <= 0 selects snap_window.
[[nodiscard]] EmpiricalSpectrum empirical_cyclic_spectrum(const Ensemble& e, CyclicFrequency alpha,
                                                          std::span<const double> freqs, long h_max,
                                                          LagWindow window = LagWindow::none, long n_window = 0,
                                                          const EstimationOptions& opt = {});

/// Expectation of the estimator above: the windowed truncated lag sum of the
/// theoretical CAF.
[[nodiscard]] SpectrumSeries truncated_cyclic_spectrum(const CyclicModel& model, CyclicFrequency alpha,
                                                       std::span<const double> freqs, long h_max,
                                                       LagWindow window = LagWindow::none);

struct ComparisonReport {
    std::string statistic_name;
    std::vector<double> grid;
    std::vector<complex> theoretical;
    std::vector<complex> empirical;
    std::vector<double> se_re;
    std::vector<double> se_im;
    std::vector<double> se_ratio;
    double max_abs_err = 0.0;
    double max_se_ratio = 0.0;
    std::size_t worst_index = 0;
    double threshold = 4.0;
    bool pass = true;
};

/// Per-point error in standard errors, max(|d_re| / se_re, |d_im| / se_im).
[[nodiscard]] ComparisonReport compare(std::string name, std::span<const double> grid,
                                       std::span<const complex> theory, std::span<const complex> empirical,
                                       std::span<const double> se_re, std::span<const double> se_im,
                                       double threshold = 4.0);

[[nodiscard]] ComparisonReport compare(std::string name, std::span<const double> grid, std::span<const double> theory,
                                       std::span<const double> empirical, std::span<const double> se,
                                       double threshold = 4.0);

/// Columns grid,theory_re,theory_im,emp_re,emp_im,se_re,se_im,se_ratio.
[[nodiscard]] std::string report_csv(const ComparisonReport& r, const std::string& header = {});
[[nodiscard]] std::string report_json(const ComparisonReport& r);

} // namespace cfgn
