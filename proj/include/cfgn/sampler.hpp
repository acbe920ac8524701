#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "cfgn/params.hpp"

namespace cfgn {

/// Dense row-major matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
    [[nodiscard]] std::span<const double> row(std::size_t i) const noexcept {
        return {data_.data() + i * cols_, cols_};
    }
    [[nodiscard]] std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
    [[nodiscard]] const std::vector<double>& data() const noexcept { return data_; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// 2n x 2n covariance of (b1(0..n-1), b2(0..n-1)); block (j,k) entry (m,l) is
/// Cov(b_j(m), b_k(l)) = gamma_jk(l - m).
[[nodiscard]] Matrix assemble_joint_covariance(std::size_t n, const ProcessParams& p);

struct CholeskyFactor {
    Matrix lower;
    double jitter = 0.0;   // diagonal shift actually applied
    int escalations = 0;   // 0 when the bare matrix factorised
};

/// Lower Cholesky factor. On failure a diagonal jitter of 1e-12 * trace / dim
/// is added and escalated tenfold, at most `max_escalations` times, before
/// FactorizationFailure is thrown.
[[nodiscard]] CholeskyFactor cholesky(const Matrix& a, int max_escalations = 3);

/// y = L z for lower-triangular L.
void lower_triangular_apply(const Matrix& lower, std::span<const double> z, std::span<double> y);

/// Replications of a 2d fGn path pair; rows are replications.
struct Fgn2dSample {
    Matrix first;  // M x n, b1
    Matrix second; // M x n, b2
    double jitter = 0.0;
};

/// Exact Gaussian sampling; replication r draws its normals from stream r of `seed`.
[[nodiscard]] Fgn2dSample sample_fgn2d(std::size_t n, const ProcessParams& p, std::size_t reps, std::uint64_t seed);

/// Y(n) = a1 cos(lambda0 n) b1(n) + a2 sin(lambda0 n) b2(n), n = 0, 1, ...
[[nodiscard]] std::vector<double> cfgn_path(std::span<const double> b1, std::span<const double> b2,
                                            const CfgnParams& cp);

/// Seeded collection of cfGn paths.
class Ensemble {
public:
    Ensemble(CfgnParams params, std::uint64_t seed, Matrix paths, double jitter = 0.0);

    [[nodiscard]] const CfgnParams& params() const noexcept { return params_; }
    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] const Matrix& paths() const noexcept { return paths_; }
    [[nodiscard]] std::size_t replications() const noexcept { return paths_.rows(); }
    [[nodiscard]] std::size_t length() const noexcept { return paths_.cols(); }
    [[nodiscard]] std::span<const double> path(std::size_t r) const noexcept { return paths_.row(r); }
    [[nodiscard]] double jitter() const noexcept { return jitter_; }

    // Content hash of (params, length, replications, seed), used as cache key.
    [[nodiscard]] std::uint64_t key() const;

private:
    CfgnParams params_;
    std::uint64_t seed_;
    Matrix paths_;
    double jitter_;
};

/// Deterministic in (cp, n, reps, seed) for any thread count; replication r
/// equals replication r of any larger ensemble with the same seed.
[[nodiscard]] Ensemble make_ensemble(const CfgnParams& cp, std::size_t n, std::size_t reps, std::uint64_t seed,
                                     unsigned threads = 1);

[[nodiscard]] std::uint64_t ensemble_key(const CfgnParams& cp, std::size_t n, std::size_t reps, std::uint64_t seed);

/// CSV with columns replication,n,value preceded by '#' metadata lines.
void write_ensemble_csv(const Ensemble& e, const std::filesystem::path& file, const std::string& header = {});

/// Binary cache. `cache_path` names the file for a key inside `dir`.
[[nodiscard]] std::filesystem::path cache_path(const std::filesystem::path& dir, std::uint64_t key);
void write_ensemble_binary(const Ensemble& e, const std::filesystem::path& file);
[[nodiscard]] Ensemble read_ensemble_binary(const std::filesystem::path& file);

/// Loads the cached ensemble for the key if present, else builds and stores it.
[[nodiscard]] Ensemble cached_ensemble(const std::filesystem::path& dir, const CfgnParams& cp, std::size_t n,
                                       std::size_t reps, std::uint64_t seed, unsigned threads = 1);

} // namespace cfgn
