#include "cfgn/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "cfgn/covariance.hpp"
#include "cfgn/error.hpp"
#include "cfgn/kernels.hpp"
#include "cfgn/rng.hpp"

namespace cfgn {

Matrix assemble_joint_covariance(std::size_t n, const ProcessParams& p) {
    if (n == 0) throw Error(ErrorKind::domain_error, "joint covariance needs n >= 1");
    const CovarianceModel model(p);
    const long ln = static_cast<long>(n);

    // gamma_jk(h) for h in (-n, n), per block.
    std::vector<double> lags[2][2];
    for (Coord j : {Coord::first, Coord::second}) {
        for (Coord k : {Coord::first, Coord::second}) {
            auto& v = lags[index(j)][index(k)];
            v.resize(2 * n - 1);
            for (long h = -(ln - 1); h <= ln - 1; ++h) v[static_cast<std::size_t>(h + ln - 1)] = model.fgn(h, j, k);
        }
    }

    Matrix cov(2 * n, 2 * n);
    for (std::size_t bj = 0; bj < 2; ++bj) {
        for (std::size_t bk = 0; bk < 2; ++bk) {
            const auto& v = lags[bj][bk];
            for (std::size_t m = 0; m < n; ++m) {
                for (std::size_t l = 0; l < n; ++l) {
                    cov(bj * n + m, bk * n + l) = v[l + n - 1 - m];
                }
            }
        }
    }
    // gamma_jk(h) = gamma_kj(-h) makes the assembly symmetric up to rounding in
    // pow; enforce exact symmetry.
    for (std::size_t i = 0; i < 2 * n; ++i) {
        for (std::size_t j = i + 1; j < 2 * n; ++j) cov(j, i) = cov(i, j);
    }
    return cov;
}

namespace {

bool try_cholesky(const Matrix& a, double shift, Matrix& lower) {
    const std::size_t n = a.rows();
    lower = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const double partial = kernels::dot(lower.row(i).first(j), lower.row(j).first(j));
            double v = a(i, j) - partial;
            if (i == j) {
                v += shift;
                if (!(v > 0.0)) return false;
                lower(i, i) = std::sqrt(v);
            } else {
                lower(i, j) = v / lower(j, j);
            }
        }
    }
    return true;
}

} // namespace

CholeskyFactor cholesky(const Matrix& a, int max_escalations) {
    if (a.rows() != a.cols()) throw Error(ErrorKind::length_mismatch, "cholesky needs a square matrix");
    CholeskyFactor f;
    if (try_cholesky(a, 0.0, f.lower)) return f;

    double trace = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) trace += a(i, i);
    double shift = 1e-12 * trace / static_cast<double>(a.rows());
    for (int step = 1; step <= max_escalations; ++step, shift *= 10.0) {
        if (try_cholesky(a, shift, f.lower)) {
            f.jitter = shift;
            f.escalations = step;
            return f;
        }
    }
    throw Error(ErrorKind::factorization_failure,
                "covariance not positive definite after " + std::to_string(max_escalations) + " jitter escalations");
}

void lower_triangular_apply(const Matrix& lower, std::span<const double> z, std::span<double> y) {
    const std::size_t n = lower.rows();
    if (z.size() != n || y.size() != n) throw Error(ErrorKind::length_mismatch, "triangular apply size mismatch");
    for (std::size_t i = 0; i < n; ++i) y[i] = kernels::dot(lower.row(i).first(i + 1), z.first(i + 1));
}

namespace {

template <typename Body>
void parallel_rows(std::size_t reps, unsigned threads, Body body) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(reps, 1))));
    if (threads == 1) {
        body(std::size_t{0}, reps);
        return;
    }
    std::vector<std::jthread> pool;
    const std::size_t chunk = (reps + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(reps, lo + chunk);
        if (lo < hi) pool.emplace_back([=, &body] { body(lo, hi); });
    }
}

// One replication of the stacked (b1, b2) vector from stream r.
void draw_pair(const Matrix& lower, std::uint64_t seed, std::size_t r, std::vector<double>& z, std::vector<double>& y) {
    CounterRng rng(seed, r);
    for (double& v : z) v = rng.normal();
    lower_triangular_apply(lower, z, y);
}

} // namespace

Fgn2dSample sample_fgn2d(std::size_t n, const ProcessParams& p, std::size_t reps, std::uint64_t seed) {
    if (reps == 0) throw Error(ErrorKind::domain_error, "need at least one replication");
    const CholeskyFactor f = cholesky(assemble_joint_covariance(n, p));
    Fgn2dSample out{Matrix(reps, n), Matrix(reps, n), f.jitter};
    std::vector<double> z(2 * n), y(2 * n);
    for (std::size_t r = 0; r < reps; ++r) {
        draw_pair(f.lower, seed, r, z, y);
        std::copy_n(y.begin(), n, out.first.row(r).begin());
        std::copy_n(y.begin() + static_cast<long>(n), n, out.second.row(r).begin());
    }
    return out;
}

std::vector<double> cfgn_path(std::span<const double> b1, std::span<const double> b2, const CfgnParams& cp) {
    if (b1.size() != b2.size()) throw Error(ErrorKind::length_mismatch, "fGn coordinates differ in length");
    std::vector<double> y(b1.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double phase = cp.lambda0() * static_cast<double>(i);
        y[i] = cp.a1() * std::cos(phase) * b1[i] + cp.a2() * std::sin(phase) * b2[i];
    }
    return y;
}

Ensemble::Ensemble(CfgnParams params, std::uint64_t seed, Matrix paths, double jitter)
    : params_(std::move(params)), seed_(seed), paths_(std::move(paths)), jitter_(jitter) {
    if (paths_.rows() < 1 || paths_.cols() < 2) {
        throw Error(ErrorKind::domain_error, "ensemble needs M >= 1 replications of length >= 2");
    }
}

std::uint64_t Ensemble::key() const { return ensemble_key(params_, length(), replications(), seed_); }

Ensemble make_ensemble(const CfgnParams& cp, std::size_t n, std::size_t reps, std::uint64_t seed, unsigned threads) {
    if (n < 2 || reps < 1) throw Error(ErrorKind::domain_error, "ensemble needs n >= 2 and M >= 1");
    const CholeskyFactor f = cholesky(assemble_joint_covariance(n, cp.base()));

    std::vector<double> cosines(n), sines(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double phase = cp.lambda0() * static_cast<double>(i);
        cosines[i] = cp.a1() * std::cos(phase);
        sines[i] = cp.a2() * std::sin(phase);
    }

    Matrix paths(reps, n);
    parallel_rows(reps, threads, [&](std::size_t lo, std::size_t hi) {
        std::vector<double> z(2 * n), y(2 * n);
        for (std::size_t r = lo; r < hi; ++r) {
            draw_pair(f.lower, seed, r, z, y);
            auto row = paths.row(r);
            for (std::size_t i = 0; i < n; ++i) row[i] = cosines[i] * y[i] + sines[i] * y[n + i];
        }
    });
    return Ensemble(cp, seed, std::move(paths), f.jitter);
}

} // namespace cfgn
