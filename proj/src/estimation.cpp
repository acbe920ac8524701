#include "cfgn/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include <json.hpp>

#include "cfgn/error.hpp"
#include "cfgn/format.hpp"
#include "cfgn/kernels.hpp"

namespace cfgn {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr std::size_t chunk_size = 64;

void add_into(std::vector<double>& a, const std::vector<double>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
}

// Sum of fill(r, acc) over replications. Replications are split into fixed
// chunks; chunk partials are merged as a binary tree in chunk order, so the
// floating-point result is independent of `threads`.
template <class Fill>
std::vector<double> reduce_replications(std::size_t reps, std::size_t width, unsigned threads, Fill fill) {
    const std::size_t chunks = (reps + chunk_size - 1) / chunk_size;
    threads = std::max(1u, threads);
    struct Node {
        std::vector<double> sum;
        int level;
    };
    std::vector<Node> stack;
    std::vector<std::vector<double>> batch;

    for (std::size_t first = 0; first < chunks; first += threads) {
        const std::size_t count = std::min<std::size_t>(threads, chunks - first);
        batch.assign(count, std::vector<double>(width, 0.0));
        auto run = [&](std::size_t b) {
            const std::size_t lo = (first + b) * chunk_size;
            const std::size_t hi = std::min(reps, lo + chunk_size);
            for (std::size_t r = lo; r < hi; ++r) fill(r, std::span<double>(batch[b]));
        };
        if (count == 1) {
            run(0);
        } else {
            std::vector<std::jthread> pool;
            for (std::size_t b = 0; b < count; ++b) pool.emplace_back(run, b);
        }
        for (auto& part : batch) {
            stack.push_back({std::move(part), 0});
            while (stack.size() >= 2 && stack[stack.size() - 1].level == stack[stack.size() - 2].level) {
                Node top = std::move(stack.back());
                stack.pop_back();
                add_into(stack.back().sum, top.sum);
                ++stack.back().level;
            }
        }
    }
    if (stack.empty()) return std::vector<double>(width, 0.0);
    std::vector<double> total = std::move(stack.back().sum);
    for (std::size_t i = stack.size() - 1; i-- > 0;) {
        add_into(stack[i].sum, total);
        total = std::move(stack[i].sum);
    }
    return total;
}

void require_replications(const Ensemble& e) {
    if (e.replications() < 2) throw Error(ErrorKind::domain_error, "estimators need M >= 2 replications");
}

double mean_se(double sum, double sumsq, double m) {
    const double mean = sum / m;
    const double var = std::max(0.0, (sumsq - m * mean * mean) / (m - 1.0));
    return std::sqrt(var / m);
}

void check_window(const Ensemble& e, CyclicFrequency alpha, long h_max, long n_window) {
    if (h_max < 0) throw Error(ErrorKind::domain_error, "h_max must be >= 0");
    if (n_window <= 0) throw Error(ErrorKind::domain_error, "N_window must be positive");
    if (n_window + h_max > static_cast<long>(e.length())) {
        throw Error(ErrorKind::grid_overrun, "N_window + h_max = " + std::to_string(n_window + h_max)
                                                 + " exceeds path length " + std::to_string(e.length()));
    }
    if (alpha == CyclicFrequency::zero) return;
    const auto period = modulation_period(e.params().lambda0());
    if (!period) throw Error(ErrorKind::period_mismatch, "lambda0/pi is not rational; no exact extraction window");
    if (*period <= 2) throw Error(ErrorKind::period_mismatch, "lambda0 = pi/2 aliases 2 lambda0 with -2 lambda0");
    if (n_window % *period != 0) {
        throw Error(ErrorKind::period_mismatch, "N_window = " + std::to_string(n_window)
                                                    + " is not a multiple of the period " + std::to_string(*period));
    }
}

// q(h) = (1/N) sum_{n<N} Y(n) Y(n+h) e^{-i alpha n} for one path, h = 0..h_max.
void path_caf(std::span<const double> y, double alpha, long h_max, long n_window, std::span<double> re,
              std::span<double> im) {
    std::fill(re.begin(), re.end(), 0.0);
    std::fill(im.begin(), im.end(), 0.0);
    const auto width = static_cast<std::size_t>(h_max + 1);
    const double inv = 1.0 / static_cast<double>(n_window);
    for (long n = 0; n < n_window; ++n) {
        const double phase = alpha * static_cast<double>(n);
        const double a = y[static_cast<std::size_t>(n)] * inv;
        kernels::accumulate_weighted(a * std::cos(phase), -a * std::sin(phase),
                                     y.subspan(static_cast<std::size_t>(n), width), re, im);
    }
}

double component_ratio(double diff, double se) {
    if (se > 0.0) return std::abs(diff) / se;
    return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

} // namespace

EmpiricalAcvf empirical_acvf(const Ensemble& e, long n, long h_max, const EstimationOptions& opt) {
    require_replications(e);
    if (n < 0 || h_max < 0) throw Error(ErrorKind::domain_error, "n and h_max must be >= 0");
    if (n + h_max >= static_cast<long>(e.length())) {
        throw Error(ErrorKind::grid_overrun, "n + h_max = " + std::to_string(n + h_max)
                                                 + " is beyond path length " + std::to_string(e.length()));
    }
    const auto width = static_cast<std::size_t>(h_max + 1);
    const auto start = static_cast<std::size_t>(n);
    const auto sums = reduce_replications(e.replications(), 2 * width, opt.threads,
                                          [&](std::size_t r, std::span<double> acc) {
                                              const auto y = e.path(r);
                                              kernels::accumulate_products(y[start], y.subspan(start, width),
                                                                           acc.first(width), acc.subspan(width));
                                          });
    const auto m = static_cast<double>(e.replications());
    EmpiricalAcvf out;
    out.estimate.first_lag = 0;
    out.estimate.values.resize(width);
    out.std_error.resize(width);
    for (std::size_t h = 0; h < width; ++h) {
        out.estimate.values[h] = sums[h] / m;
        out.std_error[h] = mean_se(sums[h], sums[width + h], m);
    }
    return out;
}

long snap_window(const CfgnParams& cp, std::size_t length, long h_max) {
    const auto period = modulation_period(cp.lambda0());
    if (!period) throw Error(ErrorKind::period_mismatch, "lambda0/pi is not rational; no exact extraction window");
    const long room = static_cast<long>(length) - h_max;
    const long n = room / *period * *period;
    if (n <= 0) {
        throw Error(ErrorKind::grid_overrun, "path too short for one modulation period beyond h_max");
    }
    return n;
}

std::vector<ComplexEstimate> empirical_caf_series(const Ensemble& e, CyclicFrequency alpha, long h_max,
                                                  long n_window, const EstimationOptions& opt) {
    require_replications(e);
    check_window(e, alpha, h_max, n_window);
    const double a = cyclic_frequencies(e.params()).value(alpha);
    const auto width = static_cast<std::size_t>(h_max + 1);
    const auto sums = reduce_replications(e.replications(), 4 * width, opt.threads,
                                          [&](std::size_t r, std::span<double> acc) {
                                              std::vector<double> re(width), im(width);
                                              path_caf(e.path(r), a, h_max, n_window, re, im);
                                              for (std::size_t h = 0; h < width; ++h) {
                                                  acc[h] += re[h];
                                                  acc[width + h] += re[h] * re[h];
                                                  acc[2 * width + h] += im[h];
                                                  acc[3 * width + h] += im[h] * im[h];
                                              }
                                          });
    const auto m = static_cast<double>(e.replications());
    std::vector<ComplexEstimate> out(width);
    for (std::size_t h = 0; h < width; ++h) {
        out[h].value = {sums[h] / m, sums[2 * width + h] / m};
        out[h].se_re = mean_se(sums[h], sums[width + h], m);
        out[h].se_im = mean_se(sums[2 * width + h], sums[3 * width + h], m);
    }
    return out;
}

ComplexEstimate empirical_caf(const Ensemble& e, double alpha, long h, long n_window, const EstimationOptions& opt) {
    const auto which = classify_cyclic_frequency(alpha, e.params());
    if (h < 0) throw Error(ErrorKind::domain_error, "empirical_caf takes h >= 0");
    return empirical_caf_series(e, which, h, n_window, opt).back();
}

EmpiricalSpectrum empirical_cyclic_spectrum(const Ensemble& e, CyclicFrequency alpha, std::span<const double> freqs,
                                            long h_max, LagWindow window, long n_window,
                                            const EstimationOptions& opt) {
    require_replications(e);
    if (h_max < 0) throw Error(ErrorKind::domain_error, "h_max must be >= 0");
    if (n_window <= 0) n_window = snap_window(e.params(), e.length(), h_max);
    check_window(e, alpha, h_max, n_window);
    const double a = cyclic_frequencies(e.params()).value(alpha);
    const auto width = static_cast<std::size_t>(h_max + 1);
    const std::size_t dim = 2 * width;

    // Per replication v = (Re q, Im q); accumulate sum v and sum v v^T. The
    // estimate is linear in v, so its mean and variance follow for any lambda.
    const auto sums = reduce_replications(e.replications(), dim + dim * dim, opt.threads,
                                          [&](std::size_t r, std::span<double> acc) {
                                              std::vector<double> v(dim);
                                              std::span<double> vs(v);
                                              path_caf(e.path(r), a, h_max, n_window, vs.first(width),
                                                       vs.subspan(width));
                                              for (std::size_t i = 0; i < dim; ++i) acc[i] += v[i];
                                              auto outer = acc.subspan(dim);
                                              for (std::size_t i = 0; i < dim; i += 2) {
                                                  kernels::accumulate_weighted(v[i], v[i + 1], v,
                                                                               outer.subspan(i * dim, dim),
                                                                               outer.subspan((i + 1) * dim, dim));
                                              }
                                          });
    const auto m = static_cast<double>(e.replications());
    std::vector<double> mean(dim);
    for (std::size_t i = 0; i < dim; ++i) mean[i] = sums[i] / m;
    std::vector<double> cov(dim * dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            cov[i * dim + j] = (sums[dim + i * dim + j] - m * mean[i] * mean[j]) / (m - 1.0);
        }
    }

    std::vector<double> weight(width);
    for (std::size_t h = 0; h < width; ++h) {
        weight[h] = window == LagWindow::bartlett ? 1.0 - static_cast<double>(h) / static_cast<double>(width) : 1.0;
    }

    EmpiricalSpectrum out;
    out.estimate.freqs.assign(freqs.begin(), freqs.end());
    out.estimate.values.resize(freqs.size());
    out.se_re.resize(freqs.size());
    out.se_im.resize(freqs.size());
    std::vector<double> ca(dim), cb(dim), tmp(dim);
    auto quad = [&](const std::vector<double>& x) {
        for (std::size_t i = 0; i < dim; ++i) {
            tmp[i] = kernels::dot(std::span<const double>(cov).subspan(i * dim, dim), x);
        }
        return std::max(0.0, kernels::dot(x, tmp));
    };
    for (std::size_t f = 0; f < freqs.size(); ++f) {
        const double lambda = freqs[f];
        for (std::size_t h = 0; h < width; ++h) {
            complex eh{weight[h], 0.0};
            if (h > 0) {
                const double hd = static_cast<double>(h);
                eh = weight[h] * (std::polar(1.0, -lambda * hd) + std::polar(1.0, (lambda - a) * hd));
            }
            ca[h] = eh.real();
            ca[width + h] = -eh.imag();
            cb[h] = eh.imag();
            cb[width + h] = eh.real();
        }
        out.estimate.values[f] = complex{kernels::dot(ca, mean), kernels::dot(cb, mean)} / two_pi;
        out.se_re[f] = std::sqrt(quad(ca) / m) / two_pi;
        out.se_im[f] = std::sqrt(quad(cb) / m) / two_pi;
    }
    return out;
}

SpectrumSeries truncated_cyclic_spectrum(const CyclicModel& model, CyclicFrequency alpha,
                                         std::span<const double> freqs, long h_max, LagWindow window) {
    if (h_max < 0) throw Error(ErrorKind::domain_error, "h_max must be >= 0");
    const double a = cyclic_frequencies(model.params()).value(alpha);
    std::vector<complex> r(static_cast<std::size_t>(h_max + 1));
    for (long h = 0; h <= h_max; ++h) {
        const double w = window == LagWindow::bartlett ? 1.0 - static_cast<double>(h) / static_cast<double>(h_max + 1)
                                                       : 1.0;
        r[static_cast<std::size_t>(h)] = w * model.caf(alpha, h);
    }
    SpectrumSeries out;
    out.freqs.assign(freqs.begin(), freqs.end());
    out.values.reserve(freqs.size());
    for (double lambda : freqs) {
        complex s = r[0];
        for (long h = 1; h <= h_max; ++h) {
            const double hd = static_cast<double>(h);
            s += r[static_cast<std::size_t>(h)] * (std::polar(1.0, -lambda * hd) + std::polar(1.0, (lambda - a) * hd));
        }
        out.values.push_back(s / two_pi);
    }
    return out;
}

ComparisonReport compare(std::string name, std::span<const double> grid, std::span<const complex> theory,
                         std::span<const complex> empirical, std::span<const double> se_re,
                         std::span<const double> se_im, double threshold) {
    const std::size_t n = grid.size();
    if (theory.size() != n || empirical.size() != n || se_re.size() != n || se_im.size() != n) {
        throw Error(ErrorKind::length_mismatch, "compare: grid, theory, empirical and SE lengths differ");
    }
    ComparisonReport r;
    r.statistic_name = std::move(name);
    r.grid.assign(grid.begin(), grid.end());
    r.theoretical.assign(theory.begin(), theory.end());
    r.empirical.assign(empirical.begin(), empirical.end());
    r.se_re.assign(se_re.begin(), se_re.end());
    r.se_im.assign(se_im.begin(), se_im.end());
    r.se_ratio.resize(n);
    r.threshold = threshold;
    for (std::size_t i = 0; i < n; ++i) {
        const complex d = empirical[i] - theory[i];
        r.se_ratio[i] = std::max(component_ratio(d.real(), se_re[i]), component_ratio(d.imag(), se_im[i]));
        r.max_abs_err = std::max(r.max_abs_err, std::abs(d));
        if (r.se_ratio[i] > r.max_se_ratio) {
            r.max_se_ratio = r.se_ratio[i];
            r.worst_index = i;
        }
    }
    r.pass = r.max_se_ratio <= threshold;
    return r;
}

ComparisonReport compare(std::string name, std::span<const double> grid, std::span<const double> theory,
                         std::span<const double> empirical, std::span<const double> se, double threshold) {
    if (theory.size() != empirical.size() || theory.size() != se.size()) {
        throw Error(ErrorKind::length_mismatch, "compare: theory, empirical and SE lengths differ");
    }
    std::vector<complex> t(theory.begin(), theory.end());
    std::vector<complex> em(empirical.begin(), empirical.end());
    std::vector<double> zero(se.size(), 0.0);
    return compare(std::move(name), grid, t, em, se, zero, threshold);
}

std::string report_csv(const ComparisonReport& r, const std::string& header) {
    std::string out;
    std::size_t pos = 0;
    while (pos < header.size()) {
        const auto end = header.find('\n', pos);
        out += "# " + header.substr(pos, end == std::string::npos ? std::string::npos : end - pos) + '\n';
        if (end == std::string::npos) break;
        pos = end + 1;
    }
    out += "grid,theory_re,theory_im,emp_re,emp_im,se_re,se_im,se_ratio\n";
    for (std::size_t i = 0; i < r.grid.size(); ++i) {
        out += format_double(r.grid[i]) + ',' + format_double(r.theoretical[i].real()) + ','
             + format_double(r.theoretical[i].imag()) + ',' + format_double(r.empirical[i].real()) + ','
             + format_double(r.empirical[i].imag()) + ',' + format_double(r.se_re[i]) + ','
             + format_double(r.se_im[i]) + ',' + format_double(r.se_ratio[i]) + '\n';
    }
    return out;
}

std::string report_json(const ComparisonReport& r) {
    nlohmann::ordered_json j;
    j["statistic"] = r.statistic_name;
    j["points"] = r.grid.size();
    j["max_abs_err"] = r.max_abs_err;
    j["max_se_ratio"] = std::isfinite(r.max_se_ratio) ? nlohmann::ordered_json(r.max_se_ratio) : nullptr;
    j["worst_index"] = r.worst_index;
    j["worst_grid"] = r.grid.empty() ? 0.0 : r.grid[r.worst_index];
    j["threshold"] = r.threshold;
    j["pass"] = r.pass;
    return j.dump();
}

} // namespace cfgn
