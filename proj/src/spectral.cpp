#include "cfgn/spectral.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cfgn/covariance.hpp"
#include "cfgn/error.hpp"

namespace cfgn {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * std::numbers::pi;

struct TailSum {
    double value;
    double error;
};

// sum_{n >= a} (2 pi n + b)^-s via Euler-Maclaurin; `error` is the magnitude of
// the first omitted correction.
TailSum euler_maclaurin_tail(double a, double b, double s) {
    const double y = two_pi * a + b;
    const double integral = std::pow(y, 1.0 - s) / (two_pi * (s - 1.0));
    const double g = std::pow(y, -s);
    const double d1 = s * two_pi * std::pow(y, -s - 1.0);
    const double d3 = s * (s + 1.0) * (s + 2.0) * std::pow(two_pi, 3) * std::pow(y, -s - 3.0);
    const double d5 = s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * std::pow(two_pi, 5) * std::pow(y, -s - 5.0);
    return {integral + 0.5 * g + d1 / 12.0 - d3 / 720.0, d5 / 30240.0};
}

} // namespace

double wrap_frequency(double lambda) noexcept {
    double r = std::remainder(lambda, two_pi);
    if (r <= -pi) r += two_pi;
    return r;
}

SpectralConstants spectral_constants(const ProcessParams& p) {
    SpectralConstants sc;
    sc.d = {p.hurst1() - 0.5, p.hurst2() - 0.5};

    const double g1 = std::tgamma(p.hurst1() + 0.5);
    const double g2 = std::tgamma(p.hurst2() + 0.5);
    const double s1 = p.sigma1();
    const double s2 = p.sigma2();
    const double ac1 = normalization_constant(p.hurst1(), Variant::causal);
    const double ac2 = normalization_constant(p.hurst2(), Variant::causal);
    const double offdiag = p.rho() * s1 * s2 * g1 * g2 * ac1 * ac2 / two_pi;

    if (p.variant() == Variant::causal) {
        sc.c_tilde[0][0] = s1 * s1 * g1 * g1 * ac1 * ac1 / two_pi;
        sc.c_tilde[1][1] = s2 * s2 * g2 * g2 * ac2 * ac2 / two_pi;
        const complex c12 = offdiag * std::polar(1.0, -pi / 2.0 * (p.hurst1() - p.hurst2()));
        sc.c_tilde[0][1] = c12;
        sc.c_tilde[1][0] = std::conj(c12);
    } else {
        const double aw1 = normalization_constant(p.hurst1(), Variant::well_balanced, p.half_limit());
        const double aw2 = normalization_constant(p.hurst2(), Variant::well_balanced, p.half_limit());
        const double k1 = std::cos(sc.d[0] * pi / 2.0);
        const double k2 = std::cos(sc.d[1] * pi / 2.0);
        sc.c_tilde[0][0] = 2.0 / pi * s1 * s1 * k1 * k1 * g1 * g1 * aw1 * aw1;
        sc.c_tilde[1][1] = 2.0 / pi * s2 * s2 * k2 * k2 * g2 * g2 * aw2 * aw2;
        // Real part of the causal constant: the covariance with eta = 0 and the
        // shared rho_12 has exactly this cross spectrum.
        const double c12 = offdiag * std::cos(pi / 2.0 * (p.hurst1() - p.hurst2()));
        sc.c_tilde[0][1] = c12;
        sc.c_tilde[1][0] = c12;
    }
    return sc;
}

complex fgn_spectral_density(double lambda, Coord j, Coord k, const ProcessParams& p, const SpectralOptions& opt) {
    return fgn_spectral_density(lambda, j, k, p, spectral_constants(p), opt);
}

complex fgn_spectral_density(double lambda, Coord j, Coord k, const ProcessParams& p, const SpectralConstants& sc,
                             const SpectralOptions& opt) {
    if (!(opt.rel_tol > 0.0)) {
        throw Error(ErrorKind::domain_error, "rel_tol must be positive");
    }
    const complex c = sc.c(j, k);
    if (c == complex{}) return {};

    const double hs = p.hurst_sum(j, k);
    const double lam = wrap_frequency(lambda);
    if (lam == 0.0) {
        if (hs > 1.0 + branch_tolerance) {
            throw Error(ErrorKind::singular_frequency, "spectral density diverges at lambda = 0 for H_j + H_k > 1");
        }
        if (hs < 1.0 - branch_tolerance) return {};
        return {c.real(), 0.0};
    }

    const double s = 1.0 + hs;
    auto term = [s](double x) { return std::pow(std::abs(x), -s); };

    // Partial sums over n in [-n_lo, n_hi], grown by doubling.
    double pos = 0.0; // x > 0 terms
    double neg = 0.0; // x < 0 terms
    auto add = [&](long n) {
        const double x = lam + two_pi * static_cast<double>(n);
        if (x > 0.0) pos += term(x);
        else if (x < 0.0) neg += term(x);
    };
    add(0);
    long done = 0;
    for (long n_max = 8;; n_max *= 2) {
        for (long n = done + 1; n <= n_max; ++n) {
            add(n);
            add(-n);
        }
        done = n_max;
        const double a = static_cast<double>(n_max + 1);
        const TailSum tail_pos = euler_maclaurin_tail(a, lam, s);
        const TailSum tail_neg = euler_maclaurin_tail(a, -lam, s);
        const double total_pos = pos + tail_pos.value;
        const double total_neg = neg + tail_neg.value;
        if (tail_pos.error <= opt.rel_tol * total_pos && tail_neg.error <= opt.rel_tol * total_neg) {
            const double gain = 4.0 * std::sin(lam / 2.0) * std::sin(lam / 2.0);
            return gain * (c * total_pos + std::conj(c) * total_neg);
        }
        if (n_max >= opt.max_terms) {
            throw Error(ErrorKind::non_convergence,
                        "aliased spectral sum did not reach rel_tol within max_terms");
        }
    }
}

complex fgn_spectral_asymptote(double lambda, Coord j, Coord k, const SpectralConstants& sc, double max_lambda) {
    if (!(lambda > 0.0 && lambda < max_lambda)) {
        throw Error(ErrorKind::domain_error, "asymptote requires 0 < lambda < " + std::to_string(max_lambda));
    }
    return sc.c(j, k) * std::pow(lambda, -(sc.dexp(j) + sc.dexp(k)));
}

std::vector<double> positive_frequency_grid(std::size_t count) {
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i) {
        grid[i] = pi * static_cast<double>(i + 1) / static_cast<double>(count);
    }
    return grid;
}

} // namespace cfgn
