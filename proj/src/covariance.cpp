#include "cfgn/covariance.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cfgn/error.hpp"

namespace cfgn {

namespace {

constexpr double pi = std::numbers::pi;

double sign(double u) noexcept { return u > 0.0 ? 1.0 : (u < 0.0 ? -1.0 : 0.0); }

} // namespace

double normalization_constant(double hurst, Variant variant, bool half_limit) {
    if (!(hurst > 0.0 && hurst < 1.0)) {
        throw Error(ErrorKind::domain_error, "Hurst exponent must lie in (0,1), got " + std::to_string(hurst));
    }
    const double g = std::tgamma(hurst + 0.5);
    if (variant == Variant::causal) {
        return std::sqrt(std::tgamma(2.0 * hurst + 1.0) * std::sin(hurst * pi) / (g * g));
    }
    // (1 - 2H) / cos(H pi) rewritten as 2x / sin(pi x), x = H - 1/2, which is
    // well conditioned near the removable singularity.
    const double x = hurst - 0.5;
    double ratio = 0.0;
    if (std::abs(x) < branch_tolerance) {
        if (!half_limit) {
            throw Error(ErrorKind::singular_parameter,
                        "well-balanced normalisation is 0/0 at H = 1/2; enable limit evaluation");
        }
        ratio = 2.0 / pi;
    } else {
        ratio = 2.0 * x / std::sin(pi * x);
    }
    const double c = std::cos(pi * x / 2.0);
    const double a2 = 2.0 * hurst * pi * ratio / (8.0 * std::tgamma(2.0 - 2.0 * hurst) * g * g * c * c);
    return std::sqrt(a2);
}

CrossStructure cross_params(const ProcessParams& p) {
    CrossStructure cs;
    cs.rho_mat = {{{1.0, 0.0}, {0.0, 1.0}}};
    cs.eta_mat = {{{0.0, 0.0}, {0.0, 0.0}}};

    const double h1 = p.hurst1();
    const double h2 = p.hurst2();
    const double hs = h1 + h2;
    if (p.rho() != 0.0) {
        if (std::abs(hs - 1.0) < branch_tolerance) {
            throw Error(ErrorKind::singular_parameter, "rho != 0 with H1 + H2 = 1");
        }
        const double scale = p.rho()
            * std::sqrt(std::tgamma(2.0 * h1 + 1.0) * std::tgamma(2.0 * h2 + 1.0) * std::sin(h1 * pi)
                        * std::sin(h2 * pi))
            / std::tgamma(hs + 1.0);
        const double rho12 = scale * std::cos((h2 - h1) * pi / 2.0) / std::sin(hs * pi / 2.0);
        cs.rho_mat[0][1] = rho12;
        cs.rho_mat[1][0] = rho12;
        if (p.variant() == Variant::causal) {
            const double eta12 = scale * std::sin((h2 - h1) * pi / 2.0) / std::cos(hs * pi / 2.0);
            cs.eta_mat[0][1] = eta12;
            cs.eta_mat[1][0] = -eta12;
        }
    }

    for (Coord c : {Coord::first, Coord::second}) {
        try {
            cs.norm_consts[index(c)] = normalization_constant(p.hurst(c), p.variant(), p.half_limit());
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::singular_parameter) throw;
        }
    }
    return cs;
}

double w_func(double u, Coord j, Coord k, const CrossStructure& cs, double hurst_sum) {
    const double s = sign(u);
    if (s == 0.0) return cs.rho(j, k);
    if (std::abs(hurst_sum - 1.0) < branch_tolerance) {
        return cs.rho(j, k) - cs.eta(j, k) * s * std::log(std::abs(u));
    }
    return cs.rho(j, k) - cs.eta(j, k) * s;
}

CovarianceModel::CovarianceModel(const ProcessParams& p) : params_(p), cross_(cross_params(p)) {}

double CovarianceModel::power_term(double u, Coord j, Coord k) const {
    if (u == 0.0) return 0.0;
    const double hs = params_.hurst_sum(j, k);
    return w_func(u, j, k, cross_, hs) * std::pow(std::abs(u), hs);
}

double CovarianceModel::fbm(double s, double t, Coord j, Coord k) const {
    if (s < 0.0 || t < 0.0) {
        throw Error(ErrorKind::domain_error, "fBm covariance requires s, t >= 0");
    }
    const double scale = params_.sigma(j) * params_.sigma(k) / 2.0;
    return scale * (power_term(t, j, k) + power_term(-s, j, k) - power_term(t - s, j, k));
}

double CovarianceModel::fgn(long h, Coord j, Coord k) const {
    if (h < 0) return fgn(-h, k, j);
    const double x = static_cast<double>(h);
    const double scale = params_.sigma(j) * params_.sigma(k) / 2.0;
    return scale * (power_term(x + 1.0, j, k) + power_term(x - 1.0, j, k) - 2.0 * power_term(x, j, k));
}

LagSeries CovarianceModel::fgn_series(long max_lag, Coord j, Coord k) const {
    LagSeries out;
    out.first_lag = -max_lag;
    out.values.reserve(static_cast<std::size_t>(2 * max_lag + 1));
    for (long h = -max_lag; h <= max_lag; ++h) out.values.push_back(fgn(h, j, k));
    return out;
}

double fbm_ccvf(double s, double t, Coord j, Coord k, const ProcessParams& p) {
    return CovarianceModel(p).fbm(s, t, j, k);
}

double fgn_ccvf(long h, Coord j, Coord k, const ProcessParams& p) { return CovarianceModel(p).fgn(h, j, k); }

} // namespace cfgn
