#pragma once

#include <array>
#include <optional>
#include <vector>

#include "cfgn/params.hpp"

namespace cfgn {

using Matrix2 = std::array<std::array<double, 2>, 2>;

/// Values of a real sequence on the integer lags first_lag, first_lag + 1, ...
struct LagSeries {
    long first_lag = 0;
    std::vector<double> values;

    [[nodiscard]] long last_lag() const noexcept {
        return first_lag + static_cast<long>(values.size()) - 1;
    }
    [[nodiscard]] double at(long lag) const { return values.at(static_cast<std::size_t>(lag - first_lag)); }
};

struct CrossStructure {
    Matrix2 rho_mat{};
    Matrix2 eta_mat{};
    // a_H (causal) or a*_H (well-balanced); empty where the constant is singular
    // (well-balanced, H = 1/2, limit evaluation disabled).
    std::array<std::optional<double>, 2> norm_consts{};

    [[nodiscard]] double rho(Coord j, Coord k) const noexcept { return rho_mat[index(j)][index(k)]; }
    [[nodiscard]] double eta(Coord j, Coord k) const noexcept { return eta_mat[index(j)][index(k)]; }
};

/// Normalisation constant a_H (causal) or a*_H (well-balanced) making Var X_j(1) = sigma_j^2.
/// Throws DomainError for H outside (0,1) and SingularParameter for the
/// well-balanced H = 1/2 case unless `half_limit` is set.
[[nodiscard]] double normalization_constant(double hurst, Variant variant, bool half_limit = false);

[[nodiscard]] CrossStructure cross_params(const ProcessParams& p);

/// rho_jk - eta_jk sign(u), with the sign(u) log|u| form when H_j + H_k = 1.
[[nodiscard]] double w_func(double u, Coord j, Coord k, const CrossStructure& cs, double hurst_sum);

/// Cov(Z_j(s), Z_k(t)) of the 2d fBm, s, t >= 0.
[[nodiscard]] double fbm_ccvf(double s, double t, Coord j, Coord k, const ProcessParams& p);

/// gamma_jk(h) = Cov(b_j(n), b_k(n + h)) of the unit-lag 2d fGn.
[[nodiscard]] double fgn_ccvf(long h, Coord j, Coord k, const ProcessParams& p);

/// Precomputed covariance model; the free functions above build one per call.
class CovarianceModel {
public:
    explicit CovarianceModel(const ProcessParams& p);

    [[nodiscard]] const ProcessParams& params() const noexcept { return params_; }
    [[nodiscard]] const CrossStructure& cross() const noexcept { return cross_; }

    [[nodiscard]] double fbm(double s, double t, Coord j, Coord k) const;
    [[nodiscard]] double fgn(long h, Coord j, Coord k) const;

    /// gamma_jk(h) for h in [-max_lag, max_lag].
    [[nodiscard]] LagSeries fgn_series(long max_lag, Coord j, Coord k) const;

private:
    [[nodiscard]] double power_term(double u, Coord j, Coord k) const;

    ProcessParams params_;
    CrossStructure cross_;
};

} // namespace cfgn
