#pragma once

#include <cstddef>

namespace cfgn {

enum class Variant { causal, well_balanced };

// Coordinate of the bivariate process.
enum class Coord : std::size_t { first = 0, second = 1 };

[[nodiscard]] constexpr std::size_t index(Coord c) noexcept { return static_cast<std::size_t>(c); }
[[nodiscard]] constexpr Coord other(Coord c) noexcept {
    return c == Coord::first ? Coord::second : Coord::first;
}

/// Parameterisation of a causal or well-balanced 2d fBm / fGn.
///
/// Construction validates 0 < H_j < 1, sigma_j > 0, |rho| <= 1, and rejects
/// rho != 0 together with H1 + H2 = 1, where the asymmetry coefficient has a
/// vanishing denominator.
///
/// `half_limit` enables evaluating the well-balanced normalisation at H = 1/2
/// by its analytic limit; without it that constant is reported as singular.
class ProcessParams {
public:
    ProcessParams(double hurst1, double hurst2, double sigma1, double sigma2, double rho,
                  Variant variant, bool half_limit = false);

    [[nodiscard]] double hurst(Coord c) const noexcept { return c == Coord::first ? hurst1_ : hurst2_; }
    [[nodiscard]] double sigma(Coord c) const noexcept { return c == Coord::first ? sigma1_ : sigma2_; }
    [[nodiscard]] double hurst1() const noexcept { return hurst1_; }
    [[nodiscard]] double hurst2() const noexcept { return hurst2_; }
    [[nodiscard]] double sigma1() const noexcept { return sigma1_; }
    [[nodiscard]] double sigma2() const noexcept { return sigma2_; }
    [[nodiscard]] double rho() const noexcept { return rho_; }
    [[nodiscard]] Variant variant() const noexcept { return variant_; }
    [[nodiscard]] bool half_limit() const noexcept { return half_limit_; }
    [[nodiscard]] double hurst_sum(Coord j, Coord k) const noexcept { return hurst(j) + hurst(k); }

    friend bool operator==(const ProcessParams&, const ProcessParams&) = default;

private:
    double hurst1_;
    double hurst2_;
    double sigma1_;
    double sigma2_;
    double rho_;
    Variant variant_;
    bool half_limit_;
};

/// cfGn: Y(n) = a1 cos(lambda0 n) b1(n) + a2 sin(lambda0 n) b2(n).
class CfgnParams {
public:
    CfgnParams(ProcessParams base, double lambda0, double a1 = 1.0, double a2 = 1.0);

    [[nodiscard]] const ProcessParams& base() const noexcept { return base_; }
    [[nodiscard]] double lambda0() const noexcept { return lambda0_; }
    [[nodiscard]] double a1() const noexcept { return a1_; }
    [[nodiscard]] double a2() const noexcept { return a2_; }
    [[nodiscard]] double amplitude(Coord c) const noexcept { return c == Coord::first ? a1_ : a2_; }

    friend bool operator==(const CfgnParams&, const CfgnParams&) = default;

private:
    ProcessParams base_;
    double lambda0_;
    double a1_;
    double a2_;
};

// Tolerance used wherever an exact parameter coincidence selects a formula branch.
inline constexpr double branch_tolerance = 1e-12;

} // namespace cfgn
