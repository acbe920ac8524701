#pragma once

#include <array>
#include <optional>

#include "cfgn/covariance.hpp"
#include "cfgn/spectral.hpp"

namespace cfgn {

/// The cyclic frequencies {0, 2 lambda0, -2 lambda0} of cfGn.
enum class CyclicFrequency { zero, plus, minus };

struct CyclicFrequencySet {
    std::array<double, 3> alphas{};

    [[nodiscard]] double value(CyclicFrequency a) const noexcept { return alphas[static_cast<std::size_t>(a)]; }
};

[[nodiscard]] CyclicFrequencySet cyclic_frequencies(const CfgnParams& cp) noexcept;

/// Maps a numeric alpha onto the set (tolerance 1e-12); UnknownCyclicFrequency otherwise.
[[nodiscard]] CyclicFrequency classify_cyclic_frequency(double alpha, const CfgnParams& cp);

/// Fundamental period in n of the time-varying ACVF: q when lambda0/pi = p/q in
/// lowest terms, empty for (numerically) irrational lambda0/pi.
[[nodiscard]] std::optional<long> modulation_period(double lambda0);

struct AcvfValue {
    double total = 0.0;
    double stationary = 0.0; // n-independent part
    double cyclic = 0.0;     // part periodic in n
};

struct AsymptoteCoeffs {
    Matrix2 c{};
    double a_stat = 0.0;
    double phi_stat = 0.0;
    double a_cyc = 0.0;
    double phi_cyc = 0.0;
    complex k{};
    double d_max = 0.0;
};

/// Theoretical second-order statistics of cfGn. Covariances of the driving
/// coordinates enter scaled by the amplitudes a_j a_k.
class CyclicModel {
public:
    explicit CyclicModel(const CfgnParams& cp, SpectralOptions spectral = {});

    [[nodiscard]] const CfgnParams& params() const noexcept { return params_; }
    [[nodiscard]] const CovarianceModel& covariance() const noexcept { return covariance_; }

    /// gamma_Y(n, h) = Cov(Y(n), Y(n + h)) for n, h >= 0.
    [[nodiscard]] AcvfValue acvf(long n, long h) const;

    /// R^alpha(h) for h >= 0; R^alpha(-h) = e^{-i alpha h} R^alpha(h).
    [[nodiscard]] complex caf(CyclicFrequency alpha, long h) const;

    /// S^alpha(lambda) = (1/2pi) sum_h R^alpha(h) e^{-i lambda h}, composed from
    /// the fGn spectral densities at lambda -/+ lambda0.
    [[nodiscard]] complex cyclic_spectrum(CyclicFrequency alpha, double lambda) const;

    [[nodiscard]] const AsymptoteCoeffs& asymptote_coeffs() const;
    [[nodiscard]] double acvf_asymptote(long n, long h) const;
    [[nodiscard]] complex cyclic_spectrum_asymptote(double lambda) const;

private:
    [[nodiscard]] double scaled_gamma(long h, Coord j, Coord k) const;
    [[nodiscard]] complex scaled_density(double lambda, Coord j, Coord k) const;
    [[nodiscard]] const SpectralConstants& spectral() const;
    // c_jk, amplitudes and phases only; needs no spectral constants.
    [[nodiscard]] const AsymptoteCoeffs& time_asymptote() const;

    CfgnParams params_;
    CovarianceModel covariance_;
    SpectralOptions spectral_opts_;
    mutable std::optional<SpectralConstants> spectral_;
    mutable std::optional<AsymptoteCoeffs> time_asymptote_;
    mutable std::optional<AsymptoteCoeffs> asymptote_;
};

[[nodiscard]] AcvfValue acvf(long n, long h, const CfgnParams& cp);
[[nodiscard]] complex caf(double alpha, long h, const CfgnParams& cp);
[[nodiscard]] complex cyclic_spectrum(double alpha, double lambda, const CfgnParams& cp, double rel_tol = 1e-10);
[[nodiscard]] AsymptoteCoeffs asymptote_coeffs(const CfgnParams& cp);
[[nodiscard]] double acvf_asymptote(long n, long h, const CfgnParams& cp);
[[nodiscard]] complex cyclic_spectrum_asymptote(double lambda, const CfgnParams& cp);

} // namespace cfgn
