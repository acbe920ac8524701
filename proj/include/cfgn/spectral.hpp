#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "cfgn/params.hpp"

namespace cfgn {

using complex = std::complex<double>;
using ComplexMatrix2 = std::array<std::array<complex, 2>, 2>;

/// Low-frequency constants of the 2d fGn spectral density matrix:
/// f_jk(lambda) ~ c_tilde_jk * lambda^-(d_j + d_k), d_j = H_j - 1/2.
struct SpectralConstants {
    ComplexMatrix2 c_tilde{};
    std::array<double, 2> d{};

    [[nodiscard]] complex c(Coord j, Coord k) const noexcept { return c_tilde[index(j)][index(k)]; }
    [[nodiscard]] double dexp(Coord j) const noexcept { return d[index(j)]; }
};

struct SpectrumSeries {
    std::vector<double> freqs;
    std::vector<complex> values;
};

struct SpectralOptions {
    double rel_tol = 1e-10;
    long max_terms = 1'000'000;
};

[[nodiscard]] SpectralConstants spectral_constants(const ProcessParams& p);

/// f_jk(lambda) = (1/2pi) sum_h gamma_jk(h) e^{i h lambda}, evaluated by the aliased
/// power-law sum. lambda is reduced to (-pi, pi]. Throws SingularFrequency at
/// lambda = 0 when H_j + H_k > 1 and NonConvergence if the tail bound is not met.
[[nodiscard]] complex fgn_spectral_density(double lambda, Coord j, Coord k, const ProcessParams& p,
                                           const SpectralOptions& opt = {});

/// Same, with constants precomputed.
[[nodiscard]] complex fgn_spectral_density(double lambda, Coord j, Coord k, const ProcessParams& p,
                                           const SpectralConstants& sc, const SpectralOptions& opt = {});

/// c_tilde_jk * lambda^-(d_j + d_k); requires 0 < lambda < max_lambda.
[[nodiscard]] complex fgn_spectral_asymptote(double lambda, Coord j, Coord k, const SpectralConstants& sc,
                                             double max_lambda = 0.39269908169872414);

/// `count` equispaced frequencies on (0, pi].
[[nodiscard]] std::vector<double> positive_frequency_grid(std::size_t count = 1024);

/// Reduce an angle to (-pi, pi].
[[nodiscard]] double wrap_frequency(double lambda) noexcept;

} // namespace cfgn
