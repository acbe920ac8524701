#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Data-parallel inner loops. Every kernel has a scalar reference and, where the
// host supports it, an AVX2/FMA variant; the active set is chosen once at
// startup (override with CFGN_SIMD=scalar|avx2).
namespace cfgn::kernels {

enum class Isa { scalar, avx2 };

[[nodiscard]] std::string_view to_string(Isa isa) noexcept;

struct KernelSet {
    Isa isa;
    // sum_i x[i] * y[i]
    double (*dot)(const double* x, const double* y, std::size_t n);
    // sum[i] += a * x[i]; sumsq[i] += (a * x[i])^2
    void (*accumulate_products)(double a, const double* x, double* sum, double* sumsq, std::size_t n);
    // re[i] += wr * x[i]; im[i] += wi * x[i]
    void (*accumulate_weighted)(double wr, double wi, const double* x, double* re, double* im, std::size_t n);
};

[[nodiscard]] const KernelSet& scalar_kernels() noexcept;
// nullptr when the binary or the CPU lacks AVX2/FMA.
[[nodiscard]] const KernelSet* avx2_kernels() noexcept;

[[nodiscard]] const KernelSet& active() noexcept;
// Tests and benchmarks only; not thread safe against concurrent kernel calls.
void select(Isa isa);

[[nodiscard]] inline double dot(std::span<const double> x, std::span<const double> y) {
    return active().dot(x.data(), y.data(), x.size() < y.size() ? x.size() : y.size());
}

inline void accumulate_products(double a, std::span<const double> x, std::span<double> sum,
                                std::span<double> sumsq) {
    active().accumulate_products(a, x.data(), sum.data(), sumsq.data(), x.size());
}

inline void accumulate_weighted(double wr, double wi, std::span<const double> x, std::span<double> re,
                                std::span<double> im) {
    active().accumulate_weighted(wr, wi, x.data(), re.data(), im.data(), x.size());
}

} // namespace cfgn::kernels
