#include <immintrin.h>

#include "kernels_impl.hpp"

namespace cfgn::kernels::detail {

namespace {

double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot(const double* x, const double* y, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

void accumulate_products(double a, const double* x, double* sum, double* sumsq, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d p = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
        _mm256_storeu_pd(sum + i, _mm256_add_pd(_mm256_loadu_pd(sum + i), p));
        _mm256_storeu_pd(sumsq + i, _mm256_fmadd_pd(p, p, _mm256_loadu_pd(sumsq + i)));
    }
    for (; i < n; ++i) {
        const double p = a * x[i];
        sum[i] += p;
        sumsq[i] += p * p;
    }
}

void accumulate_weighted(double wr, double wi, const double* x, double* re, double* im, std::size_t n) {
    const __m256d vr = _mm256_set1_pd(wr);
    const __m256d vi = _mm256_set1_pd(wi);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vx = _mm256_loadu_pd(x + i);
        _mm256_storeu_pd(re + i, _mm256_fmadd_pd(vr, vx, _mm256_loadu_pd(re + i)));
        _mm256_storeu_pd(im + i, _mm256_fmadd_pd(vi, vx, _mm256_loadu_pd(im + i)));
    }
    for (; i < n; ++i) {
        re[i] += wr * x[i];
        im[i] += wi * x[i];
    }
}

} // namespace

const KernelSet avx2_set{Isa::avx2, &dot, &accumulate_products, &accumulate_weighted};

} // namespace cfgn::kernels::detail
