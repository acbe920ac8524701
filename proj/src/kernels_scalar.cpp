#include "kernels_impl.hpp"

namespace cfgn::kernels::detail {

namespace {

double dot(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

void accumulate_products(double a, const double* x, double* sum, double* sumsq, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double p = a * x[i];
        sum[i] += p;
        sumsq[i] += p * p;
    }
}

void accumulate_weighted(double wr, double wi, const double* x, double* re, double* im, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        re[i] += wr * x[i];
        im[i] += wi * x[i];
    }
}

} // namespace

const KernelSet scalar_set{Isa::scalar, &dot, &accumulate_products, &accumulate_weighted};

} // namespace cfgn::kernels::detail
