#include "cfgn/kernels.hpp"

#include <cstdlib>
#include <string>

#include "cfgn/error.hpp"
#include "kernels_impl.hpp"

namespace cfgn::kernels {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(CFGN_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelSet* initial_set() noexcept {
    const KernelSet* best = avx2_kernels();
    if (const char* env = std::getenv("CFGN_SIMD")) {
        if (std::string(env) == "scalar") return &detail::scalar_set;
    }
    return best ? best : &detail::scalar_set;
}

const KernelSet*& current() noexcept {
    static const KernelSet* set = initial_set();
    return set;
}

} // namespace

std::string_view to_string(Isa isa) noexcept { return isa == Isa::avx2 ? "avx2" : "scalar"; }

const KernelSet& scalar_kernels() noexcept { return detail::scalar_set; }

const KernelSet* avx2_kernels() noexcept {
#if defined(CFGN_HAVE_AVX2)
    if (cpu_has_avx2()) return &detail::avx2_set;
#endif
    return nullptr;
}

const KernelSet& active() noexcept { return *current(); }

void select(Isa isa) {
    if (isa == Isa::scalar) {
        current() = &detail::scalar_set;
        return;
    }
    const KernelSet* set = avx2_kernels();
    if (set == nullptr) throw Error(ErrorKind::domain_error, "AVX2 kernels unavailable on this host");
    current() = set;
}

} // namespace cfgn::kernels
