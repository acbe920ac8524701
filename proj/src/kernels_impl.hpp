#pragma once

#include "cfgn/kernels.hpp"

namespace cfgn::kernels::detail {

extern const KernelSet scalar_set;
#if defined(CFGN_HAVE_AVX2)
extern const KernelSet avx2_set;
#endif

} // namespace cfgn::kernels::detail
