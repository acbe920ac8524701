#include "cfgn/params.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cfgn/error.hpp"

namespace cfgn {

namespace {

void require_hurst(double h, const char* name) {
    if (!(h > 0.0 && h < 1.0)) {
        throw Error(ErrorKind::domain_error, std::string(name) + " must lie in (0,1), got " + std::to_string(h));
    }
}

} // namespace

ProcessParams::ProcessParams(double hurst1, double hurst2, double sigma1, double sigma2, double rho,
                             Variant variant, bool half_limit)
    : hurst1_(hurst1), hurst2_(hurst2), sigma1_(sigma1), sigma2_(sigma2), rho_(rho), variant_(variant),
      half_limit_(half_limit) {
    require_hurst(hurst1, "H1");
    require_hurst(hurst2, "H2");
    if (!(sigma1 > 0.0 && std::isfinite(sigma1)) || !(sigma2 > 0.0 && std::isfinite(sigma2))) {
        throw Error(ErrorKind::domain_error, "sigma1 and sigma2 must be finite and strictly positive");
    }
    if (!(std::abs(rho) <= 1.0)) {
        throw Error(ErrorKind::domain_error, "rho must lie in [-1,1], got " + std::to_string(rho));
    }
    if (rho != 0.0 && std::abs(hurst1 + hurst2 - 1.0) < branch_tolerance) {
        throw Error(ErrorKind::singular_parameter,
                    "rho != 0 with H1 + H2 = 1 has no cross-correlation constant");
    }
}

CfgnParams::CfgnParams(ProcessParams base, double lambda0, double a1, double a2)
    : base_(base), lambda0_(lambda0), a1_(a1), a2_(a2) {
    if (!(lambda0 > 0.0 && lambda0 < std::numbers::pi)) {
        throw Error(ErrorKind::domain_error, "lambda0 must lie in (0, pi), got " + std::to_string(lambda0));
    }
    if (!std::isfinite(a1) || !std::isfinite(a2)) {
        throw Error(ErrorKind::domain_error, "amplitudes a1, a2 must be finite");
    }
}

} // namespace cfgn
