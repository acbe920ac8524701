#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

#include "cfgn/covariance.hpp"
#include "cfgn/error.hpp"
#include "cfgn/sampler.hpp"

using namespace cfgn;

namespace {

constexpr double pi = std::numbers::pi;
using big = boost::multiprecision::cpp_bin_float_50;

// Closed form of a_H in 50-digit arithmetic.
double causal_constant_mp(double h) {
    const big hb(h);
    const big v = boost::math::tgamma(2 * hb + 1) * sin(hb * boost::math::constants::pi<big>())
                / pow(boost::math::tgamma(hb + big(0.5)), 2);
    return static_cast<double>(sqrt(v));
}

// Mixed-sign kernel expansion of Cov(b_j(n), b_k(n + h)) through four 2d fBm covariances.
double second_difference(long n, long h, Coord j, Coord k, const ProcessParams& p) {
    const auto s = static_cast<double>(n);
    const auto t = static_cast<double>(n + h);
    return fbm_ccvf(s + 1, t + 1, j, k, p) - fbm_ccvf(s + 1, t, j, k, p) - fbm_ccvf(s, t + 1, j, k, p)
         + fbm_ccvf(s, t, j, k, p);
}

std::vector<ProcessParams> parameter_grid() {
    std::vector<ProcessParams> grid;
    for (Variant v : {Variant::causal, Variant::well_balanced}) {
        for (double h1 : {0.3, 0.5, 0.7}) {
            for (double h2 : {0.3, 0.5, 0.7}) {
                for (double rho : {-0.5, 0.0, 0.5}) {
                    if (rho != 0.0 && std::abs(h1 + h2 - 1.0) < 1e-12) continue;
                    grid.emplace_back(h1, h2, 1.0, 1.3, rho, v, true);
                }
            }
        }
    }
    return grid;
}

const Coord both[] = {Coord::first, Coord::second};

} // namespace

TEST(NormalizationConstant, CausalHalfIsOne) {
    EXPECT_NEAR(normalization_constant(0.5, Variant::causal), 1.0, 1e-15);
}

TEST(NormalizationConstant, CausalFrozenValue) {
    // 40-digit evaluation: 1.0918091308839125879...
    EXPECT_NEAR(normalization_constant(0.7, Variant::causal), 1.09180913088391258791, 1e-13);
    EXPECT_NEAR(normalization_constant(0.3, Variant::causal), 0.73028293407992296570, 1e-13);
}

TEST(NormalizationConstant, CausalMatchesMultiprecisionClosedForm) {
    for (double h : {0.05, 0.2, 0.4, 0.5, 0.6, 0.85, 0.97}) {
        const double ref = causal_constant_mp(h);
        EXPECT_NEAR(normalization_constant(h, Variant::causal) / ref, 1.0, 1e-13) << "H=" << h;
    }
}

TEST(NormalizationConstant, CausalNormalisesKernelVariance) {
    // a_H^2 int ((t-x)_+^d - (-x)_+^d)^2 dx = 1 at t = 1.
    boost::math::quadrature::exp_sinh<double> integrator;
    for (double h : {0.3, 0.7}) {
        const double d = h - 0.5;
        const double tail = integrator.integrate([d](double y) {
            const double v = std::pow(1.0 + y, d) - std::pow(y, d);
            return v * v;
        });
        const double total = tail + 1.0 / (2.0 * d + 1.0);
        const double a = normalization_constant(h, Variant::causal);
        EXPECT_NEAR(a * a * total, 1.0, 1e-8) << "H=" << h;
    }
}

TEST(NormalizationConstant, WellBalancedFrozenValue) {
    EXPECT_NEAR(normalization_constant(0.3, Variant::well_balanced), 0.38393245909546183699, 1e-13);
}

TEST(NormalizationConstant, WellBalancedUnitVariance) {
    const ProcessParams p(0.3, 0.3, 1.0, 1.0, 0.0, Variant::well_balanced);
    EXPECT_NEAR(fgn_ccvf(0, Coord::first, Coord::first, p), 1.0, 1e-14);
}

TEST(NormalizationConstant, WellBalancedHalfNeedsLimitFlag) {
    try {
        (void)normalization_constant(0.5, Variant::well_balanced);
        FAIL() << "expected SingularParameter";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::singular_parameter);
    }
    const double limit = normalization_constant(0.5, Variant::well_balanced, true);
    EXPECT_GT(limit, 0.0);
    EXPECT_NEAR(normalization_constant(0.5 + 1e-7, Variant::well_balanced), limit, 1e-6);
    EXPECT_NEAR(normalization_constant(0.5 - 1e-7, Variant::well_balanced), limit, 1e-6);
}

TEST(NormalizationConstant, DomainErrors) {
    for (double h : {0.0, 1.0, -0.2, 1.5, std::numeric_limits<double>::quiet_NaN()}) {
        try {
            (void)normalization_constant(h, Variant::causal);
            FAIL() << "expected DomainError for H=" << h;
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::domain_error);
        }
    }
}

TEST(GammaFunction, MatchesMultiprecision) {
    for (double x : {0.6, 0.9, 1.2, 1.4, 1.7, 2.4, 2.9}) {
        const double ref = static_cast<double>(boost::math::tgamma(big(x)));
        EXPECT_NEAR(std::tgamma(x) / ref, 1.0, 1e-13) << "x=" << x;
    }
}

TEST(ProcessParams, Validation) {
    EXPECT_THROW(ProcessParams(0.0, 0.5, 1, 1, 0, Variant::causal), Error);
    EXPECT_THROW(ProcessParams(0.5, 1.0, 1, 1, 0, Variant::causal), Error);
    EXPECT_THROW(ProcessParams(0.5, 0.5, 0.0, 1, 0, Variant::causal), Error);
    EXPECT_THROW(ProcessParams(0.5, 0.5, 1, -1, 0, Variant::causal), Error);
    EXPECT_THROW(ProcessParams(0.5, 0.5, 1, 1, 1.01, Variant::causal), Error);
    EXPECT_NO_THROW(ProcessParams(0.3, 0.7, 1, 1, 0.0, Variant::causal));
    try {
        ProcessParams(0.3, 0.7, 1, 1, 0.2, Variant::causal);
        FAIL() << "expected SingularParameter";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::singular_parameter);
    }
}

TEST(CrossParams, ZeroRhoGivesZeroCross) {
    for (Variant v : {Variant::causal, Variant::well_balanced}) {
        const auto cs = cross_params(ProcessParams(0.2, 0.9, 1, 1, 0.0, v));
        EXPECT_EQ(cs.rho(Coord::first, Coord::second), 0.0);
        EXPECT_EQ(cs.eta(Coord::first, Coord::second), 0.0);
    }
}

TEST(CrossParams, EqualHurstGivesRho) {
    const auto cs = cross_params(ProcessParams(0.25, 0.25, 1, 1, 1.0, Variant::causal));
    EXPECT_NEAR(cs.rho(Coord::first, Coord::second), 1.0, 1e-15);
    EXPECT_NEAR(cs.eta(Coord::first, Coord::second), 0.0, 1e-15);
    for (double h : {0.1, 0.7, 0.9}) {
        const auto c = cross_params(ProcessParams(h, h, 1, 1, -0.4, Variant::causal));
        EXPECT_NEAR(c.rho(Coord::first, Coord::second), -0.4, 1e-14);
    }
}

TEST(CrossParams, FrozenCausalValues) {
    const auto cs = cross_params(ProcessParams(0.4, 0.7, 1, 1, 0.15, Variant::causal));
    EXPECT_NEAR(cs.rho(Coord::first, Coord::second), 0.121998805552308500, 1e-13);
    EXPECT_NEAR(cs.eta(Coord::first, Coord::second), -0.392472241019710769, 1e-13);
    EXPECT_NEAR(cs.eta(Coord::second, Coord::first), 0.392472241019710769, 1e-13);
}

TEST(CrossParams, StructuralInvariants) {
    for (const auto& p : parameter_grid()) {
        const auto cs = cross_params(p);
        EXPECT_EQ(cs.rho(Coord::first, Coord::first), 1.0);
        EXPECT_EQ(cs.rho(Coord::second, Coord::second), 1.0);
        EXPECT_EQ(cs.rho(Coord::first, Coord::second), cs.rho(Coord::second, Coord::first));
        EXPECT_EQ(cs.eta(Coord::first, Coord::first), 0.0);
        EXPECT_EQ(cs.eta(Coord::second, Coord::second), 0.0);
        EXPECT_EQ(cs.eta(Coord::first, Coord::second), -cs.eta(Coord::second, Coord::first));
        if (p.variant() == Variant::well_balanced) {
            EXPECT_EQ(cs.eta(Coord::first, Coord::second), 0.0);
        }
        EXPECT_LE(std::abs(cs.rho(Coord::first, Coord::second)), 1.0);
        EXPECT_TRUE(cs.norm_consts[0].has_value());
    }
}

TEST(CrossParams, WellBalancedHalfWithoutLimitLeavesConstantEmpty) {
    const auto cs = cross_params(ProcessParams(0.5, 0.7, 1, 1, 0.1, Variant::well_balanced));
    EXPECT_FALSE(cs.norm_consts[0].has_value());
    EXPECT_TRUE(cs.norm_consts[1].has_value());
}

TEST(WFunction, Branches) {
    const auto cs = cross_params(ProcessParams(0.4, 0.7, 1, 1, 0.15, Variant::causal));
    const double r = cs.rho(Coord::first, Coord::second);
    const double e = cs.eta(Coord::first, Coord::second);
    EXPECT_EQ(w_func(0.0, Coord::first, Coord::second, cs, 1.1), r);
    EXPECT_EQ(w_func(-3.0, Coord::first, Coord::second, cs, 1.1), r + e);
    EXPECT_EQ(w_func(2.0, Coord::first, Coord::second, cs, 1.1), r - e);
}

TEST(WFunction, LogBranchAtUnitHurstSum) {
    CrossStructure cs;
    cs.rho_mat = {{{1.0, 0.2}, {0.2, 1.0}}};
    cs.eta_mat = {{{0.0, 0.3}, {-0.3, 0.0}}};
    EXPECT_NEAR(w_func(2.0, Coord::first, Coord::second, cs, 1.0), 0.2 - 0.3 * std::log(2.0), 1e-15);
    EXPECT_NEAR(w_func(-2.0, Coord::first, Coord::second, cs, 1.0), 0.2 + 0.3 * std::log(2.0), 1e-15);
    EXPECT_EQ(w_func(0.0, Coord::first, Coord::second, cs, 1.0), 0.2);
}

TEST(FbmCcvf, VarianceNormalisation) {
    const ProcessParams p(0.4, 0.7, 1.5, 0.8, 0.15, Variant::causal);
    EXPECT_NEAR(fbm_ccvf(1, 1, Coord::first, Coord::first, p), 1.5 * 1.5, 1e-14);
    EXPECT_NEAR(fbm_ccvf(1, 1, Coord::second, Coord::second, p), 0.8 * 0.8, 1e-14);
    EXPECT_EQ(fbm_ccvf(0, 1, Coord::first, Coord::first, p), 0.0);
    // Self-similarity of the marginal variance.
    EXPECT_NEAR(fbm_ccvf(3, 3, Coord::first, Coord::first, p), 1.5 * 1.5 * std::pow(3.0, 0.8), 1e-12);
}

TEST(FbmCcvf, ArgumentSwapSymmetry) {
    const ProcessParams p(0.4, 0.7, 1, 1, 0.15, Variant::causal);
    for (double s : {0.5, 2.0, 3.0}) {
        for (double t : {0.0, 1.0, 2.5}) {
            EXPECT_NEAR(fbm_ccvf(s, t, Coord::first, Coord::second, p), fbm_ccvf(t, s, Coord::second, Coord::first, p),
                        1e-14);
        }
    }
}

TEST(FgnCcvf, Examples) {
    const ProcessParams p(0.4, 0.7, 1.2, 1, 0.15, Variant::causal);
    EXPECT_NEAR(fgn_ccvf(0, Coord::first, Coord::first, p), 1.44, 1e-14);
    const ProcessParams white(0.5, 0.7, 1, 1, 0.0, Variant::causal);
    EXPECT_EQ(fgn_ccvf(5, Coord::first, Coord::first, white), 0.0);
    EXPECT_NEAR(fgn_ccvf(3, Coord::first, Coord::second, p),
                second_difference(0, 3, Coord::first, Coord::second, p), 1e-12);
}

TEST(FgnCcvf, SecondDifferenceGrid) {
    for (const auto& p : parameter_grid()) {
        for (Coord j : both) {
            for (Coord k : both) {
                for (long h = 0; h <= 100; ++h) {
                    ASSERT_NEAR(fgn_ccvf(h, j, k, p), second_difference(0, h, j, k, p), 1e-10)
                        << "h=" << h << " H=(" << p.hurst1() << "," << p.hurst2() << ") rho=" << p.rho();
                }
            }
        }
    }
}

TEST(FgnCcvf, NegativeLagSymmetry) {
    for (const auto& p : parameter_grid()) {
        for (Coord j : both) {
            for (Coord k : both) {
                for (long h = -30; h <= 30; ++h) EXPECT_EQ(fgn_ccvf(h, j, k, p), fgn_ccvf(-h, k, j, p));
            }
        }
    }
}

TEST(FgnCcvf, Stationarity) {
    const ProcessParams p(0.4, 0.7, 1, 1, 0.15, Variant::causal);
    for (long h = 0; h <= 20; ++h) {
        const double ref = second_difference(0, h, Coord::first, Coord::second, p);
        for (long n : {3L, 17L, 50L}) {
            EXPECT_NEAR(second_difference(n, h, Coord::first, Coord::second, p), ref, 1e-10);
        }
    }
}

TEST(FgnCcvf, WellBalancedCrossIsSymmetric) {
    const ProcessParams p(0.3, 0.8, 1, 2, -0.4, Variant::well_balanced);
    for (long h = 0; h <= 50; ++h) {
        EXPECT_EQ(fgn_ccvf(h, Coord::first, Coord::second, p), fgn_ccvf(h, Coord::second, Coord::first, p));
    }
}

TEST(FgnCcvf, ZeroRhoKillsCross) {
    for (Variant v : {Variant::causal, Variant::well_balanced}) {
        const ProcessParams p(0.3, 0.8, 1, 2, 0.0, v);
        for (long h = -20; h <= 20; ++h) EXPECT_EQ(fgn_ccvf(h, Coord::first, Coord::second, p), 0.0);
    }
}

TEST(CovarianceModel, SeriesMatchesPointwise) {
    const CovarianceModel m(ProcessParams(0.4, 0.7, 1, 1, 0.15, Variant::causal));
    const auto s = m.fgn_series(10, Coord::first, Coord::second);
    EXPECT_EQ(s.first_lag, -10);
    EXPECT_EQ(s.last_lag(), 10);
    for (long h = -10; h <= 10; ++h) EXPECT_EQ(s.at(h), m.fgn(h, Coord::first, Coord::second));
}

TEST(JointCovariance, FactorisesWithoutJitterOnGrid) {
    for (const auto& p : parameter_grid()) {
        const auto f = cholesky(assemble_joint_covariance(512, p));
        EXPECT_EQ(f.escalations, 0) << "H=(" << p.hurst1() << "," << p.hurst2() << ") rho=" << p.rho();
        EXPECT_EQ(f.jitter, 0.0);
    }
}
