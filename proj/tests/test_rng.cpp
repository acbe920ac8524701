#include <array>
#include <cmath>
#include <cstdint>
#include <set>

#include <boost/math/distributions/normal.hpp>
#include <gtest/gtest.h>

#include "cfgn/rng.hpp"

using namespace cfgn;

// Known-answer vectors of the Random123 distribution for Philox4x32-10.
TEST(Philox, KnownAnswerZero) {
    const auto out = philox4x32({0, 0, 0, 0}, {0, 0});
    EXPECT_EQ(out, (std::array<std::uint32_t, 4>{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
}

TEST(Philox, KnownAnswerOnes) {
    const auto out = philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
    EXPECT_EQ(out, (std::array<std::uint32_t, 4>{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
}

TEST(Philox, KnownAnswerPi) {
    const auto out = philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
    EXPECT_EQ(out, (std::array<std::uint32_t, 4>{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(NormalQuantile, MatchesBoost) {
    const boost::math::normal_distribution<double> nd;
    for (double p : {1e-300, 1e-15, 1e-10, 1e-5, 0.001, 0.02, 0.02425, 0.1, 0.3, 0.5, 0.7, 0.9, 0.97575, 0.99,
                     1 - 1e-9}) {
        const double ref = boost::math::quantile(nd, p);
        EXPECT_NEAR(normal_quantile(p), ref, 1e-13 * std::max(1.0, std::abs(ref))) << p;
    }
    EXPECT_EQ(normal_quantile(0.5), 0.0);
    EXPECT_TRUE(std::isinf(normal_quantile(0.0)));
    EXPECT_TRUE(std::isinf(normal_quantile(1.0)));
}

TEST(CounterRng, UniformInOpenUnitInterval) {
    CounterRng rng(5, 0);
    double mean = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
        mean += u;
    }
    EXPECT_NEAR(mean / n, 0.5, 5 * std::sqrt(1.0 / 12 / n));
}

TEST(CounterRng, NormalMoments) {
    CounterRng rng(11, 3);
    const int n = 400000;
    double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        s1 += z;
        s2 += z * z;
        s3 += z * z * z;
        s4 += z * z * z * z;
    }
    EXPECT_NEAR(s1 / n, 0.0, 5 / std::sqrt(double(n)));
    EXPECT_NEAR(s2 / n, 1.0, 5 * std::sqrt(2.0 / n));
    EXPECT_NEAR(s3 / n, 0.0, 5 * std::sqrt(15.0 / n));
    EXPECT_NEAR(s4 / n, 3.0, 5 * std::sqrt(96.0 / n));
}

TEST(CounterRng, Deterministic) {
    CounterRng a(42, 7), b(42, 7);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(CounterRng, StreamsAndSeedsDiffer) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t stream = 0; stream < 64; ++stream) {
        CounterRng r(42, stream);
        for (int i = 0; i < 16; ++i) seen.insert(r.next_u64());
    }
    for (std::uint64_t seed = 43; seed < 50; ++seed) {
        CounterRng r(seed, 0);
        for (int i = 0; i < 16; ++i) seen.insert(r.next_u64());
    }
    EXPECT_EQ(seen.size(), (64u + 7u) * 16u);
}

TEST(CounterRng, StreamsUncorrelated) {
    CounterRng a(1, 0), b(1, 1);
    const int n = 200000;
    double s = 0;
    for (int i = 0; i < n; ++i) s += a.normal() * b.normal();
    EXPECT_NEAR(s / n, 0.0, 5 / std::sqrt(double(n)));
}
