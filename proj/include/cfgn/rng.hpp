#pragma once

#include <array>
#include <cstdint>

namespace cfgn {

/// Philox4x32-10 block function (Salmon et al., Random123).
[[nodiscard]] std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                                     std::array<std::uint32_t, 2> key) noexcept;

/// Standard normal quantile, accurate to a few ulp on (0,1).
[[nodiscard]] double normal_quantile(double p) noexcept;

/// Counter-based stream: key = seed, counter = (draw index, stream id). Streams
/// with different ids never overlap and are reproducible on any platform.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept;

    [[nodiscard]] std::uint64_t next_u64() noexcept;
    // Uniform on the open interval (0,1).
    [[nodiscard]] double uniform() noexcept;
    [[nodiscard]] double normal() noexcept { return normal_quantile(uniform()); }

private:
    void refill() noexcept;

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int used_ = 4;
};

} // namespace cfgn
