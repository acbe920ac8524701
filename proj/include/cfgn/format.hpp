#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace cfgn {

// Shortest round-trip decimal representation; byte-stable across runs.
[[nodiscard]] std::string format_double(double v);

[[nodiscard]] std::string hex64(std::uint64_t v);

// FNV-1a, 64 bit.
class Fnv1a {
public:
    Fnv1a& bytes(const void* data, std::size_t n) noexcept;
    Fnv1a& text(std::string_view s) noexcept { return bytes(s.data(), s.size()); }
    Fnv1a& u64(std::uint64_t v) noexcept;
    Fnv1a& f64(double v) noexcept;
    [[nodiscard]] std::uint64_t value() const noexcept { return state_; }

private:
    std::uint64_t state_ = 0xcbf29ce484222325ull;
};

inline constexpr std::string_view tool_version = "cfgn 1.0.0";

} // namespace cfgn
