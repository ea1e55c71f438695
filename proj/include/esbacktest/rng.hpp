#pragma once

#include <cstdint>

#include "esbacktest/normal_dist.hpp"

namespace esbacktest {

/// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Small counter-style generator (splitmix64). Compiler-independent and
/// cheap to construct, so every Monte Carlo replication gets its own
/// stream derived from (seed, stream index) alone.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t state) noexcept : state_(state) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        return mix64(z);
    }

    /// Uniform draw strictly inside (0,1), 53 significant bits.
    double uniform_open01() noexcept {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via the inverse-CDF transform.
    double normal() { return normal_quantile(uniform_open01()); }

private:
    std::uint64_t state_;
};

/// Stream for replication `index` under master `seed`.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t index) noexcept {
    return SplitMix64(mix64(seed ^ mix64(index * 0x9E3779B97F4A7C15ULL + 0xD1B54A32D192ED03ULL)));
}

} // namespace esbacktest
