#pragma once

#include <cstdint>

namespace pmm {

/// pcg32: 64-bit LCG state with an xorshift-rotate output function
/// (O'Neill's minimal variant). Identical (seed, stream) pairs produce
/// identical output sequences on every platform, which is what pins the
/// golden values and makes certificates reproducible.
class Pcg32 {
public:
    static constexpr const char* kGeneratorId = "pcg32";

    explicit Pcg32(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    /// Uniform in [0, bound), bound >= 1. Modulo bias is removed by
    /// rejecting the low remainder band, so every value is exactly
    /// equally likely.
    std::uint32_t next_below(std::uint32_t bound);

private:
    std::uint64_t state_;
    std::uint64_t inc_;
};

/// Deterministic substream for parallel tasks: task `index` under `seed`
/// always sees the same stream, independent of scheduling.
Pcg32 substream(std::uint64_t seed, std::uint64_t task_index);

/// splitmix64 finalizer; the documented mixing step for deriving seeds
/// from tuples such as (seed, n, c).
std::uint64_t mix64(std::uint64_t x);

}  // namespace pmm
