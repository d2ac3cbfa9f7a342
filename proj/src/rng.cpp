#include "pmm/rng.hpp"

namespace pmm {

namespace {
constexpr std::uint64_t kMultiplier = 6364136223846793005ULL;
}

Pcg32::Pcg32(std::uint64_t seed, std::uint64_t stream) : state_(0), inc_((stream << 1u) | 1u) {
    next_u32();
    state_ += seed;
    next_u32();
}

std::uint32_t Pcg32::next_u32() {
    std::uint64_t old = state_;
    state_ = old * kMultiplier + inc_;
    auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    auto rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
}

std::uint64_t Pcg32::next_u64() {
    std::uint64_t high = next_u32();
    return (high << 32u) | next_u32();
}

std::uint32_t Pcg32::next_below(std::uint32_t bound) {
    // Values below 2^32 mod bound would make the final remainder uneven;
    // reject them. Expected iterations < 2 for every bound.
    std::uint32_t threshold = (-bound) % bound;
    for (;;) {
        std::uint32_t r = next_u32();
        if (r >= threshold) return r % bound;
    }
}

Pcg32 substream(std::uint64_t seed, std::uint64_t task_index) {
    return Pcg32(seed, task_index);
}

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace pmm
