#pragma once

#include <cstdint>
#include <string_view>

namespace vlmrob {

// Deterministic PRNG with explicit substream derivation.
//
// All randomness in the toolkit flows from one root seed. Substreams are
// derived as seed_for(root, label, index), where `label` names the consumer
// (e.g. "init", "batch-shuffle", "few-shot") and `index` distinguishes
// parallel units (example index, epoch, ...). The derivation is
// splitmix64(splitmix64(root ^ fnv1a64(label)) ^ index), so streams for
// different labels or indices never coincide and results do not depend on
// evaluation order or thread count.
//
// The generator itself is splitmix64. Distribution code is hand-rolled so
// that outputs are identical across standard libraries.

constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

constexpr std::uint64_t splitmix64_step(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

constexpr std::uint64_t seed_for(std::uint64_t root, std::string_view label,
                                 std::uint64_t index = 0) {
    return splitmix64_step(splitmix64_step(root ^ fnv1a64(label)) ^ index);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in [lo, hi).
    double next_double(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    // Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t next_below(std::uint64_t bound) {
        // Multiply-shift; bias is < 2^-64 per draw, irrelevant at toy scale.
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
    }

    // Standard normal via Box-Muller (polar form avoided to keep the
    // consumption pattern fixed: exactly two uniforms per pair).
    double next_gauss();

  private:
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace vlmrob
