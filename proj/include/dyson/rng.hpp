#pragma once

#include <cstdint>
#include <random>

namespace dyson {

/// Fixed RNG recipe recorded in every output header: the std::mt19937_64
/// engine (bit-exact across platforms) with 53-bit uniform doubles, child
/// streams derived through splitmix64.
inline constexpr const char* kRngId = "mt19937_64+u53/sm64split";

struct SplitMix64 {
    uint64_t state;
    uint64_t next() {
        uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
};

/// Deterministic seed for an independent child stream.
inline uint64_t child_seed(uint64_t base, uint64_t stream) {
    SplitMix64 mix{base ^ (0x9E3779B97F4A7C15ull * (stream + 1))};
    mix.next();
    return mix.next();
}

class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t bits() { return engine_(); }

    /// Uniform double in [0, 1) with exactly 53 random bits; the conversion
    /// is fixed here rather than delegated to std::uniform_real_distribution,
    /// whose output is implementation-defined.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform index in [0, n).
    size_t pick(size_t n) { return static_cast<size_t>(uniform() * static_cast<double>(n)); }

private:
    std::mt19937_64 engine_;
};

}  // namespace dyson
