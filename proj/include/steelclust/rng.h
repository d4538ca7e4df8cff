#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace steelclust {

// Deterministic 64-bit generator (xoshiro256** seeded through splitmix64).
// Uses no platform-dependent state, so a given seed produces the same
// sequence on every platform. Named streams derived from the same seed are
// statistically independent; every randomized operation in the toolkit
// draws from its own stream so that adding a stage never perturbs another.
class Rng {
public:
    explicit Rng(uint64_t seed);

    // Independent stream for (seed, name). Same inputs, same stream.
    static Rng stream(uint64_t seed, std::string_view name);

    uint64_t nextU64();

    // Uniform in [0, 1) with 53 random bits.
    double nextUnit();

    // Standard normal via the polar method.
    double nextGaussian();

    // Uniform integer in [0, n), unbiased. n must be > 0.
    uint64_t nextBelow(uint64_t n);

    // In-place Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& values) {
        for (size_t i = values.size(); i > 1; --i) {
            const size_t j = static_cast<size_t>(nextBelow(i));
            std::swap(values[i - 1], values[j]);
        }
    }

    // Index drawn from normalized weights (walks the cumulative sum).
    size_t nextWeighted(const std::vector<double>& weights);

private:
    std::array<uint64_t, 4> state_;
    double spare_ = 0.0;
    bool hasSpare_ = false;
};

} // namespace steelclust
