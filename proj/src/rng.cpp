#include "steelclust/rng.h"

#include "steelclust/error.h"

#include <cmath>

namespace steelclust {
namespace {

uint64_t splitmix64(uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

uint64_t fnv1a64(std::string_view text) {
    uint64_t hash = 0xcbf29ce484222325ULL;
    for (const char c : text) {
        hash ^= static_cast<uint8_t>(c);
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

uint64_t rotl(uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

} // namespace

Rng::Rng(uint64_t seed) {
    uint64_t sm = seed;
    for (auto& word : state_) {
        word = splitmix64(sm);
    }
}

Rng Rng::stream(uint64_t seed, std::string_view name) {
    uint64_t sm = seed;
    const uint64_t mixed = splitmix64(sm) ^ fnv1a64(name);
    return Rng(mixed);
}

uint64_t Rng::nextU64() {
    const uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double Rng::nextUnit() {
    return static_cast<double>(nextU64() >> 11) * 0x1.0p-53;
}

double Rng::nextGaussian() {
    if (hasSpare_) {
        hasSpare_ = false;
        return spare_;
    }
    double u = 0.0;
    double v = 0.0;
    double s = 0.0;
    do {
        u = 2.0 * nextUnit() - 1.0;
        v = 2.0 * nextUnit() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * scale;
    hasSpare_ = true;
    return u * scale;
}

uint64_t Rng::nextBelow(uint64_t n) {
    if (n == 0) {
        throw Error("Rng::nextBelow: bound must be positive");
    }
    const uint64_t threshold = (0 - n) % n;
    for (;;) {
        const uint64_t r = nextU64();
        if (r >= threshold) {
            return r % n;
        }
    }
}

size_t Rng::nextWeighted(const std::vector<double>& weights) {
    const double u = nextUnit();
    double cumulative = 0.0;
    for (size_t i = 0; i < weights.size(); ++i) {
        cumulative += weights[i];
        if (u < cumulative) {
            return i;
        }
    }
    return weights.empty() ? 0 : weights.size() - 1;
}

} // namespace steelclust
