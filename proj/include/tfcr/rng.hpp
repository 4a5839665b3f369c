#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace tfcr {

/// Seeded RNG with explicit bounded-draw logic so sequences are identical
/// across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform draw in [0, bound).
    std::uint64_t next(std::uint64_t bound) {
        // rejection sampling to avoid modulo bias
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t value;
        do {
            value = engine_();
        } while (value >= limit);
        return value % bound;
    }

    /// Uniform double in [0, 1).
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::swap(items[i - 1], items[next(i)]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace tfcr
