#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace harleak {

// SplitMix64 finalizer. Used to derive independent child seeds; the
// derivation for child i of `seed` is mix_seed(seed ^ i).
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    return splitmix64(seed ^ index);
}

/// Deterministic random source.
///
/// Wraps std::mt19937_64, whose output sequence is fixed by the standard.
/// The standard distributions are implementation-defined, so every
/// draw used by the toolkit goes through the helpers below instead.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t uniform_index(std::uint64_t bound);

    /// Uniform real in [0, 1) with 53 bits of precision.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal via Box-Muller (no cached second value).
    double normal();

    /// Number of trials until first success, support {1, 2, ...}, mean 1/p.
    std::uint64_t geometric(double p);

    /// Index drawn proportionally to non-negative weights.
    std::size_t categorical(std::span<const double> weights);

    template <typename T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = uniform_index(i);
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace harleak
