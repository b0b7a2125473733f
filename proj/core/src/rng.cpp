#include "harleak/rng.hpp"

#include <cmath>
#include <numbers>

#include "harleak/error.hpp"

namespace harleak {

std::uint64_t Rng::uniform_index(std::uint64_t bound) {
    if (bound == 0) throw_invariant("uniform_index: bound must be positive");
    // Rejection sampling over the largest multiple of bound.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % bound;
}

double Rng::normal() {
    double u1;
    do {
        u1 = uniform01();
    } while (u1 <= 0.0);
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t Rng::geometric(double p) {
    if (!(p > 0.0 && p <= 1.0)) throw_invariant("geometric: p must lie in (0, 1]");
    if (p == 1.0) return 1;
    double u;
    do {
        u = uniform01();
    } while (u <= 0.0);
    return 1 + static_cast<std::uint64_t>(std::floor(std::log(u) / std::log1p(-p)));
}

std::size_t Rng::categorical(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (!(total > 0.0)) throw_invariant("categorical: weights must have positive mass");
    double target = uniform01() * total;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        target -= weights[i];
        if (target < 0.0) return i;
    }
    // Rounding left target at ~0; return the last positive weight.
    for (std::size_t i = weights.size(); i-- > 0;)
        if (weights[i] > 0.0) return i;
    return weights.size() - 1;
}

}  // namespace harleak
