// Copyright (c) 2026 the polycell developers.
// SPDX-License-Identifier: Apache-2.0

#ifndef POLYCELL_RNG_HPP
#define POLYCELL_RNG_HPP

#include <cstdint>
#include <random>

namespace polycell {

/// Seedable deterministic random stream.
///
/// The generator is std::mt19937_64, whose output sequence is fixed by the
/// C++ standard, and doubles are derived from the top 53 bits directly, so a
/// given seed yields the same draw sequence on every platform. Standard
/// library distributions are deliberately not used (their mapping is
/// implementation-defined). Every stochastic component of the toolkit pulls
/// from one Rng instance in a documented order.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    static constexpr const char* algorithm() { return "mt19937_64"; }

    /// Uniform draw in [0, 1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Uniform draw in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    /// Uniform index in {0, ..., n-1}; n must be positive.
    std::size_t index(std::size_t n) {
        auto i = static_cast<std::size_t>(uniform01() * static_cast<double>(n));
        return i < n ? i : n - 1;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace polycell

#endif
