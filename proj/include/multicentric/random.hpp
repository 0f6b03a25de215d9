#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "core.hpp"

namespace mcalc {

/// Seeded generator for reproducible instances.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(eng_); }
    cplx complex_normal() { return {normal() / std::numbers::sqrt2, normal() / std::numbers::sqrt2}; }

    /// Uniform point in the closed disc |z - c| <= r.
    cplx in_disc(double r, cplx c = 0.0) {
        const double rad = r * std::sqrt(uniform());
        return c + std::polar(rad, uniform(0.0, 2.0 * std::numbers::pi));
    }

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

}  // namespace mcalc
