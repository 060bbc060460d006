#pragma once

#include <random>
#include <vector>

#include "wirt/complex.hpp"

namespace wirt::test {

/// Deterministic uniform points in the disc |z - center| < radius.
inline std::vector<Complex> random_points(std::size_t count, std::uint64_t seed, double radius = 1.0,
                                          Complex center = 0.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Complex> pts;
    pts.reserve(count);
    while (pts.size() < count) {
        const Complex p{2.0 * u(rng) - 1.0, 2.0 * u(rng) - 1.0};
        if (std::abs(p) < 1.0) pts.push_back(center + radius * p);
    }
    return pts;
}

inline double rel_err(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace wirt::test
