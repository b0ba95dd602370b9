#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace bicrypt::testing {

/// Small integers keep every sum and product exactly representable.
inline std::vector<double> random_ints(std::mt19937_64& rng, std::size_t n, int lo = -9, int hi = 9) {
    std::uniform_int_distribution<int> d(lo, hi);
    std::vector<double> v(n);
    for (double& x : v) x = d(rng);
    return v;
}

inline std::vector<double> random_reals(std::mt19937_64& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<double> v(n);
    for (double& x : v) x = d(rng);
    return v;
}

inline int random_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace bicrypt::testing
