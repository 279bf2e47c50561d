#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "censtail/survival.hpp"

namespace censtail::testing {

// Mixed-delta fixture shared with tests/oracles/compute_oracles.py.
inline CensoredSample fixture20() {
    return {{1.3, 2.7, 0.8, 5.1, 3.3, 9.7, 1.9, 4.4, 12.5, 2.2, 6.8, 1.1, 15.2, 3.9, 7.7, 2.9, 25.4, 5.6, 1.6, 10.3},
            {1, 0, 1, 1, 0, 1, 1, 0, 1, 1, 0, 1, 1, 0, 1, 1, 0, 1, 0, 1}};
}

inline CensoredSample fixture20_uncensored() {
    auto s = fixture20();
    s.delta.assign(s.size(), 1);
    return s;
}

inline CensoredSample fixture10() {
    return {{2.0, 3.5, 1.2, 8.9, 4.1, 15.0, 6.3, 1.7, 27.4, 11.2}, std::vector<std::uint8_t>(10, 1)};
}

// Random censored sample with log-normal-ish z and a given censoring rate.
// Independent of the library's own generator on purpose.
inline CensoredSample random_sample(std::mt19937_64& rng, std::size_t n, double censor_rate) {
    std::lognormal_distribution<double> z(0.0, 1.5);
    std::bernoulli_distribution cens(censor_rate);
    CensoredSample s;
    s.z.resize(n);
    s.delta.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        s.z[j] = z(rng);
        s.delta[j] = cens(rng) ? 0 : 1;
    }
    return s;
}

inline bool rel_close(double a, double b, double tol) {
    if (a == b) return true;
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace censtail::testing
