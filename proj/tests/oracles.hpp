#pragma once

// Closed-form and brute-force references used by the test suites. Nothing
// here calls into the library's cohomology or decomposition code.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "frobtoric/errors.hpp"

namespace oracle {

using frobtoric::binomial;

/// h^i(P^n, O(d)): h^0 = C(n+d, n) for d >= 0, h^n = C(-d-1, n) for d <= -n-1.
inline std::vector<std::int64_t> pn_cohomology(int n, std::int64_t d) {
    std::vector<std::int64_t> h(static_cast<std::size_t>(n) + 1, 0);
    if (d >= 0) h[0] = binomial(n + d, n);
    if (d <= -n - 1) h[static_cast<std::size_t>(n)] = binomial(-d - 1, n);
    return h;
}

/// F_*O(a) on P^n as {j : multiplicity of O(j)}: O(j) appears once for every
/// exponent vector e in [0, q)^{n+1} with sum(e) = a - j q.
inline std::map<std::int64_t, std::int64_t> pn_pushforward(int n, std::int64_t a, std::int64_t q) {
    std::map<std::int64_t, std::int64_t> out;
    std::vector<std::int64_t> e(static_cast<std::size_t>(n) + 1, 0);
    while (true) {
        const std::int64_t s = std::accumulate(e.begin(), e.end(), std::int64_t{0});
        // O(j) with j q = a - s
        const std::int64_t diff = a - s;
        if (((diff % q) + q) % q == 0) out[diff / q] += 1;
        std::size_t k = 0;
        while (k < e.size() && ++e[k] == q) e[k++] = 0;
        if (k == e.size()) break;
    }
    return out;
}

/// Kunneth product of two class multisets given as coordinate vectors.
template <class Map>
Map product_multiset(const Map& a, const Map& b) {
    Map out;
    for (const auto& [ca, ma] : a)
        for (const auto& [cb, mb] : b) {
            auto c = ca;
            c.insert(c.end(), cb.begin(), cb.end());
            out[c] += ma * mb;
        }
    return out;
}

inline std::vector<std::int64_t> convolve(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    std::vector<std::int64_t> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

inline std::vector<std::int64_t> primes_up_to(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (std::int64_t k = 2; k <= n; ++k) {
        bool prime = true;
        for (std::int64_t d = 2; d * d <= k; ++d)
            if (k % d == 0) prime = false;
        if (prime) out.push_back(k);
    }
    return out;
}

}  // namespace oracle
