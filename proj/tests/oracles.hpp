#pragma once

// Independent reference computations for the tests: plain dynamic
// programming over the product definitions, no shared code with src/.

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using Table = std::vector<mpz_class>;

/// t *= 1/(1 - q^k), in place.
inline void divide_by_one_minus(Table& t, std::size_t k) {
    for (std::size_t n = k; n < t.size(); ++n) t[n] += t[n - k];
}

/// t *= (1 + q^k), in place.
inline void multiply_by_one_plus(Table& t, std::size_t k) {
    for (std::size_t n = t.size(); n-- > k;) t[n] += t[n - k];
}

/// a_c(n): partitions whose even parts come in c colours, 1/(f1 f2^(c-1)).
inline Table cubic(std::int64_t c, std::size_t n_max) {
    Table t(n_max + 1, 0);
    t[0] = 1;
    for (std::size_t k = 1; k <= n_max; ++k) {
        divide_by_one_minus(t, k);
        if (k % 2 == 0) {
            for (std::int64_t j = 1; j < c; ++j) divide_by_one_minus(t, k);
        }
    }
    return t;
}

/// abar_c(n) = coefficient of prod (1+q^k)/(1-q^k) * prod ((1+q^2k)/(1-q^2k))^(c-1).
inline Table overcubic(std::int64_t c, std::size_t n_max) {
    Table t(n_max + 1, 0);
    t[0] = 1;
    for (std::size_t k = 1; k <= n_max; ++k) {
        multiply_by_one_plus(t, k);
        divide_by_one_minus(t, k);
        if (k % 2 == 0) {
            for (std::int64_t j = 1; j < c; ++j) {
                multiply_by_one_plus(t, k);
                divide_by_one_minus(t, k);
            }
        }
    }
    return t;
}

/// p(n) by Euler's pentagonal recurrence.
inline Table partitions(std::size_t n_max) {
    Table p(n_max + 1, 0);
    p[0] = 1;
    for (std::size_t n = 1; n <= n_max; ++n) {
        for (std::int64_t k = 1;; ++k) {
            const auto g1 = static_cast<std::size_t>(k * (3 * k - 1) / 2);
            if (g1 > n) break;
            const int sign = k % 2 ? 1 : -1;
            p[n] += sign * p[n - g1];
            const auto g2 = static_cast<std::size_t>(k * (3 * k + 1) / 2);
            if (g2 <= n) p[n] += sign * p[n - g2];
        }
    }
    return p;
}

inline std::uint64_t residue(const mpz_class& v, std::uint64_t m) {
    mpz_class r = v % m;
    if (r < 0) r += m;
    return r.get_ui();
}

}  // namespace oracle
