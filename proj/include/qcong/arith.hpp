#pragma once

// Small elementary number theory helpers shared by the modules.

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace qcong::arith {

using Rational = mpq_class;

std::uint64_t ipow(std::uint64_t base, unsigned exp);
std::int64_t floor_div(std::int64_t a, std::int64_t b);
std::int64_t mod_floor(std::int64_t a, std::int64_t m);

std::optional<std::uint64_t> mod_inverse(std::uint64_t a, std::uint64_t m);

/// Prime factorisation by trial division, p -> exponent.
std::map<std::uint64_t, unsigned> factorize(std::uint64_t n);
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);
/// Sorted list of positive divisors.
std::vector<std::uint64_t> divisors(std::uint64_t n);
bool is_prime(std::uint64_t n);
bool is_squarefree(std::uint64_t n);
/// (p, j) when n = p^j with j >= 1.
std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t n);

/// Kronecker symbol (a / n) for arbitrary integers, with the usual extension
/// (a/2) from a mod 8 and (a/-1) from the sign of a.
int kronecker(std::int64_t a, std::int64_t n);

std::int64_t floor_rational(const Rational& q);
bool is_perfect_square(std::uint64_t n);
std::uint64_t isqrt(std::uint64_t n);

}  // namespace qcong::arith
