#pragma once

// Truncated formal power series in q over Z or Z/mZ.
//
// A Series of order N stores the coefficients of q^0 .. q^(N-1). Binary
// operations truncate to the smaller order of their operands; nothing is ever
// re-extended implicitly.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace qcong {

using BigInt = mpz_class;

/// Coefficient ring: exact integers, or residues modulo 2 <= m < 2^31.
class Ring {
public:
    static constexpr std::uint64_t kMaxModulus = (std::uint64_t{1} << 31) - 1;

    static Ring exact() noexcept { return Ring{}; }
    static Ring mod(std::uint64_t m);

    bool is_exact() const noexcept { return modulus_ == 0; }
    /// Zero for the exact ring.
    std::uint64_t modulus() const noexcept { return modulus_; }
    std::string to_string() const;

    friend bool operator==(const Ring&, const Ring&) = default;

private:
    std::uint64_t modulus_ = 0;
};

class RingMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NonUnitError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct SignedTerm {
    std::size_t exponent;
    int sign;  // +1 or -1

    friend bool operator==(const SignedTerm&, const SignedTerm&) = default;
};

/// Sparse series with +-1 coefficients and strictly increasing exponents, all
/// below order().
class SparseSignedSeries {
public:
    SparseSignedSeries(std::vector<SignedTerm> terms, std::size_t order);

    const std::vector<SignedTerm>& terms() const noexcept { return terms_; }
    std::size_t order() const noexcept { return order_; }

private:
    std::vector<SignedTerm> terms_;
    std::size_t order_;
};

class Series {
public:
    /// Zero series.
    Series(Ring ring, std::size_t order);
    /// Residues are reduced into [0, m).
    Series(Ring ring, std::span<const std::int64_t> coeffs);
    Series(Ring ring, std::vector<BigInt> coeffs);

    static Series one(Ring ring, std::size_t order);
    static Series from_residues(std::uint64_t modulus, std::vector<std::uint64_t> residues);

    Ring ring() const noexcept { return ring_; }
    std::size_t order() const noexcept { return order_; }

    /// Canonical representative; for Mod(m) this lies in [0, m).
    BigInt coeff(std::size_t n) const;
    bool coeff_is_zero(std::size_t n) const;
    /// True when the coefficient is divisible by u (u must divide m in Mod(m)).
    bool coeff_divisible_by(std::size_t n, std::uint64_t u) const;
    bool is_zero() const;

    /// Raw storage; only the one matching ring() is populated.
    const std::vector<std::uint64_t>& residues() const noexcept { return residues_; }
    const std::vector<BigInt>& integers() const noexcept { return integers_; }

    std::string to_string(std::size_t max_terms = 12) const;

    friend bool operator==(const Series& a, const Series& b);

private:
    Ring ring_;
    std::size_t order_;
    std::vector<std::uint64_t> residues_;
    std::vector<BigInt> integers_;

    friend class SeriesBuilder;
};

// --- construction helpers ---------------------------------------------------

/// f_k = (q^k; q^k)_inf via Euler's pentagonal number theorem.
SparseSignedSeries euler_factor(std::size_t k, std::size_t order);
Series densify(const SparseSignedSeries& s, Ring ring);
/// q^shift * a, order grows by shift.
Series shift(const Series& a, std::size_t shift);
Series truncate(const Series& a, std::size_t order);
/// Exact -> Mod(m), or Mod(m) -> Mod(d) for d | m.
Series reduce(const Series& a, Ring target);

// --- arithmetic -------------------------------------------------------------

Series add(const Series& a, const Series& b);
Series sub(const Series& a, const Series& b);
Series negate(const Series& a);
Series scale(const Series& a, const BigInt& k);
Series mul(const Series& a, const Series& b);
Series mul_sparse(const Series& a, const SparseSignedSeries& s);
/// a / s for a sparse divisor whose constant term is +-1.
Series div_sparse(const Series& a, const SparseSignedSeries& s);
Series invert(const Series& a);
Series pow(const Series& a, std::int64_t e);

/// Sum_n a(d n + r) q^n.
Series extract_progression(const Series& a, std::size_t d, std::size_t r);
/// a(q^d).
Series dilate(const Series& a, std::size_t d);

/// f_k^e at the given order. Under Mod(p^j) the exponent is first reduced
/// with f_k^(p^j) == f_(kp)^(p^(j-1)) (mod p^j) as long as p^j divides e.
Series euler_power(std::size_t k, std::int64_t e, Ring ring, std::size_t order);

/// acc * f_k^e, choosing between repeated sparse passes and a dense power.
Series mul_euler_power(const Series& acc, std::size_t k, std::int64_t e);

}  // namespace qcong
