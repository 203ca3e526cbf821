#pragma once

// Modular-form bookkeeping for eta-quotients prod_delta eta(delta z)^r_delta:
// weight, the two mod-24 conditions, Gamma_0(N) index, Sturm bound, cusp
// orders per divisor of the level, holomorphy, and the Nebentypus character.
//
// All arithmetic is exact; cusp orders are rationals.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace qcong::etaq {

using Rational = mpq_class;
using ExponentMap = std::map<std::uint64_t, std::int64_t>;

struct HalfInteger {
    std::int64_t twice = 0;

    bool is_integral() const noexcept { return twice % 2 == 0; }
    /// Throws when the value is not an integer.
    std::int64_t value() const;
    std::string to_string() const;

    friend bool operator==(const HalfInteger&, const HalfInteger&) = default;
};

class NonIntegralWeight : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

enum class LevelCheck {
    Strict,   // every delta must divide the level
    Relaxed,  // evaluate formulas at a declared level regardless
};

class EtaQuotient {
public:
    EtaQuotient(std::uint64_t level, const ExponentMap& exponents,
                LevelCheck check = LevelCheck::Strict);

    /// Smallest multiple of lcm(delta) satisfying both mod-24 conditions.
    static EtaQuotient at_minimal_level(const ExponentMap& exponents);

    std::uint64_t level() const noexcept { return level_; }
    const ExponentMap& exponents() const noexcept { return exponents_; }
    bool exponents_divide_level() const noexcept;

private:
    std::uint64_t level_;
    ExponentMap exponents_;
};

HalfInteger weight(const EtaQuotient& e);
HalfInteger weight(const ExponentMap& r);

/// (sum delta r_delta == 0 mod 24, sum (N/delta) r_delta == 0 mod 24); the
/// second sum is rational when delta does not divide N and then counts as
/// failing unless it is an integer multiple of 24.
std::pair<bool, bool> check_24_conditions(const EtaQuotient& e);

std::uint64_t index_gamma0(std::uint64_t n);
std::uint64_t sturm_bound(std::int64_t weight, std::uint64_t level);

/// Order of vanishing at a cusp c/d, d | N.
Rational cusp_order(const EtaQuotient& e, std::uint64_t d);

struct Holomorphy {
    bool holomorphic = false;
    std::map<std::uint64_t, Rational> orders;
};
Holomorphy is_holomorphic(const EtaQuotient& e);

/// d -> Kronecker(s, d) for s = (-1)^l prod delta^r_delta, stored as its
/// squarefree kernel plus the primes actually present in the product.
class Character {
public:
    Character(std::int64_t kernel, std::vector<std::uint64_t> primes);

    std::int64_t discriminant() const noexcept { return kernel_; }
    const std::vector<std::uint64_t>& primes() const noexcept { return primes_; }
    int operator()(std::int64_t d) const;

private:
    std::int64_t kernel_;
    std::vector<std::uint64_t> primes_;
};

Character character_of(const EtaQuotient& e);
Character character_of(const ExponentMap& r);

/// Net exponent of each prime in prod delta^r_delta.
std::map<std::uint64_t, std::int64_t> prime_exponents(const ExponentMap& r);

class LevelSearchFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kMaxLevelMultiplier = 576;

/// base * M for the smallest M <= 576 with both mod-24 conditions at level
/// base * M. The deltas need not divide the level.
std::uint64_t min_level(const ExponentMap& r, std::uint64_t base);

struct FormMeta {
    std::uint64_t level = 0;
    HalfInteger weight;
    std::int64_t character_discriminant = 0;
    std::map<std::uint64_t, Rational> cusp_orders;
    std::uint64_t sturm_bound = 0;  // zero when the weight is not a positive integer
    std::uint64_t index = 0;
    std::pair<bool, bool> cond24{false, false};
    bool holomorphic = false;
    bool exponents_divide_level = false;
};
FormMeta form_meta(const EtaQuotient& e);

// --- the two eta-quotient families used for the density theorems -----------

namespace families {

/// eta^(3^(k+1)-2)(24z) eta^(2^a m-1)(96z) / (eta^(2^(a+1)m-3)(48z) eta^(3^k)(72z))
ExponentMap b_family(unsigned alpha, std::int64_t m, unsigned k);
/// eta^(p^(a+k)-2)(24z) eta^(t-1)(96z) / (eta^(2t-3)(48z) eta^(p^k)(24 p^a z))
ExponentMap h_family(std::uint64_t p, unsigned a, unsigned k, std::int64_t t);

bool b_hypothesis(unsigned alpha, std::int64_t m, unsigned k);
bool h_hypothesis(std::uint64_t p, unsigned a, unsigned k, std::int64_t t);

/// One row of a simplified holomorphy table: the divisors it covers and the
/// inequality, evaluated for given parameters.
struct TableRow {
    std::vector<std::uint64_t> divisors;
    std::string inequality;
};

const std::vector<TableRow>& b_table();
const std::vector<TableRow>& h_table();

bool b_row_holds(std::size_t row, unsigned alpha, std::int64_t m, unsigned k);
bool h_row_holds(std::size_t row, std::uint64_t p, unsigned a, unsigned k, std::int64_t t);

/// Sign test of the raw cusp-order sum at divisor d (independent of level).
bool raw_order_nonnegative(const ExponentMap& r, std::uint64_t d);

}  // namespace families

}  // namespace qcong::etaq
