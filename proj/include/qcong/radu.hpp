#pragma once

// Radu's finite-verification framework for congruences of the form
// A(mn + t) == 0 (mod u), where sum A(n) q^n = prod_{delta | M} f_delta^r_delta.
//
// Given a tuple (m, M, N, t, r) in Delta*, auxiliary exponents r' over the
// divisors of N, and coset representatives [[1,0],[delta,1]], the congruence
// holds for all n once it holds for n <= floor(nu).

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qcong/series.hpp"

namespace qcong::radu {

using Rational = mpq_class;
using Exponents = std::map<std::uint64_t, std::int64_t>;

struct RaduInstance {
    std::uint64_t m = 1;
    std::uint64_t M = 1;
    std::uint64_t N = 1;
    std::uint64_t t = 0;
    Exponents r;        // keyed by every divisor of M
    Exponents r_prime;  // keyed by every divisor of N
    std::uint64_t kappa = 24;

    /// Exponent lists follow the divisors in increasing order; r_prime may be
    /// empty (all zero). kappa = gcd(m^2 - 1, 24).
    static RaduInstance make(std::uint64_t m, std::uint64_t M, std::uint64_t N, std::uint64_t t,
                             const std::vector<std::int64_t>& r, const std::vector<std::int64_t>& r_prime = {});

    RaduInstance with_t(std::uint64_t t) const;
    RaduInstance with_r_prime(const std::vector<std::int64_t>& r_prime) const;
    std::string to_string() const;
};

std::set<std::uint64_t> squares_mod(std::uint64_t n);

struct OrbitResult {
    std::set<std::uint64_t> P;
    std::uint64_t t_min = 0;
};
OrbitResult orbit_P(const RaduInstance& inst);

enum class ParityBranch { NotApplicable, First, Second, Neither };
std::string to_string(ParityBranch b);

struct DeltaStar {
    std::array<bool, 6> conditions{};
    ParityBranch branch = ParityBranch::NotApplicable;
    /// Set when a term of condition (3) does not divide exactly.
    bool condition3_nonintegral = false;

    bool all() const noexcept;
};
DeltaStar delta_star_check(const RaduInstance& inst);

class CosetHypothesisError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The lower-left entries delta of [[1,0],[delta,1]], one per divisor of N.
/// Requires N or N/2 squarefree.
std::vector<std::uint64_t> coset_reps(std::uint64_t n);

/// p(gamma) and p'(gamma) for gamma = [[1,0],[c,1]].
Rational p_lower(const RaduInstance& inst, std::uint64_t c);
Rational p_prime_lower(const RaduInstance& inst, std::uint64_t c);

Rational nu_bound(const RaduInstance& inst);
std::int64_t floor_nu(const RaduInstance& inst);

inline constexpr std::int64_t kMaxRPrimeEntry = 200;

/// Smallest-sum non-negative r' (each entry <= 200, ties broken
/// lexicographically) making p + p' >= 0 at every coset representative.
std::optional<std::vector<std::int64_t>> search_r_prime(const RaduInstance& inst,
                                                        std::int64_t max_entry = kMaxRPrimeEntry);

enum class RaduStatus { Proved, Refuted, HypothesisFailed, Consistent };
std::string to_string(RaduStatus s);

/// Produces the target generating function at (ring, order).
using SeriesHook = std::function<Series(Ring, std::size_t)>;

struct RaduVerdict {
    RaduStatus status = RaduStatus::HypothesisFailed;
    DeltaStar delta_star;
    bool cosets_ok = false;
    bool lower_bounds_ok = false;
    std::map<std::uint64_t, Rational> p_sums;  // p + p' per representative
    OrbitResult orbit;
    Rational nu;
    std::int64_t floor_nu = 0;
    std::int64_t depth = 0;  // largest n actually checked
    std::optional<std::pair<std::int64_t, std::uint64_t>> refuted_at;  // (n, t')
    std::optional<bool> hook_agrees;
    std::vector<std::string> failures;
};

inline constexpr std::size_t kHookOrder = 500;

/// Runs every hypothesis, then checks A(mn + t') == 0 mod u for t' in P(t)
/// and n <= min(floor(nu), depth_limit).
RaduVerdict radu_verify(const RaduInstance& inst, std::uint64_t u, const SeriesHook& hook = {},
                        std::optional<std::int64_t> depth_limit = std::nullopt);

}  // namespace qcong::radu
