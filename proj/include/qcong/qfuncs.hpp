#pragma once

// Named q-series: f-products, Ramanujan's phi/psi/Omega, and the generating
// functions of generalized cubic and overcubic partitions, together with a
// brute-force counting oracle that never touches the series fast paths.

#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "qcong/series.hpp"

namespace qcong {

/// prod_delta f_delta^(r_delta); zero exponents are dropped on construction.
class FProduct {
public:
    using Map = std::map<std::uint64_t, std::int64_t>;

    FProduct() = default;
    FProduct(std::initializer_list<Map::value_type> init);
    explicit FProduct(const Map& factors);

    const Map& factors() const noexcept { return factors_; }
    bool empty() const noexcept { return factors_.empty(); }
    std::int64_t exponent(std::uint64_t delta) const;

    FProduct operator*(const FProduct& other) const;
    FProduct inverse() const;
    FProduct pow(std::int64_t e) const;
    /// q -> q^d, i.e. f_delta -> f_(d delta).
    FProduct dilate(std::uint64_t d) const;

    std::string to_string() const;

    friend bool operator==(const FProduct&, const FProduct&) = default;

private:
    Map factors_;
};

enum class FamilyKind { GeneralizedCubic, GeneralizedOvercubic };

struct PartitionFamily {
    FamilyKind kind;
    std::int64_t c;

    static PartitionFamily cubic(std::int64_t c);
    static PartitionFamily overcubic(std::int64_t c);
    /// "a" or "abar".
    static PartitionFamily parse(const std::string& name, std::int64_t c);

    /// 1/(f1 f2^(c-1)) or f4^(c-1)/(f1^2 f2^(2c-3)).
    FProduct fproduct() const;
    std::string name() const;
    std::string label() const;  // e.g. "abar_6"

    friend bool operator==(const PartitionFamily&, const PartitionFamily&) = default;
};

Series expand_fproduct(const FProduct& p, Ring ring, std::size_t order);
Series genfun(const PartitionFamily& f, Ring ring, std::size_t order);

inline constexpr std::size_t kOracleMaxN = 2000;

/// Coefficient table 0..n_max by expanding each factor (1 - q^s)^(+-1) of
/// the product form directly.
std::vector<BigInt> oracle_table(const PartitionFamily& f, std::size_t n_max);
BigInt oracle_count(const PartitionFamily& f, std::size_t n);

/// phi(q) = sum_k q^(k^2); built by the theta sum and checked against
/// f2^5/(f1^2 f4^2).
Series phi(Ring ring, std::size_t order);
Series phi_theta(Ring ring, std::size_t order);
Series psi(Ring ring, std::size_t order);
Series omega(Ring ring, std::size_t order);

FProduct phi_fproduct();
FProduct psi_fproduct();
FProduct omega_fproduct();

}  // namespace qcong
