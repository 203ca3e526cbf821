#pragma once

// Expression trees over q-series and a catalog of dissection identities that
// are checked coefficient by coefficient.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qcong/qfuncs.hpp"
#include "qcong/series.hpp"

namespace qcong::engine {

class QExprError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Immutable q-series expression. Every node can be evaluated at any ring
/// and order; dilations and progressions request the orders they need from
/// their children.
class QExpr {
public:
    struct Node;

    static QExpr product(const FProduct& p);
    static QExpr phi();
    static QExpr psi();
    static QExpr omega();
    static QExpr genfun(const PartitionFamily& f);
    static QExpr constant(const BigInt& k);

    /// self(q^d).
    QExpr dilate(std::size_t d) const;
    /// sum_n self[d n + r] q^n.
    QExpr extract(std::size_t d, std::size_t r) const;
    /// q^k self.
    QExpr qshift(std::size_t k) const;
    QExpr pow(std::int64_t e) const;
    /// prod_{i >= 1} self(q^(2^i))^(c 2^(i-1)), cut where 2^i reaches the order.
    QExpr dyadic_product(std::int64_t c) const;

    friend QExpr operator+(const QExpr& a, const QExpr& b);
    friend QExpr operator-(const QExpr& a, const QExpr& b);
    friend QExpr operator*(const QExpr& a, const QExpr& b);
    friend QExpr operator*(const BigInt& k, const QExpr& a);

    Series eval(Ring ring, std::size_t order) const;
    std::string to_string() const;

private:
    explicit QExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

struct IdentityCase {
    std::string id;
    std::string label;
    QExpr lhs;
    QExpr rhs;
    std::size_t order = 400;
    std::optional<std::uint64_t> modulus;
};

struct IdentityVerdict {
    std::string id;
    bool equal = false;
    std::size_t order = 0;
    std::optional<std::size_t> first_mismatch;
    std::string lhs_value;  // at the mismatch
    std::string rhs_value;
    std::string error;      // evaluation failure, naming the subtree
    double wall_ms = 0;

    friend bool operator==(const IdentityVerdict&, const IdentityVerdict&) = default;
};

IdentityVerdict verify_identity(const IdentityCase& c, std::optional<std::size_t> order_override = std::nullopt);

/// The shipped catalog: 2- and 3-dissections with their auxiliary identities,
/// the overcubic functional equation and its infinite-product iterate, the
/// even/odd generating functions and the 4n+1, 4n+2, 4n+3 dissections.
std::vector<IdentityCase> identity_catalog();

}  // namespace qcong::engine
