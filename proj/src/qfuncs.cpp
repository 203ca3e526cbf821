#include "qcong/qfuncs.hpp"

#include <sstream>
#include <stdexcept>

namespace qcong {

FProduct::FProduct(std::initializer_list<Map::value_type> init) {
    for (const auto& [delta, r] : init) {
        if (delta == 0) throw std::invalid_argument("FProduct: delta must be positive");
        factors_[delta] += r;
    }
    std::erase_if(factors_, [](const auto& kv) { return kv.second == 0; });
}

FProduct::FProduct(const Map& factors) {
    for (const auto& [delta, r] : factors) {
        if (delta == 0) throw std::invalid_argument("FProduct: delta must be positive");
        if (r != 0) factors_[delta] = r;
    }
}

std::int64_t FProduct::exponent(std::uint64_t delta) const {
    const auto it = factors_.find(delta);
    return it == factors_.end() ? 0 : it->second;
}

FProduct FProduct::operator*(const FProduct& other) const {
    Map m = factors_;
    for (const auto& [delta, r] : other.factors_) m[delta] += r;
    return FProduct(m);
}

FProduct FProduct::inverse() const { return pow(-1); }

FProduct FProduct::pow(std::int64_t e) const {
    Map m;
    for (const auto& [delta, r] : factors_) m[delta] = r * e;
    return FProduct(m);
}

FProduct FProduct::dilate(std::uint64_t d) const {
    if (d == 0) throw std::invalid_argument("FProduct::dilate: d must be positive");
    Map m;
    for (const auto& [delta, r] : factors_) m[delta * d] = r;
    return FProduct(m);
}

std::string FProduct::to_string() const {
    if (factors_.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [delta, r] : factors_) {
        if (!first) os << " ";
        first = false;
        os << "f" << delta;
        if (r != 1) os << "^" << r;
    }
    return os.str();
}

PartitionFamily PartitionFamily::cubic(std::int64_t c) {
    if (c < 1) throw std::invalid_argument("PartitionFamily: c must be >= 1");
    return {FamilyKind::GeneralizedCubic, c};
}

PartitionFamily PartitionFamily::overcubic(std::int64_t c) {
    if (c < 1) throw std::invalid_argument("PartitionFamily: c must be >= 1");
    return {FamilyKind::GeneralizedOvercubic, c};
}

PartitionFamily PartitionFamily::parse(const std::string& name, std::int64_t c) {
    if (name == "a") return cubic(c);
    if (name == "abar") return overcubic(c);
    throw std::invalid_argument("unknown partition family '" + name + "' (expected a or abar)");
}

FProduct PartitionFamily::fproduct() const {
    if (kind == FamilyKind::GeneralizedCubic) return FProduct{{1, -1}, {2, -(c - 1)}};
    return FProduct{{4, c - 1}, {1, -2}, {2, -(2 * c - 3)}};
}

std::string PartitionFamily::name() const {
    return kind == FamilyKind::GeneralizedCubic ? "a" : "abar";
}

std::string PartitionFamily::label() const { return name() + "_" + std::to_string(c); }

Series expand_fproduct(const FProduct& p, Ring ring, std::size_t order) {
    Series acc = Series::one(ring, order);
    for (const auto& [delta, r] : p.factors()) acc = mul_euler_power(acc, delta, r);
    return acc;
}

Series genfun(const PartitionFamily& f, Ring ring, std::size_t order) {
    return expand_fproduct(f.fproduct(), ring, order);
}

std::vector<BigInt> oracle_table(const PartitionFamily& f, std::size_t n_max) {
    if (n_max > kOracleMaxN) {
        throw std::out_of_range("oracle: n = " + std::to_string(n_max) + " exceeds oracle scale " +
                                std::to_string(kOracleMaxN));
    }
    std::vector<BigInt> b(n_max + 1, BigInt(0));
    b[0] = 1;
    const FProduct prod = f.fproduct();
    for (const auto& [delta, r] : prod.factors()) {
        for (std::uint64_t j = 1; delta * j <= n_max; ++j) {
            const std::size_t s = delta * j;
            if (r < 0) {
                // times 1/(1 - q^s) = 1 + q^s + q^2s + ...
                for (std::int64_t rep = 0; rep < -r; ++rep) {
                    for (std::size_t x = s; x <= n_max; ++x) b[x] += b[x - s];
                }
            } else {
                for (std::int64_t rep = 0; rep < r; ++rep) {
                    for (std::size_t x = n_max; x >= s; --x) b[x] -= b[x - s];
                }
            }
        }
    }
    return b;
}

BigInt oracle_count(const PartitionFamily& f, std::size_t n) { return oracle_table(f, n).back(); }

FProduct phi_fproduct() { return FProduct{{2, 5}, {1, -2}, {4, -2}}; }
FProduct psi_fproduct() { return FProduct{{2, 2}, {1, -1}}; }
FProduct omega_fproduct() { return FProduct{{2, 2}, {3, 1}, {12, 1}, {1, -1}, {4, -1}, {6, -1}}; }

Series phi_theta(Ring ring, std::size_t order) {
    std::vector<std::int64_t> c(order, 0);
    if (order > 0) c[0] = 1;
    for (std::size_t k = 1; k * k < order; ++k) c[k * k] = 2;
    return Series(ring, std::span<const std::int64_t>(c));
}

Series phi(Ring ring, std::size_t order) {
    Series theta = phi_theta(ring, order);
    if (theta != expand_fproduct(phi_fproduct(), ring, order)) {
        throw std::logic_error("phi: theta sum and eta-quotient expansions disagree");
    }
    return theta;
}

Series psi(Ring ring, std::size_t order) { return expand_fproduct(psi_fproduct(), ring, order); }
Series omega(Ring ring, std::size_t order) { return expand_fproduct(omega_fproduct(), ring, order); }

}  // namespace qcong
