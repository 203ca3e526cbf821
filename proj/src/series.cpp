#include "qcong/series.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "qcong/arith.hpp"
#include "qcong/convolution.hpp"

namespace qcong {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Grants the implementation write access to Series storage.
class SeriesBuilder {
public:
    static std::vector<u64>& res(Series& s) { return s.residues_; }
    static std::vector<BigInt>& big(Series& s) { return s.integers_; }
};

namespace {

using B = SeriesBuilder;

void require_same_ring(const Series& a, const Series& b, const char* op) {
    if (a.ring() != b.ring()) {
        throw RingMismatch(std::string(op) + ": ring mismatch (" + a.ring().to_string() +
                           " vs " + b.ring().to_string() + ")");
    }
}

inline u64 add_mod(u64 a, u64 b, u64 m) {
    const u64 s = a + b;
    return s >= m ? s - m : s;
}
inline u64 sub_mod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }

}  // namespace

// --- Ring / containers ------------------------------------------------------

Ring Ring::mod(std::uint64_t m) {
    if (m < 2 || m > kMaxModulus) {
        throw std::invalid_argument("Ring::mod: modulus must lie in [2, 2^31), got " +
                                    std::to_string(m));
    }
    Ring r;
    r.modulus_ = m;
    return r;
}

std::string Ring::to_string() const {
    return is_exact() ? "Exact" : "Mod(" + std::to_string(modulus_) + ")";
}

SparseSignedSeries::SparseSignedSeries(std::vector<SignedTerm> terms, std::size_t order)
    : terms_(std::move(terms)), order_(order) {
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].sign != 1 && terms_[i].sign != -1) {
            throw std::invalid_argument("SparseSignedSeries: sign must be +-1");
        }
        if (terms_[i].exponent >= order_) {
            throw std::invalid_argument("SparseSignedSeries: exponent beyond order");
        }
        if (i > 0 && terms_[i].exponent <= terms_[i - 1].exponent) {
            throw std::invalid_argument("SparseSignedSeries: exponents must strictly increase");
        }
    }
}

Series::Series(Ring ring, std::size_t order) : ring_(ring), order_(order) {
    if (ring_.is_exact()) {
        integers_.assign(order, BigInt(0));
    } else {
        residues_.assign(order, 0);
    }
}

Series::Series(Ring ring, std::span<const std::int64_t> coeffs) : Series(ring, coeffs.size()) {
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
        if (ring_.is_exact()) {
            integers_[n] = static_cast<long>(coeffs[n]);
        } else {
            const auto m = static_cast<std::int64_t>(ring_.modulus());
            const std::int64_t r = coeffs[n] % m;
            residues_[n] = static_cast<u64>(r < 0 ? r + m : r);
        }
    }
}

Series::Series(Ring ring, std::vector<BigInt> coeffs) : ring_(ring), order_(coeffs.size()) {
    if (ring_.is_exact()) {
        integers_ = std::move(coeffs);
    } else {
        residues_.resize(order_);
        for (std::size_t n = 0; n < order_; ++n) {
            residues_[n] = mpz_fdiv_ui(coeffs[n].get_mpz_t(), ring_.modulus());
        }
    }
}

Series Series::one(Ring ring, std::size_t order) {
    Series s(ring, order);
    if (order > 0) {
        if (ring.is_exact()) {
            s.integers_[0] = 1;
        } else {
            s.residues_[0] = 1;
        }
    }
    return s;
}

Series Series::from_residues(std::uint64_t modulus, std::vector<std::uint64_t> residues) {
    Series s(Ring::mod(modulus), 0);
    for (auto& r : residues) r %= modulus;
    s.order_ = residues.size();
    s.residues_ = std::move(residues);
    return s;
}

BigInt Series::coeff(std::size_t n) const {
    if (n >= order_) throw std::out_of_range("Series::coeff: index beyond order");
    if (ring_.is_exact()) return integers_[n];
    return BigInt(static_cast<unsigned long>(residues_[n]));
}

bool Series::coeff_is_zero(std::size_t n) const {
    if (n >= order_) throw std::out_of_range("Series::coeff_is_zero: index beyond order");
    return ring_.is_exact() ? integers_[n] == 0 : residues_[n] == 0;
}

bool Series::coeff_divisible_by(std::size_t n, std::uint64_t u) const {
    if (n >= order_) throw std::out_of_range("Series::coeff_divisible_by: index beyond order");
    if (u == 0) throw std::invalid_argument("coeff_divisible_by: zero divisor");
    if (ring_.is_exact()) return mpz_divisible_ui_p(integers_[n].get_mpz_t(), u) != 0;
    if (ring_.modulus() % u != 0) {
        throw std::invalid_argument("coeff_divisible_by: " + std::to_string(u) +
                                    " does not divide the ring modulus");
    }
    return residues_[n] % u == 0;
}

bool Series::is_zero() const {
    if (ring_.is_exact()) {
        return std::all_of(integers_.begin(), integers_.end(), [](const BigInt& x) { return x == 0; });
    }
    return std::all_of(residues_.begin(), residues_.end(), [](u64 x) { return x == 0; });
}

std::string Series::to_string(std::size_t max_terms) const {
    std::ostringstream os;
    std::size_t shown = 0;
    for (std::size_t n = 0; n < order_ && shown < max_terms; ++n) {
        if (coeff_is_zero(n)) continue;
        if (shown++) os << " + ";
        os << coeff(n).get_str();
        if (n == 1) os << "q";
        if (n > 1) os << "q^" << n;
    }
    if (shown == 0) os << "0";
    os << " + O(q^" << order_ << ")";
    return os.str();
}

bool operator==(const Series& a, const Series& b) {
    return a.ring_ == b.ring_ && a.order_ == b.order_ && a.residues_ == b.residues_ &&
           a.integers_ == b.integers_;
}

// --- construction helpers ---------------------------------------------------

SparseSignedSeries euler_factor(std::size_t k, std::size_t order) {
    if (k == 0) throw std::invalid_argument("euler_factor: k must be positive");
    std::vector<SignedTerm> terms;
    if (order > 0) terms.push_back({0, 1});
    // Generalized pentagonal numbers j(3j-1)/2 for j = 1, -1, 2, -2, ...
    for (std::size_t j = 1;; ++j) {
        const std::size_t g1 = j * (3 * j - 1) / 2;
        const std::size_t g2 = j * (3 * j + 1) / 2;
        const int sign = (j % 2 == 1) ? -1 : 1;
        if (k * g1 >= order) break;
        terms.push_back({k * g1, sign});
        if (k * g2 < order) terms.push_back({k * g2, sign});
    }
    return SparseSignedSeries(std::move(terms), order);
}

Series densify(const SparseSignedSeries& s, Ring ring) {
    Series out(ring, s.order());
    for (const auto& t : s.terms()) {
        if (ring.is_exact()) {
            B::big(out)[t.exponent] = t.sign;
        } else {
            B::res(out)[t.exponent] = t.sign > 0 ? 1 : ring.modulus() - 1;
        }
    }
    return out;
}

Series shift(const Series& a, std::size_t s) {
    Series out(a.ring(), a.order() + s);
    if (a.ring().is_exact()) {
        std::copy(a.integers().begin(), a.integers().end(), B::big(out).begin() + s);
    } else {
        std::copy(a.residues().begin(), a.residues().end(), B::res(out).begin() + s);
    }
    return out;
}

Series truncate(const Series& a, std::size_t order) {
    if (order > a.order()) throw std::invalid_argument("truncate: cannot extend a series");
    Series out(a.ring(), order);
    if (a.ring().is_exact()) {
        std::copy_n(a.integers().begin(), order, B::big(out).begin());
    } else {
        std::copy_n(a.residues().begin(), order, B::res(out).begin());
    }
    return out;
}

Series reduce(const Series& a, Ring target) {
    if (target.is_exact()) {
        if (!a.ring().is_exact()) throw RingMismatch("reduce: cannot lift Mod to Exact");
        return a;
    }
    const u64 m = target.modulus();
    std::vector<u64> out(a.order());
    if (a.ring().is_exact()) {
        for (std::size_t n = 0; n < a.order(); ++n) out[n] = mpz_fdiv_ui(a.integers()[n].get_mpz_t(), m);
    } else {
        if (a.ring().modulus() % m != 0) {
            throw RingMismatch("reduce: " + target.to_string() + " is not a quotient of " +
                               a.ring().to_string());
        }
        for (std::size_t n = 0; n < a.order(); ++n) out[n] = a.residues()[n] % m;
    }
    return Series::from_residues(m, std::move(out));
}

// --- arithmetic -------------------------------------------------------------

Series add(const Series& a, const Series& b) {
    require_same_ring(a, b, "add");
    const std::size_t n = std::min(a.order(), b.order());
    Series out(a.ring(), n);
    if (a.ring().is_exact()) {
        for (std::size_t i = 0; i < n; ++i) B::big(out)[i] = a.integers()[i] + b.integers()[i];
    } else {
        const u64 m = a.ring().modulus();
        for (std::size_t i = 0; i < n; ++i) B::res(out)[i] = add_mod(a.residues()[i], b.residues()[i], m);
    }
    return out;
}

Series sub(const Series& a, const Series& b) { return add(a, negate(b)); }

Series negate(const Series& a) {
    Series out(a.ring(), a.order());
    if (a.ring().is_exact()) {
        for (std::size_t i = 0; i < a.order(); ++i) B::big(out)[i] = -a.integers()[i];
    } else {
        const u64 m = a.ring().modulus();
        for (std::size_t i = 0; i < a.order(); ++i) B::res(out)[i] = a.residues()[i] ? m - a.residues()[i] : 0;
    }
    return out;
}

Series scale(const Series& a, const BigInt& k) {
    Series out(a.ring(), a.order());
    if (a.ring().is_exact()) {
        for (std::size_t i = 0; i < a.order(); ++i) B::big(out)[i] = a.integers()[i] * k;
    } else {
        const u64 m = a.ring().modulus();
        const u64 kr = mpz_fdiv_ui(k.get_mpz_t(), m);
        for (std::size_t i = 0; i < a.order(); ++i) B::res(out)[i] = a.residues()[i] * kr % m;
    }
    return out;
}

Series mul(const Series& a, const Series& b) {
    require_same_ring(a, b, "mul");
    const std::size_t n = std::min(a.order(), b.order());
    if (!a.ring().is_exact()) {
        const u64 m = a.ring().modulus();
        std::span<const u64> sa(a.residues().data(), n);
        std::span<const u64> sb(b.residues().data(), n);
        if (&a == &b) sb = sa;
        return Series::from_residues(m, conv::multiply_mod(sa, sb, n, m));
    }
    // Exact: schoolbook, skipping zero coefficients of the sparser side.
    Series out(a.ring(), n);
    auto& o = B::big(out);
    const auto& x = a.integers();
    const auto& y = b.integers();
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; i + j < n; ++j) {
            if (y[j] != 0) mpz_addmul(o[i + j].get_mpz_t(), x[i].get_mpz_t(), y[j].get_mpz_t());
        }
    }
    return out;
}

Series mul_sparse(const Series& a, const SparseSignedSeries& s) {
    const std::size_t n = std::min(a.order(), s.order());
    Series out(a.ring(), n);
    if (a.ring().is_exact()) {
        auto& o = B::big(out);
        const auto& x = a.integers();
        for (const auto& t : s.terms()) {
            for (std::size_t i = t.exponent; i < n; ++i) {
                if (t.sign > 0) {
                    o[i] += x[i - t.exponent];
                } else {
                    o[i] -= x[i - t.exponent];
                }
            }
        }
    } else {
        const u64 m = a.ring().modulus();
        auto& o = B::res(out);
        const auto& x = a.residues();
        for (const auto& t : s.terms()) {
            if (t.sign > 0) {
                for (std::size_t i = t.exponent; i < n; ++i) o[i] = add_mod(o[i], x[i - t.exponent], m);
            } else {
                for (std::size_t i = t.exponent; i < n; ++i) o[i] = sub_mod(o[i], x[i - t.exponent], m);
            }
        }
    }
    return out;
}

Series div_sparse(const Series& a, const SparseSignedSeries& s) {
    const auto& terms = s.terms();
    if (terms.empty() || terms.front().exponent != 0) {
        throw NonUnitError("div_sparse: divisor has zero constant term");
    }
    const int lead = terms.front().sign;
    const std::size_t n = std::min(a.order(), s.order());
    Series out(a.ring(), n);
    if (a.ring().is_exact()) {
        auto& o = B::big(out);
        for (std::size_t i = 0; i < n; ++i) {
            BigInt acc = a.integers()[i];
            for (std::size_t t = 1; t < terms.size() && terms[t].exponent <= i; ++t) {
                if (terms[t].sign > 0) {
                    acc -= o[i - terms[t].exponent];
                } else {
                    acc += o[i - terms[t].exponent];
                }
            }
            o[i] = lead > 0 ? acc : BigInt(-acc);
        }
    } else {
        const u64 m = a.ring().modulus();
        auto& o = B::res(out);
        const auto& x = a.residues();
        // Separate accumulators keep everything below 2^64 for up to 2^32 terms.
        std::vector<std::size_t> plus, minus;
        for (std::size_t t = 1; t < terms.size(); ++t) {
            (terms[t].sign > 0 ? plus : minus).push_back(terms[t].exponent);
        }
        for (std::size_t i = 0; i < n; ++i) {
            u64 pos = 0, neg = 0;
            for (std::size_t e : plus) {
                if (e > i) break;
                pos += o[i - e];
            }
            for (std::size_t e : minus) {
                if (e > i) break;
                neg += o[i - e];
            }
            // o[i] = lead * (x[i] - pos + neg)
            u64 v = sub_mod(add_mod(x[i], neg % m, m), pos % m, m);
            o[i] = lead > 0 ? v : (v ? m - v : 0);
        }
    }
    return out;
}

Series invert(const Series& a) {
    const std::size_t n = a.order();
    if (n == 0) return a;
    Series out(a.ring(), n);
    if (a.ring().is_exact()) {
        const auto& x = a.integers();
        if (x[0] != 1 && x[0] != -1) throw NonUnitError("invert: constant term is not +-1");
        auto& o = B::big(out);
        o[0] = x[0];
        BigInt acc;
        for (std::size_t i = 1; i < n; ++i) {
            acc = 0;
            for (std::size_t j = 1; j <= i; ++j) {
                if (x[j] != 0) mpz_addmul(acc.get_mpz_t(), x[j].get_mpz_t(), o[i - j].get_mpz_t());
            }
            o[i] = x[0] > 0 ? BigInt(-acc) : acc;
        }
        return out;
    }
    const u64 m = a.ring().modulus();
    const auto& x = a.residues();
    const auto inv = arith::mod_inverse(x[0], m);
    if (!inv) throw NonUnitError("invert: constant term is not a unit mod " + std::to_string(m));
    auto& o = B::res(out);
    o[0] = *inv;
    for (std::size_t i = 1; i < n; ++i) {
        u128 acc = 0;
        for (std::size_t j = 1; j <= i; ++j) acc += static_cast<u128>(x[j] * o[i - j]);
        const u64 s = static_cast<u64>(acc % m);
        o[i] = (s ? m - s : 0) * *inv % m;
    }
    return out;
}

Series pow(const Series& a, std::int64_t e) {
    if (e == 0) return Series::one(a.ring(), a.order());
    Series base = e < 0 ? invert(a) : a;
    auto k = static_cast<std::uint64_t>(e < 0 ? -e : e);
    Series result = Series::one(a.ring(), a.order());
    bool first = true;
    while (k) {
        if (k & 1) {
            result = first ? base : mul(result, base);
            first = false;
        }
        k >>= 1;
        if (k) base = mul(base, base);
    }
    return result;
}

Series extract_progression(const Series& a, std::size_t d, std::size_t r) {
    if (d == 0) throw std::invalid_argument("extract_progression: d must be positive");
    if (r >= a.order()) return Series(a.ring(), 1);
    const std::size_t n = (a.order() - r + d - 1) / d;
    Series out(a.ring(), n);
    for (std::size_t i = 0; i < n; ++i) {
        if (a.ring().is_exact()) {
            B::big(out)[i] = a.integers()[d * i + r];
        } else {
            B::res(out)[i] = a.residues()[d * i + r];
        }
    }
    return out;
}

Series dilate(const Series& a, std::size_t d) {
    if (d == 0) throw std::invalid_argument("dilate: d must be positive");
    Series out(a.ring(), a.order() * d);
    for (std::size_t i = 0; i < a.order(); ++i) {
        if (a.ring().is_exact()) {
            B::big(out)[d * i] = a.integers()[i];
        } else {
            B::res(out)[d * i] = a.residues()[i];
        }
    }
    return out;
}

// --- eta-factor powers ------------------------------------------------------

namespace {

// Applies f_k^(p^j) == f_(kp)^(p^(j-1)) (mod p^j) while p^j | e.
void reduce_by_freshman(Ring ring, std::size_t& k, std::int64_t& e) {
    if (ring.is_exact() || e == 0) return;
    const auto pp = arith::prime_power(ring.modulus());
    if (!pp) return;
    const auto [p, j] = *pp;
    const auto pj = static_cast<std::int64_t>(arith::ipow(p, j));
    while (e != 0 && e % pj == 0) {
        e /= static_cast<std::int64_t>(p);
        k *= p;
    }
}

double dense_mul_cost(Ring ring, std::size_t n) {
    const double dn = static_cast<double>(n);
    // Bignum schoolbook is far slower per step than a residue add.
    return ring.is_exact() ? 8.0 * dn * dn / 2.0 : conv::estimated_cost(n, n, n);
}

}  // namespace

Series mul_euler_power(const Series& acc, std::size_t k, std::int64_t e) {
    if (k == 0) throw std::invalid_argument("mul_euler_power: k must be positive");
    reduce_by_freshman(acc.ring(), k, e);
    const std::size_t n = acc.order();
    if (e == 0 || k >= n) return acc;

    const SparseSignedSeries f = euler_factor(k, n);
    const auto abs_e = static_cast<std::uint64_t>(e < 0 ? -e : e);
    const double per_pass = static_cast<double>(n) * static_cast<double>(f.terms().size());
    const double sparse_cost = static_cast<double>(abs_e) * per_pass;
    const double steps = static_cast<double>(std::bit_width(abs_e) + std::popcount(abs_e) - 1);
    const double dense_cost = per_pass + (steps + 1.0) * dense_mul_cost(acc.ring(), n);

    if (sparse_cost <= dense_cost) {
        Series out = acc;
        for (std::uint64_t i = 0; i < abs_e; ++i) out = e > 0 ? mul_sparse(out, f) : div_sparse(out, f);
        return out;
    }
    const Series one = Series::one(acc.ring(), n);
    const Series base = e > 0 ? densify(f, acc.ring()) : div_sparse(one, f);
    return mul(acc, pow(base, static_cast<std::int64_t>(abs_e)));
}

Series euler_power(std::size_t k, std::int64_t e, Ring ring, std::size_t order) {
    return mul_euler_power(Series::one(ring, order), k, e);
}

}  // namespace qcong
