#include "qcong/engine/identities.hpp"

#include <chrono>
#include <sstream>

namespace qcong::engine {

struct QExpr::Node {
    enum class Kind { Product, Phi, Psi, Omega, Genfun, Constant, Dilate, Extract, Shift, Pow, Dyadic, Add, Sub, Mul, Scale };
    Kind kind;
    FProduct product;
    PartitionFamily family{FamilyKind::GeneralizedCubic, 1};
    BigInt scalar;
    std::size_t d = 0;
    std::size_t r = 0;
    std::int64_t e = 0;
    std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using Kind = QExpr::Node::Kind;
using NodePtr = std::shared_ptr<QExpr::Node>;

NodePtr node(Kind k) {
    auto n = std::make_shared<QExpr::Node>();
    n->kind = k;
    return n;
}

std::string render(const QExpr::Node& n) {
    std::ostringstream os;
    switch (n.kind) {
        case Kind::Product: os << n.product.to_string(); break;
        case Kind::Phi: os << "phi"; break;
        case Kind::Psi: os << "psi"; break;
        case Kind::Omega: os << "Omega"; break;
        case Kind::Genfun: os << "F[" << n.family.label() << "]"; break;
        case Kind::Constant: os << n.scalar.get_str(); break;
        case Kind::Dilate: os << "(" << render(*n.lhs) << ")(q^" << n.d << ")"; break;
        case Kind::Extract: os << "extract[" << n.d << "n+" << n.r << "](" << render(*n.lhs) << ")"; break;
        case Kind::Shift: os << "q^" << n.d << "*(" << render(*n.lhs) << ")"; break;
        case Kind::Pow: os << "(" << render(*n.lhs) << ")^" << n.e; break;
        case Kind::Dyadic: os << "prod_i (" << render(*n.lhs) << ")(q^(2^i))^(" << n.e << "*2^(i-1))"; break;
        case Kind::Add: os << "(" << render(*n.lhs) << " + " << render(*n.rhs) << ")"; break;
        case Kind::Sub: os << "(" << render(*n.lhs) << " - " << render(*n.rhs) << ")"; break;
        case Kind::Mul: os << render(*n.lhs) << " * " << render(*n.rhs); break;
        case Kind::Scale: os << n.scalar.get_str() << "*" << render(*n.lhs); break;
    }
    return os.str();
}

Series eval_node(const QExpr::Node& n, Ring ring, std::size_t order) {
    try {
        switch (n.kind) {
            case Kind::Product: return expand_fproduct(n.product, ring, order);
            case Kind::Phi: return phi(ring, order);
            case Kind::Psi: return psi(ring, order);
            case Kind::Omega: return omega(ring, order);
            case Kind::Genfun: return genfun(n.family, ring, order);
            case Kind::Constant: return scale(Series::one(ring, order), n.scalar);
            case Kind::Dilate:
                return truncate(dilate(eval_node(*n.lhs, ring, (order + n.d - 1) / n.d), n.d), order);
            case Kind::Extract:
                return truncate(extract_progression(eval_node(*n.lhs, ring, n.d * order + n.r), n.d, n.r), order);
            case Kind::Shift:
                if (n.d >= order) return Series(ring, order);
                return shift(eval_node(*n.lhs, ring, order - n.d), n.d);
            case Kind::Pow: return pow(eval_node(*n.lhs, ring, order), n.e);
            case Kind::Dyadic: {
                Series acc = Series::one(ring, order);
                for (std::size_t two = 2; two < order; two *= 2) {
                    const Series base = eval_node(*n.lhs, ring, (order + two - 1) / two);
                    acc = mul(acc, truncate(dilate(pow(base, n.e * static_cast<std::int64_t>(two / 2)), two), order));
                }
                return acc;
            }
            case Kind::Add: return add(eval_node(*n.lhs, ring, order), eval_node(*n.rhs, ring, order));
            case Kind::Sub: return sub(eval_node(*n.lhs, ring, order), eval_node(*n.rhs, ring, order));
            case Kind::Mul: return mul(eval_node(*n.lhs, ring, order), eval_node(*n.rhs, ring, order));
            case Kind::Scale: return scale(eval_node(*n.lhs, ring, order), n.scalar);
        }
    } catch (const QExprError&) {
        throw;
    } catch (const std::exception& ex) {
        throw QExprError("evaluating " + render(n) + ": " + ex.what());
    }
    throw QExprError("corrupt expression node");
}

}  // namespace

QExpr QExpr::product(const FProduct& p) {
    auto n = node(Kind::Product);
    n->product = p;
    return QExpr(n);
}
QExpr QExpr::phi() { return QExpr(node(Kind::Phi)); }
QExpr QExpr::psi() { return QExpr(node(Kind::Psi)); }
QExpr QExpr::omega() { return QExpr(node(Kind::Omega)); }

QExpr QExpr::genfun(const PartitionFamily& f) {
    auto n = node(Kind::Genfun);
    n->family = f;
    return QExpr(n);
}

QExpr QExpr::constant(const BigInt& k) {
    auto n = node(Kind::Constant);
    n->scalar = k;
    return QExpr(n);
}

QExpr QExpr::dilate(std::size_t d) const {
    if (d == 0) throw QExprError("dilation by 0");
    auto n = node(Kind::Dilate);
    n->d = d;
    n->lhs = node_;
    return QExpr(n);
}

QExpr QExpr::extract(std::size_t d, std::size_t r) const {
    if (d == 0 || r >= d) throw QExprError("bad progression " + std::to_string(d) + "n+" + std::to_string(r));
    auto n = node(Kind::Extract);
    n->d = d;
    n->r = r;
    n->lhs = node_;
    return QExpr(n);
}

QExpr QExpr::qshift(std::size_t k) const {
    if (k == 0) return *this;
    auto n = node(Kind::Shift);
    n->d = k;
    n->lhs = node_;
    return QExpr(n);
}

QExpr QExpr::dyadic_product(std::int64_t c) const {
    auto n = node(Kind::Dyadic);
    n->e = c;
    n->lhs = node_;
    return QExpr(n);
}

QExpr QExpr::pow(std::int64_t e) const {
    auto n = node(Kind::Pow);
    n->e = e;
    n->lhs = node_;
    return QExpr(n);
}

QExpr operator+(const QExpr& a, const QExpr& b) {
    auto n = node(Kind::Add);
    n->lhs = a.node_;
    n->rhs = b.node_;
    return QExpr(n);
}

QExpr operator-(const QExpr& a, const QExpr& b) {
    auto n = node(Kind::Sub);
    n->lhs = a.node_;
    n->rhs = b.node_;
    return QExpr(n);
}

QExpr operator*(const QExpr& a, const QExpr& b) {
    auto n = node(Kind::Mul);
    n->lhs = a.node_;
    n->rhs = b.node_;
    return QExpr(n);
}

QExpr operator*(const BigInt& k, const QExpr& a) {
    auto n = node(Kind::Scale);
    n->scalar = k;
    n->lhs = a.node_;
    return QExpr(n);
}

Series QExpr::eval(Ring ring, std::size_t order) const { return eval_node(*node_, ring, order); }
std::string QExpr::to_string() const { return render(*node_); }

IdentityVerdict verify_identity(const IdentityCase& c, std::optional<std::size_t> order_override) {
    const auto t0 = std::chrono::steady_clock::now();
    IdentityVerdict v;
    v.id = c.id;
    v.order = order_override.value_or(c.order);
    const Ring ring = c.modulus ? Ring::mod(*c.modulus) : Ring::exact();
    try {
        const Series l = c.lhs.eval(ring, v.order);
        const Series r = c.rhs.eval(ring, v.order);
        v.equal = true;
        for (std::size_t n = 0; n < v.order; ++n) {
            const BigInt a = l.coeff(n), b = r.coeff(n);
            if (a != b) {
                v.equal = false;
                v.first_mismatch = n;
                v.lhs_value = a.get_str();
                v.rhs_value = b.get_str();
                break;
            }
        }
    } catch (const std::exception& ex) {
        v.equal = false;
        v.error = ex.what();
    }
    v.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return v;
}

// --- catalog ----------------------------------------------------------------

namespace {

BigInt binomial(std::uint64_t n, std::uint64_t k) {
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

BigInt pow2(unsigned e) {
    BigInt out;
    mpz_ui_pow_ui(out.get_mpz_t(), 2, e);
    return out;
}

QExpr P(std::initializer_list<FProduct::Map::value_type> f) { return QExpr::product(FProduct(f)); }

QExpr overcubic(std::int64_t c) { return QExpr::genfun(PartitionFamily::overcubic(c)); }

/// sum_{k=0}^{i} binom(2i+1, 2k + odd) 4^k q^k f2^(4k) f8^(8k) / f4^(12k), times a prefactor.
QExpr binomial_sum(std::int64_t i, bool odd, const FProduct& prefactor) {
    QExpr out = QExpr::constant(0);
    for (std::int64_t k = 0; k <= i; ++k) {
        const BigInt coef = binomial(2 * i + 1, 2 * k + (odd ? 1 : 0)) * pow2(2 * k);
        const FProduct term = prefactor * FProduct{{2, 4 * k}, {8, 8 * k}, {4, -12 * k}};
        out = out + (coef * QExpr::product(term)).qshift(k);
    }
    return out;
}

}  // namespace

std::vector<IdentityCase> identity_catalog() {
    constexpr std::size_t kOrder = 400;
    std::vector<IdentityCase> out;
    auto add = [&](std::string id, std::string label, QExpr lhs, QExpr rhs, std::optional<std::uint64_t> mod = {}) {
        out.push_back({std::move(id), std::move(label), std::move(lhs), std::move(rhs), kOrder, mod});
    };

    // 2- and 3-dissections.
    add("dissect2-phi", "phi(q) = phi(q^4) + 2q psi(q^8)", QExpr::phi(),
        QExpr::phi().dilate(4) + (BigInt(2) * QExpr::psi().dilate(8)).qshift(1));
    add("dissect2-f1^2", "f1^2 = f2 f8^5/(f4^2 f16^2) - 2q f2 f16^2/f8", P({{1, 2}}),
        P({{2, 1}, {8, 5}, {4, -2}, {16, -2}}) - (BigInt(2) * P({{2, 1}, {16, 2}, {8, -1}})).qshift(1));
    add("dissect2-1/f1^2", "1/f1^2 = f8^5/(f2^5 f16^2) + 2q f4^2 f16^2/(f2^5 f8)", P({{1, -2}}),
        P({{8, 5}, {2, -5}, {16, -2}}) + (BigInt(2) * P({{4, 2}, {16, 2}, {2, -5}, {8, -1}})).qshift(1));
    add("dissect3-phi", "phi(q) = phi(q^9) + 2q Omega(q^3)", QExpr::phi(),
        QExpr::phi().dilate(9) + (BigInt(2) * QExpr::omega().dilate(3)).qshift(1));
    add("dissect3-psi", "f2^2/f1 = f6 f9^2/(f3 f18) + q f18^2/f9", P({{2, 2}, {1, -1}}),
        P({{6, 1}, {9, 2}, {3, -1}, {18, -1}}) + P({{18, 2}, {9, -1}}).qshift(1));
    add("dissect3-f1/f4",
        "f1/f4 = f6 f9 f18/f12^3 - q f3 f18^4/(f9^2 f12^3) - q^2 f6^2 f9 f36^3/(f12^4 f18^2)", P({{1, 1}, {4, -1}}),
        P({{6, 1}, {9, 1}, {18, 1}, {12, -3}}) - P({{3, 1}, {18, 4}, {9, -2}, {12, -3}}).qshift(1) -
            P({{6, 2}, {9, 1}, {36, 3}, {12, -4}, {18, -2}}).qshift(2));

    // Auxiliary identities behind the f1/f4 dissection.
    add("aux-f6f12f18f36/f3", "f6 f12^2 f18^2 f36^2/f3 = f18^9/f9^3 + q^3 f6^3 f36^6/(f3 f12^2)",
        P({{6, 1}, {12, 2}, {18, 2}, {36, 2}, {3, -1}}),
        P({{18, 9}, {9, -3}}) + P({{6, 3}, {36, 6}, {3, -1}, {12, -2}}).qshift(3));
    add("aux-f9^3f12", "f9^3 f12 = f3 f12^4 f18^2/(f6^2 f36) + q^3 f3 f36^3", P({{9, 3}, {12, 1}}),
        P({{3, 1}, {12, 4}, {18, 2}, {6, -2}, {36, -1}}) + P({{3, 1}, {36, 3}}).qshift(3));
    add("aux-f1/f2^2", "f1/f2^2 = f3^2 f9^3/f6^6 - q f3^3 f18^3/f6^7 + q^2 f3^4 f18^6/(f6^8 f9^3)",
        P({{1, 1}, {2, -2}}),
        P({{3, 2}, {9, 3}, {6, -6}}) - P({{3, 3}, {18, 3}, {6, -7}}).qshift(1) +
            P({{3, 4}, {18, 6}, {6, -8}, {9, -3}}).qshift(2));
    add("aux-f1f4/f2", "f1 f4/f2 = f3 f12 f18^5/(f6^2 f9^2 f36^2) - q f9 f36/f18", P({{1, 1}, {4, 1}, {2, -1}}),
        P({{3, 1}, {12, 1}, {18, 5}, {6, -2}, {9, -2}, {36, -2}}) - P({{9, 1}, {36, 1}, {18, -1}}).qshift(1));

    // Functional equation and its infinite-product iterate.
    for (std::int64_t c = 1; c <= 6; ++c) {
        add("functional-eq-c" + std::to_string(c), "Fbar_c(q) = phi(q) phi(q^2)^(c-1) Fbar_c(q^2)^2", overcubic(c),
            QExpr::phi() * QExpr::phi().dilate(2).pow(c - 1) * overcubic(c).dilate(2).pow(2));
    }
    for (std::int64_t c = 3; c <= 7; ++c) {
        add("phi-product-c" + std::to_string(c - 1), "Fbar_(c-1)(q) = phi(q) prod_i phi(q^(2^i))^(c 2^(i-1))",
            overcubic(c - 1), QExpr::phi() * QExpr::phi().dyadic_product(c));
    }

    // Even and odd parts of the overcubic generating function.
    for (std::int64_t c = 1; c <= 6; ++c) {
        add("even-part-c" + std::to_string(c), "sum abar_c(2n) q^n = f2^(c-1) f4^5/(f1^(2c+2) f8^2)",
            overcubic(c).extract(2, 0), P({{2, c - 1}, {4, 5}, {1, -(2 * c + 2)}, {8, -2}}));
        add("odd-part-c" + std::to_string(c), "sum abar_c(2n+1) q^n = 2 f8^2/f4 (f2/f1^2)^(c+1)",
            overcubic(c).extract(2, 1), BigInt(2) * P({{8, 2}, {4, -1}, {2, c + 1}, {1, -2 * (c + 1)}}));
    }

    // 4n+1, 4n+3 and 4n+2 dissections for c = 2i.
    for (std::int64_t i = 1; i <= 3; ++i) {
        const std::string s = "-i" + std::to_string(i);
        add("gf4n+1" + s, "sum abar_2i(4n+1) q^n", overcubic(2 * i).extract(4, 1),
            BigInt(2) * binomial_sum(i, false, FProduct{{4, 10 * i + 7}, {1, -(8 * i + 4)}, {2, -1}, {8, -(4 * i + 2)}}));
        add("gf4n+3" + s, "sum abar_2i(4n+3) q^n", overcubic(2 * i).extract(4, 3),
            BigInt(4) * binomial_sum(i, true, FProduct{{2, 1}, {4, 10 * i + 1}, {1, -(8 * i + 4)}, {8, -(4 * i - 2)}}));
        add("gf4n+2" + s, "sum abar_2i(4n+2) q^n, f4 exponent 10i+1 as displayed", overcubic(2 * i).extract(4, 2),
            BigInt(2) * binomial_sum(i, true, FProduct{{2, 7}, {4, 10 * i + 1}, {1, -(8 * i + 6)}, {8, -(4 * i - 2)}}));
        // Re-deriving from the even part gives f4^(10i-3).
        add("gf4n+2-rederived" + s, "sum abar_2i(4n+2) q^n, f4 exponent 10i-3", overcubic(2 * i).extract(4, 2),
            BigInt(2) * binomial_sum(i, true, FProduct{{2, 7}, {4, 10 * i - 3}, {1, -(8 * i + 6)}, {8, -(4 * i - 2)}}));
    }

    // Odd part modulo 2^(k+2) for c = 2^k i - 2^(k-1) - 2.
    for (unsigned k = 3; k <= 5; ++k) {
        for (std::int64_t i = 1; i <= 2; ++i) {
            const std::int64_t two_k = std::int64_t{1} << k;
            const std::int64_t c = two_k * i - two_k / 2 - 2;
            add("odd-part-mod2^" + std::to_string(k + 2) + "-i" + std::to_string(i),
                "sum abar_c(2n+1) q^n == 2 f1^(2^k+2) f8^2/(f2^(2^(k-1)+1) f4) mod 2^(k+2)", overcubic(c).extract(2, 1),
                BigInt(2) * P({{1, two_k + 2}, {8, 2}, {2, -(two_k / 2 + 1)}, {4, -1}}), std::uint64_t{1} << (k + 2));
        }
    }
    return out;
}

}  // namespace qcong::engine
