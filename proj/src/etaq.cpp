#include "qcong/etaq.hpp"

#include <numeric>
#include <sstream>

#include "qcong/arith.hpp"

namespace qcong::etaq {

namespace {

ExponentMap drop_zeros(const ExponentMap& r) {
    ExponentMap out;
    for (const auto& [delta, e] : r) {
        if (delta == 0) throw std::invalid_argument("eta-quotient: delta must be positive");
        if (e != 0) out[delta] = e;
    }
    return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("eta-quotient: integer overflow");
    return out;
}

Rational order_sum(const ExponentMap& r, std::uint64_t d) {
    Rational s = 0;
    for (const auto& [delta, e] : r) {
        const std::uint64_t g = std::gcd(d, delta);
        s += Rational(mpz_class(static_cast<long>(e)) * g * g, mpz_class(static_cast<unsigned long>(delta)));
    }
    s.canonicalize();
    return s;
}

bool is_multiple_of_24(const Rational& q) {
    if (q.get_den() != 1) return false;
    return mpz_class(q.get_num() % 24) == 0;
}

Rational level_sum(std::uint64_t n, const ExponentMap& r) {
    Rational s = 0;
    for (const auto& [delta, e] : r) {
        s += Rational(mpz_class(static_cast<long>(e)) * static_cast<unsigned long>(n),
                      mpz_class(static_cast<unsigned long>(delta)));
    }
    s.canonicalize();
    return s;
}

bool first_condition(const ExponentMap& r) {
    mpz_class s = 0;
    for (const auto& [delta, e] : r) s += mpz_class(static_cast<long>(e)) * static_cast<unsigned long>(delta);
    return mpz_class(s % 24) == 0;
}

}  // namespace

std::int64_t HalfInteger::value() const {
    if (!is_integral()) throw NonIntegralWeight("weight " + to_string() + " is not an integer");
    return twice / 2;
}

std::string HalfInteger::to_string() const {
    if (is_integral()) return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
}

EtaQuotient::EtaQuotient(std::uint64_t level, const ExponentMap& exponents, LevelCheck check)
    : level_(level), exponents_(drop_zeros(exponents)) {
    if (level == 0) throw std::invalid_argument("eta-quotient: level must be positive");
    if (check == LevelCheck::Strict && !exponents_divide_level()) {
        for (const auto& [delta, e] : exponents_) {
            if (level % delta != 0) {
                throw std::invalid_argument("eta-quotient: delta " + std::to_string(delta) +
                                            " does not divide level " + std::to_string(level));
            }
        }
    }
}

bool EtaQuotient::exponents_divide_level() const noexcept {
    for (const auto& [delta, e] : exponents_) {
        if (level_ % delta != 0) return false;
    }
    return true;
}

EtaQuotient EtaQuotient::at_minimal_level(const ExponentMap& exponents) {
    const ExponentMap r = drop_zeros(exponents);
    std::uint64_t l = 1;
    for (const auto& [delta, e] : r) l = std::lcm(l, delta);
    return EtaQuotient(min_level(r, l), r);
}

HalfInteger weight(const ExponentMap& r) {
    std::int64_t s = 0;
    for (const auto& [delta, e] : r) s += e;
    return HalfInteger{s};
}

HalfInteger weight(const EtaQuotient& e) { return weight(e.exponents()); }

std::pair<bool, bool> check_24_conditions(const EtaQuotient& e) {
    return {first_condition(e.exponents()), is_multiple_of_24(level_sum(e.level(), e.exponents()))};
}

std::uint64_t index_gamma0(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("index_gamma0: N must be positive");
    std::uint64_t out = n;
    for (std::uint64_t p : arith::prime_divisors(n)) out = out / p * (p + 1);
    return out;
}

std::uint64_t sturm_bound(std::int64_t weight, std::uint64_t level) {
    if (weight < 0) throw std::invalid_argument("sturm_bound: weight must be non-negative");
    return static_cast<std::uint64_t>(weight) * index_gamma0(level) / 12;
}

Rational cusp_order(const EtaQuotient& e, std::uint64_t d) {
    const std::uint64_t n = e.level();
    if (d == 0 || n % d != 0) {
        throw std::invalid_argument("cusp_order: " + std::to_string(d) + " does not divide level " +
                                    std::to_string(n));
    }
    const std::uint64_t g = std::gcd(d, n / d);
    Rational out = order_sum(e.exponents(), d) *
                   Rational(mpz_class(static_cast<unsigned long>(n)),
                            mpz_class(24) * static_cast<unsigned long>(g) * static_cast<unsigned long>(d));
    out.canonicalize();
    return out;
}

Holomorphy is_holomorphic(const EtaQuotient& e) {
    Holomorphy h;
    h.holomorphic = true;
    for (std::uint64_t d : arith::divisors(e.level())) {
        Rational o = cusp_order(e, d);
        if (sgn(o) < 0) h.holomorphic = false;
        h.orders.emplace(d, std::move(o));
    }
    return h;
}

std::map<std::uint64_t, std::int64_t> prime_exponents(const ExponentMap& r) {
    std::map<std::uint64_t, std::int64_t> out;
    for (const auto& [delta, e] : r) {
        if (delta == 1) continue;
        for (const auto& [p, k] : arith::factorize(delta)) out[p] += checked_mul(e, k);
    }
    return out;
}

Character::Character(std::int64_t kernel, std::vector<std::uint64_t> primes)
    : kernel_(kernel), primes_(std::move(primes)) {
    if (kernel == 0) throw std::invalid_argument("Character: kernel must be nonzero");
}

int Character::operator()(std::int64_t d) const {
    for (std::uint64_t p : primes_) {
        if (d % static_cast<std::int64_t>(p) == 0) return 0;
    }
    return arith::kronecker(kernel_, d);
}

Character character_of(const ExponentMap& r) {
    const std::int64_t l = weight(r).value();
    std::int64_t kernel = (l % 2 == 0) ? 1 : -1;
    std::vector<std::uint64_t> primes;
    for (const auto& [p, k] : prime_exponents(r)) {
        primes.push_back(p);
        if (k % 2 != 0) kernel = checked_mul(kernel, static_cast<std::int64_t>(p));
    }
    return Character(kernel, std::move(primes));
}

Character character_of(const EtaQuotient& e) { return character_of(e.exponents()); }

std::uint64_t min_level(const ExponentMap& r, std::uint64_t base) {
    if (base == 0) throw std::invalid_argument("min_level: base must be positive");
    const ExponentMap rr = drop_zeros(r);
    if (first_condition(rr)) {
        for (std::uint64_t m = 1; m <= kMaxLevelMultiplier; ++m) {
            if (is_multiple_of_24(level_sum(base * m, rr))) return base * m;
        }
    }
    throw LevelSearchFailed("min_level: no multiplier M <= " + std::to_string(kMaxLevelMultiplier) +
                            " satisfies both mod-24 conditions over base " + std::to_string(base));
}

FormMeta form_meta(const EtaQuotient& e) {
    FormMeta m;
    m.level = e.level();
    m.weight = weight(e);
    m.index = index_gamma0(e.level());
    m.cond24 = check_24_conditions(e);
    const Holomorphy h = is_holomorphic(e);
    m.holomorphic = h.holomorphic;
    m.cusp_orders = h.orders;
    m.exponents_divide_level = e.exponents_divide_level();
    if (m.weight.is_integral()) {
        m.character_discriminant = character_of(e).discriminant();
        if (m.weight.value() >= 0) m.sturm_bound = sturm_bound(m.weight.value(), e.level());
    }
    return m;
}

namespace families {

namespace {

std::int64_t spow(std::int64_t b, unsigned e) {
    std::int64_t r = 1;
    while (e--) r = checked_mul(r, b);
    return r;
}

}  // namespace

ExponentMap b_family(unsigned alpha, std::int64_t m, unsigned k) {
    const std::int64_t x = checked_mul(spow(2, alpha), m);
    ExponentMap r;
    r[24] += spow(3, k + 1) - 2;
    r[48] -= 2 * x - 3;
    r[72] -= spow(3, k);
    r[96] += x - 1;
    return drop_zeros(r);
}

ExponentMap h_family(std::uint64_t p, unsigned a, unsigned k, std::int64_t t) {
    const auto sp = static_cast<std::int64_t>(p);
    ExponentMap r;
    r[24] += spow(sp, a + k) - 2;
    r[48] -= 2 * t - 3;
    r[96] += t - 1;
    r[24 * static_cast<std::uint64_t>(spow(sp, a))] -= spow(sp, k);
    return drop_zeros(r);
}

bool b_hypothesis(unsigned alpha, std::int64_t m, unsigned k) {
    if (k < 2 || alpha < 1 || m < 1 || m % 2 == 0) return false;
    // 3^(k-2) >= 2^(alpha-3) m, cleared of the denominator 8.
    return 8 * spow(3, k - 2) >= checked_mul(spow(2, alpha), m);
}

bool h_hypothesis(std::uint64_t p, unsigned a, unsigned k, std::int64_t t) {
    if (k < 1 || a < 1 || p < 5 || !arith::is_prime(p) || t < 1) return false;
    const auto f = arith::factorize(static_cast<std::uint64_t>(t));
    for (const auto& [q, e] : f) {
        if (q < 5) return false;
    }
    const auto it = f.find(p);
    if (it == f.end() || it->second != a) return false;
    return 2 * spow(static_cast<std::int64_t>(p), k + a) >= checked_mul(5, t);
}

const std::vector<TableRow>& b_table() {
    static const std::vector<TableRow> rows{
        {{1, 2, 4, 8, 24}, "32*3^k - 9*2^alpha*m - 9 >= 0"},
        {{3, 6, 12}, "3^k - (9/32)(2^alpha*m + 1) >= 0"},
        {{16, 48}, "8*3^k - 9*2^alpha*m + 9 >= 0"},
        {{32, 64, 128, 256}, "3^(k-2) >= 0"},
        {{96, 192, 384, 768}, "3^k >= 0"},
    };
    return rows;
}

const std::vector<TableRow>& h_table() {
    static const std::vector<TableRow> rows{
        {{1, 2, 3, 4, 6, 8, 9, 12, 18, 24, 36, 72}, "8*p^(k+a) - (1+5t) >= 0"},
        {{16, 48, 144}, "2*p^(k+a) + 5(1-t) >= 0"},
        {{32, 64, 96, 128, 192, 256, 288, 384, 576, 768, 1152, 2304}, "2*p^(k+a) + 8(1-t) >= 0"},
    };
    return rows;
}

bool b_row_holds(std::size_t row, unsigned alpha, std::int64_t m, unsigned k) {
    const Rational x(mpz_class(static_cast<long>(spow(2, alpha))) * m);
    const Rational three_k(mpz_class(static_cast<long>(spow(3, k))));
    switch (row) {
        case 0: return 32 * three_k - 9 * x - 9 >= 0;
        case 1: return three_k - Rational(9, 32) * (x + 1) >= 0;
        case 2: return 8 * three_k - 9 * x + 9 >= 0;
        case 3: return true;  // 3^(k-2) is positive for every k
        case 4: return three_k >= 0;
        default: throw std::out_of_range("b_row_holds: no such row");
    }
}

bool h_row_holds(std::size_t row, std::uint64_t p, unsigned a, unsigned k, std::int64_t t) {
    const mpz_class pk = mpz_class(static_cast<long>(spow(static_cast<std::int64_t>(p), k + a)));
    switch (row) {
        case 0: return 8 * pk - (1 + 5 * mpz_class(static_cast<long>(t))) >= 0;
        case 1: return 2 * pk + 5 * (1 - mpz_class(static_cast<long>(t))) >= 0;
        case 2: return 2 * pk + 8 * (1 - mpz_class(static_cast<long>(t))) >= 0;
        default: throw std::out_of_range("h_row_holds: no such row");
    }
}

bool raw_order_nonnegative(const ExponentMap& r, std::uint64_t d) { return sgn(order_sum(r, d)) >= 0; }

}  // namespace families

}  // namespace qcong::etaq
