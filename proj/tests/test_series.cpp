#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qcong/series.hpp"

using namespace qcong;

namespace {

Series random_series(Ring ring, std::size_t order, std::mt19937_64& rng, std::int64_t lo = -50, std::int64_t hi = 50) {
    std::uniform_int_distribution<std::int64_t> dist(lo, hi);
    std::vector<std::int64_t> c(order);
    for (auto& x : c) x = dist(rng);
    return Series(ring, c);
}

/// Random series with constant term 1, so it is invertible in every ring.
Series random_unit(Ring ring, std::size_t order, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::int64_t> dist(-9, 9);
    std::vector<std::int64_t> c(order);
    for (auto& x : c) x = dist(rng);
    c[0] = 1;
    return Series(ring, c);
}

Series naive_mul(const Series& a, const Series& b) {
    const std::size_t n = std::min(a.order(), b.order());
    std::vector<BigInt> out(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; i + j < n; ++j) out[i + j] += a.coeff(i) * b.coeff(j);
    }
    return Series(a.ring(), std::move(out));
}

Series f(std::size_t k, Ring ring, std::size_t order) { return densify(euler_factor(k, order), ring); }

}  // namespace

TEST_SUITE("series") {
    TEST_CASE("ring construction") {
        CHECK(Ring::exact().is_exact());
        CHECK(Ring::mod(49).modulus() == 49);
        CHECK_THROWS(Ring::mod(1));
        CHECK_THROWS(Ring::mod(Ring::kMaxModulus + 1));
    }

    TEST_CASE("mod coefficients are reduced into [0, m)") {
        const std::vector<std::int64_t> c{-1, 5, -9, 4};
        const Series s(Ring::mod(4), c);
        CHECK(s.coeff(0) == 3);
        CHECK(s.coeff(1) == 1);
        CHECK(s.coeff(2) == 3);
        CHECK(s.coeff(3) == 0);
    }

    TEST_CASE("euler_factor") {
        const auto e = euler_factor(1, 9);
        const std::vector<SignedTerm> want{{0, 1}, {1, -1}, {2, -1}, {5, 1}, {7, 1}};
        CHECK(e.terms() == want);
        CHECK(euler_factor(2, 3).terms() == std::vector<SignedTerm>{{0, 1}, {2, -1}});
        CHECK(euler_factor(17, 1).terms() == std::vector<SignedTerm>{{0, 1}});
    }

    TEST_CASE("euler_factor matches the product definition") {
        constexpr std::size_t N = 120;
        oracle::Table t(N, 0);
        t[0] = 1;
        for (std::size_t k = 1; k < N; ++k) {
            for (std::size_t n = N; n-- > k;) t[n] -= t[n - k];
        }
        const Series s = f(1, Ring::exact(), N);
        for (std::size_t n = 0; n < N; ++n) CHECK(s.coeff(n) == t[n]);
    }

    TEST_CASE("ring mismatch is rejected") {
        const Series a = Series::one(Ring::exact(), 4);
        const Series b = Series::one(Ring::mod(4), 4);
        const Series c = Series::one(Ring::mod(8), 4);
        CHECK_THROWS_AS(mul(a, b), RingMismatch);
        CHECK_THROWS_AS(add(b, c), RingMismatch);
    }

    TEST_CASE("geometric series times (1 - q)") {
        const std::vector<std::int64_t> geom(5, 1);
        const std::vector<std::int64_t> one_minus_q{1, -1, 0, 0, 0};
        const Series p = mul(Series(Ring::exact(), one_minus_q), Series(Ring::exact(), geom));
        CHECK(p == Series::one(Ring::exact(), 5));
    }

    TEST_CASE("truncation takes the smaller order") {
        const Series a = Series::one(Ring::exact(), 7);
        const Series b = Series::one(Ring::exact(), 4);
        CHECK(mul(a, b).order() == 4);
        CHECK(add(a, b).order() == 4);
    }

    TEST_CASE("f1 times its inverse") {
        const Series f1 = f(1, Ring::exact(), 50);
        CHECK(mul(f1, invert(f1)) == Series::one(Ring::exact(), 50));
    }

    TEST_CASE("f1 squared mod 4 is the reduced exact square") {
        const Series exact = f(1, Ring::exact(), 6);
        const Series sq = mul(exact, exact);
        const Series mod = f(1, Ring::mod(4), 6);
        CHECK(mul(mod, mod) == reduce(sq, Ring::mod(4)));
    }

    TEST_CASE("mul agrees with the naive product") {
        std::mt19937_64 rng(7);
        for (std::size_t order : {1u, 2u, 31u, 200u, 700u}) {
            const Series a = random_series(Ring::exact(), order, rng);
            const Series b = random_series(Ring::exact(), order, rng);
            CHECK(mul(a, b) == naive_mul(a, b));
        }
        for (std::uint64_t m : {4u, 43u, 49u, 2147483647u}) {
            const Series a = random_series(Ring::mod(m), 400, rng, 0, 1'000'000);
            const Series b = random_series(Ring::mod(m), 400, rng, 0, 1'000'000);
            CHECK(mul(a, b) == naive_mul(a, b));
        }
    }

    TEST_CASE("mul_sparse") {
        constexpr std::size_t N = 200;
        std::mt19937_64 rng(11);
        const auto s = euler_factor(1, N);
        CHECK(mul_sparse(Series::one(Ring::exact(), N), s) == densify(s, Ring::exact()));

        const Series a = random_series(Ring::exact(), N, rng);
        CHECK(mul_sparse(a, s) == mul(a, densify(s, Ring::exact())));

        const Series a43 = reduce(a, Ring::mod(43));
        CHECK(mul_sparse(a43, s) == reduce(mul_sparse(a, s), Ring::mod(43)));
    }

    TEST_CASE("div_sparse undoes mul_sparse") {
        std::mt19937_64 rng(12);
        const Series a = random_series(Ring::exact(), 150, rng);
        for (std::size_t k : {1u, 2u, 7u}) {
            const auto s = euler_factor(k, 150);
            CHECK(div_sparse(mul_sparse(a, s), s) == a);
        }
    }

    TEST_CASE("invert") {
        const Series p = invert(f(1, Ring::exact(), 50));
        CHECK(p.coeff(0) == 1);
        CHECK(p.coeff(5) == 7);
        const auto want = oracle::partitions(49);
        for (std::size_t n = 0; n < 50; ++n) CHECK(p.coeff(n) == want[n]);

        const Series cubic = invert(mul(f(1, Ring::exact(), 41), f(2, Ring::exact(), 41)));
        const auto a2 = oracle::cubic(2, 40);
        for (std::size_t n = 0; n <= 40; ++n) CHECK(cubic.coeff(n) == a2[n]);
    }

    TEST_CASE("invert rejects a non-unit constant term") {
        const std::vector<std::int64_t> c{2, 1, 1};
        CHECK_THROWS_AS(invert(Series(Ring::exact(), c)), NonUnitError);
        CHECK_THROWS_AS(invert(Series(Ring::mod(4), c)), NonUnitError);
        CHECK_NOTHROW(invert(Series(Ring::mod(9), c)));
    }

    TEST_CASE("invert is two-sided") {
        std::mt19937_64 rng(13);
        for (Ring ring : {Ring::exact(), Ring::mod(8), Ring::mod(49)}) {
            const Series a = random_unit(ring, 120, rng);
            const Series b = invert(a);
            CHECK(mul(a, b) == Series::one(ring, 120));
            CHECK(mul(b, a) == Series::one(ring, 120));
        }
    }

    TEST_CASE("pow") {
        std::mt19937_64 rng(14);
        const Series a = random_unit(Ring::exact(), 60, rng);
        CHECK(pow(a, 0) == Series::one(Ring::exact(), 60));
        CHECK(pow(pow(a, 2), 3) == pow(a, 6));
        CHECK(pow(a, -2) == invert(mul(a, a)));

        const Series f1 = f(1, Ring::mod(49), 200);
        const Series f7 = f(7, Ring::mod(49), 200);
        CHECK(pow(f1, 49) == pow(f7, 7));
    }

    TEST_CASE("euler_power agrees with dense powers") {
        for (std::uint64_t m : {43u, 49u, 8u, 9u}) {
            const Ring ring = Ring::mod(m);
            for (std::int64_t e : {-3, 1, 48, 86, 817, -49}) {
                CHECK(euler_power(1, e, ring, 300) == pow(f(1, ring, 300), e));
                CHECK(euler_power(2, e, ring, 300) == pow(f(2, ring, 300), e));
            }
        }
    }

    TEST_CASE("extract_progression and dilate") {
        std::mt19937_64 rng(15);
        const Series a = random_series(Ring::exact(), 97, rng);
        CHECK(extract_progression(a, 1, 0) == a);
        CHECK(dilate(a, 1) == a);
        CHECK(extract_progression(a, 5, 3).order() == (97 - 3 + 4) / 5);

        for (std::size_t d : {2u, 3u, 7u}) {
            CHECK(extract_progression(dilate(a, d), d, 0) == a);
            Series sum(Ring::exact(), a.order());
            for (std::size_t r = 0; r < d; ++r) {
                const Series part = shift(truncate(dilate(extract_progression(a, d, r), d), a.order() - r), r);
                sum = add(sum, truncate(part, a.order()));
            }
            CHECK(sum == a);
        }

        CHECK(dilate(f(1, Ring::exact(), 50), 2) == f(2, Ring::exact(), 100));
    }

    TEST_CASE("extract_progression past the order") {
        const Series a = Series::one(Ring::exact(), 3);
        const Series e = extract_progression(a, 10, 5);
        CHECK(e.order() == 1);
        CHECK(e.is_zero());
    }

    TEST_CASE("Ramanujan's p(5n+4) mod 5 on the series") {
        const Series p = invert(f(1, Ring::mod(5), 500));
        CHECK(extract_progression(p, 5, 4).is_zero());
    }
}

TEST_SUITE("series-properties") {
    TEST_CASE("freshman's dream") {
        struct Case {
            std::size_t m;
            std::uint64_t p;
            unsigned k;
        };
        constexpr std::size_t N = 300;
        for (const Case c : {Case{1, 2, 3}, Case{1, 3, 2}, Case{2, 3, 1}, Case{1, 7, 2}}) {
            std::uint64_t pk = 1;
            for (unsigned j = 0; j < c.k; ++j) pk *= c.p;
            const Ring ring = Ring::mod(pk);
            // Exact power, reduced afterwards, against the dilated right-hand side.
            const Series lhs = reduce(pow(f(c.m, Ring::exact(), N), static_cast<std::int64_t>(pk)), ring);
            const Series rhs = pow(f(c.m * c.p, ring, N), static_cast<std::int64_t>(pk / c.p));
            CAPTURE(c.m);
            CAPTURE(c.p);
            CAPTURE(c.k);
            CHECK(lhs == rhs);
        }
    }

    TEST_CASE("reduction is a ring homomorphism") {
        constexpr std::size_t N = 300;
        std::mt19937_64 rng(20240601);
        for (std::uint64_t m : {4u, 8u, 43u, 49u}) {
            const Ring ring = Ring::mod(m);
            for (int trial = 0; trial < 3; ++trial) {
                const Series a = random_series(Ring::exact(), N, rng);
                const Series b = random_series(Ring::exact(), N, rng);
                const Series u = random_unit(Ring::exact(), N, rng);
                const auto R = [&](const Series& s) { return reduce(s, ring); };
                CAPTURE(m);
                CHECK(R(add(a, b)) == add(R(a), R(b)));
                CHECK(R(sub(a, b)) == sub(R(a), R(b)));
                CHECK(R(mul(a, b)) == mul(R(a), R(b)));
                CHECK(R(scale(a, -7)) == scale(R(a), -7));
                CHECK(R(invert(u)) == invert(R(u)));
                CHECK(R(pow(u, 5)) == pow(R(u), 5));
                CHECK(R(pow(u, -3)) == pow(R(u), -3));
                CHECK(R(mul_sparse(a, euler_factor(3, N))) == mul_sparse(R(a), euler_factor(3, N)));
                CHECK(R(extract_progression(a, 4, 1)) == extract_progression(R(a), 4, 1));
                CHECK(R(dilate(a, 3)) == dilate(R(a), 3));
            }
        }
    }

    TEST_CASE("mul is commutative and associative") {
        std::mt19937_64 rng(99);
        for (int trial = 0; trial < 5; ++trial) {
            const Series a = random_series(Ring::exact(), 200, rng);
            const Series b = random_series(Ring::exact(), 200, rng);
            const Series c = random_series(Ring::exact(), 200, rng);
            CHECK(mul(a, b) == mul(b, a));
            CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
        }
    }
}
