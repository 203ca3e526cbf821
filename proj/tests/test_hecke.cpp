#include <doctest.h>

#include <random>

#include "qcong/hecke.hpp"

using namespace qcong;
using namespace qcong::hecke;

namespace {

const auto trivial = [](std::int64_t) { return 1; };

Series random_series(Ring ring, std::size_t order, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::int64_t> dist(0, 1'000'000);
    std::vector<std::int64_t> c(order);
    for (auto& x : c) x = dist(rng);
    return Series(ring, c);
}

}  // namespace

TEST_SUITE("hecke") {
    TEST_CASE("context validation") {
        CHECK_THROWS(HeckeContext(9, 2, trivial, Ring::mod(9)));
        CHECK_THROWS(HeckeContext(5, 0, trivial, Ring::mod(5)));
        CHECK_NOTHROW(HeckeContext(43, 390, trivial, Ring::mod(43)));
    }

    TEST_CASE("T_p basics") {
        const HeckeContext ctx(3, 2, trivial, Ring::exact());
        CHECK(apply_Tp(ctx, Series(Ring::exact(), 30)).is_zero());
        CHECK(apply_Tp(ctx, Series(Ring::exact(), 30)).order() == 10);
        CHECK_THROWS(apply_Tp(ctx, Series(Ring::exact(), 2)));

        // f = q: coefficient 3 of f|T_3 is a(9) + 3 a(1) = 3.
        std::vector<std::int64_t> q(12, 0);
        q[1] = 1;
        const Series img = apply_Tp(ctx, Series(Ring::exact(), q));
        CHECK(img.coeff(3) == 3);
        CHECK(img.coeff(0) == 0);
        CHECK(img.coeff(1) == 0);
    }

    TEST_CASE("mod p with weight >= 2 keeps only a(pn)") {
        std::mt19937_64 rng(3);
        const HeckeContext ctx(43, 390, trivial, Ring::mod(43));
        const Series f = random_series(Ring::mod(43), 43 * 20, rng);
        CHECK(apply_Tp(ctx, f) == extract_progression(f, 43, 0));
    }

    TEST_CASE("T_p is linear") {
        std::mt19937_64 rng(4);
        const HeckeContext ctx(5, 3, [](std::int64_t d) { return d % 4 == 3 ? -1 : 1; }, Ring::exact());
        for (int trial = 0; trial < 5; ++trial) {
            const Series f = random_series(Ring::exact(), 300, rng);
            const Series g = random_series(Ring::exact(), 300, rng);
            CHECK(apply_Tp(ctx, add(f, g)) == add(apply_Tp(ctx, f), apply_Tp(ctx, g)));
        }
    }

    TEST_CASE("(g h) | T_p == (g | T_p) h(q^(1/p)) mod p") {
        std::mt19937_64 rng(5);
        for (std::uint64_t p : {3u, 43u}) {
            const Ring ring = Ring::mod(p);
            constexpr std::size_t N = 600;
            const HeckeContext ctx(p, 4, trivial, ring);
            const Series g = random_series(ring, N, rng);
            const Series h_small = random_series(ring, N / p, rng);
            const Series h = dilate(h_small, p);  // supported on multiples of p
            const Series lhs = apply_Tp(ctx, mul(g, h));
            const Series rhs = mul(apply_Tp(ctx, g), h_small);
            CHECK(lhs == truncate(rhs, lhs.order()));
        }
    }

    TEST_CASE("isolated rows metadata") {
        const auto& rows = isolated_rows();
        REQUIRE(rows.size() == 7);
        CHECK(rows[0].c == 37);
        CHECK(rows[0].eta_exponent == 817);
        CHECK(rows[0].shift == 31);
        CHECK(rows[0].eta_quotient() == etaq::ExponentMap{{1, 816}, {2, -36}});
        CHECK_THROWS(Thm1Row::from_eta(37, 43, 12, 815));
    }

    TEST_CASE("row c = 37 at the Sturm bound") {
        const Thm1Verdict v = verify_thm1_row(isolated_rows()[0], 195);
        CHECK(v.status == RowStatus::Proved);
        CHECK(v.level == 4);
        CHECK(v.weight == 390);
        CHECK(v.sturm == 195);
        CHECK(v.cond24);
        CHECK(v.holomorphic);
        CHECK(v.integral_weight);
        CHECK(v.constant_term_zero);
        CHECK_FALSE(v.first_failure);
        CHECK(v.expansion_order == 43 * (195 + 2));
    }

    TEST_CASE("depth below the Sturm bound is insufficient") {
        CHECK(verify_thm1_row(isolated_rows()[0], 100).status == RowStatus::Insufficient);
    }

    TEST_CASE("a perturbed residue is caught") {
        Thm1Row bad = isolated_rows()[0];
        bad.residue = 13;
        const Thm1Verdict v = verify_thm1_row(bad, 195);
        CHECK(v.status == RowStatus::Failed);
        CHECK(v.first_failure.has_value());
    }

    TEST_CASE("direct congruences") {
        CHECK(direct_congruence(PartitionFamily::cubic(37), 43, 12, 43, 500).pass);
        CHECK(direct_congruence(PartitionFamily::cubic(3), 49, 39, 49, 300).pass);
        CHECK(direct_congruence(PartitionFamily::cubic(1), 5, 4, 5, 300).pass);
        const DirectVerdict bad = direct_congruence(PartitionFamily::cubic(1), 5, 3, 5, 50);
        CHECK_FALSE(bad.pass);
        CHECK(bad.first_failure == 0u);
        CHECK_THROWS(direct_congruence(PartitionFamily::cubic(1), 5, 5, 5, 10));
    }
}
