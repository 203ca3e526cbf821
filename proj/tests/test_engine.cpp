#include <doctest.h>

#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "qcong/arith.hpp"
#include "qcong/engine/characterize.hpp"
#include "qcong/engine/claims.hpp"
#include "qcong/engine/cli.hpp"
#include "qcong/engine/density.hpp"
#include "qcong/engine/expr.hpp"
#include "qcong/engine/identities.hpp"
#include "qcong/engine/report.hpp"
#include "qcong/qfuncs.hpp"

using namespace qcong;
using namespace qcong::engine;
using nlohmann::json;

namespace {

Claim make_claim(const std::string& family, const std::string& c, const std::string& A, const std::string& B,
                 const std::string& u, json ranges = json::object(), std::size_t depth = 200) {
    return claim_from_json({{"id", "t"},
                            {"label", "test"},
                            {"family", family},
                            {"c_expr", c},
                            {"progression", {{"A_expr", A}, {"B_expr", B}}},
                            {"mod_expr", u},
                            {"ranges", ranges},
                            {"depth", depth}});
}

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    args.insert(args.begin(), "qcong");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("engine-expr") {
    TEST_CASE("evaluation") {
        const Bindings env{{"i", 1}, {"k", 3}, {"alpha", 2}};
        CHECK(Expr::parse("2^k*i - 2^(k-1) - 2").eval(env) == 2);
        CHECK(Expr::parse("2^k*i+(2^k-6)/2").eval(env) == 9);
        CHECK(Expr::parse("2^alpha*4").eval(env) == 16);
        CHECK(Expr::parse("-2^2").eval({}) == -4);
        CHECK(Expr::parse("2^3^2").eval({}) == 512);
        CHECK(Expr::parse("9*i+4").eval({{"i", 5}}) == 49);
        CHECK(Expr::parse("2^(k+1)").variables() == std::set<std::string>{"k"});
    }

    TEST_CASE("errors") {
        CHECK_THROWS_AS(Expr::parse("2 +"), ExprError);
        CHECK_THROWS_AS(Expr::parse("(1"), ExprError);
        CHECK_THROWS_AS(Expr::parse("1 $ 2"), ExprError);
        CHECK_THROWS_AS(Expr::parse("7/2").eval({}), ExprError);
        CHECK_THROWS_AS(Expr::parse("2^(0-1)").eval({}), ExprError);
        CHECK_THROWS_AS(Expr::parse("x").eval({}), ExprError);
        CHECK_THROWS_AS(Expr::parse("2^70").eval({}), ExprError);
    }
}

TEST_SUITE("engine-claims") {
    TEST_CASE("JSON round trip") {
        const Claim c = make_claim("abar", "2^k*i-2^(k-1)-2", "8", "5", "2^(k+1)", {{"i", {1, 5}}, {"k", {3, 6}}});
        const Claim back = claim_from_json(claim_to_json(c));
        CHECK(claim_to_json(back) == claim_to_json(c));
        CHECK(instantiations(c).size() == 20);
    }

    TEST_CASE("catalog validation") {
        CHECK_THROWS_AS(make_claim("b", "1", "5", "4", "5"), CatalogError);
        CHECK_THROWS_AS(make_claim("a", "i", "5", "4", "5"), CatalogError);
        CHECK_THROWS_AS(make_claim("a", "i", "5", "4", "5", {{"i", {3, 1}}}), CatalogError);
        CHECK_THROWS_AS(claim_from_json({{"id", "x"}}), CatalogError);
    }

    TEST_CASE("shipped catalog loads with unique ids") {
        const auto claims = load_catalog(data_dir() / "claims.json");
        CHECK(claims.size() >= 40);
        std::set<std::string> ids;
        for (const auto& c : claims) CHECK(ids.insert(c.id).second);
    }

    TEST_CASE("abar_2(4n+3) mod 4") {
        const ClaimResult r = verify_claim(make_claim("abar", "2", "4", "3", "4"), 1000);
        CHECK(r.ok());
        CHECK(r.summary() == "pass");
        CHECK(r.instances.at(0).depth == 1000);
    }

    TEST_CASE("k = 3, i = 1 instantiation has c = 2 and modulus 16") {
        const Claim c = make_claim("abar", "2^k*i-2^(k-1)-2", "8", "5", "2^(k+1)", {{"i", {1, 1}}, {"k", {3, 3}}}, 500);
        const ClaimResult r = verify_claim(c);
        REQUIRE(r.instances.size() == 1);
        CHECK(r.instances[0].c == 2);
        CHECK(r.instances[0].modulus == 16);
        CHECK(r.instances[0].outcome == Outcome::Pass);
    }

    TEST_CASE("abar_9(9n+6) mod 12") {
        CHECK(verify_claim(make_claim("abar", "9", "9", "6", "12"), 500).ok());
    }

    TEST_CASE("counterexamples carry a witness") {
        const ClaimResult r = verify_claim(make_claim("a", "1", "5", "3", "5"), 100);
        CHECK_FALSE(r.ok());
        CHECK(r.summary() == "FAIL");
        REQUIRE(r.instances[0].witness_n);
        CHECK(*r.instances[0].witness_n == 0);
        CHECK(r.instances[0].witness_value == "3");  // p(3) = 3
    }

    TEST_CASE("out-of-domain instantiations are skipped, not passed") {
        const Claim c = make_claim("abar", "2^k*i+(2^k-6)/2", "8", "7", "2^(k+3)", {{"i", {0, 1}}, {"k", {1, 1}}});
        const ClaimResult r = verify_claim(c);
        CHECK(r.count(Outcome::Skipped) == 2);  // c = -2 and c = 0
        CHECK(r.count(Outcome::Pass) == 0);
        CHECK_FALSE(r.ok());
        CHECK(r.summary() == "NO VALID INSTANTIATIONS");
        for (const auto& v : r.instances) CHECK(v.note.starts_with("out-of-domain"));
    }

    TEST_CASE("conjecture summaries") {
        Claim c = make_claim("a", "1", "5", "3", "5");
        c.status = ClaimStatus::Conjecture;
        CHECK(verify_claim(c, 50).summary() == "COUNTEREXAMPLE");
        c = make_claim("a", "1", "5", "4", "5");
        c.status = ClaimStatus::Conjecture;
        CHECK(verify_claim(c, 50).summary() == "consistent to depth 50");
    }

    TEST_CASE("worker pool keeps catalog order and matches serial runs") {
        std::vector<Claim> claims;
        for (int b = 0; b < 5; ++b) claims.push_back(make_claim("a", "1", "5", std::to_string(b), "5", {}, 60));
        const auto par = run_claims(claims, 4);
        const auto ser = run_claims(claims, 1);
        REQUIRE(par.size() == 5);
        for (std::size_t i = 0; i < 5; ++i) {
            CHECK(par[i].instances == ser[i].instances);
            CHECK(par[i].ok() == (i == 4));
        }
    }
}

TEST_SUITE("engine-identities") {
    TEST_CASE("catalog at order 1") {
        for (const auto& c : identity_catalog()) {
            const IdentityVerdict v = verify_identity(c, 1);
            CAPTURE(c.id);
            CHECK(v.equal);
        }
    }

    TEST_CASE("selected identities") {
        std::map<std::string, IdentityCase> by_id;
        for (auto& c : identity_catalog()) by_id.emplace(c.id, c);
        CHECK(verify_identity(by_id.at("dissect2-phi"), 500).equal);
        CHECK(verify_identity(by_id.at("dissect3-f1/f4"), 400).equal);
        CHECK(verify_identity(by_id.at("functional-eq-c3"), 300).equal);
        CHECK(verify_identity(by_id.at("phi-product-c4"), 300).equal);
        CHECK(verify_identity(by_id.at("odd-part-c5"), 300).equal);
        CHECK(verify_identity(by_id.at("gf4n+2-rederived-i2"), 200).equal);
    }

    TEST_CASE("a wrong identity reports the first difference") {
        const IdentityCase bad{"bad", "phi = phi(q^4)", QExpr::phi(), QExpr::phi().dilate(4)};
        const IdentityVerdict v = verify_identity(bad, 50);
        CHECK_FALSE(v.equal);
        CHECK(v.first_mismatch == 1u);
        CHECK(v.lhs_value == "2");
        CHECK(v.rhs_value == "0");
    }

    TEST_CASE("evaluation errors name the subtree") {
        const IdentityCase bad{"bad", "", QExpr::constant(2).pow(-1), QExpr::constant(1), 10, std::nullopt};
        const IdentityVerdict v = verify_identity(bad);
        CHECK_FALSE(v.equal);
        CHECK(v.error.find("(2)^-1") != std::string::npos);
    }
}

TEST_SUITE("engine-characterize") {
    TEST_CASE("representation counts") {
        CHECK(count_k2_plus_2l2(3) == 1);
        CHECK(count_k2_plus_2l2(9) == 1);
        CHECK(count_k2_plus_2l2(7) == 0);
        CHECK(count_k2_plus_2l2(1) == 0);
    }

    TEST_CASE("examples") {
        for (std::int64_t c = 1; c <= 12; ++c) {
            const auto t = oracle::overcubic(c, 10);
            CHECK(oracle::residue(t[1], 4) == 2);
            CHECK(oracle::residue(t[3], 4) == 0);
            CHECK(oracle::residue(t[7], 8) == 0);
            CHECK(oracle::residue(t[8], 8) == static_cast<std::uint64_t>((6 * (c + 1)) % 8));
            CHECK(predict_mod4(c, 1) == 2);
            CHECK(predict_mod8(c, 8) == static_cast<std::uint64_t>((6 * (c + 1)) % 8));
            CHECK(predict_mod8(c, 7) == 0);
        }
        CHECK(oracle::residue(oracle::overcubic(2, 2)[2], 4) == 2);
    }

    TEST_CASE("squares are 2 mod 8 away from the overlaps") {
        const auto t = oracle::overcubic(3, 400);
        for (std::uint64_t k = 1; k <= 20; ++k) {
            const std::uint64_t n = k * k;
            bool overlap = count_k2_plus_2l2(n) > 0 || k % 2 == 0;
            if (!overlap) CHECK(oracle::residue(t[n], 8) == 2);
        }
    }

    TEST_CASE("checkers pass and report failures") {
        for (std::int64_t c = 1; c <= 12; ++c) {
            CHECK(check_characterization_mod4(c, 5000).pass);
            CHECK(check_characterization_mod8(c, 5000).pass);
        }
    }

    TEST_CASE("parity: abar_c(n) is even for n >= 1, and abar_c(n)/2 is odd exactly on the exceptional classes") {
        for (std::int64_t c = 1; c <= 12; ++c) {
            const Series s = genfun(PartitionFamily::overcubic(c), Ring::mod(4), 5001);
            CHECK(s.coeff(0) == 1);
            for (std::uint64_t n = 1; n <= 5000; ++n) {
                const auto r = s.coeff(n).get_ui();
                const bool square = arith::is_perfect_square(n);
                const bool twice_square = n % 2 == 0 && arith::is_perfect_square(n / 2);
                if (r % 2 != 0) FAIL("abar_" << c << "(" << n << ") is odd");
                if ((r == 2) != (square != (twice_square && c % 2 == 0))) FAIL("c=" << c << " n=" << n);
            }
        }
    }

    TEST_CASE("abar_2i(2n) == abar_2i(n) mod 4") {
        for (std::int64_t i = 1; i <= 4; ++i) {
            const Series s = genfun(PartitionFamily::overcubic(2 * i), Ring::mod(4), 4001);
            for (std::size_t n = 1; n <= 2000; ++n) {
                if (s.coeff(2 * n) != s.coeff(n)) FAIL("i=" << i << " n=" << n);
            }
        }
    }
}

TEST_SUITE("engine-density") {
    TEST_CASE("closed form for abar_2 mod 4") {
        for (std::uint64_t X : {5000u, 20000u, 50000u}) {
            std::uint64_t a = 0, b = 0;
            while ((a + 1) * (a + 1) <= X) ++a;
            while (2 * (b + 1) * (b + 1) <= X) ++b;
            mpq_class want(mpz_class(X - a - b), mpz_class(X));
            want.canonicalize();
            CHECK(estimate_density(PartitionFamily::overcubic(2), 4, X) == want);
        }
    }

    TEST_CASE("trend is non-decreasing for abar_2 mod 4") {
        const auto f = PartitionFamily::overcubic(2);
        const mpq_class d1 = estimate_density(f, 4, 5000);
        const mpq_class d2 = estimate_density(f, 4, 20000);
        const mpq_class d3 = estimate_density(f, 4, 50000);
        CHECK(d1 <= d2);
        CHECK(d2 <= d3);
    }

    TEST_CASE("small cases") {
        const mpq_class d = estimate_density(PartitionFamily::cubic(1), 2, 1);
        CHECK((d == 0 || d == 1));
        // p(2) = 2, p(4) = 5, p(6) = 11, p(8) = 22, p(10) = 42.
        CHECK(estimate_density(PartitionFamily::cubic(1), 2, 10, 2) == mpq_class(mpz_class(3), mpz_class(5)));
    }
}

TEST_SUITE("engine-report") {
    TEST_CASE("round trip") {
        Report r;
        r.tool_version = "test";
        r.environment = environment_fingerprint();
        r.claims.push_back(verify_claim(make_claim("a", "1", "5", "4", "5"), 40));
        r.claims.push_back(verify_claim(make_claim("a", "1", "5", "3", "5"), 40));
        r.claims.push_back(verify_claim(
            make_claim("abar", "2^k*i+(2^k-6)/2", "8", "7", "2^(k+3)", {{"i", {0, 1}}, {"k", {1, 2}}}), 40));
        for (const auto& c : identity_catalog()) {
            if (c.id.starts_with("gf4n+2-i1") || c.id == "dissect2-phi") r.identities.push_back(verify_identity(c, 30));
        }
        r.extra["radu"] = {{"floor_nu", 55}};
        const std::string text = emit(r);
        CHECK(parse(text) == r);
        CHECK(json::parse(text).at("schema_version") == kSchemaVersion);
        CHECK(json::parse(text).at("traceability").size() == 3);
    }

    TEST_CASE("malformed input") {
        CHECK_THROWS_AS(parse("{"), ReportError);
        CHECK_THROWS_AS(parse(R"({"schema_version": 99})"), ReportError);
    }
}

TEST_SUITE("engine-cli") {
    TEST_CASE("expand") {
        const CliRun r = run({"--order", "3", "expand", "--family", "abar", "--c", "1"});
        CHECK(r.code == kExitPass);
        CHECK(r.out == "1, 2, 4\n");
    }

    TEST_CASE("exit codes") {
        CHECK(run({}).code == kExitUsage);
        CHECK(run({"bogus"}).code == kExitUsage);
        CHECK(run({"claim", "--id", "no-such-claim"}).code == kExitUsage);
        CHECK(run({"claim", "--id", "cubic-c37-mod43", "--depth", "100"}).code == kExitPass);
        CHECK(run({"--depth", "50", "claim", "--id", "ramanujan-5", "--id", "ramanujan-7"}).code == kExitPass);
        CHECK(run({"--order", "100", "identity", "--id", "gf4n+2-i1"}).code == kExitFail);
        CHECK(run({"--order", "100", "identity", "--id", "gf4n+2-rederived-i1"}).code == kExitPass);
        CHECK(run({"density", "--family", "abar", "--c", "2", "--x", "100"}).code == kExitUsage);
    }

    TEST_CASE("radu prints the orbit") {
        const CliRun r = run({"radu", "--file", (data_dir() / "radu" / "cubic-c3-mod49.json").string()});
        CHECK(r.code == kExitPass);
        CHECK(r.out.find("P(t)={39}") != std::string::npos);
        CHECK(r.out.find("proved") != std::string::npos);
    }

    TEST_CASE("eta") {
        const CliRun r = run({"eta", "--exp", "1:816", "--exp", "2:-36"});
        CHECK(r.code == kExitPass);
        CHECK(r.out.find("level 4") != std::string::npos);
        CHECK(r.out.find("weight 390") != std::string::npos);
        CHECK(r.out.find("sturm bound 195") != std::string::npos);
    }

    TEST_CASE("json report") {
        const auto path = std::filesystem::temp_directory_path() / "qcong-test-report.json";
        const CliRun r = run({"--depth", "40", "--json", path.string(), "claim", "--id", "ramanujan-11"});
        CHECK(r.code == kExitPass);
        std::ifstream in(path);
        const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        const Report rep = parse(text);
        REQUIRE(rep.claims.size() == 1);
        CHECK(rep.claims[0].id == "ramanujan-11");
        std::filesystem::remove(path);
    }
}
