#include "qcong/engine/claims.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <thread>

#include "qcong/qfuncs.hpp"

namespace qcong::engine {

using nlohmann::json;

std::string to_string(ClaimStatus s) { return s == ClaimStatus::Theorem ? "theorem" : "conjecture"; }

std::string to_string(Outcome o) {
    switch (o) {
        case Outcome::Pass: return "pass";
        case Outcome::Fail: return "fail";
        case Outcome::Skipped: return "skipped";
    }
    return "?";
}

Claim claim_from_json(const json& j) {
    try {
        Claim c{.id = j.at("id").get<std::string>(),
                .label = j.value("label", ""),
                .family = j.at("family").get<std::string>(),
                .c = Expr::parse(j.at("c_expr").get<std::string>()),
                .A = Expr::parse(j.at("progression").at("A_expr").get<std::string>()),
                .B = Expr::parse(j.at("progression").at("B_expr").get<std::string>()),
                .modulus = Expr::parse(j.at("mod_expr").get<std::string>()),
                .ranges = {}};
        if (c.family != "a" && c.family != "abar") throw CatalogError("family must be a or abar");
        if (j.contains("ranges")) {
            for (const auto& [name, range] : j.at("ranges").items()) {
                const auto lo = range.at(0).get<std::int64_t>(), hi = range.at(1).get<std::int64_t>();
                if (lo > hi) throw CatalogError("empty range for " + name);
                c.ranges[name] = {lo, hi};
            }
        }
        c.depth = j.value("depth", std::size_t{1000});
        const std::string status = j.value("status", "theorem");
        if (status == "theorem") {
            c.status = ClaimStatus::Theorem;
        } else if (status == "conjecture") {
            c.status = ClaimStatus::Conjecture;
        } else {
            throw CatalogError("unknown status '" + status + "'");
        }
        for (const Expr* e : {&c.c, &c.A, &c.B, &c.modulus}) {
            for (const auto& v : e->variables()) {
                if (!c.ranges.contains(v)) throw CatalogError("variable '" + v + "' has no range");
            }
        }
        return c;
    } catch (const json::exception& e) {
        throw CatalogError(std::string("malformed claim: ") + e.what());
    } catch (const ExprError& e) {
        throw CatalogError(e.what());
    } catch (const CatalogError& e) {
        throw CatalogError("claim " + j.value("id", std::string("?")) + ": " + e.what());
    }
}

json claim_to_json(const Claim& c) {
    json ranges = json::object();
    for (const auto& [name, r] : c.ranges) ranges[name] = {r.first, r.second};
    return {{"id", c.id},
            {"label", c.label},
            {"family", c.family},
            {"c_expr", c.c.source()},
            {"progression", {{"A_expr", c.A.source()}, {"B_expr", c.B.source()}}},
            {"mod_expr", c.modulus.source()},
            {"ranges", ranges},
            {"depth", c.depth},
            {"status", to_string(c.status)}};
}

std::vector<Claim> load_catalog(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw CatalogError("cannot open catalog " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw CatalogError("catalog " + path.string() + ": " + e.what());
    }
    if (!j.is_array()) throw CatalogError("catalog must be a JSON array");
    std::vector<Claim> out;
    std::set<std::string> ids;
    for (const auto& entry : j) {
        out.push_back(claim_from_json(entry));
        if (!ids.insert(out.back().id).second) throw CatalogError("duplicate claim id " + out.back().id);
    }
    return out;
}

std::size_t ClaimResult::count(Outcome o) const {
    std::size_t n = 0;
    for (const auto& v : instances) n += v.outcome == o;
    return n;
}

std::string ClaimResult::summary() const {
    const bool failed = count(Outcome::Fail) > 0;
    if (!failed && count(Outcome::Pass) == 0) return "NO VALID INSTANTIATIONS";
    if (status == ClaimStatus::Conjecture) {
        if (failed) return "COUNTEREXAMPLE";
        std::size_t d = 0;
        for (const auto& v : instances) d = std::max(d, v.depth);
        return "consistent to depth " + std::to_string(d);
    }
    return failed ? "FAIL" : "pass";
}

std::vector<Bindings> instantiations(const Claim& c) {
    std::vector<Bindings> out{Bindings{}};
    for (const auto& [name, r] : c.ranges) {
        std::vector<Bindings> next;
        for (const auto& b : out) {
            for (std::int64_t v = r.first; v <= r.second; ++v) {
                Bindings nb = b;
                nb[name] = v;
                next.push_back(std::move(nb));
            }
        }
        out = std::move(next);
    }
    return out;
}

namespace {

constexpr std::size_t kProbeDepth = 16;

std::optional<std::size_t> first_failure(const Series& s, std::uint64_t A, std::uint64_t B, std::size_t depth) {
    for (std::size_t n = 0; n <= depth; ++n) {
        if (!s.coeff_is_zero(A * n + B)) return n;
    }
    return std::nullopt;
}

InstanceVerdict run_instance(const Claim& claim, const Bindings& params, std::size_t depth) {
    InstanceVerdict v;
    v.params = params;
    v.depth = depth;
    try {
        v.c = claim.c.eval(params);
        v.A = claim.A.eval(params);
        v.B = claim.B.eval(params);
        v.modulus = claim.modulus.eval(params);
    } catch (const ExprError& e) {
        v.note = std::string("out-of-domain: ") + e.what();
        return v;
    }
    if (v.c < 1) {
        v.note = "out-of-domain: c = " + std::to_string(v.c);
        return v;
    }
    if (v.A < 1 || v.B < 0 || v.B >= v.A) {
        v.note = "out-of-domain: progression " + std::to_string(v.A) + "n+" + std::to_string(v.B);
        return v;
    }
    if (v.modulus < 2 || static_cast<std::uint64_t>(v.modulus) > Ring::kMaxModulus) {
        v.note = "out-of-domain: modulus " + std::to_string(v.modulus);
        return v;
    }

    const auto family = PartitionFamily::parse(claim.family, v.c);
    const Ring ring = Ring::mod(static_cast<std::uint64_t>(v.modulus));
    const auto A = static_cast<std::uint64_t>(v.A), B = static_cast<std::uint64_t>(v.B);

    auto check = [&](std::size_t d) {
        const Series s = genfun(family, ring, A * d + B + 1);
        const auto n = first_failure(s, A, B, d);
        if (n) {
            v.outcome = Outcome::Fail;
            v.witness_n = n;
            v.witness_value = s.coeff(A * *n + B).get_str();
        }
        return !n;
    };

    if (depth > kProbeDepth && !check(kProbeDepth)) return v;
    if (check(depth)) v.outcome = Outcome::Pass;
    return v;
}

}  // namespace

ClaimResult verify_claim(const Claim& claim, std::optional<std::size_t> depth_override) {
    const auto t0 = std::chrono::steady_clock::now();
    ClaimResult r;
    r.id = claim.id;
    r.label = claim.label;
    r.status = claim.status;
    const std::size_t depth = depth_override.value_or(claim.depth);
    if (depth < 1) throw std::invalid_argument("verify_claim: depth must be >= 1");
    for (const auto& params : instantiations(claim)) r.instances.push_back(run_instance(claim, params, depth));
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<ClaimResult> run_claims(const std::vector<Claim>& claims, std::size_t workers,
                                    std::optional<std::size_t> depth_override) {
    std::vector<ClaimResult> results(claims.size());
    std::vector<std::exception_ptr> errors(claims.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < claims.size(); i = next++) {
            try {
                results[i] = verify_claim(claims[i], depth_override);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(claims.size(), 1));
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    pool.clear();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return results;
}

}  // namespace qcong::engine
