#include "qcong/engine/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcong/arith.hpp"
#include "qcong/engine/characterize.hpp"
#include "qcong/engine/claims.hpp"
#include "qcong/engine/density.hpp"
#include "qcong/engine/identities.hpp"
#include "qcong/engine/report.hpp"
#include "qcong/etaq.hpp"
#include "qcong/hecke.hpp"

#ifndef QCONG_DEFAULT_DATA_DIR
#define QCONG_DEFAULT_DATA_DIR "data"
#endif
#ifndef QCONG_VERSION
#define QCONG_VERSION "0.0.0"
#endif

namespace qcong::engine {

using nlohmann::json;

std::filesystem::path data_dir() {
    if (const char* env = std::getenv("QCONG_DATA_DIR"); env && *env) return env;
    return QCONG_DEFAULT_DATA_DIR;
}

namespace {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<std::int64_t> exponents_over_divisors(const json& obj, std::uint64_t n, const char* what) {
    const auto divs = arith::divisors(n);
    std::vector<std::int64_t> out(divs.size(), 0);
    for (const auto& [key, value] : obj.items()) {
        const std::uint64_t delta = std::stoull(key);
        const auto it = std::find(divs.begin(), divs.end(), delta);
        if (it == divs.end()) throw ConfigError(std::string(what) + ": " + key + " does not divide " + std::to_string(n));
        out[static_cast<std::size_t>(it - divs.begin())] = value.get<std::int64_t>();
    }
    return out;
}

}  // namespace

RaduFixture load_radu_fixture(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string());
    try {
        const json j = json::parse(in);
        RaduFixture f;
        f.id = j.value("id", path.stem().string());
        const auto M = j.at("M").get<std::uint64_t>(), N = j.at("N").get<std::uint64_t>();
        f.instance = radu::RaduInstance::make(
            j.at("m").get<std::uint64_t>(), M, N, j.at("t").get<std::uint64_t>(),
            exponents_over_divisors(j.at("r"), M, "r"),
            exponents_over_divisors(j.value("r_prime", json::object()), N, "r_prime"));
        f.u = j.at("u").get<std::uint64_t>();
        if (j.contains("target")) {
            f.target = PartitionFamily::parse(j["target"].at("family").get<std::string>(),
                                              j["target"].at("c").get<std::int64_t>());
        }
        if (j.contains("depth")) f.depth = j["depth"].get<std::int64_t>();
        f.status = j.value("status", "theorem");
        return f;
    } catch (const json::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

namespace {

struct Globals {
    std::optional<std::size_t> depth;
    std::optional<std::size_t> order;
    std::optional<std::uint64_t> mod;
    std::string json_path;
    std::size_t parallel = std::max(1u, std::thread::hardware_concurrency());
    std::uint64_t seed = 0x5eed;
    bool include_conjectures = false;
};

std::string rational_str(const mpq_class& q) { return q.get_str(); }

std::string fixed(const mpq_class& q) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << q.get_d();
    return os.str();
}

void finish(const Globals& g, Report& report, std::ostream& out) {
    if (g.json_path.empty()) return;
    report.tool_version = QCONG_VERSION;
    report.environment = environment_fingerprint();
    write_report(report, g.json_path);
    out << "report written to " << g.json_path << '\n';
}

// --- expand ------------------------------------------------------------------

int cmd_expand(const Globals& g, const std::string& family, std::int64_t c, std::ostream& out) {
    const auto f = PartitionFamily::parse(family, c);
    const std::size_t order = g.order.value_or(20);
    const Ring ring = g.mod ? Ring::mod(*g.mod) : Ring::exact();
    const Series s = genfun(f, ring, order);
    for (std::size_t n = 0; n < order; ++n) out << (n ? ", " : "") << s.coeff(n).get_str();
    out << '\n';
    return kExitPass;
}

// --- claim -------------------------------------------------------------------

int cmd_claim(const Globals& g, const std::vector<std::string>& ids, bool all, const std::string& catalog_path,
              bool sample, std::ostream& out) {
    const auto catalog = load_catalog(catalog_path.empty() ? data_dir() / "claims.json" : std::filesystem::path(catalog_path));
    std::vector<Claim> chosen;
    if (all) {
        for (const auto& c : catalog) {
            if (c.status == ClaimStatus::Theorem || g.include_conjectures) chosen.push_back(c);
        }
    } else {
        for (const auto& id : ids) {
            const auto it = std::find_if(catalog.begin(), catalog.end(), [&](const Claim& c) { return c.id == id; });
            if (it == catalog.end()) throw ConfigError("unknown claim id '" + id + "'");
            if (it->status == ClaimStatus::Conjecture && !g.include_conjectures) {
                throw ConfigError("claim '" + id + "' is a conjecture; pass --include-conjectures");
            }
            chosen.push_back(*it);
        }
    }
    if (chosen.empty()) throw ConfigError("no claims selected; use --id or --all");

    if (sample) {
        // One random point of each claim's parameter grid.
        std::mt19937_64 rng(g.seed);
        for (auto& c : chosen) {
            for (auto& [name, range] : c.ranges) {
                const std::int64_t v = std::uniform_int_distribution<std::int64_t>(range.first, range.second)(rng);
                range = {v, v};
            }
        }
    }

    const auto results = run_claims(chosen, g.parallel, g.depth);
    Report report;
    bool failed = false;
    for (const auto& r : results) {
        out << std::left << std::setw(28) << r.id << ' ' << r.summary() << "  (" << r.count(Outcome::Pass)
            << " pass, " << r.count(Outcome::Fail) << " fail, " << r.count(Outcome::Skipped) << " skipped, "
            << static_cast<long>(r.wall_ms) << " ms)\n";
        for (const auto& v : r.instances) {
            if (v.outcome == Outcome::Fail) {
                out << "    c=" << v.c << ": coefficient at " << v.A << "*" << *v.witness_n << "+" << v.B << " is "
                    << *v.witness_value << " mod " << v.modulus << '\n';
            } else if (v.outcome == Outcome::Skipped) {
                out << "    skipped " << v.note << '\n';
            }
        }
        failed = failed || !r.ok();
        report.claims.push_back(r);
    }
    finish(g, report, out);
    return failed ? kExitFail : kExitPass;
}

// --- identity ----------------------------------------------------------------

int cmd_identity(const Globals& g, const std::vector<std::string>& ids, std::ostream& out) {
    auto catalog = identity_catalog();
    if (!ids.empty()) {
        std::vector<IdentityCase> chosen;
        for (const auto& id : ids) {
            const auto it = std::find_if(catalog.begin(), catalog.end(), [&](const auto& c) { return c.id == id; });
            if (it == catalog.end()) throw ConfigError("unknown identity id '" + id + "'");
            chosen.push_back(*it);
        }
        catalog = std::move(chosen);
    }
    Report report;
    bool failed = false;
    for (const auto& c : catalog) {
        const auto v = verify_identity(c, g.order);
        out << std::left << std::setw(28) << c.id << ' ' << (v.equal ? "equal" : "MISMATCH") << " to order "
            << v.order;
        if (c.modulus) out << " mod " << *c.modulus;
        if (v.first_mismatch) out << "  first difference at q^" << *v.first_mismatch;
        if (!v.error.empty()) out << "  error: " << v.error;
        out << '\n';
        failed = failed || !v.equal;
        report.identities.push_back(v);
    }
    finish(g, report, out);
    return failed ? kExitFail : kExitPass;
}

// --- radu --------------------------------------------------------------------

int cmd_radu(const Globals& g, const std::string& file, std::ostream& out) {
    const auto f = load_radu_fixture(file);
    radu::SeriesHook hook;
    if (f.target) hook = [fam = *f.target](Ring r, std::size_t n) { return genfun(fam, r, n); };
    const auto depth = g.depth ? std::optional<std::int64_t>(static_cast<std::int64_t>(*g.depth)) : f.depth;
    const auto v = radu::radu_verify(f.instance, f.u, hook, depth);

    out << f.instance.to_string() << "  u=" << f.u << '\n';
    out << "Delta*: ";
    for (std::size_t i = 0; i < 6; ++i) out << (v.delta_star.conditions[i] ? 'T' : 'F');
    out << "  parity branch " << radu::to_string(v.delta_star.branch) << '\n';
    out << "P(t)={";
    bool first = true;
    for (auto t : v.orbit.P) {
        out << (first ? "" : ",") << t;
        first = false;
    }
    out << "}  t_min=" << v.orbit.t_min << '\n';
    for (const auto& [c, s] : v.p_sums) out << "p+p' at delta=" << c << ": " << rational_str(s) << '\n';
    out << "nu=" << rational_str(v.nu) << "  floor(nu)=" << v.floor_nu << "  checked n<=" << v.depth << '\n';
    if (v.hook_agrees) out << "eta-product matches target series: " << (*v.hook_agrees ? "yes" : "no") << '\n';
    if (v.refuted_at) {
        out << "counterexample at n=" << v.refuted_at->first << ", t'=" << v.refuted_at->second << '\n';
    }
    for (const auto& msg : v.failures) out << "hypothesis failure: " << msg << '\n';
    out << radu::to_string(v.status) << '\n';

    Report report;
    json pj = json::object();
    for (const auto& [c, s] : v.p_sums) pj[std::to_string(c)] = rational_str(s);
    report.extra["radu"] = {{"id", f.id},
                            {"delta_star", v.delta_star.conditions},
                            {"P", v.orbit.P},
                            {"nu", rational_str(v.nu)},
                            {"floor_nu", v.floor_nu},
                            {"depth", v.depth},
                            {"p_sums", pj},
                            {"status", radu::to_string(v.status)},
                            {"failures", v.failures}};
    finish(g, report, out);
    return v.status == radu::RaduStatus::Refuted || v.status == radu::RaduStatus::HypothesisFailed ? kExitFail
                                                                                                   : kExitPass;
}

// --- eta ---------------------------------------------------------------------

etaq::ExponentMap parse_exponents(const std::vector<std::string>& specs) {
    etaq::ExponentMap r;
    for (const auto& s : specs) {
        const auto colon = s.find(':');
        if (colon == std::string::npos) throw ConfigError("exponent '" + s + "' is not delta:r");
        try {
            r[std::stoull(s.substr(0, colon))] += std::stoll(s.substr(colon + 1));
        } catch (const std::exception&) {
            throw ConfigError("exponent '" + s + "' is not delta:r");
        }
    }
    return r;
}

int cmd_eta(const Globals& g, const std::vector<std::string>& specs, std::uint64_t level, bool relaxed,
            std::ostream& out) {
    const auto r = parse_exponents(specs);
    const etaq::EtaQuotient e = level ? etaq::EtaQuotient(level, r, relaxed ? etaq::LevelCheck::Relaxed
                                                                            : etaq::LevelCheck::Strict)
                                      : etaq::EtaQuotient::at_minimal_level(r);
    const auto meta = etaq::form_meta(e);
    out << "level " << meta.level << "  weight " << meta.weight.to_string() << "  character disc "
        << meta.character_discriminant << '\n';
    out << "24-conditions " << meta.cond24.first << meta.cond24.second << "  holomorphic " << meta.holomorphic
        << "  deltas divide level " << meta.exponents_divide_level << '\n';
    out << "index " << meta.index << "  sturm bound " << meta.sturm_bound << '\n';
    json orders = json::object();
    for (const auto& [d, o] : meta.cusp_orders) {
        out << "  order at d=" << d << ": " << o.get_str() << '\n';
        orders[std::to_string(d)] = o.get_str();
    }
    Report report;
    report.extra["eta"] = {{"level", meta.level},
                           {"weight", meta.weight.to_string()},
                           {"character_discriminant", meta.character_discriminant},
                           {"holomorphic", meta.holomorphic},
                           {"sturm_bound", meta.sturm_bound},
                           {"cusp_orders", orders}};
    finish(g, report, out);
    return kExitPass;
}

// --- hecke -------------------------------------------------------------------

int cmd_hecke(const Globals& g, std::int64_t c, std::ostream& out) {
    Report report;
    report.extra["hecke"] = json::array();
    bool failed = false, found = false;
    for (const auto& row : hecke::isolated_rows()) {
        if (c != 0 && row.c != c) continue;
        found = true;
        const auto v = g.depth ? hecke::verify_thm1_row(row, *g.depth) : hecke::verify_thm1_row(row);
        out << "a_" << row.c << "(" << row.p << "n+" << row.residue << ") mod " << row.p << ": level " << v.level
            << ", weight " << v.weight << ", sturm " << v.sturm << ", checked to " << v.depth << " -> "
            << hecke::to_string(v.status);
        if (v.first_failure) out << " (first failure n=" << *v.first_failure << ")";
        out << '\n';
        failed = failed || v.status == hecke::RowStatus::Failed;
        report.extra["hecke"].push_back({{"c", row.c},
                                         {"p", row.p},
                                         {"b", row.residue},
                                         {"level", v.level},
                                         {"weight", v.weight},
                                         {"sturm", v.sturm},
                                         {"depth", v.depth},
                                         {"status", hecke::to_string(v.status)}});
    }
    if (!found) throw ConfigError("no table row with c=" + std::to_string(c));
    finish(g, report, out);
    return failed ? kExitFail : kExitPass;
}

// --- density / characterize --------------------------------------------------

int cmd_density(const Globals& g, const std::string& family, std::int64_t c, std::uint64_t X, std::uint64_t stride,
                std::ostream& out) {
    if (!g.mod) throw ConfigError("density needs --mod");
    const auto d = estimate_density(PartitionFamily::parse(family, c), *g.mod, X, stride);
    out << "density of " << PartitionFamily::parse(family, c).label() << " == 0 mod " << *g.mod << " on n<=" << X
        << ": " << d.get_str() << " = " << fixed(d) << '\n';
    Report report;
    report.extra["density"] = {{"family", family}, {"c", c},       {"modulus", *g.mod},
                               {"X", X},           {"stride", stride}, {"density", d.get_str()}};
    finish(g, report, out);
    return kExitPass;
}

int cmd_characterize(const Globals& g, std::int64_t c_max, std::uint64_t n_max, std::ostream& out) {
    const std::uint64_t mod = g.mod.value_or(0);
    if (mod != 0 && mod != 4 && mod != 8) throw ConfigError("characterize supports --mod 4 or 8");
    Report report;
    report.extra["characterize"] = json::array();
    bool failed = false;
    for (std::int64_t c = 1; c <= c_max; ++c) {
        for (std::uint64_t m : {4u, 8u}) {
            if (mod && m != mod) continue;
            const auto v = m == 4 ? check_characterization_mod4(c, n_max) : check_characterization_mod8(c, n_max);
            out << "abar_" << c << " mod " << m << " for n<=" << n_max << ": " << (v.pass ? "pass" : "FAIL");
            if (v.first_failure) {
                out << " at n=" << *v.first_failure << " (expected " << v.expected << ", got " << v.actual << ")";
            }
            out << '\n';
            failed = failed || !v.pass;
            report.extra["characterize"].push_back({{"c", c}, {"modulus", m}, {"n_max", n_max}, {"pass", v.pass}});
        }
    }
    finish(g, report, out);
    return failed ? kExitFail : kExitPass;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Verify congruences for generalized cubic and overcubic partitions", "qcong"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", QCONG_VERSION);

    Globals g;
    app.add_option("--depth", g.depth, "Largest n checked on each progression");
    app.add_option("--order", g.order, "Series order");
    app.add_option("--mod", g.mod, "Coefficient modulus")->check(CLI::Range(std::uint64_t{2}, Ring::kMaxModulus));
    app.add_option("--json", g.json_path, "Write a JSON report to this path");
    app.add_option("--parallel", g.parallel, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--seed", g.seed, "Seed for randomized sampling");
    app.add_flag("--include-conjectures", g.include_conjectures, "Also run conjectural entries");

    std::string family = "a";
    std::int64_t c = 1;

    auto* expand = app.add_subcommand("expand", "Print generating-function coefficients");
    expand->add_option("--family", family, "a or abar")->check(CLI::IsMember({"a", "abar"}));
    expand->add_option("--c", c, "Subscript c")->check(CLI::PositiveNumber);

    std::vector<std::string> ids;
    bool all = false;
    std::string catalog;
    bool sample = false;
    auto* claim = app.add_subcommand("claim", "Run claim catalog entries");
    claim->add_option("--id", ids, "Claim id (repeatable)");
    claim->add_flag("--all", all, "Run every entry");
    claim->add_option("--catalog", catalog, "Catalog file")->check(CLI::ExistingFile);
    claim->add_flag("--sample", sample, "Run one random instantiation per claim (uses --seed)");

    auto* identity = app.add_subcommand("identity", "Run the identity catalog");
    identity->add_option("--id", ids, "Identity id (repeatable)");

    std::string file;
    auto* radu_cmd = app.add_subcommand("radu", "Check a Radu instance file");
    radu_cmd->add_option("--file", file, "Instance JSON")->required()->check(CLI::ExistingFile);

    std::vector<std::string> exps;
    std::uint64_t level = 0;
    bool relaxed = false;
    auto* eta = app.add_subcommand("eta", "Modular-form data for an eta quotient");
    eta->add_option("--exp", exps, "delta:r (repeatable)")->required();
    eta->add_option("--level", level, "Level (default: minimal)");
    eta->add_flag("--relaxed", relaxed, "Allow deltas that do not divide the level");

    std::int64_t row_c = 0;
    auto* hecke_cmd = app.add_subcommand("hecke", "Sturm-bound check of the isolated congruences");
    hecke_cmd->add_option("--c", row_c, "Row subscript (default: all rows)");

    std::uint64_t X = 10000, stride = 1;
    auto* density = app.add_subcommand("density", "Proportion of vanishing coefficients");
    density->add_option("--family", family, "a or abar")->check(CLI::IsMember({"a", "abar"}));
    density->add_option("--c", c, "Subscript c")->check(CLI::PositiveNumber);
    density->add_option("--x", X, "Upper limit X")->check(CLI::PositiveNumber);
    density->add_option("--stride", stride, "Sample every stride-th n")->check(CLI::PositiveNumber);

    std::int64_t c_max = 12;
    std::uint64_t n_max = 5000;
    auto* characterize = app.add_subcommand("characterize", "Check the mod 4 and mod 8 residue formulas");
    characterize->add_option("--c-max", c_max, "Check c = 1..c-max")->check(CLI::PositiveNumber);
    characterize->add_option("--n-max", n_max, "Check n = 1..n-max")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (expand->parsed()) return cmd_expand(g, family, c, out);
        if (claim->parsed()) return cmd_claim(g, ids, all, catalog, sample, out);
        if (identity->parsed()) return cmd_identity(g, ids, out);
        if (radu_cmd->parsed()) return cmd_radu(g, file, out);
        if (eta->parsed()) return cmd_eta(g, exps, level, relaxed, out);
        if (hecke_cmd->parsed()) return cmd_hecke(g, row_c, out);
        if (density->parsed()) return cmd_density(g, family, c, X, stride, out);
        if (characterize->parsed()) return cmd_characterize(g, c_max, n_max, out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const CatalogError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ReportError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace qcong::engine
