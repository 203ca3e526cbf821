#include "qcong/engine/report.hpp"

#include <fstream>
#include <thread>

#include <gmp.h>

namespace qcong::engine {

using nlohmann::json;

json environment_fingerprint() {
#if defined(__clang__)
    const std::string compiler = "clang " __clang_version__;
#elif defined(__GNUC__)
    const std::string compiler = "gcc " __VERSION__;
#else
    const std::string compiler = "unknown";
#endif
    return {{"compiler", compiler},
            {"gmp", gmp_version},
            {"hardware_concurrency", std::thread::hardware_concurrency()},
            {"cxx_standard", static_cast<long>(__cplusplus)}};
}

json to_json(const InstanceVerdict& v) {
    json j = {{"params", v.params},
              {"c", v.c},
              {"A", v.A},
              {"B", v.B},
              {"modulus", v.modulus},
              {"verdict", to_string(v.outcome)},
              {"depth", v.depth}};
    if (v.witness_n) j["witness"] = {{"n", *v.witness_n}, {"value", v.witness_value.value_or("")}};
    if (!v.note.empty()) j["note"] = v.note;
    return j;
}

json to_json(const ClaimResult& r) {
    json inst = json::array();
    for (const auto& v : r.instances) inst.push_back(to_json(v));
    return {{"id", r.id},
            {"label", r.label},
            {"status", to_string(r.status)},
            {"summary", r.summary()},
            {"instantiations", inst},
            {"wall_ms", r.wall_ms}};
}

json to_json(const IdentityVerdict& v) {
    json j = {{"id", v.id}, {"equal", v.equal}, {"order", v.order}, {"wall_ms", v.wall_ms}};
    if (v.first_mismatch) {
        j["mismatch"] = {{"n", *v.first_mismatch}, {"lhs", v.lhs_value}, {"rhs", v.rhs_value}};
    }
    if (!v.error.empty()) j["error"] = v.error;
    return j;
}

json to_json(const Report& r) {
    json claims = json::array(), ids = json::array(), trace = json::array();
    for (const auto& c : r.claims) {
        claims.push_back(to_json(c));
        trace.push_back({{"id", c.id}, {"label", c.label}});
    }
    for (const auto& v : r.identities) ids.push_back(to_json(v));
    return {{"schema_version", r.schema_version},
            {"tool_version", r.tool_version},
            {"environment", r.environment},
            {"claims", claims},
            {"traceability", trace},
            {"identities", ids},
            {"extra", r.extra}};
}

namespace {

Outcome outcome_from(const std::string& s) {
    if (s == "pass") return Outcome::Pass;
    if (s == "fail") return Outcome::Fail;
    if (s == "skipped") return Outcome::Skipped;
    throw ReportError("unknown verdict '" + s + "'");
}

ClaimStatus status_from(const std::string& s) {
    if (s == "theorem") return ClaimStatus::Theorem;
    if (s == "conjecture") return ClaimStatus::Conjecture;
    throw ReportError("unknown status '" + s + "'");
}

InstanceVerdict instance_from(const json& j) {
    InstanceVerdict v;
    v.params = j.at("params").get<Bindings>();
    v.c = j.at("c").get<std::int64_t>();
    v.A = j.at("A").get<std::int64_t>();
    v.B = j.at("B").get<std::int64_t>();
    v.modulus = j.at("modulus").get<std::int64_t>();
    v.outcome = outcome_from(j.at("verdict").get<std::string>());
    v.depth = j.at("depth").get<std::size_t>();
    if (j.contains("witness")) {
        v.witness_n = j["witness"].at("n").get<std::size_t>();
        v.witness_value = j["witness"].at("value").get<std::string>();
    }
    v.note = j.value("note", "");
    return v;
}

}  // namespace

Report report_from_json(const json& j) {
    try {
        Report r;
        r.schema_version = j.at("schema_version").get<int>();
        if (r.schema_version != kSchemaVersion) {
            throw ReportError("unsupported schema_version " + std::to_string(r.schema_version));
        }
        r.tool_version = j.value("tool_version", "");
        r.environment = j.value("environment", json::object());
        for (const auto& c : j.at("claims")) {
            ClaimResult cr;
            cr.id = c.at("id").get<std::string>();
            cr.label = c.value("label", "");
            cr.status = status_from(c.at("status").get<std::string>());
            cr.wall_ms = c.at("wall_ms").get<double>();
            for (const auto& inst : c.at("instantiations")) cr.instances.push_back(instance_from(inst));
            r.claims.push_back(std::move(cr));
        }
        for (const auto& i : j.value("identities", json::array())) {
            IdentityVerdict v;
            v.id = i.at("id").get<std::string>();
            v.equal = i.at("equal").get<bool>();
            v.order = i.at("order").get<std::size_t>();
            v.wall_ms = i.at("wall_ms").get<double>();
            if (i.contains("mismatch")) {
                v.first_mismatch = i["mismatch"].at("n").get<std::size_t>();
                v.lhs_value = i["mismatch"].at("lhs").get<std::string>();
                v.rhs_value = i["mismatch"].at("rhs").get<std::string>();
            }
            v.error = i.value("error", "");
            r.identities.push_back(std::move(v));
        }
        r.extra = j.value("extra", json::object());
        return r;
    } catch (const json::exception& e) {
        throw ReportError(std::string("malformed report: ") + e.what());
    }
}

std::string emit(const Report& r) { return to_json(r).dump(2); }

Report parse(const std::string& text) {
    try {
        return report_from_json(json::parse(text));
    } catch (const json::parse_error& e) {
        throw ReportError(std::string("malformed report: ") + e.what());
    }
}

void write_report(const Report& r, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ReportError("cannot write " + path.string());
    out << emit(r) << '\n';
}

}  // namespace qcong::engine
