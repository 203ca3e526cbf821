#pragma once

// Machine-readable run reports. parse(emit(r)) == r.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcong/engine/claims.hpp"
#include "qcong/engine/identities.hpp"

namespace qcong::engine {

inline constexpr int kSchemaVersion = 1;

struct Report {
    int schema_version = kSchemaVersion;
    std::string tool_version;
    nlohmann::json environment = nlohmann::json::object();
    std::vector<ClaimResult> claims;
    std::vector<IdentityVerdict> identities;
    /// Free-form sections for the other subcommands (radu, hecke, density, ...).
    nlohmann::json extra = nlohmann::json::object();

    friend bool operator==(const Report&, const Report&) = default;
};

class ReportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Compiler, GMP version and hardware concurrency.
nlohmann::json environment_fingerprint();

nlohmann::json to_json(const InstanceVerdict& v);
nlohmann::json to_json(const ClaimResult& r);
nlohmann::json to_json(const IdentityVerdict& v);
nlohmann::json to_json(const Report& r);

Report report_from_json(const nlohmann::json& j);

std::string emit(const Report& r);
Report parse(const std::string& text);
void write_report(const Report& r, const std::filesystem::path& path);

}  // namespace qcong::engine
