#pragma once

// Parameterized congruence claims: family_c(A n + B) == 0 (mod u) where c, A,
// B and u are integer expressions over parameters such as i, k, alpha.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qcong/engine/expr.hpp"

namespace qcong::engine {

enum class ClaimStatus { Theorem, Conjecture };
std::string to_string(ClaimStatus s);

struct Claim {
    std::string id;
    std::string label;  // theorem/equation this entry traces to
    std::string family; // "a" or "abar"
    Expr c;
    Expr A;
    Expr B;
    Expr modulus;
    std::map<std::string, std::pair<std::int64_t, std::int64_t>> ranges;
    std::size_t depth = 1000;
    ClaimStatus status = ClaimStatus::Theorem;
};

class CatalogError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Claim claim_from_json(const nlohmann::json& j);
nlohmann::json claim_to_json(const Claim& c);
std::vector<Claim> load_catalog(const std::filesystem::path& path);

enum class Outcome { Pass, Fail, Skipped };
std::string to_string(Outcome o);

struct InstanceVerdict {
    Bindings params;
    std::int64_t c = 0;
    std::int64_t A = 0;
    std::int64_t B = 0;
    std::int64_t modulus = 0;
    Outcome outcome = Outcome::Skipped;
    std::size_t depth = 0;
    std::optional<std::size_t> witness_n;   // first n with a nonzero residue
    std::optional<std::string> witness_value;
    std::string note;                       // reason for a skip

    friend bool operator==(const InstanceVerdict&, const InstanceVerdict&) = default;
};

struct ClaimResult {
    std::string id;
    std::string label;
    ClaimStatus status = ClaimStatus::Theorem;
    std::vector<InstanceVerdict> instances;
    double wall_ms = 0;

    std::size_t count(Outcome o) const;
    /// Nothing failed and at least one instantiation was in range. A conjecture
    /// counterexample fails too.
    bool ok() const { return count(Outcome::Fail) == 0 && count(Outcome::Pass) > 0; }
    /// "pass", "FAIL", "consistent to depth d", "COUNTEREXAMPLE" or "NO VALID INSTANTIATIONS".
    std::string summary() const;

    friend bool operator==(const ClaimResult&, const ClaimResult&) = default;
};

/// Every parameter binding in the claim's ranges, in lexicographic order.
std::vector<Bindings> instantiations(const Claim& c);

/// Expands the generating function once per instantiation. A short probe is
/// run first so that counterexamples at small n are found without expanding
/// to full depth.
ClaimResult verify_claim(const Claim& claim, std::optional<std::size_t> depth_override = std::nullopt);

/// Verifies claims on a pool of `workers` threads; results keep catalog order.
std::vector<ClaimResult> run_claims(const std::vector<Claim>& claims, std::size_t workers,
                                    std::optional<std::size_t> depth_override = std::nullopt);

}  // namespace qcong::engine
