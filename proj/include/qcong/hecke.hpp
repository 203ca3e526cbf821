#pragma once

// Hecke operator T_p on truncated q-expansions, the Sturm-bound pipeline for
// the isolated congruences a_c(pn + b) == 0 (mod p), and a direct coefficient
// check used as an independent witness.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qcong/etaq.hpp"
#include "qcong/qfuncs.hpp"
#include "qcong/series.hpp"

namespace qcong::hecke {

struct HeckeContext {
    std::uint64_t p;
    std::int64_t weight;
    std::function<int(std::int64_t)> character;
    Ring ring;

    /// Validates p prime and weight >= 1.
    HeckeContext(std::uint64_t p, std::int64_t weight, std::function<int(std::int64_t)> character, Ring ring);
};

/// sum_n (a(pn) + chi(p) p^(l-1) a(n/p)) q^n, order floor(order(f)/p).
Series apply_Tp(const HeckeContext& ctx, const Series& f);

/// One row of the isolated-congruence table: G(z) = eta(z)^a / eta(2z)^(c-1)
/// = q^s * sum a_c(n) q^n * f_1^e with e = a + 1, s = (a - 2(c-1))/24.
struct Thm1Row {
    std::int64_t c;
    std::uint64_t p;
    std::uint64_t residue;
    std::int64_t eta_exponent;  // e
    std::int64_t shift;         // s

    /// Row data from the eta exponent a alone.
    static Thm1Row from_eta(std::int64_t c, std::uint64_t p, std::uint64_t residue, std::int64_t a);
    etaq::ExponentMap eta_quotient() const;
};

/// The seven rows (c, p, b, a) of the isolated-congruence table.
const std::vector<Thm1Row>& isolated_rows();

enum class RowStatus { Proved, Failed, Insufficient };
std::string to_string(RowStatus s);

struct Thm1Verdict {
    RowStatus status = RowStatus::Insufficient;
    std::uint64_t level = 0;
    std::int64_t weight = 0;
    std::uint64_t sturm = 0;
    std::size_t depth = 0;
    std::size_t expansion_order = 0;
    bool cond24 = false;
    bool holomorphic = false;
    bool integral_weight = false;
    /// The image's constant term, reported on its own.
    bool constant_term_zero = false;
    /// First index n <= depth where the image or its residue-side form is nonzero mod p.
    std::optional<std::size_t> first_failure;
};

/// Builds G mod p at order p(depth + 2), applies T_p and checks every
/// coefficient up to depth, together with the residue-side expression
/// q * sum a_c(pn + b) q^n * f_1^(e/p).
Thm1Verdict verify_thm1_row(const Thm1Row& row, std::size_t depth);
/// Depth defaults to the Sturm bound of the row's space.
Thm1Verdict verify_thm1_row(const Thm1Row& row);

struct DirectVerdict {
    bool pass = false;
    std::size_t checked = 0;
    std::optional<std::size_t> first_failure;  // n with coefficient at A n + B nonzero mod u
};

/// coefficient of q^(An+B) == 0 (mod u) for every 0 <= n <= depth.
DirectVerdict direct_congruence(const PartitionFamily& f, std::uint64_t A, std::uint64_t B, std::uint64_t u,
                                std::size_t depth);

}  // namespace qcong::hecke
