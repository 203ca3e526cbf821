#pragma once

// Closed-form residues of abar_c(n) modulo 4 and 8 in terms of how n is
// represented by squares, checked against the expanded series.

#include <cstdint>
#include <optional>

namespace qcong::engine {

/// #{(k, l) : k, l >= 1, k^2 + 2 l^2 = n}.
std::uint64_t count_k2_plus_2l2(std::uint64_t n);

/// Predicted abar_c(n) mod 4 for n >= 1: 2[n square] + 2(c+1)[n = 2k^2].
std::uint64_t predict_mod4(std::int64_t c, std::uint64_t n);

/// Predicted abar_c(n) mod 8 for n >= 1. Every class containing n contributes,
/// and k^2 + 2l^2 contributes once per representation:
///   2[n = k^2] + 2(c+1)[n = 2(2k-1)^2] + 6(c+1)[n = 2(2k)^2]
///   + 2(c+1)(c+2)[n = 4k^2] + 4(c+1) #{k^2 + 2l^2 = n}.
std::uint64_t predict_mod8(std::int64_t c, std::uint64_t n);

struct CharacterizationVerdict {
    bool pass = false;
    std::int64_t c = 0;
    std::uint64_t modulus = 0;
    std::uint64_t n_max = 0;
    std::optional<std::uint64_t> first_failure;
    std::uint64_t expected = 0;
    std::uint64_t actual = 0;
};

CharacterizationVerdict check_characterization_mod4(std::int64_t c, std::uint64_t n_max);
CharacterizationVerdict check_characterization_mod8(std::int64_t c, std::uint64_t n_max);

}  // namespace qcong::engine
