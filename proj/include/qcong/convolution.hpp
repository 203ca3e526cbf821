#pragma once

// Residue-ring convolution kernels behind Series::mul.
//
// Small products use schoolbook multiplication with 128-bit accumulation.
// Large ones go through a three-prime NTT with CRT reconstruction, which is
// exact as long as out_len * (m - 1)^2 stays below the product of the three
// primes (about 2^89); with m < 2^31 that covers any length the transform
// supports.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qcong::conv {

/// Largest transform length supported by the NTT path.
inline constexpr std::size_t kMaxTransform = std::size_t{1} << 23;

/// (a * b) mod m, truncated to out_len coefficients.
std::vector<std::uint64_t> multiply_mod(std::span<const std::uint64_t> a,
                                        std::span<const std::uint64_t> b,
                                        std::size_t out_len, std::uint64_t m);

std::vector<std::uint64_t> schoolbook_mod(std::span<const std::uint64_t> a,
                                          std::span<const std::uint64_t> b,
                                          std::size_t out_len, std::uint64_t m);

std::vector<std::uint64_t> ntt_mod(std::span<const std::uint64_t> a,
                                   std::span<const std::uint64_t> b,
                                   std::size_t out_len, std::uint64_t m);

/// Rough operation count of multiply_mod, used to pick between sparse and
/// dense strategies.
double estimated_cost(std::size_t la, std::size_t lb, std::size_t out_len);

}  // namespace qcong::conv
