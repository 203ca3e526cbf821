#pragma once

#include <cstdint>

#include <gmpxx.h>

#include "qcong/qfuncs.hpp"

namespace qcong::engine {

/// #{1 <= n <= X : coefficient of q^n == 0 mod modulus} / #{n sampled}.
/// With stride s > 1 only n = s, 2s, ... are sampled.
mpq_class estimate_density(const PartitionFamily& family, std::uint64_t modulus, std::uint64_t X,
                           std::uint64_t stride = 1);

}  // namespace qcong::engine
