#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "qcong/qfuncs.hpp"
#include "qcong/radu.hpp"

namespace qcong::engine {

enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitUsage = 2 };

/// $QCONG_DATA_DIR if set, otherwise the data directory of the source tree.
std::filesystem::path data_dir();

struct RaduFixture {
    std::string id;
    radu::RaduInstance instance;
    std::uint64_t u = 0;
    /// Generating function the eta-product is congruent to, if named.
    std::optional<PartitionFamily> target;
    std::optional<std::int64_t> depth;
    std::string status = "theorem";
};

/// {m, M, N, t, r: {delta: exponent}, r_prime: {delta: exponent}, u}, plus
/// optional id, target {family, c}, depth and status.
RaduFixture load_radu_fixture(const std::filesystem::path& path);

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qcong::engine
