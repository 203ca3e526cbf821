#include "qcong/engine/density.hpp"

#include <stdexcept>

namespace qcong::engine {

mpq_class estimate_density(const PartitionFamily& family, std::uint64_t modulus, std::uint64_t X,
                           std::uint64_t stride) {
    if (X < 1) throw std::invalid_argument("estimate_density: X must be >= 1");
    if (stride < 1 || stride > X) throw std::invalid_argument("estimate_density: stride must lie in [1, X]");
    const Series s = genfun(family, Ring::mod(modulus), X + 1);
    std::uint64_t hits = 0, sampled = 0;
    for (std::uint64_t n = stride; n <= X; n += stride) {
        ++sampled;
        hits += s.residues()[n] == 0;
    }
    mpq_class out{mpz_class(hits), mpz_class(sampled)};
    out.canonicalize();
    return out;
}

}  // namespace qcong::engine
