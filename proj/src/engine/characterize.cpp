#include "qcong/engine/characterize.hpp"

#include <stdexcept>

#include "qcong/arith.hpp"
#include "qcong/qfuncs.hpp"

namespace qcong::engine {

namespace {

bool is_square(std::uint64_t n) { return arith::is_perfect_square(n); }

/// k >= 1 with n = factor * k^2, or 0.
std::uint64_t root_of_multiple(std::uint64_t n, std::uint64_t factor) {
    if (n == 0 || n % factor != 0 || !is_square(n / factor)) return 0;
    return arith::isqrt(n / factor);
}

std::uint64_t mod_positive(std::int64_t v, std::uint64_t m) {
    const auto mm = static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(((v % mm) + mm) % mm);
}

CharacterizationVerdict check(std::int64_t c, std::uint64_t n_max, std::uint64_t modulus,
                              std::uint64_t (*predict)(std::int64_t, std::uint64_t)) {
    if (c < 1) throw std::invalid_argument("characterization: c must be >= 1");
    if (n_max < 1) throw std::invalid_argument("characterization: n_max must be >= 1");
    CharacterizationVerdict v;
    v.c = c;
    v.modulus = modulus;
    v.n_max = n_max;
    const Series s = genfun(PartitionFamily::overcubic(c), Ring::mod(modulus), n_max + 1);
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        const std::uint64_t want = predict(c, n), got = s.residues()[n];
        if (want != got) {
            v.first_failure = n;
            v.expected = want;
            v.actual = got;
            return v;
        }
    }
    v.pass = true;
    return v;
}

}  // namespace

std::uint64_t count_k2_plus_2l2(std::uint64_t n) {
    std::uint64_t count = 0;
    for (std::uint64_t l = 1; 2 * l * l < n; ++l) {
        if (is_square(n - 2 * l * l)) ++count;
    }
    return count;
}

std::uint64_t predict_mod4(std::int64_t c, std::uint64_t n) {
    std::int64_t r = 0;
    if (is_square(n)) r += 2;
    if (root_of_multiple(n, 2)) r += 2 * (c + 1);
    return mod_positive(r, 4);
}

std::uint64_t predict_mod8(std::int64_t c, std::uint64_t n) {
    std::int64_t r = 0;
    if (is_square(n)) r += 2;
    if (const std::uint64_t k = root_of_multiple(n, 2)) r += (k % 2 ? 2 : 6) * (c + 1);
    if (root_of_multiple(n, 4)) r += 2 * (c + 1) * (c + 2);
    r += 4 * (c + 1) * static_cast<std::int64_t>(count_k2_plus_2l2(n) % 2);
    return mod_positive(r, 8);
}

CharacterizationVerdict check_characterization_mod4(std::int64_t c, std::uint64_t n_max) {
    return check(c, n_max, 4, predict_mod4);
}

CharacterizationVerdict check_characterization_mod8(std::int64_t c, std::uint64_t n_max) {
    return check(c, n_max, 8, predict_mod8);
}

}  // namespace qcong::engine
