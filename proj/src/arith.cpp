#include "qcong/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qcong::arith {

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    while (exp--) r *= base;
    return r;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::optional<std::uint64_t> mod_inverse(std::uint64_t a, std::uint64_t m) {
    std::int64_t t = 0, new_t = 1;
    auto r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (r != 1) return std::nullopt;
    return static_cast<std::uint64_t>(mod_floor(t, static_cast<std::int64_t>(m)));
}

std::map<std::uint64_t, unsigned> factorize(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("factorize: zero");
    std::map<std::uint64_t, unsigned> f;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            ++f[p];
            n /= p;
        }
    }
    if (n > 1) ++f[n];
    return f;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (const auto& [p, e] : factorize(n)) out.push_back(p);
    return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out{1};
    for (const auto& [p, e] : factorize(n)) {
        const std::size_t base = out.size();
        std::uint64_t pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    const auto f = factorize(n);
    return f.size() == 1 && f.begin()->second == 1;
}

bool is_squarefree(std::uint64_t n) {
    const auto f = factorize(n);
    return std::all_of(f.begin(), f.end(), [](const auto& pe) { return pe.second == 1; });
}

std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t n) {
    if (n < 2) return std::nullopt;
    const auto f = factorize(n);
    if (f.size() != 1) return std::nullopt;
    return *f.begin();
}

int kronecker(std::int64_t a, std::int64_t n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    unsigned twos = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++twos;
    }
    if (twos > 0) {
        if (a % 2 == 0) return 0;
        const std::int64_t a8 = mod_floor(a, 8);
        if ((twos % 2 == 1) && (a8 == 3 || a8 == 5)) result = -result;
    }
    // Jacobi symbol (a / n) for odd positive n.
    std::int64_t x = mod_floor(a, n);
    std::int64_t y = n;
    while (x != 0) {
        while (x % 2 == 0) {
            x /= 2;
            const std::int64_t y8 = y % 8;
            if (y8 == 3 || y8 == 5) result = -result;
        }
        std::swap(x, y);
        if (x % 4 == 3 && y % 4 == 3) result = -result;
        x %= y;
    }
    return y == 1 ? result : 0;
}

std::int64_t floor_rational(const Rational& q) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    if (!f.fits_slong_p()) throw std::overflow_error("floor_rational: value out of range");
    return f.get_si();
}

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_perfect_square(std::uint64_t n) {
    const std::uint64_t r = isqrt(n);
    return r * r == n;
}

}  // namespace qcong::arith
