#include "qcong/convolution.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace qcong::conv {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 powmod(u64 b, u64 e, u64 m) {
    u64 r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = static_cast<u64>(static_cast<u128>(r) * b % m);
        b = static_cast<u64>(static_cast<u128>(b) * b % m);
        e >>= 1;
    }
    return r;
}

// All three primes have primitive root 3.
constexpr std::array<u64, 3> kPrimes{998244353, 167772161, 469762049};

void transform(std::vector<u64>& a, u64 p, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        u64 w = powmod(3, (p - 1) / len, p);
        if (inverse) w = powmod(w, p - 2, p);
        const std::size_t half = len / 2;
        std::vector<u64> tw(half);
        tw[0] = 1;
        for (std::size_t i = 1; i < half; ++i) tw[i] = tw[i - 1] * w % p;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < half; ++j) {
                const u64 u = a[i + j];
                const u64 v = a[i + j + half] * tw[j] % p;
                a[i + j] = u + v >= p ? u + v - p : u + v;
                a[i + j + half] = u >= v ? u - v : u + p - v;
            }
        }
    }
    if (inverse) {
        const u64 inv_n = powmod(n, p - 2, p);
        for (auto& x : a) x = x * inv_n % p;
    }
}

std::vector<u64> convolve_prime(std::span<const u64> a, std::span<const u64> b,
                                std::size_t size, u64 p, bool square) {
    std::vector<u64> fa(size, 0);
    for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i] % p;
    transform(fa, p, false);
    if (square) {
        for (auto& x : fa) x = x * x % p;
    } else {
        std::vector<u64> fb(size, 0);
        for (std::size_t i = 0; i < b.size(); ++i) fb[i] = b[i] % p;
        transform(fb, p, false);
        for (std::size_t i = 0; i < size; ++i) fa[i] = fa[i] * fb[i] % p;
    }
    transform(fa, p, true);
    return fa;
}

}  // namespace

std::vector<u64> schoolbook_mod(std::span<const u64> a, std::span<const u64> b,
                                std::size_t out_len, u64 m) {
    std::vector<u64> out(out_len, 0);
    const std::size_t la = std::min(a.size(), out_len);
    const std::size_t lb = std::min(b.size(), out_len);
    for (std::size_t n = 0; n < out_len; ++n) {
        const std::size_t lo = n + 1 > lb ? n + 1 - lb : 0;
        const std::size_t hi = std::min(n + 1, la);
        u128 acc = 0;
        for (std::size_t i = lo; i < hi; ++i) acc += static_cast<u128>(a[i] * b[n - i]);
        out[n] = static_cast<u64>(acc % m);
    }
    return out;
}

std::vector<u64> ntt_mod(std::span<const u64> a, std::span<const u64> b,
                         std::size_t out_len, u64 m) {
    a = a.first(std::min(a.size(), out_len));
    b = b.first(std::min(b.size(), out_len));
    if (a.empty() || b.empty()) return std::vector<u64>(out_len, 0);
    const std::size_t full = a.size() + b.size() - 1;
    const std::size_t size = std::bit_ceil(full);
    if (size > kMaxTransform) throw std::length_error("ntt_mod: transform too long");
    const bool square = a.data() == b.data() && a.size() == b.size();

    std::array<std::vector<u64>, 3> r;
    for (std::size_t k = 0; k < 3; ++k) r[k] = convolve_prime(a, b, size, kPrimes[k], square);

    const u64 p0 = kPrimes[0], p1 = kPrimes[1], p2 = kPrimes[2];
    const u64 inv_p0_mod_p1 = powmod(p0, p1 - 2, p1);
    const u64 p0p1_mod_p2 = p0 % p2 * (p1 % p2) % p2;
    const u64 inv_p0p1_mod_p2 = powmod(p0p1_mod_p2, p2 - 2, p2);
    const u64 p0_mod_m = p0 % m;
    const u64 p0p1_mod_m = static_cast<u64>(static_cast<u128>(p0) * p1 % m);

    std::vector<u64> out(out_len, 0);
    const std::size_t upto = std::min(out_len, full);
    for (std::size_t i = 0; i < upto; ++i) {
        // Garner: x = x0 + p0*k1 + p0*p1*k2 with 0 <= k1 < p1, 0 <= k2 < p2.
        const u64 x0 = r[0][i];
        const u64 k1 = (r[1][i] + p1 - x0 % p1) % p1 * inv_p0_mod_p1 % p1;
        const u64 partial_mod_p2 = (x0 % p2 + p0 % p2 * k1) % p2;
        const u64 k2 = (r[2][i] + p2 - partial_mod_p2) % p2 * inv_p0p1_mod_p2 % p2;
        const u128 v = static_cast<u128>(x0 % m) + static_cast<u128>(p0_mod_m) * (k1 % m) +
                       static_cast<u128>(p0p1_mod_m) * (k2 % m);
        out[i] = static_cast<u64>(v % m);
    }
    return out;
}

double estimated_cost(std::size_t la, std::size_t lb, std::size_t out_len) {
    la = std::min(la, out_len);
    lb = std::min(lb, out_len);
    const double school = static_cast<double>(std::min(la, lb)) * static_cast<double>(out_len);
    const double size = static_cast<double>(std::bit_ceil(la + lb));
    const double ntt = 9.0 * 3.0 * size * std::log2(size);
    return std::min(school, ntt);
}

std::vector<u64> multiply_mod(std::span<const u64> a, std::span<const u64> b,
                              std::size_t out_len, u64 m) {
    const std::size_t la = std::min(a.size(), out_len);
    const std::size_t lb = std::min(b.size(), out_len);
    const double school = static_cast<double>(std::min(la, lb)) * static_cast<double>(out_len);
    const double size = static_cast<double>(std::bit_ceil(la + lb));
    if (std::min(la, lb) < 64 || school < 9.0 * 3.0 * size * std::log2(size) ||
        std::bit_ceil(la + lb) > kMaxTransform) {
        return schoolbook_mod(a, b, out_len, m);
    }
    return ntt_mod(a, b, out_len, m);
}

}  // namespace qcong::conv
