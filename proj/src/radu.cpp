#include "qcong/radu.hpp"

#include <numeric>
#include <sstream>

#include "qcong/arith.hpp"

namespace qcong::radu {

namespace {

mpz_class z(std::int64_t v) { return mpz_class(static_cast<long>(v)); }
mpz_class zu(std::uint64_t v) { return mpz_class(static_cast<unsigned long>(v)); }

Exponents over_divisors(std::uint64_t n, const std::vector<std::int64_t>& values, const char* what) {
    const auto divs = arith::divisors(n);
    if (!values.empty() && values.size() != divs.size()) {
        throw std::invalid_argument(std::string("RaduInstance: ") + what + " needs " + std::to_string(divs.size()) +
                                    " entries, one per divisor of " + std::to_string(n));
    }
    Exponents out;
    for (std::size_t i = 0; i < divs.size(); ++i) out[divs[i]] = values.empty() ? 0 : values[i];
    return out;
}

mpz_class weighted_sum(const Exponents& r) {
    mpz_class s = 0;
    for (const auto& [d, e] : r) s += zu(d) * z(e);
    return s;
}

std::int64_t plain_sum(const Exponents& r) {
    std::int64_t s = 0;
    for (const auto& [d, e] : r) s += e;
    return s;
}

bool divides(const mpz_class& a, const mpz_class& b) {
    if (a == 0) return b == 0;
    return mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0;
}

}  // namespace

RaduInstance RaduInstance::make(std::uint64_t m, std::uint64_t M, std::uint64_t N, std::uint64_t t,
                                const std::vector<std::int64_t>& r, const std::vector<std::int64_t>& r_prime) {
    if (m == 0 || M == 0 || N == 0) throw std::invalid_argument("RaduInstance: m, M, N must be positive");
    if (t >= m) throw std::invalid_argument("RaduInstance: t must lie in [0, m)");
    if (r.empty()) throw std::invalid_argument("RaduInstance: r must list one exponent per divisor of M");
    RaduInstance inst;
    inst.m = m;
    inst.M = M;
    inst.N = N;
    inst.t = t;
    inst.r = over_divisors(M, r, "r");
    inst.r_prime = over_divisors(N, r_prime, "r'");
    const std::uint64_t m24 = m % 24;
    inst.kappa = std::gcd((m24 * m24 + 23) % 24, std::uint64_t{24});
    return inst;
}

RaduInstance RaduInstance::with_t(std::uint64_t t_) const {
    if (t_ >= m) throw std::invalid_argument("RaduInstance: t must lie in [0, m)");
    RaduInstance out = *this;
    out.t = t_;
    return out;
}

RaduInstance RaduInstance::with_r_prime(const std::vector<std::int64_t>& rp) const {
    RaduInstance out = *this;
    out.r_prime = over_divisors(N, rp, "r'");
    return out;
}

std::string RaduInstance::to_string() const {
    std::ostringstream os;
    os << "(" << m << "," << M << "," << N << "," << t << ",(";
    bool first = true;
    for (const auto& [d, e] : r) {
        os << (first ? "" : ",") << e;
        first = false;
    }
    os << ")) r'=(";
    first = true;
    for (const auto& [d, e] : r_prime) {
        os << (first ? "" : ",") << e;
        first = false;
    }
    os << ")";
    return os.str();
}

std::set<std::uint64_t> squares_mod(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("squares_mod: n must be positive");
    std::set<std::uint64_t> out;
    if (n == 1) {
        out.insert(0);
        return out;
    }
    for (std::uint64_t x = 1; x < n; ++x) {
        if (std::gcd(x, n) == 1) out.insert(static_cast<std::uint64_t>((unsigned __int128)x * x % n));
    }
    return out;
}

OrbitResult orbit_P(const RaduInstance& inst) {
    const mpz_class sum = weighted_sum(inst.r);
    const mpz_class m = zu(inst.m);
    OrbitResult out;
    for (std::uint64_t s : squares_mod(24 * inst.m)) {
        if ((s - 1) % 24 != 0) throw std::logic_error("orbit_P: square not congruent to 1 mod 24");
        const mpz_class step = (zu(s) - 1) / 24;
        mpz_class tp = zu(inst.t) * zu(s) + step * sum;
        mpz_class rem;
        mpz_fdiv_r(rem.get_mpz_t(), tp.get_mpz_t(), m.get_mpz_t());
        out.P.insert(rem.get_ui());
    }
    out.t_min = *out.P.begin();
    return out;
}

std::string to_string(ParityBranch b) {
    switch (b) {
        case ParityBranch::NotApplicable: return "not-applicable";
        case ParityBranch::First: return "4|kN and 8|sN";
        case ParityBranch::Second: return "2|s and 8|(1-j)N";
        case ParityBranch::Neither: return "neither";
    }
    return "?";
}

bool DeltaStar::all() const noexcept {
    for (bool c : conditions) {
        if (!c) return false;
    }
    return true;
}

DeltaStar delta_star_check(const RaduInstance& inst) {
    DeltaStar out;
    const std::uint64_t m = inst.m, n = inst.N, k = inst.kappa;

    // (1) prime divisors of m divide N.
    out.conditions[0] = true;
    if (m > 1) {
        for (std::uint64_t p : arith::prime_divisors(m)) {
            if (n % p != 0) out.conditions[0] = false;
        }
    }

    // (2) delta | mN whenever r_delta != 0.
    out.conditions[1] = true;
    for (const auto& [d, e] : inst.r) {
        if (e != 0 && (zu(m) * zu(n)) % zu(d) != 0) out.conditions[1] = false;
    }

    // (3) 24 | kN sum r_delta mN / delta, each term divided on its own.
    {
        mpz_class sum = 0;
        const mpz_class mn = zu(m) * zu(n);
        for (const auto& [d, e] : inst.r) {
            if (e == 0) continue;
            if (!divides(zu(d), mn)) {
                out.condition3_nonintegral = true;
                continue;
            }
            sum += z(e) * (mn / zu(d));
        }
        out.conditions[2] = !out.condition3_nonintegral && divides(24, zu(k) * zu(n) * sum);
    }

    // (4) 8 | kN sum r_delta.
    out.conditions[3] = divides(8, zu(k) * zu(n) * z(plain_sum(inst.r)));

    // (5) 24m / gcd(-24kt - k sum delta r_delta, 24m) divides N.
    {
        const mpz_class x = -24 * zu(k) * zu(inst.t) - zu(k) * weighted_sum(inst.r);
        mpz_class g;
        const mpz_class m24 = 24 * zu(m);
        mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), m24.get_mpz_t());
        out.conditions[4] = divides(m24 / g, zu(n));
    }

    // (6) for even m: prod delta^|r_delta| = 2^s j with j odd.
    if (m % 2 != 0) {
        out.conditions[5] = true;
        out.branch = ParityBranch::NotApplicable;
    } else {
        mpz_class s = 0;
        std::uint64_t j_mod8 = 1;
        for (const auto& [d, e] : inst.r) {
            if (e == 0) continue;
            std::uint64_t dd = d;
            unsigned v = 0;
            while (dd % 2 == 0) {
                dd /= 2;
                ++v;
            }
            const auto a = static_cast<std::uint64_t>(e < 0 ? -e : e);
            s += zu(v) * zu(a);
            mpz_class pw;
            const mpz_class base = zu(dd), eight = 8;
            mpz_powm(pw.get_mpz_t(), base.get_mpz_t(), zu(a).get_mpz_t(), eight.get_mpz_t());
            j_mod8 = j_mod8 * pw.get_ui() % 8;
        }
        const bool first = divides(4, zu(k) * zu(n)) && divides(8, s * zu(n));
        const bool second = divides(2, s) && divides(8, (1 - zu(j_mod8)) * zu(n));
        out.conditions[5] = first || second;
        out.branch = first ? ParityBranch::First : second ? ParityBranch::Second : ParityBranch::Neither;
    }
    return out;
}

std::vector<std::uint64_t> coset_reps(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("coset_reps: N must be positive");
    if (!arith::is_squarefree(n) && !(n % 2 == 0 && arith::is_squarefree(n / 2))) {
        throw CosetHypothesisError("coset_reps: neither N = " + std::to_string(n) + " nor N/2 is squarefree");
    }
    return arith::divisors(n);
}

Rational p_lower(const RaduInstance& inst, std::uint64_t c) {
    std::optional<Rational> best;
    const mpz_class mc = zu(inst.m) * zu(c);
    for (std::uint64_t lambda = 0; lambda < inst.m; ++lambda) {
        Rational sum = 0;
        const mpz_class a = 1 + zu(inst.kappa) * zu(lambda) * zu(c);
        for (const auto& [d, e] : inst.r) {
            if (e == 0) continue;
            mpz_class g;
            const mpz_class x = zu(d) * a;
            mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), mc.get_mpz_t());
            sum += Rational(z(e) * g * g, zu(d) * zu(inst.m));
        }
        sum /= 24;
        sum.canonicalize();
        if (!best || sum < *best) best = sum;
    }
    return best.value_or(Rational(0));
}

Rational p_prime_lower(const RaduInstance& inst, std::uint64_t c) {
    Rational sum = 0;
    for (const auto& [d, e] : inst.r_prime) {
        if (e == 0) continue;
        const std::uint64_t g = std::gcd(d, c);
        sum += Rational(z(e) * zu(g) * zu(g), zu(d));
    }
    sum /= 24;
    sum.canonicalize();
    return sum;
}

Rational nu_bound(const RaduInstance& inst) {
    const OrbitResult orbit = orbit_P(inst);
    const mpz_class index = [&] {
        std::uint64_t idx = inst.N;
        for (std::uint64_t p : arith::prime_divisors(inst.N)) idx = idx / p * (p + 1);
        return zu(idx);
    }();
    Rational inner = Rational(z(plain_sum(inst.r) + plain_sum(inst.r_prime)) * index) -
                     Rational(weighted_sum(inst.r_prime)) - Rational(weighted_sum(inst.r), zu(inst.m));
    Rational nu = inner / 24 - Rational(zu(orbit.t_min), zu(inst.m));
    nu.canonicalize();
    return nu;
}

std::int64_t floor_nu(const RaduInstance& inst) { return arith::floor_rational(nu_bound(inst)); }

namespace {

bool lower_bounds_hold(const RaduInstance& inst, const std::vector<std::uint64_t>& reps,
                       const std::vector<Rational>& p_values) {
    for (std::size_t i = 0; i < reps.size(); ++i) {
        if (p_values[i] + p_prime_lower(inst, reps[i]) < 0) return false;
    }
    return true;
}

// Visits compositions of total into slots [pos, n) with each part <= cap, in
// lexicographically decreasing order of the leading entries.
bool visit_compositions(std::vector<std::int64_t>& cur, std::size_t pos, std::int64_t total, std::int64_t cap,
                        const std::function<bool(const std::vector<std::int64_t>&)>& fn) {
    if (pos + 1 == cur.size()) {
        if (total > cap) return false;
        cur[pos] = total;
        return fn(cur);
    }
    for (std::int64_t v = std::min(total, cap); v >= 0; --v) {
        cur[pos] = v;
        if (visit_compositions(cur, pos + 1, total - v, cap, fn)) return true;
    }
    return false;
}

}  // namespace

std::optional<std::vector<std::int64_t>> search_r_prime(const RaduInstance& inst, std::int64_t max_entry) {
    const auto reps = coset_reps(inst.N);
    std::vector<Rational> p_values;
    for (std::uint64_t c : reps) p_values.push_back(p_lower(inst, c));

    const std::size_t slots = arith::divisors(inst.N).size();
    std::vector<std::int64_t> cur(slots, 0);
    std::optional<std::vector<std::int64_t>> found;
    const auto max_total = static_cast<std::int64_t>(slots) * max_entry;
    for (std::int64_t total = 0; total <= max_total && !found; ++total) {
        visit_compositions(cur, 0, total, max_entry, [&](const std::vector<std::int64_t>& rp) {
            if (lower_bounds_hold(inst.with_r_prime(rp), reps, p_values)) {
                found = rp;
                return true;
            }
            return false;
        });
    }
    return found;
}

std::string to_string(RaduStatus s) {
    switch (s) {
        case RaduStatus::Proved: return "proved";
        case RaduStatus::Refuted: return "refuted";
        case RaduStatus::HypothesisFailed: return "hypothesis-failed";
        case RaduStatus::Consistent: return "consistent (not proved)";
    }
    return "?";
}

RaduVerdict radu_verify(const RaduInstance& inst, std::uint64_t u, const SeriesHook& hook,
                        std::optional<std::int64_t> depth_limit) {
    if (u < 2) throw std::invalid_argument("radu_verify: modulus must be >= 2");
    RaduVerdict v;
    v.delta_star = delta_star_check(inst);
    for (std::size_t i = 0; i < 6; ++i) {
        if (!v.delta_star.conditions[i]) v.failures.push_back("Delta* condition (" + std::to_string(i + 1) + ")");
    }

    std::vector<std::uint64_t> reps;
    try {
        reps = coset_reps(inst.N);
        v.cosets_ok = true;
    } catch (const CosetHypothesisError& e) {
        v.failures.emplace_back(e.what());
    }
    v.lower_bounds_ok = v.cosets_ok;
    for (std::uint64_t c : reps) {
        Rational s = p_lower(inst, c) + p_prime_lower(inst, c);
        s.canonicalize();
        if (s < 0) {
            v.lower_bounds_ok = false;
            v.failures.push_back("p + p' < 0 at delta = " + std::to_string(c));
        }
        v.p_sums.emplace(c, std::move(s));
    }

    v.orbit = orbit_P(inst);
    v.nu = nu_bound(inst);
    v.floor_nu = arith::floor_rational(v.nu);
    v.depth = depth_limit ? std::min(v.floor_nu, *depth_limit) : v.floor_nu;
    if (v.depth < 0) v.depth = 0;

    const Ring ring = Ring::mod(u);
    const std::uint64_t max_t = *v.orbit.P.rbegin();
    const std::size_t order = inst.m * static_cast<std::uint64_t>(v.depth + 1) + max_t + 1;
    Series a = Series::one(ring, order);
    for (const auto& [d, e] : inst.r) {
        if (e != 0) a = mul_euler_power(a, d, e);
    }

    for (std::int64_t n = 0; n <= v.depth && !v.refuted_at; ++n) {
        for (std::uint64_t tp : v.orbit.P) {
            if (!a.coeff_is_zero(inst.m * static_cast<std::uint64_t>(n) + tp)) {
                v.refuted_at = std::make_pair(n, tp);
                break;
            }
        }
    }

    if (hook) {
        const std::size_t ho = std::min(kHookOrder, order);
        v.hook_agrees = truncate(a, ho) == truncate(hook(ring, ho), ho);
        if (!*v.hook_agrees) v.failures.emplace_back("series hook disagrees with the eta-product");
    }

    if (v.refuted_at) {
        v.status = RaduStatus::Refuted;
    } else if (!v.failures.empty()) {
        v.status = RaduStatus::HypothesisFailed;
    } else if (v.depth >= v.floor_nu) {
        v.status = RaduStatus::Proved;
    } else {
        v.status = RaduStatus::Consistent;
    }
    return v;
}

}  // namespace qcong::radu
