#include "qcong/hecke.hpp"

#include "qcong/arith.hpp"

namespace qcong::hecke {

HeckeContext::HeckeContext(std::uint64_t p_, std::int64_t weight_, std::function<int(std::int64_t)> character_,
                           Ring ring_)
    : p(p_), weight(weight_), character(std::move(character_)), ring(ring_) {
    if (!arith::is_prime(p)) throw std::invalid_argument("HeckeContext: p must be prime");
    if (weight < 1) throw std::invalid_argument("HeckeContext: weight must be >= 1");
    if (!character) throw std::invalid_argument("HeckeContext: character evaluator required");
}

Series apply_Tp(const HeckeContext& ctx, const Series& f) {
    if (f.ring() != ctx.ring) throw RingMismatch("apply_Tp: series ring differs from context ring");
    if (f.order() < ctx.p) {
        throw std::invalid_argument("apply_Tp: order " + std::to_string(f.order()) + " is below p = " +
                                    std::to_string(ctx.p));
    }
    const std::size_t n_out = f.order() / ctx.p;

    BigInt factor;
    const BigInt base(static_cast<unsigned long>(ctx.p));
    const auto e = static_cast<unsigned long>(ctx.weight - 1);
    if (ctx.ring.is_exact()) {
        mpz_pow_ui(factor.get_mpz_t(), base.get_mpz_t(), e);
    } else {
        const BigInt m(static_cast<unsigned long>(ctx.ring.modulus()));
        mpz_powm_ui(factor.get_mpz_t(), base.get_mpz_t(), e, m.get_mpz_t());
    }
    factor *= ctx.character(static_cast<std::int64_t>(ctx.p));

    std::vector<BigInt> out(n_out);
    for (std::size_t n = 0; n < n_out; ++n) {
        out[n] = f.coeff(ctx.p * n);
        if (n % ctx.p == 0 && factor != 0) out[n] += factor * f.coeff(n / ctx.p);
    }
    return Series(ctx.ring, std::move(out));
}

Thm1Row Thm1Row::from_eta(std::int64_t c, std::uint64_t p, std::uint64_t residue, std::int64_t a) {
    const std::int64_t num = a - 2 * (c - 1);
    if (num < 0 || num % 24 != 0) {
        throw std::invalid_argument("Thm1Row: (a - 2(c-1))/24 must be a non-negative integer");
    }
    return Thm1Row{c, p, residue, a + 1, num / 24};
}

etaq::ExponentMap Thm1Row::eta_quotient() const { return {{1, eta_exponent - 1}, {2, -(c - 1)}}; }

const std::vector<Thm1Row>& isolated_rows() {
    static const std::vector<Thm1Row> rows = {
        Thm1Row::from_eta(37, 43, 12, 816), Thm1Row::from_eta(41, 47, 21, 704), Thm1Row::from_eta(53, 59, 56, 176),
        Thm1Row::from_eta(61, 67, 19, 1272), Thm1Row::from_eta(65, 71, 32, 1064), Thm1Row::from_eta(73, 79, 62, 552),
        Thm1Row::from_eta(77, 83, 79, 248),
    };
    return rows;
}

std::string to_string(RowStatus s) {
    switch (s) {
        case RowStatus::Proved: return "proved";
        case RowStatus::Failed: return "failed";
        case RowStatus::Insufficient: return "insufficient";
    }
    return "?";
}

namespace {

std::optional<std::size_t> first_nonzero(const Series& s, std::size_t from, std::size_t to) {
    for (std::size_t n = from; n <= to && n < s.order(); ++n) {
        if (!s.coeff_is_zero(n)) return n;
    }
    return std::nullopt;
}

}  // namespace

Thm1Verdict verify_thm1_row(const Thm1Row& row) {
    const auto eq = etaq::EtaQuotient::at_minimal_level(row.eta_quotient());
    const auto w = etaq::weight(eq);
    const std::size_t depth = w.is_integral() && w.value() >= 0 ? etaq::sturm_bound(w.value(), eq.level()) : 0;
    return verify_thm1_row(row, depth);
}

Thm1Verdict verify_thm1_row(const Thm1Row& row, std::size_t depth) {
    if (row.c < 1 || row.shift < 0 || row.residue >= row.p) throw std::invalid_argument("verify_thm1_row: bad row");
    Thm1Verdict v;
    v.depth = depth;

    const auto eq = etaq::EtaQuotient::at_minimal_level(row.eta_quotient());
    const auto meta = etaq::form_meta(eq);
    v.level = meta.level;
    v.integral_weight = meta.weight.is_integral() && meta.weight.value() >= 1;
    v.weight = meta.weight.is_integral() ? meta.weight.value() : 0;
    v.sturm = meta.sturm_bound;
    v.cond24 = meta.cond24.first && meta.cond24.second;
    v.holomorphic = meta.holomorphic;
    if (!v.integral_weight) return v;

    const Ring ring = Ring::mod(row.p);
    const std::size_t order = row.p * (depth + 2);
    v.expansion_order = order;
    const auto s = static_cast<std::size_t>(row.shift);

    Series base = genfun(PartitionFamily::cubic(row.c), ring, order > s ? order - s : 1);
    Series g = truncate(shift(mul_euler_power(base, 1, row.eta_exponent), s), order);

    const auto chi = etaq::character_of(eq);
    const HeckeContext ctx(row.p, v.weight, [chi](std::int64_t d) { return chi(d); }, ring);
    const Series image = apply_Tp(ctx, g);
    v.constant_term_zero = image.coeff_is_zero(0);

    // Residue side: q * sum a_c(pn + b) q^n * f_1^(e/p); only meaningful when p | e.
    std::optional<std::size_t> residue_failure;
    if (row.eta_exponent % static_cast<std::int64_t>(row.p) == 0) {
        const Series a = genfun(PartitionFamily::cubic(row.c), ring, row.p * (depth + 1) + row.residue + 1);
        Series prog = truncate(extract_progression(a, row.p, row.residue), depth + 1);
        prog = mul_euler_power(prog, 1, row.eta_exponent / static_cast<std::int64_t>(row.p));
        residue_failure = first_nonzero(shift(prog, 1), 0, depth);
    } else {
        residue_failure = 0;
    }

    const auto image_failure = first_nonzero(image, 0, depth);
    if (image_failure && residue_failure) {
        v.first_failure = std::min(*image_failure, *residue_failure);
    } else if (image_failure) {
        v.first_failure = image_failure;
    } else {
        v.first_failure = residue_failure;
    }

    if (v.first_failure) {
        v.status = RowStatus::Failed;
    } else if (depth < v.sturm) {
        v.status = RowStatus::Insufficient;
    } else {
        v.status = RowStatus::Proved;
    }
    return v;
}

DirectVerdict direct_congruence(const PartitionFamily& f, std::uint64_t A, std::uint64_t B, std::uint64_t u,
                                std::size_t depth) {
    if (A < 1 || B >= A || u < 2) throw std::invalid_argument("direct_congruence: need A >= 1, 0 <= B < A, u >= 2");
    const Series s = genfun(f, Ring::mod(u), A * depth + B + 1);
    DirectVerdict v;
    for (std::size_t n = 0; n <= depth; ++n) {
        ++v.checked;
        if (!s.coeff_is_zero(A * n + B)) {
            v.first_failure = n;
            return v;
        }
    }
    v.pass = true;
    return v;
}

}  // namespace qcong::hecke
