#include "zca/bounds.hpp"

#include <cmath>

#include "zca/errors.hpp"

namespace zca {

BoundValue BoundValue::power(uint64_t base, BoundValue exp) {
    BoundValue v;
    v.base_ = base;
    v.exp_ = std::make_shared<const BoundValue>(std::move(exp));
    return v;
}

BoundValue BoundValue::make_pow(uint64_t base, BoundValue exp, uint64_t bit_ceiling) {
    if (exp.is_exact()) {
        double bits = exp.exact().fits_u64()
                          ? (double)exp.exact().as_u64() * std::log2((double)base)
                          : 1e30;
        if (bits <= (double)bit_ceiling) return BoundValue(BigInt::pow(base, exp.exact(), bit_ceiling));
    }
    return power(base, std::move(exp));
}

std::string BoundValue::to_string() const {
    if (is_exact()) return exact_.to_decimal();
    return std::to_string(base_) + "^(" + exp_->to_string() + ")";
}

double BoundValue::log2_approx() const {
    if (is_exact()) return exact_.log2_approx();
    double e = exp_->log2_approx();
    if (e > 1023) return 1e308;  // beyond double range, any huge marker
    return std::exp2(e) * std::log2((double)base_);
}

std::string BoundValue::log2_string() const {
    if (is_exact()) return std::to_string(exact_.log2_approx());
    if (base_ == 2 && exp_->is_exact()) return exp_->exact().to_decimal() + " (exact)";
    if (base_ == 2) return exp_->to_string() + " (exact)";
    // log2(b^e) = e*log2(b)
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", std::log2((double)base_));
    return exp_->to_string() + " * " + buf;
}

int BoundValue::cmp(const BoundValue& a, const BoundValue& b) {
    if (a.is_exact() && b.is_exact()) return BigInt::cmp(a.exact_, b.exact_);
    if (!a.is_exact() && !b.is_exact() && a.base_ == b.base_) return cmp(*a.exp_, *b.exp_);
    // certified via log2 bounds: log2(x) lies within 1e-6 of log2_approx for
    // exact values; for towers the gap between candidates is astronomically
    // larger than the rounding error
    double la = a.log2_approx(), lb = b.log2_approx();
    if (la < lb - 0.5) return -1;
    if (la > lb + 0.5) return 1;
    throw input_error("BoundValue: comparison too close to certify");
}

BigInt ore_degree_bound(uint64_t H, uint64_t s, uint32_t p) {
    if (H < 1 || s < 1) throw input_error("ore_degree_bound: H, s >= 1 required");
    BigInt ps = BigInt::pow(p, BigInt(s), 1 << 20);
    return BigInt(H) * BigInt(s) * ps;
}

BigInt automata_count_bound(uint64_t N, uint32_t p) {
    if (N < 1) throw input_error("automata_count_bound: N >= 1 required");
    BigInt twoN = BigInt::pow(2, BigInt(N), 1 << 24);
    BigInt NpN = BigInt::pow(N, BigInt(p) * BigInt(N), 1 << 24);
    return BigInt(N) * twoN * NpN;
}

ElementBounds element_bounds(uint64_t comp, uint32_t p) {
    ElementBounds r;
    if (comp < 2) {
        // the printed formula p^{comp-2} is undefined here; 1 is conservative
        r.min_bound = BigInt(1);
        r.max_bound = BigInt(1);
        r.degenerate = true;
        return r;
    }
    BigInt b = BigInt::pow(p, BigInt(comp - 2), 1 << 24);
    r.min_bound = b;
    r.max_bound = b;
    return r;
}

BoundValue bound_n1(uint32_t p, uint32_t d, const BigInt& N0) {
    BigInt pd = BigInt::pow(p, BigInt(d), 1 << 16);
    BigInt e = BigInt(1) + pd * N0 * N0;
    return BoundValue::make_pow(p, BoundValue(e));
}

BoundChain complexity_bound_chain(const BoundParams& q) {
    if (q.H < 1 || q.s < 1) throw input_error("bound chain: H, s >= 1 required");
    if (q.s_alg < 1 || q.t_alg < 1) throw input_error("bound chain: s_alg, t_alg >= 1 required");
    BoundChain c;
    c.params = q;
    const uint32_t p = q.p;

    BigInt ps = BigInt::pow(p, BigInt(q.s), 1 << 20);
    c.M = BigInt(q.H) * BigInt(q.s) * ps * (ps - BigInt(1));
    c.N0 = BigInt(q.s + 1) * BigInt::binomial(c.M + BigInt(q.d), q.d);
    c.N1 = bound_n1(p, q.d, c.N0);

    // N3 = N2 (2 s^{p-2} + (s^{p-2} - s)/(s - 1)), the quotient taken as the
    // exact polynomial s * (s^{p-4} + ... + 1) for p >= 5, 0 for p = 3, and
    // -1 for p = 2 (the limit form covers s_alg = 1)
    BigInt s_alg(q.s_alg);
    BigInt spm2 = p >= 2 ? BigInt::pow(q.s_alg, BigInt(p - 2), 1 << 20) : BigInt(1);
    BigInt factor;
    if (p == 2) {
        factor = BigInt(2) * spm2 - BigInt(1);
    } else if (p == 3) {
        factor = BigInt(2) * spm2;
    } else {
        BigInt geo(0);
        BigInt term(1);
        for (uint32_t i = 0; i + 3 < p; ++i) {  // s^0 + ... + s^{p-4}
            geo = geo + term;
            term = term * s_alg;
        }
        factor = BigInt(2) * spm2 + s_alg * geo;
    }
    c.N3 = BigInt(q.N2) * factor;
    c.N4 = BigInt(2) * c.N3 * s_alg * BigInt(q.t_alg);

    // generator count n: the transcendentals, the algebra basis, the constant
    // 1, and one generator per lambda coefficient (at most p^d N0^2 of them)
    if (q.n_override) {
        c.n = *q.n_override;
    } else {
        BigInt pd = BigInt::pow(p, BigInt(q.d), 1 << 16);
        c.n = pd * c.N0 * c.N0 + BigInt(q.r) + s_alg + BigInt(1);
    }

    // N6 = (N2+N5)(p-1) n s^{2(p-1)n}
    BigInt spow(1);
    if (q.s_alg > 1) {
        BigInt e = BigInt(2) * BigInt(p - 1) * c.n;
        spow = BigInt::pow(q.s_alg, e, 1 << 22);  // resource error when beyond
    }
    c.N6 = BigInt(q.N2 + q.N5) * BigInt(p - 1) * c.n * spow;

    c.Mprime = (c.N4 + c.N6) * s_alg * BigInt(p) + BigInt(p);
    c.k0 = (BigInt(2) * (c.Mprime + BigInt(1)) * BigInt(p)) / (p - 1) + BigInt(1);

    BigInt e7 = (c.n + BigInt(1)) * (c.k0 - BigInt(1));
    c.N7 = BoundValue::make_pow(p, BoundValue(e7));
    c.N8 = BoundValue::make_pow(p, BoundValue(e7 * c.N0));
    c.N9 = BoundValue::power(2, c.N8);
    return c;
}

}  // namespace zca
