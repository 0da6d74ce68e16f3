#include "zca/mpoly.hpp"

#include <algorithm>

#include "zca/errors.hpp"

namespace zca {

uint32_t MPoly::deg_var(uint32_t v) const {
    uint32_t d = 0;
    for (auto& t : terms) d = std::max<uint32_t>(d, t.first.e[v]);
    return d;
}

MPoly mp_add(const GF& F, const MPoly& a, const MPoly& b) {
    MPoly r;
    r.terms.reserve(a.terms.size() + b.terms.size());
    size_t i = 0, j = 0;
    while (i < a.terms.size() && j < b.terms.size()) {
        int c = exp_cmp(a.terms[i].first, b.terms[j].first);
        if (c > 0) {
            r.terms.push_back(a.terms[i++]);
        } else if (c < 0) {
            r.terms.push_back(b.terms[j++]);
        } else {
            uint32_t s = F.add(a.terms[i].second, b.terms[j].second);
            if (s) r.terms.push_back({a.terms[i].first, s});
            ++i, ++j;
        }
    }
    for (; i < a.terms.size(); ++i) r.terms.push_back(a.terms[i]);
    for (; j < b.terms.size(); ++j) r.terms.push_back(b.terms[j]);
    return r;
}

MPoly mp_neg(const GF& F, const MPoly& a) {
    MPoly r = a;
    for (auto& t : r.terms) t.second = F.neg(t.second);
    return r;
}

MPoly mp_sub(const GF& F, const MPoly& a, const MPoly& b) { return mp_add(F, a, mp_neg(F, b)); }

MPoly mp_mul(const GF& F, const MPoly& a, const MPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<MPoly::Term> acc;
    acc.reserve(a.terms.size() * b.terms.size());
    for (auto& ta : a.terms)
        for (auto& tb : b.terms)
            acc.push_back({ta.first.plus(tb.first), F.mul(ta.second, tb.second)});
    std::sort(acc.begin(), acc.end(),
              [](const MPoly::Term& x, const MPoly::Term& y) { return exp_cmp(x.first, y.first) > 0; });
    MPoly r;
    r.terms.reserve(acc.size());
    for (auto& t : acc) {
        if (!r.terms.empty() && r.terms.back().first == t.first) {
            r.terms.back().second = F.add(r.terms.back().second, t.second);
            if (r.terms.back().second == 0) r.terms.pop_back();
        } else if (t.second) {
            r.terms.push_back(t);
        }
    }
    return r;
}

MPoly mp_scale(const GF& F, const MPoly& a, uint32_t c) {
    if (c == 0) return {};
    MPoly r = a;
    for (auto& t : r.terms) t.second = F.mul(t.second, c);
    return r;
}

MPoly mp_pow(const GF& F, MPoly a, uint64_t k) {
    MPoly r = MPoly::constant(1);
    while (k) {
        if (k & 1) r = mp_mul(F, r, a);
        a = mp_mul(F, a, a);
        k >>= 1;
    }
    return r;
}

MPoly mp_pow_p(const GF& F, const MPoly& a) {
    MPoly r = a;
    for (auto& t : r.terms) {
        t.first = t.first.scaled(F.p());
        t.second = F.frobenius(t.second);
    }
    return r;
}

bool mp_divide(const GF& F, const MPoly& a, const MPoly& b, MPoly* quot, MPoly* rem) {
    if (b.is_zero()) throw input_error("mp_divide: division by zero polynomial");
    MPoly q, r;
    MPoly cur = a;
    const Exp& lb = b.terms.front().first;
    uint32_t lc_inv = F.inv(b.terms.front().second);
    while (!cur.is_zero()) {
        const auto& lt = cur.terms.front();
        if (lt.first.divisible_by(lb)) {
            MPoly m = MPoly::monomial(lt.first.minus(lb), F.mul(lt.second, lc_inv));
            q = mp_add(F, q, m);
            cur = mp_sub(F, cur, mp_mul(F, m, b));
        } else {
            r.terms.push_back(lt);
            cur.terms.erase(cur.terms.begin());
        }
    }
    if (quot) *quot = std::move(q);
    if (rem) *rem = std::move(r);
    return rem ? rem->is_zero() : r.is_zero();
}

MPoly mp_divexact(const GF& F, const MPoly& a, const MPoly& b) {
    MPoly q, r;
    mp_divide(F, a, b, &q, &r);
    if (!r.is_zero()) throw internal_error("mp_divexact: division not exact");
    return q;
}

namespace {

MPoly make_monic(const GF& F, const MPoly& a) {
    if (a.is_zero()) return a;
    return mp_scale(F, a, F.inv(a.terms.front().second));
}

int highest_var(const MPoly& a, const MPoly& b) {
    for (int v = (int)Exp::kMaxVars - 1; v >= 0; --v)
        if (a.deg_var(v) > 0 || b.deg_var(v) > 0) return v;
    return -1;
}

// coefficients of a viewed as a univariate polynomial in variable v
std::vector<MPoly> coeffs_in_var(const GF& F, const MPoly& a, uint32_t v) {
    std::vector<MPoly> c(a.deg_var(v) + 1);
    for (auto& t : a.terms) {
        Exp e = t.first;
        uint32_t k = e.e[v];
        e.e[v] = 0;
        c[k] = mp_add(F, c[k], MPoly::monomial(e, t.second));
    }
    return c;
}

// gcd of all v-coefficients
MPoly content_in_var(const GF& F, const MPoly& a, uint32_t v) {
    MPoly g;
    for (auto& c : coeffs_in_var(F, a, v)) {
        if (c.is_zero()) continue;
        g = mp_gcd(F, g, c);
        if (g.is_one()) break;
    }
    return g;
}

// standardized pseudo-remainder lc_v(b)^{deg_a - deg_b + 1} a mod b
MPoly prem(const GF& F, MPoly a, const MPoly& b, uint32_t v) {
    uint32_t db = b.deg_var(v);
    uint32_t da = a.deg_var(v);
    auto bc = coeffs_in_var(F, b, v);
    const MPoly& lb = bc[db];
    uint32_t mults = 0;
    while (!a.is_zero() && a.deg_var(v) >= db) {
        uint32_t dk = a.deg_var(v);
        auto ac = coeffs_in_var(F, a, v);
        const MPoly& la = ac[dk];
        // a := lb*a - la*v^{dk-db}*b
        Exp shift;
        shift.e[v] = (uint16_t)(dk - db);
        MPoly sub = mp_mul(F, la, b);
        for (auto& t : sub.terms) t.first = t.first.plus(shift);
        a = mp_sub(F, mp_mul(F, lb, a), sub);
        ++mults;
    }
    for (; mults < da - db + 1; ++mults) a = mp_mul(F, lb, a);
    return a;
}

MPoly lead_coeff_in_var(const GF& F, const MPoly& a, uint32_t v) {
    auto c = coeffs_in_var(F, a, v);
    return c.back();
}

bool is_monomial(const MPoly& a) { return a.terms.size() == 1; }

MPoly gcd_with_monomial(const GF& F, const MPoly& mono, const MPoly& b) {
    Exp g = mono.terms[0].first;
    for (auto& t : b.terms)
        for (uint32_t i = 0; i < Exp::kMaxVars; ++i) g.e[i] = std::min(g.e[i], t.first.e[i]);
    (void)F;
    return MPoly::monomial(g, 1);
}

}  // namespace

MPoly mp_gcd(const GF& F, const MPoly& a, const MPoly& b) {
    if (a.is_zero()) return make_monic(F, b);
    if (b.is_zero()) return make_monic(F, a);
    if (is_monomial(a)) return gcd_with_monomial(F, a, b);
    if (is_monomial(b)) return gcd_with_monomial(F, b, a);
    int v = highest_var(a, b);
    if (v < 0) return MPoly::constant(1);  // both constants

    // univariate with scalar coefficients: plain Euclid
    auto only_v = [v](const MPoly& x) {
        for (auto& t : x.terms)
            if (t.first.total() != t.first.e[v]) return false;
        return true;
    };
    if (only_v(a) && only_v(b)) {
        MPoly x = a, y = b;
        while (!y.is_zero()) {
            MPoly q, r;
            mp_divide(F, x, make_monic(F, y), &q, &r);
            x = std::move(y);
            y = std::move(r);
        }
        return make_monic(F, x);
    }

    // subresultant PRS in the main variable
    MPoly ca = content_in_var(F, a, v);
    MPoly cb = content_in_var(F, b, v);
    MPoly cg = mp_gcd(F, ca, cb);
    MPoly A = mp_divexact(F, a, ca);
    MPoly B = mp_divexact(F, b, cb);
    if (A.deg_var(v) < B.deg_var(v)) std::swap(A, B);
    MPoly g = MPoly::constant(1), h = MPoly::constant(1);
    while (true) {
        uint32_t delta = A.deg_var(v) - B.deg_var(v);
        MPoly R = prem(F, A, B, v);
        if (R.is_zero()) break;
        if (R.deg_var(v) == 0) {
            // coprime primitive parts
            return make_monic(F, cg);
        }
        A = std::move(B);
        B = mp_divexact(F, R, mp_mul(F, g, mp_pow(F, h, delta)));
        g = lead_coeff_in_var(F, A, v);
        if (delta > 0) h = mp_divexact(F, mp_pow(F, g, delta), mp_pow(F, h, delta - 1));
    }
    MPoly pp = mp_divexact(F, B, content_in_var(F, B, v));
    return make_monic(F, mp_mul(F, cg, pp));
}

}  // namespace zca
