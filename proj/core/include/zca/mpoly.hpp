#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "zca/gf.hpp"

namespace zca {

// Exponent tuple for at most kMaxVars variables.  Unused slots stay zero, so
// tuples of different logical arity compare consistently.
struct Exp {
    static constexpr uint32_t kMaxVars = 8;
    std::array<uint16_t, kMaxVars> e{};

    uint32_t total() const {
        uint32_t s = 0;
        for (auto x : e) s += x;
        return s;
    }
    bool is_zero() const {
        for (auto x : e)
            if (x) return false;
        return true;
    }
    bool operator==(const Exp& o) const { return e == o.e; }

    Exp plus(const Exp& o) const {
        Exp r;
        for (uint32_t i = 0; i < kMaxVars; ++i) r.e[i] = (uint16_t)(e[i] + o.e[i]);
        return r;
    }
    // componentwise difference; caller guarantees o <= *this
    Exp minus(const Exp& o) const {
        Exp r;
        for (uint32_t i = 0; i < kMaxVars; ++i) r.e[i] = (uint16_t)(e[i] - o.e[i]);
        return r;
    }
    bool divisible_by(const Exp& o) const {
        for (uint32_t i = 0; i < kMaxVars; ++i)
            if (e[i] < o.e[i]) return false;
        return true;
    }
    Exp scaled(uint32_t k) const {
        Exp r;
        for (uint32_t i = 0; i < kMaxVars; ++i) r.e[i] = (uint16_t)(e[i] * k);
        return r;
    }
};

// graded-lex: higher total degree first, ties broken by variable 0 first
inline int exp_cmp(const Exp& a, const Exp& b) {
    uint32_t ta = a.total(), tb = b.total();
    if (ta != tb) return ta < tb ? -1 : 1;
    for (uint32_t i = 0; i < Exp::kMaxVars; ++i)
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
    return 0;
}
// descending graded-lex, the storage order of polynomials
struct ExpGradedLexDesc {
    bool operator()(const Exp& a, const Exp& b) const { return exp_cmp(a, b) > 0; }
};

// Sparse multivariate polynomial over the scalars of a GF.  Terms are sorted
// descending in graded-lex order and never carry a zero coefficient.
struct MPoly {
    using Term = std::pair<Exp, uint32_t>;
    std::vector<Term> terms;

    bool is_zero() const { return terms.empty(); }
    bool is_one() const {
        return terms.size() == 1 && terms[0].second == 1 && terms[0].first.is_zero();
    }
    uint32_t deg() const { return terms.empty() ? 0 : terms.front().first.total(); }
    uint32_t deg_var(uint32_t v) const;
    // coefficient of the zero exponent
    uint32_t constant_term() const {
        return (!terms.empty() && terms.back().first.is_zero()) ? terms.back().second : 0;
    }
    uint32_t lead_coeff() const { return terms.empty() ? 0 : terms.front().second; }
    bool operator==(const MPoly& o) const { return terms == o.terms; }

    static MPoly zero() { return {}; }
    static MPoly constant(uint32_t c) {
        MPoly r;
        if (c) r.terms.push_back({Exp{}, c});
        return r;
    }
    static MPoly monomial(const Exp& e, uint32_t c) {
        MPoly r;
        if (c) r.terms.push_back({e, c});
        return r;
    }
};

MPoly mp_add(const GF& F, const MPoly& a, const MPoly& b);
MPoly mp_neg(const GF& F, const MPoly& a);
MPoly mp_sub(const GF& F, const MPoly& a, const MPoly& b);
MPoly mp_mul(const GF& F, const MPoly& a, const MPoly& b);
MPoly mp_scale(const GF& F, const MPoly& a, uint32_t c);
MPoly mp_pow(const GF& F, MPoly a, uint64_t k);
// a^p via the Frobenius: exponents scale by p, coefficients by x -> x^p
MPoly mp_pow_p(const GF& F, const MPoly& a);

// division with remainder by lead-term reduction (graded-lex); quotient only
// meaningful when the division is exact
bool mp_divide(const GF& F, const MPoly& a, const MPoly& b, MPoly* quot, MPoly* rem);
MPoly mp_divexact(const GF& F, const MPoly& a, const MPoly& b);

// gcd over F_q[u_1..u_r], monic-normalized (graded-lex lead coefficient 1)
MPoly mp_gcd(const GF& F, const MPoly& a, const MPoly& b);

}  // namespace zca
