#pragma once

#include "zca/field.hpp"

namespace zca {

// Sparse polynomial in t_1..t_d over a coefficient field K.  Terms are sorted
// descending in graded-lex order and never carry a zero coefficient.
struct TPoly {
    FieldPtr K;
    uint32_t d = 0;
    std::vector<std::pair<Exp, FieldElement>> terms;

    TPoly() = default;
    TPoly(FieldPtr k, uint32_t dim) : K(std::move(k)), d(dim) {}

    static TPoly zero(FieldPtr K, uint32_t d) { return TPoly(std::move(K), d); }
    static TPoly constant(FieldPtr K, uint32_t d, FieldElement c);
    static TPoly one(FieldPtr K, uint32_t d) {
        auto o = FieldElement::one(K);
        return constant(std::move(K), d, o);
    }
    static TPoly monomial(FieldPtr K, uint32_t d, const Exp& e, FieldElement c);
    // 1 - c*t_v
    static TPoly one_minus(FieldPtr K, uint32_t d, uint32_t v, const FieldElement& c);

    bool is_zero() const { return terms.empty(); }
    uint32_t deg() const { return terms.empty() ? 0 : terms.front().first.total(); }
    uint32_t deg_var(uint32_t v) const;
    FieldElement coeff(const Exp& e) const;
    FieldElement at_zero() const;  // constant term
    void normalize();              // sort + combine + drop zeros

    std::string to_string(const std::vector<std::string>& varnames = {}) const;
};

TPoly tp_add(const TPoly& a, const TPoly& b);
TPoly tp_sub(const TPoly& a, const TPoly& b);
TPoly tp_neg(const TPoly& a);
TPoly tp_mul(const TPoly& a, const TPoly& b);
TPoly tp_scale(const TPoly& a, const FieldElement& c);
TPoly tp_pow(const TPoly& a, uint64_t k);
TPoly tp_pow_p(const TPoly& a);  // a^p via Frobenius
int tp_cmp(const TPoly& a, const TPoly& b);

// digit tuples (j_1..j_d), 0 <= j_v < p, encoded as sum j_v p^v
inline uint32_t digit_count(uint32_t p, uint32_t d) {
    uint32_t n = 1;
    for (uint32_t i = 0; i < d; ++i) n *= p;
    return n;
}
Exp digit_decode(uint32_t p, uint32_t d, uint32_t idx);
uint32_t digit_encode(uint32_t p, uint32_t d, const Exp& j);

// The Cartier/projection split of a polynomial: bucket (j, l) receives
//   sum over terms with exponent ≡ j (mod p) of  pi_l(coeff) * t^{(exp-j)/p}.
// Returned flat, indexed by j * pbasis_size + l; empty buckets are zero
// polynomials.  One pass produces the images of every digit at once.
std::vector<TPoly> cartier_split(const TPoly& g);

// single Cartier/projection component of a polynomial
TPoly cartier_poly(const TPoly& g, const Exp& j, uint32_t l);

// embed a one-variable polynomial as a d-variable one reading coordinate v
TPoly tp_lift(const TPoly& a, uint32_t d, uint32_t v);

}  // namespace zca
