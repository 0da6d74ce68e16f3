#pragma once

#include <mutex>
#include <optional>

#include "zca/tpoly.hpp"

namespace zca {

// Power series in t_1..t_d truncated by TOTAL degree: every stored result is
// exact through total degree `order`, and operations recompute the order of
// validity rather than silently exceeding it.
struct SeriesTrunc {
    FieldPtr K;
    uint32_t d = 0;
    uint32_t order = 0;
    // ascending graded-lex, only exponents with |n| <= order, no zeros
    std::vector<std::pair<Exp, FieldElement>> terms;

    SeriesTrunc() = default;
    SeriesTrunc(FieldPtr k, uint32_t dim, uint32_t T) : K(std::move(k)), d(dim), order(T) {}

    static SeriesTrunc from_poly(const TPoly& p, uint32_t T);
    TPoly to_poly() const;

    FieldElement coeff(const Exp& n) const;
    void set_coeff(const Exp& n, FieldElement v);  // keeps the sorted order
    SeriesTrunc truncated(uint32_t T) const;
    void normalize();

    std::string to_string(const std::vector<std::string>& varnames = {}) const;
};

SeriesTrunc sb_add(const SeriesTrunc& a, const SeriesTrunc& b);
SeriesTrunc sb_sub(const SeriesTrunc& a, const SeriesTrunc& b);
SeriesTrunc sb_mul(const SeriesTrunc& a, const SeriesTrunc& b);
SeriesTrunc sb_mul_poly(const SeriesTrunc& a, const TPoly& b);
SeriesTrunc sb_scale(const SeriesTrunc& a, const FieldElement& c);
SeriesTrunc sb_pow_p(const SeriesTrunc& a);  // order grows to p*order + p - 1
bool sb_equal_through(const SeriesTrunc& a, const SeriesTrunc& b, uint32_t T);

// Cartier/projection component of a truncated series: the series
// sum pi_l(a(pn+j)) t^n, exact through floor((order - |j|)/p).
SeriesTrunc cartier_series(const SeriesTrunc& g, const Exp& j, uint32_t l);

// checks g = sum_j t^j ( sum_l cartier(g,j,l)^p h_l ) through the
// representable order; the identity must hold for every power series
bool cartier_decompose_check(const SeriesTrunc& g);

// all exponents with d variables and total degree <= T, graded-lex ascending
std::vector<Exp> exponents_up_to(uint32_t d, uint32_t T);

// ---------------------------------------------------------------------------

// Defining data for an algebraic power series.
struct AlgebraicInput {
    enum class Kind { Rational, Annihilator };
    Kind kind = Kind::Rational;
    FieldPtr K;
    uint32_t d = 0;

    // Rational: f = A/B
    TPoly A, B;

    // Annihilator: P(X) = sum_i P_coeffs[i] X^i vanishes at f; the seed lists
    // every nonzero coefficient a(n) with |n| <= seed_order, others are 0.
    std::vector<TPoly> P_coeffs;
    std::vector<std::pair<Exp, FieldElement>> seed;
    int64_t seed_order = -1;  // -1: empty seed, a(0) = 0 assumed at order 0

    static AlgebraicInput rational(TPoly A, TPoly B);
    static AlgebraicInput annihilator(FieldPtr K, uint32_t d, std::vector<TPoly> P,
                                      std::vector<std::pair<Exp, FieldElement>> seed);

    // degree in X and height (max coefficient degree) of the annihilator
    uint32_t x_degree() const;
    uint32_t height() const;
};

// exact coefficients of f through total degree T
SeriesTrunc expand_series(const AlgebraicInput& input, uint32_t T);

// Memoizing coefficient oracle; expansion requests serialize, queries share
// the cached window.
class CoeffOracle {
  public:
    explicit CoeffOracle(AlgebraicInput input) : input_(std::move(input)) {}
    const AlgebraicInput& input() const { return input_; }
    FieldElement coeff_at(const Exp& n);
    bool is_zero_at(const Exp& n) { return coeff_at(n).is_zero(); }
    void ensure_order(uint32_t T);

  private:
    AlgebraicInput input_;
    std::optional<SeriesTrunc> memo_;
    std::mutex mu_;
};

}  // namespace zca
