#pragma once

#include <memory>
#include <string>
#include <vector>

#include "zca/mpoly.hpp"

namespace zca {

// Description of K = F_{p^e}(u_1..u_r): a finite field optionally extended by
// transcendentals.
struct FieldSpec {
    uint32_t p = 2;
    uint32_t e = 1;
    std::vector<uint32_t> modulus;        // monic, degree e; empty when e == 1
    std::vector<std::string> trans_vars;  // distinct names of u_1..u_r

    std::string to_string() const;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// Runtime context for K: the finite-field tables plus the monomial p-basis
// h_l = u_1^{j_1}...u_r^{j_r}, 0 <= j_i < p, listed in graded-lex order.  K is
// immutable and shared by every element built over it.
class Field {
  public:
    explicit Field(FieldSpec spec);
    static FieldPtr make(FieldSpec spec);

    const FieldSpec& spec() const { return spec_; }
    const GF& gf() const { return gf_; }
    uint32_t p() const { return gf_.p(); }
    uint32_t r() const { return (uint32_t)spec_.trans_vars.size(); }
    bool perfect() const { return r() == 0; }

    uint32_t pbasis_size() const { return (uint32_t)pbasis_.size(); }
    const Exp& pbasis_exp(uint32_t l) const { return pbasis_[l]; }
    // index of the basis element 1 (always 0: graded-lex starts at the zero tuple)
    uint32_t pbasis_one() const { return 0; }

    int var_index(const std::string& name) const;

  private:
    FieldSpec spec_;
    GF gf_;
    std::vector<Exp> pbasis_;
};

// An element of K as a reduced fraction of multivariate polynomials.
// Canonical form: gcd(num, den) = 1, den monic under graded-lex, zero = 0/1.
// Equality is syntactic equality of the canonical forms.
class FieldElement {
  public:
    FieldElement() = default;
    FieldElement(FieldPtr K, MPoly num, MPoly den);
    static FieldElement zero(FieldPtr K);
    static FieldElement one(FieldPtr K);
    static FieldElement from_scalar(FieldPtr K, uint32_t c);
    static FieldElement from_int(FieldPtr K, int64_t n);
    // the transcendental u_i (0-based)
    static FieldElement var(FieldPtr K, uint32_t i);

    const FieldPtr& field() const { return K_; }
    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    // constant scalar value; only valid if num and den are constants
    uint32_t as_scalar() const;
    bool is_scalar() const { return num_.deg() == 0 && den_.is_one(); }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement operator-() const;
    bool operator==(const FieldElement& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    FieldElement inverse() const;
    FieldElement pow(int64_t k) const;
    // x -> x^p
    FieldElement pow_p() const;

    // pi_l relative to the monomial p-basis: x = sum_l pi_l(x)^p h_l
    FieldElement pi_project(uint32_t l) const;
    // all nonzero projections at once, as (l, pi_l(x)) pairs
    std::vector<std::pair<uint32_t, FieldElement>> pi_all() const;

    std::string to_string() const;

  private:
    FieldPtr K_;
    MPoly num_;
    MPoly den_ = MPoly::constant(1);

    void reduce();
};

// total order used for canonical state representations
int fe_cmp(const FieldElement& a, const FieldElement& b);

}  // namespace zca
