#include "zca/field.hpp"

#include <algorithm>

#include "zca/errors.hpp"

namespace zca {

std::string FieldSpec::to_string() const {
    std::string s = "GF(" + std::to_string(p);
    if (e > 1) {
        s += "^" + std::to_string(e) + "; modulus=";
        bool first = true;
        for (size_t i = modulus.size(); i-- > 0;) {
            if (modulus[i] == 0) continue;
            if (!first) s += "+";
            first = false;
            if (i == 0) {
                s += std::to_string(modulus[i]);
            } else {
                if (modulus[i] != 1) s += std::to_string(modulus[i]) + "*";
                s += "a";
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
    }
    s += ")";
    if (!trans_vars.empty()) {
        s += "(";
        for (size_t i = 0; i < trans_vars.size(); ++i) {
            if (i) s += ",";
            s += trans_vars[i];
        }
        s += ")";
    }
    return s;
}

Field::Field(FieldSpec spec)
    : spec_(std::move(spec)),
      gf_(spec_.p, spec_.e, spec_.e == 1 ? std::vector<uint32_t>{0, 1} : spec_.modulus) {
    if (spec_.trans_vars.size() > Exp::kMaxVars)
        throw input_error("Field: at most " + std::to_string(Exp::kMaxVars) +
                          " transcendental variables are supported");
    for (size_t i = 0; i < spec_.trans_vars.size(); ++i)
        for (size_t j = i + 1; j < spec_.trans_vars.size(); ++j)
            if (spec_.trans_vars[i] == spec_.trans_vars[j])
                throw input_error("Field: duplicate variable name " + spec_.trans_vars[i]);
    // enumerate [0,p)^r in graded-lex order (ascending)
    uint64_t count = 1;
    for (uint32_t i = 0; i < r(); ++i) {
        count *= p();
        if (count > 4096) throw input_error("Field: p-basis p^r larger than 4096");
    }
    std::vector<Exp> all((size_t)count);
    for (uint64_t idx = 0; idx < count; ++idx) {
        uint64_t x = idx;
        Exp e;
        for (uint32_t i = 0; i < r(); ++i) {
            e.e[i] = (uint16_t)(x % p());
            x /= p();
        }
        all[(size_t)idx] = e;
    }
    std::sort(all.begin(), all.end(), [](const Exp& a, const Exp& b) { return exp_cmp(a, b) < 0; });
    pbasis_ = std::move(all);
}

FieldPtr Field::make(FieldSpec spec) { return std::make_shared<const Field>(std::move(spec)); }

int Field::var_index(const std::string& name) const {
    for (size_t i = 0; i < spec_.trans_vars.size(); ++i)
        if (spec_.trans_vars[i] == name) return (int)i;
    return -1;
}

FieldElement::FieldElement(FieldPtr K, MPoly num, MPoly den)
    : K_(std::move(K)), num_(std::move(num)), den_(std::move(den)) {
    reduce();
}

FieldElement FieldElement::zero(FieldPtr K) { return FieldElement(std::move(K), MPoly::zero(), MPoly::constant(1)); }
FieldElement FieldElement::one(FieldPtr K) { return FieldElement(std::move(K), MPoly::constant(1), MPoly::constant(1)); }
FieldElement FieldElement::from_scalar(FieldPtr K, uint32_t c) {
    return FieldElement(std::move(K), MPoly::constant(c), MPoly::constant(1));
}
FieldElement FieldElement::from_int(FieldPtr K, int64_t n) {
    uint32_t c = K->gf().from_int(n);
    return from_scalar(std::move(K), c);
}
FieldElement FieldElement::var(FieldPtr K, uint32_t i) {
    Exp e;
    e.e[i] = 1;
    return FieldElement(std::move(K), MPoly::monomial(e, 1), MPoly::constant(1));
}

uint32_t FieldElement::as_scalar() const {
    if (!is_scalar()) throw internal_error("FieldElement::as_scalar on non-scalar");
    return num_.constant_term();
}

void FieldElement::reduce() {
    const GF& F = K_->gf();
    if (den_.is_zero()) throw input_error("FieldElement: zero denominator");
    if (num_.is_zero()) {
        den_ = MPoly::constant(1);
        return;
    }
    if (!den_.is_one()) {
        MPoly g = mp_gcd(F, num_, den_);
        if (!g.is_one()) {
            num_ = mp_divexact(F, num_, g);
            den_ = mp_divexact(F, den_, g);
        }
        uint32_t lc = den_.lead_coeff();
        if (lc != 1) {
            uint32_t inv = F.inv(lc);
            num_ = mp_scale(F, num_, inv);
            den_ = mp_scale(F, den_, inv);
        }
    }
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    const GF& F = K_->gf();
    if (den_ == o.den_)
        return FieldElement(K_, mp_add(F, num_, o.num_), den_);
    return FieldElement(K_, mp_add(F, mp_mul(F, num_, o.den_), mp_mul(F, o.num_, den_)),
                        mp_mul(F, den_, o.den_));
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator*(const FieldElement& o) const {
    const GF& F = K_->gf();
    if (is_zero() || o.is_zero()) return zero(K_ ? K_ : o.K_);
    return FieldElement(K_, mp_mul(F, num_, o.num_), mp_mul(F, den_, o.den_));
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
    if (o.is_zero()) throw input_error("FieldElement: division by zero");
    const GF& F = K_->gf();
    return FieldElement(K_, mp_mul(F, num_, o.den_), mp_mul(F, den_, o.num_));
}

FieldElement FieldElement::operator-() const {
    FieldElement r = *this;
    r.num_ = mp_neg(K_->gf(), r.num_);
    return r;
}

FieldElement FieldElement::inverse() const { return one(K_) / *this; }

FieldElement FieldElement::pow(int64_t k) const {
    if (k < 0) return inverse().pow(-k);
    FieldElement r = one(K_);
    FieldElement b = *this;
    uint64_t n = (uint64_t)k;
    while (n) {
        if (n & 1) r = r * b;
        b = b * b;
        n >>= 1;
    }
    return r;
}

FieldElement FieldElement::pow_p() const {
    const GF& F = K_->gf();
    FieldElement r = *this;
    r.num_ = mp_pow_p(F, r.num_);
    r.den_ = mp_pow_p(F, r.den_);
    return r;
}

FieldElement FieldElement::pi_project(uint32_t l) const {
    auto all = pi_all();
    for (auto& [idx, v] : all)
        if (idx == l) return v;
    return zero(K_);
}

std::vector<std::pair<uint32_t, FieldElement>> FieldElement::pi_all() const {
    const GF& F = K_->gf();
    const uint32_t p = K_->p();
    std::vector<std::pair<uint32_t, FieldElement>> out;
    if (is_zero()) return out;

    // x = P/Q = (P Q^{p-1}) / Q^p; split the numerator by exponents mod p.
    MPoly G = den_.is_one() ? num_ : mp_mul(F, num_, mp_pow(F, den_, p - 1));
    // bucket by residue exponent tuple
    std::vector<std::pair<Exp, MPoly>> buckets;
    for (auto& t : G.terms) {
        Exp res, quot;
        for (uint32_t i = 0; i < Exp::kMaxVars; ++i) {
            res.e[i] = (uint16_t)(t.first.e[i] % p);
            quot.e[i] = (uint16_t)(t.first.e[i] / p);
        }
        MPoly::Term piece{quot, F.frobenius_inverse(t.second)};
        bool found = false;
        for (auto& b : buckets)
            if (b.first == res) {
                b.second.terms.push_back(piece);
                found = true;
                break;
            }
        if (!found) {
            buckets.push_back({res, MPoly::monomial(piece.first, piece.second)});
        }
    }
    // basis index of each residue tuple
    for (auto& b : buckets) {
        std::sort(b.second.terms.begin(), b.second.terms.end(),
                  [](const MPoly::Term& x, const MPoly::Term& y) { return exp_cmp(x.first, y.first) > 0; });
        uint32_t l = 0;
        bool ok = false;
        for (uint32_t i = 0; i < K_->pbasis_size(); ++i)
            if (K_->pbasis_exp(i) == b.first) {
                l = i;
                ok = true;
                break;
            }
        if (!ok) throw internal_error("pi_all: residue tuple outside the p-basis");
        FieldElement v(K_, std::move(b.second), den_);
        if (!v.is_zero()) out.push_back({l, std::move(v)});
    }
    std::sort(out.begin(), out.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
}

std::string FieldElement::to_string() const {
    const GF& F = K_->gf();
    auto poly_str = [&](const MPoly& P) {
        if (P.is_zero()) return std::string("0");
        std::string s;
        for (auto& t : P.terms) {
            if (!s.empty()) s += "+";
            std::string coef = F.to_string(t.second);
            bool coef_compound = coef.find('+') != std::string::npos;
            std::string mono;
            for (uint32_t i = 0; i < K_->r(); ++i) {
                if (t.first.e[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += K_->spec().trans_vars[i];
                if (t.first.e[i] > 1) mono += "^" + std::to_string(t.first.e[i]);
            }
            if (mono.empty()) {
                s += coef_compound ? "(" + coef + ")" : coef;
            } else if (coef == "1") {
                s += mono;
            } else {
                s += (coef_compound ? "(" + coef + ")" : coef) + "*" + mono;
            }
        }
        return s;
    };
    if (den_.is_one()) return poly_str(num_);
    return "(" + poly_str(num_) + ")/(" + poly_str(den_) + ")";
}

int fe_cmp(const FieldElement& a, const FieldElement& b) {
    auto mp_cmp = [](const MPoly& x, const MPoly& y) {
        size_t n = std::min(x.terms.size(), y.terms.size());
        for (size_t i = 0; i < n; ++i) {
            int c = exp_cmp(x.terms[i].first, y.terms[i].first);
            if (c) return c;
            if (x.terms[i].second != y.terms[i].second)
                return x.terms[i].second < y.terms[i].second ? -1 : 1;
        }
        if (x.terms.size() != y.terms.size()) return x.terms.size() < y.terms.size() ? -1 : 1;
        return 0;
    };
    int c = mp_cmp(a.num(), b.num());
    if (c) return c;
    return mp_cmp(a.den(), b.den());
}

}  // namespace zca
