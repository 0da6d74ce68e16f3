#include "zca/tpoly.hpp"

#include <algorithm>
#include <map>

#include "zca/errors.hpp"

namespace zca {

TPoly TPoly::constant(FieldPtr K, uint32_t d, FieldElement c) {
    TPoly r(K, d);
    if (!c.is_zero()) r.terms.push_back({Exp{}, std::move(c)});
    return r;
}

TPoly TPoly::monomial(FieldPtr K, uint32_t d, const Exp& e, FieldElement c) {
    TPoly r(K, d);
    if (!c.is_zero()) r.terms.push_back({e, std::move(c)});
    return r;
}

TPoly TPoly::one_minus(FieldPtr K, uint32_t d, uint32_t v, const FieldElement& c) {
    Exp e;
    e.e[v] = 1;
    TPoly r = constant(K, d, FieldElement::one(K));
    if (!c.is_zero()) r.terms.insert(r.terms.begin(), {e, -c});
    return r;
}

uint32_t TPoly::deg_var(uint32_t v) const {
    uint32_t m = 0;
    for (auto& t : terms) m = std::max<uint32_t>(m, t.first.e[v]);
    return m;
}

FieldElement TPoly::coeff(const Exp& e) const {
    for (auto& t : terms)
        if (t.first == e) return t.second;
    return FieldElement::zero(K);
}

FieldElement TPoly::at_zero() const {
    if (!terms.empty() && terms.back().first.is_zero()) return terms.back().second;
    return FieldElement::zero(K);
}

void TPoly::normalize() {
    std::sort(terms.begin(), terms.end(),
              [](const auto& x, const auto& y) { return exp_cmp(x.first, y.first) > 0; });
    std::vector<std::pair<Exp, FieldElement>> out;
    out.reserve(terms.size());
    for (auto& t : terms) {
        if (!out.empty() && out.back().first == t.first) {
            out.back().second = out.back().second + t.second;
            if (out.back().second.is_zero()) out.pop_back();
        } else if (!t.second.is_zero()) {
            out.push_back(std::move(t));
        }
    }
    terms = std::move(out);
}

TPoly tp_add(const TPoly& a, const TPoly& b) {
    TPoly r(a.K ? a.K : b.K, std::max(a.d, b.d));
    r.terms.reserve(a.terms.size() + b.terms.size());
    size_t i = 0, j = 0;
    while (i < a.terms.size() && j < b.terms.size()) {
        int c = exp_cmp(a.terms[i].first, b.terms[j].first);
        if (c > 0) {
            r.terms.push_back(a.terms[i++]);
        } else if (c < 0) {
            r.terms.push_back(b.terms[j++]);
        } else {
            FieldElement s = a.terms[i].second + b.terms[j].second;
            if (!s.is_zero()) r.terms.push_back({a.terms[i].first, std::move(s)});
            ++i, ++j;
        }
    }
    for (; i < a.terms.size(); ++i) r.terms.push_back(a.terms[i]);
    for (; j < b.terms.size(); ++j) r.terms.push_back(b.terms[j]);
    return r;
}

TPoly tp_neg(const TPoly& a) {
    TPoly r = a;
    for (auto& t : r.terms) t.second = -t.second;
    return r;
}

TPoly tp_sub(const TPoly& a, const TPoly& b) { return tp_add(a, tp_neg(b)); }

TPoly tp_mul(const TPoly& a, const TPoly& b) {
    TPoly r(a.K ? a.K : b.K, std::max(a.d, b.d));
    if (a.is_zero() || b.is_zero()) return r;
    if (a.terms.size() * b.terms.size() <= 4096) {
        std::vector<std::pair<Exp, FieldElement>> acc;
        acc.reserve(a.terms.size() * b.terms.size());
        for (auto& ta : a.terms)
            for (auto& tb : b.terms) {
                FieldElement c = ta.second * tb.second;
                if (!c.is_zero()) acc.push_back({ta.first.plus(tb.first), std::move(c)});
            }
        r.terms = std::move(acc);
        r.normalize();
        return r;
    }
    // large products accumulate in a map so memory stays proportional to the
    // result, not to the number of term pairs
    std::map<Exp, FieldElement, ExpGradedLexDesc> acc;
    for (auto& ta : a.terms)
        for (auto& tb : b.terms) {
            FieldElement c = ta.second * tb.second;
            if (c.is_zero()) continue;
            Exp e = ta.first.plus(tb.first);
            auto [it, fresh] = acc.try_emplace(e, c);
            if (!fresh) {
                it->second = it->second + c;
                if (it->second.is_zero()) acc.erase(it);
            }
        }
    r.terms.assign(acc.begin(), acc.end());
    return r;
}

TPoly tp_scale(const TPoly& a, const FieldElement& c) {
    if (c.is_zero()) return TPoly::zero(a.K, a.d);
    TPoly r = a;
    for (auto& t : r.terms) t.second = t.second * c;
    return r;
}

TPoly tp_pow(const TPoly& a, uint64_t k) {
    TPoly r = TPoly::one(a.K, a.d);
    TPoly b = a;
    while (k) {
        if (k & 1) r = tp_mul(r, b);
        b = tp_mul(b, b);
        k >>= 1;
    }
    return r;
}

TPoly tp_pow_p(const TPoly& a) {
    TPoly r = a;
    uint32_t p = a.K->p();
    for (auto& t : r.terms) {
        t.first = t.first.scaled(p);
        t.second = t.second.pow_p();
    }
    return r;
}

int tp_cmp(const TPoly& a, const TPoly& b) {
    size_t n = std::min(a.terms.size(), b.terms.size());
    for (size_t i = 0; i < n; ++i) {
        int c = exp_cmp(a.terms[i].first, b.terms[i].first);
        if (c) return c;
        c = fe_cmp(a.terms[i].second, b.terms[i].second);
        if (c) return c;
    }
    if (a.terms.size() != b.terms.size()) return a.terms.size() < b.terms.size() ? -1 : 1;
    return 0;
}

Exp digit_decode(uint32_t p, uint32_t d, uint32_t idx) {
    Exp j;
    for (uint32_t v = 0; v < d; ++v) {
        j.e[v] = (uint16_t)(idx % p);
        idx /= p;
    }
    return j;
}

uint32_t digit_encode(uint32_t p, uint32_t d, const Exp& j) {
    uint32_t idx = 0;
    for (uint32_t v = d; v-- > 0;) idx = idx * p + j.e[v];
    return idx;
}

std::vector<TPoly> cartier_split(const TPoly& g) {
    const FieldPtr& K = g.K;
    uint32_t p = K->p();
    uint32_t L = K->pbasis_size();
    uint32_t nd = digit_count(p, g.d);
    std::vector<TPoly> out((size_t)nd * L);
    for (auto& b : out) {
        b.K = K;
        b.d = g.d;
    }
    for (auto& t : g.terms) {
        Exp j, q;
        for (uint32_t v = 0; v < g.d; ++v) {
            j.e[v] = (uint16_t)(t.first.e[v] % p);
            q.e[v] = (uint16_t)(t.first.e[v] / p);
        }
        uint32_t jidx = digit_encode(p, g.d, j);
        for (auto& [l, piece] : t.second.pi_all())
            out[(size_t)jidx * L + l].terms.push_back({q, std::move(piece)});
    }
    for (auto& b : out) b.normalize();
    return out;
}

TPoly cartier_poly(const TPoly& g, const Exp& j, uint32_t l) {
    const FieldPtr& K = g.K;
    uint32_t p = K->p();
    TPoly out(K, g.d);
    for (auto& t : g.terms) {
        bool match = true;
        Exp q;
        for (uint32_t v = 0; v < g.d && match; ++v) {
            if (t.first.e[v] % p != j.e[v]) match = false;
            q.e[v] = (uint16_t)(t.first.e[v] / p);
        }
        if (!match) continue;
        FieldElement piece = t.second.pi_project(l);
        if (!piece.is_zero()) out.terms.push_back({q, std::move(piece)});
    }
    out.normalize();
    return out;
}

TPoly tp_lift(const TPoly& a, uint32_t d, uint32_t v) {
    if (a.d != 1) throw internal_error("tp_lift: source must be univariate");
    TPoly r(a.K, d);
    r.terms.reserve(a.terms.size());
    for (auto& t : a.terms) {
        Exp e;
        e.e[v] = t.first.e[0];
        r.terms.push_back({e, t.second});
    }
    r.normalize();
    return r;
}

std::string TPoly::to_string(const std::vector<std::string>& varnames) const {
    if (terms.empty()) return "0";
    std::string s;
    for (auto& t : terms) {
        if (!s.empty()) s += "+";
        std::string coef = t.second.to_string();
        bool compound = coef.find('+') != std::string::npos || coef.find('/') != std::string::npos;
        std::string mono;
        for (uint32_t v = 0; v < d; ++v) {
            if (t.first.e[v] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += v < varnames.size() ? varnames[v] : "t" + std::to_string(v + 1);
            if (t.first.e[v] > 1) mono += "^" + std::to_string(t.first.e[v]);
        }
        if (mono.empty()) {
            s += compound ? "(" + coef + ")" : coef;
        } else if (coef == "1") {
            s += mono;
        } else {
            s += (compound ? "(" + coef + ")" : coef) + "*" + mono;
        }
    }
    return s;
}

}  // namespace zca
