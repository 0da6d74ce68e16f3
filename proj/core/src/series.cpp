#include "zca/series.hpp"

#include <algorithm>
#include <unordered_map>

#include "zca/errors.hpp"

namespace zca {

namespace {

struct ExpHash {
    size_t operator()(const Exp& e) const {
        size_t h = 1469598103934665603ull;
        for (auto x : e.e) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return h;
    }
};

using CoeffMap = std::unordered_map<Exp, FieldElement, ExpHash>;

}  // namespace

std::vector<Exp> exponents_up_to(uint32_t d, uint32_t T) {
    // count = C(T+d, d)
    uint64_t count = 1;
    for (uint32_t i = 1; i <= d; ++i) count = count * (T + i) / i;
    if (count > 6000000) throw resource_error("exponent range too large: C(T+d,d) > 6e6");
    std::vector<Exp> out;
    out.reserve((size_t)count);
    Exp cur;
    // recursive enumeration, then canonical sort
    auto rec = [&](auto&& self, uint32_t v, uint32_t rem) -> void {
        if (v == d) {
            out.push_back(cur);
            return;
        }
        for (uint32_t k = 0; k <= rem; ++k) {
            cur.e[v] = (uint16_t)k;
            self(self, v + 1, rem - k);
        }
        cur.e[v] = 0;
    };
    rec(rec, 0, T);
    std::sort(out.begin(), out.end(), [](const Exp& a, const Exp& b) { return exp_cmp(a, b) < 0; });
    return out;
}

SeriesTrunc SeriesTrunc::from_poly(const TPoly& p, uint32_t T) {
    SeriesTrunc s(p.K, p.d, T);
    for (auto it = p.terms.rbegin(); it != p.terms.rend(); ++it)
        if (it->first.total() <= T) s.terms.push_back(*it);
    s.normalize();
    return s;
}

TPoly SeriesTrunc::to_poly() const {
    TPoly p(K, d);
    p.terms.assign(terms.rbegin(), terms.rend());
    return p;
}

FieldElement SeriesTrunc::coeff(const Exp& n) const {
    auto it = std::lower_bound(terms.begin(), terms.end(), n, [](const auto& t, const Exp& key) {
        return exp_cmp(t.first, key) < 0;
    });
    if (it != terms.end() && it->first == n) return it->second;
    return FieldElement::zero(K);
}

void SeriesTrunc::set_coeff(const Exp& n, FieldElement v) {
    auto it = std::lower_bound(terms.begin(), terms.end(), n, [](const auto& t, const Exp& key) {
        return exp_cmp(t.first, key) < 0;
    });
    if (it != terms.end() && it->first == n) {
        if (v.is_zero())
            terms.erase(it);
        else
            it->second = std::move(v);
    } else if (!v.is_zero()) {
        terms.insert(it, {n, std::move(v)});
    }
}

SeriesTrunc SeriesTrunc::truncated(uint32_t T) const {
    SeriesTrunc s(K, d, std::min(T, order));
    for (auto& t : terms)
        if (t.first.total() <= s.order) s.terms.push_back(t);
    return s;
}

void SeriesTrunc::normalize() {
    std::sort(terms.begin(), terms.end(),
              [](const auto& x, const auto& y) { return exp_cmp(x.first, y.first) < 0; });
    std::vector<std::pair<Exp, FieldElement>> out;
    out.reserve(terms.size());
    for (auto& t : terms) {
        if (t.first.total() > order) continue;
        if (!out.empty() && out.back().first == t.first) {
            out.back().second = out.back().second + t.second;
            if (out.back().second.is_zero()) out.pop_back();
        } else if (!t.second.is_zero()) {
            out.push_back(std::move(t));
        }
    }
    terms = std::move(out);
}

SeriesTrunc sb_add(const SeriesTrunc& a, const SeriesTrunc& b) {
    SeriesTrunc r(a.K ? a.K : b.K, std::max(a.d, b.d), std::min(a.order, b.order));
    for (auto& t : a.terms)
        if (t.first.total() <= r.order) r.terms.push_back(t);
    for (auto& t : b.terms)
        if (t.first.total() <= r.order) r.terms.push_back(t);
    r.normalize();
    return r;
}

SeriesTrunc sb_sub(const SeriesTrunc& a, const SeriesTrunc& b) {
    SeriesTrunc nb = b;
    for (auto& t : nb.terms) t.second = -t.second;
    return sb_add(a, nb);
}

SeriesTrunc sb_mul(const SeriesTrunc& a, const SeriesTrunc& b) {
    SeriesTrunc r(a.K ? a.K : b.K, std::max(a.d, b.d), std::min(a.order, b.order));
    for (auto& ta : a.terms) {
        uint32_t da = ta.first.total();
        if (da > r.order) break;
        for (auto& tb : b.terms) {
            if (da + tb.first.total() > r.order) break;
            FieldElement c = ta.second * tb.second;
            if (!c.is_zero()) r.terms.push_back({ta.first.plus(tb.first), std::move(c)});
        }
    }
    r.normalize();
    return r;
}

SeriesTrunc sb_mul_poly(const SeriesTrunc& a, const TPoly& b) {
    SeriesTrunc r(a.K ? a.K : b.K, std::max(a.d, b.d), a.order);
    for (auto& ta : a.terms)
        for (auto& tb : b.terms) {
            if (ta.first.total() + tb.first.total() > r.order) continue;
            FieldElement c = ta.second * tb.second;
            if (!c.is_zero()) r.terms.push_back({ta.first.plus(tb.first), std::move(c)});
        }
    r.normalize();
    return r;
}

SeriesTrunc sb_scale(const SeriesTrunc& a, const FieldElement& c) {
    SeriesTrunc r = a;
    if (c.is_zero()) {
        r.terms.clear();
        return r;
    }
    for (auto& t : r.terms) t.second = t.second * c;
    r.normalize();
    return r;
}

SeriesTrunc sb_pow_p(const SeriesTrunc& a) {
    uint32_t p = a.K->p();
    SeriesTrunc r(a.K, a.d, a.order * p + p - 1);
    r.terms.reserve(a.terms.size());
    for (auto& t : a.terms) r.terms.push_back({t.first.scaled(p), t.second.pow_p()});
    return r;
}

bool sb_equal_through(const SeriesTrunc& a, const SeriesTrunc& b, uint32_t T) {
    if (T > a.order || T > b.order)
        throw precision_error("sb_equal_through: comparison order exceeds exact window");
    auto ta = a.truncated(T);
    auto tb = b.truncated(T);
    return ta.terms == tb.terms;
}

SeriesTrunc cartier_series(const SeriesTrunc& g, const Exp& j, uint32_t l) {
    const FieldPtr& K = g.K;
    uint32_t p = K->p();
    uint32_t j_norm = j.total();
    if (g.order < j_norm)
        throw precision_error("cartier: truncation order " + std::to_string(g.order) +
                              " is below the digit weight " + std::to_string(j_norm));
    SeriesTrunc out(K, g.d, (g.order - j_norm) / p);
    for (auto& t : g.terms) {
        bool match = true;
        Exp q;
        for (uint32_t v = 0; v < g.d && match; ++v) {
            if (t.first.e[v] % p != j.e[v]) match = false;
            q.e[v] = (uint16_t)(t.first.e[v] / p);
        }
        if (!match || q.total() > out.order) continue;
        FieldElement piece = t.second.pi_project(l);
        if (!piece.is_zero()) out.terms.push_back({q, std::move(piece)});
    }
    out.normalize();
    return out;
}

bool cartier_decompose_check(const SeriesTrunc& g) {
    const FieldPtr& K = g.K;
    uint32_t p = K->p();
    uint32_t nd = digit_count(p, g.d);
    if (g.order < (p - 1) * g.d) throw precision_error("cartier_decompose_check: order too small");
    SeriesTrunc recon;
    bool first = true;
    for (uint32_t jidx = 0; jidx < nd; ++jidx) {
        Exp j = digit_decode(p, g.d, jidx);
        SeriesTrunc acc;
        bool afirst = true;
        for (uint32_t l = 0; l < K->pbasis_size(); ++l) {
            SeriesTrunc c = cartier_series(g, j, l);
            SeriesTrunc cp = sb_pow_p(c);
            // multiply by the basis monomial h_l
            FieldElement h = FieldElement::one(K);
            const Exp& be = K->pbasis_exp(l);
            for (uint32_t i = 0; i < K->r(); ++i)
                h = h * FieldElement::var(K, i).pow(be.e[i]);
            cp = sb_scale(cp, h);
            acc = afirst ? cp : sb_add(acc, cp);
            afirst = false;
        }
        // shift by t^j
        SeriesTrunc piece(K, g.d, acc.order + j.total());
        for (auto& t : acc.terms) piece.terms.push_back({t.first.plus(j), t.second});
        piece.normalize();
        recon = first ? piece : sb_add(recon, piece);
        first = false;
    }
    uint32_t T = std::min(g.order, recon.order);
    return sb_equal_through(g, recon, T);
}

// ---------------------------------------------------------------------------

AlgebraicInput AlgebraicInput::rational(TPoly A, TPoly B) {
    if (B.is_zero()) throw input_error("rational input: zero denominator");
    AlgebraicInput in;
    in.kind = Kind::Rational;
    in.K = A.K ? A.K : B.K;
    in.d = std::max(A.d, B.d);
    in.A = std::move(A);
    in.B = std::move(B);
    if (in.B.at_zero().is_zero()) {
        // accepted only with an order-by-order division certificate
        if (in.d != 1)
            throw input_error(
                "rational input: denominator has zero constant term; for d > 1 this is rejected "
                "at load");
        if (!in.A.is_zero()) {
            uint32_t vA = in.A.terms.back().first.total();
            uint32_t vB = in.B.terms.back().first.total();
            if (vA < vB) throw input_error("rational input: A/B is not a power series");
        }
    }
    return in;
}

AlgebraicInput AlgebraicInput::annihilator(FieldPtr K, uint32_t d, std::vector<TPoly> P,
                                           std::vector<std::pair<Exp, FieldElement>> seed) {
    while (!P.empty() && P.back().is_zero()) P.pop_back();
    if (P.size() < 2) throw input_error("annihilator: polynomial must have positive degree in X");
    AlgebraicInput in;
    in.kind = Kind::Annihilator;
    in.K = std::move(K);
    in.d = d;
    in.P_coeffs = std::move(P);
    in.seed = std::move(seed);
    in.seed_order = 0;
    for (auto& s : in.seed) in.seed_order = std::max<int64_t>(in.seed_order, s.first.total());
    return in;
}

uint32_t AlgebraicInput::x_degree() const { return (uint32_t)P_coeffs.size() - 1; }

uint32_t AlgebraicInput::height() const {
    uint32_t h = 0;
    for (auto& c : P_coeffs) h = std::max(h, c.deg());
    return h;
}

namespace {

// order-by-order division N/D with D(0) invertible, exact through T
SeriesTrunc divide_unit(const FieldPtr& K, uint32_t d, const CoeffMap& N, const CoeffMap& D,
                        uint32_t T) {
    auto exps = exponents_up_to(d, T);
    std::unordered_map<Exp, uint32_t, ExpHash> pos;
    pos.reserve(exps.size());
    for (uint32_t i = 0; i < exps.size(); ++i) pos[exps[i]] = i;

    FieldElement unit_inv = [&] {
        auto it = D.find(Exp{});
        if (it == D.end() || it->second.is_zero())
            throw internal_error("divide_unit: denominator constant term is zero");
        return it->second.inverse();
    }();

    std::vector<FieldElement> out(exps.size(), FieldElement::zero(K));
    std::vector<std::pair<Exp, FieldElement>> dterms(D.begin(), D.end());
    for (uint32_t i = 0; i < exps.size(); ++i) {
        const Exp& n = exps[i];
        FieldElement acc = [&] {
            auto it = N.find(n);
            return it == N.end() ? FieldElement::zero(K) : it->second;
        }();
        for (auto& [k, dk] : dterms) {
            if (k.is_zero() || !n.divisible_by(k)) continue;
            auto it = pos.find(n.minus(k));
            acc = acc - dk * out[it->second];
        }
        out[i] = acc * unit_inv;
    }
    SeriesTrunc s(K, d, T);
    for (uint32_t i = 0; i < exps.size(); ++i)
        if (!out[i].is_zero()) s.terms.push_back({exps[i], out[i]});
    return s;
}

CoeffMap to_map(const TPoly& p) {
    CoeffMap m;
    for (auto& t : p.terms) m.emplace(t.first, t.second);
    return m;
}

CoeffMap to_map(const SeriesTrunc& s) {
    CoeffMap m;
    for (auto& t : s.terms) m.emplace(t.first, t.second);
    return m;
}

SeriesTrunc expand_rational(const AlgebraicInput& in, uint32_t T) {
    if (in.A.is_zero()) return SeriesTrunc(in.K, in.d, T);
    TPoly A = in.A, B = in.B;
    if (B.at_zero().is_zero()) {
        // d == 1, validated at load: factor out the t-power of B
        uint32_t vB = B.terms.back().first.total();
        uint32_t vA = A.terms.back().first.total();
        if (vA < vB) throw input_error("rational input: A/B is not a power series");
        Exp shift;
        shift.e[0] = (uint16_t)vB;
        for (auto& t : A.terms) t.first = t.first.minus(shift);
        for (auto& t : B.terms) t.first = t.first.minus(shift);
    }
    return divide_unit(in.K, in.d, to_map(A), to_map(B), T);
}

// evaluate an X-polynomial with TPoly coefficients at a truncated series
SeriesTrunc eval_xpoly(const std::vector<TPoly>& P, const SeriesTrunc& f, uint32_t T) {
    const FieldPtr& K = f.K;
    SeriesTrunc r(K, f.d, T);
    for (size_t i = P.size(); i-- > 0;) {
        r = sb_mul(r, f.truncated(T));
        r.order = T;  // polynomial coefficients are exact; the min() in sb_mul is f's window
        r = sb_add(r, SeriesTrunc::from_poly(P[i], T));
    }
    return r;
}

std::vector<TPoly> xpoly_derivative(const std::vector<TPoly>& P) {
    std::vector<TPoly> dP;
    const FieldPtr& K = P[0].K;
    for (size_t i = 1; i < P.size(); ++i) {
        FieldElement c = FieldElement::from_int(K, (int64_t)i);
        dP.push_back(tp_scale(P[i], c));
    }
    while (!dP.empty() && dP.back().is_zero()) dP.pop_back();
    return dP;
}

SeriesTrunc expand_annihilator(const AlgebraicInput& in, uint32_t T);

// P(X) = R(X^p): expand the root of R and take the p-th root
SeriesTrunc expand_inseparable(const AlgebraicInput& in, uint32_t T) {
    const FieldPtr& K = in.K;
    uint32_t p = K->p();
    std::vector<TPoly> R;
    for (size_t i = 0; i < in.P_coeffs.size(); i += p) R.push_back(in.P_coeffs[i]);
    if (R.size() < 2)
        throw input_error("annihilator: polynomial is constant in X after p-th root reduction");
    std::vector<std::pair<Exp, FieldElement>> gseed;
    for (auto& s : in.seed) gseed.push_back({s.first.scaled(p), s.second.pow_p()});
    AlgebraicInput gin = AlgebraicInput::annihilator(K, in.d, R, std::move(gseed));
    gin.seed_order = in.seed_order * p + p - 1;
    SeriesTrunc g = expand_annihilator(gin, T * p + p - 1);
    SeriesTrunc f(K, in.d, T);
    for (auto& t : g.terms) {
        bool mult = true;
        Exp q;
        for (uint32_t v = 0; v < g.d; ++v) {
            if (t.first.e[v] % p != 0) mult = false;
            q.e[v] = (uint16_t)(t.first.e[v] / p);
        }
        if (!mult)
            throw input_error("annihilator: no power-series root (p-th root does not exist)");
        FieldElement root = t.second.pi_project(K->pbasis_one());
        if (!(root.pow_p() == t.second))
            throw input_error(
                "annihilator: no power-series root (coefficient is not a p-th power)");
        if (q.total() <= T && !root.is_zero()) f.terms.push_back({q, std::move(root)});
    }
    f.normalize();
    return f;
}

SeriesTrunc expand_annihilator(const AlgebraicInput& in, uint32_t T) {
    const FieldPtr& K = in.K;
    uint32_t Ts = (uint32_t)in.seed_order;

    SeriesTrunc f(K, in.d, Ts);
    for (auto& s : in.seed)
        if (!s.second.is_zero()) f.terms.push_back(s);
    f.normalize();

    // the seed itself must satisfy the equation through its own order
    {
        SeriesTrunc res = eval_xpoly(in.P_coeffs, f, Ts);
        if (!res.terms.empty())
            throw input_error("annihilator: seed is inconsistent with P at total degree " +
                              std::to_string(res.terms.front().first.total()));
    }
    if (T <= Ts) return f.truncated(T);

    std::vector<TPoly> dP = xpoly_derivative(in.P_coeffs);
    if (dP.empty()) return expand_inseparable(in, T);

    SeriesTrunc pv = eval_xpoly(dP, f, Ts);
    if (pv.terms.empty())
        throw input_error(
            "annihilator: branch not isolated by the seed; first ambiguous total degree " +
            std::to_string(Ts + 1));
    uint32_t v = pv.terms.front().first.total();

    if (v == 0) {
        // Newton iteration; the unit derivative pins a unique branch
        uint32_t correct = Ts;
        while (correct < T) {
            uint32_t next = std::min(2 * correct + 1, T);
            SeriesTrunc fx = f;
            fx.order = next;
            SeriesTrunc num = eval_xpoly(in.P_coeffs, fx, next);
            SeriesTrunc den = eval_xpoly(dP, fx, next);
            SeriesTrunc quot = divide_unit(K, in.d, to_map(num), to_map(den), next);
            f = sb_sub(fx, quot);
            correct = next;
        }
        return f;
    }

    // undetermined coefficients, one total degree at a time
    for (uint32_t k = Ts + 1; k <= T; ++k) {
        SeriesTrunc fx = f;
        fx.order = k + v;
        SeriesTrunc res = eval_xpoly(in.P_coeffs, fx, k + v);
        for (auto& t : res.terms)
            if (t.first.total() < k + v)
                throw input_error("annihilator: no power-series root extends the seed (residual "
                                  "at total degree " +
                                  std::to_string(t.first.total()) + ")");
        // linear system over the unknowns at total degree k
        std::vector<Exp> unknowns, eqs;
        for (auto& e : exponents_up_to(in.d, k + v)) {
            if (e.total() == k) unknowns.push_back(e);
            if (e.total() == k + v) eqs.push_back(e);
        }
        size_t nu = unknowns.size(), ne = eqs.size();
        std::vector<std::vector<FieldElement>> M(ne);
        std::vector<FieldElement> rhs(ne, FieldElement::zero(K));
        for (size_t r = 0; r < ne; ++r) {
            M[r].assign(nu, FieldElement::zero(K));
            rhs[r] = -res.coeff(eqs[r]);
            for (size_t c = 0; c < nu; ++c)
                if (eqs[r].divisible_by(unknowns[c]))
                    M[r][c] = pv.coeff(eqs[r].minus(unknowns[c]));
        }
        // Gaussian elimination
        std::vector<FieldElement> sol(nu, FieldElement::zero(K));
        std::vector<int> pivot_col(ne, -1);
        size_t row = 0;
        for (size_t col = 0; col < nu && row < ne; ++col) {
            size_t pr = row;
            while (pr < ne && M[pr][col].is_zero()) ++pr;
            if (pr == ne) continue;
            std::swap(M[pr], M[row]);
            std::swap(rhs[pr], rhs[row]);
            FieldElement inv = M[row][col].inverse();
            for (size_t c = col; c < nu; ++c) M[row][c] = M[row][c] * inv;
            rhs[row] = rhs[row] * inv;
            for (size_t r2 = 0; r2 < ne; ++r2) {
                if (r2 == row || M[r2][col].is_zero()) continue;
                FieldElement factor = M[r2][col];
                for (size_t c = col; c < nu; ++c) M[r2][c] = M[r2][c] - factor * M[row][c];
                rhs[r2] = rhs[r2] - factor * rhs[row];
            }
            pivot_col[row] = (int)col;
            ++row;
        }
        for (size_t r2 = row; r2 < ne; ++r2)
            if (!rhs[r2].is_zero())
                throw input_error("annihilator: no power-series root extends the seed");
        std::vector<bool> pivoted(nu, false);
        for (size_t r2 = 0; r2 < row; ++r2) {
            sol[pivot_col[r2]] = rhs[r2];
            pivoted[pivot_col[r2]] = true;
        }
        for (size_t c = 0; c < nu; ++c)
            if (!pivoted[c])
                throw input_error(
                    "annihilator: branch not isolated by the seed; first ambiguous total degree " +
                    std::to_string(k));
        f.order = k;
        for (size_t c = 0; c < nu; ++c)
            if (!sol[c].is_zero()) f.terms.push_back({unknowns[c], std::move(sol[c])});
        f.normalize();
    }
    return f;
}

}  // namespace

SeriesTrunc expand_series(const AlgebraicInput& input, uint32_t T) {
    switch (input.kind) {
        case AlgebraicInput::Kind::Rational:
            return expand_rational(input, T);
        case AlgebraicInput::Kind::Annihilator:
            return expand_annihilator(input, T);
    }
    throw internal_error("expand_series: bad kind");
}

FieldElement CoeffOracle::coeff_at(const Exp& n) {
    std::lock_guard<std::mutex> lock(mu_);
    uint32_t need = n.total();
    if (!memo_ || memo_->order < need) {
        uint32_t target = std::max<uint32_t>(need, memo_ ? memo_->order * 2 : 8);
        memo_ = expand_series(input_, target);
    }
    return memo_->coeff(n);
}

void CoeffOracle::ensure_order(uint32_t T) {
    std::lock_guard<std::mutex> lock(mu_);
    if (!memo_ || memo_->order < T) memo_ = expand_series(input_, T);
}

std::string SeriesTrunc::to_string(const std::vector<std::string>& varnames) const {
    TPoly p = to_poly();
    std::string s = p.to_string(varnames);
    s += " + O(deg " + std::to_string(order + 1) + ")";
    return s;
}

}  // namespace zca
