#include "zca/ore.hpp"

#include <algorithm>

#include "zca/errors.hpp"

namespace zca {

namespace {

using Matrix = std::vector<std::vector<TPoly>>;  // row-major

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    size_t n = a.size(), m = b[0].size(), k = b.size();
    const TPoly& probe = a[0][0];
    Matrix r(n, std::vector<TPoly>(m, TPoly::zero(probe.K, probe.d)));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l].is_zero()) continue;
            for (size_t j = 0; j < m; ++j) {
                if (b[l][j].is_zero()) continue;
                r[i][j] = tp_add(r[i][j], tp_mul(a[i][l], b[l][j]));
            }
        }
    return r;
}

Matrix mat_pow(Matrix base, uint64_t k) {
    size_t n = base.size();
    const TPoly& probe = base[0][0];
    Matrix r(n, std::vector<TPoly>(n, TPoly::zero(probe.K, probe.d)));
    for (size_t i = 0; i < n; ++i) r[i][i] = TPoly::one(probe.K, probe.d);
    while (k) {
        if (k & 1) r = mat_mul(r, base);
        base = mat_mul(base, base);
        k >>= 1;
    }
    return r;
}

TPoly det(const Matrix& m) {
    size_t n = m.size();
    const TPoly& probe = m[0][0];
    if (n == 1) return m[0][0];
    TPoly acc = TPoly::zero(probe.K, probe.d);
    // cofactor expansion along the first row; dimensions stay tiny
    for (size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        Matrix minor(n - 1, std::vector<TPoly>(n - 1, TPoly::zero(probe.K, probe.d)));
        for (size_t i = 1; i < n; ++i) {
            size_t cc = 0;
            for (size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor[i - 1][cc++] = m[i][c];
            }
        }
        TPoly term = tp_mul(m[0][j], det(minor));
        acc = (j % 2 == 0) ? tp_add(acc, term) : tp_sub(acc, term);
    }
    return acc;
}

// enumerate size-k subsets of 0..n-1 in lexicographic order
bool next_subset(std::vector<uint32_t>& idx, uint32_t n) {
    uint32_t k = (uint32_t)idx.size();
    for (uint32_t i = k; i-- > 0;) {
        if (idx[i] + (k - i) < n) {
            ++idx[i];
            for (uint32_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

// rank of the n x c matrix whose columns are cols (each of dimension n),
// tested by scanning square minors; dimensions never exceed s+1
uint32_t matrix_rank(const std::vector<const std::vector<TPoly>*>& cols) {
    if (cols.empty()) return 0;
    uint32_t n = (uint32_t)cols[0]->size();
    uint32_t c = (uint32_t)cols.size();
    for (uint32_t k = std::min(n, c); k >= 1; --k) {
        std::vector<uint32_t> rows(k), cs(k);
        for (uint32_t i = 0; i < k; ++i) rows[i] = i;
        do {
            for (uint32_t i = 0; i < k; ++i) cs[i] = i;
            do {
                Matrix sub(k);
                for (uint32_t i = 0; i < k; ++i) {
                    sub[i].reserve(k);
                    for (uint32_t j = 0; j < k; ++j) sub[i].push_back((*cols[cs[j]])[rows[i]]);
                }
                if (!det(sub).is_zero()) return k;
            } while (next_subset(cs, c));
        } while (next_subset(rows, n));
    }
    return 0;
}

}  // namespace

std::vector<TPoly> find_linear_dependency(const std::vector<std::vector<TPoly>>& V) {
    if (V.empty()) throw input_error("find_linear_dependency: no vectors");
    uint32_t n = (uint32_t)V[0].size();
    const TPoly* probe = nullptr;
    for (auto& v : V)
        for (auto& e : v)
            if (e.K) probe = &e;
    if (!probe) throw input_error("find_linear_dependency: all entries empty");
    FieldPtr K = probe->K;
    uint32_t dd = probe->d;
    auto zero = TPoly::zero(K, dd);
    auto one = TPoly::one(K, dd);

    std::vector<uint32_t> kept;
    for (uint32_t k = 0; k < V.size(); ++k) {
        std::vector<const std::vector<TPoly>*> cols;
        for (auto i : kept) cols.push_back(&V[i]);
        cols.push_back(&V[k]);
        if (matrix_rank(cols) == kept.size() + 1) {
            kept.push_back(k);
            continue;
        }
        // V_k depends on the kept prefix
        std::vector<TPoly> Q(V.size(), zero);
        uint32_t e = (uint32_t)kept.size();
        if (e == 0) {
            Q[k] = one;  // V_k is the zero vector
            return Q;
        }
        // first row subset with invertible e x e submatrix
        std::vector<uint32_t> rows(e);
        for (uint32_t i = 0; i < e; ++i) rows[i] = i;
        TPoly detB = zero;
        do {
            Matrix B(e, std::vector<TPoly>(e, zero));
            for (uint32_t i = 0; i < e; ++i)
                for (uint32_t j = 0; j < e; ++j) B[i][j] = V[kept[j]][rows[i]];
            detB = det(B);
            if (!detB.is_zero()) break;
        } while (next_subset(rows, n));
        if (detB.is_zero()) throw internal_error("find_linear_dependency: no invertible submatrix");
        // Cramer: Q_{kept[i]} = -det(B_i), Q_k = det(B)
        for (uint32_t i = 0; i < e; ++i) {
            Matrix Bi(e, std::vector<TPoly>(e, zero));
            for (uint32_t r = 0; r < e; ++r)
                for (uint32_t j = 0; j < e; ++j)
                    Bi[r][j] = (j == i) ? V[k][rows[r]] : V[kept[j]][rows[r]];
            Q[kept[i]] = tp_neg(det(Bi));
        }
        Q[k] = detB;
        return Q;
    }
    throw input_error("find_linear_dependency: vectors are linearly independent");
}

uint32_t OreRelation::degree_bound() const {
    uint32_t m = 0;
    for (auto& q : Q) m = std::max(m, q.deg());
    return m;
}

void OreRelation::finalize() {
    if (Q.empty() || Q[0].is_zero()) throw internal_error("OreRelation: Q_0 is zero");
    s = (uint32_t)Q.size() - 1;
    uint32_t p = K->p();
    // degrees are additive over a domain: deg Q'_i = deg Q_i + (p^i-2) deg Q_0
    uint64_t m = Q[0].deg();
    uint64_t pi = 1;
    for (uint32_t i = 1; i <= s; ++i) {
        pi *= p;
        if (Q[i].is_zero()) continue;
        m = std::max<uint64_t>(m, Q[i].deg() + (pi - 2) * Q[0].deg());
    }
    // transitions form products of degree up to 2M; exponents live in 16 bits
    if (2 * m > 65535) throw resource_error("OreRelation: state degree bound " +
                                            std::to_string(m) +
                                            " exceeds the representable exponent range");
    M = (uint32_t)m;
}

std::vector<TPoly> OreRelation::rewrite_polys() const {
    uint32_t p = K->p();
    std::vector<TPoly> out;
    uint64_t pi = 1;
    for (uint32_t i = 1; i <= s; ++i) {
        pi *= p;
        out.push_back(tp_neg(tp_mul(Q[i], tp_pow(Q[0], pi - 2))));
    }
    return out;
}

OreRelation effective_ore(const AlgebraicInput& input, uint32_t verify_order) {
    if (input.kind != AlgebraicInput::Kind::Annihilator)
        throw input_error("effective_ore: annihilator input required");
    const FieldPtr& K = input.K;
    uint32_t p = K->p();
    uint32_t d = input.d;
    uint32_t s = input.x_degree();
    const std::vector<TPoly>& P = input.P_coeffs;

    // companion matrix scaled by the lead coefficient: C_1 = P_s * M
    auto zero = TPoly::zero(K, d);
    Matrix C1(s, std::vector<TPoly>(s, zero));
    for (uint32_t j = 0; j + 1 < s; ++j) C1[j + 1][j] = P[s];
    for (uint32_t i = 0; i < s; ++i) C1[i][s - 1] = tp_neg(P[i]);

    // V_j = P_s^{p^s - p^j} C_{p^j} e_1
    uint64_t ps = 1;
    for (uint32_t i = 0; i < s; ++i) ps *= p;
    std::vector<std::vector<TPoly>> V;
    uint64_t pj = 1;
    for (uint32_t j = 0; j <= s; ++j) {
        Matrix Cpj = mat_pow(C1, pj);
        TPoly scale = tp_pow(P[s], ps - pj);
        std::vector<TPoly> vj(s, zero);
        for (uint32_t i = 0; i < s; ++i) vj[i] = tp_mul(scale, Cpj[i][0]);
        V.push_back(std::move(vj));
        pj *= p;
    }

    std::vector<TPoly> Q = find_linear_dependency(V);

    // shift the relation down until Q_0 is nonzero
    uint32_t guard = 0;
    while (Q[0].is_zero()) {
        if (++guard > s + 1) throw internal_error("effective_ore: fix-up did not terminate");
        uint32_t k = 0;
        while (k < Q.size() && Q[k].is_zero()) ++k;
        if (k == Q.size()) throw internal_error("effective_ore: zero dependency");
        // scan digit tuples and projections for a nonvanishing Cartier image of Q_k
        bool found = false;
        for (uint32_t jidx = 0; jidx < digit_count(p, d) && !found; ++jidx) {
            Exp j = digit_decode(p, d, jidx);
            for (uint32_t l = 0; l < K->pbasis_size() && !found; ++l) {
                if (cartier_poly(Q[k], j, l).is_zero()) continue;
                std::vector<TPoly> nq(Q.size(), zero);
                for (uint32_t i = 0; i + 1 < Q.size(); ++i) nq[i] = cartier_poly(Q[i + 1], j, l);
                Q = std::move(nq);
                found = true;
            }
        }
        if (!found) throw internal_error("effective_ore: no digit with nonzero Cartier image");
    }

    OreRelation rel;
    rel.K = K;
    rel.d = d;
    rel.Q = std::move(Q);
    rel.finalize();

    uint32_t H = input.height();
    uint64_t bound = (uint64_t)H * s * ps;
    if (rel.degree_bound() > bound)
        throw internal_error("effective_ore: degree bound H s p^s violated");

    if (verify_order > 0 && !verify_ore(rel, input, verify_order))
        throw internal_error("effective_ore: relation fails the truncation check");
    return rel;
}

OreRelation ore_from_rational(const TPoly& A, const TPoly& B) {
    if (A.is_zero())
        throw input_error("ore_from_rational: zero numerator (the zero series needs no relation)");
    if (B.is_zero()) throw input_error("ore_from_rational: zero denominator");
    const FieldPtr& K = A.K ? A.K : B.K;
    uint32_t p = K->p();
    OreRelation rel;
    rel.K = K;
    rel.d = std::max(A.d, B.d);
    rel.Q = {tp_pow(A, p - 1), tp_neg(tp_pow(B, p - 1))};
    rel.finalize();
    return rel;
}

bool verify_ore(const OreRelation& rel, const AlgebraicInput& input, uint32_t T) {
    SeriesTrunc f = expand_series(input, T);
    SeriesTrunc acc(rel.K, rel.d, T);
    SeriesTrunc fp = f;  // f^{p^i}
    for (uint32_t i = 0; i < rel.Q.size(); ++i) {
        if (i > 0) fp = sb_pow_p(fp);
        if (!rel.Q[i].is_zero()) acc = sb_add(acc, sb_mul_poly(fp.truncated(T), rel.Q[i]));
    }
    return acc.terms.empty();
}

}  // namespace zca
