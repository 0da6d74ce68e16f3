#include "zca/apps.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <future>

namespace zca {

std::pair<TPoly, TPoly> LinearRecurrence::generating_function() const {
    uint32_t m = (uint32_t)coeffs.size();
    if (init.size() != m) throw input_error("recurrence: need exactly m initial terms");
    TPoly D = TPoly::one(K, 1);
    for (uint32_t j = 1; j <= m; ++j) {
        Exp e;
        e.e[0] = (uint16_t)j;
        D = tp_sub(D, TPoly::monomial(K, 1, e, coeffs[j - 1]));
    }
    TPoly N = TPoly::zero(K, 1);
    for (uint32_t n = 0; n < m; ++n) {
        FieldElement v = init[n];
        for (uint32_t j = 1; j <= n; ++j) v = v - coeffs[j - 1] * init[n - j];
        Exp e;
        e.e[0] = (uint16_t)n;
        N = tp_add(N, TPoly::monomial(K, 1, e, v));
    }
    return {N, D};
}

Dfa recurrence_zero_set(const std::vector<LinearRecurrence>& recs, const BuildOptions& opts) {
    if (recs.empty()) throw input_error("recurrence_zero_set: no recurrences");
    const FieldPtr& K = recs[0].K;
    for (auto& r : recs) {
        const FieldSpec &a = r.K->spec(), &b = K->spec();
        if (a.p != b.p || a.e != b.e || a.modulus != b.modulus || a.trans_vars != b.trans_vars)
            throw input_error("recurrence_zero_set: mixed coefficient fields");
    }
    uint32_t d = (uint32_t)recs.size();
    if (d > Exp::kMaxVars) throw resource_error("recurrence_zero_set: too many recurrences");

    std::vector<TPoly> N(d), D(d);
    for (uint32_t i = 0; i < d; ++i) {
        auto [n, dd] = recs[i].generating_function();
        N[i] = tp_lift(n, d, i);
        D[i] = tp_lift(dd, d, i);
    }
    if (d == 1) return build_zero_automaton_rational(N[0], D[0], opts);

    // f = sum_i N_i(t_i)/D_i(t_i) * prod_{j != i} 1/(1-t_j)
    //   = sum_i N_i (1-t_i) prod_{j != i} D_j / [prod_k D_k * prod_k (1-t_k)]
    std::vector<TPoly> one_minus(d);
    for (uint32_t i = 0; i < d; ++i) one_minus[i] = TPoly::one_minus(K, d, i, FieldElement::one(K));
    TPoly B = TPoly::one(K, d);
    for (uint32_t i = 0; i < d; ++i) B = tp_mul(B, tp_mul(D[i], one_minus[i]));
    TPoly A = TPoly::zero(K, d);
    for (uint32_t i = 0; i < d; ++i) {
        TPoly term = tp_mul(N[i], one_minus[i]);
        for (uint32_t j = 0; j < d; ++j)
            if (j != i) term = tp_mul(term, D[j]);
        A = tp_add(A, term);
    }
    return build_zero_automaton_rational(A, B, opts);
}

// ---------------------------------------------------------------------------

bool sunit_evaluate(const SUnitProblem& prob, const IntTuple& exponents) {
    uint32_t m = (uint32_t)prob.generators.size();
    uint32_t d = (uint32_t)prob.coeffs.size();
    if (exponents.size() != (size_t)m * d) throw input_error("sunit_evaluate: wrong arity");
    FieldElement acc = FieldElement::zero(prob.K);
    for (uint32_t i = 0; i < d; ++i) {
        FieldElement x = FieldElement::one(prob.K);
        for (uint32_t j = 0; j < m; ++j)
            x = x * prob.generators[j].pow(exponents[(size_t)i * m + j]);
        acc = acc + prob.coeffs[i] * x;
    }
    return acc == FieldElement::one(prob.K);
}

GroupAutomaticSet sunit_solutions(const SUnitProblem& prob, const BuildOptions& opts) {
    const FieldPtr& K = prob.K;
    uint32_t m = (uint32_t)prob.generators.size();
    uint32_t d = (uint32_t)prob.coeffs.size();
    if (m == 0 || d == 0) throw input_error("sunit: need generators and coefficients");
    for (auto& c : prob.coeffs)
        if (c.is_zero()) throw input_error("sunit: zero coefficient");
    for (auto& g : prob.generators)
        if (g.is_zero()) throw input_error("sunit: zero generator");
    uint32_t D = m * d;
    if (D > Exp::kMaxVars)
        throw resource_error("sunit: m*d = " + std::to_string(D) + " exceeds the variable cap " +
                             std::to_string(Exp::kMaxVars));

    // mask bit v = (i*m + j) set: exponent of generator j in block i is negative.
    // f_a has the exponential-sum coefficient -1 + sum_i c_i prod_j ghat^{n_ij},
    // which the kernel consumes directly in the character basis.
    auto build_one = [&](uint32_t mask) {
        auto ghat = [&](uint32_t i, uint32_t j) {
            uint32_t v = i * m + j;
            return (mask >> v) & 1 ? prob.generators[j].inverse() : prob.generators[j];
        };
        std::vector<std::vector<FieldElement>> sigma;
        std::vector<FieldElement> cs;
        sigma.push_back(std::vector<FieldElement>(D, FieldElement::one(K)));
        cs.push_back(-FieldElement::one(K));
        for (uint32_t i = 0; i < d; ++i) {
            std::vector<FieldElement> ch(D, FieldElement::one(K));
            for (uint32_t j = 0; j < m; ++j) ch[i * m + j] = ghat(i, j);
            sigma.push_back(std::move(ch));
            cs.push_back(prob.coeffs[i]);
        }
        return build_zero_automaton_expsum(K, D, std::move(sigma), std::move(cs), opts);
    };

    std::vector<Dfa> orthants(1u << D);
    {
        uint32_t jobs = std::max(1u, opts.jobs);
        if (jobs == 1) {
            for (uint32_t mask = 0; mask < orthants.size(); ++mask)
                orthants[mask] = build_one(mask);
        } else {
            std::atomic<uint32_t> next{0};
            auto worker = [&]() {
                while (true) {
                    uint32_t mask = next.fetch_add(1);
                    if (mask >= orthants.size()) return;
                    orthants[mask] = build_one(mask);
                }
            };
            std::vector<std::future<void>> fs;
            for (uint32_t t = 0; t < std::min<uint32_t>(jobs, (uint32_t)orthants.size()); ++t)
                fs.push_back(std::async(std::launch::async, worker));
            for (auto& f : fs) f.get();
        }
    }
    GroupSpec spec;
    spec.m = D;
    for (uint32_t i = 0; i < d; ++i)
        for (uint32_t j = 0; j < m; ++j)
            spec.labels.push_back("x" + std::to_string(i + 1) + "_g" + std::to_string(j + 1));
    return group_pullback(std::move(spec),
                          assemble_signed(K->p(), D, std::move(orthants)));
}

// ---------------------------------------------------------------------------

KMatrix kmat_identity(const FieldPtr& K, uint32_t n) {
    KMatrix I(n, std::vector<FieldElement>(n, FieldElement::zero(K)));
    for (uint32_t i = 0; i < n; ++i) I[i][i] = FieldElement::one(K);
    return I;
}

KMatrix kmat_mul(const KMatrix& a, const KMatrix& b) {
    size_t n = a.size(), m = b[0].size(), k = b.size();
    const FieldPtr& K = a[0][0].field();
    KMatrix r(n, std::vector<FieldElement>(m, FieldElement::zero(K)));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l].is_zero()) continue;
            for (size_t j = 0; j < m; ++j) r[i][j] = r[i][j] + a[i][l] * b[l][j];
        }
    return r;
}

FieldElement kmat_det(const KMatrix& a) {
    size_t n = a.size();
    const FieldPtr& K = a[0][0].field();
    if (n == 1) return a[0][0];
    FieldElement acc = FieldElement::zero(K);
    for (size_t j = 0; j < n; ++j) {
        if (a[0][j].is_zero()) continue;
        KMatrix minor;
        for (size_t i = 1; i < n; ++i) {
            std::vector<FieldElement> row;
            for (size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(a[i][c]);
            minor.push_back(std::move(row));
        }
        FieldElement term = a[0][j] * kmat_det(minor);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

KMatrix kmat_inverse(const KMatrix& a) {
    size_t n = a.size();
    const FieldPtr& K = a[0][0].field();
    FieldElement det = kmat_det(a);
    if (det.is_zero()) throw input_error("matrix: singular matrix has no inverse");
    KMatrix adj(n, std::vector<FieldElement>(n, FieldElement::zero(K)));
    if (n == 1) {
        adj[0][0] = FieldElement::one(K);
    } else {
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                KMatrix minor;
                for (size_t r = 0; r < n; ++r) {
                    if (r == i) continue;
                    std::vector<FieldElement> row;
                    for (size_t c = 0; c < n; ++c)
                        if (c != j) row.push_back(a[r][c]);
                    minor.push_back(std::move(row));
                }
                FieldElement cof = kmat_det(minor);
                if ((i + j) % 2) cof = -cof;
                adj[j][i] = cof;  // adjugate transposes the cofactor matrix
            }
    }
    for (auto& row : adj)
        for (auto& v : row) v = v / det;
    return adj;
}

KMatrix kron(const KMatrix& a, const KMatrix& b) {
    size_t na = a.size(), nb = b.size();
    const FieldPtr& K = a[0][0].field();
    KMatrix r(na * nb, std::vector<FieldElement>(na * nb, FieldElement::zero(K)));
    for (size_t i = 0; i < na; ++i)
        for (size_t j = 0; j < na; ++j)
            for (size_t k = 0; k < nb; ++k)
                for (size_t l = 0; l < nb; ++l) r[i * nb + k][j * nb + l] = a[i][j] * b[k][l];
    return r;
}

KMatrix kron_power(const KMatrix& a, uint32_t g) {
    KMatrix r = a;
    for (uint32_t i = 1; i < g; ++i) r = kron(r, a);
    return r;
}

MatrixResolvent matrix_resolvent(const KMatrix& C, int sign) {
    const FieldPtr& K = C[0][0].field();
    uint32_t n = (uint32_t)C.size();
    if (kmat_det(C).is_zero()) throw input_error("matrix_resolvent: singular matrix");
    KMatrix Cs = sign < 0 ? kmat_inverse(C) : C;
    // M(t) = I - t Cs over K[t], one variable
    std::vector<std::vector<TPoly>> M(n, std::vector<TPoly>(n, TPoly::zero(K, 1)));
    Exp t1;
    t1.e[0] = 1;
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j) {
            if (i == j) M[i][j] = TPoly::one(K, 1);
            M[i][j] = tp_sub(M[i][j], TPoly::monomial(K, 1, t1, Cs[i][j]));
        }
    auto det_p = [&](const std::vector<std::vector<TPoly>>& m) {
        auto self = [&](auto&& rec, const std::vector<std::vector<TPoly>>& mm) -> TPoly {
            size_t k = mm.size();
            if (k == 1) return mm[0][0];
            TPoly acc = TPoly::zero(K, 1);
            for (size_t j = 0; j < k; ++j) {
                if (mm[0][j].is_zero()) continue;
                std::vector<std::vector<TPoly>> minor;
                for (size_t i = 1; i < k; ++i) {
                    std::vector<TPoly> row;
                    for (size_t c = 0; c < k; ++c)
                        if (c != j) row.push_back(mm[i][c]);
                    minor.push_back(std::move(row));
                }
                TPoly term = tp_mul(mm[0][j], rec(rec, minor));
                acc = (j % 2 == 0) ? tp_add(acc, term) : tp_sub(acc, term);
            }
            return acc;
        };
        return self(self, m);
    };
    MatrixResolvent res;
    res.den = det_p(M);
    res.num.assign(n, std::vector<TPoly>(n, TPoly::zero(K, 1)));
    if (n == 1) {
        res.num[0][0] = TPoly::one(K, 1);
    } else {
        for (uint32_t i = 0; i < n; ++i)
            for (uint32_t j = 0; j < n; ++j) {
                std::vector<std::vector<TPoly>> minor;
                for (uint32_t r = 0; r < n; ++r) {
                    if (r == i) continue;
                    std::vector<TPoly> row;
                    for (uint32_t c = 0; c < n; ++c)
                        if (c != j) row.push_back(M[r][c]);
                    minor.push_back(std::move(row));
                }
                TPoly cof = det_p(minor);
                if ((i + j) % 2) cof = tp_neg(cof);
                res.num[j][i] = cof;
            }
    }
    return res;
}

bool matrix_evaluate(const MatrixProblem& prob, const IntTuple& exponents) {
    uint32_t m = (uint32_t)prob.gens.size();
    if (exponents.size() != m) throw input_error("matrix_evaluate: wrong arity");
    KMatrix acc = kmat_identity(prob.K, prob.dim);
    for (uint32_t k = 0; k < m; ++k) {
        KMatrix base = exponents[k] < 0 ? kmat_inverse(prob.gens[k]) : prob.gens[k];
        uint64_t e = (uint64_t)(exponents[k] < 0 ? -exponents[k] : exponents[k]);
        KMatrix pw = kmat_identity(prob.K, prob.dim);
        KMatrix b = base;
        while (e) {
            if (e & 1) pw = kmat_mul(pw, b);
            b = kmat_mul(b, b);
            e >>= 1;
        }
        acc = kmat_mul(acc, pw);
    }
    // evaluate each variety polynomial at the entries
    for (const TPoly& P : prob.variety) {
        FieldElement val = FieldElement::zero(prob.K);
        for (auto& t : P.terms) {
            FieldElement prod = t.second;
            for (uint32_t v = 0; v < prob.dim * prob.dim; ++v)
                for (uint16_t e = 0; e < t.first.e[v]; ++e)
                    prod = prod * acc[v / prob.dim][v % prob.dim];
            val = val + prod;
        }
        if (!val.is_zero()) return false;
    }
    return true;
}

GroupAutomaticSet matrix_intersection(const MatrixProblem& prob, const BuildOptions& opts) {
    const FieldPtr& K = prob.K;
    uint32_t m = (uint32_t)prob.gens.size();
    uint32_t dim = prob.dim;
    if (m == 0) throw input_error("matrix: no generators");
    if (m > Exp::kMaxVars) throw resource_error("matrix: too many generators");
    for (auto& C : prob.gens) {
        if (C.size() != dim) throw input_error("matrix: wrong generator size");
        if (kmat_det(C).is_zero()) throw input_error("matrix: generators must be invertible");
    }
    for (uint32_t i = 0; i < m; ++i)
        for (uint32_t j = i + 1; j < m; ++j) {
            auto ab = kmat_mul(prob.gens[i], prob.gens[j]);
            auto ba = kmat_mul(prob.gens[j], prob.gens[i]);
            if (ab != ba) throw input_error("matrix: generators do not commute");
        }
    if (prob.variety.empty()) throw input_error("matrix: no variety polynomials");

    // per sign pattern and per variety polynomial: a rational generating
    // function for n -> P(entries of prod C_k^{a_k n_k}); intersections at the
    // automaton level
    auto zero_set_of_pattern = [&](uint32_t mask) {
        Dfa acc;
        bool first = true;
        std::vector<KMatrix> signed_gens;
        for (uint32_t k = 0; k < m; ++k)
            signed_gens.push_back((mask >> k) & 1 ? kmat_inverse(prob.gens[k]) : prob.gens[k]);
        for (const TPoly& P : prob.variety) {
            // sum over monomials; fraction accumulated without reduction
            TPoly num = TPoly::zero(K, m);
            TPoly den = TPoly::one(K, m);
            for (auto& term : P.terms) {
                uint32_t g = term.first.total();
                TPoly tnum(K, m);
                TPoly tden = TPoly::one(K, m);
                if (g == 0) {
                    tnum = TPoly::constant(K, m, term.second);
                    for (uint32_t k = 0; k < m; ++k)
                        tden = tp_mul(tden, TPoly::one_minus(K, m, k, FieldElement::one(K)));
                } else {
                    uint64_t kd = 1;
                    for (uint32_t i = 0; i < g; ++i) kd *= dim;
                    if (kd > prob.kron_dim_ceiling)
                        throw resource_error(
                            "matrix: Kronecker dimension " + std::to_string(kd) +
                            " exceeds the ceiling " + std::to_string(prob.kron_dim_ceiling));
                    // entry indices of the lifted monomial
                    uint64_t I = 0, J = 0;
                    for (uint32_t v = 0; v < dim * dim; ++v)
                        for (uint16_t e = 0; e < term.first.e[v]; ++e) {
                            I = I * dim + v / dim;
                            J = J * dim + v % dim;
                        }
                    // fold row I of prod_k resolvent(C_k^{kron g})(t_k)
                    std::vector<TPoly> row;   // numerators over running den
                    TPoly rden = TPoly::one(K, m);
                    for (uint32_t k = 0; k < m; ++k) {
                        auto res = matrix_resolvent(kron_power(signed_gens[k], g), +1);
                        uint32_t n = (uint32_t)res.num.size();
                        std::vector<TPoly> next(n, TPoly::zero(K, m));
                        if (k == 0) {
                            for (uint32_t c = 0; c < n; ++c)
                                next[c] = tp_lift(res.num[(size_t)I][c], m, 0);
                        } else {
                            for (uint32_t r = 0; r < n; ++r) {
                                if (row[r].is_zero()) continue;
                                for (uint32_t c = 0; c < n; ++c) {
                                    if (res.num[r][c].is_zero()) continue;
                                    next[c] = tp_add(next[c],
                                                     tp_mul(row[r], tp_lift(res.num[r][c], m, k)));
                                }
                            }
                        }
                        row = std::move(next);
                        rden = tp_mul(rden, tp_lift(res.den, m, k));
                    }
                    tnum = tp_scale(row[(size_t)J], term.second);
                    tden = rden;
                }
                // num/den += tnum/tden
                num = tp_add(tp_mul(num, tden), tp_mul(tnum, den));
                den = tp_mul(den, tden);
            }
            Dfa z = build_zero_automaton_rational(num, den, opts);
            acc = first ? z : dfa_combine(BoolOp::And, acc, z);
            first = false;
        }
        return acc;
    };

    std::vector<Dfa> orthants(1u << m);
    uint32_t jobs = std::max(1u, opts.jobs);
    if (jobs == 1) {
        for (uint32_t mask = 0; mask < orthants.size(); ++mask)
            orthants[mask] = zero_set_of_pattern(mask);
    } else {
        std::atomic<uint32_t> next{0};
        auto worker = [&]() {
            while (true) {
                uint32_t mask = next.fetch_add(1);
                if (mask >= orthants.size()) return;
                orthants[mask] = zero_set_of_pattern(mask);
            }
        };
        std::vector<std::future<void>> fs;
        for (uint32_t t = 0; t < std::min<uint32_t>(jobs, (uint32_t)orthants.size()); ++t)
            fs.push_back(std::async(std::launch::async, worker));
        for (auto& f : fs) f.get();
    }

    GroupSpec spec;
    spec.m = m;
    for (uint32_t k = 0; k < m; ++k) spec.labels.push_back("C" + std::to_string(k + 1));
    return group_pullback(std::move(spec), assemble_signed(K->p(), m, std::move(orthants)));
}

}  // namespace zca
