#include "zca/kernel.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

namespace zca {

int state_tuple_cmp(const StateTuple& a, const StateTuple& b) {
    size_t n = std::min(a.size(), b.size());
    for (size_t i = 0; i < n; ++i) {
        int c = tp_cmp(a[i], b[i]);
        if (c) return c;
    }
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    return 0;
}

void canonicalize_state(StateSet& s) {
    s.erase(std::remove_if(s.begin(), s.end(),
                           [](const StateTuple& t) {
                               for (auto& r : t)
                                   if (!r.is_zero()) return false;
                               return true;  // h = 0 contributes a constant-1 factor
                           }),
            s.end());
    std::sort(s.begin(), s.end(), [](const StateTuple& a, const StateTuple& b) {
        return state_tuple_cmp(a, b) < 0;
    });
    s.erase(std::unique(s.begin(), s.end(),
                        [](const StateTuple& a, const StateTuple& b) {
                            return state_tuple_cmp(a, b) == 0;
                        }),
            s.end());
}

namespace {

// ---------------------------------------------------------------------------
// Interned coefficient arithmetic.  The reachable coefficients live in a
// finite set (the confinement that makes the orbit closure terminate), so
// value-level memoization turns field arithmetic into table lookups.

struct FeLess {
    bool operator()(const FieldElement& a, const FieldElement& b) const {
        return fe_cmp(a, b) < 0;
    }
};

class CoeffPool {
  public:
    explicit CoeffPool(FieldPtr K) : K_(std::move(K)) {
        intern(FieldElement::zero(K_));  // cid 0
        intern(FieldElement::one(K_));   // cid 1
    }

    uint32_t intern(const FieldElement& v) {
        auto [it, fresh] = ids_.try_emplace(v, (uint32_t)vals_.size());
        if (fresh) vals_.push_back(v);
        return it->second;
    }
    const FieldElement& value(uint32_t cid) const { return vals_[cid]; }

    uint32_t mul(uint32_t a, uint32_t b) {
        if (a == 0 || b == 0) return 0;
        if (a == 1) return b;
        if (b == 1) return a;
        uint64_t key = a < b ? ((uint64_t)a << 32 | b) : ((uint64_t)b << 32 | a);
        auto it = mul_memo_.find(key);
        if (it != mul_memo_.end()) return it->second;
        uint32_t r = intern(vals_[a] * vals_[b]);
        mul_memo_.emplace(key, r);
        return r;
    }
    uint32_t add(uint32_t a, uint32_t b) {
        if (a == 0) return b;
        if (b == 0) return a;
        uint64_t key = a < b ? ((uint64_t)a << 32 | b) : ((uint64_t)b << 32 | a);
        auto it = add_memo_.find(key);
        if (it != add_memo_.end()) return it->second;
        uint32_t r = intern(vals_[a] + vals_[b]);
        add_memo_.emplace(key, r);
        return r;
    }
    // nonzero projections (l, pi_l(v)) of the value of cid
    const std::vector<std::pair<uint32_t, uint32_t>>& pi(uint32_t cid) {
        if (cid < pi_memo_.size() && pi_known_[cid]) return pi_memo_[cid];
        if (pi_memo_.size() < vals_.size()) {
            pi_memo_.resize(vals_.size());
            pi_known_.resize(vals_.size(), 0);
        }
        std::vector<std::pair<uint32_t, uint32_t>> out;
        for (auto& [l, piece] : vals_[cid].pi_all()) out.push_back({l, intern(piece)});
        pi_memo_[cid] = std::move(out);
        pi_known_[cid] = 1;
        return pi_memo_[cid];
    }

  private:
    FieldPtr K_;
    std::map<FieldElement, uint32_t, FeLess> ids_;
    std::vector<FieldElement> vals_;
    std::unordered_map<uint64_t, uint32_t> mul_memo_, add_memo_;
    std::vector<std::vector<std::pair<uint32_t, uint32_t>>> pi_memo_;
    std::vector<uint8_t> pi_known_;
};

// polynomial over interned coefficients: descending graded-lex, no zeros
using CPoly = std::vector<std::pair<Exp, uint32_t>>;

CPoly to_cpoly(CoeffPool& pool, const TPoly& p) {
    CPoly r;
    r.reserve(p.terms.size());
    for (auto& t : p.terms) r.push_back({t.first, pool.intern(t.second)});
    return r;
}

// digit split of a product a*b: bucket (j, l) collects
// pi_l(coeff) t^{(exp - j)/p} over the product terms with exp ≡ j (mod p)
std::vector<CPoly> split_product(CoeffPool& pool, uint32_t p, uint32_t d, uint32_t L,
                                 const CPoly& a, const CPoly& b) {
    uint32_t nd = digit_count(p, d);
    // dense accumulation over the product exponent range
    uint32_t dims[Exp::kMaxVars];
    uint64_t total = 1;
    for (uint32_t v = 0; v < d; ++v) {
        uint32_t da = 0, db = 0;
        for (auto& t : a) da = std::max<uint32_t>(da, t.first.e[v]);
        for (auto& t : b) db = std::max<uint32_t>(db, t.first.e[v]);
        dims[v] = da + db + 1;
        total *= dims[v];
    }
    if (total > 40000000) throw resource_error("kernel: product exponent range too large");
    // accumulate raw product coefficients first (additivity of pi lets the
    // projections be applied afterwards)
    std::vector<uint32_t> dense((size_t)total, 0);
    std::vector<uint64_t> touched;
    for (auto& ta : a)
        for (auto& tb : b) {
            uint32_t c = pool.mul(ta.second, tb.second);
            if (!c) continue;
            uint64_t idx = 0;
            for (uint32_t v = d; v-- > 0;) idx = idx * dims[v] + ta.first.e[v] + tb.first.e[v];
            if (!dense[idx]) touched.push_back(idx);
            dense[idx] = pool.add(dense[idx], c);
        }
    std::vector<CPoly> buckets((size_t)nd * L);
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (uint64_t idx : touched) {
        uint32_t c = dense[idx];
        if (!c) continue;
        uint64_t rest = idx;
        Exp e;
        for (uint32_t v = 0; v < d; ++v) {
            e.e[v] = (uint16_t)(rest % dims[v]);
            rest /= dims[v];
        }
        Exp j, q;
        for (uint32_t v = 0; v < d; ++v) {
            j.e[v] = (uint16_t)(e.e[v] % p);
            q.e[v] = (uint16_t)(e.e[v] / p);
        }
        uint32_t jidx = digit_encode(p, d, j);
        for (auto& [l, pc] : pool.pi(c)) buckets[(size_t)jidx * L + l].push_back({q, pc});
    }
    // touched was sorted by dense index = reversed-variable lex, not graded-lex
    for (auto& bkt : buckets)
        std::sort(bkt.begin(), bkt.end(),
                  [](const auto& x, const auto& y) { return exp_cmp(x.first, y.first) > 0; });
    return buckets;
}

// dense-accumulated product over interned coefficients
CPoly cp_mul(CoeffPool& pool, uint32_t d, const CPoly& a, const CPoly& b) {
    if (a.empty() || b.empty()) return {};
    uint32_t dims[Exp::kMaxVars];
    uint64_t total = 1;
    for (uint32_t v = 0; v < d; ++v) {
        uint32_t da = 0, db = 0;
        for (auto& t : a) da = std::max<uint32_t>(da, t.first.e[v]);
        for (auto& t : b) db = std::max<uint32_t>(db, t.first.e[v]);
        dims[v] = da + db + 1;
        total *= dims[v];
    }
    if (total > 40000000) throw resource_error("kernel: product exponent range too large");
    std::vector<uint32_t> dense((size_t)total, 0);
    std::vector<uint64_t> touched;
    for (auto& ta : a)
        for (auto& tb : b) {
            uint32_t c = pool.mul(ta.second, tb.second);
            if (!c) continue;
            uint64_t idx = 0;
            for (uint32_t v = d; v-- > 0;) idx = idx * dims[v] + ta.first.e[v] + tb.first.e[v];
            if (!dense[idx]) touched.push_back(idx);
            dense[idx] = pool.add(dense[idx], c);
        }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    CPoly r;
    for (uint64_t idx : touched) {
        if (!dense[idx]) continue;
        uint64_t rest = idx;
        Exp e;
        for (uint32_t v = 0; v < d; ++v) {
            e.e[v] = (uint16_t)(rest % dims[v]);
            rest /= dims[v];
        }
        r.push_back({e, dense[idx]});
    }
    std::sort(r.begin(), r.end(),
              [](const auto& x, const auto& y) { return exp_cmp(x.first, y.first) > 0; });
    return r;
}

CPoly cp_add(CoeffPool& pool, const CPoly& a, const CPoly& b) {
    CPoly r;
    r.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        int c = exp_cmp(a[i].first, b[j].first);
        if (c > 0) {
            r.push_back(a[i++]);
        } else if (c < 0) {
            r.push_back(b[j++]);
        } else {
            uint32_t s = pool.add(a[i].second, b[j].second);
            if (s) r.push_back({a[i].first, s});
            ++i, ++j;
        }
    }
    for (; i < a.size(); ++i) r.push_back(a[i]);
    for (; j < b.size(); ++j) r.push_back(b[j]);
    return r;
}

uint32_t cp_deg(const CPoly& a) { return a.empty() ? 0 : a.front().first.total(); }

uint32_t cp_at_zero(const CPoly& a) {
    if (!a.empty() && a.back().first.is_zero()) return a.back().second;
    return 0;
}

std::string witness_string(const std::vector<uint32_t>& w) {
    std::string s;
    for (auto d : w) {
        if (!s.empty()) s += ".";
        s += std::to_string(d);
    }
    return s.empty() ? "-" : s;
}

Exp tuple_to_exp(const Tuple& n, uint32_t order_ceiling) {
    Exp e;
    uint64_t total = 0;
    for (size_t v = 0; v < n.size(); ++v) {
        if (n[v] >= 65536)
            throw resource_error("kernel: witness index exceeds the coefficient-oracle range");
        e.e[v] = (uint16_t)n[v];
        total += n[v];
    }
    if (total > order_ceiling)
        throw resource_error("kernel: witness at total degree " + std::to_string(total) +
                             " exceeds the oracle ceiling " + std::to_string(order_ceiling) +
                             "; raise it if the run is genuinely this deep");
    return e;
}

// BFS over states that are sorted id-vectors of interned members.  The member
// split (its successor pieces for the whole alphabet) is computed once per
// member and reused by every state containing it.
template <typename SplitFn, typename OutputFn>
Dfa bfs_build_ids(uint32_t p, uint32_t d, std::vector<uint32_t> start_state, SplitFn&& split,
                  OutputFn&& output, const BuildOptions& opts, BuildReport* report) {
    uint32_t A = digit_count(p, d);
    using StateKey = std::vector<uint32_t>;
    std::map<StateKey, uint32_t> ids;
    std::vector<const StateKey*> states;
    std::vector<std::vector<uint32_t>> witness;
    // per member id: successor member ids per digit
    std::vector<std::vector<std::vector<uint32_t>>> member_succ;

    Dfa a;
    a.p = p;
    a.d = d;
    a.dir = Direction::LSB;
    a.start = 0;

    auto intern_state = [&](StateKey&& st, const std::vector<uint32_t>& wit, bool check) {
        auto [it, fresh] = ids.try_emplace(std::move(st), (uint32_t)states.size());
        if (fresh) {
            states.push_back(&it->first);
            witness.push_back(wit);
            a.out.push_back(output(it->first, wit) ? 1 : 0);
            if (states.size() > opts.state_ceiling)
                throw resource_error(
                    "kernel: state count exceeded the safety ceiling of " +
                    std::to_string(opts.state_ceiling) +
                    " states (termination is certified by the N9 complexity bound, but this run "
                    "is beyond desk scale)");
        } else if (check && opts.check_witnesses) {
            bool expect = output(it->first, wit);
            if ((a.out[it->second] != 0) != expect)
                throw internal_error("kernel: witness outputs disagree across two paths");
        }
        return it->second;
    };

    std::vector<uint32_t> no_wit;
    intern_state(std::move(start_state), no_wit, false);
    for (uint32_t cur = 0; cur < states.size(); ++cur) {
        StateKey members = *states[cur];  // copy: map may grow while we insert
        a.delta.push_back(std::vector<uint32_t>(A, 0));
        // ensure splits are cached for every member
        for (uint32_t mid : members)
            if (mid >= member_succ.size() || member_succ[mid].empty()) {
                if (mid >= member_succ.size()) member_succ.resize(mid + 1);
                member_succ[mid] = split(mid);
            }
        for (uint32_t j = 0; j < A; ++j) {
            StateKey ns;
            for (uint32_t mid : members) {
                const auto& pieces = member_succ[mid][j];
                ns.insert(ns.end(), pieces.begin(), pieces.end());
            }
            std::sort(ns.begin(), ns.end());
            ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
            std::vector<uint32_t> wit = witness[cur];
            wit.push_back(j);
            uint32_t nid = intern_state(std::move(ns), wit, true);
            a.delta[cur][j] = nid;
            if (report && opts.keep_trace) {
                std::ostringstream row;
                row << cur << "\t" << j << "\t" << nid << "\t" << witness_string(witness[nid]);
                report->trace.push_back(row.str());
            }
        }
    }
    if (report) {
        report->raw_states = a.num_states();
        for (auto& w : witness) {
            Tuple n = decode_word(p, d, Direction::LSB, w);
            uint64_t norm = 0;
            for (auto v : n) norm += v;
            report->max_witness_norm = std::max(report->max_witness_norm, norm);
        }
    }
    for (uint32_t s = 0; s < a.num_states(); ++s)
        if (a.out[a.delta[s][0]] != a.out[s])
            throw internal_error("kernel: trailing-zero transition changed the output");
    Dfa result = opts.minimize ? dfa_minimize(a) : dfa_canonical(a);
    if (report) report->minimized_states = dfa_minimize(a).num_states();
    return result;
}

struct CPolyVecLess {
    bool operator()(const std::vector<CPoly>& a, const std::vector<CPoly>& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        for (size_t k = 0; k < a.size(); ++k) {
            const CPoly &x = a[k], &y = b[k];
            size_t n = std::min(x.size(), y.size());
            for (size_t i = 0; i < n; ++i) {
                int c = exp_cmp(x[i].first, y[i].first);
                if (c) return c < 0;
                if (x[i].second != y[i].second) return x[i].second < y[i].second;
            }
            if (x.size() != y.size()) return x.size() < y.size();
        }
        return false;
    }
};

// interning table for kernel members (tuples of CPoly)
struct MemberTable {
    std::map<std::vector<CPoly>, uint32_t, CPolyVecLess> ids;
    std::vector<const std::vector<CPoly>*> rows;

    uint32_t intern(std::vector<CPoly>&& m) {
        auto [it, fresh] = ids.try_emplace(std::move(m), (uint32_t)rows.size());
        if (fresh) rows.push_back(&it->first);
        return it->second;
    }
    const std::vector<CPoly>& row(uint32_t id) const { return *rows[id]; }
};

}  // namespace

StateSet kernel_transition(const OreRelation& rel, const StateSet& s, uint32_t digit_index) {
    // reference implementation on plain polynomials (exercised by tests; the
    // BFS uses the interned fast path below)
    const FieldPtr& K = rel.K;
    uint32_t L = K->pbasis_size();
    std::vector<TPoly> rewrite = rel.rewrite_polys();
    StateSet out;
    for (const StateTuple& member : s) {
        std::vector<std::vector<TPoly>> splits;
        for (uint32_t i = 1; i <= rel.s; ++i) {
            TPoly Ti = tp_add(tp_mul(member[0], rewrite[i - 1]), member[i]);
            splits.push_back(cartier_split(Ti));
        }
        for (uint32_t l = 0; l < L; ++l) {
            StateTuple nt(rel.s + 1, TPoly::zero(K, rel.d));
            bool nonzero = false;
            for (uint32_t i = 0; i < rel.s; ++i) {
                nt[i] = splits[i][(size_t)digit_index * L + l];
                nonzero |= !nt[i].is_zero();
            }
            if (nonzero) out.push_back(std::move(nt));
        }
    }
    canonicalize_state(out);
    return out;
}

Dfa build_zero_automaton(const AlgebraicInput& input, const BuildOptions& opts,
                         BuildReport* report) {
    const FieldPtr& K = input.K;
    if (input.kind == AlgebraicInput::Kind::Rational && input.A.is_zero())
        return dfa_full_lang(K->p(), input.d, Direction::LSB);

    OreRelation rel;
    if (input.kind == AlgebraicInput::Kind::Rational) {
        TPoly A = input.A, B = input.B;
        if (B.at_zero().is_zero()) {
            // d = 1, validated at load: shift out the common t-power
            uint32_t vB = B.terms.back().first.total();
            Exp shift;
            shift.e[0] = (uint16_t)vB;
            for (auto& t : A.terms) t.first = t.first.minus(shift);
            for (auto& t : B.terms) t.first = t.first.minus(shift);
        }
        rel = ore_from_rational(A, B);
    } else {
        rel = effective_ore(input, opts.verify_ore_order);
    }

    uint32_t p = K->p(), d = input.d, L = K->pbasis_size();
    uint32_t A = digit_count(p, d);
    const uint32_t M = rel.M;
    CoeffPool pool(K);
    MemberTable members;
    // The rewrite coefficient Q'_i = -Q_i Q_0^{p^i-2} factors through the
    // Cartier operators: Q_0^{p^i-2} = (Q_0^{p^{i-1}-1})^p Q_0^{p-2}, so
    //   C_{j,l}(R_0 Q'_i) = -Q_0^{p^{i-1}-1} C_{j,l}(R_0 Q_i Q_0^{p-2}).
    // Only the small inner factor enters the split; the outer power (whose
    // degree dominates M) multiplies the already-shrunk piece.
    std::vector<CPoly> small_factor(rel.s);  // -Q_i Q_0^{p-2}
    std::vector<CPoly> outer_pow(rel.s);     // Q_0^{p^{i-1}-1}
    {
        TPoly q0pm2 = tp_pow(rel.Q[0], p - 2);
        TPoly q0pw = TPoly::one(K, d);
        uint64_t need = 0;  // p^{i-1} - 1
        for (uint32_t i = 1; i <= rel.s; ++i) {
            small_factor[i - 1] = to_cpoly(pool, tp_neg(tp_mul(rel.Q[i], q0pm2)));
            uint64_t target = 1;
            for (uint32_t k = 0; k + 1 < i; ++k) target *= p;
            target -= 1;
            while (need < target) {
                q0pw = tp_mul(q0pw, rel.Q[0]);
                ++need;
            }
            outer_pow[i - 1] = to_cpoly(pool, q0pw);
        }
    }

    CoeffOracle oracle(input);

    auto split = [&](uint32_t mid) {
        const std::vector<CPoly>& tup = members.row(mid);
        // per digit and basis index, the successor tuple entries
        std::vector<std::vector<std::vector<CPoly>>> parts(
            A, std::vector<std::vector<CPoly>>(L, std::vector<CPoly>(rel.s + 1)));
        static const CPoly kOne = {{Exp{}, 1u}};
        for (uint32_t i = 1; i <= rel.s; ++i) {
            auto prod = split_product(pool, p, d, L, tup[0], small_factor[i - 1]);
            auto lone = split_product(pool, p, d, L, tup[i], kOne);
            bool outer_is_one =
                outer_pow[i - 1].size() == 1 && outer_pow[i - 1][0].first.is_zero() &&
                outer_pow[i - 1][0].second == 1;
            for (uint32_t j = 0; j < A; ++j)
                for (uint32_t l = 0; l < L; ++l) {
                    CPoly main = std::move(prod[(size_t)j * L + l]);
                    if (!outer_is_one) main = cp_mul(pool, d, main, outer_pow[i - 1]);
                    CPoly piece = cp_add(pool, main, lone[(size_t)j * L + l]);
                    if (cp_deg(piece) > M)
                        throw internal_error("kernel: state degree bound violated");
                    parts[j][l][i - 1] = std::move(piece);
                }
        }
        std::vector<std::vector<uint32_t>> succ(A);
        for (uint32_t j = 0; j < A; ++j)
            for (uint32_t l = 0; l < L; ++l) {
                bool nonzero = false;
                for (uint32_t i = 0; i < rel.s; ++i) nonzero |= !parts[j][l][i].empty();
                if (!nonzero) continue;
                succ[j].push_back(members.intern(std::move(parts[j][l])));
            }
        return succ;
    };
    auto output = [&](const std::vector<uint32_t>&, const std::vector<uint32_t>& wit) {
        Tuple n = decode_word(p, d, Direction::LSB, wit);
        return oracle.is_zero_at(tuple_to_exp(n, opts.oracle_order_ceiling));
    };

    std::vector<uint32_t> start;
    {
        std::vector<CPoly> t(rel.s + 1);
        t[0] = to_cpoly(pool, rel.Q[0]);
        if (!t[0].empty()) start.push_back(members.intern(std::move(t)));
    }
    return bfs_build_ids(p, d, std::move(start), split, output, opts, report);
}

Dfa build_zero_automaton_expsum(const FieldPtr& K, uint32_t d,
                                std::vector<std::vector<FieldElement>> sigma,
                                std::vector<FieldElement> coeffs, const BuildOptions& opts,
                                BuildReport* report) {
    if (sigma.size() != coeffs.size()) throw input_error("expsum: slot count mismatch");
    uint32_t p = K->p(), L = K->pbasis_size();
    uint32_t A = digit_count(p, d);
    // merge identical characters so that a zero coefficient vector is the
    // zero function (distinct characters are linearly independent)
    std::vector<std::vector<FieldElement>> chars;
    std::vector<FieldElement> cs;
    for (size_t k = 0; k < sigma.size(); ++k) {
        if (sigma[k].size() != d) throw input_error("expsum: bad character arity");
        for (auto& s : sigma[k])
            if (s.is_zero()) throw input_error("expsum: zero character entry");
        bool merged = false;
        for (size_t k2 = 0; k2 < chars.size() && !merged; ++k2)
            if (chars[k2] == sigma[k]) {
                cs[k2] = cs[k2] + coeffs[k];
                merged = true;
            }
        if (!merged) {
            chars.push_back(std::move(sigma[k]));
            cs.push_back(coeffs[k]);
        }
    }
    uint32_t S = (uint32_t)chars.size();
    CoeffPool pool(K);
    // multiplier table: slot k, digit j -> sigma_k^j
    std::vector<std::vector<uint32_t>> mult(S, std::vector<uint32_t>(A, 1));
    for (uint32_t k = 0; k < S; ++k)
        for (uint32_t j = 0; j < A; ++j) {
            Exp e = digit_decode(p, d, j);
            FieldElement v = FieldElement::one(K);
            for (uint32_t vv = 0; vv < d; ++vv) v = v * chars[k][vv].pow(e.e[vv]);
            mult[k][j] = pool.intern(v);
        }

    // pass 1: close the member universe (coefficient vectors) under the
    // per-digit transitions; the slot values are confined, so this is finite
    std::map<std::vector<uint32_t>, uint32_t> member_ids;
    std::vector<const std::vector<uint32_t>*> member_rows;
    auto intern_member = [&](std::vector<uint32_t>&& v) {
        auto [it, fresh] = member_ids.try_emplace(std::move(v), (uint32_t)member_rows.size());
        if (fresh) member_rows.push_back(&it->first);
        return it->second;
    };
    std::vector<std::vector<std::vector<uint32_t>>> succ;  // mid -> digit -> pieces
    std::vector<uint8_t> out0;                              // [value at 0 is zero]
    uint32_t start_mid;
    {
        std::vector<uint32_t> v;
        for (uint32_t k = 0; k < S; ++k) v.push_back(pool.intern(cs[k]));
        start_mid = intern_member(std::move(v));
    }
    for (uint32_t mid = 0; mid < member_rows.size(); ++mid) {
        std::vector<uint32_t> vec = *member_rows[mid];  // copy: table may grow
        uint32_t acc = 0;
        for (uint32_t c : vec) acc = pool.add(acc, c);
        out0.push_back(acc == 0 ? 1 : 0);
        succ.push_back(std::vector<std::vector<uint32_t>>(A));
        for (uint32_t j = 0; j < A; ++j) {
            std::vector<std::vector<std::pair<uint32_t, uint32_t>>> proj(S);
            for (uint32_t k = 0; k < S; ++k) proj[k] = pool.pi(pool.mul(vec[k], mult[k][j]));
            for (uint32_t l = 0; l < L; ++l) {
                std::vector<uint32_t> nv(S, 0);
                bool nonzero = false;
                for (uint32_t k = 0; k < S; ++k)
                    for (auto& [pl, pc] : proj[k])
                        if (pl == l) {
                            nv[k] = pc;
                            nonzero |= pc != 0;
                        }
                if (nonzero) succ[mid][j].push_back(intern_member(std::move(nv)));
            }
            std::sort(succ[mid][j].begin(), succ[mid][j].end());
            succ[mid][j].erase(std::unique(succ[mid][j].begin(), succ[mid][j].end()),
                               succ[mid][j].end());
        }
        if (member_rows.size() > opts.state_ceiling)
            throw resource_error("kernel: member universe exceeded the safety ceiling");
    }
    uint32_t U = (uint32_t)member_rows.size();

    // pass 2: greatest alternating simulation R[a][b] = "the zero set of a is
    // contained in the zero set of b"; a member that another member of the
    // same state simulates is redundant in the conjunction
    std::vector<std::vector<uint8_t>> R(U, std::vector<uint8_t>(U, 1));
    for (uint32_t a = 0; a < U; ++a)
        for (uint32_t b = 0; b < U; ++b)
            if (out0[a] && !out0[b]) R[a][b] = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (uint32_t a = 0; a < U; ++a)
            for (uint32_t b = 0; b < U; ++b) {
                if (!R[a][b]) continue;
                bool ok = true;
                for (uint32_t j = 0; j < A && ok; ++j)
                    for (uint32_t q : succ[b][j]) {
                        bool found = false;
                        for (uint32_t q2 : succ[a][j])
                            if (R[q2][q]) {
                                found = true;
                                break;
                            }
                        if (!found) {
                            ok = false;
                            break;
                        }
                    }
                if (!ok) {
                    R[a][b] = 0;
                    changed = true;
                }
            }
    }

    auto prune = [&](std::vector<uint32_t>& set) {
        if (set.size() < 2) return;
        std::vector<uint32_t> kept;
        for (uint32_t m : set) {
            bool drop = false;
            for (uint32_t m2 : set) {
                if (m2 == m) continue;
                if (R[m2][m] && (!R[m][m2] || m2 < m)) {
                    drop = true;
                    break;
                }
            }
            if (!drop) kept.push_back(m);
        }
        set = std::move(kept);
    };

    // pass 3: subset BFS over pruned antichains
    using StateKey = std::vector<uint32_t>;
    std::map<StateKey, uint32_t> sids;
    std::vector<const StateKey*> srows;
    Dfa a;
    a.p = p;
    a.d = d;
    a.dir = Direction::LSB;
    a.start = 0;
    auto intern_state = [&](StateKey&& st) {
        auto [it, fresh] = sids.try_emplace(std::move(st), (uint32_t)srows.size());
        if (fresh) {
            srows.push_back(&it->first);
            uint8_t o = 1;
            for (uint32_t m : it->first)
                if (!out0[m]) o = 0;
            a.out.push_back(o);
            if (srows.size() > opts.state_ceiling)
                throw resource_error(
                    "kernel: state count exceeded the safety ceiling of " +
                    std::to_string(opts.state_ceiling) + " states");
        }
        return it->second;
    };
    {
        StateKey st = {start_mid};
        prune(st);
        intern_state(std::move(st));
    }
    for (uint32_t cur = 0; cur < srows.size(); ++cur) {
        StateKey members = *srows[cur];
        a.delta.push_back(std::vector<uint32_t>(A, 0));
        for (uint32_t j = 0; j < A; ++j) {
            StateKey ns;
            for (uint32_t m : members) {
                const auto& pieces = succ[m][j];
                ns.insert(ns.end(), pieces.begin(), pieces.end());
            }
            std::sort(ns.begin(), ns.end());
            ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
            prune(ns);
            a.delta[cur][j] = intern_state(std::move(ns));
        }
    }
    if (report) {
        report->raw_states = a.num_states();
        report->minimized_states = 0;
    }
    for (uint32_t s = 0; s < a.num_states(); ++s)
        if (a.out[a.delta[s][0]] != a.out[s])
            throw internal_error("kernel: trailing-zero transition changed the output");
    Dfa result = opts.minimize ? dfa_minimize(a) : dfa_canonical(a);
    if (report) report->minimized_states = dfa_minimize(a).num_states();
    return result;
}

Dfa build_zero_automaton_rational(TPoly A_in, TPoly B_in, const BuildOptions& opts,
                                  BuildReport* report) {
    const FieldPtr& K = A_in.K ? A_in.K : B_in.K;
    uint32_t d = std::max(A_in.d, B_in.d);
    auto checked = AlgebraicInput::rational(A_in, B_in);  // load rules, incl. B(0) = 0
    TPoly A = checked.A, B = checked.B;
    if (A.is_zero()) return dfa_full_lang(K->p(), d, Direction::LSB);
    if (B.at_zero().is_zero()) {
        uint32_t vB = B.terms.back().first.total();
        Exp shift;
        shift.e[0] = (uint16_t)vB;
        for (auto& t : A.terms) t.first = t.first.minus(shift);
        for (auto& t : B.terms) t.first = t.first.minus(shift);
    }
    // clear coefficient denominators; A and B scale together so f is unchanged
    {
        FieldElement lcm = FieldElement::one(K);
        for (auto* poly : {&A, &B})
            for (auto& t : poly->terms)
                if (!t.second.is_polynomial()) {
                    FieldElement den(K, t.second.den(), MPoly::constant(1));
                    FieldElement g(K, mp_gcd(K->gf(), lcm.num(), den.num()), MPoly::constant(1));
                    lcm = lcm * den / g;
                }
        if (!lcm.is_one()) {
            A = tp_scale(A, lcm);
            B = tp_scale(B, lcm);
        }
    }

    uint32_t p = K->p(), L = K->pbasis_size();
    uint32_t Alpha = digit_count(p, d);
    uint32_t Mr = std::max(A.deg(), B.deg());
    CoeffPool pool(K);
    MemberTable members;
    CPoly Bp1 = to_cpoly(pool, tp_pow(B, p - 1));

    auto split = [&](uint32_t mid) {
        CPoly N = members.row(mid)[0];
        auto buckets = split_product(pool, p, d, L, N, Bp1);
        std::vector<std::vector<uint32_t>> succ(Alpha);
        for (uint32_t j = 0; j < Alpha; ++j)
            for (uint32_t l = 0; l < L; ++l) {
                CPoly& piece = buckets[(size_t)j * L + l];
                if (piece.empty()) continue;
                if (cp_deg(piece) > Mr)
                    throw internal_error("kernel: rational state degree bound violated");
                std::vector<CPoly> row = {std::move(piece)};
                succ[j].push_back(members.intern(std::move(row)));
            }
        return succ;
    };
    auto output = [&](const std::vector<uint32_t>& state, const std::vector<uint32_t>&) {
        for (uint32_t mid : state)
            if (cp_at_zero(members.row(mid)[0]) != 0) return false;
        return true;
    };

    std::vector<uint32_t> start;
    {
        std::vector<CPoly> row = {to_cpoly(pool, A)};
        start.push_back(members.intern(std::move(row)));
    }
    return bfs_build_ids(p, d, std::move(start), split, output, opts, report);
}

}  // namespace zca
