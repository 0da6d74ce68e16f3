#include "zca/dfa.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <unordered_map>

#include "zca/gf.hpp"

namespace zca {

uint32_t Dfa::run(uint32_t q, const std::vector<uint32_t>& word) const {
    for (uint32_t w : word) q = delta[q][w];
    return q;
}

namespace {

std::vector<uint32_t> bfs_order(const Dfa& a) {
    std::vector<uint32_t> order;
    std::vector<uint8_t> seen(a.num_states(), 0);
    std::queue<uint32_t> q;
    q.push(a.start);
    seen[a.start] = 1;
    while (!q.empty()) {
        uint32_t s = q.front();
        q.pop();
        order.push_back(s);
        for (uint32_t w = 0; w < a.alphabet(); ++w) {
            uint32_t t = a.delta[s][w];
            if (!seen[t]) {
                seen[t] = 1;
                q.push(t);
            }
        }
    }
    return order;
}

bool raw_empty(const Dfa& a) {
    for (uint32_t s : bfs_order(a))
        if (a.out[s]) return false;
    return true;
}

uint32_t digits_of(uint64_t n, uint32_t p) {
    uint32_t k = 0;
    while (n) {
        ++k;
        n /= p;
    }
    return k;
}

uint64_t pow_clamped(uint32_t p, uint32_t k, uint64_t clamp) {
    uint64_t r = 1;
    for (uint32_t i = 0; i < k; ++i) {
        if (r > clamp / p) return clamp;
        r *= p;
    }
    return std::min(r, clamp);
}

}  // namespace

void dfa_validate(const Dfa& a) {
    if (!is_prime_u32(a.p)) throw input_error("dfa: p must be prime");
    if (a.d < 1 || a.d > Exp::kMaxVars) throw input_error("dfa: bad dimension");
    uint32_t n = a.num_states();
    if (n == 0 || a.delta.size() != n || a.start >= n) throw input_error("dfa: bad shape");
    for (auto& row : a.delta) {
        if (row.size() != a.alphabet()) throw input_error("dfa: transition table not total");
        for (uint32_t t : row)
            if (t >= n) throw input_error("dfa: transition target out of range");
    }
    if (a.dir == Direction::LSB) {
        for (uint32_t s : bfs_order(a))
            if (a.out[a.delta[s][0]] != a.out[s])
                throw input_error("dfa: trailing-zero padding changes acceptance at state " +
                                  std::to_string(s));
    } else {
        Dfa m = dfa_minimize(a);
        if (m.delta[m.start][0] != m.start)
            throw input_error("dfa: leading-zero padding changes acceptance");
    }
}

Dfa dfa_empty_lang(uint32_t p, uint32_t d, Direction dir) {
    Dfa a;
    a.p = p;
    a.d = d;
    a.dir = dir;
    a.start = 0;
    a.out = {0};
    a.delta = {std::vector<uint32_t>(a.alphabet(), 0)};
    return a;
}

Dfa dfa_full_lang(uint32_t p, uint32_t d, Direction dir) {
    Dfa a = dfa_empty_lang(p, d, dir);
    a.out[0] = 1;
    return a;
}

std::vector<uint32_t> encode_tuple(uint32_t p, uint32_t d, Direction dir, const Tuple& n) {
    if (n.size() != d) throw input_error("encode_tuple: wrong arity");
    Tuple rem = n;
    std::vector<uint32_t> word;
    while (true) {
        bool all_zero = true;
        for (auto v : rem)
            if (v) all_zero = false;
        if (all_zero) break;
        uint32_t idx = 0, mult = 1;
        for (uint32_t v = 0; v < d; ++v) {
            idx += (uint32_t)(rem[v] % p) * mult;
            mult *= p;
            rem[v] /= p;
        }
        word.push_back(idx);
    }
    if (dir == Direction::MSB) std::reverse(word.begin(), word.end());
    return word;
}

Tuple decode_word(uint32_t p, uint32_t d, Direction dir, const std::vector<uint32_t>& word) {
    std::vector<uint32_t> w = word;
    if (dir == Direction::MSB) std::reverse(w.begin(), w.end());
    Tuple n(d, 0);
    uint64_t mult = 1;
    bool mult_ovf = false;
    for (size_t k = 0; k < w.size(); ++k) {
        uint32_t idx = w[k];
        for (uint32_t v = 0; v < d; ++v) {
            uint64_t digit = idx % p;
            idx /= p;
            if (digit) {
                if (mult_ovf || digit > (UINT64_MAX - n[v]) / mult)
                    throw resource_error("decode_word: value exceeds 64-bit range");
                n[v] += digit * mult;
            }
        }
        if (k + 1 < w.size()) {
            if (mult > UINT64_MAX / p)
                mult_ovf = true;
            else
                mult *= p;
        }
    }
    return n;
}

bool dfa_accepts(const Dfa& a, const Tuple& n) {
    auto w = encode_tuple(a.p, a.d, a.dir, n);
    return a.out[a.run(a.start, w)] != 0;
}

Dfa dfa_canonical(const Dfa& a) {
    auto order = bfs_order(a);
    std::vector<uint32_t> newid(a.num_states(), UINT32_MAX);
    for (uint32_t i = 0; i < order.size(); ++i) newid[order[i]] = i;
    Dfa r;
    r.p = a.p;
    r.d = a.d;
    r.dir = a.dir;
    r.start = 0;
    r.out.resize(order.size());
    r.delta.assign(order.size(), {});
    for (uint32_t i = 0; i < order.size(); ++i) {
        uint32_t s = order[i];
        r.out[i] = a.out[s];
        r.delta[i].resize(a.alphabet());
        for (uint32_t w = 0; w < a.alphabet(); ++w) r.delta[i][w] = newid[a.delta[s][w]];
    }
    return r;
}

Dfa dfa_minimize(const Dfa& a_in) {
    Dfa a = dfa_canonical(a_in);
    uint32_t n = a.num_states();
    uint32_t A = a.alphabet();
    std::vector<uint32_t> cls(n);
    // initial partition by output, class ids by first occurrence
    {
        std::map<uint8_t, uint32_t> ids;
        for (uint32_t s = 0; s < n; ++s) {
            auto [it, fresh] = ids.try_emplace(a.out[s], (uint32_t)ids.size());
            cls[s] = it->second;
        }
    }
    while (true) {
        std::map<std::vector<uint32_t>, uint32_t> ids;
        std::vector<uint32_t> next(n);
        for (uint32_t s = 0; s < n; ++s) {
            std::vector<uint32_t> sig;
            sig.reserve(A + 1);
            sig.push_back(cls[s]);
            for (uint32_t w = 0; w < A; ++w) sig.push_back(cls[a.delta[s][w]]);
            auto [it, fresh] = ids.try_emplace(std::move(sig), (uint32_t)ids.size());
            next[s] = it->second;
        }
        bool stable = ids.size() == *std::max_element(cls.begin(), cls.end()) + 1;
        cls = std::move(next);
        if (stable) break;
    }
    uint32_t m = *std::max_element(cls.begin(), cls.end()) + 1;
    Dfa r;
    r.p = a.p;
    r.d = a.d;
    r.dir = a.dir;
    r.start = cls[a.start];
    r.out.assign(m, 0);
    r.delta.assign(m, std::vector<uint32_t>(A, 0));
    for (uint32_t s = 0; s < n; ++s) {
        r.out[cls[s]] = a.out[s];
        for (uint32_t w = 0; w < A; ++w) r.delta[cls[s]][w] = cls[a.delta[s][w]];
    }
    return dfa_canonical(r);
}

Dfa dfa_combine(BoolOp op, const Dfa& a, const Dfa& b) {
    if (!a.same_shape(b)) throw input_error("dfa_combine: mismatched (p, d, direction)");
    auto apply = [op](uint8_t x, uint8_t y) -> uint8_t {
        switch (op) {
            case BoolOp::And: return x & y;
            case BoolOp::Or: return x | y;
            case BoolOp::Xor: return x ^ y;
            case BoolOp::Diff: return (uint8_t)(x & ~y & 1);
        }
        return 0;
    };
    uint64_t nb = b.num_states();
    std::unordered_map<uint64_t, uint32_t> ids;
    std::vector<std::pair<uint32_t, uint32_t>> states;
    auto intern = [&](uint32_t qa, uint32_t qb) {
        uint64_t key = (uint64_t)qa * nb + qb;
        auto [it, fresh] = ids.try_emplace(key, (uint32_t)states.size());
        if (fresh) states.push_back({qa, qb});
        return it->second;
    };
    Dfa r;
    r.p = a.p;
    r.d = a.d;
    r.dir = a.dir;
    r.start = intern(a.start, b.start);
    for (uint32_t i = 0; i < states.size(); ++i) {
        auto [qa, qb] = states[i];
        r.out.push_back(apply(a.out[qa], b.out[qb]));
        r.delta.push_back({});
        r.delta[i].resize(a.alphabet());
        for (uint32_t w = 0; w < a.alphabet(); ++w)
            r.delta[i][w] = intern(a.delta[qa][w], b.delta[qb][w]);
    }
    return dfa_minimize(r);
}

Dfa dfa_complement(const Dfa& a) {
    Dfa r = a;
    for (auto& o : r.out) o ^= 1;
    return dfa_minimize(r);
}

Dfa dfa_reverse_direction(const Dfa& a) {
    uint32_t n = a.num_states();
    uint32_t A = a.alphabet();
    // reverse adjacency
    std::vector<std::vector<std::vector<uint32_t>>> rev(A,
                                                        std::vector<std::vector<uint32_t>>(n));
    for (uint32_t s = 0; s < n; ++s)
        for (uint32_t w = 0; w < A; ++w) rev[w][a.delta[s][w]].push_back(s);

    std::vector<uint32_t> init;
    for (uint32_t s = 0; s < n; ++s)
        if (a.out[s]) init.push_back(s);

    std::map<std::vector<uint32_t>, uint32_t> ids;
    std::vector<std::vector<uint32_t>> subsets;
    auto intern = [&](std::vector<uint32_t> v) {
        auto [it, fresh] = ids.try_emplace(std::move(v), (uint32_t)subsets.size());
        if (fresh) subsets.push_back(it->first);
        return it->second;
    };
    Dfa r;
    r.p = a.p;
    r.d = a.d;
    r.dir = a.dir == Direction::LSB ? Direction::MSB : Direction::LSB;
    r.start = intern(init);
    for (uint32_t i = 0; i < subsets.size(); ++i) {
        auto subset = subsets[i];  // copy: interning may reallocate
        bool acc = std::binary_search(subset.begin(), subset.end(), a.start);
        r.out.push_back(acc ? 1 : 0);
        r.delta.push_back(std::vector<uint32_t>(A, 0));
        for (uint32_t w = 0; w < A; ++w) {
            std::vector<uint32_t> pre;
            for (uint32_t t : subset)
                for (uint32_t s : rev[w][t]) pre.push_back(s);
            std::sort(pre.begin(), pre.end());
            pre.erase(std::unique(pre.begin(), pre.end()), pre.end());
            r.delta[i][w] = intern(std::move(pre));
        }
    }
    return dfa_minimize(r);
}

bool dfa_is_empty(const Dfa& a, Tuple* witness) {
    // shortest accepted word via BFS
    std::vector<int32_t> dist(a.num_states(), -1);
    std::vector<std::pair<uint32_t, uint32_t>> parent(a.num_states());  // (state, digit)
    std::queue<uint32_t> q;
    q.push(a.start);
    dist[a.start] = 0;
    int32_t best = -1;
    uint32_t best_state = 0;
    while (!q.empty()) {
        uint32_t s = q.front();
        q.pop();
        if (a.out[s]) {
            best = dist[s];
            best_state = s;
            break;
        }
        for (uint32_t w = 0; w < a.alphabet(); ++w) {
            uint32_t t = a.delta[s][w];
            if (dist[t] < 0) {
                dist[t] = dist[s] + 1;
                parent[t] = {s, w};
                q.push(t);
            }
        }
    }
    if (best < 0) return true;
    if (!witness) return false;

    auto path_of = [&](uint32_t st) {
        std::vector<uint32_t> word;
        uint32_t cur = st;
        while (dist[cur] > 0) {
            auto [ps, w] = parent[cur];
            word.push_back(w);
            cur = ps;
        }
        std::reverse(word.begin(), word.end());
        return word;
    };

    uint32_t Lstar = (uint32_t)best;
    if ((uint64_t)Lstar * digits_of(a.p - 1, 2) > 60) {
        // too deep for exact norm minimization; fall back to the BFS path
        *witness = decode_word(a.p, a.d, a.dir, path_of(best_state));
        return false;
    }
    uint64_t hi = pow_clamped(a.p, Lstar, UINT64_MAX - 1);
    if (hi > 0) hi -= 1;
    uint64_t lo = 0;
    while (lo < hi) {
        uint64_t mid = lo + (hi - lo) / 2;
        Dfa probe = dfa_combine(BoolOp::And, a, dfa_box(a.p, a.d, a.dir, mid));
        if (raw_empty(probe))
            lo = mid + 1;
        else
            hi = mid;
    }
    Dfa P = dfa_combine(BoolOp::And, a, dfa_box(a.p, a.d, a.dir, lo));
    Tuple w2;
    if (dfa_is_empty(P, nullptr)) throw internal_error("dfa_is_empty: witness search failed");
    // shortest path in P
    {
        std::vector<int32_t> dist2(P.num_states(), -1);
        std::vector<std::pair<uint32_t, uint32_t>> par2(P.num_states());
        std::queue<uint32_t> q2;
        q2.push(P.start);
        dist2[P.start] = 0;
        uint32_t acc = UINT32_MAX;
        while (!q2.empty() && acc == UINT32_MAX) {
            uint32_t s = q2.front();
            q2.pop();
            if (P.out[s]) {
                acc = s;
                break;
            }
            for (uint32_t w = 0; w < P.alphabet(); ++w) {
                uint32_t t = P.delta[s][w];
                if (dist2[t] < 0) {
                    dist2[t] = dist2[s] + 1;
                    par2[t] = {s, w};
                    q2.push(t);
                }
            }
        }
        std::vector<uint32_t> word;
        uint32_t cur = acc;
        while (dist2[cur] > 0) {
            auto [ps, w] = par2[cur];
            word.push_back(w);
            cur = ps;
        }
        std::reverse(word.begin(), word.end());
        *witness = decode_word(P.p, P.d, P.dir, word);
    }
    return false;
}

bool dfa_is_finite(const Dfa& a, std::vector<Tuple>* elements) {
    Dfa C = dfa_combine(BoolOp::And, a, dfa_canonical_encodings(a.p, a.d, a.dir));
    uint32_t n = C.num_states();
    // co-reachability to an accepting state
    std::vector<uint8_t> coacc(n, 0);
    {
        std::vector<std::vector<uint32_t>> rev(n);
        std::queue<uint32_t> q;
        for (uint32_t s = 0; s < n; ++s)
            for (uint32_t w = 0; w < C.alphabet(); ++w) rev[C.delta[s][w]].push_back(s);
        for (uint32_t s = 0; s < n; ++s)
            if (C.out[s]) {
                coacc[s] = 1;
                q.push(s);
            }
        while (!q.empty()) {
            uint32_t s = q.front();
            q.pop();
            for (uint32_t t : rev[s])
                if (!coacc[t]) {
                    coacc[t] = 1;
                    q.push(t);
                }
        }
    }
    if (!coacc[C.start]) {
        if (elements) elements->clear();
        return true;  // empty set
    }
    // trimmed graph: reachable and co-accepting
    std::vector<uint8_t> trimmed(n, 0);
    for (uint32_t s : bfs_order(C)) trimmed[s] = coacc[s];
    // cycle detection on the trimmed subgraph
    std::vector<int8_t> color(n, 0);
    std::vector<std::pair<uint32_t, uint32_t>> stack;
    for (uint32_t s0 = 0; s0 < n; ++s0) {
        if (!trimmed[s0] || color[s0]) continue;
        stack.push_back({s0, 0});
        color[s0] = 1;
        while (!stack.empty()) {
            auto& [s, wi] = stack.back();
            if (wi == C.alphabet()) {
                color[s] = 2;
                stack.pop_back();
                continue;
            }
            uint32_t t = C.delta[s][wi++];
            if (!trimmed[t]) continue;
            if (color[t] == 1) return false;  // cycle through useful states
            if (color[t] == 0) {
                color[t] = 1;
                stack.push_back({t, 0});
            }
        }
    }
    if (!elements) return true;
    // enumerate all accepted words over the trimmed DAG
    elements->clear();
    std::vector<uint32_t> word;
    size_t cap = 1000000;
    auto dfs = [&](auto&& self, uint32_t s) -> void {
        if (C.out[s]) {
            elements->push_back(decode_word(C.p, C.d, C.dir, word));
            if (elements->size() > cap) throw resource_error("dfa_is_finite: enumeration too large");
        }
        for (uint32_t w = 0; w < C.alphabet(); ++w) {
            uint32_t t = C.delta[s][w];
            if (!trimmed[t]) continue;
            word.push_back(w);
            self(self, t);
            word.pop_back();
        }
    };
    dfs(dfs, C.start);
    std::sort(elements->begin(), elements->end());
    return true;
}

bool dfa_equal(const Dfa& a, const Dfa& b) {
    if (!a.same_shape(b)) throw input_error("dfa_equal: mismatched (p, d, direction)");
    return dfa_is_empty(dfa_combine(BoolOp::Xor, a, b), nullptr);
}

std::vector<Tuple> dfa_enumerate(const Dfa& a, uint64_t bound) {
    double count = 1;
    for (uint32_t v = 0; v < a.d; ++v) count *= (double)(bound + 1);
    if (count > 2e7) throw resource_error("dfa_enumerate: box too large");
    std::vector<Tuple> out;
    Tuple n(a.d, 0);
    while (true) {
        if (dfa_accepts(a, n)) out.push_back(n);
        uint32_t v = a.d;
        while (v-- > 0) {
            if (++n[v] <= bound) break;
            n[v] = 0;
            if (v == 0) return out;
        }
        if (v == UINT32_MAX) break;
    }
    return out;
}

uint32_t dfa_complexity(const Dfa& a) {
    Dfa lsb = a.dir == Direction::LSB ? dfa_minimize(a) : dfa_reverse_direction(a);
    return lsb.num_states();
}

// --- building blocks --------------------------------------------------------

Dfa dfa_canonical_encodings(uint32_t p, uint32_t d, Direction dir) {
    Dfa a;
    a.p = p;
    a.d = d;
    a.dir = dir;
    uint32_t A = digit_count(p, d);
    if (dir == Direction::LSB) {
        // accept words not ending in the all-zero digit (empty word included)
        a.start = 0;
        a.out = {1, 0};
        a.delta.assign(2, std::vector<uint32_t>(A, 0));
        for (uint32_t w = 0; w < A; ++w) {
            a.delta[0][w] = w == 0 ? 1 : 0;
            a.delta[1][w] = w == 0 ? 1 : 0;
        }
    } else {
        // accept the empty word and words not starting with the all-zero digit
        a.start = 0;
        a.out = {1, 1, 0};
        a.delta.assign(3, std::vector<uint32_t>(A, 1));
        for (uint32_t w = 0; w < A; ++w) {
            a.delta[0][w] = w == 0 ? 2 : 1;
            a.delta[1][w] = 1;
            a.delta[2][w] = 2;
        }
    }
    return a;
}

Dfa dfa_box(uint32_t p, uint32_t d, Direction dir, uint64_t B) {
    uint32_t len = digits_of(B, p);
    std::vector<uint32_t> bdig(len);
    {
        uint64_t x = B;
        for (uint32_t k = 0; k < len; ++k) {
            bdig[k] = (uint32_t)(x % p);
            x /= p;
        }
    }
    uint32_t masks = 1u << d;
    uint32_t A = digit_count(p, d);
    // state = k * masks + le_mask, k in [0, len]
    Dfa a;
    a.p = p;
    a.d = d;
    a.dir = Direction::LSB;
    uint32_t nstates = (len + 1) * masks;
    a.out.assign(nstates, 0);
    a.delta.assign(nstates, std::vector<uint32_t>(A, 0));
    a.start = 0 * masks + (masks - 1);  // all coordinates currently <=
    for (uint32_t k = 0; k <= len; ++k)
        for (uint32_t m = 0; m < masks; ++m) {
            uint32_t id = k * masks + m;
            // a word ending here leaves the remaining digits zero: with k < len
            // every coordinate is below p^k <= B, otherwise the le-mask decides
            a.out[id] = (k < len || m == masks - 1) ? 1 : 0;
            for (uint32_t w = 0; w < A; ++w) {
                uint32_t digits = w;
                uint32_t m2 = 0;
                uint32_t bk = k < len ? bdig[k] : 0;
                for (uint32_t v = 0; v < d; ++v) {
                    uint32_t dv = digits % p;
                    digits /= p;
                    bool le = (m >> v) & 1;
                    bool le2 = dv < bk || (dv == bk && le);
                    if (le2) m2 |= 1u << v;
                }
                uint32_t k2 = std::min(k + 1, len);
                a.delta[id][w] = k2 * masks + m2;
            }
        }
    Dfa m = dfa_minimize(a);
    if (dir == Direction::MSB) m = dfa_reverse_direction(m);
    return m;
}

Dfa dfa_residue(uint32_t p, Direction dir, uint64_t q, const std::set<uint64_t>& residues) {
    if (q == 0) throw input_error("dfa_residue: modulus must be positive");
    if (q > 100000) throw resource_error("dfa_residue: modulus too large");
    // states (value mod q, p^k mod q), built reachably
    std::map<std::pair<uint64_t, uint64_t>, uint32_t> ids;
    std::vector<std::pair<uint64_t, uint64_t>> states;
    auto intern = [&](uint64_t v, uint64_t pw) {
        auto [it, fresh] = ids.try_emplace({v, pw}, (uint32_t)states.size());
        if (fresh) states.push_back({v, pw});
        return it->second;
    };
    Dfa a;
    a.p = p;
    a.d = 1;
    a.dir = Direction::LSB;
    a.start = intern(0, 1 % q);
    for (uint32_t i = 0; i < states.size(); ++i) {
        auto [v, pw] = states[i];
        a.out.push_back(residues.count(v) ? 1 : 0);
        a.delta.push_back(std::vector<uint32_t>(p, 0));
        for (uint32_t w = 0; w < p; ++w)
            a.delta[i][w] = intern((v + (uint64_t)w * pw) % q, pw * p % q);
    }
    Dfa m = dfa_minimize(a);
    if (dir == Direction::MSB) m = dfa_reverse_direction(m);
    return m;
}

Dfa dfa_threshold(uint32_t p, Direction dir, uint64_t N0) {
    uint32_t len = digits_of(N0, p);
    std::vector<uint32_t> ndig(len);
    {
        uint64_t x = N0;
        for (uint32_t k = 0; k < len; ++k) {
            ndig[k] = (uint32_t)(x % p);
            x /= p;
        }
    }
    // state = k * 2 + ge
    Dfa a;
    a.p = p;
    a.d = 1;
    a.dir = Direction::LSB;
    uint32_t nstates = (len + 1) * 2;
    a.out.assign(nstates, 0);
    a.delta.assign(nstates, std::vector<uint32_t>(p, 0));
    a.start = 0 * 2 + 1;  // empty prefix: 0 >= 0
    for (uint32_t k = 0; k <= len; ++k)
        for (uint32_t ge = 0; ge < 2; ++ge) {
            uint32_t id = k * 2 + ge;
            a.out[id] = (k >= len && ge) ? 1 : 0;
            for (uint32_t w = 0; w < p; ++w) {
                uint32_t nk = k < len ? ndig[k] : 0;
                uint32_t ge2 = w > nk ? 1 : (w < nk ? 0 : ge);
                a.delta[id][w] = std::min(k + 1, len) * 2 + ge2;
            }
        }
    Dfa m = dfa_minimize(a);
    if (dir == Direction::MSB) m = dfa_reverse_direction(m);
    return m;
}

Dfa dfa_finite_set(uint32_t p, uint32_t d, Direction dir, const std::vector<Tuple>& pts) {
    Dfa acc = dfa_empty_lang(p, d, Direction::LSB);
    for (const Tuple& n : pts) {
        auto word = encode_tuple(p, d, Direction::LSB, n);
        uint32_t L = (uint32_t)word.size();
        Dfa s;
        s.p = p;
        s.d = d;
        s.dir = Direction::LSB;
        uint32_t A = digit_count(p, d);
        uint32_t sink = L + 1;
        s.start = 0;
        s.out.assign(L + 2, 0);
        s.out[L] = 1;
        s.delta.assign(L + 2, std::vector<uint32_t>(A, sink));
        for (uint32_t i = 0; i < L; ++i) s.delta[i][word[i]] = i + 1;
        s.delta[L][0] = L;  // trailing zero padding stays accepted
        for (uint32_t w = 0; w < A; ++w) s.delta[sink][w] = sink;
        acc = dfa_combine(BoolOp::Or, acc, s);
    }
    if (dir == Direction::MSB) acc = dfa_reverse_direction(acc);
    return acc;
}

Dfa dfa_coord_zero(uint32_t p, uint32_t d, Direction dir, uint32_t v) {
    Dfa a;
    a.p = p;
    a.d = d;
    a.dir = dir;
    uint32_t A = digit_count(p, d);
    a.start = 0;
    a.out = {1, 0};
    a.delta.assign(2, std::vector<uint32_t>(A, 1));
    for (uint32_t w = 0; w < A; ++w) {
        Exp j = digit_decode(p, d, w);
        a.delta[0][w] = j.e[v] == 0 ? 0 : 1;
        a.delta[1][w] = 1;
    }
    return a;
}

Dfa dfa_coord_lift(const Dfa& a, uint32_t d, uint32_t v) {
    if (a.d != 1) throw input_error("dfa_coord_lift: source must be one-dimensional");
    if (v >= d) throw input_error("dfa_coord_lift: coordinate out of range");
    Dfa r;
    r.p = a.p;
    r.d = d;
    r.dir = a.dir;
    r.start = a.start;
    r.out = a.out;
    uint32_t A = digit_count(a.p, d);
    r.delta.assign(a.num_states(), std::vector<uint32_t>(A, 0));
    for (uint32_t s = 0; s < a.num_states(); ++s)
        for (uint32_t w = 0; w < A; ++w) {
            Exp j = digit_decode(a.p, d, w);
            r.delta[s][w] = a.delta[s][j.e[v]];
        }
    return r;
}

Dfa dfa_shift_membership(const Dfa& a_in, uint64_t q) {
    if (a_in.d != 1) throw input_error("dfa_shift_membership: d = 1 only");
    Dfa a = a_in.dir == Direction::LSB ? a_in : dfa_reverse_direction(a_in);
    if (q == 0) return dfa_minimize(a);
    uint32_t p = a.p;
    uint32_t len = digits_of(q, p);
    std::vector<uint32_t> qdig(len);
    {
        uint64_t x = q;
        for (uint32_t k = 0; k < len; ++k) {
            qdig[k] = (uint32_t)(x % p);
            x /= p;
        }
    }
    // state = ((k * 2) + carry) * n + s
    struct St {
        uint32_t s, c, k;
    };
    std::map<std::tuple<uint32_t, uint32_t, uint32_t>, uint32_t> ids;
    std::vector<St> states;
    auto intern = [&](uint32_t s, uint32_t c, uint32_t k) {
        auto [it, fresh] = ids.try_emplace(std::make_tuple(s, c, k), (uint32_t)states.size());
        if (fresh) states.push_back({s, c, k});
        return it->second;
    };
    auto flush_out = [&](const St& st) -> uint8_t {
        // remaining addend: carry + floor(q / p^k), fed as further digits
        uint64_t tail = q;
        for (uint32_t i = 0; i < st.k; ++i) tail /= p;
        uint64_t rem = st.c + tail;
        uint32_t s = st.s;
        while (rem) {
            s = a.delta[s][rem % p];
            rem /= p;
        }
        return a.out[s];
    };
    Dfa r;
    r.p = p;
    r.d = 1;
    r.dir = Direction::LSB;
    r.start = intern(a.start, 0, 0);
    for (uint32_t i = 0; i < states.size(); ++i) {
        St st = states[i];
        r.out.push_back(flush_out(st));
        r.delta.push_back(std::vector<uint32_t>(p, 0));
        for (uint32_t w = 0; w < p; ++w) {
            uint32_t qk = st.k < len ? qdig[st.k] : 0;
            uint32_t sum = w + qk + st.c;
            uint32_t digit = sum % p;
            uint32_t carry = sum / p;
            uint32_t s2 = a.delta[st.s][digit];
            r.delta[i][w] = intern(s2, carry, std::min(st.k + 1, len));
        }
    }
    return dfa_minimize(r);
}

PeriodicityResult dfa_eventually_periodic(const Dfa& a_in, uint64_t period_cap) {
    if (a_in.d != 1)
        throw input_error(
            "dfa_eventually_periodic: only d = 1 is supported (no multidimensional procedure)");
    Dfa a = a_in.dir == Direction::LSB ? dfa_minimize(a_in) : dfa_reverse_direction(a_in);
    PeriodicityResult res;
    uint64_t theory_cap = pow_clamped(a.p, a.num_states(), UINT64_MAX - 1);
    res.cap = std::min(period_cap, theory_cap);
    for (uint64_t q = 1; q <= res.cap; ++q) {
        Dfa shifted = dfa_shift_membership(a, q);
        Dfa diff = dfa_combine(BoolOp::Xor, a, shifted);
        std::vector<Tuple> elems;
        if (!dfa_is_finite(diff, &elems)) continue;
        uint64_t N0 = elems.empty() ? 0 : elems.back()[0] + 1;
        std::set<uint64_t> residues;
        for (uint64_t i = 0; i < q; ++i)
            if (dfa_accepts(a, {N0 + i})) residues.insert((N0 + i) % q);
        std::vector<Tuple> except;
        if (N0 > 0) except = dfa_enumerate(a, N0 - 1);
        Dfa E = dfa_combine(
            BoolOp::Or, dfa_finite_set(a.p, 1, Direction::LSB, except),
            dfa_combine(BoolOp::And, dfa_residue(a.p, Direction::LSB, q, residues),
                        dfa_threshold(a.p, Direction::LSB, N0)));
        if (!dfa_equal(a, E))
            throw internal_error("dfa_eventually_periodic: certificate failed verification");
        res.periodic = true;
        res.preperiod = N0;
        res.period = q;
        return res;
    }
    return res;
}

}  // namespace zca
