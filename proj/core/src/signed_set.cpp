#include "zca/signed_set.hpp"

#include <algorithm>

namespace zca {

SignedDfa assemble_signed(uint32_t p, uint32_t d, std::vector<Dfa> orthants) {
    uint32_t count = 1u << d;
    if (orthants.size() != count) throw input_error("assemble_signed: need 2^d orthant automata");
    for (auto& a : orthants)
        if (a.p != p || a.d != d || a.dir != Direction::LSB)
            throw input_error("assemble_signed: orthant automata must share (p, d) and read LSB");
    // adjacent orthants must agree where the flipped coordinate is zero;
    // agreement propagates to arbitrary sign-pattern overlaps
    for (uint32_t mask = 0; mask < count; ++mask)
        for (uint32_t v = 0; v < d; ++v) {
            if (mask & (1u << v)) continue;
            uint32_t other = mask | (1u << v);
            Dfa zero_v = dfa_coord_zero(p, d, Direction::LSB, v);
            Dfa lhs = dfa_combine(BoolOp::And, orthants[mask], zero_v);
            Dfa rhs = dfa_combine(BoolOp::And, orthants[other], zero_v);
            Dfa diff = dfa_combine(BoolOp::Xor, lhs, rhs);
            Tuple w;
            if (!dfa_is_empty(diff, &w)) {
                std::string pt = "(";
                for (size_t i = 0; i < w.size(); ++i) pt += (i ? "," : "") + std::to_string(w[i]);
                pt += ")";
                throw input_error("assemble_signed: orthant automata disagree on the boundary "
                                  "point " +
                                  pt + " between sign masks " + std::to_string(mask) + " and " +
                                  std::to_string(other));
            }
        }
    SignedDfa s;
    s.p = p;
    s.d = d;
    s.orthants = std::move(orthants);
    return s;
}

bool signed_membership(const SignedDfa& s, const IntTuple& n) {
    if (n.size() != s.d) throw input_error("signed_membership: wrong arity");
    uint32_t mask = 0;
    Tuple abs(s.d);
    for (uint32_t v = 0; v < s.d; ++v) {
        if (n[v] < 0) mask |= 1u << v;
        abs[v] = (uint64_t)(n[v] < 0 ? -n[v] : n[v]);
    }
    return dfa_accepts(s.orthants[mask], abs);
}

SignedDfa signed_combine(BoolOp op, const SignedDfa& a, const SignedDfa& b) {
    if (a.p != b.p || a.d != b.d) throw input_error("signed_combine: mismatched parameters");
    std::vector<Dfa> orth;
    orth.reserve(a.orthants.size());
    for (size_t i = 0; i < a.orthants.size(); ++i)
        orth.push_back(dfa_combine(op, a.orthants[i], b.orthants[i]));
    SignedDfa s;
    s.p = a.p;
    s.d = a.d;
    s.orthants = std::move(orth);
    return s;
}

bool signed_equal(const SignedDfa& a, const SignedDfa& b) {
    if (a.p != b.p || a.d != b.d) throw input_error("signed_equal: mismatched parameters");
    for (size_t i = 0; i < a.orthants.size(); ++i)
        if (!dfa_equal(a.orthants[i], b.orthants[i])) return false;
    return true;
}

bool signed_is_empty(const SignedDfa& a, IntTuple* witness) {
    for (uint32_t mask = 0; mask < a.orthants.size(); ++mask) {
        Tuple w;
        if (!dfa_is_empty(a.orthants[mask], witness ? &w : nullptr)) {
            if (witness) {
                witness->assign(a.d, 0);
                for (uint32_t v = 0; v < a.d; ++v)
                    (*witness)[v] = (mask & (1u << v)) ? -(int64_t)w[v] : (int64_t)w[v];
            }
            return false;
        }
    }
    return true;
}

std::vector<std::string> signed_encode(uint32_t p, const IntTuple& n) {
    // common length of the absolute values
    uint32_t h = 1;
    for (auto v : n) {
        uint64_t a = (uint64_t)(v < 0 ? -v : v);
        uint32_t len = 0;
        while (a) {
            ++len;
            a /= p;
        }
        h = std::max(h, len);
    }
    std::vector<std::string> out;
    for (auto v : n) {
        std::string s(1, v < 0 ? '-' : '+');
        uint64_t a = (uint64_t)(v < 0 ? -v : v);
        for (uint32_t k = 0; k < h; ++k) {
            s += (char)('0' + a % p);
            a /= p;
        }
        out.push_back(s);
    }
    return out;
}

std::vector<int64_t> GroupSpec::evaluate(const IntTuple& exponents) const {
    if (!target) throw input_error("GroupSpec: no declared target structure to evaluate in");
    if (exponents.size() != m) throw input_error("GroupSpec: wrong exponent arity");
    uint32_t cols = target->free_rank + (uint32_t)target->torsion.size();
    std::vector<int64_t> acc(cols, 0);
    for (uint32_t g = 0; g < m; ++g) {
        if (target->images[g].size() != cols) throw input_error("GroupSpec: bad image row");
        for (uint32_t c = 0; c < cols; ++c) acc[c] += exponents[g] * target->images[g][c];
    }
    for (size_t t = 0; t < target->torsion.size(); ++t) {
        int64_t q = (int64_t)target->torsion[t];
        int64_t& v = acc[target->free_rank + t];
        v %= q;
        if (v < 0) v += q;
    }
    return acc;
}

GroupAutomaticSet group_pullback(GroupSpec spec, SignedDfa preimage) {
    if (preimage.d != spec.m)
        throw input_error("group_pullback: preimage dimension must equal the generator count");
    return GroupAutomaticSet{std::move(spec), std::move(preimage)};
}

bool group_membership(const GroupAutomaticSet& g, const IntTuple& exponents) {
    return signed_membership(g.preimage, exponents);
}

}  // namespace zca
