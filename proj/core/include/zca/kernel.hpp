#pragma once

#include "zca/dfa.hpp"
#include "zca/ore.hpp"

namespace zca {

// One representation tuple (R_0..R_s) for h = sum R_i ftilde^{p^i}.
using StateTuple = std::vector<TPoly>;
// A kernel state: the conjunction of the zero-indicator functions of its
// members, kept sorted and duplicate-free so equality is syntactic.
using StateSet = std::vector<StateTuple>;

int state_tuple_cmp(const StateTuple& a, const StateTuple& b);
void canonicalize_state(StateSet& s);

struct BuildOptions {
    uint32_t state_ceiling = 1000000;
    uint32_t oracle_order_ceiling = 8192;  // largest |n_w| the output oracle will expand to
    bool minimize = true;
    bool check_witnesses = false;  // recompute outputs on re-reached states
    bool keep_trace = false;
    uint32_t verify_ore_order = 0;  // 0: skip the relation truncation check
    uint32_t jobs = 1;              // parallelism across independent sign-pattern builds
};

struct BuildReport {
    uint32_t raw_states = 0;
    uint32_t minimized_states = 0;
    uint64_t max_witness_norm = 0;
    std::vector<std::string> trace;  // TSV rows: state, digit, successor, witness
};

// kernel transition of a canonical member set by one digit tuple: fold R_0
// into the higher slots with the rewrite coefficients, apply the Cartier and
// projection split, shift the Frobenius exponents down
StateSet kernel_transition(const OreRelation& rel, const StateSet& s, uint32_t digit_index);

// LSB-first automaton for Z(f) by BFS closure; outputs come from witness
// coefficients of the original f
Dfa build_zero_automaton(const AlgebraicInput& input, const BuildOptions& opts = {},
                         BuildReport* report = nullptr);

// unit-denominator fast path: states are sets of single numerator polynomials
Dfa build_zero_automaton_rational(TPoly A, TPoly B, const BuildOptions& opts = {},
                                  BuildReport* report = nullptr);

// Exponential-sum fast path for f with a(n) = sum_k coeffs[k] * prod_v
// sigma[k][v]^{n_v}: the Cartier/projection transition acts diagonally on the
// character basis, so kernel members are plain coefficient vectors.  All
// sigma entries must be nonzero.
Dfa build_zero_automaton_expsum(const FieldPtr& K, uint32_t d,
                                std::vector<std::vector<FieldElement>> sigma,
                                std::vector<FieldElement> coeffs,
                                const BuildOptions& opts = {}, BuildReport* report = nullptr);

}  // namespace zca
