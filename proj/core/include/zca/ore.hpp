#pragma once

#include "zca/series.hpp"

namespace zca {

// Homogeneous Frobenius relation sum_{i=0}^{s} Q_i f^{p^i} = 0 with Q_0 != 0.
// The rewrite row for ftilde = f/Q_0 is
//   ftilde = sum_{i=1}^{s} Q'_i ftilde^{p^i},  Q'_i = -Q_i Q_0^{p^i - 2};
// its degrees can be large, so the polynomials are produced on demand while M
// (the state degree bound max(deg Q_0, deg Q'_i)) comes from degree
// arithmetic alone.
struct OreRelation {
    FieldPtr K;
    uint32_t d = 0;
    uint32_t s = 0;
    std::vector<TPoly> Q;  // Q_0..Q_s
    uint32_t M = 0;

    uint32_t degree_bound() const;  // max over Q_i of deg
    void finalize();                // computes M; checks Q_0 != 0
    std::vector<TPoly> rewrite_polys() const;
};

// A dependency sum Q_i V_i = 0, not all zero, for vectors over K[t].  With
// entry degrees <= r and dim-many coordinates the output degrees are bounded
// by r * dim.  Deterministic: the first vector outside the greedy independent
// prefix is expressed over it, via determinant ratios on the first usable row
// subset.
std::vector<TPoly> find_linear_dependency(const std::vector<std::vector<TPoly>>& V);

// Ore relation for the root of an annihilator, with deg Q_i <= H s p^s.
// verify_order > 0 re-expands f and checks the relation through that order.
OreRelation effective_ore(const AlgebraicInput& input, uint32_t verify_order = 0);

// closed form for f = A/B: (Q_0, Q_1) = (A^{p-1}, -B^{p-1})
OreRelation ore_from_rational(const TPoly& A, const TPoly& B);

// checks sum Q_i f^{p^i} = 0 through total degree T
bool verify_ore(const OreRelation& rel, const AlgebraicInput& input, uint32_t T);

}  // namespace zca
