#pragma once

#include "zca/kernel.hpp"
#include "zca/signed_set.hpp"

namespace zca {

// a(n) = c_1 a(n-1) + ... + c_m a(n-m) with initial terms a(0)..a(m-1)
struct LinearRecurrence {
    FieldPtr K;
    std::vector<FieldElement> coeffs;
    std::vector<FieldElement> init;

    // N(t)/D(t) with D = 1 - c_1 t - ... - c_m t^m and deg N < m
    std::pair<TPoly, TPoly> generating_function() const;
};

// Z(a_1..a_d) = { (n_1..n_d) : a_1(n_1) + ... + a_d(n_d) = 0 } as an LSB
// automaton over N^d
Dfa recurrence_zero_set(const std::vector<LinearRecurrence>& recs,
                        const BuildOptions& opts = {});

// c_1 X_1 + ... + c_d X_d = 1 solved in Γ^d, Γ = <g_1..g_m> in K^*
struct SUnitProblem {
    FieldPtr K;
    std::vector<FieldElement> coeffs;
    std::vector<FieldElement> generators;
};

// Solution set as its Z^{m·d} preimage: block i of the exponent vector holds
// the exponents of X_i over g_1..g_m.
GroupAutomaticSet sunit_solutions(const SUnitProblem& prob, const BuildOptions& opts = {});

// direct evaluation of an exponent vector: is it a solution of the equation?
bool sunit_evaluate(const SUnitProblem& prob, const IntTuple& exponents);

using KMatrix = std::vector<std::vector<FieldElement>>;

KMatrix kmat_mul(const KMatrix& a, const KMatrix& b);
KMatrix kmat_identity(const FieldPtr& K, uint32_t n);
KMatrix kmat_inverse(const KMatrix& a);
FieldElement kmat_det(const KMatrix& a);
KMatrix kron(const KMatrix& a, const KMatrix& b);
KMatrix kron_power(const KMatrix& a, uint32_t g);

// (I - t C^{sign})^{-1}: adjugate over the determinant, entries in K[t]
struct MatrixResolvent {
    std::vector<std::vector<TPoly>> num;  // adjugate entries
    TPoly den;                            // det(I - t C^{sign})
};
MatrixResolvent matrix_resolvent(const KMatrix& C, int sign);

// X ∩ Γ for X = V(P_1..P_r) ⊆ GL_dim and Γ = <C_1..C_m> commuting invertible
struct MatrixProblem {
    FieldPtr K;
    uint32_t dim = 1;
    std::vector<KMatrix> gens;
    // polynomials in the entry variables x_{ij}; variable index (i-1)*dim+(j-1)
    std::vector<TPoly> variety;
    uint32_t kron_dim_ceiling = 256;
};

GroupAutomaticSet matrix_intersection(const MatrixProblem& prob, const BuildOptions& opts = {});

// evaluate the variety polynomials at prod C_k^{e_k}: all zero?
bool matrix_evaluate(const MatrixProblem& prob, const IntTuple& exponents);

}  // namespace zca
