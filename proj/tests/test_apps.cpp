#include <doctest.h>

#include "helpers_dfa.hpp"
#include "helpers_poly.hpp"
#include "zca/apps.hpp"

using namespace zca;
using namespace zt;

namespace {

LinearRecurrence lech_recurrence(const FieldPtr& K) {
    auto u = FieldElement::var(K, 0);
    auto one = FieldElement::one(K);
    auto two = FieldElement::from_int(K, 2);
    auto three = FieldElement::from_int(K, 3);
    LinearRecurrence rec;
    rec.K = K;
    // a(n) = (2+2u) a(n-1) - (1+3u+u^2) a(n-2) + (u+u^2) a(n-3)
    rec.coeffs = {two + two * u, -(one + three * u + u * u), u + u * u};
    // a(n) = (1+u)^n - u^n - 1 with a(0) = 1 - 1 - 1
    rec.init = {one + one + one, FieldElement::zero(K), FieldElement::zero(K)};
    // a(2) = (1+u)^2 - u^2 - 1
    rec.init[2] = (one + u) * (one + u) - u * u - one;
    rec.init[1] = (one + u) - u - one;
    return rec;
}

}  // namespace

TEST_CASE("recurrence generating function matches the closed form") {
    auto K = F2u();
    auto rec = lech_recurrence(K);
    auto [N, D] = rec.generating_function();
    auto [A, B] = lech_rational(K);
    // N/D = A/B as rational functions: N*B == A*D
    CHECK(tp_cmp(tp_mul(N, B), tp_mul(A, D)) == 0);
}

TEST_CASE("Lech recurrence zero set") {
    auto K = F2u();
    auto z = recurrence_zero_set({lech_recurrence(K)});
    CHECK(dfa_enumerate(z, 300) ==
          std::vector<Tuple>{{1}, {2}, {4}, {8}, {16}, {32}, {64}, {128}, {256}});
    Tuple w;
    CHECK_FALSE(dfa_is_empty(z, &w));
    CHECK(w == Tuple{1});
    CHECK_FALSE(dfa_is_finite(z, nullptr));
}

TEST_CASE("zero recurrence gives the full set") {
    auto K = F2();
    LinearRecurrence rec;
    rec.K = K;
    rec.coeffs = {FieldElement::one(K)};
    rec.init = {FieldElement::zero(K)};
    auto z = recurrence_zero_set({rec});
    CHECK(dfa_equal(z, dfa_full_lang(2, 1, Direction::LSB)));
}

TEST_CASE("two recurrences over F_2: odd-n stripe") {
    auto K = F2();
    // a1: 0,1,0,1,... via a(n) = a(n-2)
    LinearRecurrence a1;
    a1.K = K;
    a1.coeffs = {FieldElement::zero(K), FieldElement::one(K)};
    a1.init = {FieldElement::zero(K), FieldElement::one(K)};
    // a2 = 1,1,1,... via a(n) = a(n-1)
    LinearRecurrence a2;
    a2.K = K;
    a2.coeffs = {FieldElement::one(K)};
    a2.init = {FieldElement::one(K)};
    auto z = recurrence_zero_set({a1, a2});

    // brute force over a 32x32 box
    for (uint64_t n = 0; n < 32; ++n)
        for (uint64_t m = 0; m < 32; ++m)
            CHECK(dfa_accepts(z, {n, m}) == (n % 2 == 1));
    // structurally: {odd n} x N
    auto odd_stripe = dfa_coord_lift(dfa_residue(2, Direction::LSB, 2, {1}), 2, 0);
    CHECK(dfa_equal(z, odd_stripe));
}

TEST_CASE("s-unit X+Y=1 over <u, 1-u> in F_2(u)") {
    auto K = F2u();
    auto u = FieldElement::var(K, 0);
    SUnitProblem prob;
    prob.K = K;
    prob.coeffs = {FieldElement::one(K), FieldElement::one(K)};
    prob.generators = {u, FieldElement::one(K) - u};
    auto sol = sunit_solutions(prob);

    // (t^q, (1-t)^q) is a solution for every 2-power q
    for (int64_t q : {1, 2, 4, 8}) {
        CHECK(group_membership(sol, {q, 0, 0, q}));
        CHECK(sunit_evaluate(prob, {q, 0, 0, q}));
    }
    // X = 1-u, Y = u
    CHECK(group_membership(sol, {0, 1, 1, 0}));
    // u + u = 0 != 1
    CHECK_FALSE(group_membership(sol, {1, 0, 1, 0}));
    CHECK_FALSE(sunit_evaluate(prob, {1, 0, 1, 0}));

    // exhaustive agreement with direct evaluation on a small box
    for (int64_t a = -3; a <= 3; ++a)
        for (int64_t b = -3; b <= 3; ++b)
            for (int64_t c = -3; c <= 3; ++c)
                for (int64_t e = -3; e <= 3; ++e) {
                    IntTuple x = {a, b, c, e};
                    CHECK(group_membership(sol, x) == sunit_evaluate(prob, x));
                }

    // Frobenius closure: coordinatewise p-th powers of solutions are solutions
    for (int64_t a = -3; a <= 3; ++a)
        for (int64_t b = -3; b <= 3; ++b)
            for (int64_t c = -3; c <= 3; ++c)
                for (int64_t e = -3; e <= 3; ++e)
                    if (group_membership(sol, {a, b, c, e}))
                        CHECK(group_membership(sol, {2 * a, 2 * b, 2 * c, 2 * e}));
}

TEST_CASE("s-unit with one unknown: c X = 1") {
    auto K = F2u();
    auto u = FieldElement::var(K, 0);
    SUnitProblem prob;
    prob.K = K;
    prob.coeffs = {u};  // u X = 1 has the unique solution X = u^{-1}
    prob.generators = {u, FieldElement::one(K) - u};
    auto sol = sunit_solutions(prob);
    for (int64_t a = -5; a <= 5; ++a)
        for (int64_t b = -5; b <= 5; ++b)
            CHECK(group_membership(sol, {a, b}) == (a == -1 && b == 0));
}

TEST_CASE("s-unit exponential-sum kernel agrees with the rational kernel") {
    // the same f_a built two ways: through the character basis and through the
    // cleared rational form A/B
    auto K = F2u();
    auto u = FieldElement::var(K, 0);
    auto one = FieldElement::one(K);
    std::vector<FieldElement> gens = {u, one - u};
    uint32_t m = 2, d = 2, D = 4;
    for (uint32_t mask : {0u, 5u, 10u, 15u}) {
        auto ghat = [&](uint32_t i, uint32_t j) {
            return (mask >> (i * m + j)) & 1 ? gens[j].inverse() : gens[j];
        };
        // character basis
        std::vector<std::vector<FieldElement>> sigma;
        std::vector<FieldElement> cs;
        sigma.push_back(std::vector<FieldElement>(D, one));
        cs.push_back(-one);
        for (uint32_t i = 0; i < d; ++i) {
            std::vector<FieldElement> ch(D, one);
            for (uint32_t j = 0; j < m; ++j) ch[i * m + j] = ghat(i, j);
            sigma.push_back(ch);
            cs.push_back(one);
        }
        auto z1 = build_zero_automaton_expsum(K, D, sigma, cs);
        // rational form
        TPoly Dt = TPoly::one(K, D);
        for (uint32_t i = 0; i < d; ++i)
            for (uint32_t j = 0; j < m; ++j)
                Dt = tp_mul(Dt, TPoly::one_minus(K, D, i * m + j, ghat(i, j)));
        TPoly ones = TPoly::one(K, D);
        for (uint32_t v = 0; v < D; ++v)
            ones = tp_mul(ones, TPoly::one_minus(K, D, v, one));
        TPoly A = tp_neg(Dt);
        for (uint32_t i = 0; i < d; ++i) {
            TPoly term = TPoly::one(K, D);
            for (uint32_t j = 0; j < m; ++j)
                term = tp_mul(term, TPoly::one_minus(K, D, i * m + j, one));
            for (uint32_t i2 = 0; i2 < d; ++i2) {
                if (i2 == i) continue;
                for (uint32_t j = 0; j < m; ++j)
                    term = tp_mul(term, TPoly::one_minus(K, D, i2 * m + j, ghat(i2, j)));
            }
            A = tp_add(A, term);
        }
        TPoly B = tp_mul(ones, Dt);
        auto z2 = build_zero_automaton_rational(A, B);
        CHECK(dfa_equal(z1, z2));
    }
}

TEST_CASE("matrix resolvents") {
    auto K = F2u();
    auto u = FieldElement::var(K, 0);

    // 1x1: 1/(1-ct)
    auto r1 = matrix_resolvent({{u}}, +1);
    CHECK(tp_cmp(r1.den, TPoly::one_minus(K, 1, 0, u)) == 0);
    CHECK(tp_cmp(r1.num[0][0], TPoly::one(K, 1)) == 0);

    // 2x2 identity: diag(1/(1-t))
    auto I = kmat_identity(K, 2);
    auto r2 = matrix_resolvent(I, +1);
    auto one_minus_t = TPoly::one_minus(K, 1, 0, FieldElement::one(K));
    CHECK(tp_cmp(r2.den, tp_mul(one_minus_t, one_minus_t)) == 0);
    CHECK(tp_cmp(r2.num[0][0], one_minus_t) == 0);
    CHECK(r2.num[0][1].is_zero());

    // unipotent [[1,1],[0,1]] over F_2: entry (1,2) generates n mod 2
    auto K2 = F2();
    auto one = FieldElement::one(K2);
    KMatrix k2 = {{one, one}, {FieldElement::zero(K2), one}};
    auto r3 = matrix_resolvent(k2, +1);
    // t/(1-t)^2: check by expanding to order 16 against C^n entries
    auto in = AlgebraicInput::rational(r3.num[0][1], r3.den);
    CoeffOracle oracle(in);
    KMatrix pw = kmat_identity(K2, 2);
    for (uint16_t n = 0; n <= 16; ++n) {
        CHECK(oracle.coeff_at(mono({n})) == pw[0][1]);
        pw = kmat_mul(pw, k2);
    }
}

TEST_CASE("kronecker product identity on random pairs over F_4") {
    auto K = F4();
    std::mt19937 rng(404);
    std::uniform_int_distribution<uint32_t> dv(0, 3);
    auto rand_mat = [&]() {
        KMatrix M(2, std::vector<FieldElement>(2, FieldElement::zero(K)));
        for (auto& row : M)
            for (auto& v : row) v = FieldElement::from_scalar(K, dv(rng));
        return M;
    };
    int done = 0;
    while (done < 100) {
        KMatrix A = rand_mat(), B = rand_mat();
        KMatrix AB = kron(A, B);
        // (A ⊗ B)^n = A^n ⊗ B^n entrywise
        KMatrix An = kmat_identity(K, 2), Bn = kmat_identity(K, 2),
                ABn = kmat_identity(K, 4);
        for (int n = 1; n <= 4; ++n) {
            An = kmat_mul(An, A);
            Bn = kmat_mul(Bn, B);
            ABn = kmat_mul(ABn, AB);
            for (uint32_t i = 0; i < 4; ++i)
                for (uint32_t j = 0; j < 4; ++j)
                    CHECK(ABn[i][j] == An[i / 2][j / 2] * Bn[i % 2][j % 2]);
        }
        ++done;
    }
}

TEST_CASE("matrix intersection: u^n = 1 only at n = 0") {
    auto K = F2u();
    auto u = FieldElement::var(K, 0);
    MatrixProblem prob;
    prob.K = K;
    prob.dim = 1;
    prob.gens = {{{u}}};
    // P = x11 - 1
    prob.variety = {tp_sub(tvar(K, 1, 0), TPoly::one(K, 1))};
    // the entry variable x11 is TPoly variable 0; coefficients live in K
    auto sol = matrix_intersection(prob);
    CHECK(group_membership(sol, {0}));
    for (int64_t n = -6; n <= 6; ++n)
        if (n != 0) CHECK_FALSE(group_membership(sol, {n}));
}

TEST_CASE("matrix intersection: u^a (1-u)^b = 1 only at the origin") {
    auto K = F2u();
    auto u = FieldElement::var(K, 0);
    MatrixProblem prob;
    prob.K = K;
    prob.dim = 1;
    prob.gens = {{{u}}, {{FieldElement::one(K) - u}}};
    prob.variety = {tp_sub(tvar(K, 2, 0), TPoly::one(K, 2))};
    auto sol = matrix_intersection(prob);
    for (int64_t a = -4; a <= 4; ++a)
        for (int64_t b = -4; b <= 4; ++b)
            CHECK(group_membership(sol, {a, b}) == (a == 0 && b == 0));
}

TEST_CASE("matrix intersection: unipotent entry vanishes at even exponents") {
    auto K = F2();
    auto one = FieldElement::one(K);
    MatrixProblem prob;
    prob.K = K;
    prob.dim = 2;
    prob.gens = {{{one, one}, {FieldElement::zero(K), one}}};
    // P = x12, entry variable index (1-1)*2 + (2-1) = 1
    prob.variety = {tvar(K, 4, 1)};
    auto sol = matrix_intersection(prob);
    for (int64_t n = -40; n <= 40; ++n) {
        CHECK(group_membership(sol, {n}) == (((n % 2) + 2) % 2 == 0));
        CHECK(matrix_evaluate(prob, {n}) == (((n % 2) + 2) % 2 == 0));
    }
}

TEST_CASE("matrix intersection across several variety polynomials") {
    auto K = F2u();
    auto u = FieldElement::var(K, 0);
    MatrixProblem prob;
    prob.K = K;
    prob.dim = 1;
    prob.gens = {{{u}}};
    auto x = tvar(K, 1, 0);
    // x = 1 meets x = u only where u^n equals both: nowhere
    prob.variety = {tp_sub(x, TPoly::one(K, 1)),
                    tp_sub(x, TPoly::constant(K, 1, u))};
    auto sol = matrix_intersection(prob);
    IntTuple w;
    CHECK(signed_is_empty(sol.preimage, &w));

    // x^2 = 1 alone has only n = 0 (u is transcendental)
    MatrixProblem prob2 = prob;
    prob2.variety = {tp_sub(tp_mul(x, x), TPoly::one(K, 1))};
    auto sol2 = matrix_intersection(prob2);
    for (int64_t n = -6; n <= 6; ++n) CHECK(group_membership(sol2, {n}) == (n == 0));
}

TEST_CASE("s-unit dimension cap reports a resource error") {
    auto K = F2u();
    auto u = FieldElement::var(K, 0);
    auto one = FieldElement::one(K);
    SUnitProblem prob;
    prob.K = K;
    prob.coeffs = {one, one, one};                 // d = 3
    prob.generators = {u, one - u, u * u + u};     // m = 3: m*d = 9 > 8
    CHECK_THROWS_AS(sunit_solutions(prob), resource_error);
}

TEST_CASE("matrix problems validate their inputs") {
    auto K = F2u();
    auto u = FieldElement::var(K, 0);
    auto zero = FieldElement::zero(K);
    auto one = FieldElement::one(K);
    MatrixProblem sing;
    sing.K = K;
    sing.dim = 2;
    sing.gens = {{{u, zero}, {zero, zero}}};
    sing.variety = {tvar(K, 4, 0)};
    CHECK_THROWS_AS(matrix_intersection(sing), input_error);

    MatrixProblem noncomm;
    noncomm.K = K;
    noncomm.dim = 2;
    noncomm.gens = {{{zero, one}, {one, zero}}, {{u, zero}, {zero, one}}};
    noncomm.variety = {tvar(K, 4, 0)};
    CHECK_THROWS_AS(matrix_intersection(noncomm), input_error);
}
