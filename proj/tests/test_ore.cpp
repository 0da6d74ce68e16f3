#include <doctest.h>

#include "helpers_poly.hpp"
#include "zca/ore.hpp"

using namespace zca;
using namespace zt;

namespace {

bool dependency_holds(const std::vector<std::vector<TPoly>>& V, const std::vector<TPoly>& Q) {
    size_t dim = V[0].size();
    bool nonzero = false;
    const FieldPtr& K = V[0][0].K;
    for (auto& q : Q) nonzero |= !q.is_zero();
    if (!nonzero) return false;
    for (size_t i = 0; i < dim; ++i) {
        TPoly acc = TPoly::zero(K, V[0][0].d);
        for (size_t j = 0; j < V.size(); ++j) acc = tp_add(acc, tp_mul(Q[j], V[j][i]));
        if (!acc.is_zero()) return false;
    }
    return true;
}

bool proportional(const TPoly& a, const TPoly& b, const TPoly& c, const TPoly& d) {
    // (a, b) ~ (c, d) iff a*d == b*c
    return tp_cmp(tp_mul(a, d), tp_mul(b, c)) == 0;
}

}  // namespace

TEST_CASE("find_linear_dependency small cases") {
    auto K = F2();
    auto t = tvar(K, 1, 0);
    auto one = TPoly::one(K, 1);

    // V0 = (1), V1 = (t): dependency proportional to (t, -1)
    std::vector<std::vector<TPoly>> V = {{one}, {t}};
    auto Q = find_linear_dependency(V);
    CHECK(dependency_holds(V, Q));
    CHECK(proportional(Q[0], Q[1], t, tconst(K, 1, -1)));

    // V0 = (1,0), V1 = (0,1), V2 = (t, t^2): dependency ~ (t, t^2, -1)
    auto z = TPoly::zero(K, 1);
    std::vector<std::vector<TPoly>> W = {{one, z}, {z, one}, {t, tvar(K, 1, 0, 2)}};
    auto R = find_linear_dependency(W);
    CHECK(dependency_holds(W, R));
    CHECK(proportional(R[0], R[2], t, tconst(K, 1, -1)));
    CHECK(proportional(R[1], R[2], tvar(K, 1, 0, 2), tconst(K, 1, -1)));
}

TEST_CASE("find_linear_dependency random vectors obey the degree bound") {
    std::mt19937 rng(5150);
    auto K = F3();
    for (int it = 0; it < 40; ++it) {
        std::vector<std::vector<TPoly>> V(3);
        for (auto& v : V)
            for (int i = 0; i < 2; ++i) v.push_back(rand_tpoly(K, 1, rng, 4, 3, 0));
        auto Q = find_linear_dependency(V);
        CHECK(dependency_holds(V, Q));
        for (auto& q : Q) CHECK(q.deg() <= 8);  // r*s = 4*2
    }
}

TEST_CASE("effective ore on X^2+X+t over F_2") {
    auto K = F2();
    std::vector<TPoly> P = {tvar(K, 1, 0), TPoly::one(K, 1), TPoly::one(K, 1)};
    auto in = AlgebraicInput::annihilator(K, 1, P, {{mono({0}), FieldElement::zero(K)}});
    auto rel = effective_ore(in, 64);
    CHECK(rel.s == 2);
    CHECK_FALSE(rel.Q[0].is_zero());
    CHECK(rel.degree_bound() <= 8);  // H s p^s = 1*2*4
    CHECK(verify_ore(rel, in, 64));
}

TEST_CASE("effective ore respects H s p^s on taller inputs") {
    auto K = F2u();
    auto u = FieldElement::var(K, 0);
    // height-3 degree-2 annihilator with the rational root (1+u t^3)/(1 - t - u t^2)
    TPoly A = tp_add(TPoly::one(K, 1), tscaled(tvar(K, 1, 0, 3), u));
    TPoly B = tp_sub(tp_sub(TPoly::one(K, 1), tvar(K, 1, 0)), tscaled(tvar(K, 1, 0, 2), u));
    TPoly C = tvar(K, 1, 0, 2);
    TPoly D = tp_add(TPoly::one(K, 1), tvar(K, 1, 0, 3));
    std::vector<TPoly> P = {tp_mul(A, C), tp_neg(tp_add(tp_mul(B, C), tp_mul(D, A))),
                            tp_mul(B, D)};
    auto in =
        AlgebraicInput::annihilator(K, 1, P, {{mono({0}), A.at_zero() / B.at_zero()}});
    uint32_t H = in.height();
    CHECK(H == 6);
    auto rel = effective_ore(in, 64);
    CHECK(rel.degree_bound() <= H * 2 * 4);
    CHECK(verify_ore(rel, in, 64));
}

TEST_CASE("effective ore agrees with the rational closed form") {
    auto K = F2u();
    auto [A, B] = lech_rational(K);
    auto in_rat = AlgebraicInput::rational(A, B);
    // annihilator B X - A with the matching seed
    auto in_ann = AlgebraicInput::annihilator(K, 1, {tp_neg(A), B},
                                              {{Exp{}, A.at_zero() / B.at_zero()}});
    auto rel1 = effective_ore(in_ann, 64);
    CHECK(verify_ore(rel1, in_rat, 64));
    auto rel2 = ore_from_rational(A, B);
    CHECK(verify_ore(rel2, in_rat, 64));
    CHECK(verify_ore(rel2, in_ann, 64));
}

TEST_CASE("ore_from_rational identities") {
    auto K = F2();
    // A = t, B = 1 - t: (Q_0, Q_1) = (t, 1+t)
    TPoly A = tvar(K, 1, 0);
    TPoly B = TPoly::one_minus(K, 1, 0, FieldElement::one(K));
    auto rel = ore_from_rational(A, B);
    CHECK(rel.Q[0].to_string() == "t1");
    CHECK(rel.Q[1].to_string() == "t1+1");
    CHECK(verify_ore(rel, AlgebraicInput::rational(A, B), 32));

    // A = B: f = 1, scaled form of the relation 1 - 1^p = 0
    auto rel2 = ore_from_rational(B, B);
    CHECK(verify_ore(rel2, AlgebraicInput::rational(B, B), 16));

    // A = 0 is the zero series; callers special-case it
    CHECK_THROWS_AS(ore_from_rational(TPoly::zero(K, 1), B), input_error);
}

TEST_CASE("ore_from_rational in two variables over F_3") {
    auto K = F3();
    TPoly one = TPoly::one(K, 2);
    TPoly B = tp_sub(tp_sub(one, tvar(K, 2, 0)), tvar(K, 2, 1));
    auto rel = ore_from_rational(one, B);
    CHECK(rel.Q[0].to_string() == "1");
    CHECK(tp_cmp(rel.Q[1], tp_neg(tp_mul(B, B))) == 0);
    CHECK(verify_ore(rel, AlgebraicInput::rational(one, B), 10));
}

TEST_CASE("rewrite coefficients satisfy the ftilde recursion") {
    // ftilde = f / Q_0 satisfies ftilde = sum rewrite[i-1] ftilde^{p^i}; checked
    // via the polynomial identity Q_0^{p^s} * ftilde-recursion cleared of
    // denominators: for every i the identity is equivalent to the original
    // relation, so re-verify the relation computed from the rewrite row.
    auto K = F2();
    std::vector<TPoly> P = {tvar(K, 1, 0), TPoly::one(K, 1), TPoly::one(K, 1)};
    auto in = AlgebraicInput::annihilator(K, 1, P, {{mono({0}), FieldElement::zero(K)}});
    auto rel = effective_ore(in, 0);
    // reconstruct Q_i from rewrite: rewrite[i-1] = -Q_i Q_0^{p^i-2}
    auto rewrite = rel.rewrite_polys();
    uint64_t p = 2, pi = 1;
    for (uint32_t i = 1; i <= rel.s; ++i) {
        pi *= p;
        auto expected = tp_neg(tp_mul(rel.Q[i], tp_pow(rel.Q[0], pi - 2)));
        CHECK(tp_cmp(rewrite[i - 1], expected) == 0);
        CHECK(rewrite[i - 1].deg() <= rel.M);
    }
}
