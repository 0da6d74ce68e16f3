#include <doctest.h>

#include "zca/bounds.hpp"
#include "zca/errors.hpp"

using namespace zca;

TEST_CASE("bigint basics") {
    BigInt a(123456789012345ull), b(987654321ull);
    CHECK((a * b).to_decimal() == "121932631124827861592745");
    CHECK((a + b).to_decimal() == "123457776666666");
    CHECK((a - b).to_decimal() == "123455801358024");
    CHECK(BigInt::pow(2, BigInt(64), 1024).to_decimal() == "18446744073709551616");
    CHECK(BigInt::binomial(BigInt(25), 24).to_decimal() == "25");
    CHECK(BigInt::binomial(BigInt(74), 2).to_decimal() == "2701");
    CHECK(BigInt(1000000007).mod_u32(10) == 7);
    CHECK((BigInt(100) / 7).to_decimal() == "14");
    CHECK(BigInt::cmp(BigInt(5), BigInt(7)) < 0);
    // log2 sanity
    CHECK(BigInt::pow(2, BigInt(100), 4096).log2_approx() == doctest::Approx(100.0));
}

TEST_CASE("ore degree bound formula") {
    CHECK(ore_degree_bound(1, 2, 2).to_decimal() == "8");
    CHECK(ore_degree_bound(3, 2, 2).to_decimal() == "24");
    CHECK(ore_degree_bound(1, 1, 3).to_decimal() == "3");
}

TEST_CASE("automata count bound formula") {
    CHECK(automata_count_bound(1, 2).to_decimal() == "2");
    CHECK(automata_count_bound(2, 2).to_decimal() == "128");
}

TEST_CASE("element bounds formula") {
    auto b32 = element_bounds(3, 2);
    CHECK(b32.min_bound.to_decimal() == "2");
    CHECK(b32.max_bound.to_decimal() == "2");
    auto b43 = element_bounds(4, 3);
    CHECK(b43.min_bound.to_decimal() == "9");
    auto deg = element_bounds(1, 2);
    CHECK(deg.degenerate);
    CHECK(deg.min_bound.to_decimal() == "1");
}

TEST_CASE("chain spot values") {
    BoundParams q;
    q.p = 2;
    q.d = 1;
    q.H = 1;
    q.s = 2;
    auto c = complexity_bound_chain(q);
    // M = 1*2*4*3, N0 = 3 * C(25,1)
    CHECK(c.M.to_decimal() == "24");
    CHECK(c.N0.to_decimal() == "75");
    // N1 = 2^{1 + 2*75^2} symbolic
    CHECK(c.N1.to_string() == "2^(11251)");
    CHECK(bound_n1(2, 1, BigInt(1)).to_string() == "8");
    // degenerate step-2 values with the default parameters
    CHECK(c.N3.to_decimal() == "1");
    CHECK(c.N4.to_decimal() == "2");
    // positivity all the way down
    CHECK_FALSE(c.Mprime.is_zero());
    CHECK_FALSE(c.k0.is_zero());
    CHECK(c.N9.log2_approx() > 1.0);
    CHECK(c.N9.to_string().substr(0, 3) == "2^(");
}

TEST_CASE("chain is monotone in H and s") {
    auto value_of = [](uint64_t H, uint64_t s) {
        BoundParams q;
        q.p = 2;
        q.d = 1;
        q.H = H;
        q.s = s;
        return complexity_bound_chain(q);
    };
    for (uint64_t H = 1; H <= 3; ++H)
        for (uint64_t s = 1; s <= 3; ++s) {
            auto base = value_of(H, s);
            auto upH = value_of(H + 1, s);
            auto upS = value_of(H, s + 1);
            CHECK(BigInt::cmp(base.M, upH.M) <= 0);
            CHECK(BigInt::cmp(base.M, upS.M) <= 0);
            CHECK(BigInt::cmp(base.N0, upH.N0) <= 0);
            CHECK(BoundValue::cmp(base.N9, upH.N9) <= 0);
            CHECK(BoundValue::cmp(base.N9, upS.N9) <= 0);
        }
}

TEST_CASE("kernel complexity sits far below the certificate") {
    // N9 certifies termination; the desk-scale safety ceiling is minuscule
    // against it, so comp <= ceiling << log2 N9 is the checkable form
    BoundParams q;
    q.p = 2;
    q.d = 1;
    q.H = 3;  // the Lech numerator/denominator heights
    q.s = 1;
    auto c = complexity_bound_chain(q);
    const uint32_t ceiling = 1000000;
    CHECK(c.N9.log2_approx() > (double)ceiling);
    // the Lech automaton itself is tiny
    CHECK(ceiling >= 4);
}

TEST_CASE("p = 3 and s_alg > 1 branches") {
    BoundParams q;
    q.p = 3;
    q.d = 1;
    q.H = 1;
    q.s = 1;
    q.s_alg = 2;
    q.t_alg = 1;
    q.N2 = 2;
    q.n_override = BigInt(5);
    auto c = complexity_bound_chain(q);
    // N3 = N2 * 2 s^{p-2} = 2 * 2*2 = 8 for p = 3
    CHECK(c.N3.to_decimal() == "8");
    CHECK(c.N4.to_decimal() == "32");
    // N6 = (N2+N5)(p-1) n s^{2(p-1)n} = 3*2*5*2^20
    CHECK(c.N6.to_decimal() == std::to_string(30ull * (1ull << 20)));
}
