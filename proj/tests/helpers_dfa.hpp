#pragma once

#include <random>

#include "zca/dfa.hpp"

// automata drawn in the background-material figures, coded explicitly
namespace zt {

using namespace zca;

// 2-state digit-sum-parity machine; accepts n with an odd binary digit sum
inline Dfa thue_morse_msb() {
    Dfa a;
    a.p = 2;
    a.d = 1;
    a.dir = Direction::MSB;
    a.start = 0;
    a.out = {0, 1};
    a.delta = {{0, 1}, {1, 0}};
    return a;
}

// 5-state machine for the arithmetic progression 5N+3 (MSB)
inline Dfa ap5_3_msb() {
    Dfa a;
    a.p = 2;
    a.d = 1;
    a.dir = Direction::MSB;
    // states: C A B D E  (C is initial)
    enum { C, A, B, D, E };
    a.start = C;
    a.out = {0, 0, 1, 0, 0};
    a.delta.assign(5, {0, 0});
    a.delta[C] = {C, A};
    a.delta[A] = {D, B};
    a.delta[B] = {A, D};
    a.delta[D] = {E, C};
    a.delta[E] = {B, E};
    return a;
}

// 3-state acceptor of the powers of 2 (MSB)
inline Dfa pow2_msb() {
    Dfa a;
    a.p = 2;
    a.d = 1;
    a.dir = Direction::MSB;
    enum { A, B, C };
    a.start = A;
    a.out = {0, 1, 0};
    a.delta.assign(3, {0, 0});
    a.delta[A] = {A, B};
    a.delta[B] = {B, C};
    a.delta[C] = {C, C};
    return a;
}

// 4-state acceptor of sums of at most two powers of 3 (MSB, base 3)
inline Dfa pow3_sum2_msb() {
    Dfa a;
    a.p = 3;
    a.d = 1;
    a.dir = Direction::MSB;
    enum { A, B, C, D };
    a.start = A;
    a.out = {0, 1, 1, 0};
    a.delta.assign(4, {0, 0, 0});
    a.delta[A] = {A, B, C};
    a.delta[B] = {B, C, D};
    a.delta[C] = {C, D, D};
    a.delta[D] = {D, D, D};
    return a;
}

// 2-dimensional parity machine: accepts (n,m) whose combined binary digit sum
// is even
inline Dfa parity2d_msb() {
    Dfa a;
    a.p = 2;
    a.d = 2;
    a.dir = Direction::MSB;
    a.start = 0;
    a.out = {1, 0};
    // digit tuples indexed j1 + 2*j2: (0,0)=0,(1,0)=1,(0,1)=2,(1,1)=3
    a.delta = {{0, 1, 1, 0}, {1, 0, 0, 1}};
    return a;
}

inline Dfa rand_dfa(std::mt19937& rng, uint32_t p, uint32_t d, uint32_t max_states) {
    std::uniform_int_distribution<uint32_t> dn(1, max_states);
    uint32_t n = dn(rng);
    std::uniform_int_distribution<uint32_t> ds(0, n - 1);
    std::uniform_int_distribution<uint32_t> db(0, 1);
    Dfa a;
    a.p = p;
    a.d = d;
    a.dir = Direction::LSB;
    a.start = ds(rng);
    a.out.resize(n);
    a.delta.assign(n, std::vector<uint32_t>(digit_count(p, d)));
    for (uint32_t s = 0; s < n; ++s) {
        a.out[s] = (uint8_t)db(rng);
        for (uint32_t w = 0; w < a.alphabet(); ++w) a.delta[s][w] = ds(rng);
    }
    // repair padding invariance: every state adopts the output of the minimal
    // state on the 0-digit cycle it eventually falls into
    auto orig = a.out;
    for (uint32_t s = 0; s < n; ++s) {
        uint32_t cur = s;
        for (uint32_t i = 0; i <= n; ++i) cur = a.delta[cur][0];
        uint32_t mn = cur, c2 = a.delta[cur][0];
        while (c2 != cur) {
            mn = std::min(mn, c2);
            c2 = a.delta[c2][0];
        }
        a.out[s] = orig[mn];
    }
    return a;
}

}  // namespace zt
