#pragma once

#include <memory>
#include <optional>

#include "zca/bigint.hpp"

namespace zca {

// A bound from the constant chain: an exact integer while it fits, otherwise
// an exact power tower base^exponent (the certificate's role is ordering, not
// storage).
class BoundValue {
  public:
    BoundValue() = default;
    BoundValue(BigInt v) : exact_(std::move(v)) {}
    static BoundValue power(uint64_t base, BoundValue exp);

    bool is_exact() const { return !exp_; }
    const BigInt& exact() const { return exact_; }
    uint64_t base() const { return base_; }
    const BoundValue& exponent() const { return *exp_; }

    // materializes small powers; keeps towers symbolic
    static BoundValue make_pow(uint64_t base, BoundValue exp, uint64_t bit_ceiling = 4096);

    std::string to_string() const;
    // exact when the tower is base 2 (or exact); otherwise a close estimate
    std::string log2_string() const;
    double log2_approx() const;

    // three-way comparison; exact for exact values and same-base towers,
    // otherwise decided through certified log bounds
    static int cmp(const BoundValue& a, const BoundValue& b);

  private:
    BigInt exact_;
    uint64_t base_ = 0;
    std::shared_ptr<const BoundValue> exp_;
};

struct BoundParams {
    uint32_t p = 2;
    uint32_t d = 1;
    uint64_t H = 1;  // annihilator height
    uint64_t s = 1;  // annihilator degree in X
    // Step-2 bookkeeping for the coefficient field; the defaults are the
    // degenerate values of a purely transcendental K = F_{p^e}(u_1..u_r)
    uint64_t r = 1;
    uint64_t N2 = 1;
    uint64_t N5 = 1;
    uint64_t s_alg = 1;
    uint64_t t_alg = 1;
    std::optional<BigInt> n_override;  // generator count n, else derived
};

struct BoundChain {
    BoundParams params;
    BigInt M;        // H s p^s (p^s - 1)
    BigInt N0;       // (s+1) C(M+d, d)
    BoundValue N1;   // p^{1 + p^d N0^2}
    BigInt N3, N4, N6;
    BigInt Mprime;   // (N4+N6) s_alg p + p
    BigInt k0;       // floor(2(M'+1)p/(p-1)) + 1
    BigInt n;        // generator count used
    BoundValue N7;   // p^{(n+1)(k0-1)}
    BoundValue N8;   // N7^{N0}
    BoundValue N9;   // 2^{N8}: comp_p(Z(f)) <= N9
};

// deg Q_i <= H s p^s
BigInt ore_degree_bound(uint64_t H, uint64_t s, uint32_t p);

BoundChain complexity_bound_chain(const BoundParams& params);

// at most N 2^N N^{pN} distinct p-automatic sets of complexity <= N
BigInt automata_count_bound(uint64_t N, uint32_t p);

// min/max element bounds p^{comp-2}; comp < 2 degenerates to 1
struct ElementBounds {
    BigInt min_bound, max_bound;
    bool degenerate = false;
};
ElementBounds element_bounds(uint64_t comp, uint32_t p);

// the N1 formula on its own: p^{1 + p^d N0^2}
BoundValue bound_n1(uint32_t p, uint32_t d, const BigInt& N0);

}  // namespace zca
