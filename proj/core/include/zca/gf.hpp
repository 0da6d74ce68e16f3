#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zca/errors.hpp"

namespace zca {

// The finite field F_{p^e}.
//
// Elements are plain uint32_t indices in [0, q).  The index encodes the
// coordinate vector relative to the power basis 1, a, ..., a^{e-1} of the
// modulus: x = sum c_i a^i  <->  index = sum c_i p^i.  Multiplication and
// inversion go through discrete-log tables over a primitive element, so q is
// capped at 2^16.
class GF {
  public:
    // modulus: coefficients c_0..c_e of a monic irreducible polynomial of
    // degree e over F_p (checked).  For e == 1 pass {0, 1} or use prime().
    GF(uint32_t p, uint32_t e, std::vector<uint32_t> modulus);

    static GF prime(uint32_t p);

    uint32_t p() const { return p_; }
    uint32_t e() const { return e_; }
    uint32_t q() const { return q_; }
    const std::vector<uint32_t>& modulus() const { return modulus_; }

    uint32_t zero() const { return 0; }
    uint32_t one() const { return 1; }
    // The class of a, i.e. the extension generator (only meaningful for e > 1).
    uint32_t gen() const { return e_ > 1 ? p_ : 1; }

    uint32_t add(uint32_t x, uint32_t y) const;
    uint32_t neg(uint32_t x) const;
    uint32_t sub(uint32_t x, uint32_t y) const { return add(x, neg(y)); }
    uint32_t mul(uint32_t x, uint32_t y) const {
        if (x == 0 || y == 0) return 0;
        return exp_[log_[x] + log_[y]];
    }
    uint32_t inv(uint32_t x) const;
    uint32_t div(uint32_t x, uint32_t y) const { return mul(x, inv(y)); }
    uint32_t pow(uint32_t x, uint64_t k) const;

    uint32_t from_int(int64_t n) const;

    uint32_t frobenius(uint32_t x) const { return frob_[x]; }
    // The inverse of x -> x^p, realized as x -> x^{p^{e-1}}.
    uint32_t frobenius_inverse(uint32_t x) const { return frobinv_[x]; }

    // Coordinates c_0..c_{e-1} over F_p.
    std::vector<uint32_t> coords(uint32_t x) const;

    // Renders x in terms of the generator, e.g. "0", "1", "a", "a^2+a+1".
    std::string to_string(uint32_t x) const;

    bool operator==(const GF& o) const {
        return p_ == o.p_ && e_ == o.e_ && modulus_ == o.modulus_;
    }

  private:
    uint32_t p_ = 0, e_ = 0, q_ = 0;
    std::vector<uint32_t> modulus_;
    std::vector<uint32_t> exp_;  // size 2(q-1), doubled to skip the reduction
    std::vector<uint32_t> log_;  // log_[x] for x != 0
    std::vector<uint32_t> frob_, frobinv_;

    void build_tables();
};

bool is_prime_u32(uint32_t n);

}  // namespace zca
