#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace zca {

// Unsigned arbitrary-precision integer, base 2^32 limbs, little-endian.
// Only the operations the bound calculators need.
class BigInt {
  public:
    BigInt() = default;
    BigInt(uint64_t v);

    bool is_zero() const { return limbs_.empty(); }
    uint64_t bit_length() const;
    bool fits_u64() const { return limbs_.size() <= 2; }
    uint64_t as_u64() const;

    static int cmp(const BigInt& a, const BigInt& b);
    bool operator==(const BigInt& o) const { return limbs_ == o.limbs_; }
    bool operator<(const BigInt& o) const { return cmp(*this, o) < 0; }
    bool operator<=(const BigInt& o) const { return cmp(*this, o) <= 0; }

    BigInt operator+(const BigInt& o) const;
    BigInt operator-(const BigInt& o) const;  // requires *this >= o
    BigInt operator*(const BigInt& o) const;
    BigInt operator/(uint32_t v) const;
    uint32_t mod_u32(uint32_t v) const;

    static BigInt pow(uint64_t base, const BigInt& exp, uint64_t bit_ceiling);
    static BigInt binomial(const BigInt& n, uint64_t k);

    std::string to_decimal() const;
    // log2 with directed rounding error < 1e-6
    double log2_approx() const;

  private:
    std::vector<uint32_t> limbs_;
    void trim();
};

}  // namespace zca
