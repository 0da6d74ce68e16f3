#include "zca/bigint.hpp"

#include <algorithm>
#include <cmath>

#include "zca/errors.hpp"

namespace zca {

BigInt::BigInt(uint64_t v) {
    if (v) limbs_.push_back((uint32_t)v);
    if (v >> 32) limbs_.push_back((uint32_t)(v >> 32));
}

void BigInt::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

uint64_t BigInt::bit_length() const {
    if (limbs_.empty()) return 0;
    uint64_t bits = (uint64_t)(limbs_.size() - 1) * 32;
    uint32_t top = limbs_.back();
    while (top) {
        ++bits;
        top >>= 1;
    }
    return bits;
}

uint64_t BigInt::as_u64() const {
    if (!fits_u64()) throw internal_error("BigInt: value exceeds 64 bits");
    uint64_t v = 0;
    if (limbs_.size() > 1) v = (uint64_t)limbs_[1] << 32;
    if (!limbs_.empty()) v |= limbs_[0];
    return v;
}

int BigInt::cmp(const BigInt& a, const BigInt& b) {
    if (a.limbs_.size() != b.limbs_.size()) return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
    for (size_t i = a.limbs_.size(); i-- > 0;)
        if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
    return 0;
}

BigInt BigInt::operator+(const BigInt& o) const {
    BigInt r;
    size_t n = std::max(limbs_.size(), o.limbs_.size());
    r.limbs_.resize(n, 0);
    uint64_t carry = 0;
    for (size_t i = 0; i < n; ++i) {
        uint64_t s = carry;
        if (i < limbs_.size()) s += limbs_[i];
        if (i < o.limbs_.size()) s += o.limbs_[i];
        r.limbs_[i] = (uint32_t)s;
        carry = s >> 32;
    }
    if (carry) r.limbs_.push_back((uint32_t)carry);
    return r;
}

BigInt BigInt::operator-(const BigInt& o) const {
    if (cmp(*this, o) < 0) throw internal_error("BigInt: negative subtraction");
    BigInt r;
    r.limbs_.resize(limbs_.size(), 0);
    int64_t borrow = 0;
    for (size_t i = 0; i < limbs_.size(); ++i) {
        int64_t s = (int64_t)limbs_[i] - borrow - (i < o.limbs_.size() ? o.limbs_[i] : 0);
        if (s < 0) {
            s += ((int64_t)1 << 32);
            borrow = 1;
        } else {
            borrow = 0;
        }
        r.limbs_[i] = (uint32_t)s;
    }
    r.trim();
    return r;
}

BigInt BigInt::operator*(const BigInt& o) const {
    if (is_zero() || o.is_zero()) return BigInt();
    BigInt r;
    r.limbs_.assign(limbs_.size() + o.limbs_.size(), 0);
    for (size_t i = 0; i < limbs_.size(); ++i) {
        uint64_t carry = 0;
        for (size_t j = 0; j < o.limbs_.size(); ++j) {
            uint64_t cur = (uint64_t)limbs_[i] * o.limbs_[j] + r.limbs_[i + j] + carry;
            r.limbs_[i + j] = (uint32_t)cur;
            carry = cur >> 32;
        }
        size_t k = i + o.limbs_.size();
        while (carry) {
            uint64_t cur = r.limbs_[k] + carry;
            r.limbs_[k] = (uint32_t)cur;
            carry = cur >> 32;
            ++k;
        }
    }
    r.trim();
    return r;
}

BigInt BigInt::operator/(uint32_t v) const {
    if (v == 0) throw internal_error("BigInt: division by zero");
    BigInt r;
    r.limbs_.resize(limbs_.size(), 0);
    uint64_t rem = 0;
    for (size_t i = limbs_.size(); i-- > 0;) {
        uint64_t cur = (rem << 32) | limbs_[i];
        r.limbs_[i] = (uint32_t)(cur / v);
        rem = cur % v;
    }
    r.trim();
    return r;
}

uint32_t BigInt::mod_u32(uint32_t v) const {
    uint64_t rem = 0;
    for (size_t i = limbs_.size(); i-- > 0;) rem = ((rem << 32) | limbs_[i]) % v;
    return (uint32_t)rem;
}

BigInt BigInt::pow(uint64_t base, const BigInt& exp, uint64_t bit_ceiling) {
    if (base == 0) return exp.is_zero() ? BigInt(1) : BigInt(0);
    if (base == 1 || exp.is_zero()) return BigInt(1);
    // bit-length estimate before computing
    double bits = exp.log2_approx() > 64
                      ? 1e30
                      : (double)exp.as_u64() * std::log2((double)base);
    if (!exp.fits_u64() || bits > (double)bit_ceiling)
        throw resource_error("BigInt::pow: result exceeds " + std::to_string(bit_ceiling) +
                             " bits");
    uint64_t e = exp.as_u64();
    BigInt r(1), b(base);
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

BigInt BigInt::binomial(const BigInt& n, uint64_t k) {
    // C(n, k) for big n, small k: prod (n - i + 1) / i
    BigInt r(1);
    for (uint64_t i = 1; i <= k; ++i) {
        BigInt factor = n - BigInt(i - 1);
        r = r * factor;
        r = r / (uint32_t)i;  // exact at every step
    }
    return r;
}

std::string BigInt::to_decimal() const {
    if (is_zero()) return "0";
    std::vector<uint32_t> chunks;  // base 10^9
    BigInt cur = *this;
    while (!cur.is_zero()) {
        chunks.push_back(cur.mod_u32(1000000000u));
        cur = cur / 1000000000u;
    }
    std::string s = std::to_string(chunks.back());
    for (size_t i = chunks.size() - 1; i-- > 0;) {
        std::string part = std::to_string(chunks[i]);
        s += std::string(9 - part.size(), '0') + part;
    }
    return s;
}

double BigInt::log2_approx() const {
    if (is_zero()) return -1e30;
    // top limbs as a double mantissa, the rest as an exponent shift
    double top = 0;
    size_t n = limbs_.size();
    for (size_t i = n; i-- > 0 && i + 3 >= n;) top = top * 4294967296.0 + limbs_[i];
    uint64_t skipped = (n > 3 ? n - 3 : 0) * 32;
    return std::log2(top) + (double)skipped;
}

}  // namespace zca
