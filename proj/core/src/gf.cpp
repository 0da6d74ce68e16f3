#include "zca/gf.hpp"

#include <algorithm>

namespace zca {

bool is_prime_u32(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; (uint64_t)d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

using Poly = std::vector<uint32_t>;  // coefficients over F_p, low degree first

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(const Poly& a_in, const Poly& m, uint32_t p) {
    Poly a = a_in;
    trim(a);
    uint32_t lead_inv = 0;
    {
        // m is monic by construction, but keep the general path.
        uint32_t lead = m.back();
        for (uint32_t x = 1; x < p; ++x)
            if (x * lead % p == 1) lead_inv = x;
    }
    while (a.size() >= m.size()) {
        uint32_t c = (uint32_t)((uint64_t)a.back() * lead_inv % p);
        size_t shift = a.size() - m.size();
        for (size_t i = 0; i < m.size(); ++i) {
            uint64_t v = a[shift + i] + (uint64_t)(p - 1) * c % p * m[i];
            a[shift + i] = (uint32_t)(v % p);
        }
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = (uint32_t)((c[i + j] + (uint64_t)a[i] * b[j]) % p);
    return poly_mod(c, m, p);
}

Poly poly_powmod(Poly base, uint64_t k, const Poly& m, uint32_t p) {
    Poly r = {1};
    while (k) {
        if (k & 1) r = poly_mulmod(r, base, m, p);
        base = poly_mulmod(base, base, m, p);
        k >>= 1;
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, uint32_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

Poly make_monic(Poly a, uint32_t p) {
    trim(a);
    if (a.empty()) return a;
    uint32_t inv = 0;
    for (uint32_t x = 1; x < p; ++x)
        if (x * a.back() % p == 1) inv = x;
    for (auto& c : a) c = (uint32_t)((uint64_t)c * inv % p);
    return a;
}

bool irreducible(const Poly& m, uint32_t p) {
    uint32_t e = (uint32_t)m.size() - 1;
    if (e == 0) return false;
    if (e == 1) return true;
    // x^{p^e} == x mod m, and gcd(x^{p^{e/l}} - x, m) == 1 for prime l | e.
    Poly x = {0, 1};
    Poly t = x;
    std::vector<Poly> powers(e + 1);
    powers[0] = x;
    for (uint32_t k = 1; k <= e; ++k) {
        t = poly_powmod(t, p, m, p);
        powers[k] = t;
    }
    Poly diff = powers[e];
    // diff - x
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    if (!diff.empty()) return false;
    for (uint32_t l = 2; l <= e; ++l) {
        if (e % l != 0) continue;
        bool lprime = is_prime_u32(l);
        if (!lprime) continue;
        Poly d = powers[e / l];
        if (d.size() < 2) d.resize(2, 0);
        d[1] = (d[1] + p - 1) % p;
        trim(d);
        Poly g = poly_gcd(make_monic(m, p), make_monic(d, p), p);
        if (g.size() > 1) return false;
    }
    return true;
}

}  // namespace

GF::GF(uint32_t p, uint32_t e, std::vector<uint32_t> modulus)
    : p_(p), e_(e), modulus_(std::move(modulus)) {
    if (!is_prime_u32(p)) throw input_error("GF: p = " + std::to_string(p) + " is not prime");
    if (e < 1) throw input_error("GF: extension degree must be >= 1");
    uint64_t q = 1;
    for (uint32_t i = 0; i < e; ++i) {
        q *= p;
        if (q > (1u << 16)) throw input_error("GF: field size p^e exceeds 2^16");
    }
    q_ = (uint32_t)q;
    if (e == 1) {
        modulus_ = {0, 1};
    } else {
        for (auto& c : modulus_) c %= p;
        if (modulus_.size() != e + 1 || modulus_.back() != 1)
            throw input_error("GF: modulus must be monic of degree e");
        if (!irreducible(modulus_, p))
            throw input_error("GF: modulus is not irreducible over F_p");
    }
    build_tables();
}

GF GF::prime(uint32_t p) { return GF(p, 1, {0, 1}); }

void GF::build_tables() {
    // index <-> coefficient vector: index = sum c_i p^i
    auto decode = [&](uint32_t x) {
        Poly c(e_);
        for (uint32_t i = 0; i < e_; ++i) {
            c[i] = x % p_;
            x /= p_;
        }
        trim(c);
        return c;
    };
    auto encode = [&](const Poly& c) {
        uint32_t x = 0;
        for (size_t i = c.size(); i-- > 0;) x = x * p_ + c[i];
        return x;
    };
    // raw multiply (used to bootstrap the tables)
    auto raw_mul = [&](uint32_t a, uint32_t b) {
        Poly r = poly_mulmod(decode(a), decode(b), modulus_, p_);
        return encode(r);
    };

    // find a primitive element
    uint32_t g = 0;
    for (uint32_t cand = 2; cand < q_; ++cand) {
        uint32_t x = cand;
        uint32_t order = 1;
        while (x != 1) {
            x = raw_mul(x, cand);
            ++order;
            if (order > q_) throw internal_error("GF: order search diverged");
        }
        if (order == q_ - 1) {
            g = cand;
            break;
        }
    }
    if (g == 0 && q_ == 2) g = 1;
    if (g == 0) throw internal_error("GF: no primitive element found");

    exp_.assign(2 * (q_ - 1), 1);
    log_.assign(q_, 0);
    uint32_t x = 1;
    for (uint32_t k = 0; k + 1 < q_; ++k) {
        exp_[k] = x;
        log_[x] = k;
        x = raw_mul(x, g);
    }
    for (uint32_t k = 0; k + 1 < q_; ++k) exp_[k + q_ - 1] = exp_[k];

    frob_.resize(q_);
    frobinv_.resize(q_);
    for (uint32_t v = 0; v < q_; ++v) frob_[v] = pow(v, p_);
    uint64_t inv_exp = 1;
    for (uint32_t i = 0; i + 1 < e_; ++i) inv_exp *= p_;
    for (uint32_t v = 0; v < q_; ++v) frobinv_[v] = pow(v, inv_exp);
}

uint32_t GF::add(uint32_t x, uint32_t y) const {
    if (p_ == 2) return x ^ y;
    uint32_t r = 0, mult = 1;
    for (uint32_t i = 0; i < e_; ++i) {
        r += (x % p_ + y % p_) % p_ * mult;
        x /= p_;
        y /= p_;
        mult *= p_;
    }
    return r;
}

uint32_t GF::neg(uint32_t x) const {
    if (p_ == 2) return x;
    uint32_t r = 0, mult = 1;
    for (uint32_t i = 0; i < e_; ++i) {
        r += (p_ - x % p_) % p_ * mult;
        x /= p_;
        mult *= p_;
    }
    return r;
}

uint32_t GF::inv(uint32_t x) const {
    if (x == 0) throw input_error("GF: division by zero");
    return exp_[q_ - 1 - log_[x]];
}

uint32_t GF::pow(uint32_t x, uint64_t k) const {
    if (x == 0) return k == 0 ? 1 : 0;
    if (q_ == 2) return 1;
    uint64_t l = (uint64_t)log_[x] * (k % (q_ - 1)) % (q_ - 1);
    return exp_[l];
}

uint32_t GF::from_int(int64_t n) const {
    int64_t m = n % (int64_t)p_;
    if (m < 0) m += p_;
    return (uint32_t)m;
}

std::vector<uint32_t> GF::coords(uint32_t x) const {
    std::vector<uint32_t> c(e_);
    for (uint32_t i = 0; i < e_; ++i) {
        c[i] = x % p_;
        x /= p_;
    }
    return c;
}

std::string GF::to_string(uint32_t x) const {
    if (x < p_) return std::to_string(x);
    auto c = coords(x);
    std::string s;
    for (size_t i = c.size(); i-- > 0;) {
        if (c[i] == 0) continue;
        if (!s.empty()) s += "+";
        if (i == 0) {
            s += std::to_string(c[i]);
        } else {
            if (c[i] != 1) s += std::to_string(c[i]) + "*";
            s += "a";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s.empty() ? "0" : s;
}

}  // namespace zca
