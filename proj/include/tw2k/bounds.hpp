#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tw2k/check.hpp"

namespace tw2k {

// Unsigned big integer, base 2^32. Just enough arithmetic for the bound
// formulas: add, subtract (monus), multiply, small divide, compare, decimal
// printing.
class BigUint {
  public:
    BigUint() = default;
    BigUint(std::uint64_t v) {
        while (v) {
            limbs_.push_back(static_cast<std::uint32_t>(v));
            v >>= 32;
        }
    }

    static BigUint from_decimal(const std::string& s) {
        BigUint out;
        for (char c : s) {
            require(c >= '0' && c <= '9', "from_decimal: bad digit");
            out = out * 10u + BigUint(static_cast<std::uint64_t>(c - '0'));
        }
        return out;
    }

    bool is_zero() const { return limbs_.empty(); }

    friend BigUint operator+(const BigUint& a, const BigUint& b) {
        BigUint out;
        std::uint64_t carry = 0;
        std::size_t n = std::max(a.limbs_.size(), b.limbs_.size());
        for (std::size_t i = 0; i < n || carry; ++i) {
            std::uint64_t s = carry;
            if (i < a.limbs_.size()) s += a.limbs_[i];
            if (i < b.limbs_.size()) s += b.limbs_[i];
            out.limbs_.push_back(static_cast<std::uint32_t>(s));
            carry = s >> 32;
        }
        out.trim();
        return out;
    }

    // Saturating subtraction; callers compare first when exactness matters.
    friend BigUint operator-(const BigUint& a, const BigUint& b) {
        if (!(b < a)) return BigUint();
        BigUint out;
        std::int64_t borrow = 0;
        for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
            std::int64_t s = static_cast<std::int64_t>(a.limbs_[i]) - borrow -
                             (i < b.limbs_.size() ? b.limbs_[i] : 0);
            borrow = 0;
            if (s < 0) {
                s += 1ll << 32;
                borrow = 1;
            }
            out.limbs_.push_back(static_cast<std::uint32_t>(s));
        }
        check(borrow == 0, "biguint subtraction underflow");
        out.trim();
        return out;
    }

    friend BigUint operator*(const BigUint& a, const BigUint& b) {
        if (a.is_zero() || b.is_zero()) return BigUint();
        BigUint out;
        out.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
        for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
            std::uint64_t carry = 0;
            for (std::size_t j = 0; j < b.limbs_.size() || carry; ++j) {
                std::uint64_t cur = out.limbs_[i + j] + carry;
                if (j < b.limbs_.size())
                    cur += static_cast<std::uint64_t>(a.limbs_[i]) * b.limbs_[j];
                out.limbs_[i + j] = static_cast<std::uint32_t>(cur);
                carry = cur >> 32;
            }
        }
        out.trim();
        return out;
    }

    friend BigUint operator*(const BigUint& a, std::uint32_t b) { return a * BigUint(b); }

    // Division by a small divisor; remainder out-parameter optional.
    BigUint div_small(std::uint32_t d, std::uint32_t* rem_out = nullptr) const {
        require(d != 0, "div_small: zero divisor");
        BigUint out;
        out.limbs_.assign(limbs_.size(), 0);
        std::uint64_t rem = 0;
        for (std::size_t i = limbs_.size(); i-- > 0;) {
            std::uint64_t cur = (rem << 32) | limbs_[i];
            out.limbs_[i] = static_cast<std::uint32_t>(cur / d);
            rem = cur % d;
        }
        out.trim();
        if (rem_out) *rem_out = static_cast<std::uint32_t>(rem);
        return out;
    }

    friend bool operator==(const BigUint& a, const BigUint& b) { return a.limbs_ == b.limbs_; }
    friend bool operator<(const BigUint& a, const BigUint& b) {
        if (a.limbs_.size() != b.limbs_.size()) return a.limbs_.size() < b.limbs_.size();
        for (std::size_t i = a.limbs_.size(); i-- > 0;)
            if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i];
        return false;
    }
    friend bool operator<=(const BigUint& a, const BigUint& b) { return a < b || a == b; }

    std::string to_decimal() const {
        if (is_zero()) return "0";
        BigUint cur = *this;
        std::string out;
        while (!cur.is_zero()) {
            std::uint32_t rem;
            cur = cur.div_small(10, &rem);
            out.push_back(static_cast<char>('0' + rem));
        }
        return std::string(out.rbegin(), out.rend());
    }

    std::uint64_t to_u64() const {
        require(limbs_.size() <= 2, "to_u64: overflow");
        std::uint64_t v = 0;
        for (std::size_t i = limbs_.size(); i-- > 0;) v = (v << 32) | limbs_[i];
        return v;
    }

  private:
    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    }
    std::vector<std::uint32_t> limbs_;  // little-endian
};

inline BigUint big_pow(const BigUint& b, unsigned e) {
    BigUint out(1);
    for (unsigned i = 0; i < e; ++i) out = out * b;
    return out;
}

// C(n, k) for small fixed k; zero when n < k.
inline BigUint big_binom(const BigUint& n, unsigned k) {
    if (n < BigUint(k)) return BigUint();
    BigUint out(1);
    for (unsigned i = 0; i < k; ++i) out = out * (n - BigUint(i));
    for (unsigned i = 2; i <= k; ++i) out = out.div_small(i);
    return out;
}

// Exact non-negative rational with small terms; the approximation ratio.
struct Rational {
    std::uint64_t num = 1;
    std::uint64_t den = 1;

    Rational() = default;
    Rational(std::uint64_t n, std::uint64_t d) : num(n), den(d) {
        require(d != 0, "rational: zero denominator");
    }

    bool operator<(const Rational& o) const { return num * o.den < o.num * den; }
    bool operator==(const Rational& o) const { return num * o.den == o.num * den; }
    bool ge_one() const { return num >= den; }
};

// ---- the bound family, exactly as defined -----------------------------------

inline BigUint cbound(const BigUint& t, const BigUint& x) {
    return big_binom(x, 3) * (t + BigUint(1)) + big_binom(x, 2) * (t * 2u + BigUint(3));
}

inline BigUint ybound(const BigUint& t, const BigUint& x) {
    BigUint inner = t * 3u + BigUint(3) + cbound(t, x + t * 3u + BigUint(3));
    return BigUint(6) * big_binom(x, 2) * inner;
}

inline BigUint lbound(const BigUint& t, const BigUint& x, const BigUint& y) {
    if (y.is_zero()) return x + y;
    return y * (x + y - BigUint(1)) * (t + BigUint(2)) + x + y;
}

inline BigUint pbound(const BigUint& t, const BigUint& x, const BigUint& y, const BigUint& k) {
    BigUint pos = lbound(t, x, y) * (k * 2u + BigUint(3)) + BigUint(3976) * k * x * y;
    BigUint neg = k * 3u + BigUint(4);
    if (pos <= neg || pos - neg < BigUint(1)) return BigUint(1);
    return pos - neg;
}

inline BigUint gbound(const BigUint& t, const BigUint& x, const BigUint& y) {
    return cbound(t, x + y) * (x * 1988u + BigUint(1)) *
               pbound(t, x, BigUint(4), x * 30u + BigUint(3)) +
           x + y;
}

// ceil(eps * t * (3t+4)); the ceiling is the conservative rounding for
// non-integral ratios.
inline BigUint modulator_cap(std::uint64_t t, const Rational& eps) {
    BigUint raw = BigUint(eps.num) * BigUint(t) * BigUint(3 * t + 4);
    std::uint32_t rem = 0;
    require(eps.den <= 0xffffffffull, "modulator_cap: denominator too large");
    BigUint q = raw.div_small(static_cast<std::uint32_t>(eps.den), &rem);
    if (rem) q = q + BigUint(1);
    return q;
}

inline BigUint bound(std::uint64_t t, const Rational& eps) {
    if (!eps.ge_one()) throw std::domain_error("bound: ratio below 1");
    BigUint x = modulator_cap(t, eps);
    BigUint g = gbound(BigUint(t), x, ybound(BigUint(t), x));
    return g < BigUint(4) ? BigUint(4) : g;
}

}  // namespace tw2k
