#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lce/config.hpp"

namespace lce {

// Arbitrary-precision signed integer: sign plus little-endian 32-bit limbs.
// Every quantity in this engine is exact; magnitudes stay modest (products of
// factorials up to the partition cap), so schoolbook arithmetic suffices.
class BigInt {
 public:
  BigInt() = default;
  BigInt(long long v) {  // NOLINT: deliberately implicit, coefficients come from int literals
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    unsigned long long u =
        v < 0 ? ~static_cast<unsigned long long>(v) + 1ULL : static_cast<unsigned long long>(v);
    while (u != 0) {
      mag_.push_back(static_cast<std::uint32_t>(u & 0xffffffffULL));
      u >>= 32;
    }
  }

  static BigInt from_string(std::string_view s) {
    BigInt out;
    bool neg = false;
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      neg = s[i] == '-';
      ++i;
    }
    if (i == s.size()) throw error("empty integer literal");
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw error("bad digit in integer literal");
      mul_small_add(out.mag_, 10, static_cast<std::uint32_t>(s[i] - '0'));
    }
    out.sign_ = out.mag_.empty() ? 0 : (neg ? -1 : 1);
    return out;
  }

  bool is_zero() const { return sign_ == 0; }
  int sign() const { return sign_; }

  bool fits_int64() const {
    if (mag_.size() > 2) return false;
    unsigned long long u = to_u64();
    if (sign_ >= 0) return u <= 0x7fffffffffffffffULL;
    return u <= 0x8000000000000000ULL;
  }
  long long to_int64() const {
    if (!fits_int64()) throw error("BigInt does not fit in 64 bits");
    unsigned long long u = to_u64();
    return sign_ < 0 ? -static_cast<long long>(u) : static_cast<long long>(u);
  }

  friend BigInt operator-(const BigInt& a) {
    BigInt r = a;
    r.sign_ = -r.sign_;
    return r;
  }

  friend BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    BigInt r;
    if (a.sign_ == b.sign_) {
      r.mag_ = a.mag_;
      add_mag(r.mag_, b.mag_);
      r.sign_ = a.sign_;
      return r;
    }
    int c = cmp_mag(a.mag_, b.mag_);
    if (c == 0) return BigInt();
    const BigInt& big = c > 0 ? a : b;
    const BigInt& small = c > 0 ? b : a;
    r.mag_ = big.mag_;
    sub_mag(r.mag_, small.mag_);
    r.sign_ = big.sign_;
    return r;
  }
  friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

  friend BigInt operator*(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
    BigInt r;
    r.mag_ = mul_mag(a.mag_, b.mag_);
    r.sign_ = a.sign_ * b.sign_;
    return r;
  }

  // Truncating division, remainder takes the sign of the dividend.
  static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.sign_ == 0) throw error("division by zero");
    if (a.sign_ == 0) {
      q = BigInt();
      r = BigInt();
      return;
    }
    if (a.mag_.size() <= 2 && b.mag_.size() <= 2) {
      unsigned long long ua = a.to_u64(), ub = b.to_u64();
      q = from_u64(ua / ub, a.sign_ * b.sign_);
      r = from_u64(ua % ub, a.sign_);
      return;
    }
    std::vector<std::uint32_t> qm, rm;
    divmod_mag(a.mag_, b.mag_, qm, rm);
    q.mag_ = std::move(qm);
    q.sign_ = q.mag_.empty() ? 0 : a.sign_ * b.sign_;
    r.mag_ = std::move(rm);
    r.sign_ = r.mag_.empty() ? 0 : a.sign_;
  }

  friend BigInt operator/(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    divmod(a, b, q, r);
    return q;
  }
  friend BigInt operator%(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    divmod(a, b, q, r);
    return r;
  }

  BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
  BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
  BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

  friend bool operator==(const BigInt& a, const BigInt& b) {
    return a.sign_ == b.sign_ && a.mag_ == b.mag_;
  }
  friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
  friend bool operator<(const BigInt& a, const BigInt& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
    int c = cmp_mag(a.mag_, b.mag_);
    return a.sign_ >= 0 ? c < 0 : c > 0;
  }
  friend bool operator<=(const BigInt& a, const BigInt& b) { return a < b || a == b; }
  friend bool operator>(const BigInt& a, const BigInt& b) { return b < a; }
  friend bool operator>=(const BigInt& a, const BigInt& b) { return b <= a; }

  static BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt x = a.abs(), y = b.abs();
    if (x.mag_.size() <= 2 && y.mag_.size() <= 2) {
      unsigned long long ua = x.to_u64(), ub = y.to_u64();
      while (ub != 0) {
        unsigned long long t = ua % ub;
        ua = ub;
        ub = t;
      }
      return from_u64(ua, 1);
    }
    while (!y.is_zero()) {
      BigInt q, r;
      divmod(x, y, q, r);
      x = y;
      y = r.abs();
    }
    return x;
  }

  BigInt abs() const {
    BigInt r = *this;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
  }

  std::string to_string() const {
    if (sign_ == 0) return "0";
    std::vector<std::uint32_t> m = mag_;
    std::string digits;
    while (!m.empty()) {
      std::uint32_t rem = div_small_inplace(m, 1000000000u);
      for (int k = 0; k < 9; ++k) {
        digits.push_back(static_cast<char>('0' + rem % 10));
        rem /= 10;
      }
    }
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    if (sign_ < 0) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
  }

 private:
  int sign_ = 0;
  std::vector<std::uint32_t> mag_;  // little-endian, trimmed, empty iff zero

  unsigned long long to_u64() const {
    unsigned long long u = mag_.empty() ? 0 : mag_[0];
    if (mag_.size() > 1) u |= static_cast<unsigned long long>(mag_[1]) << 32;
    return u;
  }
  static BigInt from_u64(unsigned long long u, int sign) {
    BigInt r;
    while (u != 0) {
      r.mag_.push_back(static_cast<std::uint32_t>(u & 0xffffffffULL));
      u >>= 32;
    }
    r.sign_ = r.mag_.empty() ? 0 : sign;
    return r;
  }

  static void trim(std::vector<std::uint32_t>& m) {
    while (!m.empty() && m.back() == 0) m.pop_back();
  }
  static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
  }
  static void add_mag(std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    unsigned long long carry = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      unsigned long long cur = carry + a[i] + (i < b.size() ? b[i] : 0);
      a[i] = static_cast<std::uint32_t>(cur & 0xffffffffULL);
      carry = cur >> 32;
    }
    if (carry != 0) a.push_back(static_cast<std::uint32_t>(carry));
  }
  // requires a >= b
  static void sub_mag(std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    long long borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      long long cur = static_cast<long long>(a[i]) - borrow - (i < b.size() ? b[i] : 0);
      if (cur < 0) {
        cur += 1LL << 32;
        borrow = 1;
      } else {
        borrow = 0;
      }
      a[i] = static_cast<std::uint32_t>(cur);
    }
    trim(a);
  }
  static std::vector<std::uint32_t> mul_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> r(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      unsigned long long carry = 0;
      for (std::size_t j = 0; j < b.size(); ++j) {
        unsigned long long cur = r[i + j] + carry +
                                 static_cast<unsigned long long>(a[i]) * b[j];
        r[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffULL);
        carry = cur >> 32;
      }
      std::size_t k = i + b.size();
      while (carry != 0) {
        unsigned long long cur = r[k] + carry;
        r[k] = static_cast<std::uint32_t>(cur & 0xffffffffULL);
        carry = cur >> 32;
        ++k;
      }
    }
    trim(r);
    return r;
  }
  static std::size_t bit_length(const std::vector<std::uint32_t>& m) {
    if (m.empty()) return 0;
    std::uint32_t top = m.back();
    std::size_t bits = (m.size() - 1) * 32;
    while (top != 0) {
      ++bits;
      top >>= 1;
    }
    return bits;
  }
  static bool get_bit(const std::vector<std::uint32_t>& m, std::size_t i) {
    std::size_t limb = i / 32;
    if (limb >= m.size()) return false;
    return (m[limb] >> (i % 32)) & 1u;
  }
  static void set_bit(std::vector<std::uint32_t>& m, std::size_t i) {
    std::size_t limb = i / 32;
    if (limb >= m.size()) m.resize(limb + 1, 0);
    m[limb] |= 1u << (i % 32);
  }
  static void shl1(std::vector<std::uint32_t>& m) {
    std::uint32_t carry = 0;
    for (auto& limb : m) {
      std::uint32_t next = limb >> 31;
      limb = (limb << 1) | carry;
      carry = next;
    }
    if (carry != 0) m.push_back(carry);
  }
  // Plain restoring binary division; divisor magnitudes here are tiny.
  static void divmod_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                         std::vector<std::uint32_t>& q, std::vector<std::uint32_t>& r) {
    q.assign(a.size(), 0);
    r.clear();
    for (std::size_t i = bit_length(a); i-- > 0;) {
      shl1(r);
      if (get_bit(a, i)) {
        if (r.empty()) r.push_back(0);
        r[0] |= 1u;
      }
      if (cmp_mag(r, b) >= 0) {
        sub_mag(r, b);
        set_bit(q, i);
      }
    }
    trim(q);
    trim(r);
  }
  static std::uint32_t div_small_inplace(std::vector<std::uint32_t>& m, std::uint32_t d) {
    unsigned long long rem = 0;
    for (std::size_t i = m.size(); i-- > 0;) {
      unsigned long long cur = (rem << 32) | m[i];
      m[i] = static_cast<std::uint32_t>(cur / d);
      rem = cur % d;
    }
    trim(m);
    return static_cast<std::uint32_t>(rem);
  }
  static void mul_small_add(std::vector<std::uint32_t>& m, std::uint32_t mul, std::uint32_t add) {
    unsigned long long carry = add;
    for (auto& limb : m) {
      unsigned long long cur = static_cast<unsigned long long>(limb) * mul + carry;
      limb = static_cast<std::uint32_t>(cur & 0xffffffffULL);
      carry = cur >> 32;
    }
    while (carry != 0) {
      m.push_back(static_cast<std::uint32_t>(carry & 0xffffffffULL));
      carry >>= 32;
    }
  }
};

inline BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= BigInt(static_cast<long long>(i));
  return r;
}

inline BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= BigInt(static_cast<long long>(n - k + i));
    r = r / BigInt(static_cast<long long>(i));
  }
  return r;
}

// Exact rational number, always normalized: positive denominator, gcd 1.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT: deliberately implicit
  Rational(long long n, long long d) : Rational(BigInt(n), BigInt(d)) {}
  Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
  explicit Rational(BigInt n) : num_(std::move(n)), den_(1) {}

  // Accepts "p" or "p/q".
  static Rational from_string(std::string_view s) {
    std::size_t slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(BigInt::from_string(s), BigInt(1));
    return Rational(BigInt::from_string(s.substr(0, slash)),
                    BigInt::from_string(s.substr(slash + 1)));
  }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_integer() const { return den_ == BigInt(1); }
  int sign() const { return num_.sign(); }

  friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }
  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw error("rational division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }

  // Canonical text: "p" for integers, "p/q" with q > 0 otherwise.
  std::string str() const {
    if (is_integer()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
  }

 private:
  BigInt num_, den_;

  void normalize() {
    if (den_.is_zero()) throw error("rational with zero denominator");
    if (num_.is_zero()) {
      den_ = 1;
      return;
    }
    if (den_.sign() < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (g != BigInt(1)) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
  }
};

inline Rational rational_factorial(unsigned n) { return Rational(factorial(n)); }

}  // namespace lce
