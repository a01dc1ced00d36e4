// Exact rational arithmetic on 64-bit numerator/denominator.
// All inequality decisions in this project go through this type or through
// raw __int128 cross-multiplication; floats never decide anything.
#pragma once

#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace projlab {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

class Rational {
public:
  constexpr Rational() = default;
  Rational(i64 n) : num_(n), den_(1) {}
  Rational(i64 n, i64 d) : num_(n), den_(d) { normalize(); }

  i64 num() const { return num_; }
  i64 den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  bool is_integer() const { return den_ == 1; }

  static Rational from_i128(i128 n, i128 d) {
    if (d == 0) throw std::domain_error("rational: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    i128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    if (!fits(n) || !fits(d))
      throw std::overflow_error("rational: value out of 64-bit range");
    Rational r;
    r.num_ = static_cast<i64>(n);
    r.den_ = static_cast<i64>(d);
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from_i128((i128)a.num_ * b.den_ + (i128)b.num_ * a.den_,
                     (i128)a.den_ * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from_i128((i128)a.num_ * b.den_ - (i128)b.num_ * a.den_,
                     (i128)a.den_ * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_i128((i128)a.num_ * b.num_, (i128)a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational: division by zero");
    return from_i128((i128)a.num_ * b.den_, (i128)a.den_ * b.num_);
  }
  Rational operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
  }
  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return (i128)a.num_ * b.den_ < (i128)b.num_ * a.den_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return (i128)a.num_ * b.den_ <= (i128)b.num_ * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

  i64 floor() const {
    i64 q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }
  i64 ceil() const {
    i64 q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return q;
  }

  double to_double() const { return (double)num_ / (double)den_; }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

private:
  static bool fits(i128 v) {
    return v >= (i128)INT64_MIN && v <= (i128)INT64_MAX;
  }
  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) { i128 t = a % b; a = b; b = t; }
    return a;
  }
  void normalize() {
    if (den_ == 0) throw std::domain_error("rational: zero denominator");
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    i64 g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
  }

  i64 num_{0};
  i64 den_{1};
};

inline Rational rat_min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational rat_max(const Rational& a, const Rational& b) { return a < b ? b : a; }

// Parses "p/q", plain integers, and plain decimals ("0.4" -> 2/5).
Rational parse_rational(const std::string& text);

// Certified dyadic brackets at 2^-16 granularity. The *_ub forms never
// understate and the *_lb forms never overstate; both are exact whenever the
// true value lands on the grid (powers of two, perfect squares).
Rational log2_ub(u64 b);   // >= log2(b), b >= 1
Rational log2_lb(u64 b);   // <= log2(b), b >= 1
Rational sqrt_ub(u64 b);   // >= sqrt(b)
Rational sqrt_ub(const Rational& x);  // x >= 0

u64 fnv1a64(const void* data, size_t n, u64 seed = 1469598103934665603ull);

}  // namespace projlab
