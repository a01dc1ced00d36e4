#include "projlab/rational.hpp"

#include <cctype>

namespace projlab {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("rational: empty string");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    i64 n = std::stoll(text.substr(0, slash));
    i64 d = std::stoll(text.substr(slash + 1));
    return Rational(n, d);
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(std::stoll(text));
  std::string head = text.substr(0, dot);
  std::string tail = text.substr(dot + 1);
  if (tail.size() > 15) throw std::invalid_argument("rational: too many decimal digits: " + text);
  for (char c : tail)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("rational: bad decimal: " + text);
  bool neg = !head.empty() && head[0] == '-';
  i64 whole = (head.empty() || head == "-" || head == "+") ? 0 : std::stoll(head);
  if (neg && whole < 0) whole = -whole;
  i64 den = 1;
  for (size_t i = 0; i < tail.size(); ++i) den *= 10;
  i64 frac = tail.empty() ? 0 : std::stoll(tail);
  i128 num = (i128)whole * den + frac;
  if (neg) num = -num;
  return Rational::from_i128(num, den);
}

namespace {

constexpr int kFracBits = 16;

int floor_log2_u64(u64 b) { return 63 - std::countl_zero(b); }

u64 isqrt_u128(u128 v) {
  if (v == 0) return 0;
  u64 lo = 0, hi = UINT64_MAX;
  // largest s with s*s <= v; midpoint in 128 bits to avoid wraparound
  while (lo < hi) {
    u64 mid = (u64)(((u128)lo + hi + 1) / 2);
    if ((u128)mid * mid <= v)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

}  // namespace

Rational log2_ub(u64 b) {
  if (b == 0) throw std::domain_error("log2: b must be >= 1");
  int e = floor_log2_u64(b);
  if ((b & (b - 1)) == 0) return Rational(e);
  // Fixed-point square-and-compare with every rounding upward, then one
  // extra ulp: the result is certified >= log2(b).
  u128 x = ((u128)b << 32);
  x = (x + (((u128)1 << e) - 1)) >> e;  // ceil(b * 2^32 / 2^e), in [2^32, 2^33)
  u64 frac = 0;
  for (int i = 1; i <= kFracBits; ++i) {
    x = (x * x + (((u128)1 << 32) - 1)) >> 32;  // ceil(x^2 / 2^32)
    if (x >= ((u128)1 << 33)) {
      frac |= u64(1) << (kFracBits - i);
      x = (x + 1) >> 1;
    }
  }
  return Rational((i64)(((u64)e << kFracBits) + frac + 1), i64(1) << kFracBits);
}

Rational log2_lb(u64 b) {
  if (b == 0) throw std::domain_error("log2: b must be >= 1");
  int e = floor_log2_u64(b);
  if ((b & (b - 1)) == 0) return Rational(e);
  u128 x = ((u128)b << 32) >> e;  // floor: lower bound of b/2^e scaled
  u64 frac = 0;
  for (int i = 1; i <= kFracBits; ++i) {
    x = (x * x) >> 32;  // floor
    if (x >= ((u128)1 << 33)) {
      frac |= u64(1) << (kFracBits - i);
      x >>= 1;
    }
  }
  i64 units = (i64)(((u64)e << kFracBits) + frac);
  if (units > 0) units -= 1;  // one ulp of safety margin
  return Rational(units, i64(1) << kFracBits);
}

Rational sqrt_ub(u64 b) {
  u64 s = isqrt_u128((u128)b << 32);
  if ((u128)s * s < ((u128)b << 32)) ++s;
  return Rational((i64)s, i64(1) << kFracBits);
}

Rational sqrt_ub(const Rational& x) {
  if (x.is_negative()) throw std::domain_error("sqrt: negative argument");
  if (x.is_zero()) return Rational(0);
  // sqrt(n/d) = sqrt(n*d)/d
  u128 nd = (u128)x.num() * (u128)x.den();
  if (nd >= ((u128)1 << 96)) throw std::overflow_error("sqrt: argument too large");
  u64 s = isqrt_u128(nd << 32);
  if ((u128)s * s < (nd << 32)) ++s;
  return Rational::from_i128((i128)s, (i128)x.den() << kFracBits);
}

u64 fnv1a64(const void* data, size_t n, u64 seed) {
  const auto* p = static_cast<const unsigned char*>(data);
  u64 h = seed;
  for (size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace projlab
