// Discrete model of complexity-vs-precision functions. A profile is an
// integer sequence K[0..R] with K[0] = 0, non-decreasing, and increments
// capped by the ambient dimension. Interval growth K[b]-K[a] plays the role
// of conditional self-complexity, with exact telescoping; all asymptotic
// slack lives in the bound engine's error terms, never here.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "projlab/rational.hpp"

namespace projlab {

struct ComplexityProfile {
  std::vector<i64> k;   // k[0..R]
  int ambient_dim{1};   // 1 or 2

  i64 horizon() const { return (i64)k.size() - 1; }
  i64 at(i64 r) const { return k.at((size_t)r); }
};

struct ProfileViolation {
  i64 index;
  std::string what;
};

// Reports every invariant breach; empty result means valid. Never throws.
std::vector<ProfileViolation> validate_profile(const ComplexityProfile& p);

inline bool profile_is_valid(const ComplexityProfile& p) {
  return validate_profile(p).empty();
}

// K[b] - K[a]; requires 0 <= a <= b <= R.
i64 growth(const ComplexityProfile& p, i64 a, i64 b);

// Pointwise min(cap, K[t]); the oracle-reduction transform. cap >= 0.
ComplexityProfile reduce_oracle(const ComplexityProfile& p, i64 cap);

enum class IntervalKind { yellow, teal, both, neither };

const char* kind_name(IntervalKind k);

struct SlackSpec {
  enum class Mode { exact, log2c, epsb } mode{Mode::exact};
  Rational c{0};    // log2c: slack = c * log2(b)  (certified upper bound)
  Rational eps{0};  // epsb:  slack = eps * b

  static SlackSpec exact() { return {}; }
  static SlackSpec log2c(Rational c) { return {Mode::log2c, c, Rational(0)}; }
  static SlackSpec epsb(Rational eps) { return {Mode::epsb, Rational(0), eps}; }
};

// The slack value at right endpoint b, as an exact rational.
Rational slack_value(const SlackSpec& s, i64 b);

struct IntervalLabel {
  IntervalKind kind{IntervalKind::neither};
  Rational sigma;
  SlackSpec slack;
};

// teal  iff K[b]-K[s] <= sigma*(b-s) + slack for every s in [a,b];
// yellow iff K[s]-K[a] >= sigma*(s-a) - slack for every s in [a,b].
// sigma must lie in (0,1]; requires 0 <= a <= b <= R.
IntervalLabel classify_interval(const ComplexityProfile& p, i64 a, i64 b,
                                const Rational& sigma, const SlackSpec& slack);

struct LabeledInterval {
  i64 a{0};
  i64 b{0};
  IntervalKind kind{IntervalKind::teal};
  i64 len() const { return b - a; }
};

struct SplitResult {
  i64 m{0};               // rightmost argmin of K[s] - sigma*s on [a,b]
  LabeledInterval teal;   // [a,m], (sigma, exact)-teal
  LabeledInterval yellow; // [m,b], (sigma, exact)-yellow
};

// Splits [a,b] at the rightmost argmin of f(s) = K[s] - sigma*s. The argmin
// choice makes both pieces pass classify_interval with exact slack; the
// rightmost tie-break maximizes the teal (zero-cost) piece.
SplitResult split_teal_yellow(const ComplexityProfile& p, i64 a, i64 b,
                              const Rational& sigma);

// Chops [a,b] into blocks of length <= max_len and argmin-splits each block.
// Zero-length pieces are dropped, except that a degenerate input produces a
// single degenerate teal interval. Output: consecutive cover of [a,b], every
// piece exact-slack teal or yellow, count <= 2*ceil((b-a)/max_len).
std::vector<LabeledInterval> partition(const ComplexityProfile& p, i64 a, i64 b,
                                       const Rational& sigma, i64 max_len);

// Finite-horizon dimension surrogates: (min, max) of K[r]/r over the tail
// window r in [max(1, R-window), R].
std::pair<Rational, Rational> effective_dims(const ComplexityProfile& p,
                                             i64 window);

// Text format: header "R ambient_dim", then R+1 whitespace-separated ints.
ComplexityProfile read_profile(std::istream& in);
ComplexityProfile read_profile_file(const std::string& path);
void write_profile(std::ostream& out, const ComplexityProfile& p);
void write_profile_file(const std::string& path, const ComplexityProfile& p);

// Common synthetic families.
ComplexityProfile profile_linear_rate(const Rational& alpha, i64 R, int ambient_dim);
ComplexityProfile profile_flat_then_slope2(i64 R);  // flat on [0,R/2], slope 2 after

}  // namespace projlab
