#include "projlab/error_term.hpp"

namespace projlab {

namespace {

void require_nonneg(const Rational& c, const char* name) {
  if (c.is_negative())
    throw std::domain_error(std::string("error term: negative coefficient ") + name);
}

// Round up to the 2^-16 grid; keeps denominators bounded across sums.
Rational grid_up(const Rational& x) {
  constexpr i64 kGrid = i64(1) << 16;
  i128 n = (i128)x.num() * kGrid;
  i128 q = n / x.den();
  if (n % x.den() != 0 && n > 0) ++q;
  return Rational::from_i128(q, kGrid);
}

}  // namespace

ErrorTerm et_add(const ErrorTerm& a, const ErrorTerm& b) {
  return ErrorTerm{a.c_const + b.c_const, a.c_log + b.c_log,
                   a.c_log2 + b.c_log2, a.c_sqrt + b.c_sqrt,
                   a.c_epsb + b.c_epsb, a.c_lin + b.c_lin};
}

ErrorTerm et_scale(const ErrorTerm& a, const Rational& k) {
  if (k.is_negative()) throw std::domain_error("error term: negative scale");
  return ErrorTerm{a.c_const * k, a.c_log * k, a.c_log2 * k,
                   a.c_sqrt * k, a.c_epsb * k, a.c_lin * k};
}

Rational et_eval(const ErrorTerm& a, u64 b, const Rational& eps, bool extra_log) {
  if (b < 2) throw std::domain_error("error term: precision b must be >= 2");
  if (eps.is_negative()) throw std::domain_error("error term: negative eps");
  require_nonneg(a.c_const, "c_const");
  require_nonneg(a.c_log, "c_log");
  require_nonneg(a.c_log2, "c_log2");
  require_nonneg(a.c_sqrt, "c_sqrt");
  require_nonneg(a.c_epsb, "c_epsb");
  require_nonneg(a.c_lin, "c_lin");

  const Rational lg = log2_ub(b);
  const Rational bq((i64)b);
  Rational total = grid_up(a.c_const);
  total += grid_up(a.c_log * lg);
  Rational sq = a.c_log2 * lg * lg;
  if (extra_log) sq = sq * lg;
  total += grid_up(sq);
  total += grid_up(a.c_sqrt * sqrt_ub(b));
  total += grid_up(a.c_epsb * eps * bq);
  total += grid_up(a.c_lin * bq);
  return total;
}

}  // namespace projlab
