// Symbolic slack bookkeeping: a certificate error is a non-negative linear
// combination of 1, log2(b), (log2(b))^2, sqrt(b), eps*b and b. Certificates
// carry the coefficients; numbers only appear at evaluation time.
#pragma once

#include "projlab/rational.hpp"

namespace projlab {

struct ErrorTerm {
  Rational c_const{0};
  Rational c_log{0};    // x log2(b)
  Rational c_log2{0};   // x (log2(b))^2
  Rational c_sqrt{0};   // x sqrt(b)
  Rational c_epsb{0};   // x eps * b
  Rational c_lin{0};    // x b

  bool operator==(const ErrorTerm&) const = default;
};

ErrorTerm et_add(const ErrorTerm& a, const ErrorTerm& b);

// k >= 0; throws std::domain_error otherwise.
ErrorTerm et_scale(const ErrorTerm& a, const Rational& k);

// Evaluates at integer precision b >= 2 with the given eps >= 0.
// log2(b) and sqrt(b) enter as certified upper bounds on the 2^-16 grid and
// each addend is rounded up to that grid, so the result never understates.
// extra_log multiplies the c_log2 addend by one more log2(b); it is how the
// cubed-log slack family is represented.
Rational et_eval(const ErrorTerm& a, u64 b, const Rational& eps,
                 bool extra_log = false);

inline bool et_is_zero(const ErrorTerm& a) {
  return a.c_const.is_zero() && a.c_log.is_zero() && a.c_log2.is_zero() &&
         a.c_sqrt.is_zero() && a.c_epsb.is_zero() && a.c_lin.is_zero();
}

}  // namespace projlab
