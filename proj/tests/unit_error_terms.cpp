#include "doctest.h"

#include <random>

#include "projlab/error_term.hpp"

using namespace projlab;

TEST_CASE("rational basics") {
  CHECK(Rational(6, 4) == Rational(3, 2));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(-4, 8).str() == "-1/2");
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(7, 2).ceil() == 4);
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(-7, 2).ceil() == -3);
  CHECK(parse_rational("0.4") == Rational(2, 5));
  CHECK(parse_rational("3/7") == Rational(3, 7));
  CHECK(parse_rational("-2") == Rational(-2));
  CHECK(parse_rational("0.01") == Rational(1, 100));
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("log2 and sqrt brackets") {
  CHECK(log2_ub(16) == Rational(4));
  CHECK(log2_lb(16) == Rational(4));
  CHECK(log2_ub(1) == Rational(0));
  CHECK(sqrt_ub(4) == Rational(2));
  CHECK(sqrt_ub(u64(1) << 20) == Rational(1 << 10));
  CHECK(sqrt_ub(Rational(1, 100)) == Rational(1, 10));
  CHECK(sqrt_ub(Rational(1, 10000)) == Rational(1, 100));

  // bracketing and monotonicity against the float value
  Rational prev_ub(0);
  for (u64 b = 2; b <= 3000; ++b) {
    double t = std::log2((double)b);
    Rational ub = log2_ub(b), lb = log2_lb(b);
    CHECK(ub.to_double() >= t - 1e-12);
    CHECK(lb.to_double() <= t + 1e-12);
    CHECK(ub.to_double() - t < 1e-3);
    CHECK(t - lb.to_double() < 1e-3);
    CHECK(ub >= prev_ub);
    prev_ub = ub;
    double s = std::sqrt((double)b);
    CHECK(sqrt_ub(b).to_double() >= s - 1e-9);
    CHECK(sqrt_ub(b).to_double() - s < 1e-3);
  }
}

TEST_CASE("et_add is component-wise") {
  ErrorTerm a, b;
  a.c_log = Rational(2);
  b.c_log = Rational(3);
  CHECK(et_add(a, b).c_log == Rational(5));

  ErrorTerm s;
  s.c_sqrt = Rational(1);
  CHECK(et_add(s, ErrorTerm{}) == s);

  ErrorTerm u, v;
  u.c_log2 = Rational(1);
  u.c_epsb = Rational(4);
  v.c_log2 = Rational(1);
  ErrorTerm w = et_add(u, v);
  CHECK(w.c_log2 == Rational(2));
  CHECK(w.c_epsb == Rational(4));
}

TEST_CASE("et_scale") {
  ErrorTerm a;
  a.c_log = Rational(1);
  CHECK(et_scale(a, Rational(3)).c_log == Rational(3));

  ErrorTerm b;
  b.c_epsb = Rational(4);
  b.c_sqrt = Rational(2);
  CHECK(et_is_zero(et_scale(b, Rational(0))));
  CHECK(et_scale(b, Rational(1, 2)).c_epsb == Rational(2));
  CHECK_THROWS_AS(et_scale(b, Rational(-1)), std::domain_error);
}

TEST_CASE("et_eval on pinned values") {
  ErrorTerm a;
  a.c_log = Rational(1);
  CHECK(et_eval(a, 16, Rational(0)) == Rational(4));

  ErrorTerm b;
  b.c_epsb = Rational(4);
  CHECK(et_eval(b, 100, Rational(1, 100)) == Rational(4));

  ErrorTerm c;
  c.c_log2 = Rational(1);
  c.c_const = Rational(3);
  CHECK(et_eval(c, 16, Rational(0)) == Rational(19));

  CHECK_THROWS_AS(et_eval(a, 1, Rational(0)), std::domain_error);

  // extra_log multiplies the squared-log addend once more
  ErrorTerm d;
  d.c_log2 = Rational(1);
  CHECK(et_eval(d, 16, Rational(0), true) == Rational(64));
}

TEST_CASE("et_eval monotone in b and eps; additive within a unit") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    ErrorTerm a;
    a.c_const = Rational((i64)(rng() % 5));
    a.c_log = Rational((i64)(rng() % 5));
    a.c_log2 = Rational((i64)(rng() % 3));
    a.c_sqrt = Rational((i64)(rng() % 3));
    a.c_epsb = Rational((i64)(rng() % 5));
    a.c_lin = Rational((i64)(rng() % 2));
    u64 b1 = 2 + rng() % 1000;
    u64 b2 = b1 + rng() % 1000;
    Rational e1((i64)(rng() % 10), 100);
    Rational e2 = e1 + Rational((i64)(rng() % 10), 100);
    CHECK(et_eval(a, b1, e1) <= et_eval(a, b2, e1));
    CHECK(et_eval(a, b1, e1) <= et_eval(a, b1, e2));

    ErrorTerm b;
    b.c_log = Rational((i64)(rng() % 4));
    b.c_sqrt = Rational((i64)(rng() % 4));
    Rational lhs = et_eval(et_add(a, b), b1, e1);
    Rational rhs = et_eval(a, b1, e1) + et_eval(b, b1, e1);
    Rational gap = lhs > rhs ? lhs - rhs : rhs - lhs;
    CHECK(gap <= Rational(1));
  }
}
