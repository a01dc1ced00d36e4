#include "projlab/profile.hpp"

#include <fstream>
#include <sstream>

namespace projlab {

namespace {

void require_interval(const ComplexityProfile& p, i64 a, i64 b) {
  if (a < 0 || a > b || b > p.horizon())
    throw std::domain_error("profile: invalid interval [" + std::to_string(a) +
                            "," + std::to_string(b) + "] with R=" +
                            std::to_string(p.horizon()));
}

void require_sigma(const Rational& sigma) {
  if (!(sigma > Rational(0)) || sigma > Rational(1))
    throw std::domain_error("profile: sigma must be in (0,1], got " + sigma.str());
}

}  // namespace

const char* kind_name(IntervalKind k) {
  switch (k) {
    case IntervalKind::yellow: return "yellow";
    case IntervalKind::teal: return "teal";
    case IntervalKind::both: return "both";
    case IntervalKind::neither: return "neither";
  }
  return "?";
}

std::vector<ProfileViolation> validate_profile(const ComplexityProfile& p) {
  std::vector<ProfileViolation> out;
  if (p.ambient_dim != 1 && p.ambient_dim != 2)
    out.push_back({0, "ambient_dim must be 1 or 2"});
  if (p.k.empty()) {
    out.push_back({0, "profile must contain K[0]"});
    return out;
  }
  if (p.k[0] != 0) out.push_back({0, "K[0] must be 0"});
  for (size_t r = 0; r + 1 < p.k.size(); ++r) {
    i64 step = p.k[r + 1] - p.k[r];
    if (step < 0)
      out.push_back({(i64)r + 1, "profile must be non-decreasing"});
    else if (step > p.ambient_dim)
      out.push_back({(i64)r + 1, "growth " + std::to_string(step) +
                                     " exceeds ambient_dim cap"});
  }
  for (size_t r = 0; r < p.k.size(); ++r)
    if (p.k[r] < 0) out.push_back({(i64)r, "negative complexity value"});
  return out;
}

i64 growth(const ComplexityProfile& p, i64 a, i64 b) {
  require_interval(p, a, b);
  return p.at(b) - p.at(a);
}

ComplexityProfile reduce_oracle(const ComplexityProfile& p, i64 cap) {
  if (cap < 0) throw std::domain_error("reduce_oracle: cap must be >= 0");
  ComplexityProfile q = p;
  for (auto& v : q.k) v = std::min(v, cap);
  return q;
}

Rational slack_value(const SlackSpec& s, i64 b) {
  switch (s.mode) {
    case SlackSpec::Mode::exact: return Rational(0);
    case SlackSpec::Mode::log2c: return b >= 1 ? s.c * log2_ub((u64)b) : Rational(0);
    case SlackSpec::Mode::epsb: return s.eps * Rational(b);
  }
  return Rational(0);
}

IntervalLabel classify_interval(const ComplexityProfile& p, i64 a, i64 b,
                                const Rational& sigma, const SlackSpec& slack) {
  require_interval(p, a, b);
  require_sigma(sigma);
  const Rational slk = slack_value(slack, b);
  // Compare K-differences against sigma*length +- slack exactly:
  // value*den >= num*len*den_slk ... use rationals directly, magnitudes are small.
  bool teal = true, yellow = true;
  for (i64 s = a; s <= b; ++s) {
    if (teal && Rational(p.at(b) - p.at(s)) > sigma * Rational(b - s) + slk)
      teal = false;
    if (yellow && Rational(p.at(s) - p.at(a)) < sigma * Rational(s - a) - slk)
      yellow = false;
    if (!teal && !yellow) break;
  }
  IntervalLabel lbl;
  lbl.sigma = sigma;
  lbl.slack = slack;
  if (teal && yellow) lbl.kind = IntervalKind::both;
  else if (teal) lbl.kind = IntervalKind::teal;
  else if (yellow) lbl.kind = IntervalKind::yellow;
  else lbl.kind = IntervalKind::neither;
  return lbl;
}

SplitResult split_teal_yellow(const ComplexityProfile& p, i64 a, i64 b,
                              const Rational& sigma) {
  require_interval(p, a, b);
  require_sigma(sigma);
  // f(s) = K[s] - sigma*s; compare via integers: K[s]*den - num*s.
  const i64 num = sigma.num(), den = sigma.den();
  i64 m = a;
  i128 best = (i128)p.at(a) * den - (i128)num * a;
  for (i64 s = a + 1; s <= b; ++s) {
    i128 f = (i128)p.at(s) * den - (i128)num * s;
    if (f <= best) {  // rightmost argmin
      best = f;
      m = s;
    }
  }
  SplitResult res;
  res.m = m;
  res.teal = {a, m, IntervalKind::teal};
  res.yellow = {m, b, IntervalKind::yellow};
  return res;
}

std::vector<LabeledInterval> partition(const ComplexityProfile& p, i64 a, i64 b,
                                       const Rational& sigma, i64 max_len) {
  require_interval(p, a, b);
  if (max_len < 1) throw std::domain_error("partition: max_len must be >= 1");
  std::vector<LabeledInterval> out;
  if (a == b) {
    out.push_back({a, b, IntervalKind::teal});
    return out;
  }
  for (i64 lo = a; lo < b; lo += max_len) {
    i64 hi = std::min(b, lo + max_len);
    SplitResult sp = split_teal_yellow(p, lo, hi, sigma);
    if (sp.teal.len() > 0) out.push_back(sp.teal);
    if (sp.yellow.len() > 0) out.push_back(sp.yellow);
  }
  return out;
}

std::pair<Rational, Rational> effective_dims(const ComplexityProfile& p, i64 window) {
  const i64 R = p.horizon();
  if (window < 0 || window > R)
    throw std::domain_error("effective_dims: window must be in [0,R]");
  const i64 lo = std::max<i64>(1, R - window);
  if (R < 1) throw std::domain_error("effective_dims: horizon must be >= 1");
  Rational mn(p.at(lo), lo), mx = mn;
  for (i64 r = lo + 1; r <= R; ++r) {
    Rational v(p.at(r), r);
    mn = rat_min(mn, v);
    mx = rat_max(mx, v);
  }
  return {mn, mx};
}

ComplexityProfile read_profile(std::istream& in) {
  i64 R;
  int dim;
  if (!(in >> R >> dim)) throw std::runtime_error("profile: bad header");
  if (R < 0 || R > (i64(1) << 24)) throw std::runtime_error("profile: bad horizon");
  ComplexityProfile p;
  p.ambient_dim = dim;
  p.k.resize((size_t)R + 1);
  for (auto& v : p.k)
    if (!(in >> v)) throw std::runtime_error("profile: truncated values");
  return p;
}

ComplexityProfile read_profile_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("profile: cannot open " + path);
  return read_profile(f);
}

void write_profile(std::ostream& out, const ComplexityProfile& p) {
  out << p.horizon() << " " << p.ambient_dim << "\n";
  for (size_t i = 0; i < p.k.size(); ++i)
    out << p.k[i] << (i + 1 == p.k.size() ? "\n" : " ");
}

void write_profile_file(const std::string& path, const ComplexityProfile& p) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("profile: cannot open " + path);
  write_profile(f, p);
}

ComplexityProfile profile_linear_rate(const Rational& alpha, i64 R, int ambient_dim) {
  ComplexityProfile p;
  p.ambient_dim = ambient_dim;
  p.k.resize((size_t)R + 1);
  for (i64 r = 0; r <= R; ++r)
    p.k[(size_t)r] = (alpha * Rational(r)).ceil();
  return p;
}

ComplexityProfile profile_flat_then_slope2(i64 R) {
  if (R % 2 != 0) throw std::domain_error("flat_then_slope2: R must be even");
  ComplexityProfile p;
  p.ambient_dim = 2;
  p.k.resize((size_t)R + 1, 0);
  for (i64 r = R / 2 + 1; r <= R; ++r) p.k[(size_t)r] = 2 * (r - R / 2);
  return p;
}

}  // namespace projlab
