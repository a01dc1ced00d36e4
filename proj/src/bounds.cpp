#include "projlab/bounds.hpp"

#include <algorithm>
#include <bit>

#include "json.hpp"

namespace projlab {

namespace {

void require_valid(const ComplexityProfile& p, const char* who) {
  auto v = validate_profile(p);
  if (!v.empty())
    throw std::domain_error(std::string(who) + ": invalid profile at index " +
                            std::to_string(v.front().index) + ": " +
                            v.front().what);
}

i64 floor_mul(const Rational& q, i64 len) {
  return (q * Rational(len)).floor();
}

}  // namespace

i64 ceil_log2_i64(i64 R) {
  if (R <= 1) return 0;
  return (i64)std::bit_width((u64)(R - 1));
}

Rational bound_thm31(const Rational& dim_x, const Rational& s,
                     const Rational& eps, i64 r, const BoundConfig& cfg) {
  if (!(s > Rational(0)) || s > Rational(1))
    throw std::domain_error("thm31: s must be in (0,1]");
  if (eps.is_negative()) throw std::domain_error("thm31: eps must be >= 0");
  if (r < 2) throw std::domain_error("thm31: r must be >= 2");
  Rational rr((i64)r);
  Rational val = rat_min(dim_x, s) * rr - Rational(10) * sqrt_ub(eps) * rr -
                 cfg.thm31_log_const * log2_ub((u64)r);
  return rat_max(val, Rational(0));
}

Rational bound_thm32(i64 K, i64 r, i64 t, i64 C, const Rational& eps) {
  if (C < 1) throw std::domain_error("thm32: C must be >= 1");
  if (t > r) throw std::domain_error("thm32: requires t <= r");
  if ((i128)C * t < r)
    throw std::domain_error("thm32: requires t >= r/C (statement inapplicable)");
  if (eps.is_negative()) throw std::domain_error("thm32: eps must be >= 0");
  if (K < 0) throw std::domain_error("thm32: K must be >= 0");
  Rational best = rat_max(Rational(K - r), Rational(K - t, 2));
  best = rat_max(best, Rational(0));
  return best + Rational(10) * Rational(C) * eps * Rational(r);
}

const char* variant_name(BoundVariant v) {
  switch (v) {
    case BoundVariant::log2v: return "log2";
    case BoundVariant::sqrtv: return "sqrt";
    case BoundVariant::epsv: return "eps";
  }
  return "?";
}

SlackSpec variant_class_slack(BoundVariant v, const BoundConfig& cfg,
                              const Rational& eps) {
  switch (v) {
    case BoundVariant::log2v:
    case BoundVariant::sqrtv:
      return SlackSpec::log2c(cfg.lemma_const);
    case BoundVariant::epsv:
      return SlackSpec::epsb(eps);
  }
  return SlackSpec::exact();
}

namespace {

ErrorTerm variant_err(BoundVariant v, const BoundConfig& cfg) {
  ErrorTerm e;
  switch (v) {
    case BoundVariant::log2v: e.c_log2 = cfg.lemma_const; break;
    case BoundVariant::sqrtv: e.c_sqrt = cfg.lemma_const; break;
    case BoundVariant::epsv: e.c_epsb = Rational(4); break;
  }
  return e;
}

IntervalBound interval_bound_impl(const ComplexityProfile& p, i64 a, i64 b,
                                  const Rational& sigma, BoundVariant v,
                                  const Rational& eps, const BoundConfig& cfg,
                                  bool want_yellow) {
  if (b < cfg.b_min)
    throw std::domain_error("interval bound: precision b below configured minimum");
  IntervalLabel lbl = classify_interval(p, a, b, sigma, variant_class_slack(v, cfg, eps));
  const bool ok = want_yellow
                      ? (lbl.kind == IntervalKind::yellow || lbl.kind == IntervalKind::both)
                      : (lbl.kind == IntervalKind::teal || lbl.kind == IntervalKind::both);
  if (!ok)
    throw std::domain_error(std::string("interval bound: [") + std::to_string(a) +
                            "," + std::to_string(b) + "] is not " +
                            (want_yellow ? "yellow" : "teal") +
                            " under the matching slack");
  IntervalBound out;
  out.err = variant_err(v, cfg);
  if (want_yellow)
    out.value = growth(p, a, b) - floor_mul(sigma, b - a);  // = ceil(g - sigma*len)
  return out;
}

}  // namespace

IntervalBound yellow_interval_bound(const ComplexityProfile& p, i64 a, i64 b,
                                    const Rational& sigma, BoundVariant v,
                                    const Rational& eps, const BoundConfig& cfg) {
  return interval_bound_impl(p, a, b, sigma, v, eps, cfg, true);
}

IntervalBound teal_interval_bound(const ComplexityProfile& p, i64 a, i64 b,
                                  const Rational& sigma, BoundVariant v,
                                  const Rational& eps, const BoundConfig& cfg) {
  return interval_bound_impl(p, a, b, sigma, v, eps, cfg, false);
}

Rational hyp_slack_value(const HypSlack& h, i64 b) {
  switch (h.mode) {
    case HypSlack::Mode::exact: return Rational(0);
    case HypSlack::Mode::log2c: return b >= 1 ? h.c * log2_ub((u64)b) : Rational(0);
    case HypSlack::Mode::sqrtc: return b >= 0 ? h.c * sqrt_ub((u64)b) : Rational(0);
    case HypSlack::Mode::epsb: return h.eps * Rational(b);
  }
  return Rational(0);
}

HypothesisResult direction_hypothesis(const ComplexityProfile& p_e, i64 a,
                                      i64 b, const Rational& sigma,
                                      const HypSlack& slack) {
  if (a < 0 || a > b) throw std::domain_error("hypothesis: invalid interval");
  if (b - a > p_e.horizon())
    throw std::domain_error("hypothesis: direction profile horizon too short");
  const Rational slk = hyp_slack_value(slack, b);
  for (i64 s = 0; s <= b - a; ++s) {
    if (Rational(p_e.at(s)) < sigma * Rational(s) - slk)
      return {false, s};
  }
  return {true, -1};
}

ComplexityProfile ideal_direction_profile(i64 R) {
  ComplexityProfile p;
  p.ambient_dim = 1;
  p.k.resize((size_t)R + 1);
  for (i64 r = 0; r <= R; ++r) p.k[(size_t)r] = r;
  return p;
}

namespace {

HypSlack hyp_for_variant(BoundVariant v, const BoundConfig& cfg) {
  switch (v) {
    case BoundVariant::sqrtv:
      return HypSlack{HypSlack::Mode::sqrtc, cfg.hyp_const, Rational(0)};
    case BoundVariant::log2v:
    case BoundVariant::epsv:
      return HypSlack{HypSlack::Mode::log2c, cfg.hyp_const, Rational(0)};
  }
  return HypSlack{};
}

u64 largest_ladder_le(const ScaleSequence& seq, i64 R) {
  u64 best = 0;
  for (u64 v : seq.values)
    if ((i64)v <= R) best = v;
  if (best == 0)
    throw std::domain_error("certificate: no ladder value at or below the horizon");
  return best;
}

// Shared ledger walk: values and errors over a labeled cover of [a0, R].
void apply_ledger(BoundCertificate& cert, const ComplexityProfile& p_x,
                  const ComplexityProfile& p_e,
                  const std::vector<LabeledInterval>& parts, BoundVariant v,
                  const BoundConfig& cfg) {
  const HypSlack hyp = hyp_for_variant(v, cfg);
  for (const auto& part : parts) {
    auto h = direction_hypothesis(p_e, part.a, part.b, cert.sigma, hyp);
    if (!h.pass) {
      cert.applicable = false;
      cert.failing_a = part.a;
      cert.failing_b = part.b;
      cert.failing_s = h.failing_s;
      return;
    }
    LedgerEntry e;
    e.a = part.a;
    e.b = part.b;
    e.label = part.kind;
    e.lemma = v;
    e.err = variant_err(v, cfg);
    if (part.kind == IntervalKind::yellow) {
      e.value = growth(p_x, part.a, part.b) - floor_mul(cert.sigma, part.len());
      cert.yellow_total_len += part.len();
      cert.yellow_growth_sum += growth(p_x, part.a, part.b);
    }
    cert.total_value += e.value;
    cert.total_err = et_add(cert.total_err, e.err);
    cert.ledger.push_back(e);
  }
}

void finish_certificate(BoundCertificate& cert, const ComplexityProfile& p_x,
                        i64 head_dim, const Rational& tele_const) {
  const i64 R = cert.horizon;
  // head loss K[a0] <= dim*ceil(log2 R) <= dim*(log2 R + 1), and the
  // telescoping of M interval identities costs O(M log R)
  ErrorTerm head;
  head.c_const = Rational(head_dim);
  head.c_log = Rational(head_dim) + tele_const * Rational((i64)cert.ledger.size());
  cert.total_err = et_add(cert.total_err, head);

  cert.raw_bound = p_x.at(R) - cert.total_value;
  cert.bound = std::clamp<i64>(cert.raw_bound, 0, R);
  Rational rate = (Rational(cert.bound) - cert.error_value()) / Rational(R);
  cert.certified_rate = rat_min(rat_max(rate, Rational(0)), Rational(1));
}

}  // namespace

Rational BoundCertificate::error_value() const {
  return et_eval(total_err, (u64)horizon, eps, extra_log);
}

BoundCertificate chain_certificate(const ComplexityProfile& p_x,
                                   const ComplexityProfile& p_e,
                                   const ScaleSequence& seq,
                                   const Rational& sigma, BoundVariant v,
                                   const Rational& eps, const BoundConfig& cfg) {
  require_valid(p_x, "chain");
  require_valid(p_e, "chain direction");
  const i64 R = p_x.horizon();
  if (R < cfg.b_min)
    throw std::domain_error("chain: horizon below configured minimum precision");
  if (p_e.horizon() < R)
    throw std::domain_error("chain: direction profile horizon too short");

  BoundCertificate cert;
  cert.statement_id = (v == BoundVariant::epsv) ? "prop5.1" : "prop5.4";
  cert.horizon = R;
  cert.sigma = sigma;
  cert.variant = v;
  cert.eps = eps;

  const i64 a0 = std::min<i64>(ceil_log2_i64(R), R);
  const u64 max_len = largest_ladder_le(seq, R);
  auto parts = partition(p_x, a0, R, sigma, (i64)max_len);
  apply_ledger(cert, p_x, p_e, parts, v, cfg);
  if (!cert.applicable) return cert;

  if (v == BoundVariant::epsv) {
    // hypothesis (3) of the chained statement contributes one more eps*r,
    // for (4M+1) eps r total; the blanket statement-level constant is 25.
    ErrorTerm extra;
    extra.c_epsb = Rational(1);
    cert.total_err = et_add(cert.total_err, extra);
    cert.blanket_rate = rat_max(sigma - Rational(25) * eps, Rational(0));
  }

  finish_certificate(cert, p_x, p_x.ambient_dim, cfg.lemma_const);
  return cert;
}

BoundCertificate bourgain_certificate(const ComplexityProfile& p_x,
                                      const ComplexityProfile& p_e,
                                      const ScaleSequence& seq,
                                      const BoundConfig& cfg) {
  require_valid(p_x, "bourgain");
  require_valid(p_e, "bourgain direction");
  if (p_x.ambient_dim != 2)
    throw std::domain_error("bourgain: profile must have ambient dimension 2");
  const i64 R = p_x.horizon();
  if (R < cfg.b_min)
    throw std::domain_error("bourgain: horizon below configured minimum precision");
  if (p_e.horizon() < R)
    throw std::domain_error("bourgain: direction profile horizon too short");

  BoundCertificate cert;
  cert.statement_id = "prop6.1";
  cert.horizon = R;
  cert.sigma = Rational(1);
  cert.extra_log = true;

  const i64 a0 = std::min<i64>(ceil_log2_i64(R), R);

  // ladder index n with r_n < R (largest), falling back to the first entry
  size_t n_idx = 0;
  for (size_t i = 0; i < seq.values.size(); ++i)
    if ((i64)seq.values[i] < R) n_idx = i;
  const u64 r_n = seq.values[n_idx];
  const u64 n = (u64)n_idx + 1;
  const bool small_case = (u128)R <= (u128)4 * n * n * r_n * r_n;

  std::vector<LabeledInterval> parts;
  if (small_case) {
    cert.variant = BoundVariant::log2v;
    parts = partition(p_x, a0, R, Rational(1), (i64)r_n);
  } else {
    cert.variant = BoundVariant::sqrtv;
    SplitResult sp = split_teal_yellow(p_x, a0, R, Rational(1));
    if (sp.teal.len() > 0) parts.push_back(sp.teal);
    if (sp.yellow.len() > 0) parts.push_back(sp.yellow);
    if (parts.empty()) parts.push_back({a0, R, IntervalKind::teal});
  }

  apply_ledger(cert, p_x, p_e, parts, cert.variant, cfg);
  if (!cert.applicable) return cert;

  finish_certificate(cert, p_x, 2, cfg.lemma_const);
  cert.corollary_half = (p_x.at(R) + 1) / 2;
  return cert;
}

std::string BoundCertificate::to_json() const {
  nlohmann::json j;
  j["statement_id"] = statement_id;
  j["horizon"] = horizon;
  j["sigma"] = sigma.str();
  j["variant"] = variant_name(variant);
  j["eps"] = eps.str();
  j["applicable"] = applicable;
  if (!applicable) {
    j["failing_interval"] = {failing_a, failing_b};
    j["failing_s"] = failing_s;
  }
  auto arr = nlohmann::json::array();
  for (const auto& e : ledger) {
    nlohmann::json je;
    je["a"] = e.a;
    je["b"] = e.b;
    je["label"] = kind_name(e.label);
    je["lemma"] = variant_name(e.lemma);
    je["value"] = e.value;
    je["err"] = {{"c_const", e.err.c_const.str()}, {"c_log", e.err.c_log.str()},
                 {"c_log2", e.err.c_log2.str()},   {"c_sqrt", e.err.c_sqrt.str()},
                 {"c_epsb", e.err.c_epsb.str()},   {"c_lin", e.err.c_lin.str()}};
    arr.push_back(je);
  }
  j["ledger"] = arr;
  j["total_value"] = total_value;
  j["error"] = {{"c_const", total_err.c_const.str()},
                {"c_log", total_err.c_log.str()},
                {"c_log2", total_err.c_log2.str()},
                {"c_sqrt", total_err.c_sqrt.str()},
                {"c_epsb", total_err.c_epsb.str()},
                {"c_lin", total_err.c_lin.str()},
                {"extra_log", extra_log}};
  if (applicable) {
    j["raw_bound"] = raw_bound;
    j["bound"] = bound;
    j["error_value"] = error_value().str();
    j["certified_rate"] = certified_rate.str();
    j["yellow_total_len"] = yellow_total_len;
    j["yellow_growth_sum"] = yellow_growth_sum;
    if (statement_id == "prop6.1") j["corollary_half"] = corollary_half;
    if (blanket_rate) j["blanket_rate"] = blanket_rate->str();
  }
  return j.dump(2);
}

}  // namespace projlab
