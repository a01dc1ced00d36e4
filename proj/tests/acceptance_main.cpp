// Acceptance suite: one criterion per run (--criterion N) or all (default).
// Each criterion prints exactly one PASS/FAIL line; the process exits
// nonzero if any selected criterion fails.
#include <chrono>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "json.hpp"
#include "oracles.hpp"

#include "projlab/bounds.hpp"
#include "projlab/directions.hpp"
#include "projlab/fractal.hpp"
#include "projlab/harness.hpp"
#include "projlab/profile.hpp"

using namespace projlab;
using nlohmann::json;

namespace {

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

bool announce(int n, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << n << ": " << detail
            << std::endl;
  return pass;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// --------------------------------------------------------------------------
// 1. Direction-set covering exponents with ladder (2, 8, 32, 128):
//    d0 exponents exactly 1/2, 1/3, 1/4 at k = 16, 96, 512; d_{1/2}
//    exponents within 0.05 of 1/2 at the two deepest anchors; under 5 s.

bool criterion1() {
  Timer timer;
  auto seq = scale_seq_geometric(4, 4);  // 2, 8, 32, 128
  bool ok = seq.values == std::vector<u64>{2, 8, 32, 128};

  auto d0 = mask_intervals(MaskKind::D0, seq, 512);
  auto cov = covering_exponents(d0);
  const std::vector<std::pair<u64, Rational>> expected = {
      {16, Rational(1, 2)}, {96, Rational(1, 3)}, {512, Rational(1, 4)}};
  ok = ok && cov.size() == expected.size();
  for (size_t i = 0; ok && i < expected.size(); ++i)
    ok = cov[i].k == expected[i].first && cov[i].exponent == expected[i].second;

  auto ds = mask_intervals(MaskKind::Ds, seq, 512, Rational(1, 2));
  auto dcov = covering_exponents(ds);
  ok = ok && dcov.size() >= 2;
  for (size_t i = dcov.size() - 2; ok && i < dcov.size(); ++i) {
    Rational gap = dcov[i].exponent - Rational(1, 2);
    if (gap.is_negative()) gap = -gap;
    ok = gap <= Rational(1, 20);
  }

  // the full experiment (structural checks plus 200 sampled directions)
  auto cfg = parse_config_text(
      "experiment = E1\nseed = 1\nout_dir = accept_out/e1\n");
  ok = ok && run_experiment(cfg).pass;

  double secs = timer.seconds();
  ok = ok && secs < 5.0;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "covering exponents 1/2, 1/3, 1/4 at k=16,96,512; ds within "
                "0.05 of 1/2; %.2fs (< 5s)",
                secs);
  return announce(1, ok, buf);
}

// --------------------------------------------------------------------------
// 2. Four-corner preset, depths 4-8: set slope 1.00 +- 0.03, axis projection
//    slope 0.50 +- 0.03 against the closed-form counts, and slope >= 0.95
//    along each of 20 masked-sample directions; under 60 s.

bool criterion2() {
  Timer timer;
  auto cfg = parse_config_text(
      "experiment = E2\nseed = 1\nout_dir = accept_out/e2\n");
  auto rep = run_experiment(cfg);
  json report = json::parse(rep.json_text);

  double set_slope = report["summary"]["set_slope"]["value"].get<double>();
  double axis_slope = report["summary"]["axis_slope"]["value"].get<double>();
  double min_dir = 10, max_dir = 0;
  int n_dirs = 0, below = 0;
  for (const auto& row : report["summary"]["direction_slopes"]) {
    double s = row["slope"].get<double>();
    min_dir = std::min(min_dir, s);
    max_dir = std::max(max_dir, s);
    if (s < 0.95) ++below;
    ++n_dirs;
  }
  bool ok = rep.pass && std::abs(set_slope - 1.0) <= 0.03 &&
            std::abs(axis_slope - 0.5) <= 0.03 && n_dirs == 20 &&
            min_dir >= 0.95;
  double secs = timer.seconds();
  ok = ok && secs < 60.0;
  char buf[280];
  std::snprintf(buf, sizeof buf,
                "set slope %.4f (1+-0.03), axis slope %.4f (0.5+-0.03); "
                "direction slopes: min %.4f, max %.4f, %d/%d below 0.95 "
                "(need every one >= 0.95); %.1fs (< 60s)",
                set_slope, axis_slope, min_dir, max_dir, below, n_dirs, secs);
  return announce(2, ok, buf);
}

// --------------------------------------------------------------------------
// 3. Weakly regular universality as stated: per-axis density 0.4 digit set
//    at R = 64 with box counting up to scale 64. The stated parameters are
//    not computable: the set has 2^52 occupied cells (over the 10^8 cell
//    cap by seven orders of magnitude), and any run reporting slope >= 0.75
//    across scales 16..64 must distinguish >= 2^46 occupied boxes, which no
//    enumeration fits into the 120 s budget or into memory. The criterion is
//    attempted exactly as stated and reported honestly; a reduced-precision
//    variant with the same density, alpha, directions, and threshold runs
//    alongside as evidence for the underlying claim.

bool criterion3() {
  Timer timer;
  bool stated_ran = false;
  std::string stated_error;
  try {
    auto literal = parse_config_text(
        "experiment = E3\nseed = 1\ndepth = 64\nscales = 16,32,48,64\n"
        "out_dir = accept_out/e3_stated\n");
    auto rep = run_experiment(literal);
    stated_ran = rep.pass;
  } catch (const std::exception& e) {
    stated_error = e.what();
  }

  // desk-scale variant: same density 2/5 per axis (alpha = 0.8), same
  // direction family and threshold, precision reduced to fit the cell cap
  bool variant_ok = false;
  double variant_min = 0, variant_secs = 0;
  try {
    Timer vt;
    auto desk = parse_config_text(
        "experiment = E3\nseed = 1\nout_dir = accept_out/e3_desk\n");
    auto rep = run_experiment(desk);
    json report = json::parse(rep.json_text);
    variant_min = 10;
    for (const auto& row : report["summary"]["direction_slopes"])
      variant_min = std::min(variant_min, row["slope"].get<double>());
    variant_ok = rep.pass && variant_min >= 0.75;
    variant_secs = vt.seconds();
  } catch (const std::exception& e) {
    stated_error += std::string("; variant error: ") + e.what();
  }

  char buf[320];
  std::snprintf(
      buf, sizeof buf,
      "as stated (density 0.4/axis, R=64, scales to 64): infeasible, %s | "
      "reduced variant (R=25, alpha 0.8, 20 ds-dirs): min slope %.4f >= 0.75 "
      "-> %s in %.1fs",
      stated_ran ? "unexpectedly ran" : stated_error.c_str(), variant_min,
      variant_ok ? "holds" : "fails", variant_secs);
  // honest red: the criterion as stated did not run to a passing result
  bool ok = stated_ran && timer.seconds() < 120.0;
  return announce(3, ok, buf);
}

// --------------------------------------------------------------------------
// 4. Profile-calculus correctness: exhaustive dim-2 profiles for R <= 12 and
//    10^4 fuzzed profiles at R = 64; split and partition outputs pass their
//    defining inequalities (independent direct scans) with zero failures and
//    the partition count never exceeds 2*ceil((b-a)/max_len).

bool verify_split_partition(const ComplexityProfile& p, i64 a, i64 b,
                            const Rational& sigma, i64 max_len, i64& failures) {
  auto sp = split_teal_yellow(p, a, b, sigma);
  bool ok = oracle::is_teal(p, a, sp.m, sigma, Rational(0)) &&
            oracle::is_yellow(p, sp.m, b, sigma, Rational(0));
  auto parts = partition(p, a, b, sigma, max_len);
  i64 blocks = a == b ? 1 : (b - a + max_len - 1) / max_len;
  if ((i64)parts.size() > 2 * blocks) ok = false;
  i64 cover = a;
  for (const auto& part : parts) {
    if (part.a != cover || part.len() > max_len || part.len() < 0) ok = false;
    cover = part.b;
    bool label_ok = part.kind == IntervalKind::teal
                        ? oracle::is_teal(p, part.a, part.b, sigma, Rational(0))
                        : oracle::is_yellow(p, part.a, part.b, sigma, Rational(0));
    if (!label_ok) ok = false;
  }
  if (cover != b && !(a == b && parts.size() == 1 && parts[0].len() == 0))
    ok = false;
  if (!ok) ++failures;
  return ok;
}

bool criterion4() {
  i64 failures = 0, cases = 0;
  const Rational sigmas[] = {Rational(1), Rational(1, 2)};
  for (i64 R = 1; R <= 12; ++R) {
    oracle::for_each_dim2_profile(R, [&](const ComplexityProfile& p) {
      for (const auto& sg : sigmas)
        for (i64 ml : {i64(1), i64(3), R}) {
          ++cases;
          verify_split_partition(p, 0, R, sg, ml, failures);
        }
    });
  }
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 10000; ++i) {
    ComplexityProfile p;
    p.ambient_dim = 2;
    p.k.resize(65, 0);
    for (i64 r = 1; r <= 64; ++r)
      p.k[(size_t)r] = p.k[(size_t)r - 1] + (i64)(rng() % 3);
    i64 a = (i64)(rng() % 65);
    i64 b = a + (i64)(rng() % (u64)(65 - a));
    i64 ml = 1 + (i64)(rng() % 16);
    ++cases;
    verify_split_partition(p, a, b, sigmas[rng() % 2], ml, failures);
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "%lld split/partition cases (exhaustive R<=12 plus 10^4 fuzzed "
                "at R=64), %lld failures",
                (long long)cases, (long long)failures);
  return announce(4, failures == 0, buf);
}

// --------------------------------------------------------------------------
// 5. Theorem 3.2 calculator: bit-exact agreement with an independent
//    re-evaluation over the exhaustive grid K, t, r <= 40, C <= 4,
//    eps in {0, 0.01, 0.1}.

bool criterion5() {
  const Rational epss[] = {Rational(0), Rational(1, 100), Rational(1, 10)};
  i64 cases = 0, mismatches = 0;
  for (i64 K = 0; K <= 40; ++K)
    for (i64 r = 1; r <= 40; ++r)
      for (i64 t = 1; t <= r; ++t)
        for (i64 C = 1; C <= 4; ++C) {
          if (C * t < r) continue;  // outside the statement's hypothesis
          for (const auto& eps : epss) {
            ++cases;
            if (bound_thm32(K, r, t, C, eps) !=
                oracle::thm32_reference(K, r, t, C, eps))
              ++mismatches;
          }
        }
  char buf[120];
  std::snprintf(buf, sizeof buf, "%lld grid evaluations, %lld mismatches",
                (long long)cases, (long long)mismatches);
  return announce(5, mismatches == 0, buf);
}

// --------------------------------------------------------------------------
// 6. Half-dimension ledger: on the same corpora the certified bound is at
//    least ceil(K[R]/2) - eval(err) with zero violations, and on the tight
//    flat-then-slope-2 family the raw ledger bound equals K[R]/2 exactly.

bool criterion6() {
  auto seq = scale_seq_paper(2);
  BoundConfig cfg;
  cfg.b_min = 2;

  i64 checked = 0, violations = 0, inapplicable = 0;
  auto check = [&](const ComplexityProfile& p) {
    MaskSpec d0 = mask_intervals(MaskKind::D0, seq, (u64)p.horizon());
    auto cert = bourgain_certificate(p, predict_profile(d0), seq, cfg);
    ++checked;
    if (!cert.applicable) {
      ++inapplicable;
      return;
    }
    i64 half = (p.at(p.horizon()) + 1) / 2;
    if (!(Rational(cert.bound) >= Rational(half) - cert.error_value() &&
          cert.bound <= p.horizon()))
      ++violations;
  };
  for (i64 R = 2; R <= 12; ++R) oracle::for_each_dim2_profile(R, check);
  std::mt19937_64 rng(99);
  for (int i = 0; i < 10000; ++i) {
    ComplexityProfile p;
    p.ambient_dim = 2;
    p.k.resize(65, 0);
    for (i64 r = 1; r <= 64; ++r)
      p.k[(size_t)r] = p.k[(size_t)r - 1] + (i64)(rng() % 3);
    check(p);
  }

  bool tight_ok = true;
  for (i64 R : {16, 32, 64, 100, 128, 256}) {
    ComplexityProfile p = profile_flat_then_slope2(R);
    MaskSpec d0 = mask_intervals(MaskKind::D0, seq, (u64)R);
    auto cert = bourgain_certificate(p, predict_profile(d0), seq, cfg);
    if (!(cert.applicable && 2 * cert.raw_bound == p.at(R))) tight_ok = false;
  }

  bool ok = violations == 0 && inapplicable == 0 && tight_ok;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%d certificates: %d bound violations, %d inapplicable; tight "
                "family raw bound %s K[R]/2",
                (int)checked, (int)violations, (int)inapplicable,
                tight_ok ? "equals" : "differs from");
  return announce(6, ok, buf);
}

// --------------------------------------------------------------------------
// 7. Chained certificates: for K[r] = ceil(alpha r), alpha in {0.3, 0.8, 1},
//    ideal directions, certified_rate >= alpha - delta(R) with
//    delta(2^14) < delta(2^10) and delta(2^14) < 0.05 at default constants.

bool criterion7() {
  BoundConfig cfg;
  cfg.b_min = 2;
  bool ok = true;
  std::string detail;
  for (const Rational& alpha : {Rational(3, 10), Rational(4, 5), Rational(1)}) {
    Rational d10, d14;
    for (i64 R : {i64(1) << 10, i64(1) << 14}) {
      auto seq = scale_seq_up_to("geo:2", (u64)R);
      auto cert = chain_certificate(profile_linear_rate(alpha, R, 1),
                                    ideal_direction_profile(R), seq, alpha,
                                    BoundVariant::log2v, Rational(0), cfg);
      if (!cert.applicable) ok = false;
      Rational delta = alpha - cert.certified_rate;
      if (delta.is_negative()) delta = Rational(0);
      (R == (i64(1) << 10) ? d10 : d14) = delta;
    }
    ok = ok && d14 < d10 && d14 < Rational(1, 20);
    char buf[80];
    std::snprintf(buf, sizeof buf, "alpha=%s: delta 2^10=%.4f, 2^14=%.4f; ",
                  alpha.str().c_str(), d10.to_double(), d14.to_double());
    detail += buf;
  }
  return announce(7, ok, detail + "(need shrinking and < 0.05)");
}

// --------------------------------------------------------------------------
// 8. Determinism: every experiment rerun with an identical config and seed
//    produces byte-identical report and trial files.

bool criterion8() {
  const char* configs[] = {
      "experiment = E1\nseed = 3\ncount = 50\nout_dir = accept_out/det_e1\n",
      "experiment = E2\nseed = 1\ndir_count = 5\nout_dir = accept_out/det_e2\n",
      "experiment = E3\nseed = 1\ndepth = 20\nscales = 5,10,15,20\ndir_count = 3\n"
      "out_dir = accept_out/det_e3\n",
      "experiment = E4\nseed = 5\nexhaustive_r = 8\nfuzz_count = 500\n"
      "fuzz_r = 48\ntight_rs = 16,64\nout_dir = accept_out/det_e4\n",
      "experiment = E5\nseed = 5\nexhaustive_r = 6\nfuzz_count = 500\n"
      "fuzz_r = 32\nout_dir = accept_out/det_e5\n"};
  bool ok = true;
  std::string detail;
  for (const char* text : configs) {
    auto cfg = parse_config_text(text);
    auto r1 = run_experiment(cfg);
    std::string rep1 = slurp(r1.report_path), tr1 = slurp(r1.trials_path);
    auto r2 = run_experiment(cfg);
    bool same = slurp(r2.report_path) == rep1 && slurp(r2.trials_path) == tr1 &&
                !rep1.empty();
    ok = ok && same;
    detail += cfg.experiment + (same ? " ok; " : " DIFFERS; ");
  }
  return announce(8, ok, detail + "(rerun bytes identical)");
}

}  // namespace

int main(int argc, char** argv) {
  int which = 0;
  for (int i = 1; i + 1 < argc || i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
      which = std::atoi(argv[i + 1]);
  }
  bool (*criteria[])() = {criterion1, criterion2, criterion3, criterion4,
                          criterion5, criterion6, criterion7, criterion8};
  bool all = true;
  try {
    if (which >= 1 && which <= 8) {
      all = criteria[which - 1]();
    } else {
      for (auto* c : criteria) all = c() && all;
    }
  } catch (const std::exception& e) {
    std::cout << "FAIL: unexpected exception: " << e.what() << std::endl;
    all = false;
  }
  std::filesystem::remove_all("accept_out");
  return all ? 0 : 1;
}
