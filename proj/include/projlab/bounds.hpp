// Certified bound calculators. Each certificate carries a per-interval
// ledger (label, lemma variant, integer value, symbolic error) plus the
// combined bound; the algebra mirrors the telescoping proofs it mechanizes:
// the projected-point complexity at horizon R is the profile's K[R] minus
// the ledger losses, with every dropped term accounted in the error.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "projlab/error_term.hpp"
#include "projlab/profile.hpp"
#include "projlab/directions.hpp"

namespace projlab {

struct BoundConfig {
  Rational lemma_const{1};   // hidden constant in the per-interval slacks
  Rational hyp_const{1};     // hidden constant in the direction hypothesis
  Rational thm31_log_const{1};
  i64 b_min{16};             // "sufficiently large b" threshold for the
                             // standalone interval calculators
};

// min(dim_x, s)*r - 10*sqrt(eps)*r - log-term, clamped at 0. sqrt(eps) is a
// certified upper bound (exact for perfect squares).
Rational bound_thm31(const Rational& dim_x, const Rational& s,
                     const Rational& eps, i64 r,
                     const BoundConfig& cfg = BoundConfig{});

// max{K - r, (K - t)/2, 0} + 10*C*eps*r, exact. Preconditions: t <= r and
// t >= r/C (i.e. C*t >= r); violations throw std::domain_error.
Rational bound_thm32(i64 K, i64 r, i64 t, i64 C, const Rational& eps);

enum class BoundVariant { log2v, sqrtv, epsv };

const char* variant_name(BoundVariant v);

struct IntervalBound {
  i64 value{0};
  ErrorTerm err;
};

// Classification slack matching each lemma variant: the log2 and sqrt
// variants use (sigma, c log b) intervals, the eps variant (sigma, eps b).
SlackSpec variant_class_slack(BoundVariant v, const BoundConfig& cfg,
                              const Rational& eps);

// Value ceil(growth - sigma*(b-a)) with the variant's error coefficients.
// Requires the interval to classify yellow (or both) under the matching
// slack and b >= cfg.b_min.
IntervalBound yellow_interval_bound(const ComplexityProfile& p, i64 a, i64 b,
                                    const Rational& sigma, BoundVariant v,
                                    const Rational& eps = Rational(0),
                                    const BoundConfig& cfg = BoundConfig{});

// Value 0 with the variant's error; requires teal (or both) classification.
IntervalBound teal_interval_bound(const ComplexityProfile& p, i64 a, i64 b,
                                  const Rational& sigma, BoundVariant v,
                                  const Rational& eps = Rational(0),
                                  const BoundConfig& cfg = BoundConfig{});

struct HypSlack {
  enum class Mode { exact, log2c, sqrtc, epsb } mode{Mode::exact};
  Rational c{0};
  Rational eps{0};
};

Rational hyp_slack_value(const HypSlack& h, i64 b);

struct HypothesisResult {
  bool pass{true};
  i64 failing_s{-1};
};

// Checks K_e[s] >= sigma*s - slack(b) for every s <= b-a; reports the first
// failing s instead of throwing.
HypothesisResult direction_hypothesis(const ComplexityProfile& p_e, i64 a,
                                      i64 b, const Rational& sigma,
                                      const HypSlack& slack);

struct LedgerEntry {
  i64 a{0}, b{0};
  IntervalKind label{IntervalKind::teal};
  BoundVariant lemma{BoundVariant::log2v};
  i64 value{0};
  ErrorTerm err;
};

struct BoundCertificate {
  std::string statement_id;
  i64 horizon{0};
  Rational sigma;
  BoundVariant variant{BoundVariant::log2v};
  Rational eps{0};
  bool applicable{true};
  i64 failing_a{-1}, failing_b{-1}, failing_s{-1};
  std::vector<LedgerEntry> ledger;
  i64 total_value{0};
  ErrorTerm total_err;
  bool extra_log{false};
  i64 raw_bound{0};        // K[R] - sum of ledger values, unclamped
  i64 bound{0};            // clamped to [0, R]: a 1-D projection profile
                           // cannot exceed slope 1 in the model
  Rational certified_rate; // max(0, (bound - eval(err))/R), capped at 1
  // bourgain extras
  i64 yellow_total_len{0};
  i64 yellow_growth_sum{0};
  i64 corollary_half{0};   // ceil(K[R]/2), the halving corollary's target
  // eps-variant extra: the blanket rate-level slack of the chained statement
  std::optional<Rational> blanket_rate;

  Rational error_value() const;  // et_eval(total_err, horizon, eps, extra_log)
  std::string to_json() const;   // stable key order, byte-reproducible
};

// Chained certificate over [ceil(log2 R), R]: partition with max_len = the
// largest ladder value <= R, per-interval lemma bounds, telescoped. The
// direction hypothesis is checked on every interval; a failure marks the
// certificate inapplicable and records the offending interval.
BoundCertificate chain_certificate(const ComplexityProfile& p_x,
                                   const ComplexityProfile& p_e,
                                   const ScaleSequence& seq,
                                   const Rational& sigma, BoundVariant v,
                                   const Rational& eps = Rational(0),
                                   const BoundConfig& cfg = BoundConfig{});

// Half-dimension ledger at sigma = 1 over [ceil(log2 R), R]. Case split on
// the horizon: R <= 4 n^2 r_n^2 partitions with max_len = r_n (log^2
// errors); otherwise a single teal+yellow split (sqrt errors). Reports the
// raw ledger bound K[R] - sum_Y growth + L and the halving corollary.
BoundCertificate bourgain_certificate(const ComplexityProfile& p_x,
                                      const ComplexityProfile& p_e,
                                      const ScaleSequence& seq,
                                      const BoundConfig& cfg = BoundConfig{});

// Slope-1 profile of the given horizon; the ideal (unmasked) direction.
ComplexityProfile ideal_direction_profile(i64 R);

// Smallest integer a with 2^a >= R (the head cut of the partitions).
i64 ceil_log2_i64(i64 R);

}  // namespace projlab
