// Digit-masked direction sets over a scale ladder: build the mask intervals,
// zero bits of seeded maximal-complexity angles, and predict the resulting
// ideal complexity profiles and covering exponents.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "projlab/profile.hpp"
#include "projlab/rational.hpp"

namespace projlab {

struct ScaleSequence {
  std::vector<u64> values;  // strictly increasing, r_1 >= 2
  std::string rule;         // "paper", "geo:<k>", "square", "custom"
};

// Exact ladder r_1 = 2, r_{n+1} = 2^(2^{r_n}); refuses entries beyond cap.
ScaleSequence scale_seq_paper(int m, u64 cap = u64(1) << 20);

ScaleSequence scale_seq_geometric(u64 ratio, int m, u64 r1 = 2);
ScaleSequence scale_seq_square(int m, u64 r1 = 2);
ScaleSequence scale_seq_custom(std::vector<u64> values);

// Longest prefix of the rule's ladder with values <= limit.
ScaleSequence scale_seq_up_to(const std::string& rule, u64 limit);

// Parses "paper", "geo:<k>", "square", "list:v1,v2,...".
ScaleSequence parse_scale_rule(const std::string& rule, int m);

void validate_scale_seq(const ScaleSequence& seq);

enum class MaskKind { D0, Ds, DepsS };

const char* mask_kind_name(MaskKind k);

struct MaskInterval {
  u64 lo{0}, hi{0};  // bit positions p with lo < p <= hi are zeroed (1-based)
};

struct MaskAnchor {
  u64 k{0};         // anchor scale in bits (interval right end)
  u64 free_bits{0}; // structural covering bound: at most 2^free_bits prefixes
};

struct MaskSpec {
  MaskKind kind{MaskKind::D0};
  Rational s{0};
  Rational eps{0};
  u64 horizon{0};
  ScaleSequence seq;
  std::vector<MaskInterval> intervals;  // sorted, pairwise disjoint, clipped to (0,R]
  std::vector<MaskAnchor> anchors;
};

// D0:   intervals (r_n, n*r_n]; Ds(s): (r_n, floor(r_n/s)]; both clipped to
// (0,R], empty intervals dropped. DepsS(eps,s) zeroes everything except every
// ceil(1/s)-th position, then applies the Ds-style eps mask on top; the
// stored intervals are the merged masked runs. Overlapping defining intervals
// (ladder too slow for the kind) raise std::invalid_argument.
MaskSpec mask_intervals(MaskKind kind, const ScaleSequence& seq, u64 R,
                        const Rational& s = Rational(0),
                        const Rational& eps = Rational(0));

// Angle bits, MSB-first: position p (1-based) is the 2^-p digit.
struct BitVec {
  std::vector<std::uint8_t> bytes;
  u64 nbits{0};

  bool get(u64 pos) const;        // 1-based
  void set(u64 pos, bool v);
  static BitVec zeros(u64 nbits);
  static BitVec ones(u64 nbits);
  std::string hex() const;
  static BitVec from_hex(const std::string& hex, u64 nbits);
  bool all_zero() const;
  bool operator==(const BitVec&) const = default;
};

BitVec mask_bits(const BitVec& bits, const MaskSpec& spec);

struct DirectionSample {
  u64 index{0};
  BitVec bits;
  double theta{0};  // pi * 0.b1b2...bR
  double ex{0}, ey{0};
  std::optional<MaskSpec> provenance;
};

// theta = pi * (binary fraction of bits); bits must not be all zero.
DirectionSample bits_to_direction(const BitVec& bits, u64 R);

// Ideal profile of a masked maximal-complexity angle: K[r] = number of
// unmasked positions <= r (ambient dimension 1).
ComplexityProfile predict_profile(const MaskSpec& spec);

struct CoverAnchor {
  u64 k{0};
  u64 log2_count{0};   // covering bound 2^log2_count at scale k
  Rational exponent;   // log2_count / k
};

// Structural covering counts at the construction's anchor scales: an element
// agrees with its first lo bits on a prefix of length hi, so 2^lo intervals
// of length 2^-hi cover the set. Empty spec: single anchor at R, exponent 1.
std::vector<CoverAnchor> covering_exponents(const MaskSpec& spec);

// Deterministic per-index bit stream for a given base seed.
BitVec seeded_bits(u64 seed, u64 index, u64 nbits);

// Draws sample #index: seeded bits, masked; resamples (bounded) if the mask
// zeroes everything. Deterministic in (seed, index).
DirectionSample sample_direction(const MaskSpec& spec, u64 seed, u64 index);

// JSON-lines record for one sample (bits hex, exact dyadic angle, unit
// vector at 17 significant digits, mask provenance).
std::string direction_record_json(const DirectionSample& d);

// Reads record #index from a JSON-lines file written by the above.
DirectionSample read_direction_record(const std::string& path, u64 index);

}  // namespace projlab
