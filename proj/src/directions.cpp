#include "projlab/directions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>

#include "json.hpp"

namespace projlab {

namespace {

u64 checked_next_geo(u64 v, u64 ratio) {
  if (ratio < 2) throw std::invalid_argument("scale seq: geometric ratio must be >= 2");
  if (v > UINT64_MAX / ratio) throw std::overflow_error("scale seq: overflow");
  return v * ratio;
}

}  // namespace

ScaleSequence scale_seq_paper(int m, u64 cap) {
  if (m < 1) throw std::invalid_argument("scale seq: need m >= 1");
  ScaleSequence s;
  s.rule = "paper";
  u64 r = 2;
  for (int n = 1; n <= m; ++n) {
    s.values.push_back(r);
    if (n == m) break;
    // next = 2^(2^r); refuse anything beyond the cap rather than truncate
    if (r >= 63 || (u64(1) << r) >= 63) {
      throw std::overflow_error("scale seq: paper rule exceeds cap at index " +
                                std::to_string(n + 1));
    }
    u64 e = u64(1) << r;
    u64 next = u64(1) << e;
    if (next > cap)
      throw std::overflow_error("scale seq: paper rule exceeds cap at index " +
                                std::to_string(n + 1));
    r = next;
  }
  return s;
}

ScaleSequence scale_seq_geometric(u64 ratio, int m, u64 r1) {
  if (m < 1) throw std::invalid_argument("scale seq: need m >= 1");
  ScaleSequence s;
  s.rule = "geo:" + std::to_string(ratio);
  u64 r = r1;
  for (int n = 1; n <= m; ++n) {
    s.values.push_back(r);
    if (n < m) r = checked_next_geo(r, ratio);
  }
  validate_scale_seq(s);
  return s;
}

ScaleSequence scale_seq_square(int m, u64 r1) {
  if (m < 1) throw std::invalid_argument("scale seq: need m >= 1");
  ScaleSequence s;
  s.rule = "square";
  u64 r = r1;
  for (int n = 1; n <= m; ++n) {
    s.values.push_back(r);
    if (n < m) {
      if (r > u64(3037000499)) throw std::overflow_error("scale seq: overflow");
      r = r * r;
    }
  }
  validate_scale_seq(s);
  return s;
}

ScaleSequence scale_seq_custom(std::vector<u64> values) {
  ScaleSequence s;
  s.rule = "custom";
  s.values = std::move(values);
  validate_scale_seq(s);
  return s;
}

ScaleSequence scale_seq_up_to(const std::string& rule, u64 limit) {
  ScaleSequence out;
  if (rule == "paper") {
    out.rule = "paper";
    u64 r = 2;
    while (r <= limit) {
      out.values.push_back(r);
      if (r >= 6) break;  // next would be 2^64 or more
      r = u64(1) << (u64(1) << r);
    }
  } else if (rule.rfind("geo:", 0) == 0) {
    u64 ratio = std::stoull(rule.substr(4));
    out.rule = rule;
    u64 r = 2;
    while (r <= limit) {
      out.values.push_back(r);
      if (r > UINT64_MAX / ratio) break;
      r *= ratio;
    }
  } else if (rule == "square") {
    out.rule = rule;
    u64 r = 2;
    while (r <= limit) {
      out.values.push_back(r);
      r = r * r;
    }
  } else {
    throw std::invalid_argument("scale seq: unknown rule " + rule);
  }
  if (out.values.empty())
    throw std::invalid_argument("scale seq: limit below r_1");
  return out;
}

ScaleSequence parse_scale_rule(const std::string& rule, int m) {
  if (rule == "paper") return scale_seq_paper(m);
  if (rule.rfind("geo:", 0) == 0)
    return scale_seq_geometric(std::stoull(rule.substr(4)), m);
  if (rule == "square") return scale_seq_square(m);
  if (rule.rfind("list:", 0) == 0) {
    std::vector<u64> vs;
    std::string body = rule.substr(5);
    size_t pos = 0;
    while (pos < body.size()) {
      size_t comma = body.find(',', pos);
      if (comma == std::string::npos) comma = body.size();
      vs.push_back(std::stoull(body.substr(pos, comma - pos)));
      pos = comma + 1;
    }
    return scale_seq_custom(std::move(vs));
  }
  throw std::invalid_argument("scale seq: unknown rule " + rule);
}

void validate_scale_seq(const ScaleSequence& seq) {
  if (seq.values.empty()) throw std::invalid_argument("scale seq: empty");
  if (seq.values[0] < 2) throw std::invalid_argument("scale seq: r_1 must be >= 2");
  for (size_t i = 0; i + 1 < seq.values.size(); ++i)
    if (seq.values[i + 1] <= seq.values[i])
      throw std::invalid_argument("scale seq: values must be strictly increasing");
}

const char* mask_kind_name(MaskKind k) {
  switch (k) {
    case MaskKind::D0: return "d0";
    case MaskKind::Ds: return "ds";
    case MaskKind::DepsS: return "deps-s";
  }
  return "?";
}

namespace {

std::vector<MaskInterval> merge_runs(std::vector<MaskInterval> runs) {
  std::sort(runs.begin(), runs.end(),
            [](const MaskInterval& a, const MaskInterval& b) { return a.lo < b.lo; });
  std::vector<MaskInterval> out;
  for (const auto& r : runs) {
    if (r.lo >= r.hi) continue;
    if (!out.empty() && r.lo <= out.back().hi)
      out.back().hi = std::max(out.back().hi, r.hi);
    else
      out.push_back(r);
  }
  return out;
}

}  // namespace

MaskSpec mask_intervals(MaskKind kind, const ScaleSequence& seq, u64 R,
                        const Rational& s, const Rational& eps) {
  validate_scale_seq(seq);
  if (R < seq.values[0])
    throw std::invalid_argument("mask: horizon below r_1");
  MaskSpec spec;
  spec.kind = kind;
  spec.s = s;
  spec.eps = eps;
  spec.horizon = R;
  spec.seq = seq;

  auto ratio_end = [](u64 rn, const Rational& dens) -> u64 {
    // floor(rn / dens), exact
    if (!(dens > Rational(0)) || !(dens < Rational(1)))
      throw std::invalid_argument("mask: density parameter must be in (0,1)");
    i128 num = (i128)rn * dens.den();
    return (u64)(num / dens.num());
  };

  // Defining intervals (r_n, hi_n] before clipping; hi_n depends on the kind.
  const Rational& dens = (kind == MaskKind::DepsS) ? eps : s;
  std::vector<MaskInterval> defining;
  for (size_t n = 0; n < seq.values.size(); ++n) {
    u64 rn = seq.values[n];
    if (rn > R) break;
    u64 hi = (kind == MaskKind::D0) ? rn * (u64)(n + 1) : ratio_end(rn, dens);
    if (n + 1 < seq.values.size() && hi > seq.values[n + 1])
      throw std::invalid_argument(
          "mask: defining intervals overlap (sequence grows too slowly) at index " +
          std::to_string(n + 1));
    defining.push_back({rn, hi});
  }

  // Anchors: prefixes of length hi are pinned by the first lo free bits.
  for (const auto& d : defining)
    if (d.hi > d.lo && d.hi <= R) spec.anchors.push_back({d.hi, d.lo});

  std::vector<MaskInterval> clipped;
  for (const auto& d : defining)
    if (d.lo < R) clipped.push_back({d.lo, std::min(d.hi, R)});

  if (kind == MaskKind::DepsS) {
    // density-s skeleton: keep positions that are multiples of ceil(1/s),
    // zero the rest; then the eps intervals go on top.
    if (!(s > Rational(0)) || !(s < Rational(1)))
      throw std::invalid_argument("mask: s must be in (0,1)");
    u64 period = (u64)((Rational(1) / s).ceil());
    std::vector<MaskInterval> runs;
    for (u64 base = 0; base < R; base += period)
      runs.push_back({base, std::min(base + period - 1, R)});
    for (const auto& d : clipped) runs.push_back(d);
    spec.intervals = merge_runs(std::move(runs));
    // with the skeleton in place the structural count at each anchor is the
    // exact number of unmasked positions at or below the anchor's start
    for (auto& a : spec.anchors) {
      u64 free_cnt = 0;
      size_t iv = 0;
      for (u64 r = 1; r <= a.free_bits; ++r) {
        while (iv < spec.intervals.size() && spec.intervals[iv].hi < r) ++iv;
        bool masked = iv < spec.intervals.size() && spec.intervals[iv].lo < r &&
                      r <= spec.intervals[iv].hi;
        if (!masked) ++free_cnt;
      }
      a.free_bits = free_cnt;
    }
  } else {
    spec.intervals = merge_runs(std::move(clipped));
  }
  return spec;
}

bool BitVec::get(u64 pos) const {
  return (bytes[(pos - 1) >> 3] >> (7 - ((pos - 1) & 7))) & 1;
}

void BitVec::set(u64 pos, bool v) {
  auto& b = bytes[(pos - 1) >> 3];
  std::uint8_t m = std::uint8_t(1) << (7 - ((pos - 1) & 7));
  if (v) b |= m; else b &= std::uint8_t(~m);
}

BitVec BitVec::zeros(u64 nbits) {
  BitVec v;
  v.nbits = nbits;
  v.bytes.assign((nbits + 7) / 8, 0);
  return v;
}

BitVec BitVec::ones(u64 nbits) {
  BitVec v = zeros(nbits);
  for (u64 p = 1; p <= nbits; ++p) v.set(p, true);
  return v;
}

std::string BitVec::hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out += digits[b >> 4];
    out += digits[b & 15];
  }
  return out;
}

BitVec BitVec::from_hex(const std::string& hex, u64 nbits) {
  BitVec v = zeros(nbits);
  if (hex.size() != v.bytes.size() * 2)
    throw std::invalid_argument("bits: hex length mismatch");
  auto val = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument("bits: bad hex digit");
  };
  for (size_t i = 0; i < v.bytes.size(); ++i)
    v.bytes[i] = std::uint8_t(val(hex[2 * i]) << 4 | val(hex[2 * i + 1]));
  return v;
}

bool BitVec::all_zero() const {
  for (auto b : bytes)
    if (b) return false;
  return true;
}

BitVec mask_bits(const BitVec& bits, const MaskSpec& spec) {
  if (bits.nbits != spec.horizon)
    throw std::domain_error("mask_bits: length mismatch");
  BitVec out = bits;
  for (const auto& iv : spec.intervals)
    for (u64 p = iv.lo + 1; p <= std::min<u64>(iv.hi, out.nbits); ++p)
      out.set(p, false);
  return out;
}

DirectionSample bits_to_direction(const BitVec& bits, u64 R) {
  if (bits.nbits != R) throw std::domain_error("direction: bit length mismatch");
  if (bits.all_zero())
    throw std::domain_error("direction: all-zero bits give theta = 0, outside (0,pi)");
  // fraction from the first 64 bits; deeper bits are below double resolution
  u64 head = 0;
  for (u64 p = 1; p <= std::min<u64>(64, R); ++p)
    head = (head << 1) | (bits.get(p) ? 1u : 0u);
  if (R < 64) head <<= (64 - R);
  double frac = std::ldexp((double)head, -64);
  DirectionSample d;
  d.bits = bits;
  if (head == (u64(1) << 63) &&
      (R <= 64)) {  // exactly one leading bit: theta = pi/2
    bool only = true;
    for (u64 p = 2; p <= R && only; ++p) only = !bits.get(p);
    if (only) {
      d.theta = std::numbers::pi / 2;
      d.ex = 0.0;
      d.ey = 1.0;
      return d;
    }
  }
  d.theta = std::numbers::pi * frac;
  d.ex = std::cos(d.theta);
  d.ey = std::sin(d.theta);
  return d;
}

ComplexityProfile predict_profile(const MaskSpec& spec) {
  ComplexityProfile p;
  p.ambient_dim = 1;
  p.k.resize((size_t)spec.horizon + 1, 0);
  size_t iv = 0;
  i64 acc = 0;
  for (u64 r = 1; r <= spec.horizon; ++r) {
    while (iv < spec.intervals.size() && spec.intervals[iv].hi < r) ++iv;
    bool masked = iv < spec.intervals.size() && spec.intervals[iv].lo < r &&
                  r <= spec.intervals[iv].hi;
    if (!masked) ++acc;
    p.k[(size_t)r] = acc;
  }
  return p;
}

std::vector<CoverAnchor> covering_exponents(const MaskSpec& spec) {
  std::vector<CoverAnchor> out;
  if (spec.anchors.empty()) {
    out.push_back({spec.horizon, spec.horizon, Rational(1)});
    return out;
  }
  for (const auto& a : spec.anchors) {
    CoverAnchor c;
    c.k = a.k;
    c.log2_count = a.free_bits;
    c.exponent = Rational((i64)a.free_bits, (i64)a.k);
    out.push_back(c);
  }
  return out;
}

BitVec seeded_bits(u64 seed, u64 index, u64 nbits) {
  std::seed_seq sq{seed, index};
  std::mt19937_64 rng(sq);
  BitVec v = BitVec::zeros(nbits);
  for (size_t i = 0; i < v.bytes.size(); i += 8) {
    u64 w = rng();
    for (size_t j = 0; j < 8 && i + j < v.bytes.size(); ++j)
      v.bytes[i + j] = std::uint8_t(w >> (56 - 8 * j));
  }
  // clear slack bits beyond nbits
  if (nbits % 8) {
    std::uint8_t keep = std::uint8_t(0xFF << (8 - nbits % 8));
    v.bytes.back() &= keep;
  }
  return v;
}

DirectionSample sample_direction(const MaskSpec& spec, u64 seed, u64 index) {
  for (u64 attempt = 0; attempt < 64; ++attempt) {
    BitVec raw = seeded_bits(seed, index + (attempt << 48), spec.horizon);
    BitVec masked = mask_bits(raw, spec);
    if (masked.all_zero()) continue;
    DirectionSample d = bits_to_direction(masked, spec.horizon);
    d.index = index;
    d.provenance = spec;
    return d;
  }
  throw std::runtime_error("direction: mask zeroes every sampled bit");
}

namespace {

nlohmann::json mask_spec_json(const MaskSpec& spec) {
  nlohmann::json j;
  j["kind"] = mask_kind_name(spec.kind);
  j["horizon"] = spec.horizon;
  j["seq"] = spec.seq.values;
  j["seq_rule"] = spec.seq.rule;
  if (spec.kind != MaskKind::D0) j["s"] = spec.s.str();
  if (spec.kind == MaskKind::DepsS) j["eps"] = spec.eps.str();
  auto arr = nlohmann::json::array();
  for (const auto& iv : spec.intervals) arr.push_back({iv.lo, iv.hi});
  j["intervals"] = arr;
  return j;
}

}  // namespace

std::string direction_record_json(const DirectionSample& d) {
  nlohmann::json j;
  j["index"] = d.index;
  j["bits_hex"] = d.bits.hex();
  j["nbits"] = d.bits.nbits;
  j["angle_num_hex"] = d.bits.hex();  // numerator of theta/pi over 2^R
  j["angle_den_pow2"] = d.bits.nbits;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", d.ex);
  j["ex"] = std::string(buf);
  std::snprintf(buf, sizeof buf, "%.17g", d.ey);
  j["ey"] = std::string(buf);
  if (d.provenance) j["mask"] = mask_spec_json(*d.provenance);
  return j.dump();
}

DirectionSample read_direction_record(const std::string& path, u64 index) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("direction: cannot open " + path);
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    auto j = nlohmann::json::parse(line);
    if (j.at("index").get<u64>() != index) continue;
    u64 nbits = j.at("nbits").get<u64>();
    BitVec bits = BitVec::from_hex(j.at("bits_hex").get<std::string>(), nbits);
    DirectionSample d = bits_to_direction(bits, nbits);
    d.index = index;
    return d;
  }
  throw std::runtime_error("direction: index " + std::to_string(index) +
                           " not found in " + path);
}

}  // namespace projlab
