// Exact dyadic point sets, orthogonal projection, and box counting. All
// geometry is integer arithmetic on scaled coordinates; the only floats are
// the direction components, which are quantized once to 62-bit fixed point
// so the cell marking itself is an exact integer computation.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "projlab/rational.hpp"

namespace projlab {

struct FractalCaps {
  u64 max_cells{100'000'000};
  int max_precision{62};  // 64-bit cell coordinates
};

struct DyadicPointSet {
  int R{0};     // precision in bits; coordinates lie in [0, 2^R)
  int dims{2};  // 1 or 2
  // dims == 2: (x, y) pairs flattened; dims == 1: plain values.
  std::vector<u64> cells;

  u64 count() const { return dims == 2 ? cells.size() / 2 : cells.size(); }
  void canonicalize();  // sort lexicographically, dedupe
};

struct Similitude {
  int ratio_log2{1};  // contraction ratio 2^-ratio_log2
  u64 tx{0}, ty{0};   // translation (tx, ty) / 2^ratio_log2
};

// depth-fold compositions applied to the unit square, emitted at precision
// depth * ratio_log2. All maps must share one power-of-two ratio and keep
// the unit square invariant (t + ratio <= 1 per axis).
DyadicPointSet gen_ifs(const std::vector<Similitude>& maps, int depth,
                       const FractalCaps& caps = FractalCaps{});

// Named map families: "four-corner" (4 maps, ratio 1/4, opposite corners),
// "sierpinski" (3 maps, ratio 1/2), "square" (4 maps, ratio 1/2, the full
// unit square).
std::vector<Similitude> preset_maps(const std::string& name);

// All points whose bits outside free_x / free_y (1-based positions, MSB
// first) are zero; |cells| = 2^(|free_x| + |free_y|).
DyadicPointSet gen_digit_set(const std::vector<int>& free_x,
                             const std::vector<int>& free_y, int R,
                             const FractalCaps& caps = FractalCaps{});

// Positions {1..R} congruent to one of `residues` mod `period`.
std::vector<int> periodic_positions(int R, int period,
                                    const std::vector<int>& residues);

// Orthogonal projection onto the line through direction (ex, ey). Each
// occupied source cell projects to an interval; every scale-R_out cell that
// interval meets is marked (cells are half-open, so an interval ending
// exactly on a boundary does not spill over). Output values are shifted by
// +2^R_out so negative dot products index validly. Requires dims == 2,
// |(ex,ey)| within 2^-40 of 1, and R_out <= R + guard.
DyadicPointSet project(const DyadicPointSet& points, double ex, double ey,
                       int R_out, int guard = 8,
                       const FractalCaps& caps = FractalCaps{});

struct ScaleCount {
  int k{0};
  u64 n{0};
};

// N(k) = number of distinct k-bit coordinate prefixes, exact.
std::vector<ScaleCount> box_counts(const DyadicPointSet& points,
                                   const std::vector<int>& scales);

struct Regression {
  double slope{0};
  double stderr_slope{0};
};

// Least squares of log2 N(k) against k; needs >= 2 distinct scales.
Regression dim_regress(const std::vector<ScaleCount>& counts);

// min over anchor scales of log2(N(k))/k. Exact when every count is a power
// of two; otherwise log2 is taken as a certified lower bound on the 2^-16
// grid so the estimate never overstates.
Rational lower_box_estimate(const std::vector<ScaleCount>& counts,
                            const std::vector<int>& anchors);

// Text: header "R dims count", one cell per line. Binary: magic "DPS1",
// u32 R, u32 dims, u64 count, little-endian u64 coordinates.
void write_point_set(std::ostream& out, const DyadicPointSet& s, bool binary = false);
void write_point_set_file(const std::string& path, const DyadicPointSet& s,
                          bool binary = false);
DyadicPointSet read_point_set(std::istream& in);
DyadicPointSet read_point_set_file(const std::string& path);

}  // namespace projlab
