#include "projlab/fractal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

namespace projlab {

void DyadicPointSet::canonicalize() {
  if (dims == 1) {
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    return;
  }
  struct P { u64 x, y; };
  auto* p = reinterpret_cast<P*>(cells.data());
  size_t n = cells.size() / 2;
  std::sort(p, p + n, [](const P& a, const P& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  auto* end = std::unique(p, p + n, [](const P& a, const P& b) {
    return a.x == b.x && a.y == b.y;
  });
  cells.resize((size_t)(end - p) * 2);
}

DyadicPointSet gen_ifs(const std::vector<Similitude>& maps, int depth,
                       const FractalCaps& caps) {
  if (maps.empty()) throw std::domain_error("ifs: need at least one map");
  if (depth < 0) throw std::domain_error("ifs: negative depth");
  const int k = maps[0].ratio_log2;
  if (k < 1) throw std::domain_error("ifs: ratio must be a power of two below 1");
  for (const auto& m : maps) {
    if (m.ratio_log2 != k)
      throw std::domain_error("ifs: all maps must share one ratio");
    u64 span = u64(1) << k;
    if (m.tx + 1 > span || m.ty + 1 > span)
      throw std::domain_error("ifs: map does not keep the unit square invariant");
  }
  if ((i64)depth * k > caps.max_precision)
    throw std::domain_error("ifs: precision " + std::to_string(depth * k) +
                            " exceeds cap " + std::to_string(caps.max_precision));
  // cell count = maps^depth, checked against the cap up front
  u128 cnt = 1;
  for (int d = 0; d < depth; ++d) {
    cnt *= maps.size();
    if (cnt > caps.max_cells)
      throw std::domain_error("ifs: cell count exceeds cap at depth " +
                              std::to_string(d + 1));
  }

  DyadicPointSet s;
  s.dims = 2;
  s.R = 0;
  s.cells = {0, 0};
  for (int d = 0; d < depth; ++d) {
    std::vector<u64> next;
    next.reserve(s.cells.size() * maps.size());
    const int p = s.R;
    for (size_t i = 0; i < s.cells.size(); i += 2) {
      for (const auto& m : maps) {
        next.push_back(s.cells[i] + (m.tx << p));
        next.push_back(s.cells[i + 1] + (m.ty << p));
      }
    }
    s.cells = std::move(next);
    s.R = p + k;
  }
  s.canonicalize();
  return s;
}

std::vector<Similitude> preset_maps(const std::string& name) {
  if (name == "four-corner")
    return {{2, 0, 0}, {2, 3, 0}, {2, 0, 3}, {2, 3, 3}};
  if (name == "sierpinski")
    return {{1, 0, 0}, {1, 1, 0}, {1, 0, 1}};
  if (name == "square")
    return {{1, 0, 0}, {1, 1, 0}, {1, 0, 1}, {1, 1, 1}};
  throw std::invalid_argument("ifs: unknown preset " + name);
}

DyadicPointSet gen_digit_set(const std::vector<int>& free_x,
                             const std::vector<int>& free_y, int R,
                             const FractalCaps& caps) {
  if (R < 0 || R > caps.max_precision)
    throw std::domain_error("digit set: bad precision");
  auto check = [&](const std::vector<int>& v) {
    for (int p : v)
      if (p < 1 || p > R) throw std::domain_error("digit set: position out of range");
  };
  check(free_x);
  check(free_y);
  const size_t nx = free_x.size(), ny = free_y.size();
  if (nx + ny >= 63 || (u128(1) << (nx + ny)) > caps.max_cells)
    throw std::domain_error("digit set: cell count 2^" + std::to_string(nx + ny) +
                            " exceeds cap " + std::to_string(caps.max_cells));
  auto expand = [&](const std::vector<int>& free) {
    std::vector<u64> vals;
    vals.reserve(size_t(1) << free.size());
    for (u64 m = 0; m < (u64(1) << free.size()); ++m) {
      u64 v = 0;
      for (size_t i = 0; i < free.size(); ++i)
        if ((m >> i) & 1) v |= u64(1) << (R - free[i]);  // position p = digit 2^-p
      vals.push_back(v);
    }
    return vals;
  };
  auto xs = expand(free_x), ys = expand(free_y);
  DyadicPointSet s;
  s.R = R;
  s.dims = 2;
  s.cells.reserve(xs.size() * ys.size() * 2);
  for (u64 x : xs)
    for (u64 y : ys) {
      s.cells.push_back(x);
      s.cells.push_back(y);
    }
  s.canonicalize();
  return s;
}

std::vector<int> periodic_positions(int R, int period,
                                    const std::vector<int>& residues) {
  std::vector<int> out;
  for (int p = 1; p <= R; ++p)
    for (int r : residues)
      if (p % period == r % period) {
        out.push_back(p);
        break;
      }
  return out;
}

DyadicPointSet project(const DyadicPointSet& points, double ex, double ey,
                       int R_out, int guard, const FractalCaps& caps) {
  if (points.dims != 2) throw std::domain_error("project: need a planar set");
  const double norm2 = ex * ex + ey * ey;
  if (std::abs(norm2 - 1.0) > std::ldexp(1.0, -40))
    throw std::domain_error("project: direction is not a unit vector");
  if (R_out < 1 || R_out > points.R + guard || R_out > caps.max_precision)
    throw std::domain_error("project: output precision out of range");

  // Quantize the direction once: u/2^62, v/2^62. Everything after this line
  // is exact integer arithmetic, so axis-aligned projections produce exact
  // dyadic images and cell marking is reproducible bit for bit.
  constexpr int F = 62;
  const i64 u = (i64)std::llround(std::ldexp(ex, F));
  const i64 v = (i64)std::llround(std::ldexp(ey, F));

  const int R_in = points.R;
  const int shift_bits = F + R_in - R_out;  // >= 0 since R_out <= R_in + guard <= R_in + F
  const i128 origin = (i128)1 << (F + R_in);  // +2^R_out after rescaling

  DyadicPointSet out;
  out.dims = 1;
  out.R = R_out;
  out.cells.reserve(points.count() * 2);
  for (size_t i = 0; i < points.cells.size(); i += 2) {
    const i64 x = (i64)points.cells[i], y = (i64)points.cells[i + 1];
    // corner sums of the half-open cell [x, x+1) x [y, y+1), scaled by 2^F
    const i128 ux0 = (i128)u * x, ux1 = (i128)u * (x + 1);
    const i128 vy0 = (i128)v * y, vy1 = (i128)v * (y + 1);
    i128 lo = (ux0 < ux1 ? ux0 : ux1) + (vy0 < vy1 ? vy0 : vy1) + origin;
    i128 hi = (ux0 < ux1 ? ux1 : ux0) + (vy0 < vy1 ? vy1 : vy0) + origin;
    // image is [lo, hi) in numerator space; hi is a sup, never attained
    u64 j_lo = (u64)(lo >> shift_bits);
    u64 j_hi = (u64)((hi - 1) >> shift_bits);
    for (u64 j = j_lo; j <= j_hi; ++j) out.cells.push_back(j);
    if (out.cells.size() > caps.max_cells)
      throw std::domain_error("project: output cell count exceeds cap");
  }
  out.canonicalize();
  return out;
}

namespace {

u128 morton_key(u64 x, u64 y) {
  static const auto spread = [] {
    std::array<std::uint16_t, 256> t{};
    for (int b = 0; b < 256; ++b) {
      std::uint16_t s = 0;
      for (int i = 0; i < 8; ++i)
        if (b & (1 << i)) s |= std::uint16_t(1) << (2 * i);
      t[(size_t)b] = s;
    }
    return t;
  }();
  u128 z = 0;
  for (int i = 0; i < 8; ++i) {
    z |= (u128)spread[(x >> (8 * i)) & 0xFF] << (16 * i + 1);
    z |= (u128)spread[(y >> (8 * i)) & 0xFF] << (16 * i);
  }
  return z;
}

}  // namespace

std::vector<ScaleCount> box_counts(const DyadicPointSet& points,
                                   const std::vector<int>& scales) {
  // In z-order, cells sharing a prefix pair at any scale are contiguous, so
  // one sort serves every requested scale.
  std::vector<u128> keys;
  if (points.dims == 1) {
    keys.assign(points.cells.begin(), points.cells.end());
  } else {
    keys.reserve(points.count());
    for (size_t i = 0; i < points.cells.size(); i += 2)
      keys.push_back(morton_key(points.cells[i], points.cells[i + 1]));
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

  std::vector<ScaleCount> out;
  out.reserve(scales.size());
  for (int k : scales) {
    if (k < 0 || k > points.R)
      throw std::domain_error("box counts: scale " + std::to_string(k) +
                              " exceeds precision " + std::to_string(points.R));
    const int d = (points.R - k) * points.dims;
    u64 n = 0;
    u128 prev = 0;
    bool first = true;
    for (u128 c : keys) {
      u128 pre = d >= 128 ? 0 : (c >> d);
      if (first || pre != prev) ++n;
      prev = pre;
      first = false;
    }
    out.push_back({k, n});
  }
  return out;
}

Regression dim_regress(const std::vector<ScaleCount>& counts) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& c : counts) {
    if (c.n == 0) throw std::domain_error("regression: zero count");
    pts.push_back({(double)c.k, std::log2((double)c.n)});
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  size_t distinct = 0;
  for (size_t i = 0; i < pts.size(); ++i)
    if (i == 0 || pts[i].first != pts[i - 1].first) ++distinct;
  if (distinct < 2)
    throw std::domain_error("regression: need at least 2 distinct scales");

  const double n = (double)pts.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  Regression r;
  r.slope = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - r.slope * sx) / n;
  double ss = 0;
  for (auto [x, y] : pts) {
    double e = y - (r.slope * x + intercept);
    ss += e * e;
  }
  r.stderr_slope = pts.size() > 2
                       ? std::sqrt(ss / ((n - 2) * (sxx - sx * sx / n)))
                       : 0.0;
  return r;
}

namespace {

// Certified lower bound of log2(n) on the 2^-16 grid; exact for powers of 2.
Rational log2_count_lb(u64 n) {
  if (n == 0) throw std::domain_error("log2: zero count");
  return log2_lb(n);
}

}  // namespace

Rational lower_box_estimate(const std::vector<ScaleCount>& counts,
                            const std::vector<int>& anchors) {
  if (anchors.empty()) throw std::domain_error("lower box: no anchor scales");
  bool found_any = false;
  Rational best(0);
  for (int a : anchors) {
    for (const auto& c : counts) {
      if (c.k != a) continue;
      if (c.k == 0) throw std::domain_error("lower box: anchor scale 0");
      Rational v = log2_count_lb(c.n) / Rational(c.k);
      if (!found_any || v < best) best = v;
      found_any = true;
    }
  }
  if (!found_any)
    throw std::domain_error("lower box: anchors not present among the counted scales");
  return best;
}

void write_point_set(std::ostream& out, const DyadicPointSet& s, bool binary) {
  if (binary) {
    out.write("DPS1", 4);
    std::uint32_t r = (std::uint32_t)s.R, d = (std::uint32_t)s.dims;
    u64 n = s.count();
    out.write(reinterpret_cast<const char*>(&r), 4);
    out.write(reinterpret_cast<const char*>(&d), 4);
    out.write(reinterpret_cast<const char*>(&n), 8);
    out.write(reinterpret_cast<const char*>(s.cells.data()),
              (std::streamsize)(s.cells.size() * 8));
    return;
  }
  out << s.R << " " << s.dims << " " << s.count() << "\n";
  if (s.dims == 1) {
    for (u64 c : s.cells) out << c << "\n";
  } else {
    for (size_t i = 0; i < s.cells.size(); i += 2)
      out << s.cells[i] << " " << s.cells[i + 1] << "\n";
  }
}

void write_point_set_file(const std::string& path, const DyadicPointSet& s,
                          bool binary) {
  std::ofstream f(path, binary ? std::ios::binary : std::ios::out);
  if (!f) throw std::runtime_error("point set: cannot open " + path);
  write_point_set(f, s, binary);
}

DyadicPointSet read_point_set(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (in.gcount() == 4 && std::memcmp(magic, "DPS1", 4) == 0) {
    std::uint32_t r, d;
    u64 n;
    in.read(reinterpret_cast<char*>(&r), 4);
    in.read(reinterpret_cast<char*>(&d), 4);
    in.read(reinterpret_cast<char*>(&n), 8);
    if (!in || (d != 1 && d != 2)) throw std::runtime_error("point set: bad binary header");
    DyadicPointSet s;
    s.R = (int)r;
    s.dims = (int)d;
    s.cells.resize(n * d);
    in.read(reinterpret_cast<char*>(s.cells.data()), (std::streamsize)(s.cells.size() * 8));
    if (!in) throw std::runtime_error("point set: truncated binary data");
    return s;
  }
  // text: rewind the peeked bytes by re-parsing from a buffer
  std::string rest(magic, (size_t)in.gcount());
  std::stringstream all;
  all << rest << in.rdbuf();
  DyadicPointSet s;
  u64 n;
  if (!(all >> s.R >> s.dims >> n)) throw std::runtime_error("point set: bad header");
  if (s.dims != 1 && s.dims != 2) throw std::runtime_error("point set: bad dims");
  s.cells.resize(n * (u64)s.dims);
  for (auto& c : s.cells)
    if (!(all >> c)) throw std::runtime_error("point set: truncated values");
  return s;
}

DyadicPointSet read_point_set_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("point set: cannot open " + path);
  return read_point_set(f);
}

}  // namespace projlab
