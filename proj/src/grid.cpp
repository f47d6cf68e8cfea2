#include "gridslice/grid.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

namespace gridslice {

int row_count(RowSet s) { return std::popcount(s); }

std::vector<int> rows_of(RowSet s) {
  std::vector<int> out;
  for (int r = 0; s != 0; ++r, s >>= 1) {
    if (s & 1U) out.push_back(r);
  }
  return out;
}

std::string format_rows(RowSet s) {
  std::string out = "{";
  bool first = true;
  for (int r : rows_of(s)) {
    if (!first) out += ",";
    out += std::to_string(r);
    first = false;
  }
  return out + "}";
}

namespace {

void check_permutation(int n, const std::vector<int>& sigma, const char* name) {
  if (static_cast<int>(sigma.size()) != n) {
    throw ValidationError(std::string(name) + " has " + std::to_string(sigma.size()) +
                          " entries, expected " + std::to_string(n));
  }
  std::vector<int> first_seen(static_cast<std::size_t>(n) + 1, 0);
  std::string bad;
  for (int a = 1; a <= n; ++a) {
    int v = sigma[static_cast<std::size_t>(a - 1)];
    if (v < 1 || v > n) {
      bad += " " + std::to_string(a) + "(value " + std::to_string(v) + " out of range)";
      continue;
    }
    auto& seen = first_seen[static_cast<std::size_t>(v)];
    if (seen != 0) {
      bad += " " + std::to_string(a) + "(repeats value " + std::to_string(v) + " of index " +
             std::to_string(seen) + ")";
    } else {
      seen = a;
    }
  }
  if (!bad.empty()) throw ValidationError(std::string(name) + " is not a permutation at index" + bad);
}

void check_size(int n) {
  if (n < 1 || n > kMaxGridSize) {
    throw ValidationError("grid size must be in 1.." + std::to_string(kMaxGridSize) + ", got " +
                          std::to_string(n));
  }
}

// Adds the slab markers in columns [a_lo, a_hi] whose rows r satisfy
// row_lo < r - 1/2 < row_hi.
void count_markers(const PartialDiagram& p, int a_lo, int a_hi, int row_lo, int row_hi,
                   Region& region) {
  region.x_counts.assign(static_cast<std::size_t>(p.n), 0);
  region.o_counts.assign(static_cast<std::size_t>(p.n), 0);
  a_lo = std::max(a_lo, p.first_marker());
  a_hi = std::min(a_hi, p.last_marker());
  for (int a = a_lo; a <= a_hi; ++a) {
    int rx = p.x_row(a);
    int ro = p.o_row(a);
    if (row_lo < rx && rx <= row_hi) region.x_counts[static_cast<std::size_t>(a - 1)] = 1;
    if (row_lo < ro && ro <= row_hi) region.o_counts[static_cast<std::size_t>(a - 1)] = 1;
  }
}

// Columns where x and y differ, or nullopt if they are not comparable.
std::optional<std::vector<int>> differing_columns(const Generator& x, const Generator& y) {
  if (x.first_col != y.first_col || x.size() != y.size()) return std::nullopt;
  std::vector<int> cols;
  for (int c = x.first_col; c < x.end_col(); ++c) {
    if (x.row(c) != y.row(c)) cols.push_back(c);
  }
  return cols;
}

bool any_point_between(const Generator& x, int col_from, int col_to, int row_lo, int row_hi) {
  for (int c = std::max(col_from, x.first_col); c < std::min(col_to, x.end_col()); ++c) {
    int r = x.row(c);
    if (row_lo < r && r < row_hi) return true;
  }
  return false;
}

void enumerate_injections(int width, int n_rows, std::vector<int>& current, RowSet used,
                          int first_col, std::vector<Generator>& out) {
  if (static_cast<int>(current.size()) == width) {
    out.push_back(Generator{first_col, current});
    return;
  }
  for (int r = 0; r < n_rows; ++r) {
    if (has_row(used, r)) continue;
    current.push_back(r);
    enumerate_injections(width, n_rows, current, used | row_bit(r), first_col, out);
    current.pop_back();
  }
}

}  // namespace

PlanarGridDiagram validate_planar(int n, std::vector<int> sigma_x, std::vector<int> sigma_o) {
  check_size(n);
  check_permutation(n, sigma_x, "sigma_x");
  check_permutation(n, sigma_o, "sigma_o");
  return PlanarGridDiagram{n, std::move(sigma_x), std::move(sigma_o)};
}

ToroidalGridDiagram validate_toroidal(int n, std::vector<int> sigma_x, std::vector<int> sigma_o) {
  auto d = validate_planar(n, std::move(sigma_x), std::move(sigma_o));
  return ToroidalGridDiagram{d.n, std::move(d.sigma_x), std::move(d.sigma_o)};
}

ToroidalGridDiagram wrap(const PlanarGridDiagram& d) {
  return ToroidalGridDiagram{d.n, d.sigma_x, d.sigma_o};
}

std::string to_string(SlabKind kind) {
  switch (kind) {
    case SlabKind::whole: return "whole";
    case SlabKind::type_a: return "typeA";
    case SlabKind::type_d: return "typeD";
    case SlabKind::middle: return "middle";
  }
  return "?";
}

RowSet PartialDiagram::x_row_set() const {
  RowSet s = 0;
  for (int r : x_rows) s |= row_bit(r);
  return s;
}

RowSet PartialDiagram::o_row_set() const {
  RowSet s = 0;
  for (int r : o_rows) s |= row_bit(r);
  return s;
}

void validate_partial(const PartialDiagram& p) {
  check_size(p.n);
  bool ok = false;
  switch (p.kind) {
    case SlabKind::whole: ok = p.col_lo == 0 && p.col_hi == p.n + 1; break;
    case SlabKind::type_a: ok = p.col_lo == 0 && p.col_hi >= 1 && p.col_hi <= p.n; break;
    case SlabKind::type_d: ok = p.col_hi == p.n + 1 && p.col_lo >= 1 && p.col_lo <= p.n; break;
    case SlabKind::middle: ok = p.col_lo >= 1 && p.col_lo <= p.col_hi && p.col_hi <= p.n; break;
  }
  if (!ok) {
    throw ValidationError("slab columns [" + std::to_string(p.col_lo) + "," +
                          std::to_string(p.col_hi) + ") inconsistent with kind " + to_string(p.kind));
  }
  auto expected = static_cast<std::size_t>(std::max(0, p.marker_count()));
  if (p.x_rows.size() != expected || p.o_rows.size() != expected) {
    throw ValidationError("slab marker maps must cover columns " + std::to_string(p.first_marker()) +
                          ".." + std::to_string(p.last_marker()));
  }
  for (const auto* rows : {&p.x_rows, &p.o_rows}) {
    RowSet seen = 0;
    for (int r : *rows) {
      if (r < 1 || r > p.n || has_row(seen, r)) {
        throw ValidationError("slab marker rows must be distinct values in 1..n");
      }
      seen |= row_bit(r);
    }
  }
}

PartialDiagram as_slab(const PlanarGridDiagram& d) {
  return PartialDiagram{d.n, 0, d.n + 1, SlabKind::whole, d.sigma_x, d.sigma_o};
}

RowSet Generator::row_set() const {
  RowSet s = 0;
  for (int r : rows) s |= row_bit(r);
  return s;
}

Generator from_one_line(const std::vector<int>& perm, int first_col) {
  Generator g{first_col, {}};
  g.rows.reserve(perm.size());
  for (int v : perm) g.rows.push_back(v - 1);
  return g;
}

std::string to_one_line(const Generator& g) {
  std::string out = "[";
  for (std::size_t i = 0; i < g.rows.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(g.rows[i] + 1);
  }
  return out + "]";
}

std::string to_point_list(const Generator& g) {
  std::string out = "{";
  for (int c = g.first_col; c < g.end_col(); ++c) {
    if (c != g.first_col) out += ",";
    out += "(" + std::to_string(c) + "," + std::to_string(g.row(c)) + ")";
  }
  return out + "}";
}

Generator concat(const Generator& left, const Generator& right) {
  if (left.end_col() != right.first_col) throw ValidationError("concat: generators not adjacent");
  Generator g = left;
  g.rows.insert(g.rows.end(), right.rows.begin(), right.rows.end());
  return g;
}

Generator restrict_columns(const Generator& g, int lo, int hi) {
  if (lo < g.first_col || hi > g.end_col() || lo > hi) {
    throw ValidationError("restrict_columns: range outside generator");
  }
  return Generator{lo, std::vector<int>(g.rows.begin() + (lo - g.first_col),
                                        g.rows.begin() + (hi - g.first_col))};
}

bool is_generator_of(const PartialDiagram& p, const Generator& g) {
  if (g.first_col != p.col_lo || g.size() != p.width()) return false;
  RowSet seen = 0;
  for (int r : g.rows) {
    if (r < 0 || r > p.n || has_row(seen, r)) return false;
    seen |= row_bit(r);
  }
  return true;
}

std::vector<Generator> generators(const PartialDiagram& p) {
  std::vector<Generator> out;
  std::vector<int> current;
  enumerate_injections(p.width(), p.n + 1, current, 0, p.col_lo, out);
  return out;
}

std::vector<Generator> generators(const ToroidalGridDiagram& d) {
  std::vector<Generator> out;
  std::vector<int> current;
  enumerate_injections(d.n, d.n, current, 0, 0, out);
  return out;
}

int lower_left_count(std::span<const HalfPoint> e, std::span<const HalfPoint> f) {
  int count = 0;
  for (const auto& a : e) {
    for (const auto& b : f) {
      if (a.x2 < b.x2 && a.y2 < b.y2) ++count;
    }
  }
  return count;
}

std::vector<HalfPoint> points_of(const Generator& g) {
  std::vector<HalfPoint> out;
  out.reserve(g.rows.size());
  for (int c = g.first_col; c < g.end_col(); ++c) out.push_back({2 * c, 2 * g.row(c)});
  return out;
}

std::vector<HalfPoint> x_markers(const PartialDiagram& p) {
  std::vector<HalfPoint> out;
  for (int a = p.first_marker(); a <= p.last_marker(); ++a) out.push_back({2 * a - 1, 2 * p.x_row(a) - 1});
  return out;
}

std::vector<HalfPoint> o_markers(const PartialDiagram& p) {
  std::vector<HalfPoint> out;
  for (int a = p.first_marker(); a <= p.last_marker(); ++a) out.push_back({2 * a - 1, 2 * p.o_row(a) - 1});
  return out;
}

bool Region::x_free() const {
  return std::all_of(x_counts.begin(), x_counts.end(), [](int c) { return c == 0; });
}

int Region::o_total() const { return std::accumulate(o_counts.begin(), o_counts.end(), 0); }

Monomial Region::weight() const { return Monomial(o_counts); }

std::optional<Region> planar_rect(const PartialDiagram& p, const Generator& x, const Generator& y) {
  auto diff = differing_columns(x, y);
  if (!diff || diff->size() != 2) return std::nullopt;
  int i = (*diff)[0];
  int j = (*diff)[1];
  int lo = x.row(i);
  int hi = x.row(j);
  if (lo >= hi || y.row(i) != hi || y.row(j) != lo) return std::nullopt;
  Region r;
  r.kind = RegionKind::rectangle;
  r.col_lo = i;
  r.col_hi = j;
  r.row_lo = lo;
  r.row_hi = hi;
  count_markers(p, i + 1, j, lo, hi, r);
  r.empty = !any_point_between(x, i + 1, j, lo, hi);
  return r;
}

std::optional<Region> planar_rect(const PlanarGridDiagram& d, const Generator& x, const Generator& y) {
  return planar_rect(as_slab(d), x, y);
}

std::vector<Region> toroidal_rects(const ToroidalGridDiagram& d, const Generator& x,
                                   const Generator& y) {
  std::vector<Region> out;
  auto diff = differing_columns(x, y);
  if (!diff || diff->size() != 2) return out;
  const int n = d.n;
  auto mod = [n](int v) { return ((v % n) + n) % n; };
  int i = (*diff)[0];
  int j = (*diff)[1];
  if (y.row(i) != x.row(j) || y.row(j) != x.row(i)) return out;

  // Lower-left corner at column c1 of x, upper-right at column c2.
  for (auto [c1, c2] : {std::pair{i, j}, std::pair{j, i}}) {
    int r1 = x.row(c1);
    int r2 = x.row(c2);
    int w = mod(c2 - c1);
    int h = mod(r2 - r1);
    Region reg;
    reg.kind = RegionKind::rectangle;
    reg.col_lo = c1;
    reg.col_hi = c1 + w;
    reg.row_lo = r1;
    reg.row_hi = r1 + h;
    reg.x_counts.assign(static_cast<std::size_t>(n), 0);
    reg.o_counts.assign(static_cast<std::size_t>(n), 0);
    for (int a = 1; a <= n; ++a) {
      if (mod(a - 1 - c1) >= w) continue;
      int rx = d.sigma_x[static_cast<std::size_t>(a - 1)];
      int ro = d.sigma_o[static_cast<std::size_t>(a - 1)];
      if (mod(rx - 1 - r1) < h) reg.x_counts[static_cast<std::size_t>(a - 1)] = 1;
      if (mod(ro - 1 - r1) < h) reg.o_counts[static_cast<std::size_t>(a - 1)] = 1;
    }
    reg.empty = true;
    for (int c = 0; c < n; ++c) {
      int dc = mod(c - c1);
      int dr = mod(x.row(c) - r1);
      if (dc > 0 && dc < w && dr > 0 && dr < h) reg.empty = false;
    }
    out.push_back(std::move(reg));
  }
  return out;
}

std::optional<HalfStrip> half_strip_left_edge(const PartialDiagram& p, const Generator& x,
                                              const Generator& y) {
  if (!p.left_interface()) return std::nullopt;
  auto diff = differing_columns(x, y);
  if (!diff || diff->size() != 1) return std::nullopt;
  int m = (*diff)[0];
  int hi = x.row(m);
  int lo = y.row(m);
  if (lo >= hi) return std::nullopt;
  HalfStrip h{lo, hi, {}};
  h.region.kind = RegionKind::halfstrip_left_edge;
  h.region.col_lo = p.col_lo;
  h.region.col_hi = m;
  h.region.row_lo = lo;
  h.region.row_hi = hi;
  count_markers(p, p.col_lo + 1, m, lo, hi, h.region);
  h.region.empty = !any_point_between(x, p.col_lo, m, lo, hi);
  return h;
}

std::optional<HalfStrip> half_strip_right_edge(const PartialDiagram& p, const Generator& x,
                                               const Generator& y) {
  if (!p.right_interface()) return std::nullopt;
  auto diff = differing_columns(x, y);
  if (!diff || diff->size() != 1) return std::nullopt;
  int m = (*diff)[0];
  int lo = x.row(m);
  int hi = y.row(m);
  if (lo >= hi) return std::nullopt;
  HalfStrip h{lo, hi, {}};
  h.region.kind = RegionKind::halfstrip_right_edge;
  h.region.col_lo = m;
  h.region.col_hi = p.col_hi;
  h.region.row_lo = lo;
  h.region.row_hi = hi;
  count_markers(p, m + 1, p.col_hi, lo, hi, h.region);
  h.region.empty = !any_point_between(x, m + 1, p.col_hi, lo, hi);
  return h;
}

std::optional<Region> strip(const PartialDiagram& p, int lo, int hi, const Generator& x) {
  if (!p.left_interface() || !p.right_interface() || lo >= hi) return std::nullopt;
  for (int r : x.rows) {
    if (lo <= r && r <= hi) return std::nullopt;
  }
  Region reg;
  reg.kind = RegionKind::strip;
  reg.col_lo = p.col_lo;
  reg.col_hi = p.col_hi;
  reg.row_lo = lo;
  reg.row_hi = hi;
  count_markers(p, p.col_lo + 1, p.col_hi, lo, hi, reg);
  reg.empty = true;
  return reg;
}

std::vector<PartialDiagram> slice(const PlanarGridDiagram& d, const std::vector<int>& cuts) {
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (cuts[i] < 1 || cuts[i] > d.n) {
      throw ValidationError("cut " + std::to_string(cuts[i]) + " outside 1.." + std::to_string(d.n));
    }
    if (i > 0 && cuts[i] <= cuts[i - 1]) throw ValidationError("cuts must be strictly ascending");
  }
  std::vector<int> bounds{0};
  bounds.insert(bounds.end(), cuts.begin(), cuts.end());
  bounds.push_back(d.n + 1);

  std::vector<PartialDiagram> out;
  for (std::size_t s = 0; s + 1 < bounds.size(); ++s) {
    PartialDiagram p;
    p.n = d.n;
    p.col_lo = bounds[s];
    p.col_hi = bounds[s + 1];
    bool left = s > 0;
    bool right = s + 2 < bounds.size();
    p.kind = left ? (right ? SlabKind::middle : SlabKind::type_d)
                  : (right ? SlabKind::type_a : SlabKind::whole);
    for (int a = p.first_marker(); a <= p.last_marker(); ++a) {
      p.x_rows.push_back(d.sigma_x[static_cast<std::size_t>(a - 1)]);
      p.o_rows.push_back(d.sigma_o[static_cast<std::size_t>(a - 1)]);
    }
    out.push_back(std::move(p));
  }
  return out;
}

PartialDiagram glue(const PartialDiagram& left, const PartialDiagram& right) {
  if (left.n != right.n) throw ValidationError("glue: grid sizes differ");
  if (!left.right_interface() || !right.left_interface()) {
    throw ValidationError("glue: slabs have no matching interface");
  }
  if (left.col_hi != right.col_lo) {
    throw ValidationError("glue: left slab ends at column " + std::to_string(left.col_hi) +
                          " but right slab starts at " + std::to_string(right.col_lo));
  }
  if ((left.x_row_set() & right.x_row_set()) != 0 || (left.o_row_set() & right.o_row_set()) != 0) {
    throw ValidationError("glue: marker rows clash");
  }
  PartialDiagram p;
  p.n = left.n;
  p.col_lo = left.col_lo;
  p.col_hi = right.col_hi;
  bool l = left.left_interface();
  bool r = right.right_interface();
  p.kind = l ? (r ? SlabKind::middle : SlabKind::type_d) : (r ? SlabKind::type_a : SlabKind::whole);
  p.x_rows = left.x_rows;
  p.x_rows.insert(p.x_rows.end(), right.x_rows.begin(), right.x_rows.end());
  p.o_rows = left.o_rows;
  p.o_rows.insert(p.o_rows.end(), right.o_rows.begin(), right.o_rows.end());
  validate_partial(p);
  return p;
}

PlanarGridDiagram to_planar(const PartialDiagram& p) {
  if (p.kind != SlabKind::whole) throw ValidationError("to_planar: slab still has an interface");
  return validate_planar(p.n, p.x_rows, p.o_rows);
}

}  // namespace gridslice
