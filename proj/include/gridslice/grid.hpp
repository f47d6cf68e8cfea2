#pragma once

// Grid-diagram geometry.
//
// Conventions: beta-lines and generator points are indexed by integer column
// 0..N, alpha-lines by integer row 0..N. Marker a (1-based) sits in the
// middle of the square (a - 1/2, r - 1/2), where r = sigma(a). A slicing
// interface between columns k-1 and k is the vertical line x = k - 1/4; it is
// never stored as a fraction, only as the integer k plus a flag.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gridslice/coeffs.hpp"

namespace gridslice {

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Bit r is set iff row (or strand position) r belongs to the set.
using RowSet = std::uint32_t;

inline constexpr int kMaxGridSize = 14;

inline bool has_row(RowSet s, int r) { return ((s >> r) & 1U) != 0; }
inline RowSet row_bit(int r) { return RowSet{1} << r; }
inline RowSet all_rows(int n) { return (RowSet{1} << (n + 1)) - 1; }
int row_count(RowSet s);
std::vector<int> rows_of(RowSet s);
std::string format_rows(RowSet s);

/// Markers X_a, O_a at (a - 1/2, sigma(a) - 1/2) for a = 1..n.
struct PlanarGridDiagram {
  int n = 0;
  std::vector<int> sigma_x;  // sigma_x[a-1] in 1..n
  std::vector<int> sigma_o;

  friend bool operator==(const PlanarGridDiagram&, const PlanarGridDiagram&) = default;
};

/// Same data, read on the torus R^2 / <(n,0),(0,n)>.
struct ToroidalGridDiagram {
  int n = 0;
  std::vector<int> sigma_x;
  std::vector<int> sigma_o;
};

/// Checks that both maps are permutations of {1..n}. Shared cells
/// (sigma_x(a) == sigma_o(a)) are allowed.
PlanarGridDiagram validate_planar(int n, std::vector<int> sigma_x, std::vector<int> sigma_o);
ToroidalGridDiagram validate_toroidal(int n, std::vector<int> sigma_x, std::vector<int> sigma_o);
ToroidalGridDiagram wrap(const PlanarGridDiagram& d);

enum class SlabKind {
  whole,   // no interface
  type_a,  // interface on the right
  type_d,  // interface on the left
  middle,  // interfaces on both sides
};

std::string to_string(SlabKind kind);

/// A vertical slab of a planar grid diagram. It owns the beta-lines
/// col_lo..col_hi-1 and the markers in columns col_lo+1..min(col_hi, n).
struct PartialDiagram {
  int n = 0;
  int col_lo = 0;
  int col_hi = 0;
  SlabKind kind = SlabKind::whole;
  std::vector<int> x_rows;  // x_rows[a - first_marker()], in 1..n
  std::vector<int> o_rows;

  int width() const { return col_hi - col_lo; }
  int first_marker() const { return col_lo + 1; }
  int last_marker() const { return col_hi < n ? col_hi : n; }
  int marker_count() const { return last_marker() - first_marker() + 1; }
  int x_row(int a) const { return x_rows[static_cast<std::size_t>(a - first_marker())]; }
  int o_row(int a) const { return o_rows[static_cast<std::size_t>(a - first_marker())]; }
  bool left_interface() const { return kind == SlabKind::type_d || kind == SlabKind::middle; }
  bool right_interface() const { return kind == SlabKind::type_a || kind == SlabKind::middle; }

  /// Rows (1..n) holding X (resp. O) markers of this slab.
  RowSet x_row_set() const;
  RowSet o_row_set() const;

  friend bool operator==(const PartialDiagram&, const PartialDiagram&) = default;
};

/// Checks the marker invariants; throws ValidationError.
void validate_partial(const PartialDiagram& p);

/// The whole diagram as a single slab without interfaces.
PartialDiagram as_slab(const PlanarGridDiagram& d);

/// One point per beta-line of a slab, rows pairwise distinct.
struct Generator {
  int first_col = 0;
  std::vector<int> rows;  // rows[c - first_col]

  int size() const { return static_cast<int>(rows.size()); }
  int end_col() const { return first_col + size(); }
  int row(int col) const { return rows[static_cast<std::size_t>(col - first_col)]; }
  RowSet row_set() const;

  friend bool operator==(const Generator&, const Generator&) = default;
  friend auto operator<=>(const Generator&, const Generator&) = default;
};

/// Permutation of {1..m} in one-line notation, read as column c -> row p[c]-1.
Generator from_one_line(const std::vector<int>& perm, int first_col = 0);
std::string to_one_line(const Generator& g);
/// Column:row pairs, e.g. {(1,2),(2,0)}.
std::string to_point_list(const Generator& g);

/// Concatenation of adjacent generators (left.end_col() == right.first_col).
Generator concat(const Generator& left, const Generator& right);
/// Restriction to columns [lo, hi).
Generator restrict_columns(const Generator& g, int lo, int hi);

bool is_generator_of(const PartialDiagram& p, const Generator& g);
/// All injections {col_lo..col_hi-1} -> {0..n}, sorted.
std::vector<Generator> generators(const PartialDiagram& p);
/// Toroidal generators: permutations of {0..n-1}, sorted.
std::vector<Generator> generators(const ToroidalGridDiagram& d);

/// A point with coordinates stored doubled, so half-integers stay exact.
struct HalfPoint {
  int x2 = 0;
  int y2 = 0;
};

/// Number of pairs (e, f) with e strictly to the lower left of f.
int lower_left_count(std::span<const HalfPoint> e, std::span<const HalfPoint> f);

std::vector<HalfPoint> points_of(const Generator& g);
std::vector<HalfPoint> x_markers(const PartialDiagram& p);
std::vector<HalfPoint> o_markers(const PartialDiagram& p);

enum class RegionKind { rectangle, halfstrip_left_edge, halfstrip_right_edge, strip };

/// A rectangular domain. Its vertical edges are the beta-lines col_lo and
/// col_hi, except that an edge on an interface at column c lies at c - 1/4.
/// For toroidal rectangles, columns and rows are read mod n.
struct Region {
  RegionKind kind = RegionKind::rectangle;
  int col_lo = 0;
  int col_hi = 0;
  int row_lo = 0;
  int row_hi = 0;
  std::vector<int> x_counts;  // x_counts[a-1] = X_a(R)
  std::vector<int> o_counts;
  bool empty = true;

  bool x_free() const;
  int o_total() const;
  /// U(R) = prod U_a^{O_a(R)}.
  Monomial weight() const;
};

/// The unique rectangle from x to y inside a slab, if any.
std::optional<Region> planar_rect(const PartialDiagram& p, const Generator& x, const Generator& y);
std::optional<Region> planar_rect(const PlanarGridDiagram& d, const Generator& x, const Generator& y);

/// Rectangles on the torus connecting x to y: always zero or two.
std::vector<Region> toroidal_rects(const ToroidalGridDiagram& d, const Generator& x,
                                   const Generator& y);

/// A half-strip together with the interface chord (lo, hi) it covers.
struct HalfStrip {
  int lo = 0;
  int hi = 0;
  Region region;
};

/// Half-strip with its left edge on the left interface: x has its point in
/// column m at row hi, y has it at row lo < hi, everything else agrees.
std::optional<HalfStrip> half_strip_left_edge(const PartialDiagram& p, const Generator& x,
                                              const Generator& y);

/// Half-strip with its right edge on the right interface: the point of x in
/// column m moves up from row lo to row hi.
std::optional<HalfStrip> half_strip_right_edge(const PartialDiagram& p, const Generator& x,
                                               const Generator& y);

/// The full horizontal strip between rows lo and hi of a middle slab, present
/// only if no point of x lies in it, boundary rows included.
std::optional<Region> strip(const PartialDiagram& p, int lo, int hi, const Generator& x);

/// Cuts at the lines x = k - 1/4 for the given ascending columns k.
std::vector<PartialDiagram> slice(const PlanarGridDiagram& d, const std::vector<int>& cuts);

/// Inverse of slice for two adjacent slabs.
PartialDiagram glue(const PartialDiagram& left, const PartialDiagram& right);

/// The planar diagram of a whole slab; throws if the slab has interfaces.
PlanarGridDiagram to_planar(const PartialDiagram& p);

}  // namespace gridslice
