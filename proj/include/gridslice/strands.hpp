#pragma once

// The strand algebra A_{N,k}. Its F2[U]-basis is the set of upward-veering
// partial bijections f: S -> T between k-subsets of {0..N} (f(i) >= i). The
// product concatenates (first f, then g) and vanishes unless crossings add;
// the differential smooths one crossing at a time, keeping only smoothings
// that lower the crossing number by exactly one.

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gridslice/coeffs.hpp"
#include "gridslice/complexes.hpp"
#include "gridslice/grid.hpp"

namespace gridslice {

inline constexpr int kMaxPositions = 16;

/// A partial bijection on positions {0..n}. Elements of A_{N,k} are upward
/// veering; the mirrored algebra used by the DD bimodule holds downward
/// veering ones, and every algebra operation below works for both.
class StrandElement {
 public:
  StrandElement() { targets_.fill(-1); }
  /// No strands on positions {0..n}.
  explicit StrandElement(int n);

  /// Strands given as (source, target) pairs; throws if not injective.
  static StrandElement from_pairs(int n, const std::vector<std::pair<int, int>>& strands);

  int n() const { return n_; }
  /// Target of the strand starting at i, or -1.
  int target(int i) const { return targets_[static_cast<std::size_t>(i)]; }
  RowSet source() const;
  RowSet target_set() const;
  int strand_count() const;
  bool is_upward() const;
  bool is_downward() const;
  std::vector<std::pair<int, int>> pairs() const;
  std::string to_string() const;

  friend bool operator==(const StrandElement&, const StrandElement&) = default;
  friend auto operator<=>(const StrandElement&, const StrandElement&) = default;

 private:
  std::int8_t n_ = 0;
  std::array<std::int8_t, kMaxPositions> targets_{};

  friend StrandElement set_strand(StrandElement f, int from, int to);
};

using AlgebraElement = FreeElement<StrandElement>;

/// All upward-veering elements with k strands on {0..n}, sorted. Cached.
const std::vector<StrandElement>& basis(int n, int k);
/// Mirror images of basis(n, k): the downward-veering basis.
const std::vector<StrandElement>& mirrored_basis(int n, int k);

/// Number of inversions: pairs i < j in the source with f(i) > f(j).
int cross(const StrandElement& f);

/// Concatenation f then g, or nothing when the idempotents do not match or
/// crossings fail to add.
std::optional<StrandElement> mul_basis(const StrandElement& f, const StrandElement& g);

/// Smoothings of single crossings that lower cross() by exactly one.
std::vector<StrandElement> diff_basis(const StrandElement& f);

/// Identity on s minus {i}, plus the strand i -> j.
StrandElement rho(int n, RowSet s, int i, int j);
StrandElement idempotent(int n, RowSet s);

AlgebraElement algebra_mul(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement algebra_diff(const AlgebraElement& a);
AlgebraElement as_element(const StrandElement& f, int n_vars);

/// Rows (1..N) of the X and O markers on the algebra's side of the
/// interface; a marker in row r sits at height r - 1/2.
struct InterfaceGradingData {
  RowSet l_x = 0;
  RowSet l_o = 0;
};

/// A = L_X - L_O, mu = cross - 2 L_O, where L_X counts strand crossings with
/// the marker heights of l_x.
Bigrading gradings_alg(const StrandElement& f, const InterfaceGradingData& gd);
Bigrading gradings_alg(const Term<StrandElement>& t, const InterfaceGradingData& gd);

/// Anti-automorphism: positions r -> n - r and reading direction flipped.
StrandElement reverse(const StrandElement& f);
/// Positions r -> n - r only: an isomorphism from upward to downward
/// veering elements.
StrandElement mirror(const StrandElement& f);

/// A single strand move from -> to performed while the occupied set is
/// `source`.
struct StrandMove {
  RowSet source = 0;
  int from = 0;
  int to = 0;

  friend bool operator==(const StrandMove&, const StrandMove&) = default;
};

/// Writes f as a product of single-strand moves, moving the non-fixed
/// strands in decreasing order of destination (downward-veering elements are
/// factored through their mirror image). The product of the moves
/// equals f with additive crossings; a violation throws std::logic_error.
std::vector<StrandMove> factorize(const StrandElement& f);

}  // namespace gridslice
