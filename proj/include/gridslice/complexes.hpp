#pragma once

// Grid chain complexes over F2[U_1..U_N]: the planar complex CFP^- and the
// toroidal complex CFK^-, with Alexander and Maslov gradings.

#include <optional>
#include <vector>

#include "gridslice/coeffs.hpp"
#include "gridslice/grid.hpp"

namespace gridslice {

/// (Alexander, Maslov) bidegree.
struct Bigrading {
  int alexander = 0;
  int maslov = 0;

  Bigrading& operator+=(const Bigrading& o) {
    alexander += o.alexander;
    maslov += o.maslov;
    return *this;
  }
  friend Bigrading operator+(Bigrading a, const Bigrading& b) { return a += b; }
  friend Bigrading operator-(const Bigrading& a, const Bigrading& b) {
    return {a.alexander - b.alexander, a.maslov - b.maslov};
  }
  friend bool operator==(const Bigrading&, const Bigrading&) = default;
  friend auto operator<=>(const Bigrading&, const Bigrading&) = default;
};

/// Each U_l has bidegree (-1, -2).
inline Bigrading monomial_grading(const Monomial& m) { return {-m.degree(), -2 * m.degree()}; }

/// A free F2[U]-complex on an explicit basis of generators. Differentials
/// are stored per basis element with tags indexing `basis`.
struct GradedComplex {
  int n = 0;  // number of U variables
  std::vector<Generator> basis;  // sorted
  std::vector<FreeElement<int>> diff;
  std::vector<Bigrading> grading;

  std::size_t size() const { return basis.size(); }
  /// Index of g in the basis, or -1.
  int index_of(const Generator& g) const;
  /// Extends the differential A-linearly.
  FreeElement<int> apply(const FreeElement<int>& e) const;
  /// Bidegree of the term m * basis[tag].
  Bigrading degree_of(const Term<int>& t) const;
};

/// Number of basis elements x with d(d(x)) != 0.
std::size_t d_squared_failures(const GradedComplex& c);
/// Number of differential terms that fail to preserve A or drop mu by one.
std::size_t grading_violations(const GradedComplex& c);

/// CFP^-: all (N+1)! generators, empty X-free rectangles weighted by U(R).
GradedComplex cfp_complex(const PlanarGridDiagram& d);

/// CFK^-: all N! toroidal generators; gradings read off the standard
/// unwrapping with both additive constants zero.
GradedComplex cfk_complex(const ToroidalGridDiagram& d);

/// A planar diagram and generator extending a slab and one of its generators.
struct Completion {
  PlanarGridDiagram diagram;
  Generator generator;
};

/// Canonical completion: missing marker rows ascending, left-part columns
/// first; missing generator points take the rows of `left_rows` on the left
/// part and the remaining rows on the right part, ascending by column.
Completion canonical_completion(const PartialDiagram& p, const Generator& x, RowSet left_rows);

/// Gradings of a slab generator. For middle slabs `idem` gives the rows
/// occupied to the left of the slab; for type D slabs it is implied.
Bigrading partial_gradings(const PartialDiagram& p, const Generator& x,
                           std::optional<RowSet> idem = std::nullopt);

/// A(x) = I(X,x) - I(O,x), mu(x) = I(x,x) - 2 I(O,x) on a whole diagram.
Bigrading planar_gradings(const PlanarGridDiagram& d, const Generator& x);

}  // namespace gridslice
