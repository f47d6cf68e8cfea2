#pragma once

// Bordered modules of sliced planar grid diagrams.
//
//   TypeAModule   right module over A_{N,k} of a left slab [0,k) (CPA^-); the
//                 same type, flagged `downward`, holds the absorbing module of
//                 a right slab over the mirrored algebra.
//   TypeDModule   type D structure over A_{N,k} of a right slab [k,N+1)
//                 (CPD^-), stored as generator differentials.
//   MiddleModule  DA bimodule of a middle slab [k,l) (CPDA^-).
//   DDBimodule    the interface bimodule CPDD^-_{N,k}.
//
// Type D data is stored as delta(y) = d(I (x) y), a sum of U^m * a (x) y'
// terms; the differential on arbitrary elements follows by the Leibniz rule.

#include <string>
#include <utility>
#include <vector>

#include "gridslice/coeffs.hpp"
#include "gridslice/complexes.hpp"
#include "gridslice/grid.hpp"
#include "gridslice/strands.hpp"

namespace gridslice {

class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// a (x) basis[g]: an algebra coefficient on the left of a generator.
using DTag = std::pair<StrandElement, int>;
using DElement = FreeElement<DTag>;

/// Sparse chord-indexed table: entry (lo, hi) of one generator.
template <class Value>
using ChordRow = std::vector<std::pair<int, Value>>;

inline int chord_key(int lo, int hi) { return lo * kMaxPositions + hi; }

struct TypeAModule {
  PartialDiagram part;
  /// Acts through downward-veering elements: chord (lo, hi) then moves a
  /// point from row hi down to row lo across the left interface.
  bool downward = false;
  std::vector<Generator> basis;  // sorted
  std::vector<FreeElement<int>> diff;
  std::vector<Bigrading> grading;  // empty when downward
  std::vector<ChordRow<FreeElement<int>>> action;

  int n_vars() const { return part.n; }
  std::size_t size() const { return basis.size(); }
  int index_of(const Generator& g) const;
  /// The right idempotent: x . I_S = x iff S = Im(sigma_x).
  RowSet idempotent(int g) const { return basis[static_cast<std::size_t>(g)].row_set(); }
  FreeElement<int> act_rho(int g, int lo, int hi) const;
  FreeElement<int> act_basis(int g, const StrandElement& f) const;
  FreeElement<int> act(const FreeElement<int>& x, const StrandElement& f) const;
  FreeElement<int> apply_diff(const FreeElement<int>& x) const;
  /// Markers 1..k, the side of the interface carrying the algebra.
  InterfaceGradingData algebra_grading() const;
};

struct TypeDModule {
  PartialDiagram part;
  std::vector<Generator> basis;  // sorted
  std::vector<DElement> delta;
  std::vector<Bigrading> grading;

  int n_vars() const { return part.n; }
  std::size_t size() const { return basis.size(); }
  int index_of(const Generator& g) const;
  /// I_S y != 0 iff S is the complement of Im(sigma_y).
  RowSet idempotent(int g) const;
  DElement generator_element(int g) const;
  DElement differential(const DElement& e) const;
  /// All pairs (a, y) with rightIdem(a) = idempotent(y).
  std::vector<DTag> full_basis() const;
  /// Rows not holding this slab's markers.
  InterfaceGradingData algebra_grading() const;
};

/// I_S x: a generator of a middle slab together with its left idempotent.
struct MiddleGenerator {
  RowSet idem = 0;
  Generator x;

  friend bool operator==(const MiddleGenerator&, const MiddleGenerator&) = default;
  friend auto operator<=>(const MiddleGenerator&, const MiddleGenerator&) = default;
};

struct MiddleModule {
  PartialDiagram part;
  std::vector<MiddleGenerator> basis;  // sorted
  std::vector<DElement> delta;         // coefficients in A_{N,k}
  std::vector<Bigrading> grading;
  std::vector<ChordRow<DElement>> action;  // right action of rho_{lo,hi} in A_{N,l}

  int n_vars() const { return part.n; }
  std::size_t size() const { return basis.size(); }
  int index_of(const MiddleGenerator& g) const;
  /// (I_S x) . I_T != 0 iff T = S u Im(sigma_x).
  RowSet right_idempotent(int g) const;
  DElement generator_element(int g) const;
  DElement act_rho(int g, int lo, int hi) const;
  DElement act_basis(int g, const StrandElement& f) const;
  /// (a (x) xi) . f = a * (xi . f).
  DElement act(const DElement& e, const StrandElement& f) const;
  DElement differential(const DElement& e) const;
  /// All pairs (a, I_S x) with rightIdem(a) = S.
  std::vector<DTag> full_basis() const;
  InterfaceGradingData left_grading() const;
  InterfaceGradingData right_grading() const;
};

/// (a, c) with a in A_{N,k} and c downward veering in the mirrored algebra.
using DDTag = std::pair<StrandElement, StrandElement>;
using DDElement = FreeElement<DDTag>;

struct DDBimodule {
  int n = 0;
  int k = 0;
  std::vector<RowSet> generators;  // S, standing for (I_S, I'_{complement of S})
  std::vector<DDElement> delta;

  int index_of(RowSet s) const;
  DDElement generator_element(RowSet s) const;
  DDElement differential(const DDElement& e) const;
  /// All (a, c) with rightIdem(a) = complement of rightIdem(c).
  std::vector<DDTag> full_basis() const;
};

TypeAModule cpa(const PartialDiagram& part);
FreeElement<int> cpa_act_rho(const TypeAModule& m, const Generator& x, int i, int j);
FreeElement<int> cpa_act_basis(const TypeAModule& m, const Generator& x, const StrandElement& f);

TypeDModule cpd(const PartialDiagram& part);
MiddleModule cpda(const PartialDiagram& part);
DDBimodule cpdd(int n, int k);
/// The right slab as a module absorbing downward half-strips.
TypeAModule cpa_abs(const PartialDiagram& part);

GradedComplex pair_AD(const TypeAModule& ma, const TypeDModule& md);
TypeAModule tensor_A_DA(const TypeAModule& ma, const MiddleModule& mm);
TypeDModule tensor_DA_D(const MiddleModule& mm, const TypeDModule& md);
TypeDModule tensor_Aabs_DD(const TypeAModule& mabs, const DDBimodule& dd);

/// Empty when equal; otherwise a description of the first difference.
std::string first_difference(const GradedComplex& a, const GradedComplex& b);
std::string first_difference(const TypeAModule& a, const TypeAModule& b);
std::string first_difference(const TypeDModule& a, const TypeDModule& b);

std::string format_element(const FreeElement<int>& e, const std::vector<Generator>& basis);
std::string format_element(const DElement& e, const std::vector<Generator>& basis);

}  // namespace gridslice
