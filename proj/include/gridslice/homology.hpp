#pragma once

// Bigraded homology over F2 of a free F2[U_1..U_N]-complex, one finite
// (A, mu) bidegree at a time.

#include <cstdint>
#include <map>
#include <vector>

#include "gridslice/bordered.hpp"
#include "gridslice/complexes.hpp"

namespace gridslice {

struct BidegreeWindow {
  int a_min = 0;
  int a_max = 0;
  int mu_min = 0;
  int mu_max = 0;

  bool empty() const { return a_min > a_max || mu_min > mu_max; }
  bool contains(const Bigrading& g) const {
    return a_min <= g.alexander && g.alexander <= a_max && mu_min <= g.maslov && g.maslov <= mu_max;
  }
};

/// F2-basis of the bidegree: all U^m x with A(x) - |m| = A and
/// mu(x) - 2|m| = mu, sorted.
std::vector<Term<int>> bigraded_basis(const GradedComplex& c, Bigrading degree);

/// All monomials in n variables of total degree d, sorted.
std::vector<Monomial> monomials_of_degree(int n, int d);

using BitRow = std::vector<std::uint64_t>;

BitRow make_bit_row(const std::vector<int>& bits);
/// Rank over F2 by XOR elimination on packed words.
std::size_t f2_rank(std::vector<BitRow> rows);

struct HomologyReport {
  BidegreeWindow window;
  /// Largest mu at which chain groups and ranks were computed: one above
  /// the window, for the incoming differential.
  int mu_computed_max = 0;
  std::map<Bigrading, std::size_t> chain_dims;
  /// Rank of d leaving each bidegree.
  std::map<Bigrading, std::size_t> ranks;
  std::map<Bigrading, std::size_t> dims;

  std::size_t dim(int a, int mu) const;
  std::size_t total() const;
};

/// Throws StructuralError (bordered.hpp) if d does not map (A, mu) into (A, mu - 1).
HomologyReport homology_dims(const GradedComplex& c, const BidegreeWindow& w);

}  // namespace gridslice
