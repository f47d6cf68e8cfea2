#pragma once

// Property checks shared by the command-line tool and the test suites. Each
// check counts what it examined and keeps the first failing witness.

#include <cstdint>
#include <string>
#include <vector>

#include "gridslice/bordered.hpp"
#include "gridslice/complexes.hpp"
#include "gridslice/strands.hpp"

namespace gridslice {

struct CheckResult {
  CheckResult() = default;
  explicit CheckResult(std::string n) : name(std::move(n)) {}

  std::string name;
  std::uint64_t checked = 0;
  std::uint64_t failures = 0;
  std::string witness;

  bool ok() const { return failures == 0; }
  void fail(std::string w);
  void merge(const CheckResult& other);
};

/// Appends `r` to `all`, merging into an existing entry of the same name.
void absorb(std::vector<CheckResult>& all, const CheckResult& r);
void absorb(std::vector<CheckResult>& all, const std::vector<CheckResult>& rs);

/// How pairs of consecutive domains in d(d(y)) of a type D module sit
/// relative to each other. Half-strip pairs are classified by their chords
/// (i1, j1) then (i2, j2).
struct OverlapCoverage {
  std::uint64_t rect_rect = 0;
  std::uint64_t rect_half = 0;
  std::uint64_t disjoint = 0;     // j1 < i2 or j2 < i1
  std::uint64_t nested = 0;       // one chord strictly inside the other
  std::uint64_t abutting = 0;     // j1 == i2: the chords concatenate
  std::uint64_t corner = 0;       // j2 == i1: cancels against d(rho)
  std::uint64_t interleaved = 0;  // i1 < i2 < j1 < j2 or i2 < i1 < j2 < j1
  std::uint64_t shared_end = 0;
  std::uint64_t coefficient_diff = 0;  // terms from d of a coefficient

  void merge(const OverlapCoverage& o);
  /// The five half-strip configurations all occurred.
  bool complete() const;
};

/// Associativity, Leibniz rule and d^2 = 0 over the whole basis of A_{n,k},
/// plus degree checks of product (0) and differential (-1) under random
/// marker heights.
std::vector<CheckResult> check_algebra(int n, int k, std::uint64_t seed);

/// The defining relations and the generator differential of A_{n,k} for all
/// k and all admissible indices.
CheckResult check_relations(int n);

/// factorize re-multiplies to every basis element with additive crossings.
CheckResult check_factorization(int n, int k);

std::vector<CheckResult> check_type_a(const TypeAModule& m);
std::vector<CheckResult> check_type_d(const TypeDModule& m, OverlapCoverage* coverage = nullptr);
std::vector<CheckResult> check_middle(const MiddleModule& m);
CheckResult check_dd(const DDBimodule& dd, bool whole_basis);

CheckResult check_complex(const GradedComplex& c, const std::string& label);

/// Everything verifiable for one diagram: the complex, all single cuts
/// (modules, pairing, interface bimodule) and, if `pairs`, all cut pairs
/// (middle modules and both association orders of the triple product).
std::vector<CheckResult> check_diagram(const PlanarGridDiagram& d, bool pairs,
                                       OverlapCoverage* coverage = nullptr);

std::string describe(const PlanarGridDiagram& d);

}  // namespace gridslice
