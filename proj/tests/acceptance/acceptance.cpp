// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <mutex>
#include <string>
#include <vector>

#include "../oracle.hpp"
#include "gridslice/bordered.hpp"
#include "gridslice/cli.hpp"
#include "gridslice/complexes.hpp"
#include "gridslice/homology.hpp"
#include "gridslice/parallel.hpp"
#include "gridslice/strands.hpp"
#include "gridslice/verify.hpp"

using namespace gridslice;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& why) {
    if (!ok && pass) {
      pass = false;
      detail = why;
    }
  }
};

std::vector<PlanarGridDiagram> all_diagrams(int n) {
  std::vector<PlanarGridDiagram> out;
  for (const auto& px : oracle::permutations(n)) {
    for (const auto& po : oracle::permutations(n)) {
      std::vector<int> sx, so;
      for (int v : px) sx.push_back(v + 1);
      for (int v : po) so.push_back(v + 1);
      out.push_back(validate_planar(n, sx, so));
    }
  }
  return out;
}

std::vector<PlanarGridDiagram> diagrams_up_to(int n) {
  std::vector<PlanarGridDiagram> out;
  for (int m = 1; m <= n; ++m) {
    auto d = all_diagrams(m);
    out.insert(out.end(), d.begin(), d.end());
  }
  return out;
}

// Runs fn over every index in parallel and keeps the first failure in index
// order, so the reported witness does not depend on scheduling.
Outcome over(std::size_t count, const std::function<std::string(std::size_t)>& fn) {
  std::vector<std::string> why(count);
  parallel_for(count, [&](std::size_t i) { why[i] = fn(i); });
  Outcome o;
  for (const auto& w : why) o.require(w.empty(), w);
  return o;
}

std::string from_checks(const std::vector<CheckResult>& rs) {
  for (const auto& r : rs) {
    if (!r.ok()) return r.name + ": " + r.witness;
  }
  return "";
}

oracle::Diff as_oracle_diff(const GradedComplex& c, std::size_t i) {
  oracle::Diff got;
  for (const auto& t : c.diff[i]) got.insert({t.mono.exponents(), c.basis[static_cast<std::size_t>(t.tag)].rows});
  return got;
}

Outcome criterion1() {
  Outcome o;
  auto d = validate_planar(2, {1, 2}, {2, 1});
  auto c = cfp_complex(d);
  o.require(c.size() == 6, "expected 6 generators");
  int nonzero = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto name = to_one_line(c.basis[i]);
    const auto target = c.index_of(from_one_line({3, 2, 1}));
    FreeElement<int> want;
    if (name == "[2,3,1]") want = FreeElement<int>::single(Monomial{1, 0}, target);
    if (name == "[3,1,2]") want = FreeElement<int>::single(Monomial{0, 1}, target);
    o.require(c.diff[i] == want, "row " + name + " = " + format_element(c.diff[i], c.basis));
    nonzero += !c.diff[i].is_zero();
  }
  o.require(nonzero == 2, "expected exactly two nonzero rows");
  if (o.pass) o.detail = "d[2,3,1]=U1[3,2,1], d[3,1,2]=U2[3,2,1], four zero rows";
  return o;
}

oracle::Grading grading_of(const PlanarGridDiagram& d, std::vector<int> one_line) {
  std::vector<int> p;
  for (int v : one_line) p.push_back(v - 1);
  return oracle::planar_grading(d.sigma_x, d.sigma_o, p);
}

std::string compare_dims(const HomologyReport& h, const std::map<std::pair<int, int>, long long>& want,
                         const BidegreeWindow& w, const std::string& label) {
  for (int a = w.a_min; a <= w.a_max; ++a) {
    for (int mu = w.mu_min; mu <= w.mu_max; ++mu) {
      auto it = want.find({a, mu});
      const long long expect = it == want.end() ? 0 : it->second;
      if (static_cast<long long>(h.dim(a, mu)) != expect) {
        return label + " at A=" + std::to_string(a) + " mu=" + std::to_string(mu) + ": got " +
               std::to_string(h.dim(a, mu)) + ", presentation gives " + std::to_string(expect);
      }
    }
  }
  return "";
}

Outcome criterion2() {
  Outcome o;
  const BidegreeWindow w{-4, 2, -9, 1};
  auto d1 = validate_planar(1, {1}, {1});
  auto h1 = homology_dims(cfp_complex(d1), w);
  auto want1 = oracle::hilbert(1, {grading_of(d1, {2, 1}), grading_of(d1, {1, 2})}, {}, w.a_min, w.a_max, w.mu_min,
                               w.mu_max);
  o.require(compare_dims(h1, want1, w, "N=1").empty(), compare_dims(h1, want1, w, "N=1"));

  auto d2 = validate_planar(2, {1, 2}, {2, 1});
  auto h2 = homology_dims(cfp_complex(d2), w);
  auto cyc = grading_of(d2, {2, 3, 1});
  std::vector<oracle::Grading> free_gens{grading_of(d2, {1, 2, 3}), grading_of(d2, {1, 3, 2}),
                                         grading_of(d2, {2, 1, 3}), {cyc.a - 1, cyc.mu - 2}};
  auto want2 = oracle::hilbert(2, free_gens, {grading_of(d2, {3, 2, 1})}, w.a_min, w.a_max, w.mu_min, w.mu_max);
  o.require(compare_dims(h2, want2, w, "N=2").empty(), compare_dims(h2, want2, w, "N=2"));
  o.require(h1.dims != h2.dims, "the two unknot diagrams gave equal homology");
  if (o.pass) {
    o.detail = "N=1: F[U1]^2, N=2: F<[3,2,1]> + free rank 4 (totals " + std::to_string(h1.total()) + ", " +
               std::to_string(h2.total()) + " in window)";
  }
  return o;
}

Outcome criterion3() {
  auto diagrams = diagrams_up_to(4);
  const std::size_t exhaustive = diagrams.size();
  for (std::uint64_t s = 0; s < 200; ++s) diagrams.push_back(random_diagram(5, 0x5eed0000 + s));
  auto o = over(diagrams.size(), [&](std::size_t i) -> std::string {
    const auto& d = diagrams[i];
    auto direct = cfp_complex(d);
    if (d.n <= 4) {
      for (std::size_t g = 0; g < direct.size(); ++g) {
        if (as_oracle_diff(direct, g) != oracle::planar_diff(d.sigma_x, d.sigma_o, direct.basis[g].rows)) {
          return describe(d) + ": direct complex differs from rectangle enumeration at " + to_one_line(direct.basis[g]);
        }
      }
    }
    for (int k = 1; k <= d.n; ++k) {
      auto parts = slice(d, {k});
      auto diff = first_difference(pair_AD(cpa(parts[0]), cpd(parts[1])), direct);
      if (!diff.empty()) return describe(d) + " cut " + std::to_string(k) + ": " + diff;
    }
    return "";
  });
  if (o.pass) {
    o.detail = std::to_string(exhaustive) + " diagrams N<=4 (all cuts) + 200 random N=5: exact";
  }
  return o;
}

Outcome criterion4() {
  std::vector<std::pair<int, int>> cases;
  for (int n = 0; n <= 3; ++n)
    for (int k = 0; k <= n + 1; ++k) cases.push_back({n, k});
  std::uint64_t checked = 0;
  std::mutex mu;
  auto o = over(cases.size(), [&](std::size_t i) {
    auto rs = check_algebra(cases[i].first, cases[i].second, 2024 + i);
    std::lock_guard lock(mu);
    for (const auto& r : rs) checked += r.checked;
    return from_checks(rs);
  });
  if (o.pass) o.detail = std::to_string(checked) + " associativity/Leibniz/d^2/degree checks, n<=3";
  return o;
}

Outcome criterion5() {
  Outcome o;
  std::uint64_t checked = 0;
  for (int n = 1; n <= 5; ++n) {
    auto r = check_relations(n);
    checked += r.checked;
    o.require(r.ok(), "n=" + std::to_string(n) + ": " + r.witness);
  }
  if (o.pass) o.detail = std::to_string(checked) + " relation instances, n<=5";
  return o;
}

Outcome criterion6() {
  auto diagrams = diagrams_up_to(4);
  std::vector<OverlapCoverage> cover(diagrams.size());
  auto o = over(diagrams.size(), [&](std::size_t i) -> std::string {
    const auto& d = diagrams[i];
    std::vector<CheckResult> rs;
    for (int k = 1; k <= d.n; ++k) {
      auto parts = slice(d, {k});
      absorb(rs, check_type_a(cpa(parts[0])));
      absorb(rs, check_type_d(cpd(parts[1]), &cover[i]));
      for (int l = k + 1; l <= d.n; ++l) absorb(rs, check_middle(cpda(slice(d, {k, l})[1])));
    }
    auto w = from_checks(rs);
    return w.empty() ? w : describe(d) + ": " + w;
  });
  OverlapCoverage total;
  for (const auto& c : cover) total.merge(c);
  o.require(total.complete(), "not every half-strip overlap configuration occurred");
  if (o.pass) {
    o.detail = "CPA/CPD/CPDA d^2, associativity, Leibniz, gradings; overlaps disjoint " +
               std::to_string(total.disjoint) + ", nested " + std::to_string(total.nested) + ", abutting " +
               std::to_string(total.abutting) + ", corner " + std::to_string(total.corner) + ", interleaved " +
               std::to_string(total.interleaved);
  }
  return o;
}

Outcome criterion7() {
  auto diagrams = diagrams_up_to(3);
  auto o = over(diagrams.size(), [&](std::size_t i) -> std::string {
    const auto& d = diagrams[i];
    for (int k = 1; k <= d.n; ++k) {
      auto slab = slice(d, {k})[1];
      auto diff = first_difference(tensor_Aabs_DD(cpa_abs(slab), cpdd(d.n, k)), cpd(slab));
      if (!diff.empty()) return describe(d) + " cut " + std::to_string(k) + ": " + diff;
    }
    return "";
  });
  std::uint64_t checked = 0;
  for (int n = 1; n <= 4; ++n) {
    for (int k = 1; k <= n; ++k) {
      auto r = check_dd(cpdd(n, k), true);
      checked += r.checked;
      o.require(r.ok(), "CPDD n=" + std::to_string(n) + " k=" + std::to_string(k) + ": " + r.witness);
    }
  }
  if (o.pass) {
    o.detail = std::to_string(diagrams.size()) + " diagrams N<=3 all cuts; CPDD d^2 on " + std::to_string(checked) +
               " basis elements, n<=4";
  }
  return o;
}

Outcome criterion8() {
  auto diagrams = diagrams_up_to(4);
  auto o = over(diagrams.size(), [&](std::size_t i) -> std::string {
    const auto& d = diagrams[i];
    auto direct = cfp_complex(d);
    for (int k = 1; k <= d.n; ++k) {
      for (int l = k + 1; l <= d.n; ++l) {
        auto parts = slice(d, {k, l});
        auto a = cpa(parts[0]);
        auto m = cpda(parts[1]);
        auto dm = cpd(parts[2]);
        auto where = describe(d) + " cuts " + std::to_string(k) + "," + std::to_string(l);
        if (auto diff = first_difference(pair_AD(a, tensor_DA_D(m, dm)), direct); !diff.empty()) {
          return where + " A.(DA.D): " + diff;
        }
        if (auto diff = first_difference(pair_AD(tensor_A_DA(a, m), dm), direct); !diff.empty()) {
          return where + " (A.DA).D: " + diff;
        }
      }
    }
    return "";
  });
  if (o.pass) o.detail = "all cut pairs of " + std::to_string(diagrams.size()) + " diagrams N<=4, both orders";
  return o;
}

Outcome criterion9() {
  Outcome o;
  std::uint64_t checked = 0;
  for (int n = 0; n <= 4; ++n) {
    for (int k = 0; k <= n + 1; ++k) {
      auto r = check_factorization(n, k);
      checked += r.checked;
      o.require(r.ok(), "n=" + std::to_string(n) + " k=" + std::to_string(k) + ": " + r.witness);
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + " basis elements, n<=4";
  return o;
}

Outcome criterion10() {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  auto d = random_diagram(6, 0x6060);
  const int k = 3;
  auto direct = cfp_complex(d);
  auto parts = slice(d, {k});
  auto a = cpa(parts[0]);
  auto dm = cpd(parts[1]);
  auto paired = pair_AD(a, dm);
  o.require(first_difference(paired, direct).empty(), "pairing mismatch on " + describe(d));
  int top_a = -1000, top_mu = -1000;
  for (const auto& g : direct.grading) {
    top_a = std::max(top_a, g.alexander);
    top_mu = std::max(top_mu, g.maslov);
  }
  auto h = homology_dims(direct, BidegreeWindow{top_a - 2, top_a, top_mu - 6, top_mu});
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const long long n1 = oracle::factorial(7);
  o.require(static_cast<long long>(direct.size()) == n1, "direct generator count");
  o.require(static_cast<long long>(a.size()) == n1 / oracle::factorial(7 - k), "type A generator count");
  o.require(static_cast<long long>(dm.size()) == n1 / oracle::factorial(k), "type D generator count");
  for (int n = 0; n <= 6; ++n) {
    for (int kk = 0; kk <= n + 1; ++kk) {
      o.require(basis(n, kk).size() == oracle::upward_partial_bijections(n, kk).size(),
                "basis size of A_{" + std::to_string(n) + "," + std::to_string(kk) + "}");
    }
  }
  o.require(seconds < 60.0, "pipeline took " + std::to_string(seconds) + " s");
  if (o.pass) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: %zu generators, %zu+%zu sliced, H total %zu, %.2f s", describe(d).c_str(),
                  direct.size(), a.size(), dm.size(), h.total(), seconds);
    o.detail = buf;
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    Outcome (*run)();
  };
  const std::vector<Criterion> criteria{
      {1, "example differential", 1, criterion1},
      {2, "example homology", 5, criterion2},
      {3, "two-piece pairing", 600, criterion3},
      {4, "algebra is a DGA", 120, criterion4},
      {5, "relations and generator differential", 0, criterion5},
      {6, "module axioms and gradings", 0, criterion6},
      {7, "interface bimodule pairing", 0, criterion7},
      {8, "triple slicing", 0, criterion8},
      {9, "factorization", 0, criterion9},
      {10, "performance sanity", 60, criterion10},
  };
  bool all = true;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0 && s >= c.budget_s && o.pass) {
      o.pass = false;
      o.detail = "over the " + std::to_string(static_cast<int>(c.budget_s)) + " s budget";
    }
    all &= o.pass;
    std::printf("%s criterion %d (%s) [%.2f s]: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, s, o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
