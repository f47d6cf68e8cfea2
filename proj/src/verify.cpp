#include "gridslice/verify.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace gridslice {

void CheckResult::fail(std::string w) {
  ++failures;
  if (witness.empty()) witness = std::move(w);
}

void CheckResult::merge(const CheckResult& other) {
  checked += other.checked;
  failures += other.failures;
  if (witness.empty()) witness = other.witness;
}

void absorb(std::vector<CheckResult>& all, const CheckResult& r) {
  for (auto& existing : all) {
    if (existing.name == r.name) {
      existing.merge(r);
      return;
    }
  }
  all.push_back(r);
}

void absorb(std::vector<CheckResult>& all, const std::vector<CheckResult>& rs) {
  for (const auto& r : rs) absorb(all, r);
}

void OverlapCoverage::merge(const OverlapCoverage& o) {
  rect_rect += o.rect_rect;
  rect_half += o.rect_half;
  disjoint += o.disjoint;
  nested += o.nested;
  abutting += o.abutting;
  corner += o.corner;
  interleaved += o.interleaved;
  shared_end += o.shared_end;
  coefficient_diff += o.coefficient_diff;
}

bool OverlapCoverage::complete() const {
  return disjoint > 0 && nested > 0 && abutting > 0 && corner > 0 && interleaved > 0;
}

namespace {

using BasisBySource = std::map<RowSet, std::vector<StrandElement>>;

BasisBySource group_by_source(const std::vector<StrandElement>& b) {
  BasisBySource out;
  for (const auto& f : b) out[f.source()].push_back(f);
  return out;
}

const std::vector<StrandElement>& starting_at(const BasisBySource& g, RowSet s) {
  static const std::vector<StrandElement> none;
  auto it = g.find(s);
  return it == g.end() ? none : it->second;
}

AlgebraElement maybe(const std::optional<StrandElement>& f, int n_vars) {
  return f ? as_element(*f, n_vars) : AlgebraElement{};
}

/// The unique chord moved by a single-strand element, or (-1,-1) for an
/// idempotent.
std::pair<int, int> moved_chord(const StrandElement& f) {
  for (auto [from, to] : f.pairs()) {
    if (from != to) return {std::min(from, to), std::max(from, to)};
  }
  return {-1, -1};
}

void classify(std::pair<int, int> c1, std::pair<int, int> c2, OverlapCoverage& cov) {
  const bool h1 = c1.first >= 0;
  const bool h2 = c2.first >= 0;
  if (!h1 && !h2) {
    ++cov.rect_rect;
    return;
  }
  if (!h1 || !h2) {
    ++cov.rect_half;
    return;
  }
  auto [i1, j1] = c1;
  auto [i2, j2] = c2;
  if (j1 == i2) {
    ++cov.abutting;
  } else if (j2 == i1) {
    ++cov.corner;
  } else if (j1 < i2 || j2 < i1) {
    ++cov.disjoint;
  } else if ((i1 < i2 && j2 < j1) || (i2 < i1 && j1 < j2)) {
    ++cov.nested;
  } else if ((i1 < i2 && i2 < j1 && j1 < j2) || (i2 < i1 && i1 < j2 && j2 < j1)) {
    ++cov.interleaved;
  } else {
    ++cov.shared_end;
  }
}

std::string bg(const Bigrading& g) {
  return "(" + std::to_string(g.alexander) + "," + std::to_string(g.maslov) + ")";
}

std::string slab_label(const PartialDiagram& p) {
  return to_string(p.kind) + "[" + std::to_string(p.col_lo) + "," + std::to_string(p.col_hi) + ")";
}

}  // namespace

std::vector<CheckResult> check_algebra(int n, int k, std::uint64_t seed) {
  CheckResult assoc{"algebra associativity"};
  CheckResult leibniz{"algebra Leibniz"};
  CheckResult dsq{"algebra d^2"};
  CheckResult grading{"algebra gradings"};
  const auto& b = basis(n, k);
  const auto by_source = group_by_source(b);
  const int nv = std::max(n, 1);

  std::mt19937_64 rng(seed);
  std::vector<InterfaceGradingData> heights;
  for (int t = 0; t < 4; ++t) {
    RowSet rows = all_rows(n) & ~row_bit(0);
    heights.push_back({static_cast<RowSet>(rng()) & rows, static_cast<RowSet>(rng()) & rows});
  }

  for (const auto& f : b) {
    auto df = algebra_diff(as_element(f, nv));
    ++dsq.checked;
    if (!algebra_diff(df).is_zero()) dsq.fail("d^2 " + f.to_string());
    for (const auto& gd : heights) {
      for (const auto& t : df) {
        ++grading.checked;
        if (gradings_alg(t, gd) != gradings_alg(f, gd) - Bigrading{0, 1}) {
          grading.fail("differential of " + f.to_string() + " -> " + t.tag.to_string());
        }
      }
    }
    for (const auto& g : starting_at(by_source, f.target_set())) {
      auto fg = mul_basis(f, g);
      auto lhs = algebra_diff(maybe(fg, nv));
      auto rhs = algebra_mul(df, as_element(g, nv)) + algebra_mul(as_element(f, nv), algebra_diff(as_element(g, nv)));
      ++leibniz.checked;
      if (lhs != rhs) leibniz.fail(f.to_string() + " * " + g.to_string());
      if (fg) {
        for (const auto& gd : heights) {
          ++grading.checked;
          if (gradings_alg(*fg, gd) != gradings_alg(f, gd) + gradings_alg(g, gd)) {
            grading.fail("product " + f.to_string() + " * " + g.to_string());
          }
        }
      }
      for (const auto& h : starting_at(by_source, g.target_set())) {
        auto gh = mul_basis(g, h);
        std::optional<StrandElement> left = fg ? mul_basis(*fg, h) : std::nullopt;
        std::optional<StrandElement> right = gh ? mul_basis(f, *gh) : std::nullopt;
        ++assoc.checked;
        if (left != right) assoc.fail(f.to_string() + " * " + g.to_string() + " * " + h.to_string());
      }
    }
  }
  return {assoc, leibniz, dsq, grading};
}

CheckResult check_relations(int n) {
  CheckResult r{"algebra relations"};
  const int nv = std::max(n, 1);
  for (int k = 1; k <= n; ++k) {
    std::vector<RowSet> subsets;
    for (RowSet s = 0; s <= all_rows(n); ++s) {
      if (row_count(s) == k) subsets.push_back(s);
    }
    // rho_{i,j} = sum over S of rho_{S,i,j}.
    auto rho_sum = [&](int i, int j) {
      Accumulator<StrandElement> acc;
      for (RowSet s : subsets) {
        if (has_row(s, i) && !has_row(s, j)) acc.add(Monomial(nv), rho(n, s, i, j));
      }
      return acc.finish();
    };
    std::map<std::pair<int, int>, AlgebraElement> rhos;
    for (int i = 0; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) rhos[{i, j}] = rho_sum(i, j);
    }
    for (RowSet s : subsets) {
      const auto unit = as_element(idempotent(n, s), nv);
      auto word = [&](int i, int j, int l, int m) {
        return algebra_mul(algebra_mul(unit, rhos[{i, j}]), rhos[{l, m}]);
      };
      for (const auto& [c1, r1] : rhos) {
        for (const auto& [c2, r2] : rhos) {
          auto [i, j] = c1;
          auto [l, m] = c2;
          std::string where = "S=" + format_rows(s) + " (" + std::to_string(i) + "," + std::to_string(j) +
                              ")(" + std::to_string(l) + "," + std::to_string(m) + ")";
          if (j < l || (i < l && m < j)) {
            ++r.checked;
            if (word(i, j, l, m) != word(l, m, i, j)) r.fail("commutation " + where);
          } else if (i < l && l < j && j < m) {
            ++r.checked;
            if (!word(i, j, l, m).is_zero()) r.fail("vanishing " + where);
          }
        }
      }
      for (int i : rows_of(s)) {
        for (int j = i + 1; j <= n; ++j) {
          if (has_row(s, j)) continue;
          const auto rsij = as_element(rho(n, s, i, j), nv);
          for (int l = j + 1; l <= n; ++l) {
            ++r.checked;
            auto lhs = algebra_mul(rsij, rhos[{j, l}]);
            auto rhs = has_row(s, l) ? AlgebraElement{} : as_element(rho(n, s, i, l), nv);
            if (lhs != rhs) r.fail("concatenation S=" + format_rows(s));
          }
          // d(rho_{S,i,j}) = sum over l in S, i < l < j of rho_{l,j} * rho_{i,l}.
          Accumulator<StrandElement> expected;
          for (int l : rows_of(s)) {
            if (i < l && l < j) expected.add(algebra_mul(algebra_mul(unit, rhos[{l, j}]), rhos[{i, l}]));
          }
          ++r.checked;
          if (algebra_diff(rsij) != expected.finish()) r.fail("differential of rho_{S,i,j} S=" + format_rows(s));
        }
      }
    }
  }
  return r;
}

CheckResult check_factorization(int n, int k) {
  CheckResult r{"factorization"};
  for (const auto& f : basis(n, k)) {
    ++r.checked;
    std::vector<StrandMove> moves;
    try {
      moves = factorize(f);
    } catch (const std::exception& e) {
      r.fail(e.what());
      continue;
    }
    StrandElement product = idempotent(n, f.source());
    int crossings = 0;
    bool ok = true;
    for (const auto& mv : moves) {
      if (mv.source != product.target_set()) {
        ok = false;
        break;
      }
      auto step = rho(n, mv.source, mv.from, mv.to);
      crossings += cross(step);
      auto next = mul_basis(product, step);
      if (!next) {
        ok = false;
        break;
      }
      product = *next;
    }
    if (!ok || product != f || crossings != cross(f)) r.fail(f.to_string());
  }
  return r;
}

std::vector<CheckResult> check_type_a(const TypeAModule& m) {
  const std::string tag = m.downward ? "absorbing module" : "type A";
  CheckResult dsq{tag + " d^2"};
  CheckResult assoc{tag + " associativity"};
  CheckResult leibniz{tag + " Leibniz"};
  CheckResult grading{tag + " gradings"};
  const int n = m.part.n;
  const int strands = m.part.width();
  const auto& alg = m.downward ? mirrored_basis(n, strands) : basis(n, strands);
  const auto by_source = group_by_source(alg);
  const auto gd = m.algebra_grading();

  for (std::size_t g = 0; g < m.size(); ++g) {
    const int gi = static_cast<int>(g);
    const std::string where = slab_label(m.part) + " " + to_point_list(m.basis[g]);
    ++dsq.checked;
    if (!m.apply_diff(m.diff[g]).is_zero()) dsq.fail(where);
    if (!m.downward) {
      for (const auto& t : m.diff[g]) {
        ++grading.checked;
        if (m.grading[static_cast<std::size_t>(t.tag)] + monomial_grading(t.mono) != m.grading[g] - Bigrading{0, 1}) {
          grading.fail("differential of " + where);
        }
      }
    }
    const auto dx = m.diff[g];
    for (const auto& f : starting_at(by_source, m.idempotent(gi))) {
      const auto xf = m.act_basis(gi, f);
      if (!m.downward) {
        for (const auto& t : xf) {
          ++grading.checked;
          if (m.grading[static_cast<std::size_t>(t.tag)] + monomial_grading(t.mono) !=
              m.grading[g] + gradings_alg(f, gd)) {
            grading.fail("action of " + f.to_string() + " on " + where);
          }
        }
      }
      Accumulator<int> rhs;
      rhs.add(m.act(dx, f));
      for (const auto& df : diff_basis(f)) rhs.add(m.act_basis(gi, df));
      ++leibniz.checked;
      if (m.apply_diff(xf) != rhs.finish()) leibniz.fail(where + " . " + f.to_string());
      for (const auto& h : starting_at(by_source, f.target_set())) {
        auto fh = mul_basis(f, h);
        auto rhs2 = fh ? m.act_basis(gi, *fh) : FreeElement<int>{};
        ++assoc.checked;
        if (m.act(xf, h) != rhs2) assoc.fail(where + " . " + f.to_string() + " . " + h.to_string());
      }
    }
  }
  std::vector<CheckResult> out{dsq, assoc, leibniz};
  if (!m.downward) out.push_back(grading);
  return out;
}

std::vector<CheckResult> check_type_d(const TypeDModule& m, OverlapCoverage* coverage) {
  CheckResult dsq{"type D d^2"};
  CheckResult grading{"type D gradings"};
  const auto gd = m.algebra_grading();
  OverlapCoverage cov;
  for (std::size_t g = 0; g < m.size(); ++g) {
    const std::string where = slab_label(m.part) + " " + to_point_list(m.basis[g]);
    ++dsq.checked;
    if (!m.differential(m.delta[g]).is_zero()) dsq.fail(where);
    for (const auto& t : m.delta[g]) {
      ++grading.checked;
      if (gradings_alg(t.tag.first, gd) + m.grading[static_cast<std::size_t>(t.tag.second)] +
              monomial_grading(t.mono) !=
          m.grading[g] - Bigrading{0, 1}) {
        grading.fail("delta of " + where);
      }
      cov.coefficient_diff += diff_basis(t.tag.first).size();
      for (const auto& u : m.delta[static_cast<std::size_t>(t.tag.second)]) {
        classify(moved_chord(t.tag.first), moved_chord(u.tag.first), cov);
      }
    }
  }
  for (const auto& [a, g] : m.full_basis()) {
    ++dsq.checked;
    auto e = DElement::single(Monomial(m.n_vars()), {a, g});
    if (!m.differential(m.differential(e)).is_zero()) {
      dsq.fail(slab_label(m.part) + " " + a.to_string() + " (x) " + to_point_list(m.basis[static_cast<std::size_t>(g)]));
    }
  }
  if (coverage) coverage->merge(cov);
  return {dsq, grading};
}

std::vector<CheckResult> check_middle(const MiddleModule& m) {
  CheckResult dsq{"middle d^2"};
  CheckResult assoc{"middle associativity"};
  CheckResult leibniz{"middle Leibniz"};
  CheckResult grading{"middle gradings"};
  const int n = m.part.n;
  const auto& alg = basis(n, m.part.col_hi);
  const auto by_source = group_by_source(alg);
  const auto left = m.left_grading();
  const auto right = m.right_grading();
  auto degree = [&](const Term<DTag>& t) {
    return gradings_alg(t.tag.first, left) + m.grading[static_cast<std::size_t>(t.tag.second)] +
           monomial_grading(t.mono);
  };

  for (std::size_t g = 0; g < m.size(); ++g) {
    const int gi = static_cast<int>(g);
    const std::string where = slab_label(m.part) + " I_" + format_rows(m.basis[g].idem) + " " +
                              to_point_list(m.basis[g].x);
    ++dsq.checked;
    if (!m.differential(m.delta[g]).is_zero()) dsq.fail(where);
    for (const auto& t : m.delta[g]) {
      ++grading.checked;
      if (degree(t) != m.grading[g] - Bigrading{0, 1}) grading.fail("delta of " + where);
    }
    for (const auto& f : starting_at(by_source, m.right_idempotent(gi))) {
      const auto xf = m.act_basis(gi, f);
      for (const auto& t : xf) {
        ++grading.checked;
        if (degree(t) != m.grading[g] + gradings_alg(f, right)) grading.fail("action of " + f.to_string() + " on " + where);
      }
      Accumulator<DTag> rhs;
      rhs.add(m.act(m.delta[g], f));
      for (const auto& df : diff_basis(f)) rhs.add(m.act_basis(gi, df));
      ++leibniz.checked;
      if (m.differential(xf) != rhs.finish()) leibniz.fail(where + " . " + f.to_string());
      for (const auto& h : starting_at(by_source, f.target_set())) {
        auto fh = mul_basis(f, h);
        auto rhs2 = fh ? m.act_basis(gi, *fh) : DElement{};
        ++assoc.checked;
        if (m.act(xf, h) != rhs2) assoc.fail(where + " . " + f.to_string() + " . " + h.to_string());
      }
    }
  }
  return {dsq, assoc, leibniz, grading};
}

CheckResult check_dd(const DDBimodule& dd, bool whole_basis) {
  CheckResult r{"interface bimodule d^2"};
  for (RowSet s : dd.generators) {
    ++r.checked;
    if (!dd.differential(dd.differential(dd.generator_element(s))).is_zero()) {
      r.fail("n=" + std::to_string(dd.n) + " k=" + std::to_string(dd.k) + " S=" + format_rows(s));
    }
  }
  if (whole_basis) {
    for (const auto& [a, c] : dd.full_basis()) {
      ++r.checked;
      auto e = DDElement::single(Monomial(dd.n), {a, c});
      if (!dd.differential(dd.differential(e)).is_zero()) {
        r.fail("n=" + std::to_string(dd.n) + " k=" + std::to_string(dd.k) + " " + a.to_string() + " " + c.to_string());
      }
    }
  }
  return r;
}

CheckResult check_complex(const GradedComplex& c, const std::string& label) {
  CheckResult r{"complex d^2 and gradings"};
  for (std::size_t i = 0; i < c.size(); ++i) {
    ++r.checked;
    if (!c.apply(c.diff[i]).is_zero()) r.fail(label + " d^2 of " + to_one_line(c.basis[i]));
    for (const auto& t : c.diff[i]) {
      if (c.degree_of(t) != c.grading[i] - Bigrading{0, 1}) {
        r.fail(label + " grading of " + to_one_line(c.basis[i]) + " " + bg(c.grading[i]) + " -> " +
               bg(c.degree_of(t)));
      }
    }
  }
  return r;
}

std::string describe(const PlanarGridDiagram& d) {
  std::string out = "n=" + std::to_string(d.n) + " x=";
  for (std::size_t i = 0; i < d.sigma_x.size(); ++i) out += (i ? "," : "") + std::to_string(d.sigma_x[i]);
  out += " o=";
  for (std::size_t i = 0; i < d.sigma_o.size(); ++i) out += (i ? "," : "") + std::to_string(d.sigma_o[i]);
  return out;
}

std::vector<CheckResult> check_diagram(const PlanarGridDiagram& d, bool pairs, OverlapCoverage* coverage) {
  std::vector<CheckResult> out;
  const std::string who = describe(d);
  auto cfp = cfp_complex(d);
  auto c = check_complex(cfp, who);
  absorb(out, c);

  auto compare = [&](const std::string& name, const std::string& diff, const std::string& where) {
    CheckResult r{name};
    r.checked = 1;
    if (!diff.empty()) r.fail(who + " " + where + ": " + diff);
    absorb(out, r);
  };

  for (int k = 1; k <= d.n; ++k) {
    auto s = slice(d, {k});
    const std::string cut = "cut " + std::to_string(k);
    auto ma = cpa(s[0]);
    auto md = cpd(s[1]);
    for (auto r : check_type_a(ma)) {
      if (!r.witness.empty()) r.witness = who + " " + r.witness;
      absorb(out, r);
    }
    for (auto r : check_type_d(md, coverage)) {
      if (!r.witness.empty()) r.witness = who + " " + r.witness;
      absorb(out, r);
    }
    compare("pairing", first_difference(pair_AD(ma, md), cfp), cut);
    compare("interface pairing", first_difference(tensor_Aabs_DD(cpa_abs(s[1]), cpdd(d.n, k)), md), cut);
    if (!pairs) continue;
    for (int l = k + 1; l <= d.n; ++l) {
      auto s3 = slice(d, {k, l});
      const std::string cuts = "cuts " + std::to_string(k) + "," + std::to_string(l);
      auto a3 = cpa(s3[0]);
      auto mm = cpda(s3[1]);
      auto d3 = cpd(s3[2]);
      for (auto r : check_middle(mm)) {
        if (!r.witness.empty()) r.witness = who + " " + r.witness;
        absorb(out, r);
      }
      compare("triple pairing", first_difference(pair_AD(a3, tensor_DA_D(mm, d3)), cfp), cuts + " A(DA D)");
      compare("triple pairing", first_difference(pair_AD(tensor_A_DA(a3, mm), d3), cfp), cuts + " (A DA)D");
      compare("glued type A", first_difference(tensor_A_DA(a3, mm), cpa(glue(s3[0], s3[1]))), cuts);
      compare("glued type D", first_difference(tensor_DA_D(mm, d3), cpd(glue(s3[1], s3[2]))), cuts);
    }
  }
  return out;
}

}  // namespace gridslice
