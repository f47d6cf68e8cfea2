#include "gridslice/complexes.hpp"

#include <algorithm>

namespace gridslice {

int GradedComplex::index_of(const Generator& g) const {
  auto it = std::lower_bound(basis.begin(), basis.end(), g);
  if (it == basis.end() || *it != g) return -1;
  return static_cast<int>(it - basis.begin());
}

FreeElement<int> GradedComplex::apply(const FreeElement<int>& e) const {
  Accumulator<int> acc;
  for (const auto& t : e) acc.add_scaled(t.mono, diff[static_cast<std::size_t>(t.tag)]);
  return acc.finish();
}

Bigrading GradedComplex::degree_of(const Term<int>& t) const {
  return grading[static_cast<std::size_t>(t.tag)] + monomial_grading(t.mono);
}

std::size_t d_squared_failures(const GradedComplex& c) {
  std::size_t failures = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!c.apply(c.diff[i]).is_zero()) ++failures;
  }
  return failures;
}

std::size_t grading_violations(const GradedComplex& c) {
  std::size_t bad = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    Bigrading expected = c.grading[i] - Bigrading{0, 1};
    for (const auto& t : c.diff[i]) {
      if (c.degree_of(t) != expected) ++bad;
    }
  }
  return bad;
}

Bigrading planar_gradings(const PlanarGridDiagram& d, const Generator& x) {
  auto slab = as_slab(d);
  auto pts = points_of(x);
  auto xs = x_markers(slab);
  auto os = o_markers(slab);
  int io = lower_left_count(os, pts);
  return {lower_left_count(xs, pts) - io, lower_left_count(pts, pts) - 2 * io};
}

GradedComplex cfp_complex(const PlanarGridDiagram& d) {
  auto slab = as_slab(d);
  GradedComplex c;
  c.n = d.n;
  c.basis = generators(slab);
  c.diff.resize(c.basis.size());
  c.grading.reserve(c.basis.size());
  for (std::size_t g = 0; g < c.basis.size(); ++g) {
    const Generator& x = c.basis[g];
    Accumulator<int> acc;
    for (int i = 0; i <= d.n; ++i) {
      for (int j = i + 1; j <= d.n; ++j) {
        if (x.row(i) > x.row(j)) continue;
        Generator y = x;
        std::swap(y.rows[static_cast<std::size_t>(i)], y.rows[static_cast<std::size_t>(j)]);
        auto r = planar_rect(slab, x, y);
        if (r && r->empty && r->x_free()) acc.add(r->weight(), c.index_of(y));
      }
    }
    c.diff[g] = acc.finish();
    c.grading.push_back(planar_gradings(d, x));
  }
  return c;
}

GradedComplex cfk_complex(const ToroidalGridDiagram& d) {
  GradedComplex c;
  c.n = d.n;
  c.basis = generators(d);
  c.diff.resize(c.basis.size());
  PartialDiagram unwrapped{d.n, 0, d.n + 1, SlabKind::whole, d.sigma_x, d.sigma_o};
  auto xs = x_markers(unwrapped);
  auto os = o_markers(unwrapped);
  for (std::size_t g = 0; g < c.basis.size(); ++g) {
    const Generator& x = c.basis[g];
    Accumulator<int> acc;
    for (int i = 0; i < d.n; ++i) {
      for (int j = i + 1; j < d.n; ++j) {
        Generator y = x;
        std::swap(y.rows[static_cast<std::size_t>(i)], y.rows[static_cast<std::size_t>(j)]);
        for (const auto& r : toroidal_rects(d, x, y)) {
          if (r.empty && r.x_free()) acc.add(r.weight(), c.index_of(y));
        }
      }
    }
    c.diff[g] = acc.finish();
    auto pts = points_of(x);
    int io = lower_left_count(os, pts);
    c.grading.push_back({lower_left_count(xs, pts) - io, lower_left_count(pts, pts) - 2 * io});
  }
  return c;
}

Completion canonical_completion(const PartialDiagram& p, const Generator& x, RowSet left_rows) {
  if (!is_generator_of(p, x)) throw ValidationError("completion: not a generator of the slab");
  const int n = p.n;
  const int right_first = std::min(p.col_hi, n + 1);
  if (row_count(left_rows) != p.col_lo || (left_rows & x.row_set()) != 0 ||
      (left_rows & ~all_rows(n)) != 0) {
    throw ValidationError("completion: idempotent " + format_rows(left_rows) +
                          " incompatible with generator " + to_point_list(x));
  }

  auto complete_markers = [&](RowSet used, const std::vector<int>& own) {
    std::vector<int> spare;
    for (int r = 1; r <= n; ++r) {
      if (!has_row(used, r)) spare.push_back(r);
    }
    std::vector<int> sigma;
    sigma.reserve(static_cast<std::size_t>(n));
    auto next = spare.begin();
    for (int a = 1; a < p.first_marker(); ++a) sigma.push_back(*next++);
    sigma.insert(sigma.end(), own.begin(), own.end());
    for (int a = p.last_marker() + 1; a <= n; ++a) sigma.push_back(*next++);
    return sigma;
  };

  Completion out;
  out.diagram = validate_planar(n, complete_markers(p.x_row_set(), p.x_rows),
                                complete_markers(p.o_row_set(), p.o_rows));
  out.generator.first_col = 0;
  for (int r : rows_of(left_rows)) out.generator.rows.push_back(r);
  out.generator.rows.insert(out.generator.rows.end(), x.rows.begin(), x.rows.end());
  RowSet used = left_rows | x.row_set();
  for (int r = 0, c = right_first; c <= n; ++r) {
    if (has_row(used, r)) continue;
    out.generator.rows.push_back(r);
    ++c;
  }
  return out;
}

Bigrading partial_gradings(const PartialDiagram& p, const Generator& x, std::optional<RowSet> idem) {
  RowSet left_rows = 0;
  switch (p.kind) {
    case SlabKind::whole:
    case SlabKind::type_a:
      break;
    case SlabKind::type_d: {
      RowSet implied = all_rows(p.n) & ~x.row_set();
      if (idem && *idem != implied) {
        throw ValidationError("partial_gradings: type D idempotent must be the complement of the generator rows");
      }
      left_rows = implied;
      break;
    }
    case SlabKind::middle:
      if (!idem) throw ValidationError("partial_gradings: middle slab needs an idempotent");
      left_rows = *idem;
      break;
  }
  auto completion = canonical_completion(p, x, left_rows);
  auto whole = as_slab(completion.diagram);
  auto pts = points_of(x);
  auto all_pts = points_of(completion.generator);
  auto xs = x_markers(whole);
  auto os = o_markers(whole);
  int io = lower_left_count(os, pts);
  return {lower_left_count(xs, pts) - io, lower_left_count(all_pts, pts) - 2 * io};
}

}  // namespace gridslice
