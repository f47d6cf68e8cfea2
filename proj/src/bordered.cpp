#include "gridslice/bordered.hpp"

#include <algorithm>
#include <stdexcept>

namespace gridslice {

namespace {

template <class Value>
const Value* find_chord(const ChordRow<Value>& row, int lo, int hi) {
  const int key = chord_key(lo, hi);
  auto it = std::lower_bound(row.begin(), row.end(), key,
                             [](const auto& entry, int k) { return entry.first < k; });
  if (it == row.end() || it->first != key) return nullptr;
  return &it->second;
}

template <class Value>
void sort_row(ChordRow<Value>& row) {
  std::sort(row.begin(), row.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
}

template <class T>
int sorted_index(const std::vector<T>& v, const T& value) {
  auto it = std::lower_bound(v.begin(), v.end(), value);
  if (it == v.end() || *it != value) return -1;
  return static_cast<int>(it - v.begin());
}

Generator with_row(Generator x, int col, int row) {
  x.rows[static_cast<std::size_t>(col - x.first_col)] = row;
  return x;
}

std::vector<RowSet> subsets_of_size(RowSet universe, int k) {
  std::vector<RowSet> out;
  auto rows = rows_of(universe);
  const int m = static_cast<int>(rows.size());
  if (k < 0 || k > m) return out;
  for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    RowSet s = 0;
    for (int b = 0; b < m; ++b) {
      if ((mask >> b) & 1U) s |= row_bit(rows[static_cast<std::size_t>(b)]);
    }
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// d(a (x) g) = (da) (x) g + a * delta(g).
DElement left_leibniz(const DElement& e, const std::vector<DElement>& delta) {
  Accumulator<DTag> acc;
  for (const auto& t : e) {
    for (auto& a : diff_basis(t.tag.first)) acc.add(t.mono, {std::move(a), t.tag.second});
    for (const auto& s : delta[static_cast<std::size_t>(t.tag.second)]) {
      if (auto p = mul_basis(t.tag.first, s.tag.first)) {
        acc.add(t.mono * s.mono, {*p, s.tag.second});
      }
    }
  }
  return acc.finish();
}

/// Rectangles inside a slab starting at x: (weight, target) pairs.
template <class Fn>
void for_each_rect(const PartialDiagram& p, const Generator& x, Fn&& fn) {
  for (int i = p.col_lo; i < p.col_hi; ++i) {
    for (int j = i + 1; j < p.col_hi; ++j) {
      if (x.row(i) > x.row(j)) continue;
      Generator y = x;
      std::swap(y.rows[static_cast<std::size_t>(i - x.first_col)],
                y.rows[static_cast<std::size_t>(j - x.first_col)]);
      auto r = planar_rect(p, x, y);
      if (r && r->empty && r->x_free()) fn(r->weight(), y);
    }
  }
}

/// Left-edge half-strips from x: the point in column m moves down from row
/// hi to row lo.
template <class Fn>
void for_each_left_half_strip(const PartialDiagram& p, const Generator& x, Fn&& fn) {
  const RowSet used = x.row_set();
  for (int m = p.col_lo; m < p.col_hi; ++m) {
    const int hi = x.row(m);
    for (int lo = 0; lo < hi; ++lo) {
      if (has_row(used, lo)) continue;
      Generator y = with_row(x, m, lo);
      auto h = half_strip_left_edge(p, x, y);
      if (h && h->region.empty && h->region.x_free()) fn(lo, hi, h->region.weight(), y);
    }
  }
}

/// Right-edge half-strips from x: the point in column m moves up from row
/// lo to row hi.
template <class Fn>
void for_each_right_half_strip(const PartialDiagram& p, const Generator& x, Fn&& fn) {
  const RowSet used = x.row_set();
  for (int m = p.col_lo; m < p.col_hi; ++m) {
    const int lo = x.row(m);
    for (int hi = lo + 1; hi <= p.n; ++hi) {
      if (has_row(used, hi)) continue;
      Generator y = with_row(x, m, hi);
      auto h = half_strip_right_edge(p, x, y);
      if (h && h->region.empty && h->region.x_free()) fn(lo, hi, h->region.weight(), y);
    }
  }
}

void require_kind(const PartialDiagram& p, SlabKind kind, const char* what) {
  validate_partial(p);
  if (p.kind != kind) {
    throw ValidationError(std::string(what) + ": expected a " + to_string(kind) + " slab, got " +
                          to_string(p.kind));
  }
}

std::string label(const Generator& g) {
  if (g.first_col == 0 && g.row_set() == all_rows(g.size() - 1)) return to_one_line(g);
  return to_point_list(g);
}

template <class Tag, class Fmt>
std::string format_terms(const FreeElement<Tag>& e, Fmt&& fmt) {
  if (e.is_zero()) return "0";
  std::string out;
  for (const auto& t : e) {
    if (!out.empty()) out += " + ";
    if (!t.mono.is_unit()) out += t.mono.to_string() + "*";
    out += fmt(t.tag);
  }
  return out;
}

TypeAModule absorbing_module(const PartialDiagram& part, bool downward) {
  TypeAModule m;
  m.part = part;
  m.downward = downward;
  m.basis = generators(part);
  m.diff.resize(m.size());
  m.action.resize(m.size());
  if (!downward) m.grading.reserve(m.size());
  for (std::size_t g = 0; g < m.size(); ++g) {
    const Generator& x = m.basis[g];
    Accumulator<int> acc;
    for_each_rect(part, x, [&](const Monomial& w, const Generator& y) { acc.add(w, m.index_of(y)); });
    m.diff[g] = acc.finish();
    auto record = [&](int lo, int hi, const Monomial& w, const Generator& y) {
      m.action[g].emplace_back(chord_key(lo, hi), FreeElement<int>::single(w, m.index_of(y)));
    };
    if (downward) {
      for_each_left_half_strip(part, x, record);
    } else {
      for_each_right_half_strip(part, x, record);
      m.grading.push_back(partial_gradings(part, x));
    }
    sort_row(m.action[g]);
  }
  return m;
}

}  // namespace

// ---------------------------------------------------------------- TypeAModule

int TypeAModule::index_of(const Generator& g) const { return sorted_index(basis, g); }

FreeElement<int> TypeAModule::act_rho(int g, int lo, int hi) const {
  const auto* v = find_chord(action[static_cast<std::size_t>(g)], lo, hi);
  return v ? *v : FreeElement<int>{};
}

FreeElement<int> TypeAModule::act_basis(int g, const StrandElement& f) const {
  if (f.n() != part.n) throw DimensionError("act_basis: algebra element on wrong position count");
  if (downward ? !f.is_downward() : !f.is_upward()) {
    throw std::invalid_argument("act_basis: element veers the wrong way for this module");
  }
  if (f.source() != idempotent(g)) return {};
  auto current = FreeElement<int>::single(Monomial(n_vars()), g);
  for (const auto& mv : factorize(f)) {
    const int lo = std::min(mv.from, mv.to);
    const int hi = std::max(mv.from, mv.to);
    Accumulator<int> acc;
    for (const auto& t : current) acc.add_scaled(t.mono, act_rho(t.tag, lo, hi));
    current = acc.finish();
    if (current.is_zero()) break;
  }
  return current;
}

FreeElement<int> TypeAModule::act(const FreeElement<int>& x, const StrandElement& f) const {
  Accumulator<int> acc;
  for (const auto& t : x) acc.add_scaled(t.mono, act_basis(t.tag, f));
  return acc.finish();
}

FreeElement<int> TypeAModule::apply_diff(const FreeElement<int>& x) const {
  Accumulator<int> acc;
  for (const auto& t : x) acc.add_scaled(t.mono, diff[static_cast<std::size_t>(t.tag)]);
  return acc.finish();
}

InterfaceGradingData TypeAModule::algebra_grading() const {
  if (downward) {
    RowSet rows = all_rows(part.n) & ~row_bit(0);
    return {rows & ~part.x_row_set(), rows & ~part.o_row_set()};
  }
  return {part.x_row_set(), part.o_row_set()};
}

TypeAModule cpa(const PartialDiagram& part) {
  require_kind(part, SlabKind::type_a, "cpa");
  return absorbing_module(part, false);
}

TypeAModule cpa_abs(const PartialDiagram& part) {
  require_kind(part, SlabKind::type_d, "cpa_abs");
  return absorbing_module(part, true);
}

FreeElement<int> cpa_act_rho(const TypeAModule& m, const Generator& x, int i, int j) {
  int g = m.index_of(x);
  if (g < 0) throw ValidationError("cpa_act_rho: " + to_point_list(x) + " is not a generator");
  if (i >= j) throw std::invalid_argument("cpa_act_rho: need i < j");
  return m.act_rho(g, i, j);
}

FreeElement<int> cpa_act_basis(const TypeAModule& m, const Generator& x, const StrandElement& f) {
  int g = m.index_of(x);
  if (g < 0) throw ValidationError("cpa_act_basis: " + to_point_list(x) + " is not a generator");
  return m.act_basis(g, f);
}

// ---------------------------------------------------------------- TypeDModule

int TypeDModule::index_of(const Generator& g) const { return sorted_index(basis, g); }

RowSet TypeDModule::idempotent(int g) const {
  return all_rows(part.n) & ~basis[static_cast<std::size_t>(g)].row_set();
}

DElement TypeDModule::generator_element(int g) const {
  return DElement::single(Monomial(n_vars()), {gridslice::idempotent(part.n, idempotent(g)), g});
}

DElement TypeDModule::differential(const DElement& e) const { return left_leibniz(e, delta); }

std::vector<DTag> TypeDModule::full_basis() const {
  std::vector<DTag> out;
  const auto& alg = gridslice::basis(part.n, part.col_lo);
  for (std::size_t g = 0; g < size(); ++g) {
    RowSet s = idempotent(static_cast<int>(g));
    for (const auto& a : alg) {
      if (a.target_set() == s) out.emplace_back(a, static_cast<int>(g));
    }
  }
  return out;
}

InterfaceGradingData TypeDModule::algebra_grading() const {
  RowSet rows = all_rows(part.n) & ~row_bit(0);
  return {rows & ~part.x_row_set(), rows & ~part.o_row_set()};
}

TypeDModule cpd(const PartialDiagram& part) {
  require_kind(part, SlabKind::type_d, "cpd");
  const int n = part.n;
  TypeDModule m;
  m.part = part;
  m.basis = generators(part);
  m.delta.resize(m.size());
  m.grading.reserve(m.size());
  for (std::size_t g = 0; g < m.size(); ++g) {
    const Generator& x = m.basis[g];
    const RowSet s = m.idempotent(static_cast<int>(g));
    const StrandElement unit = idempotent(n, s);
    Accumulator<DTag> acc;
    for_each_rect(part, x, [&](const Monomial& w, const Generator& y) {
      acc.add(w, {unit, m.index_of(y)});
    });
    for_each_left_half_strip(part, x, [&](int lo, int hi, const Monomial& w, const Generator& y) {
      acc.add(w, {rho(n, s, lo, hi), m.index_of(y)});
    });
    m.delta[g] = acc.finish();
    m.grading.push_back(partial_gradings(part, x));
  }
  return m;
}

// --------------------------------------------------------------- MiddleModule

int MiddleModule::index_of(const MiddleGenerator& g) const { return sorted_index(basis, g); }

RowSet MiddleModule::right_idempotent(int g) const {
  const auto& b = basis[static_cast<std::size_t>(g)];
  return b.idem | b.x.row_set();
}

DElement MiddleModule::generator_element(int g) const {
  return DElement::single(Monomial(n_vars()),
                          {idempotent(part.n, basis[static_cast<std::size_t>(g)].idem), g});
}

DElement MiddleModule::act_rho(int g, int lo, int hi) const {
  const auto* v = find_chord(action[static_cast<std::size_t>(g)], lo, hi);
  return v ? *v : DElement{};
}

DElement MiddleModule::act_basis(int g, const StrandElement& f) const {
  if (f.n() != part.n) throw DimensionError("act_basis: algebra element on wrong position count");
  if (!f.is_upward()) throw std::invalid_argument("act_basis: element must veer upward");
  if (f.source() != right_idempotent(g)) return {};
  DElement current = generator_element(g);
  for (const auto& mv : factorize(f)) {
    Accumulator<DTag> acc;
    for (const auto& t : current) {
      for (const auto& s : act_rho(t.tag.second, mv.from, mv.to)) {
        if (auto p = mul_basis(t.tag.first, s.tag.first)) acc.add(t.mono * s.mono, {*p, s.tag.second});
      }
    }
    current = acc.finish();
    if (current.is_zero()) break;
  }
  return current;
}

DElement MiddleModule::act(const DElement& e, const StrandElement& f) const {
  Accumulator<DTag> acc;
  for (const auto& t : e) {
    for (const auto& s : act_basis(t.tag.second, f)) {
      if (auto p = mul_basis(t.tag.first, s.tag.first)) acc.add(t.mono * s.mono, {*p, s.tag.second});
    }
  }
  return acc.finish();
}

DElement MiddleModule::differential(const DElement& e) const { return left_leibniz(e, delta); }

std::vector<DTag> MiddleModule::full_basis() const {
  std::vector<DTag> out;
  const auto& alg = gridslice::basis(part.n, part.col_lo);
  for (std::size_t g = 0; g < size(); ++g) {
    for (const auto& a : alg) {
      if (a.target_set() == basis[g].idem) out.emplace_back(a, static_cast<int>(g));
    }
  }
  return out;
}

namespace {

InterfaceGradingData completion_markers(const MiddleModule& m, int upto) {
  const auto& b = m.basis.front();
  auto completion = canonical_completion(m.part, b.x, b.idem);
  InterfaceGradingData gd;
  for (int a = 1; a <= upto; ++a) {
    gd.l_x |= row_bit(completion.diagram.sigma_x[static_cast<std::size_t>(a - 1)]);
    gd.l_o |= row_bit(completion.diagram.sigma_o[static_cast<std::size_t>(a - 1)]);
  }
  return gd;
}

}  // namespace

InterfaceGradingData MiddleModule::left_grading() const { return completion_markers(*this, part.col_lo); }

InterfaceGradingData MiddleModule::right_grading() const { return completion_markers(*this, part.col_hi); }

MiddleModule cpda(const PartialDiagram& part) {
  require_kind(part, SlabKind::middle, "cpda");
  const int n = part.n;
  MiddleModule m;
  m.part = part;
  for (const auto& x : generators(part)) {
    for (RowSet s : subsets_of_size(all_rows(n) & ~x.row_set(), part.col_lo)) m.basis.push_back({s, x});
  }
  std::sort(m.basis.begin(), m.basis.end());
  m.delta.resize(m.size());
  m.action.resize(m.size());
  m.grading.reserve(m.size());
  for (std::size_t g = 0; g < m.size(); ++g) {
    const RowSet s = m.basis[g].idem;
    const Generator& x = m.basis[g].x;
    const StrandElement unit = idempotent(n, s);
    Accumulator<DTag> acc;
    for_each_rect(part, x, [&](const Monomial& w, const Generator& y) {
      acc.add(w, {unit, m.index_of({s, y})});
    });
    for_each_left_half_strip(part, x, [&](int i, int j, const Monomial& w, const Generator& y) {
      if (!has_row(s, i) || has_row(s, j)) return;
      RowSet t = (s & ~row_bit(i)) | row_bit(j);
      if ((t & y.row_set()) != 0) return;
      acc.add(w, {rho(n, s, i, j), m.index_of({t, y})});
    });
    m.delta[g] = acc.finish();

    // Right action of rho_{lo,hi}: a strip across the slab, or a half-strip
    // ending on the right interface. At most one of them applies.
    const RowSet right = s | x.row_set();
    std::vector<std::pair<int, Accumulator<DTag>>> pending;
    auto slot = [&](int lo, int hi) -> Accumulator<DTag>& {
      const int key = chord_key(lo, hi);
      for (auto& [k, a] : pending) {
        if (k == key) return a;
      }
      pending.emplace_back(key, Accumulator<DTag>{});
      return pending.back().second;
    };
    for (int lo = 0; lo <= n; ++lo) {
      if (!has_row(s, lo)) continue;
      for (int hi = lo + 1; hi <= n; ++hi) {
        if (has_row(right, hi)) continue;
        auto r = strip(part, lo, hi, x);
        if (!r || !r->x_free()) continue;
        RowSet t = (s & ~row_bit(lo)) | row_bit(hi);
        if ((t & x.row_set()) != 0) continue;
        slot(lo, hi).add(r->weight(), {rho(n, s, lo, hi), m.index_of({t, x})});
      }
    }
    for_each_right_half_strip(part, x, [&](int lo, int hi, const Monomial& w, const Generator& y) {
      if (has_row(s, hi)) return;
      slot(lo, hi).add(w, {unit, m.index_of({s, y})});
    });
    for (auto& [key, a] : pending) {
      auto e = a.finish();
      if (!e.is_zero()) m.action[g].emplace_back(key, std::move(e));
    }
    sort_row(m.action[g]);
    m.grading.push_back(partial_gradings(part, x, s));
  }
  return m;
}

// ----------------------------------------------------------------- DDBimodule

int DDBimodule::index_of(RowSet s) const { return sorted_index(generators, s); }

DDElement DDBimodule::generator_element(RowSet s) const {
  return DDElement::single(Monomial(n), {idempotent(n, s), idempotent(n, all_rows(n) & ~s)});
}

DDElement DDBimodule::differential(const DDElement& e) const {
  Accumulator<DDTag> acc;
  for (const auto& t : e) {
    const auto& [a, c] = t.tag;
    for (auto& da : diff_basis(a)) acc.add(t.mono, {std::move(da), c});
    for (auto& dc : diff_basis(c)) acc.add(t.mono, {a, std::move(dc)});
    int g = index_of(a.target_set());
    if (g < 0) throw StructuralError("cpdd: coefficient with wrong strand count");
    for (const auto& s : delta[static_cast<std::size_t>(g)]) {
      auto pa = mul_basis(a, s.tag.first);
      if (!pa) continue;
      auto pc = mul_basis(c, s.tag.second);
      if (pc) acc.add(t.mono * s.mono, {*pa, *pc});
    }
  }
  return acc.finish();
}

std::vector<DDTag> DDBimodule::full_basis() const {
  std::vector<DDTag> out;
  for (const auto& a : gridslice::basis(n, k)) {
    for (const auto& c : mirrored_basis(n, n + 1 - k)) {
      if (a.target_set() == (all_rows(n) & ~c.target_set())) out.emplace_back(a, c);
    }
  }
  return out;
}

DDBimodule cpdd(int n, int k) {
  if (n < 1 || n > kMaxGridSize || k < 0 || k > n + 1) {
    throw ValidationError("cpdd: need 1 <= n <= " + std::to_string(kMaxGridSize) + " and 0 <= k <= n+1");
  }
  DDBimodule dd;
  dd.n = n;
  dd.k = k;
  dd.generators = subsets_of_size(all_rows(n), k);
  for (RowSet s : dd.generators) {
    const RowSet sc = all_rows(n) & ~s;
    Accumulator<DDTag> acc;
    for (int i : rows_of(s)) {
      for (int j = i + 1; j <= n; ++j) {
        if (has_row(s, j)) continue;
        // The companion strand moves height j down to height i.
        std::vector<std::pair<int, int>> down;
        for (int r : rows_of(sc)) down.emplace_back(r, r == j ? i : r);
        acc.add(Monomial(n), {rho(n, s, i, j), StrandElement::from_pairs(n, down)});
      }
    }
    dd.delta.push_back(acc.finish());
  }
  return dd;
}

// ------------------------------------------------------------------- pairings

GradedComplex pair_AD(const TypeAModule& ma, const TypeDModule& md) {
  if (ma.downward) throw ValidationError("pair_AD: type A side must act by upward elements");
  PartialDiagram glued = glue(ma.part, md.part);
  to_planar(glued);
  const std::size_t nd = md.size();
  std::vector<std::pair<Generator, std::size_t>> cells;
  for (std::size_t a = 0; a < ma.size(); ++a) {
    for (std::size_t d = 0; d < nd; ++d) {
      if (ma.idempotent(static_cast<int>(a)) == md.idempotent(static_cast<int>(d))) {
        cells.emplace_back(concat(ma.basis[a], md.basis[d]), a * nd + d);
      }
    }
  }
  std::sort(cells.begin(), cells.end());
  std::vector<int> index(ma.size() * nd, -1);
  GradedComplex c;
  c.n = glued.n;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    c.basis.push_back(cells[i].first);
    index[cells[i].second] = static_cast<int>(i);
  }
  auto at = [&](int a, int d) {
    int i = index[static_cast<std::size_t>(a) * nd + static_cast<std::size_t>(d)];
    if (i < 0) throw StructuralError("pair_AD: term leaves the idempotent-matched basis");
    return i;
  };
  c.diff.resize(c.size());
  c.grading.resize(c.size());
  for (const auto& [gen, key] : cells) {
    const int a = static_cast<int>(key / nd);
    const int d = static_cast<int>(key % nd);
    Accumulator<int> acc;
    for (const auto& t : ma.diff[static_cast<std::size_t>(a)]) acc.add(t.mono, at(t.tag, d));
    for (const auto& s : md.delta[static_cast<std::size_t>(d)]) {
      for (const auto& u : ma.act_basis(a, s.tag.first)) acc.add(s.mono * u.mono, at(u.tag, s.tag.second));
    }
    const int i = at(a, d);
    c.diff[static_cast<std::size_t>(i)] = acc.finish();
    c.grading[static_cast<std::size_t>(i)] =
        ma.grading[static_cast<std::size_t>(a)] + md.grading[static_cast<std::size_t>(d)];
  }
  return c;
}

TypeAModule tensor_A_DA(const TypeAModule& ma, const MiddleModule& mm) {
  if (ma.downward) throw ValidationError("tensor_A_DA: type A side must act by upward elements");
  PartialDiagram glued = glue(ma.part, mm.part);
  const std::size_t nm = mm.size();
  std::vector<std::pair<Generator, std::size_t>> cells;
  for (std::size_t a = 0; a < ma.size(); ++a) {
    for (std::size_t g = 0; g < nm; ++g) {
      if (ma.idempotent(static_cast<int>(a)) == mm.basis[g].idem) {
        cells.emplace_back(concat(ma.basis[a], mm.basis[g].x), a * nm + g);
      }
    }
  }
  std::sort(cells.begin(), cells.end());
  std::vector<int> index(ma.size() * nm, -1);
  TypeAModule out;
  out.part = glued;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    out.basis.push_back(cells[i].first);
    index[cells[i].second] = static_cast<int>(i);
  }
  auto at = [&](int a, int g) {
    int i = index[static_cast<std::size_t>(a) * nm + static_cast<std::size_t>(g)];
    if (i < 0) throw StructuralError("tensor_A_DA: term leaves the idempotent-matched basis");
    return i;
  };
  // x (x) (sum of a (x) xi'): push the coefficients through the type A action.
  auto absorb = [&](int a, const Monomial& m, const DElement& e, Accumulator<int>& acc) {
    for (const auto& s : e) {
      for (const auto& u : ma.act_basis(a, s.tag.first)) acc.add(m * s.mono * u.mono, at(u.tag, s.tag.second));
    }
  };
  const Monomial unit(glued.n);
  out.diff.resize(out.size());
  out.action.resize(out.size());
  out.grading.resize(out.size());
  for (const auto& [gen, key] : cells) {
    const int a = static_cast<int>(key / nm);
    const int g = static_cast<int>(key % nm);
    const auto i = static_cast<std::size_t>(at(a, g));
    Accumulator<int> acc;
    for (const auto& t : ma.diff[static_cast<std::size_t>(a)]) acc.add(t.mono, at(t.tag, g));
    absorb(a, unit, mm.delta[static_cast<std::size_t>(g)], acc);
    out.diff[i] = acc.finish();
    for (const auto& [chord, e] : mm.action[static_cast<std::size_t>(g)]) {
      Accumulator<int> act;
      absorb(a, unit, e, act);
      auto v = act.finish();
      if (!v.is_zero()) out.action[i].emplace_back(chord, std::move(v));
    }
    out.grading[i] = partial_gradings(glued, gen);
  }
  return out;
}

TypeDModule tensor_DA_D(const MiddleModule& mm, const TypeDModule& md) {
  PartialDiagram glued = glue(mm.part, md.part);
  const std::size_t nd = md.size();
  std::vector<std::pair<Generator, std::size_t>> cells;
  for (std::size_t g = 0; g < mm.size(); ++g) {
    for (std::size_t d = 0; d < nd; ++d) {
      if (mm.right_idempotent(static_cast<int>(g)) == md.idempotent(static_cast<int>(d))) {
        cells.emplace_back(concat(mm.basis[g].x, md.basis[d]), g * nd + d);
      }
    }
  }
  std::sort(cells.begin(), cells.end());
  std::vector<int> index(mm.size() * nd, -1);
  TypeDModule out;
  out.part = glued;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    out.basis.push_back(cells[i].first);
    index[cells[i].second] = static_cast<int>(i);
  }
  auto at = [&](int g, int d) {
    int i = index[static_cast<std::size_t>(g) * nd + static_cast<std::size_t>(d)];
    if (i < 0) throw StructuralError("tensor_DA_D: term leaves the idempotent-matched basis");
    return i;
  };
  out.delta.resize(out.size());
  out.grading.resize(out.size());
  for (const auto& [gen, key] : cells) {
    const int g = static_cast<int>(key / nd);
    const int d = static_cast<int>(key % nd);
    const auto i = static_cast<std::size_t>(at(g, d));
    Accumulator<DTag> acc;
    for (const auto& s : mm.delta[static_cast<std::size_t>(g)]) acc.add(s.mono, {s.tag.first, at(s.tag.second, d)});
    for (const auto& s : md.delta[static_cast<std::size_t>(d)]) {
      for (const auto& u : mm.act_basis(g, s.tag.first)) {
        acc.add(s.mono * u.mono, {u.tag.first, at(u.tag.second, s.tag.second)});
      }
    }
    out.delta[i] = acc.finish();
    out.grading[i] = partial_gradings(glued, gen);
  }
  return out;
}

TypeDModule tensor_Aabs_DD(const TypeAModule& mabs, const DDBimodule& dd) {
  if (!mabs.downward) throw ValidationError("tensor_Aabs_DD: module must absorb downward elements");
  if (mabs.part.n != dd.n || mabs.part.col_lo != dd.k) {
    throw ValidationError("tensor_Aabs_DD: slab [" + std::to_string(mabs.part.col_lo) + ",...) does not match CPDD k=" +
                          std::to_string(dd.k));
  }
  const int n = dd.n;
  TypeDModule out;
  out.part = mabs.part;
  out.basis = mabs.basis;
  out.delta.resize(out.size());
  out.grading.reserve(out.size());
  for (std::size_t g = 0; g < out.size(); ++g) {
    const RowSet s = out.idempotent(static_cast<int>(g));
    const StrandElement unit = idempotent(n, s);
    Accumulator<DTag> acc;
    for (const auto& t : mabs.diff[g]) acc.add(t.mono, {unit, t.tag});
    for (const auto& term : dd.delta[static_cast<std::size_t>(dd.index_of(s))]) {
      for (const auto& u : mabs.act_basis(static_cast<int>(g), term.tag.second)) {
        acc.add(term.mono * u.mono, {term.tag.first, u.tag});
      }
    }
    out.delta[g] = acc.finish();
    out.grading.push_back(partial_gradings(out.part, out.basis[g]));
  }
  return out;
}

// ----------------------------------------------------------------- comparison

std::string format_element(const FreeElement<int>& e, const std::vector<Generator>& basis) {
  return format_terms(e, [&](int g) { return label(basis[static_cast<std::size_t>(g)]); });
}

std::string format_element(const DElement& e, const std::vector<Generator>& basis) {
  return format_terms(e, [&](const DTag& t) {
    return t.first.to_string() + "(x)" + label(basis[static_cast<std::size_t>(t.second)]);
  });
}

namespace {

template <class Elem>
std::string compare_tables(const std::vector<Generator>& basis, const std::vector<Elem>& a,
                           const std::vector<Elem>& b, const std::vector<Generator>& b_basis,
                           const char* what) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) {
      return std::string(what) + " of " + label(basis[i]) + ": " + format_element(a[i], basis) +
             " vs " + format_element(b[i], b_basis);
    }
  }
  return {};
}

std::string compare_bases(const std::vector<Generator>& a, const std::vector<Generator>& b) {
  if (a.size() != b.size()) {
    return "basis sizes differ: " + std::to_string(a.size()) + " vs " + std::to_string(b.size());
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return "basis element " + std::to_string(i) + ": " + label(a[i]) + " vs " + label(b[i]);
  }
  return {};
}

std::string compare_gradings(const std::vector<Generator>& basis, const std::vector<Bigrading>& a,
                             const std::vector<Bigrading>& b) {
  if (a.size() != b.size()) return "grading tables differ in size";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) {
      return "grading of " + label(basis[i]) + ": (" + std::to_string(a[i].alexander) + "," +
             std::to_string(a[i].maslov) + ") vs (" + std::to_string(b[i].alexander) + "," +
             std::to_string(b[i].maslov) + ")";
    }
  }
  return {};
}

}  // namespace

std::string first_difference(const GradedComplex& a, const GradedComplex& b) {
  if (a.n != b.n) return "variable counts differ";
  if (auto s = compare_bases(a.basis, b.basis); !s.empty()) return s;
  if (auto s = compare_tables(a.basis, a.diff, b.diff, b.basis, "differential"); !s.empty()) return s;
  return compare_gradings(a.basis, a.grading, b.grading);
}

std::string first_difference(const TypeAModule& a, const TypeAModule& b) {
  if (a.part != b.part || a.downward != b.downward) return "slabs differ";
  if (auto s = compare_bases(a.basis, b.basis); !s.empty()) return s;
  if (auto s = compare_tables(a.basis, a.diff, b.diff, b.basis, "differential"); !s.empty()) return s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.action[i] != b.action[i]) return "action table of " + label(a.basis[i]);
  }
  return compare_gradings(a.basis, a.grading, b.grading);
}

std::string first_difference(const TypeDModule& a, const TypeDModule& b) {
  if (a.part != b.part) return "slabs differ";
  if (auto s = compare_bases(a.basis, b.basis); !s.empty()) return s;
  if (auto s = compare_tables(a.basis, a.delta, b.delta, b.basis, "delta"); !s.empty()) return s;
  return compare_gradings(a.basis, a.grading, b.grading);
}

}  // namespace gridslice
