#include "gridslice/strands.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace gridslice {

namespace {

void check_positions(int n) {
  if (n < 0 || n >= kMaxPositions) {
    throw std::invalid_argument("strand element: positions 0.." + std::to_string(n) + " unsupported");
  }
}

void enumerate_basis(int n, int k, int pos, RowSet used_targets, StrandElement current,
                     std::vector<StrandElement>& out, int placed) {
  if (placed == k) {
    out.push_back(current);
    return;
  }
  if (pos > n || (n + 1 - pos) < (k - placed)) return;
  // Position pos is not a source.
  enumerate_basis(n, k, pos + 1, used_targets, current, out, placed);
  for (int t = pos; t <= n; ++t) {
    if (has_row(used_targets, t)) continue;
    enumerate_basis(n, k, pos + 1, used_targets | row_bit(t), set_strand(current, pos, t), out,
                    placed + 1);
  }
}

}  // namespace

StrandElement set_strand(StrandElement f, int from, int to) {
  f.targets_[static_cast<std::size_t>(from)] = static_cast<std::int8_t>(to);
  return f;
}

StrandElement::StrandElement(int n) : StrandElement() {
  check_positions(n);
  n_ = static_cast<std::int8_t>(n);
}

StrandElement StrandElement::from_pairs(int n, const std::vector<std::pair<int, int>>& strands) {
  StrandElement f(n);
  RowSet targets = 0;
  for (auto [from, to] : strands) {
    if (from < 0 || from > n || to < 0 || to > n) {
      throw std::invalid_argument("strand element: position out of range");
    }
    if (f.target(from) >= 0 || has_row(targets, to)) {
      throw std::invalid_argument("strand element: not a partial bijection");
    }
    targets |= row_bit(to);
    f = set_strand(f, from, to);
  }
  return f;
}

RowSet StrandElement::source() const {
  RowSet s = 0;
  for (int i = 0; i <= n_; ++i) {
    if (target(i) >= 0) s |= row_bit(i);
  }
  return s;
}

RowSet StrandElement::target_set() const {
  RowSet s = 0;
  for (int i = 0; i <= n_; ++i) {
    if (target(i) >= 0) s |= row_bit(target(i));
  }
  return s;
}

int StrandElement::strand_count() const { return row_count(source()); }

bool StrandElement::is_upward() const {
  for (int i = 0; i <= n_; ++i) {
    if (target(i) >= 0 && target(i) < i) return false;
  }
  return true;
}

bool StrandElement::is_downward() const {
  for (int i = 0; i <= n_; ++i) {
    if (target(i) > i) return false;
  }
  return true;
}

std::vector<std::pair<int, int>> StrandElement::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i <= n_; ++i) {
    if (target(i) >= 0) out.emplace_back(i, target(i));
  }
  return out;
}

std::string StrandElement::to_string() const {
  std::string out = "{";
  bool first = true;
  for (auto [from, to] : pairs()) {
    if (!first) out += ",";
    out += std::to_string(from) + "->" + std::to_string(to);
    first = false;
  }
  return out + "}";
}

const std::vector<StrandElement>& basis(int n, int k) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::vector<StrandElement>> cache;
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.try_emplace({n, k});
  if (inserted) {
    check_positions(n);
    if (k >= 0 && k <= n + 1) enumerate_basis(n, k, 0, 0, StrandElement(n), it->second, 0);
    std::sort(it->second.begin(), it->second.end());
  }
  return it->second;
}

const std::vector<StrandElement>& mirrored_basis(int n, int k) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::vector<StrandElement>> cache;
  const auto& up = basis(n, k);
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.try_emplace({n, k});
  if (inserted) {
    for (const auto& f : up) it->second.push_back(mirror(f));
    std::sort(it->second.begin(), it->second.end());
  }
  return it->second;
}

int cross(const StrandElement& f) {
  int count = 0;
  for (int i = 0; i <= f.n(); ++i) {
    if (f.target(i) < 0) continue;
    for (int j = i + 1; j <= f.n(); ++j) {
      if (f.target(j) >= 0 && f.target(i) > f.target(j)) ++count;
    }
  }
  return count;
}

std::optional<StrandElement> mul_basis(const StrandElement& f, const StrandElement& g) {
  if (f.n() != g.n()) throw DimensionError("mul_basis: different position counts");
  if (f.target_set() != g.source()) return std::nullopt;
  StrandElement h(f.n());
  for (int i = 0; i <= f.n(); ++i) {
    if (f.target(i) >= 0) h = set_strand(h, i, g.target(f.target(i)));
  }
  if (cross(h) != cross(f) + cross(g)) return std::nullopt;
  return h;
}

std::vector<StrandElement> diff_basis(const StrandElement& f) {
  std::vector<StrandElement> out;
  const int c = cross(f);
  for (int i = 0; i <= f.n(); ++i) {
    if (f.target(i) < 0) continue;
    for (int j = i + 1; j <= f.n(); ++j) {
      if (f.target(j) < 0 || f.target(i) <= f.target(j)) continue;
      StrandElement g = set_strand(set_strand(f, i, f.target(j)), j, f.target(i));
      if (cross(g) == c - 1) out.push_back(g);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

StrandElement rho(int n, RowSet s, int i, int j) {
  if (!(i < j) || !has_row(s, i) || has_row(s, j) || j > n || i < 0) {
    throw std::invalid_argument("rho: need i < j, i in S, j not in S");
  }
  StrandElement f = idempotent(n, s & ~row_bit(i));
  return set_strand(f, i, j);
}

StrandElement idempotent(int n, RowSet s) {
  StrandElement f(n);
  if ((s & ~all_rows(n)) != 0) throw std::invalid_argument("idempotent: set outside 0..n");
  for (int r : rows_of(s)) f = set_strand(f, r, r);
  return f;
}

AlgebraElement algebra_mul(const AlgebraElement& a, const AlgebraElement& b) {
  Accumulator<StrandElement> acc;
  for (const auto& s : a) {
    for (const auto& t : b) {
      if (auto p = mul_basis(s.tag, t.tag)) acc.add(s.mono * t.mono, *p);
    }
  }
  return acc.finish();
}

AlgebraElement algebra_diff(const AlgebraElement& a) {
  Accumulator<StrandElement> acc;
  for (const auto& t : a) {
    for (auto& g : diff_basis(t.tag)) acc.add(t.mono, std::move(g));
  }
  return acc.finish();
}

AlgebraElement as_element(const StrandElement& f, int n_vars) {
  return AlgebraElement::single(Monomial(n_vars), f);
}

Bigrading gradings_alg(const StrandElement& f, const InterfaceGradingData& gd) {
  int lx = 0;
  int lo = 0;
  for (auto [from, to] : f.pairs()) {
    int a = std::min(from, to);
    int b = std::max(from, to);
    // Marker row r sits at height r - 1/2, strictly between a and b iff a < r <= b.
    for (int r = a + 1; r <= b; ++r) {
      if (has_row(gd.l_x, r)) ++lx;
      if (has_row(gd.l_o, r)) ++lo;
    }
  }
  return {lx - lo, cross(f) - 2 * lo};
}

Bigrading gradings_alg(const Term<StrandElement>& t, const InterfaceGradingData& gd) {
  return gradings_alg(t.tag, gd) + monomial_grading(t.mono);
}

StrandElement reverse(const StrandElement& f) {
  const int n = f.n();
  StrandElement out(n);
  for (auto [from, to] : f.pairs()) out = set_strand(out, n - to, n - from);
  return out;
}

StrandElement mirror(const StrandElement& f) {
  const int n = f.n();
  StrandElement out(n);
  for (auto [from, to] : f.pairs()) out = set_strand(out, n - from, n - to);
  return out;
}

std::vector<StrandMove> factorize(const StrandElement& f) {
  if (!f.is_upward()) {
    if (!f.is_downward()) throw std::invalid_argument("factorize: element veers both ways");
    const int n = f.n();
    auto moves = factorize(mirror(f));
    for (auto& mv : moves) {
      mv.source = mirror(idempotent(n, mv.source)).source();
      mv.from = n - mv.from;
      mv.to = n - mv.to;
    }
    return moves;
  }
  std::vector<std::pair<int, int>> moving;
  for (auto [from, to] : f.pairs()) {
    if (from != to) moving.emplace_back(from, to);
  }
  std::sort(moving.begin(), moving.end(),
            [](const auto& a, const auto& b) { return a.second > b.second; });

  std::vector<StrandMove> out;
  RowSet occupied = f.source();
  StrandElement product = idempotent(f.n(), occupied);
  int crossings = 0;
  for (auto [from, to] : moving) {
    if (has_row(occupied, to)) {
      throw std::logic_error("factorize: destination occupied in " + f.to_string());
    }
    StrandElement step = set_strand(idempotent(f.n(), occupied & ~row_bit(from)), from, to);
    out.push_back({occupied, from, to});
    crossings += cross(step);
    auto next = mul_basis(product, step);
    if (!next) throw std::logic_error("factorize: crossings not additive for " + f.to_string());
    product = *next;
    occupied = (occupied & ~row_bit(from)) | row_bit(to);
  }
  if (product != f || crossings != cross(f)) {
    throw std::logic_error("factorize: product does not reproduce " + f.to_string());
  }
  return out;
}

}  // namespace gridslice
