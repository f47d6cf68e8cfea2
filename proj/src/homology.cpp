#include "gridslice/homology.hpp"

#include <algorithm>

#include "gridslice/bordered.hpp"
#include "gridslice/parallel.hpp"

namespace gridslice {

namespace {

void extend_monomials(int n, int var, int remaining, std::vector<int>& exps, std::vector<Monomial>& out) {
  if (var == n - 1) {
    exps[static_cast<std::size_t>(var)] = remaining;
    out.emplace_back(exps);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    exps[static_cast<std::size_t>(var)] = e;
    extend_monomials(n, var + 1, remaining - e, exps, out);
  }
  exps[static_cast<std::size_t>(var)] = 0;
}

std::size_t rank_of_differential(const GradedComplex& c, const std::vector<Term<int>>& from,
                                 const std::vector<Term<int>>& to) {
  if (from.empty() || to.empty()) return 0;
  const std::size_t words = (to.size() + 63) / 64;
  std::vector<BitRow> rows;
  rows.reserve(from.size());
  for (const auto& src : from) {
    BitRow row(words, 0);
    for (const auto& t : c.diff[static_cast<std::size_t>(src.tag)]) {
      Term<int> image{src.mono * t.mono, t.tag};
      auto it = std::lower_bound(to.begin(), to.end(), image);
      if (it == to.end() || *it != image) {
        throw StructuralError("homology: differential term outside the target bidegree");
      }
      auto col = static_cast<std::size_t>(it - to.begin());
      row[col / 64] ^= std::uint64_t{1} << (col % 64);
    }
    rows.push_back(std::move(row));
  }
  return f2_rank(std::move(rows));
}

}  // namespace

std::vector<Monomial> monomials_of_degree(int n, int d) {
  std::vector<Monomial> out;
  if (d < 0) return out;
  if (n == 0) {
    if (d == 0) out.emplace_back(0);
    return out;
  }
  std::vector<int> exps(static_cast<std::size_t>(n), 0);
  extend_monomials(n, 0, d, exps, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Term<int>> bigraded_basis(const GradedComplex& c, Bigrading degree) {
  std::vector<Term<int>> out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const int d = c.grading[i].alexander - degree.alexander;
    if (d < 0 || c.grading[i].maslov - 2 * d != degree.maslov) continue;
    for (auto& m : monomials_of_degree(c.n, d)) out.push_back({std::move(m), static_cast<int>(i)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

BitRow make_bit_row(const std::vector<int>& bits) {
  BitRow row((bits.size() + 63) / 64, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] & 1) row[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  return row;
}

std::size_t f2_rank(std::vector<BitRow> rows) {
  std::size_t words = 0;
  for (const auto& r : rows) words = std::max(words, r.size());
  for (auto& r : rows) r.resize(words, 0);
  // pivot_of[b] indexes a reduced row whose highest set bit is b.
  std::vector<int> pivot_of(words * 64, -1);
  std::size_t rank = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    BitRow& row = rows[i];
    bool placed = false;
    for (std::size_t w = words; w-- > 0 && !placed;) {
      while (row[w] != 0) {
        const int bit = 63 - __builtin_clzll(row[w]);
        const std::size_t b = w * 64 + static_cast<std::size_t>(bit);
        if (pivot_of[b] < 0) {
          pivot_of[b] = static_cast<int>(i);
          ++rank;
          placed = true;
          break;
        }
        const BitRow& p = rows[static_cast<std::size_t>(pivot_of[b])];
        for (std::size_t k = 0; k <= w; ++k) row[k] ^= p[k];
      }
    }
  }
  return rank;
}

std::size_t HomologyReport::dim(int a, int mu) const {
  auto it = dims.find({a, mu});
  return it == dims.end() ? 0 : it->second;
}

std::size_t HomologyReport::total() const {
  std::size_t t = 0;
  for (const auto& [g, d] : dims) t += d;
  return t;
}

HomologyReport homology_dims(const GradedComplex& c, const BidegreeWindow& w) {
  if (auto bad = grading_violations(c); bad > 0) {
    throw StructuralError("homology: " + std::to_string(bad) + " differential terms break the bigrading");
  }
  HomologyReport report;
  report.window = w;
  report.mu_computed_max = w.mu_max + 1;
  if (w.empty()) return report;

  std::vector<Bigrading> degrees;
  for (int a = w.a_min; a <= w.a_max; ++a) {
    for (int mu = w.mu_min - 1; mu <= w.mu_max + 1; ++mu) degrees.push_back({a, mu});
  }
  std::vector<std::vector<Term<int>>> bases(degrees.size());
  parallel_for(degrees.size(), [&](std::size_t i) { bases[i] = bigraded_basis(c, degrees[i]); });

  // Degrees are laid out a-major, so the target of degrees[i] is degrees[i-1].
  const std::size_t per_a = static_cast<std::size_t>(w.mu_max - w.mu_min + 3);
  std::vector<std::size_t> ranks(degrees.size(), 0);
  parallel_for(degrees.size(), [&](std::size_t i) {
    if (i % per_a == 0) return;
    ranks[i] = rank_of_differential(c, bases[i], bases[i - 1]);
  });

  for (std::size_t i = 0; i < degrees.size(); ++i) {
    const Bigrading g = degrees[i];
    if (g.maslov < w.mu_min) continue;
    report.chain_dims[g] = bases[i].size();
    report.ranks[g] = ranks[i];
    if (g.maslov > w.mu_max) continue;
    report.dims[g] = bases[i].size() - ranks[i] - ranks[i + 1];
  }
  return report;
}

}  // namespace gridslice
