#include <doctest.h>

#include <map>

#include "gridslice/complexes.hpp"
#include "../oracle.hpp"

using namespace gridslice;

namespace {

Generator gen(std::vector<int> one_line) { return from_one_line(one_line); }

FreeElement<int> term(const GradedComplex& c, Monomial m, std::vector<int> one_line) {
  return FreeElement<int>::single(std::move(m), c.index_of(gen(std::move(one_line))));
}

std::vector<int> one_based(const oracle::Perm& p) {
  std::vector<int> out;
  for (int v : p) out.push_back(v + 1);
  return out;
}

}  // namespace

TEST_CASE("the two-by-two differential table") {
  auto c = cfp_complex(validate_planar(2, {1, 2}, {2, 1}));
  REQUIRE(c.size() == 6);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto name = to_one_line(c.basis[i]);
    if (name == "[2,3,1]") {
      CHECK(c.diff[i] == term(c, Monomial{1, 0}, {3, 2, 1}));
    } else if (name == "[3,1,2]") {
      CHECK(c.diff[i] == term(c, Monomial{0, 1}, {3, 2, 1}));
    } else {
      CHECK_MESSAGE(c.diff[i].is_zero(), name);
    }
  }
}

TEST_CASE("the one-by-one diagram") {
  auto c = cfp_complex(validate_planar(1, {1}, {1}));
  REQUIRE(c.size() == 2);
  CHECK(c.diff[0].is_zero());
  CHECK(c.diff[1].is_zero());
  CHECK(c.grading[static_cast<std::size_t>(c.index_of(gen({2, 1})))] == Bigrading{0, 0});
  CHECK(c.grading[static_cast<std::size_t>(c.index_of(gen({1, 2})))] == Bigrading{0, -1});
}

TEST_CASE("planar complexes match the brute-force oracle") {
  for (int n = 1; n <= 3; ++n) {
    auto perms = oracle::permutations(n);
    for (const auto& px : perms) {
      for (const auto& po : perms) {
        auto sx = one_based(px);
        auto so = one_based(po);
        auto c = cfp_complex(validate_planar(n, sx, so));
        REQUIRE(c.size() == static_cast<std::size_t>(oracle::factorial(n + 1)));
        for (std::size_t i = 0; i < c.size(); ++i) {
          const auto& p = c.basis[i].rows;
          auto g = oracle::planar_grading(sx, so, p);
          CHECK(c.grading[i] == Bigrading{g.a, g.mu});
          oracle::Diff got;
          for (const auto& t : c.diff[i]) got.insert({t.mono.exponents(), c.basis[static_cast<std::size_t>(t.tag)].rows});
          CHECK(got == oracle::planar_diff(sx, so, p));
        }
      }
    }
  }
}

TEST_CASE("d squared and gradings over all four-by-four diagrams") {
  auto perms = oracle::permutations(4);
  std::size_t failures = 0;
  std::size_t bad_degrees = 0;
  for (const auto& px : perms) {
    for (const auto& po : perms) {
      auto c = cfp_complex(validate_planar(4, one_based(px), one_based(po)));
      failures += d_squared_failures(c);
      bad_degrees += grading_violations(c);
    }
  }
  CHECK(failures == 0);
  CHECK(bad_degrees == 0);
}

TEST_CASE("toroidal complexes") {
  auto t1 = cfk_complex(wrap(validate_planar(1, {1}, {1})));
  CHECK(t1.size() == 1);
  CHECK(t1.diff[0].is_zero());

  // Two-by-two torus: brute force over the two rectangles of each pair.
  auto d2 = validate_planar(2, {1, 2}, {2, 1});
  auto t2 = cfk_complex(wrap(d2));
  REQUIRE(t2.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    Accumulator<int> expect;
    for (std::size_t j = 0; j < 2; ++j) {
      for (const auto& r : toroidal_rects(wrap(d2), t2.basis[i], t2.basis[j])) {
        if (r.empty && r.x_free()) expect.add(r.weight(), static_cast<int>(j));
      }
    }
    CHECK(t2.diff[i] == expect.finish());
  }

  for (unsigned seed = 1; seed <= 20; ++seed) {
    const int n = 3 + static_cast<int>(seed % 3);
    auto sx = oracle::permutations(n)[seed * 7 % oracle::factorial(n)];
    auto so = oracle::permutations(n)[seed * 13 % oracle::factorial(n)];
    auto c = cfk_complex(wrap(validate_planar(n, one_based(sx), one_based(so))));
    CHECK(c.size() == static_cast<std::size_t>(oracle::factorial(n)));
    CHECK(d_squared_failures(c) == 0);
    CHECK(grading_violations(c) == 0);
  }
}

TEST_CASE("type A partial gradings") {
  auto a = slice(validate_planar(2, {1, 2}, {2, 1}), {1})[0];
  CHECK(partial_gradings(a, Generator{0, {2}}) == Bigrading{0, 0});
}

TEST_CASE("type D gradings do not depend on the completion") {
  // Completing markers and points all sit left of the slab, so any completion
  // agrees: compare with the full planar grading minus the left part's share.
  auto d = validate_planar(3, {2, 3, 1}, {3, 1, 2});
  for (int k = 1; k <= 3; ++k) {
    auto parts = slice(d, {k});
    auto full = cfp_complex(d);
    for (std::size_t i = 0; i < full.size(); ++i) {
      auto left = restrict_columns(full.basis[i], 0, k);
      auto right = restrict_columns(full.basis[i], k, 4);
      auto sum = partial_gradings(parts[0], left) + partial_gradings(parts[1], right);
      CHECK(sum == full.grading[i]);
    }
  }
}
