#include <doctest.h>

#include <algorithm>
#include <map>

#include "gridslice/strands.hpp"
#include "gridslice/verify.hpp"
#include "../oracle.hpp"

using namespace gridslice;

namespace {

StrandElement el(int n, std::vector<std::pair<int, int>> pairs) { return StrandElement::from_pairs(n, pairs); }

RowSet set_of(std::initializer_list<int> rows) {
  RowSet s = 0;
  for (int r : rows) s |= row_bit(r);
  return s;
}

}  // namespace

TEST_CASE("basis sizes against brute-force enumeration") {
  CHECK(basis(3, 0).size() == 1);
  CHECK(basis(1, 1).size() == 3);
  CHECK(basis(2, 2).size() == 7);
  for (int n = 0; n <= 5; ++n) {
    for (int k = 0; k <= n + 1; ++k) {
      auto expected = oracle::upward_partial_bijections(n, k);
      const auto& got = basis(n, k);
      REQUIRE(got.size() == expected.size());
      std::vector<oracle::Strands> pairs;
      for (const auto& f : got) {
        CHECK(f.is_upward());
        CHECK(f.strand_count() == k);
        CHECK(cross(f) == oracle::inversions(f.pairs()));
        pairs.push_back(f.pairs());
      }
      std::sort(pairs.begin(), pairs.end());
      std::sort(expected.begin(), expected.end());
      CHECK(pairs == expected);
      CHECK(std::is_sorted(got.begin(), got.end()));
    }
  }
}

TEST_CASE("crossings") {
  CHECK(cross(idempotent(4, set_of({0, 2, 3}))) == 0);
  CHECK(cross(el(2, {{0, 2}, {1, 1}})) == 1);
  CHECK(cross(el(4, {{0, 4}, {1, 3}, {2, 2}})) == 3);
  CHECK(cross(rho(4, set_of({0, 1, 2}), 0, 4)) == 2);
}

TEST_CASE("products") {
  auto p = mul_basis(rho(2, set_of({0}), 0, 1), rho(2, set_of({1}), 1, 2));
  REQUIRE(p);
  CHECK(*p == rho(2, set_of({0}), 0, 2));

  CHECK_FALSE(mul_basis(rho(3, set_of({0, 1}), 0, 2), rho(3, set_of({1, 2}), 1, 3)));

  auto s = idempotent(3, set_of({1, 3}));
  CHECK(mul_basis(s, s) == s);
  CHECK_FALSE(mul_basis(s, idempotent(3, set_of({1, 2}))));
  CHECK(s.source() == set_of({1, 3}));
  CHECK(s.target_set() == set_of({1, 3}));
}

TEST_CASE("differential of basis elements") {
  CHECK(diff_basis(idempotent(3, set_of({0, 1}))).empty());
  auto d = diff_basis(el(2, {{0, 2}, {1, 1}}));
  REQUIRE(d.size() == 1);
  CHECK(d[0] == el(2, {{0, 1}, {1, 2}}));

  // Swapping the outer strands of 0->4, 1->3, 2->2 would remove all three
  // crossings at once; that smoothing is excluded.
  auto g = el(4, {{0, 4}, {1, 3}, {2, 2}});
  auto dg = diff_basis(g);
  std::sort(dg.begin(), dg.end());
  std::vector<StrandElement> expect{el(4, {{0, 3}, {1, 4}, {2, 2}}), el(4, {{0, 4}, {1, 2}, {2, 3}})};
  std::sort(expect.begin(), expect.end());
  CHECK(dg == expect);
}

TEST_CASE("relation form of the generator differential") {
  // d rho_{S,0,3} with S = {0,2}: one smoothing through the strand at 2.
  auto r = rho(3, set_of({0, 2}), 0, 3);
  auto d = algebra_diff(as_element(r, 3));
  auto expected = algebra_mul(as_element(rho(3, set_of({0, 2}), 2, 3), 3),
                              as_element(rho(3, set_of({0, 3}), 0, 2), 3));
  CHECK(d == expected);
  CHECK(d.size() == 1);
  CHECK(d.begin()->tag == el(3, {{0, 2}, {2, 3}}));
}

TEST_CASE("rho preconditions") {
  CHECK(rho(1, set_of({0}), 0, 1) == el(1, {{0, 1}}));
  CHECK_THROWS(rho(2, set_of({0}), 1, 2));
  CHECK_THROWS(rho(2, set_of({0, 1}), 0, 1));
  CHECK_THROWS(rho(2, set_of({1}), 1, 1));
}

TEST_CASE("gradings") {
  InterfaceGradingData none{};
  CHECK(gradings_alg(idempotent(3, set_of({0, 2})), none) == Bigrading{0, 0});
  InterfaceGradingData one{row_bit(1), 0};
  CHECK(gradings_alg(el(1, {{0, 1}}), one) == Bigrading{1, 0});
  Term<StrandElement> u{Monomial{1, 0}, idempotent(2, set_of({1}))};
  CHECK(gradings_alg(u, none) == Bigrading{-1, -2});
}

TEST_CASE("reverse is an involutive anti-automorphism") {
  for (int n = 0; n <= 3; ++n) {
    for (int k = 0; k <= n + 1; ++k) {
      const auto& b = basis(n, k);
      for (const auto& f : b) {
        CHECK(reverse(reverse(f)) == f);
        CHECK(cross(reverse(f)) == cross(f));
        CHECK(reverse(f).is_upward());
        CHECK(mirror(f).is_downward());
        auto rd = diff_basis(reverse(f));
        std::vector<StrandElement> dr;
        for (const auto& g : diff_basis(f)) dr.push_back(reverse(g));
        std::sort(rd.begin(), rd.end());
        std::sort(dr.begin(), dr.end());
        CHECK(rd == dr);
        for (const auto& g : b) {
          auto p = mul_basis(f, g);
          auto q = mul_basis(reverse(g), reverse(f));
          REQUIRE(p.has_value() == q.has_value());
          if (p) CHECK(reverse(*p) == *q);
        }
      }
    }
  }
  CHECK(reverse(idempotent(3, set_of({0, 1}))) == idempotent(3, set_of({2, 3})));
}

TEST_CASE("factorization examples") {
  CHECK(factorize(idempotent(3, set_of({1, 2}))).empty());
  auto f = factorize(el(3, {{0, 2}, {1, 3}}));
  REQUIRE(f.size() == 2);
  CHECK(f[0] == StrandMove{set_of({0, 1}), 1, 3});
  CHECK(f[1] == StrandMove{set_of({0, 3}), 0, 2});
  auto g = factorize(el(3, {{0, 3}, {1, 2}}));
  REQUIRE(g.size() == 2);
  CHECK(g[0] == StrandMove{set_of({0, 1}), 0, 3});
  CHECK(g[1] == StrandMove{set_of({1, 3}), 1, 2});
}

TEST_CASE("factorizations re-multiply") {
  for (int n = 0; n <= 4; ++n) {
    for (int k = 0; k <= n + 1; ++k) {
      for (const auto& f : basis(n, k)) {
        auto moves = factorize(f);
        StrandElement acc = idempotent(n, f.source());
        int total = 0;
        for (const auto& m : moves) {
          auto step = rho(n, m.source, m.from, m.to);
          total += cross(step);
          auto next = mul_basis(acc, step);
          REQUIRE(next);
          acc = *next;
        }
        CHECK(acc == f);
        CHECK(total == cross(f));
      }
    }
  }
}

TEST_CASE("algebra axioms and relations") {
  for (int n = 0; n <= 2; ++n) {
    for (int k = 0; k <= n + 1; ++k) {
      for (const auto& r : check_algebra(n, k, 11)) CHECK_MESSAGE(r.ok(), r.name, ": ", r.witness);
    }
  }
  for (int n = 1; n <= 4; ++n) {
    auto r = check_relations(n);
    CHECK(r.checked > 0);
    CHECK_MESSAGE(r.ok(), r.witness);
  }
}
