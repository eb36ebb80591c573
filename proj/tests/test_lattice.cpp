#include <random>
#include <set>

#include "doctest.h"
#include "support.hpp"
#include "wellround/equivalence.hpp"
#include "wellround/lattice.hpp"

using namespace wellround;
using namespace testsupport;

namespace {

// Brute-force minimum over a box; the box radius must exceed the true
// coordinates of the minimal vectors (guaranteed for the small test forms).
MinimaResult brute_minima(const GramForm& a, int r) {
  std::optional<Rational> best;
  std::vector<IntVec> mins;
  for (const auto& v : box(a.dim(), r)) {
    Rational x = a.eval(v);
    if (!best || x < *best) {
      best = x;
      mins.clear();
    }
    if (x == *best) mins.push_back(v);
  }
  return {*best, VectorConfig(mins)};
}

std::vector<IntMat> signed_permutations(std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  std::vector<IntMat> out;
  do {
    for (unsigned s = 0; s < (1u << n); ++s) {
      IntMat m(n, n);
      for (std::size_t i = 0; i < n; ++i) m(p[i], i) = (s >> i & 1) ? -1 : 1;
      out.push_back(m);
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

TEST_CASE("minimal vector examples") {
  auto a = minimal_vectors(GramForm::identity(2));
  CHECK(a.min_sq == 1);
  CHECK(a.vectors == VectorConfig({{1, 0}, {0, 1}}));
  auto b = minimal_vectors(GramForm(rat({{2, 1}, {1, 2}})));
  CHECK(b.min_sq == 2);
  CHECK(b.vectors == VectorConfig({{1, 0}, {0, 1}, {1, -1}}));
  auto c = minimal_vectors(GramForm::diagonal({1, 2}));
  CHECK(c.min_sq == 1);
  CHECK(c.vectors == VectorConfig({{1, 0}}));
}

TEST_CASE("minimal vectors agree with brute force") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 80; ++t) {
    std::size_t n = 2 + t % 2;
    GramForm a = random_form(n, rng, 2);
    // Only trust the box oracle where it is provably large enough: every
    // coordinate of a vector with value <= m is bounded by sqrt(m · (A⁻¹)_ii).
    auto res = minimal_vectors(a);
    RatMatrix inv = inverse(a.matrix());
    bool small = true;
    for (std::size_t i = 0; i < n; ++i) small = small && res.min_sq * inv(i, i) <= 16;
    if (!small) continue;
    auto oracle = brute_minima(a, 4);
    CHECK(res.min_sq == oracle.min_sq);
    CHECK(res.vectors == oracle.vectors);
  }
}

TEST_CASE("vectors below a bound") {
  CHECK(vectors_below(GramForm::identity(2), 1) == std::vector<IntVec>{{0, 1}, {1, 0}});
  CHECK(vectors_below(GramForm::identity(2), 2) ==
        std::vector<IntVec>{{0, 1}, {1, -1}, {1, 0}, {1, 1}});
  GramForm d = GramForm::diagonal({1, 5});
  CHECK(vectors_below(d, 4, EnumerationMode::Raw) == std::vector<IntVec>{{1, 0}, {2, 0}});
  CHECK(vectors_below(d, 4) == std::vector<IntVec>{{1, 0}});
}

TEST_CASE("enumeration is complete against a box oracle") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 40; ++t) {
    GramForm a = random_form(3, rng, 2);
    Rational bound = arithmetic_minimum(a) * 3;
    RatMatrix inv = inverse(a.matrix());
    bool small = true;
    for (std::size_t i = 0; i < 3; ++i) small = small && bound * inv(i, i) <= 25;
    if (!small) continue;
    std::vector<IntVec> expected;
    for (const auto& v : box(3, 5))
      if (a.eval(v) <= bound) expected.push_back(v);
    std::sort(expected.begin(), expected.end());
    CHECK(vectors_below(a, bound, EnumerationMode::Raw) == expected);
  }
}

TEST_CASE("well-roundedness and normalization") {
  CHECK(is_well_rounded(GramForm::identity(3)));
  CHECK_FALSE(is_well_rounded(GramForm::diagonal({1, 2})));
  CHECK(is_well_rounded(GramForm(rat({{2, 1}, {1, 2}}))));
  CHECK(normalize(GramForm::diagonal({2, 4})) == GramForm::diagonal({1, 2}));
  GramForm h = normalize(GramForm(rat({{2, 1}, {1, 2}})));
  CHECK(h.matrix() == RatMatrix{{1, q(1, 2)}, {q(1, 2), 1}});
  CHECK(normalize(h) == h);
}

TEST_CASE("minimal vectors are homothety invariant and equivariant") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 40; ++t) {
    std::size_t n = 2 + t % 3;
    GramForm a = random_form(n, rng);
    auto base = minimal_vectors(a);
    auto scaled = minimal_vectors(a.scaled(q(7, 3)));
    CHECK(scaled.vectors == base.vectors);
    CHECK(scaled.min_sq == base.min_sq * q(7, 3));
    IntMat u = random_sl(n, rng, 4);
    auto moved = minimal_vectors(a.transformed(u));
    CHECK(moved.vectors == base.vectors.transformed(unimodular_inverse(u)));
    CHECK(is_well_rounded(a) == (base.vectors.rank() == n));
  }
}

TEST_CASE("config equivalence and stabilizers") {
  VectorConfig sq({{1, 0}, {0, 1}});
  auto id = config_equiv(sq, sq, GroupSpec::gl(2));
  REQUIRE(id);
  CHECK(sq.transformed(*id) == sq);

  CHECK(config_stabilizer(sq, GroupSpec::gl(2)).order() == 8);
  // Oracle: signed permutations preserving the square configuration.
  std::size_t brute = 0;
  for (const auto& m : signed_permutations(2)) brute += sq.transformed(m) == sq;
  CHECK(brute == 8);

  VectorConfig hex({{1, 0}, {0, 1}, {1, -1}});
  Stabilizer hs = config_stabilizer(hex, GroupSpec::gl(2));
  CHECK(hs.order() == 12);
  for (const auto& g : hs.elements) CHECK(hex.transformed(g) == hex);
  CHECK(config_stabilizer(hex, GroupSpec::sl(2)).order() == 6);
  CHECK(config_stabilizer(sq, GroupSpec::principal(2, 3)).order() == 1);
}

TEST_CASE("config equivalence witnesses on random images") {
  std::mt19937_64 rng(4);
  VectorConfig a3({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, -1, 0}, {0, 1, -1}, {1, 0, -1}});
  for (int t = 0; t < 20; ++t) {
    IntMat g = random_sl(3, rng, 5);
    VectorConfig moved = a3.transformed(g);
    auto u = config_equiv(a3, moved, GroupSpec::sl(3));
    REQUIRE(u);
    CHECK(determinant(*u) == 1);
    CHECK(a3.transformed(*u) == moved);
    auto back = config_equiv(moved, a3, GroupSpec::sl(3));
    REQUIRE(back);
    CHECK(moved.transformed(*back) == a3);
  }
  VectorConfig other({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK_FALSE(config_equiv(a3, other, GroupSpec::gl(3)));
}

TEST_CASE("integer rank") {
  CHECK(int_rank({{1, 2, 3}, {2, 4, 6}}) == 1);
  CHECK(int_rank({{1, 0}, {0, 1}, {1, 1}}) == 2);
  CHECK(VectorConfig({{1, 0}, {0, 1}, {1, 1}}).outer_rank() == 3);
  CHECK_THROWS_AS(VectorConfig({{2, 0}}), InvalidArgument);
}
