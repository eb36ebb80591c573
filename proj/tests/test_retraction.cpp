#include <cmath>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "wellround/flags.hpp"
#include "wellround/retraction.hpp"

using namespace wellround;
using namespace testsupport;

namespace {

RatMatrix diag(std::initializer_list<long> d) {
  RatMatrix m(d.size(), d.size());
  std::size_t i = 0;
  for (long x : d) m(i, i) = x, ++i;
  return m;
}

// Random flag built from a random unimodular basis.
RationalFlag random_flag(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<unsigned> mask(1, (1u << (n - 1)) - 1);
  unsigned m = mask(rng);
  std::vector<std::size_t> dims;
  for (std::size_t d = 1; d < n; ++d)
    if (m >> (d - 1) & 1) dims.push_back(d);
  return RationalFlag::from_basis(random_sl(n, rng, 5), dims);
}

std::vector<Rational> random_rho(std::size_t k, std::mt19937_64& rng, const std::vector<Rational>& cap) {
  std::uniform_int_distribution<int> num(1, 8);
  std::vector<Rational> r;
  for (std::size_t j = 0; j < k; ++j) {
    Rational x = q(num(rng), 8);
    if (!cap.empty()) x *= cap[j];
    r.push_back(x);
  }
  return r;
}

bool respects(const GramForm& w, const RationalFlag& f) {
  auto mv = minimal_vectors(w).vectors;
  for (std::size_t j = 0; j < f.length(); ++j) {
    std::vector<IntVec> inside;
    for (const auto& v : mv.vectors())
      if (f.contains(j, v)) inside.push_back(v);
    if (int_rank(inside) != f.member_dim(j)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("flag splitting examples") {
  FlagSplitting a = flag_split(GramForm::identity(2), standard_flag(2, {1}));
  CHECK(a.projectors[0] == diag({1, 0}));
  CHECK(a.projectors[1] == diag({0, 1}));
  GramForm g(RatMatrix{{1, q(1, 2)}, {q(1, 2), 2}});
  FlagSplitting b = flag_split(g, standard_flag(2, {1}));
  CHECK(b.projectors[1] * std::vector<Rational>{0, 1} == std::vector<Rational>{q(-1, 2), 1});
}

TEST_CASE("flag splitting is an orthogonal decomposition") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 30; ++t) {
    std::size_t n = 2 + t % 3;
    GramForm a = random_form(n, rng);
    RationalFlag f = random_flag(n, rng);
    FlagSplitting s = flag_split(a, f);
    RatMatrix sum(n, n), recon(n, n);
    for (std::size_t i = 0; i < s.blocks(); ++i) {
      sum += s.projectors[i];
      recon += s.projectors[i].transpose() * a.matrix() * s.projectors[i];
      for (std::size_t j = 0; j < s.blocks(); ++j) {
        if (i == j) continue;
        RatMatrix cross = s.projectors[i].transpose() * a.matrix() * s.projectors[j];
        CHECK(cross == RatMatrix(n, n));
      }
      CHECK(rank(s.projectors[i]) == s.bounds[i + 1] - s.bounds[i]);
    }
    CHECK(sum == RatMatrix::identity(n));
    CHECK(recon == a.matrix());
  }
}

TEST_CASE("scaling along a flag") {
  GramForm i2 = GramForm::identity(2);
  RationalFlag f = standard_flag(2, {1});
  CHECK(scale_along_flag(i2, f, ScalingVector::ones(2)) == i2);
  CHECK(scale_along_flag(i2, f, ScalingVector({1, q(1, 2)})).matrix() == RatMatrix{{1, 0}, {0, q(1, 2)}});
  CHECK(scale_along_flag(GramForm::diagonal({1, 2}), f, ScalingVector({1, 4})) ==
        GramForm::diagonal({1, 8}));
  CHECK_THROWS_AS(scale_along_flag(i2, f, ScalingVector({1, 2, 3})), DimensionMismatch);
}

TEST_CASE("scaling is a group action preserving the flag splitting") {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 30; ++t) {
    std::size_t n = 2 + t % 3;
    GramForm a = random_form(n, rng);
    RationalFlag f = random_flag(n, rng);
    ScalingVector s = ScalingVector::from_rho(random_rho(f.length(), rng, {}));
    ScalingVector u = ScalingVector::from_rho(random_rho(f.length(), rng, {}));
    GramForm once = scale_along_flag(scale_along_flag(a, f, s), f, u);
    CHECK(once == scale_along_flag(a, f, s * u));
    // The splitting for the scaled form has the same projectors.
    FlagSplitting before = flag_split(a, f), after = flag_split(scale_along_flag(a, f, s), f);
    for (std::size_t j = 0; j < before.blocks(); ++j) CHECK(before.projectors[j] == after.projectors[j]);
    CHECK(ScalingVector::from_rho(s.rho_sq()).s_sq() == s.s_sq());
  }
}

TEST_CASE("stopping values") {
  CHECK(stopping_mu(GramForm::diagonal({1, 2}), IntMat{{1}, {0}}) == q(1, 2));
  GramForm g(RatMatrix{{1, q(1, 2)}, {q(1, 2), 2}});
  std::vector<IntVec> tight;
  CHECK(stopping_mu(g, IntMat{{1}, {0}}, &tight) == q(3, 7));
  CHECK(!tight.empty());
  CHECK_THROWS_AS(stopping_mu(GramForm::identity(2), IntMat::identity(2)), AlreadyFull);
}

TEST_CASE("retraction examples") {
  auto i3 = retract(GramForm::identity(3));
  CHECK(i3.final_form == GramForm::identity(3));
  for (const auto& st : i3.stages) CHECK(st.mu_sq == 1);

  auto d12 = retract(GramForm::diagonal({1, 2}));
  CHECK(d12.final_form == GramForm::identity(2));
  REQUIRE(d12.stages.size() == 1);
  CHECK(d12.stages[0].mu_sq == q(1, 2));
  CHECK(d12.irredundant == standard_flag(2, {1}));

  auto h = retract(GramForm(rat({{2, 1}, {1, 4}})));
  CHECK(h.start.matrix() == RatMatrix{{1, q(1, 2)}, {q(1, 2), 2}});
  CHECK(h.final_form.matrix() == RatMatrix{{1, q(1, 2)}, {q(1, 2), 1}});
  CHECK(h.stages[0].mu_sq == q(3, 7));

  auto d113 = retract(GramForm::diagonal({1, 1, 3}));
  CHECK(d113.final_form == GramForm::identity(3));
  REQUIRE(d113.stages.size() == 2);
  CHECK(d113.stages[0].span == d113.stages[1].span);
  CHECK(d113.stages[0].span.cols() == 2);
  CHECK(d113.stages[1].mu_sq == q(1, 3));
  CHECK(d113.irredundant == standard_flag(3, {2}));
}

TEST_CASE("retraction is sound on random forms") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 60; ++t) {
    std::size_t n = 2 + t % 3;
    GramForm a = random_form(n, rng);
    auto tr = retract(a);
    CHECK(is_well_rounded(tr.final_form));
    CHECK(arithmetic_minimum(tr.final_form) == 1);
    CHECK(retract(tr.final_form).final_form == tr.final_form);
    CHECK(scale_along_flag(tr.start, tr.irredundant, tr.composite()) == tr.final_form);
    for (const auto& st : tr.stages) CHECK((sgn(st.mu_sq) > 0 && st.mu_sq <= 1));
    CHECK(respects(tr.final_form, tr.irredundant));
    IntMat u = random_sl(n, rng, 5);
    CHECK(retract(a.transformed(u)).final_form == tr.final_form.transformed(u));
  }
}

TEST_CASE("orthant invariance along subflags of successive minima") {
  std::mt19937_64 rng(24);
  int checked = 0;
  for (int t = 0; t < 60; ++t) {
    std::size_t n = 2 + t % 3;
    GramForm a = random_form(n, rng);
    auto tr = retract(a);
    if (tr.irredundant.empty()) continue;
    // Random subflag.
    RationalFlag sub = tr.irredundant;
    std::uniform_int_distribution<int> coin(0, 1);
    for (std::size_t j = sub.length(); j-- > 0;)
      if (sub.length() > 1 && coin(rng)) sub = sub.without(j);
    ScalingVector rho = ScalingVector::from_rho(random_rho(sub.length(), rng, {}));
    CHECK(retract(scale_along_flag(tr.start, sub, rho)).final_form == tr.final_form);
    ++checked;
  }
  CHECK(checked > 20);
}

TEST_CASE("orthant bound examples") {
  auto a = orthant_bound(GramForm::identity(2), standard_flag(2, {1}));
  CHECK(a.alpha_sq == std::vector<Rational>{1});
  CHECK(a.beta_sq == std::vector<Rational>{1});
  CHECK(a.t_sq == std::vector<Rational>{q(1, 4)});
  auto b = orthant_bound(GramForm::diagonal({1, 2}), standard_flag(2, {1}));
  CHECK(b.alpha_sq == std::vector<Rational>{2});
  CHECK(b.t_sq == std::vector<Rational>{q(1, 2)});
  auto c = orthant_bound(GramForm::identity(3), standard_flag(3, {1, 2}));
  CHECK(c.t_sq == std::vector<Rational>{q(1, 4), 1});
  CHECK(c.alpha_sq == std::vector<Rational>{1, 1});
}

TEST_CASE("orthant bound yields a common retraction image") {
  std::mt19937_64 rng(25);
  for (int t = 0; t < 20; ++t) {
    std::size_t n = 2 + t % 2;
    GramForm a = random_form(n, rng, 2);
    RationalFlag f = random_flag(n, rng);
    OrthantBound ob = orthant_bound(a, f);
    for (const auto& x : ob.t_sq) CHECK((sgn(x) > 0 && x <= 1));
    std::optional<GramForm> common;
    for (int s = 0; s < 3; ++s) {
      ScalingVector rho = ScalingVector::from_rho(random_rho(f.length(), rng, ob.t_sq));
      GramForm image = retract(scale_along_flag(a, f, rho)).final_form;
      if (!common) common = image;
      CHECK(image == *common);
    }
    CHECK(respects(*common, f));
  }
}

TEST_CASE("retraction path") {
  GramForm d = GramForm::diagonal({1, 2});
  CHECK(retract_path(d, 0, q(1, 1000)) == d);
  CHECK(retract_path(d, 1, q(1, 1000)) == GramForm::identity(2));
  Rational eps = q(1, 1000000);
  GramForm mid = retract_path(d, q(1, 2), eps);
  CHECK(mid.matrix()(0, 0) == 1);
  CHECK(mid.matrix()(0, 1) == 0);
  // (1 + (√½ − 1)/2)² · 2 = (3 + 2√2)/4 · ... evaluated against a double reference.
  double expected = 2 * (1 + (std::sqrt(0.5) - 1) / 2) * (1 + (std::sqrt(0.5) - 1) / 2);
  CHECK(std::abs(mid.matrix()(1, 1).get_d() - expected) < 1e-6);
}
