#include <numeric>

#include "doctest.h"
#include "support.hpp"
#include "wellround/flags.hpp"
#include "wellround/quotient.hpp"

using namespace wellround;
using namespace testsupport;

namespace {

// Classical invariants of Γ_0(N) ⊂ SL_2(Z), computed from the factorization of N.
struct ModularCurve {
  long index = 1;  // [SL_2(Z) : Γ_0(N)]
  long nu2 = 1, nu3 = 1, cusps = 0;
  long genus() const {
    Rational g = 1 + Rational(index, 12) - Rational(nu2, 4) - Rational(nu3, 3) - Rational(cusps, 2);
    g.canonicalize();
    REQUIRE(g.get_den() == 1);
    return g.get_num().get_si();
  }
};

long phi(long m) {
  long r = 0;
  for (long k = 1; k <= m; ++k) r += std::gcd(k, m) == 1;
  return r;
}

ModularCurve gamma0_curve(long n) {
  ModularCurve c;
  long m = n;
  for (long p = 2; p <= m; ++p) {
    if (m % p) continue;
    int e = 0;
    long pe = 1;
    while (m % p == 0) m /= p, ++e, pe *= p;
    c.index *= pe + pe / p;
    // 1 + (−1/p) and 1 + (−3/p); p² dividing N kills the ramified case.
    c.nu2 *= p == 2 ? (e == 1 ? 1 : 0) : (p % 4 == 1 ? 2 : 0);
    c.nu3 *= p == 3 ? (e == 1 ? 1 : 0) : (p % 3 == 1 ? 2 : 0);
  }
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) c.cusps += phi(std::gcd(d, n / d));
  return c;
}

// Orbifold Euler characteristic Σ (−1)^dim / |stabilizer|.
Rational orbifold_euler(const OrbitComplex& c) {
  Rational e = 0;
  for (const auto& co : c.cells) {
    Rational t(1, static_cast<long>(co.stabilizer.order()));
    e += co.cell.dim % 2 ? Rational(-t) : t;
  }
  e.canonicalize();
  return e;
}

long alternating(const std::vector<std::size_t>& b) {
  long e = 0;
  for (std::size_t k = 0; k < b.size(); ++k) e += (k % 2 ? -1 : 1) * static_cast<long>(b[k]);
  return e;
}

}  // namespace

TEST_CASE("orbifold Euler characteristic matches the index") {
  // χ(SL_2(Z)) = −1/12, scaled by the index in SL_2(Z).
  CHECK(orbifold_euler(enumerate_W(GroupSpec::sl(2))) == q(-1, 12));
  CHECK(orbifold_euler(enumerate_W(GroupSpec::gl(2))) == q(-1, 24));
  for (long n : {2L, 3L, 4L, 5L, 7L, 11L}) {
    CAPTURE(n);
    // Γ_0(N) contains −1, so its index in SL_2(Z) equals the projective index.
    CHECK(orbifold_euler(enumerate_W(GroupSpec::gamma0(2, n))) == q(-gamma0_curve(n).index, 12));
  }
  // Γ(3) has index 24 in SL_2(Z).
  CHECK(orbifold_euler(enumerate_W(GroupSpec::principal(2, 3))) == -2);
  // χ(SL_3(Z)) = 0.
  CHECK(orbifold_euler(enumerate_W(GroupSpec::sl(3))) == 0);
}

TEST_CASE("homology of modular curves") {
  // W/Γ ≃ Y_0(N), an open surface of genus g with c punctures: H_1 has rank 2g + c − 1.
  for (long n : {2L, 3L, 4L, 5L, 7L, 11L}) {
    CAPTURE(n);
    ModularCurve m = gamma0_curve(n);
    QuotientComplex w = barycentric_quotient(enumerate_W(GroupSpec::gamma0(2, n)));
    HomologyResult h = homology(w, Field::rationals());
    REQUIRE(h.betti.size() == 2);
    CHECK(h.betti[0] == 1);
    CHECK(static_cast<long>(h.betti[1]) == 2 * m.genus() + m.cusps - 1);
    CHECK(w.euler_characteristic() == alternating(h.betti));
  }
  QuotientComplex g3 = barycentric_quotient(enumerate_W(GroupSpec::principal(2, 3)));
  CHECK(homology(g3, Field::rationals()).betti == std::vector<std::size_t>{1, 3});
}

TEST_CASE("level one quotients are contractible or acyclic") {
  for (auto g : {GroupSpec::sl(2), GroupSpec::gl(2)}) {
    QuotientComplex w = barycentric_quotient(enumerate_W(g));
    CHECK(homology(w, std::nullopt).betti == std::vector<std::size_t>{1, 0});
    CHECK(homology(w, Field::prime(2)).betti == std::vector<std::size_t>{1, 0});
  }
  QuotientComplex w3 = barycentric_quotient(enumerate_W(GroupSpec::sl(3)));
  CHECK(w3.dimension() == 3);
  CHECK(homology(w3, Field::rationals()).betti == std::vector<std::size_t>{1, 0, 0, 0});
  CHECK(w3.euler_characteristic() == 1);
}

TEST_CASE("integral homology and universal coefficients") {
  // Torsion-free groups give torsion-free graphs.
  QuotientComplex g3 = barycentric_quotient(enumerate_W(GroupSpec::principal(2, 3)));
  HomologyResult hz = homology(g3, std::nullopt);
  for (const auto& t : hz.torsion) CHECK(t.empty());
  // For any complex, dim over F_p = rank + (number of p-divisible invariant factors in H_k and H_{k−1}).
  QuotientComplex w3 = barycentric_quotient(enumerate_W(GroupSpec::sl(3)));
  HomologyResult z = homology(w3, std::nullopt);
  for (long p : {2L, 3L, 5L}) {
    HomologyResult f = homology(w3, Field::prime(p));
    for (std::size_t k = 0; k < f.betti.size(); ++k) {
      std::size_t expect = z.betti[k];
      for (const auto& t : z.torsion[k]) expect += t % p == 0;
      if (k > 0)
        for (const auto& t : z.torsion[k - 1]) expect += t % p == 0;
      CAPTURE(p);
      CAPTURE(k);
      CHECK(f.betti[k] == expect);
    }
  }
  HomologyResult co = cohomology(w3, std::nullopt);
  for (std::size_t k = 1; k < co.torsion.size(); ++k) CHECK(co.torsion[k] == z.torsion[k - 1]);
}

TEST_CASE("boundary matrices square to zero") {
  for (auto g : {GroupSpec::sl(3), GroupSpec::gamma0(2, 11), GroupSpec::gamma0(3, 2)}) {
    QuotientComplex w = barycentric_quotient(enumerate_W(g));
    for (std::size_t k = 2; k <= w.dimension(); ++k) {
      ZMatrix z = w.boundary(k - 1) * w.boundary(k);
      for (const auto& x : z.data()) CHECK(x == 0);
    }
  }
}

TEST_CASE("a small-enough group gives a regular complex") {
  QuotientComplex w = barycentric_quotient(enumerate_W(GroupSpec::principal(2, 3)));
  const ZMatrix& d = w.boundary(1);
  for (std::size_t j = 0; j < d.cols(); ++j) {
    int nonzero = 0;
    for (std::size_t i = 0; i < d.rows(); ++i) {
      CHECK(abs(d(i, j)) <= 1);
      nonzero += d(i, j) != 0;
    }
    CHECK(nonzero == 2);
  }
}

TEST_CASE("flag subcomplexes and their inclusions") {
  GroupSpec g = GroupSpec::gamma0(2, 11);
  QuotientComplex w = barycentric_quotient(enumerate_W(g));
  FlagOrbitSet cusps = flag_orbits(g, {1});
  REQUIRE(cusps.count() == 2);
  for (const auto& f : cusps.reps) {
    QuotientComplex wf = barycentric_quotient(subcomplex_WF(g, f));
    // Each W_F/(Γ∩P) is a circle.
    CHECK(homology(wf, std::nullopt).betti == std::vector<std::size_t>{1, 1});
    CHECK(wf.euler_characteristic() == 0);
    ChainMap m = induced_map(wf, w, IntMat::identity(2));
    CHECK(is_chain_map(m, wf, w));
    CHECK(induced_rank_homology(m, wf, w, 0, Field::rationals()) == 1);
    CHECK(induced_rank_homology(m, wf, w, 1, Field::rationals()) == 1);
  }
  // The identity map of a complex into itself.
  ChainMap id = induced_map(w, w, IntMat::identity(2));
  for (std::size_t k = 0; k <= w.dimension(); ++k) CHECK(id.matrices[k] == ZMatrix::identity(w.count(k)));
  // Locating a moved chain.
  std::mt19937_64 rng(5);
  for (const auto& s : w.simplices(1)) {
    IntMat u = random_element(g, rng, 4);
    std::vector<VectorConfig> moved;
    for (const auto& c : s.chain) moved.push_back(c.transformed(u));
    CHECK(w.simplices(1)[w.locate(moved)].chain == s.chain);
  }
}

TEST_CASE("flag subcomplexes for SL_3") {
  GroupSpec g = GroupSpec::sl(3);
  auto betti = [&](std::vector<std::size_t> type) {
    return homology(barycentric_quotient(subcomplex_WF(g, RationalFlag::standard(3, type))), Field::rationals())
        .betti;
  };
  CHECK(betti({1}) == std::vector<std::size_t>{1, 0, 0, 0});
  CHECK(betti({2}) == std::vector<std::size_t>{1, 0, 0, 0});
  // The Borel face is a closed orientable 3-manifold up to homotopy.
  CHECK(betti({1, 2}) == std::vector<std::size_t>{1, 0, 0, 1});
}
