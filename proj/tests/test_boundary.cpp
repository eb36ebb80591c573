#include <numeric>

#include "doctest.h"
#include "support.hpp"
#include "wellround/boundary.hpp"

using namespace wellround;
using namespace testsupport;

namespace {

// Cusps of Γ_0(N): Σ_{d | N} φ(gcd(d, N/d)).
long gamma0_cusps(long n) {
  long c = 0;
  for (long d = 1; d <= n; ++d) {
    if (n % d) continue;
    long g = std::gcd(d, n / d), phi = 0;
    for (long k = 1; k <= g; ++k) phi += std::gcd(k, g) == 1;
    c += phi;
  }
  return c;
}

long euler(const std::vector<std::size_t>& b) {
  long e = 0;
  for (std::size_t k = 0; k < b.size(); ++k) e += (k % 2 ? -1 : 1) * static_cast<long>(b[k]);
  return e;
}

long page_euler(const SpectralPage& page) {
  long e = 0;
  for (std::size_t p = 0; p < page.dims.size(); ++p)
    for (std::size_t q = 0; q < page.dims[p].size(); ++q) e += ((p + q) % 2 ? -1 : 1) * static_cast<long>(page.dims[p][q]);
  return e;
}

}  // namespace

TEST_CASE("boundary of a modular curve is a union of circles") {
  const Field Q = Field::rationals();
  for (long n : {1L, 2L, 4L, 5L, 11L}) {
    CAPTURE(n);
    GroupSpec g = n == 1 ? GroupSpec::sl(2) : GroupSpec::gamma0(2, n);
    DoubleComplex dc = build_double_complex(g);
    CHECK(dc.column_count() == 1);
    CHECK(static_cast<long>(dc.columns[0].size()) == gamma0_cusps(n));
    CHECK(dc.d_squared_zero());
    std::size_t c = static_cast<std::size_t>(gamma0_cusps(n));
    CHECK(total_cohomology(dc, Q).betti == std::vector<std::size_t>{c, c});
    HomologyResult z = total_cohomology(dc, std::nullopt);
    CHECK(z.betti == std::vector<std::size_t>{c, c});
    for (const auto& t : z.torsion) CHECK(t.empty());
  }
  // Γ(3): four cusps.
  DoubleComplex g3 = build_double_complex(GroupSpec::principal(2, 3));
  CHECK(total_cohomology(g3, Field::rationals()).betti == std::vector<std::size_t>{4, 4});
}

TEST_CASE("restriction for modular curves") {
  // H^1(Y) → H^1(∂Y) has rank c − 1 and kernel of dimension 2g.
  const Field Q = Field::rationals();
  struct Case {
    GroupSpec g;
    std::size_t cusps, genus;
  };
  for (const auto& [g, c, genus] : {Case{GroupSpec::sl(2), 1, 0}, Case{GroupSpec::gamma0(2, 11), 2, 1},
                                    Case{GroupSpec::gamma0(2, 4), 3, 0}, Case{GroupSpec::principal(2, 3), 4, 0}}) {
    CAPTURE(g.name());
    DoubleComplex dc = build_double_complex(g);
    QuotientComplex w = barycentric_quotient(enumerate_W(g));
    RestrictionReport r = restriction(dc, w, Q);
    REQUIRE(r.degrees.size() == 2);
    CHECK(r.degrees[0].rank == 1);
    CHECK(r.degrees[1].rank == c - 1);
    CHECK(r.degrees[1].interior == 2 * genus);
    CHECK(r.degrees[1].dim_total == c);
    auto bh = boundary_homology(dc, w, Q);
    // Dually the boundary circles span a (c − 1)-dimensional subspace of H_1(Y).
    CHECK(bh[1].image_rank == c - 1);
    CHECK(bh[0].image_rank == 1);
  }
  // Over F_2 the SL_2 boundary circle still restricts trivially in degree 1.
  RestrictionReport f2 = restriction(GroupSpec::sl(2), Field::prime(2));
  CHECK(f2.degrees[1].rank == 0);
}

TEST_CASE("spectral sequence for SL_3 and GL_3") {
  const Field Q = Field::rationals();
  for (auto g : {GroupSpec::sl(3), GroupSpec::gl(3)}) {
    CAPTURE(g.name());
    DoubleComplex dc = build_double_complex(g);
    CHECK(dc.column_count() == 2);
    CHECK(dc.d_squared_zero());
    SpectralSequence ss = spectral_sequence(dc, Q);
    CHECK(ss.d1_squared_zero);
    REQUIRE(ss.pages.size() == 3);
    // The sequence degenerates at E_2.
    CHECK(ss.pages[1].dims == ss.pages.back().dims);
    CHECK(page_euler(ss.pages[0]) == euler(ss.abutment));
    // E_∞ is graded for the abutment.
    for (std::size_t k = 0; k < ss.abutment.size(); ++k) {
      std::size_t sum = 0;
      for (std::size_t p = 0; p < 2; ++p)
        if (k >= p && k - p < ss.pages.back().dims[p].size()) sum += ss.pages.back().dims[p][k - p];
      CHECK(sum == ss.abutment[k]);
    }
    CHECK(ss.abutment == std::vector<std::size_t>{1, 0, 0, 0, 1});
    // d_1 ranks agree with the explicit matrices.
    for (const auto& d : ss.pages[0].differentials) {
      REQUIRE(d.matrix);
      CHECK(d.rank == (d.matrix->rows() && d.matrix->cols() ? rank(*d.matrix, Q) : 0));
    }
  }
}

TEST_CASE("a level-2 group in rank three") {
  const Field Q = Field::rationals();
  DoubleComplex dc = build_double_complex(GroupSpec::gamma0(3, 2));
  SpectralSequence ss = spectral_sequence(dc, Q);
  CHECK(ss.d1_squared_zero);
  CHECK(page_euler(ss.pages[0]) == euler(ss.abutment));
  CHECK(ss.pages[1].dims == ss.pages.back().dims);
}

TEST_CASE("results do not depend on representatives") {
  const Field Q = Field::rationals();
  for (auto g : {GroupSpec::gamma0(2, 11), GroupSpec::principal(2, 3), GroupSpec::sl(3)}) {
    CAPTURE(g.name());
    DoubleComplex base = build_double_complex(g);
    SpectralSequence s0 = spectral_sequence(base, Q);
    QuotientComplex w = barycentric_quotient(enumerate_W(g));
    RestrictionReport r0 = restriction(base, w, Q);
    for (std::uint64_t seed : {3u, 17u}) {
      DoubleComplexOptions opt;
      opt.reseed = seed;
      DoubleComplex other = build_double_complex(g, opt);
      SpectralSequence s1 = spectral_sequence(other, Q);
      REQUIRE(s1.pages.size() == s0.pages.size());
      for (std::size_t r = 0; r < s0.pages.size(); ++r) {
        CHECK(s1.pages[r].dims == s0.pages[r].dims);
        REQUIRE(s1.pages[r].differentials.size() == s0.pages[r].differentials.size());
        for (std::size_t i = 0; i < s0.pages[r].differentials.size(); ++i)
          CHECK(s1.pages[r].differentials[i].rank == s0.pages[r].differentials[i].rank);
      }
      RestrictionReport r1 = restriction(other, w, Q);
      for (std::size_t q = 0; q < r0.degrees.size(); ++q) CHECK(r1.degrees[q].rank == r0.degrees[q].rank);
    }
  }
}

TEST_CASE("face maps") {
  const Field Q = Field::rationals();
  GroupSpec g = GroupSpec::gamma0(2, 11);
  QuotientComplex w = barycentric_quotient(enumerate_W(g));
  for (const auto& f : flag_orbits(g, {1}).reps) {
    FaceMapReport r = face_map(f, w, Q);
    CHECK(r.homology_rank == std::vector<std::size_t>{1, 1});
    CHECK(r.cohomology_rank == std::vector<std::size_t>{1, 1});
  }
  QuotientComplex w3 = barycentric_quotient(enumerate_W(GroupSpec::sl(3)));
  FaceMapReport borel = face_map(RationalFlag::standard(3, {1, 2}), w3, Q);
  CHECK(borel.homology_rank == std::vector<std::size_t>{1, 0, 0, 0});
  CHECK_THROWS_AS(face_map(RationalFlag::standard(2, {1}), w3, Q), DimensionMismatch);
}
