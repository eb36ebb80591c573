#include <random>

#include "doctest.h"
#include "support.hpp"
#include "wellround/cells.hpp"
#include "wellround/flags.hpp"
#include "wellround/retraction.hpp"

using namespace wellround;
using namespace testsupport;

namespace {

// Minimal vectors of a witness by a box scan, independent of Fincke–Pohst.
bool box_certifies(const Cell& c, int r) {
  for (const auto& v : box(c.config.dim(), r)) {
    if (!is_primitive(v)) continue;
    Rational x = c.witness.eval(v);
    if (c.config.contains(v) ? x != 1 : x <= 1) return false;
  }
  return true;
}

VectorConfig cfg(std::initializer_list<IntVec> vs) { return VectorConfig(std::vector<IntVec>(vs)); }

}  // namespace

TEST_CASE("cells from configurations") {
  Cell edge = cell_from_config(cfg({{1, 0}, {0, 1}}));
  CHECK(edge.dim == 1);
  CHECK(box_certifies(edge, 4));
  Cell hex = cell_from_config(cfg({{1, 0}, {0, 1}, {1, 1}}));
  CHECK(hex.dim == 0);
  CHECK(hex.witness.matrix() == RatMatrix{{1, q(-1, 2)}, {q(-1, 2), 1}});
  CHECK_THROWS_AS(cell_from_config(cfg({{1, 0}})), NotSpanning);
  CHECK_THROWS_AS(cell_from_config(cfg({{1, 0}, {0, 1}, {1, 1}, {1, -1}})), Infeasible);
  // Two 0-cells of W for GL_3 whose stabilizers meet a parabolic.
  Cell left = cell_from_config(cfg({{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}, {0, 1, 1}, {-1, 0, 1}}));
  Cell right = cell_from_config(cfg({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}}));
  CHECK(left.dim == 0);
  CHECK(right.dim == 0);
  CHECK(box_certifies(left, 3));
  CHECK(box_certifies(right, 3));
  CHECK(cell_from_config(cfg({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})).dim == 3);
}

TEST_CASE("cells of retracted forms") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 20; ++t) {
    std::size_t n = 2 + t % 2;
    GramForm w = retract(random_form(n, rng)).final_form;
    VectorConfig s = minimal_vectors(w).vectors;
    Cell c = cell_from_config(s);
    CHECK(c.dim == cell_dimension(s));
    CHECK(box_certifies(c, 3));
    IntMat u = random_sl(n, rng, 4);
    Cell moved = cell_from_config(s.transformed(u));
    CHECK(moved.dim == c.dim);
  }
}

TEST_CASE("stars and edges in dimension two") {
  Cell hex = root_vertex(2, IntMat::identity(2));
  StarOracle oracle;
  auto star = oracle.star(hex);
  CHECK(star.size() == 3);
  for (const auto& e : star) {
    CHECK(cell_dimension(e) == 1);
    Cell other = edge_endpoint(hex, e);
    CHECK(other.config != hex.config);
    CHECK(other.config.size() == 3);
    CHECK(box_certifies(other, 4));
  }
  CHECK(cell_cofaces(hex).size() == 3);
  Cell edge = cell_from_config(cfg({{1, 0}, {0, 1}}));
  auto faces = cell_faces(edge);
  REQUIRE(faces.size() == 2);
  CHECK(faces[0].config.size() == 3);
  CHECK(faces[1].config.size() == 3);
  CHECK(cell_cofaces(edge).empty());
}

TEST_CASE("closures are balls") {
  // Σ (−1)^dim over the closed cell is 1.
  std::mt19937_64 rng(32);
  for (int t = 0; t < 6; ++t) {
    GramForm w = retract(random_form(3, rng)).final_form;
    Cell c = cell_from_config(minimal_vectors(w).vectors);
    long euler = c.dim % 2 ? -1 : 1;
    auto faces = cell_faces(c);
    for (const auto& f : faces) {
      euler += f.dim % 2 ? -1 : 1;
      CHECK(f.dim < c.dim);
      CHECK(box_certifies(f, 2));
    }
    CHECK(euler == 1);
  }
  Cell top = cell_from_config(cfg({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  long euler = -1;
  for (const auto& f : cell_faces(top)) euler += f.dim % 2 ? -1 : 1;
  CHECK(euler == 1);
}

TEST_CASE("flags respected by cells") {
  Cell edge = cell_from_config(cfg({{1, 0}, {0, 1}}));
  auto flags = flags_respected_by(edge);
  REQUIRE(flags.size() == 2);
  CHECK(respects_flag(edge, standard_flag(2, {1})));
  CHECK_FALSE(respects_flag(edge, RationalFlag(2, {IntMat{{1}, {1}}})));
  Cell a3 = root_vertex(3, IntMat::identity(3));
  for (const auto& f : flags_respected_by(a3)) CHECK(respects_flag(a3, f));
  // Lines: 6 roots. Planes: 4 of type A2 and 3 of type A1×A1.
  std::size_t lines = 0, planes = 0, full = 0;
  for (const auto& f : flags_respected_by(a3)) {
    if (f.length() == 2) ++full;
    else if (f.member_dim(0) == 1) ++lines;
    else ++planes;
  }
  CHECK(lines == 6);
  CHECK(planes == 7);
  CHECK(full == 4 * 3 + 3 * 2);
}

TEST_CASE("root vertex moved by a unimodular matrix") {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 5; ++t) {
    IntMat u = random_sl(3, rng, 5);
    Cell c = root_vertex(3, u);
    CHECK(c.dim == 0);
    CHECK(box_certifies(c, 2));
  }
}
