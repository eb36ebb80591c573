#include <algorithm>

#include "doctest.h"
#include "support.hpp"
#include "wellround/io.hpp"
#include "wellround/svg.hpp"

using namespace wellround;
using namespace testsupport;

TEST_CASE("rationals") {
  CHECK(encode(q(1, 2)) == "1/2");
  CHECK(encode(q(4, 2)) == "2");
  CHECK(encode(q(-3, 6)) == "-1/2");
  CHECK(decode_rational(Json("6/4")) == q(3, 2));
  CHECK(decode_rational(Json(7)) == 7);
  CHECK_THROWS_AS(decode_rational(Json("1/0")), InvalidArgument);
  CHECK_THROWS_AS(decode_rational(Json("x")), InvalidArgument);
  CHECK_THROWS_AS(decode_rational(Json(0.5)), InvalidArgument);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> d(-1000, 1000);
  for (int t = 0; t < 200; ++t) {
    long den = d(rng);
    if (den == 0) continue;
    Rational x = q(d(rng), den);
    CHECK(decode_rational(encode(x)) == x);
  }
}

TEST_CASE("forms, configurations, groups and flags") {
  Json f = Json::parse(R"({"n": 2, "rows": [["1","1/2"],["1/2","1"]]})");
  GramForm a = decode_form(f);
  CHECK(a.matrix() == RatMatrix{{1, q(1, 2)}, {q(1, 2), 1}});
  CHECK(encode(a) == f);
  CHECK_THROWS_AS(decode_form(Json::parse(R"({"rows": [["1","2"],["2","1"]]})")), NotPositiveDefinite);
  CHECK_THROWS_AS(decode_form(Json::parse(R"({"n": 3, "rows": [["1"]]})")), DimensionMismatch);

  Json c = Json::parse("[[0,1],[1,0]]");
  CHECK(encode(decode_config(c)) == c);
  CHECK(decode_config(Json::parse("[[0,-1],[-1,0]]")) == decode_config(c));
  CHECK_THROWS_AS(decode_config(Json::parse("[[2,0]]")), InvalidArgument);

  Json g = Json::parse(R"({"n":2,"family":"gamma0","level":11})");
  CHECK(decode_group(g) == GroupSpec::gamma0(2, 11));
  CHECK(encode(decode_group(g)) == g);
  CHECK_THROWS_AS(decode_group(Json::parse(R"({"n":2,"family":"nope"})")), InvalidArgument);

  Json fl = Json::parse(R"({"n":3,"members":[[[1],[0],[0]]]})");
  RationalFlag flag = decode_flag(fl);
  CHECK(flag == RationalFlag::standard(3, {1}));
  CHECK(decode_flag(encode(flag)) == flag);
  RationalFlag full = RationalFlag::standard(3, {1, 2}).transformed(ints({{1, 2, 0}, {0, 1, 0}, {1, 1, 1}}));
  CHECK(decode_flag(encode(full)) == full);

  CHECK(!parse_coefficients("Z"));
  CHECK(parse_coefficients("Q")->is_rational());
  CHECK(parse_coefficients("Fp:5")->characteristic() == 5);
  CHECK_THROWS_AS(parse_coefficients("Fp:6"), InvalidArgument);
  CHECK_THROWS_AS(parse_coefficients("R"), InvalidArgument);
}

TEST_CASE("complexes round-trip") {
  for (auto g : {GroupSpec::sl(2), GroupSpec::gamma0(2, 11), GroupSpec::sl(3)}) {
    OrbitComplex c = enumerate_W(g);
    Json j = encode(c);
    CHECK(j["cells"].size() == c.cells.size());
    OrbitComplex back = decode_complex(j);
    CHECK(encode(back) == j);
    CHECK(decode_complex(Json::parse(j.dump())).counts_by_dim() == c.counts_by_dim());
  }
  OrbitComplex wf = subcomplex_WF(GroupSpec::sl(3), RationalFlag::standard(3, {1}));
  CHECK(encode(decode_complex(encode(wf))) == encode(wf));
  // A witness with the wrong minimal vectors is rejected.
  Json bad = encode(enumerate_W(GroupSpec::sl(2)));
  bad["cells"][0]["witness"] = encode(GramForm::identity(2));
  CHECK_THROWS_AS(decode_complex(bad), InvalidArgument);
}

TEST_CASE("reports are plain JSON") {
  RetractionTrace t = retract(GramForm::diagonal({1, 2}));
  Json j = encode(t, true);
  CHECK(j["finalForm"] == encode(GramForm::identity(2)));
  CHECK(j["stages"].size() == 1);
  CHECK(!encode(t, false).contains("stages"));
  Json err = error_json("NotSpanning", "x");
  CHECK(err["error"]["kind"] == "NotSpanning");
}

TEST_CASE("tree picture") {
  OrbitComplex w = enumerate_W(GroupSpec::sl(2));
  std::string svg = svg_tree(w);
  // The fundamental arc runs from i = (0, 1) to e^{iπ/3} = (1/2, √3/2) in a 300 px/unit frame.
  CHECK(svg.find("class=\"fundamental\" d=\"M 450.000 150.000 A 300.000 300.000 0 0 1 600.000 190.192\"") !=
        std::string::npos);
  CHECK(std::count(svg.begin(), svg.end(), '\n') > 20);
  SvgWindow empty;
  empty.x_max = empty.x_min;
  std::string e = svg_tree(w, empty);
  CHECK(e.find("<path") == std::string::npos);
  CHECK(e.find("</svg>") != std::string::npos);
  SvgWindow above;
  above.y_min = 1.5;
  above.y_max = 3;
  CHECK(svg_tree(w, above).find("<path") == std::string::npos);
  CHECK(svg_tree(w) == svg);
  CHECK_THROWS_AS(svg_tree(enumerate_W(GroupSpec::sl(3))), DimensionUnsupported);
}
