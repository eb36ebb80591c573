#pragma once

#include <json.hpp>
#include <string>

#include "wellround/boundary.hpp"
#include "wellround/flags.hpp"
#include "wellround/orbit_complex.hpp"
#include "wellround/quotient.hpp"
#include "wellround/retraction.hpp"

namespace wellround {

using Json = nlohmann::json;

// Rationals are strings "p/q", or "p" when q = 1. Integers are accepted too.
Json encode(const Rational& x);
Rational decode_rational(const Json& j);

Json encode(const RatMatrix& m);
RatMatrix decode_rat_matrix(const Json& j);
Json encode(const IntMat& m);  // plain integers
IntMat decode_int_matrix(const Json& j);
Json encode(const IntVec& v);
IntVec decode_int_vector(const Json& j);

// {"n": 2, "rows": [["1","1/2"],["1/2","1"]]}
Json encode(const GramForm& a);
GramForm decode_form(const Json& j);
// [[1,0],[0,1]]
Json encode(const VectorConfig& s);
VectorConfig decode_config(const Json& j);
// {"n":2,"family":"gamma0","level":11}
Json encode(const GroupSpec& g);
GroupSpec decode_group(const Json& j);
// {"n":3,"members":[[[1],[0],[0]]]}: each member as a list of rows of its basis.
Json encode(const RationalFlag& f);
RationalFlag decode_flag(const Json& j);
// "Q", "Z" or "Fp:5"
Json encode_coefficients(const Coefficients& c);
Coefficients parse_coefficients(const std::string& s);

Json encode(const Cell& c);
Cell decode_cell(const Json& j);
// {"group", "constraint", "cells": [{"id","dim","config","witness",...}], "incidences": [...]}
Json encode(const OrbitComplex& c);
OrbitComplex decode_complex(const Json& j);

Json encode(const RetractionTrace& t, bool with_stages);
Json encode(const OrthantBound& b);
Json encode(const MinimaResult& m);
Json encode(const FlagOrbitSet& s);
Json encode(const HomologyResult& h);
Json encode(const SpectralPage& p);
Json encode(const SpectralSequence& s);
Json encode(const RestrictionReport& r);
Json encode(const std::vector<BoundaryHomologyDegree>& d);
Json encode(const FaceMapReport& r);
Json encode(const SmallEnoughReport& r);

Json error_json(const std::string& kind, const std::string& message);

}  // namespace wellround
