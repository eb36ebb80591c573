#include "wellround/io.hpp"

#include <algorithm>

namespace wellround {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidArgument(std::string("missing JSON field '") + key + "'");
  return j.at(key);
}

template <class T>
Json list(const std::vector<T>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(encode(x));
  return a;
}

Json sizes(const std::vector<std::size_t>& xs) { return Json(xs); }

}  // namespace

Json encode(const Rational& x) {
  Rational c = x;
  c.canonicalize();
  return c.get_str();
}

Rational decode_rational(const Json& j) {
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<std::int64_t>())));
  if (!j.is_string()) throw InvalidArgument("rational must be a string \"p/q\" or an integer");
  Rational r;
  if (r.set_str(j.get<std::string>(), 10) != 0 || r.get_den() == 0)
    throw InvalidArgument("malformed rational '" + j.get<std::string>() + "'");
  r.canonicalize();
  return r;
}

Json encode(const RatMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(encode(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

RatMatrix decode_rat_matrix(const Json& j) {
  if (!j.is_array()) throw InvalidArgument("matrix must be an array of rows");
  const std::size_t r = j.size(), c = r ? j[0].size() : 0;
  RatMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (!j[i].is_array() || j[i].size() != c) throw InvalidArgument("matrix rows have different lengths");
    for (std::size_t k = 0; k < c; ++k) m(i, k) = decode_rational(j[i][k]);
  }
  return m;
}

Json encode(const IntMat& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

IntMat decode_int_matrix(const Json& j) {
  if (!j.is_array()) throw InvalidArgument("matrix must be an array of rows");
  const std::size_t r = j.size(), c = r ? j[0].size() : 0;
  IntMat m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (!j[i].is_array() || j[i].size() != c) throw InvalidArgument("matrix rows have different lengths");
    for (std::size_t k = 0; k < c; ++k) {
      if (!j[i][k].is_number_integer()) throw InvalidArgument("integer matrix has a non-integer entry");
      m(i, k) = j[i][k].get<std::int64_t>();
    }
  }
  return m;
}

Json encode(const IntVec& v) { return Json(v); }

IntVec decode_int_vector(const Json& j) {
  if (!j.is_array()) throw InvalidArgument("vector must be an array");
  IntVec v;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw InvalidArgument("vector has a non-integer entry");
    v.push_back(x.get<std::int64_t>());
  }
  return v;
}

Json encode(const GramForm& a) { return Json{{"n", a.dim()}, {"rows", encode(a.matrix())}}; }

GramForm decode_form(const Json& j) {
  RatMatrix m = decode_rat_matrix(field(j, "rows"));
  if (j.contains("n") && j.at("n").get<std::size_t>() != m.rows())
    throw DimensionMismatch("form size differs from its declared n");
  return GramForm(m);
}

Json encode(const VectorConfig& s) { return list(s.vectors()); }

VectorConfig decode_config(const Json& j) {
  if (!j.is_array()) throw InvalidArgument("configuration must be an array of vectors");
  std::vector<IntVec> vs;
  for (const auto& v : j) vs.push_back(decode_int_vector(v));
  for (const auto& v : vs) {
    if (v.size() != vs.front().size()) throw DimensionMismatch("configuration vectors have different lengths");
    if (!is_primitive(v)) throw InvalidArgument("configuration vector " + to_string(v) + " is not primitive");
  }
  return VectorConfig(std::move(vs));
}

Json encode(const GroupSpec& g) {
  return Json{{"n", g.n}, {"family", family_name(g.family)}, {"level", g.level}};
}

GroupSpec decode_group(const Json& j) {
  long level = j.contains("level") ? j.at("level").get<long>() : 1;
  return GroupSpec(field(j, "n").get<std::size_t>(), parse_family(field(j, "family").get<std::string>()), level);
}

Json encode(const RationalFlag& f) {
  Json members = Json::array();
  for (std::size_t k = 0; k < f.length(); ++k) members.push_back(encode(f.member(k)));
  return Json{{"n", f.n()}, {"members", members}};
}

RationalFlag decode_flag(const Json& j) {
  const std::size_t n = field(j, "n").get<std::size_t>();
  std::vector<IntMat> members;
  for (const auto& m : field(j, "members")) {
    IntMat b = decode_int_matrix(m);
    if (b.rows() != n) throw DimensionMismatch("flag member has the wrong number of rows");
    members.push_back(std::move(b));
  }
  return RationalFlag(n, members);
}

Json encode_coefficients(const Coefficients& c) { return c ? c->name() : "Z"; }

Coefficients parse_coefficients(const std::string& s) {
  if (s == "Q") return Field::rationals();
  if (s == "Z") return std::nullopt;
  if (s.rfind("Fp:", 0) == 0) {
    try {
      return Field::prime(std::stol(s.substr(3)));
    } catch (const std::logic_error&) {
    }
  }
  throw InvalidArgument("coefficients must be Q, Z or Fp:<prime>, not '" + s + "'");
}

Json encode(const Cell& c) {
  return Json{{"dim", c.dim}, {"config", encode(c.config)}, {"witness", encode(c.witness)},
              {"certBound", encode(c.cert_bound)}};
}

Cell decode_cell(const Json& j) {
  VectorConfig s = decode_config(field(j, "config"));
  if (!j.contains("witness")) return cell_from_config(s);
  Cell c{s, cell_dimension(s), decode_form(j.at("witness")), 1};
  if (j.contains("certBound")) c.cert_bound = decode_rational(j.at("certBound"));
  if (j.contains("dim") && j.at("dim").get<std::size_t>() != c.dim)
    throw InvalidArgument("cell dimension does not match its configuration");
  if (VectorConfig(vectors_below(c.witness, 1)) != s)
    throw InvalidArgument("witness does not have the configuration as its minimal vectors");
  return c;
}

Json encode(const OrbitComplex& c) {
  Json cells = Json::array(), inc = Json::array();
  for (std::size_t i = 0; i < c.cells.size(); ++i) {
    Json e = encode(c.cells[i].cell);
    e["id"] = i;
    e["stabilizerOrder"] = c.cells[i].stabilizer.order();
    cells.push_back(std::move(e));
    for (const auto& co : c.cells[i].cofaces)
      inc.push_back(Json{{"cell", co.orbit}, {"face", i}, {"config", encode(co.config)}, {"via", encode(co.via)}});
  }
  Json out{{"group", encode(c.group)}, {"cells", cells}, {"incidences", inc},
           {"countsByDim", sizes(c.counts_by_dim())}};
  out["constraint"] = c.constraint ? encode(*c.constraint) : Json(nullptr);
  return out;
}

OrbitComplex decode_complex(const Json& j) {
  GroupSpec g = decode_group(field(j, "group"));
  std::optional<RationalFlag> constraint;
  if (j.contains("constraint") && !j.at("constraint").is_null()) constraint = decode_flag(j.at("constraint"));
  std::vector<Cell> reps;
  for (const auto& c : field(j, "cells")) {
    reps.push_back(decode_cell(c));
    if (reps.back().config.dim() != g.n) throw DimensionMismatch("cell dimension differs from the group's n");
  }
  return assemble_complex(g, constraint, std::move(reps));
}

Json encode(const RetractionTrace& t, bool with_stages) {
  Json out{{"start", encode(t.start)}, {"finalForm", encode(t.final_form)}, {"flag", encode(t.irredundant)}};
  if (with_stages) {
    Json st = Json::array();
    for (const auto& s : t.stages)
      st.push_back(Json{{"span", encode(s.span)}, {"muSq", encode(s.mu_sq)}, {"tight", list(s.tight)}});
    out["stages"] = st;
  }
  return out;
}

Json encode(const OrthantBound& b) {
  return Json{{"tSq", list(b.t_sq)}, {"alphaSq", list(b.alpha_sq)}, {"betaSq", list(b.beta_sq)}};
}

Json encode(const MinimaResult& m) { return Json{{"minSq", encode(m.min_sq)}, {"vectors", encode(m.vectors)}}; }

Json encode(const FlagOrbitSet& s) {
  return Json{{"group", encode(s.group)}, {"type", sizes(s.type)}, {"count", s.count()}, {"reps", list(s.reps)}};
}

Json encode(const HomologyResult& h) {
  Json tors = Json::array();
  for (const auto& t : h.torsion) tors.push_back(list(t));
  return Json{{"coefficients", encode_coefficients(h.coefficients)}, {"betti", sizes(h.betti)}, {"torsion", tors}};
}

Json encode(const SpectralPage& p) {
  Json d = Json::array();
  for (const auto& x : p.differentials) {
    Json e{{"p", x.p}, {"q", x.q}, {"rank", x.rank}};
    if (x.matrix) e["matrix"] = encode(*x.matrix);
    d.push_back(std::move(e));
  }
  return Json{{"r", p.r}, {"dims", p.dims}, {"differentials", d}};
}

Json encode(const SpectralSequence& s) {
  return Json{{"field", s.field.name()},
              {"pages", list(s.pages)},
              {"abutment", sizes(s.abutment)},
              {"d1SquaredZero", s.d1_squared_zero}};
}

Json encode(const RestrictionReport& r) {
  Json d = Json::array();
  for (const auto& x : r.degrees)
    d.push_back(Json{{"q", x.q}, {"dimW", x.dim_w}, {"dimBoundary", x.dim_total}, {"rank", x.rank},
                     {"interior", x.interior}});
  return Json{{"group", encode(r.group)}, {"field", r.field.name()}, {"degrees", d}};
}

Json encode(const std::vector<BoundaryHomologyDegree>& ds) {
  Json d = Json::array();
  for (const auto& x : ds)
    d.push_back(Json{{"q", x.q}, {"dimBoundary", x.dim_boundary}, {"dimW", x.dim_w}, {"imageRank", x.image_rank}});
  return d;
}

Json encode(const FaceMapReport& r) {
  Json m = Json::array();
  for (const auto& z : r.chain_map.matrices) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < z.rows(); ++i) {
      Json row = Json::array();
      for (std::size_t k = 0; k < z.cols(); ++k) row.push_back(z(i, k).get_si());
      rows.push_back(std::move(row));
    }
    m.push_back(std::move(rows));
  }
  return Json{{"flag", encode(r.flag)},
              {"chainMap", m},
              {"homologyRank", sizes(r.homology_rank)},
              {"cohomologyRank", sizes(r.cohomology_rank)}};
}

Json encode(const SmallEnoughReport& r) {
  Json out{{"smallEnough", r.small_enough}};
  if (!r.small_enough) {
    out["cell"] = *r.cell;
    out["first"] = encode(*r.first);
    out["second"] = encode(*r.second);
    out["gamma"] = encode(*r.gamma);
  }
  return out;
}

Json error_json(const std::string& kind, const std::string& message) {
  return Json{{"error", Json{{"kind", kind}, {"message", message}}}};
}

}  // namespace wellround
