#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "wellround/boundary.hpp"
#include "wellround/io.hpp"
#include "wellround/parallel.hpp"
#include "wellround/svg.hpp"

using namespace wellround;

namespace {

struct GroupArgs {
  std::size_t n = 2;
  std::string family = "SL";
  long level = 1;

  void add_to(CLI::App* app) {
    app->add_option("-n", n, "matrix size")->check(CLI::Range(2, 4));
    app->add_option("--group", family, "GL, SL, gamma0, gamma1 or gamma");
    app->add_option("--level", level, "congruence level")->check(CLI::PositiveNumber);
  }
  GroupSpec spec() const { return GroupSpec(n, parse_family(family), level); }
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InvalidArgument("'" + path + "' is not valid JSON: " + e.what());
  }
}

void emit(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output);
  if (!out) throw InvalidArgument("cannot write '" + output + "'");
  out << text;
}

void emit(const Json& j, const std::string& output) { emit(j.dump(2) + "\n", output); }

Field field_of(const Coefficients& c, const char* what) {
  if (!c) throw InvalidArgument(std::string(what) + " needs field coefficients (Q or Fp:<prime>)");
  return *c;
}

std::vector<double> parse_window(const std::string& s) {
  std::vector<double> v;
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, ',')) v.push_back(std::stod(part));
  if (v.size() != 4) throw InvalidArgument("window must be xmin,xmax,ymin,ymax");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Well-rounded retract, flag subcomplexes and boundary cohomology"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string output;
  app.add_option("-o,--output", output, "write the report here instead of stdout");

  std::string form_path, flag_path, complex_path, coeff = "Q", window;
  bool trace = false;
  GroupArgs group;
  std::vector<std::size_t> type{1};
  std::optional<std::uint64_t> reseed;

  auto* retract_cmd = app.add_subcommand("retract", "retract a form onto W");
  retract_cmd->add_option("--form", form_path, "Gram form JSON")->required();
  retract_cmd->add_flag("--trace", trace, "include the stages");

  auto* bound_cmd = app.add_subcommand("bound", "orthant bound of a form along a flag");
  bound_cmd->add_option("--form", form_path, "Gram form JSON")->required();
  bound_cmd->add_option("--flag", flag_path, "flag JSON")->required();

  auto* minvec_cmd = app.add_subcommand("minvec", "arithmetic minimum and minimal vectors");
  minvec_cmd->add_option("--form", form_path, "Gram form JSON")->required();

  auto* flags_cmd = app.add_subcommand("flags", "rational flags modulo the group");
  flags_cmd->require_subcommand(1);
  auto* orbits_cmd = flags_cmd->add_subcommand("orbits", "orbit representatives of one flag type");
  group.add_to(orbits_cmd);
  orbits_cmd->add_option("--type", type, "member dimensions, e.g. 1,2")->delimiter(',');

  auto* cells_cmd = app.add_subcommand("cells", "cell orbits of W or W_F");
  cells_cmd->require_subcommand(1);
  auto* enumerate_cmd = cells_cmd->add_subcommand("enumerate", "cells of W modulo the group");
  group.add_to(enumerate_cmd);
  auto* wf_cmd = cells_cmd->add_subcommand("wf", "cells of W_F modulo the parabolic part");
  group.add_to(wf_cmd);
  wf_cmd->add_option("--flag", flag_path, "flag JSON")->required();

  auto* homology_cmd = app.add_subcommand("homology", "homology of the quotient");
  homology_cmd->add_option("--complex", complex_path, "complex JSON (otherwise W for the group)");
  group.add_to(homology_cmd);
  homology_cmd->add_option("--coeff", coeff, "Q, Z or Fp:<prime>");

  auto* boundary_cmd = app.add_subcommand("boundary", "boundary cohomology through flag subcomplexes");
  boundary_cmd->require_subcommand(1);
  std::vector<CLI::App*> boundary_subs;
  for (const char* name : {"e1", "ss", "total", "restrict", "facemap"}) {
    auto* sub = boundary_cmd->add_subcommand(name);
    group.add_to(sub);
    sub->add_option("--coeff", coeff, "Q, Z or Fp:<prime>");
    sub->add_option("--reseed", reseed, "rebuild with random representatives from this seed");
    if (std::string(name) == "facemap") sub->add_option("--flag", flag_path, "flag JSON")->required();
    boundary_subs.push_back(sub);
  }

  auto* small_cmd = app.add_subcommand("smallenough", "whether no cell meets two equivalent flags");
  group.add_to(small_cmd);

  auto* svg_cmd = app.add_subcommand("svg", "picture of W in the upper half-plane (n = 2)");
  group.add_to(svg_cmd);
  svg_cmd->add_option("--window", window, "xmin,xmax,ymin,ymax");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*retract_cmd) {
      emit(encode(retract(decode_form(read_json(form_path))), trace), output);
    } else if (*bound_cmd) {
      emit(encode(orthant_bound(decode_form(read_json(form_path)), decode_flag(read_json(flag_path)))), output);
    } else if (*minvec_cmd) {
      emit(encode(minimal_vectors(decode_form(read_json(form_path)))), output);
    } else if (*orbits_cmd) {
      emit(encode(flag_orbits(group.spec(), type)), output);
    } else if (*enumerate_cmd) {
      emit(encode(enumerate_W(group.spec())), output);
    } else if (*wf_cmd) {
      emit(encode(subcomplex_WF(group.spec(), decode_flag(read_json(flag_path)))), output);
    } else if (*homology_cmd) {
      Coefficients c = parse_coefficients(coeff);
      OrbitComplex cells = complex_path.empty() ? enumerate_W(group.spec()) : decode_complex(read_json(complex_path));
      QuotientComplex q = barycentric_quotient(cells);
      std::vector<std::size_t> counts;
      for (std::size_t k = 0; k <= q.dimension(); ++k) counts.push_back(q.count(k));
      Json j{{"group", encode(cells.group)},
             {"simplices", counts},
             {"euler", q.euler_characteristic()},
             {"homology", encode(homology(q, c))},
             {"cohomology", encode(cohomology(q, c))}};
      emit(j, output);
    } else if (*boundary_cmd) {
      Coefficients c = parse_coefficients(coeff);
      GroupSpec g = group.spec();
      DoubleComplexOptions opt;
      opt.reseed = reseed;
      DoubleComplex dc = build_double_complex(g, opt);
      if (*boundary_subs[0]) {
        emit(encode(e1_page(dc, field_of(c, "the E_1 page"))), output);
      } else if (*boundary_subs[1]) {
        emit(encode(spectral_sequence(dc, field_of(c, "the spectral sequence"))), output);
      } else if (*boundary_subs[2]) {
        emit(Json{{"group", encode(g)}, {"cohomology", encode(total_cohomology(dc, c))}}, output);
      } else if (*boundary_subs[3]) {
        QuotientComplex w = barycentric_quotient(enumerate_W(g));
        Field f = field_of(c, "the restriction map");
        Json j = encode(restriction(dc, w, f));
        j["boundaryHomology"] = encode(boundary_homology(dc, w, f));
        emit(j, output);
      } else {
        QuotientComplex w = barycentric_quotient(enumerate_W(g));
        emit(encode(face_map(decode_flag(read_json(flag_path)), w, field_of(c, "the face map"))), output);
      }
    } else if (*small_cmd) {
      emit(encode(is_small_enough(enumerate_W(group.spec()))), output);
    } else if (*svg_cmd) {
      SvgWindow w;
      if (!window.empty()) {
        auto v = parse_window(window);
        w.x_min = v[0];
        w.x_max = v[1];
        w.y_min = v[2];
        w.y_max = v[3];
      }
      emit(svg_tree(enumerate_W(group.spec()), w), output);
    }
  } catch (const Error& e) {
    std::cout << error_json(e.kind(), e.what()).dump(2) << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cout << error_json("InvalidArgument", e.what()).dump(2) << "\n";
    return 1;
  }
  return 0;
}
