#include "wellround/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <deque>
#include <set>
#include <sstream>
#include <vector>

#include "wellround/quotient.hpp"

namespace wellround {

namespace {

using Z = std::complex<double>;

struct Edge {
  Z a, b;
};

// (αz + β)/(γz + δ)
Z mobius(const std::array<long, 4>& g, Z z) {
  return (double(g[0]) * z + double(g[1])) / (double(g[2]) * z + double(g[3]));
}

std::array<long, 4> compose(const std::array<long, 4>& g, const std::array<long, 4>& h) {
  return {g[0] * h[0] + g[1] * h[2], g[0] * h[1] + g[1] * h[3], g[2] * h[0] + g[3] * h[2],
          g[2] * h[1] + g[3] * h[3]};
}

// Element of SL_2(Z) moving z into the closed standard fundamental domain.
std::array<long, 4> reduction(Z z) {
  std::array<long, 4> g{1, 0, 0, 1};
  for (int step = 0; step < 200; ++step) {
    long k = std::lround(z.real());
    if (k != 0) {
      g = compose({1, -k, 0, 1}, g);
      z -= double(k);
    }
    if (std::norm(z) >= 1 - 1e-12) break;
    g = compose({0, -1, 1, 0}, g);
    z = -1.0 / z;
  }
  return g;
}

double hyperbolic_distance(Z a, Z b) {
  return std::acosh(1 + std::norm(a - b) / (2 * a.imag() * b.imag()));
}

// Point of the geodesic segment [a, b] at equal hyperbolic distance from both ends.
Z midpoint(Z a, Z b) {
  auto along = [&](double t) -> Z {
    if (std::abs(a.real() - b.real()) < 1e-12) return Z(a.real(), a.imag() * std::pow(b.imag() / a.imag(), t));
    double c = (std::norm(b) - std::norm(a)) / (2 * (b.real() - a.real()));
    double r = std::abs(a - Z(c, 0));
    double ta = std::arg(a - Z(c, 0)), tb = std::arg(b - Z(c, 0));
    return Z(c, 0) + std::polar(r, ta + t * (tb - ta));
  };
  double lo = 0, hi = 1;
  for (int i = 0; i < 100; ++i) {
    double mid = (lo + hi) / 2;
    Z z = along(mid);
    (hyperbolic_distance(a, z) < hyperbolic_distance(z, b) ? lo : hi) = mid;
  }
  return along((lo + hi) / 2);
}

std::pair<long, long> key(Z z) { return {std::lround(z.real() * 1e6), std::lround(z.imag() * 1e6)}; }

bool visible(const Edge& e, const SvgWindow& w) {
  double x0 = std::min(e.a.real(), e.b.real()), x1 = std::max(e.a.real(), e.b.real());
  double y0 = std::min(e.a.imag(), e.b.imag());
  // The geodesic bulges at most by the larger endpoint height plus half the span.
  double y1 = std::max(e.a.imag(), e.b.imag()) + (x1 - x0) / 2;
  return x1 >= w.x_min && x0 <= w.x_max && y1 >= w.y_min && y0 <= w.y_max;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string path_for(const Edge& e, const SvgWindow& w) {
  auto sx = [&](double x) { return (x - w.x_min) * w.pixels_per_unit; };
  auto sy = [&](double y) { return (w.y_max - y) * w.pixels_per_unit; };
  Z p = e.a, q = e.b;
  if (p.real() > q.real()) std::swap(p, q);
  std::string d = "M " + fmt(sx(p.real())) + " " + fmt(sy(p.imag())) + " ";
  if (std::abs(p.real() - q.real()) < 1e-12) {
    d += "L " + fmt(sx(q.real())) + " " + fmt(sy(q.imag()));
  } else {
    // Center of the geodesic circle on the real axis.
    double c = (std::norm(q) - std::norm(p)) / (2 * (q.real() - p.real()));
    double r = std::abs(p - Z(c, 0)) * w.pixels_per_unit;
    d += "A " + fmt(r) + " " + fmt(r) + " 0 0 1 " + fmt(sx(q.real())) + " " + fmt(sy(q.imag()));
  }
  return d;
}

}  // namespace

HalfPlanePoint half_plane_point(const GramForm& a) {
  if (a.dim() != 2) throw DimensionUnsupported("half-plane points need binary forms");
  const RatMatrix& m = a.matrix();
  double x = -m(0, 1).get_d() / m(0, 0).get_d();
  Rational disc = m(0, 0) * m(1, 1) - m(0, 1) * m(0, 1);
  double y = std::sqrt(disc.get_d()) / m(0, 0).get_d();
  return {x, y};
}

std::string svg_tree(const OrbitComplex& w, const SvgWindow& window) {
  if (w.n() != 2) throw DimensionUnsupported("the tree picture exists for n = 2 only");
  std::ostringstream out;
  if (window.empty()) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"0\" height=\"0\"></svg>\n";
    return out.str();
  }
  const double width = (window.x_max - window.x_min) * window.pixels_per_unit;
  const double height = (window.y_max - window.y_min) * window.pixels_per_unit;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\"" << fmt(height)
      << "\" viewBox=\"0 0 " << fmt(width) << " " << fmt(height) << "\">\n";

  // One arc per 1-simplex of the barycentric quotient: a vertex to the midpoint of an edge.
  std::vector<Edge> reps;
  QuotientComplex q(std::make_shared<const OrbitComplex>(w));
  StarOracle oracle;
  const bool level_one = w.group.family == Family::SL || w.group.family == Family::GL;
  for (const auto& s : q.simplices(1)) {
    const Cell& vertex = w.cells[s.root].cell;
    Cell edge = cell_in_star(vertex, s.chain[1]);
    auto ends = closure_vertices(edge, oracle);
    if (ends.size() != 2) throw std::logic_error("edge closure is not two vertices");
    auto p0 = half_plane_point(ends[0].witness), p1 = half_plane_point(ends[1].witness);
    auto pv = half_plane_point(vertex.witness);
    Edge e{Z(pv.x, pv.y), midpoint(Z(p0.x, p0.y), Z(p1.x, p1.y))};
    if (level_one) {
      // Standard fundamental domain: move the midpoint into |x| <= 1/2, |z| >= 1.
      auto g = reduction(e.b);
      e = Edge{mobius(g, e.a), mobius(g, e.b)};
      if (e.a.real() < 0) e = Edge{-std::conj(e.a), -std::conj(e.b)};
    }
    reps.push_back(e);
  }

  const double min_size = 2.0 / window.pixels_per_unit;
  const double margin = 3.0;
  const std::vector<std::array<long, 4>> gens{{1, 1, 0, 1}, {1, -1, 0, 1}, {0, -1, 1, 0}};
  std::set<std::pair<std::pair<long, long>, std::pair<long, long>>> seen;
  std::vector<std::string> drawn;
  auto edge_key = [](const Edge& e) {
    auto ka = key(e.a), kb = key(e.b);
    if (kb < ka) std::swap(ka, kb);
    return std::make_pair(ka, kb);
  };
  auto draw = [&](const Edge& e, bool fundamental) {
    drawn.push_back(std::string("  <path class=\"") + (fundamental ? "fundamental" : "edge") + "\" d=\"" +
                    path_for(e, window) + "\" fill=\"none\" stroke=\"" + (fundamental ? "#c00" : "#000") +
                    "\" stroke-width=\"" + (fundamental ? "3" : "1") + "\"/>\n");
  };
  for (const auto& e : reps)
    if (seen.insert(edge_key(e)).second && visible(e, window)) draw(e, true);
  for (const auto& rep : reps) {
    std::deque<std::array<long, 4>> queue;
    for (const auto& s : gens) queue.push_back(s);
    while (!queue.empty()) {
      auto g = queue.front();
      queue.pop_front();
      Edge e{mobius(g, rep.a), mobius(g, rep.b)};
      if (!seen.insert(edge_key(e)).second) continue;
      if (std::abs(e.a - e.b) < min_size) continue;
      double xl = std::min(e.a.real(), e.b.real()), xr = std::max(e.a.real(), e.b.real());
      if (xr < window.x_min - margin || xl > window.x_max + margin) continue;
      if (visible(e, window)) draw(e, false);
      for (const auto& s : gens) queue.push_back(compose(s, g));
    }
  }
  for (const auto& d : drawn) out << d;
  out << "</svg>\n";
  return out.str();
}

}  // namespace wellround
