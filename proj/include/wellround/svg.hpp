#pragma once

#include <string>

#include "wellround/orbit_complex.hpp"

namespace wellround {

// Region of the upper half-plane, z = x + iy.
struct SvgWindow {
  double x_min = -1.5, x_max = 1.5;
  double y_min = 0.0, y_max = 1.5;
  double pixels_per_unit = 300;
  bool empty() const { return !(x_min < x_max && y_min < y_max); }
};

// Point of the upper half-plane of the binary form [[a,b],[b,c]]:
// z = (−b + i·sqrt(ac − b²)) / a, so the identity goes to i.
struct HalfPlanePoint {
  double x, y;
};
HalfPlanePoint half_plane_point(const GramForm& a);

// W ∩ window for n = 2, as SL_2(Z)-translates of the edge representatives of w.
// The representatives themselves are drawn with class "fundamental".
std::string svg_tree(const OrbitComplex& w, const SvgWindow& window = {});

}  // namespace wellround
