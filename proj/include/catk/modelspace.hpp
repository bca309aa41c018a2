#pragma once

#include "catk/base.hpp"

namespace catk {

// Side lengths of a geodesic triangle. Side 0 (= a) is opposite corner 0, and
// within a complex, side s runs from corner s to corner (s+1) mod 3 of the
// face, so side s is opposite corner (s+2) mod 3.
struct TriangleSides {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double operator[](int i) const { return i == 0 ? a : (i == 1 ? b : c); }
  double& operator[](int i) { return i == 0 ? a : (i == 1 ? b : c); }
};

// Diameter of the model surface of constant curvature kappa: pi/sqrt(kappa)
// for kappa > 0, infinite otherwise.
double model_diameter(double kappa);

// Checks positivity, the triangle inequality (needles within eps_geom of
// equality are accepted) and, for kappa > 0, the size bound
// perimeter < 2 * model_diameter(kappa). Throws InvalidTriangle / SizeBound.
void validate_triangle(double kappa, const TriangleSides& s);

// Interior angle at the corner opposite side `opposite` (0 = a, 1 = b, 2 = c).
// Data within eps_geom of a degenerate configuration is clamped to 0 or pi and
// *clamped (if given) is set; degeneracy beyond the tolerance throws
// DegenerateTriangle.
double angle_from_sides(double kappa, const TriangleSides& s, int opposite,
                        bool* clamped = nullptr);

// Length of the side opposite the angle alpha enclosed by sides of lengths b
// and c. alpha may be 0 or pi (needle triangles are routine downstream).
double side_from_sas(double kappa, double b, double c, double alpha);

// Area of the triangle: Heron for kappa = 0, angle excess / kappa otherwise.
double triangle_area(double kappa, const TriangleSides& s);

// Comparison angle at x for the distance triple (|xy|, |xz|, |yz|) in the
// model of curvature kappa. Throws SizeBound when kappa > 0 and the triple's
// perimeter reaches 2 * model_diameter(kappa).
double comparison_angle(double kappa, double d_xy, double d_xz, double d_yz,
                        bool* clamped = nullptr);

}  // namespace catk
