#include "catk/modelspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace catk {

namespace {

constexpr double kPi = std::numbers::pi_v<double>;

double length_scale(const TriangleSides& s) {
  return std::max({s.a, s.b, s.c, 1e-300});
}

// sin(r*x)/r, sinh(r*x)/r, or x as kappa is positive, negative, or zero. All
// trigonometric identities below use only ratios of these, so the 1/r factors
// cancel and the kappa -> 0 limit is smooth.
double mfn(double kappa, double x) {
  if (kappa > 0.0) return std::sin(std::sqrt(kappa) * x) / std::sqrt(kappa);
  if (kappa < 0.0) return std::sinh(std::sqrt(-kappa) * x) / std::sqrt(-kappa);
  return x;
}

// Long-double twin of the half-angle evaluation, for the angle excess in
// triangle_area: the excess cancels to ~kappa * area, so the area would lose
// half its digits at tiny |kappa| if summed in double.
long double mfn_l(double kappa, long double x) {
  if (kappa > 0.0) {
    long double r = std::sqrt((long double)kappa);
    return std::sin(r * x) / r;
  }
  if (kappa < 0.0) {
    long double r = std::sqrt((long double)-kappa);
    return std::sinh(r * x) / r;
  }
  return x;
}

long double angle_l(double kappa, long double a, long double b, long double c) {
  const long double sp = 0.5L * (a + b + c);
  const long double num = mfn_l(kappa, sp - b) * mfn_l(kappa, sp - c);
  const long double den = mfn_l(kappa, sp) * mfn_l(kappa, sp - a);
  return 2.0L * std::atan2(std::sqrt(std::max(num, 0.0L)), std::sqrt(std::max(den, 0.0L)));
}

}  // namespace

double model_diameter(double kappa) {
  if (kappa > 0.0) return kPi / std::sqrt(kappa);
  return std::numeric_limits<double>::infinity();
}

void validate_triangle(double kappa, const TriangleSides& s) {
  const double scale = length_scale(s);
  for (int i = 0; i < 3; ++i) {
    if (!(s[i] > 0.0) || !std::isfinite(s[i]))
      fail(ErrorKind::InvalidTriangle, "side lengths must be positive and finite");
  }
  const double tol = eps_geom * scale;
  if (s.a > s.b + s.c + tol || s.b > s.c + s.a + tol || s.c > s.a + s.b + tol)
    fail(ErrorKind::InvalidTriangle, "triangle inequality violated");
  if (kappa > 0.0 && s.a + s.b + s.c >= 2.0 * model_diameter(kappa))
    fail(ErrorKind::SizeBound, "perimeter reaches twice the model diameter");
}

double angle_from_sides(double kappa, const TriangleSides& s, int opposite, bool* clamped) {
  if (opposite < 0 || opposite > 2) fail(ErrorKind::InvalidIndex, "side index out of range");
  const double a = s[opposite];
  const double b = s[(opposite + 1) % 3];
  const double c = s[(opposite + 2) % 3];
  const double scale = length_scale(s);
  const double tol = eps_geom * scale;
  if (!(a >= 0.0) || !(b > 0.0) || !(c > 0.0) || !std::isfinite(a + b + c))
    fail(ErrorKind::DegenerateTriangle, "sides adjacent to the angle must be positive");
  if (kappa > 0.0 && a + b + c >= 2.0 * model_diameter(kappa))
    fail(ErrorKind::SizeBound, "perimeter reaches twice the model diameter");

  const double slack_pi = b + c - a;   // <= 0 means the angle degenerates to pi
  const double slack_zero = a - std::abs(b - c);  // <= 0 means it degenerates to 0
  if (slack_pi < -tol || slack_zero < -tol)
    fail(ErrorKind::DegenerateTriangle, "triangle inequality violated beyond tolerance");
  if (slack_pi <= 0.0) {
    if (clamped) *clamped = true;
    return kPi;
  }
  if (slack_zero <= 0.0) {
    if (clamped) *clamped = true;
    return 0.0;
  }

  // Half-angle form: tan(alpha/2)^2 = m(sp-b) m(sp-c) / (m(sp) m(sp-a)), with
  // sp the semiperimeter. Stable for needles at either end and valid for all
  // three geometries.
  const double sp = 0.5 * (a + b + c);
  const double num = mfn(kappa, sp - b) * mfn(kappa, sp - c);
  const double den = mfn(kappa, sp) * mfn(kappa, sp - a);
  const double alpha = 2.0 * std::atan2(std::sqrt(std::max(num, 0.0)),
                                        std::sqrt(std::max(den, 0.0)));
  return alpha;
}

double side_from_sas(double kappa, double b, double c, double alpha) {
  if (!(b > 0.0) || !(c > 0.0) || !std::isfinite(b + c))
    fail(ErrorKind::InvalidParams, "enclosing sides must be positive");
  if (!(alpha >= -eps_geom) || !(alpha <= kPi + eps_geom))
    fail(ErrorKind::InvalidParams, "included angle must lie in [0, pi]");
  alpha = std::clamp(alpha, 0.0, kPi);
  const double sh = std::sin(0.5 * alpha);

  if (kappa == 0.0) {
    const double d = b - c;
    return std::sqrt(d * d + 4.0 * b * c * sh * sh);
  }
  if (kappa > 0.0) {
    const double r = std::sqrt(kappa);
    if (b >= model_diameter(kappa) || c >= model_diameter(kappa))
      fail(ErrorKind::SizeBound, "side reaches the model diameter");
    // Law of haversines: hav(a) = hav(b-c) + sin(b) sin(c) hav(alpha).
    const double shd = std::sin(0.5 * r * (b - c));
    double h = shd * shd + std::sin(r * b) * std::sin(r * c) * sh * sh;
    h = std::clamp(h, 0.0, 1.0);
    return 2.0 / r * std::asin(std::sqrt(h));
  }
  const double r = std::sqrt(-kappa);
  // Hyperbolic analogue: sinh^2(a/2) = sinh^2((b-c)/2) + sinh(b) sinh(c) sin^2(alpha/2).
  const double shd = std::sinh(0.5 * r * (b - c));
  const double h = shd * shd + std::sinh(r * b) * std::sinh(r * c) * sh * sh;
  return 2.0 / r * std::asinh(std::sqrt(std::max(h, 0.0)));
}

double triangle_area(double kappa, const TriangleSides& s) {
  validate_triangle(kappa, s);
  if (kappa == 0.0) {
    // Numerically stable Heron: sort sides descending first.
    double x = s.a, y = s.b, z = s.c;
    if (x < y) std::swap(x, y);
    if (y < z) std::swap(y, z);
    if (x < y) std::swap(x, y);
    const double t = (x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z));
    return 0.25 * std::sqrt(std::max(t, 0.0));
  }
  const long double excess = angle_l(kappa, s.a, s.b, s.c) + angle_l(kappa, s.b, s.c, s.a) +
                             angle_l(kappa, s.c, s.a, s.b) - std::numbers::pi_v<long double>;
  return (double)(excess / (long double)kappa);
}

double comparison_angle(double kappa, double d_xy, double d_xz, double d_yz, bool* clamped) {
  if (!(d_xy > 0.0) || !(d_xz > 0.0))
    fail(ErrorKind::DegenerateTriangle, "comparison angle needs x distinct from y and z");
  if (kappa > 0.0 && d_xy + d_xz + d_yz >= 2.0 * model_diameter(kappa))
    fail(ErrorKind::SizeBound, "distance triple exceeds the comparison size bound");
  TriangleSides s{d_yz, d_xy, d_xz};
  return angle_from_sides(kappa, s, 0, clamped);
}

}  // namespace catk
