#include "catk/modelspace.hpp"

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"

using namespace catk;
namespace {
constexpr double kPi = std::numbers::pi_v<double>;
}

TEST_CASE("flat right triangle recovers the classical angles") {
  TriangleSides s{5.0, 4.0, 3.0};  // right angle opposite the hypotenuse a=5
  CHECK(angle_from_sides(0.0, s, 0) == doctest::Approx(kPi / 2).epsilon(1e-14));
  CHECK(angle_from_sides(0.0, s, 1) == doctest::Approx(std::atan2(4.0, 3.0)).epsilon(1e-14));
  CHECK(angle_from_sides(0.0, s, 2) == doctest::Approx(std::atan2(3.0, 4.0)).epsilon(1e-14));
  CHECK(triangle_area(0.0, s) == doctest::Approx(6.0).epsilon(1e-14));
}

TEST_CASE("hyperbolic equilateral triangle matches the law of cosines") {
  // Independent derivation: cos(alpha) = cosh(1)(cosh(1)-1)/sinh(1)^2.
  const long double ch = std::cosh(1.0L), sh = std::sinh(1.0L);
  const double expect = (double)std::acos(ch * (ch - 1.0L) / (sh * sh));
  TriangleSides s{1.0, 1.0, 1.0};
  const double alpha = angle_from_sides(-1.0, s, 0);
  CHECK(alpha == doctest::Approx(expect).epsilon(1e-14));
  CHECK(alpha > 0.9187);
  CHECK(alpha < 0.9189);
  CHECK(alpha < kPi / 3);  // thinner than the flat equilateral
  // Excess-based area agrees with pi - 3*alpha (kappa=-1: defect).
  CHECK(triangle_area(-1.0, s) == doctest::Approx(kPi - 3.0 * alpha).epsilon(1e-13));
}

TEST_CASE("spherical equilateral triangle is fatter than flat") {
  TriangleSides s{1.0, 1.0, 1.0};
  const long double c1 = std::cos(1.0L), s1 = std::sin(1.0L);
  const double expect = (double)std::acos(c1 * (1.0L - c1) / (s1 * s1));
  const double alpha = angle_from_sides(1.0, s, 0);
  CHECK(alpha == doctest::Approx(expect).epsilon(1e-14));
  CHECK(alpha > kPi / 3);
}

TEST_CASE("side_from_sas right-angle hyperbolic hypotenuse") {
  // cosh(a) = cosh(1)^2 for the right angle between unit legs.
  const double expect = (double)std::acosh(std::cosh(1.0L) * std::cosh(1.0L));
  CHECK(side_from_sas(-1.0, 1.0, 1.0, kPi / 2) == doctest::Approx(expect).epsilon(1e-14));
  // Flat and spherical sanity at the same configuration.
  CHECK(side_from_sas(0.0, 1.0, 1.0, kPi / 2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  const double sph = (double)std::acos(std::cos(1.0L) * std::cos(1.0L));
  CHECK(side_from_sas(1.0, 1.0, 1.0, kPi / 2) == doctest::Approx(sph).epsilon(1e-14));
}

TEST_CASE("comparison angle of a short opposite side") {
  // Flat isoceles with |yz| = 0.1 across unit legs: 2*asin(0.05).
  const double expect = 2.0 * std::asin(0.05);
  CHECK(comparison_angle(0.0, 1.0, 1.0, 0.1) == doctest::Approx(expect).epsilon(1e-14));
  // Degenerate opposite side is a zero angle without clamping drama.
  bool clamped = false;
  CHECK(comparison_angle(0.0, 1.0, 1.0, 0.0, &clamped) == doctest::Approx(0.0));
  CHECK(clamped);
}

TEST_CASE("sas/sss round trips stay tight across all three geometries") {
  for (double kappa : {-1.0, 0.0, 1.0}) {
    oracles::Rng rng(0xC0FFEEULL + (kappa > 0 ? 1 : (kappa < 0 ? 2 : 3)));
    double worst_angle = 0.0, worst_side = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const double cap = kappa > 0 ? 1.2 : 2.0;  // keep spherical data inside the size bound
      const double b = rng.uniform(0.05, cap);
      const double c = rng.uniform(0.05, cap);
      const double alpha = rng.uniform(0.05, kPi - 0.05);
      const double a = side_from_sas(kappa, b, c, alpha);
      TriangleSides s{a, b, c};
      // SAS -> SSS -> angle round trip.
      worst_angle = std::max(worst_angle, std::abs(angle_from_sides(kappa, s, 0) - alpha));
      // SSS -> angles -> SAS round trip on a different corner.
      const double beta = angle_from_sides(kappa, s, 1);
      const double b2 = side_from_sas(kappa, c, a, beta);
      worst_side = std::max(worst_side, std::abs(b2 - b));
    }
    CHECK(worst_angle <= 1e-10);
    CHECK(worst_side <= 1e-10);
  }
}

TEST_CASE("angles and areas are continuous across kappa = 0") {
  oracles::Rng rng(0xBADA55ULL);
  for (int i = 0; i < 200; ++i) {
    const double b = rng.uniform(0.1, 2.0);
    const double c = rng.uniform(0.1, 2.0);
    const double alpha = rng.uniform(0.1, kPi - 0.1);
    const double a0 = side_from_sas(0.0, b, c, alpha);
    TriangleSides s{a0, b, c};
    const double flat_angle = angle_from_sides(0.0, s, 0);
    const double flat_area = triangle_area(0.0, s);
    for (double kappa : {1e-8, -1e-8}) {
      CHECK(std::abs(side_from_sas(kappa, b, c, alpha) - a0) <= 1e-6 * (1.0 + a0));
      CHECK(std::abs(angle_from_sides(kappa, s, 0) - flat_angle) <= 1e-6);
      CHECK(std::abs(triangle_area(kappa, s) - flat_area) <= 1e-6 * (1.0 + flat_area));
    }
  }
}

TEST_CASE("curved areas agree with the quadrature oracle") {
  for (double kappa : {1.0, -1.0}) {
    oracles::Rng rng(kappa > 0 ? 0xA1ULL : 0xA2ULL);
    for (int i = 0; i < 10; ++i) {
      const double cap = kappa > 0 ? 1.1 : 1.6;
      const double b = rng.uniform(0.3, cap);
      const double c = rng.uniform(0.3, cap);
      const double alpha = rng.uniform(0.4, kPi - 0.4);
      const double a = side_from_sas(kappa, b, c, alpha);
      TriangleSides s{a, b, c};
      const double lib = triangle_area(kappa, s);
      const double ora = oracles::area_oracle(kappa, a, b, c, 10);
      CHECK(lib == doctest::Approx(ora).epsilon(5e-6));
    }
  }
  // Scaling through nonunit curvature: area_kappa = area_1(scaled)/|kappa|.
  TriangleSides s{0.4, 0.5, 0.6};
  CHECK(triangle_area(4.0, s) ==
        doctest::Approx(oracles::area_oracle(4.0, 0.4, 0.5, 0.6, 10)).epsilon(5e-6));
}

TEST_CASE("needle data clamps within tolerance and rejects beyond") {
  bool clamped = false;
  TriangleSides flatline{2.0, 1.0, 1.0};  // a = b + c exactly
  CHECK(angle_from_sides(0.0, flatline, 0, &clamped) == doctest::Approx(kPi));
  CHECK(clamped);
  clamped = false;
  CHECK(angle_from_sides(0.0, flatline, 1, &clamped) == doctest::Approx(0.0));
  CHECK(clamped);

  TriangleSides nearly{2.0 + 5e-10, 1.0, 1.0};  // within eps_geom * scale
  clamped = false;
  CHECK(angle_from_sides(0.0, nearly, 0, &clamped) == doctest::Approx(kPi));
  CHECK(clamped);

  TriangleSides broken{2.1, 1.0, 1.0};
  CHECK_THROWS_AS(angle_from_sides(0.0, broken, 0), Error);
  CHECK_THROWS_AS(validate_triangle(0.0, broken), Error);
  try {
    validate_triangle(0.0, broken);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidTriangle);
  }
}

TEST_CASE("spherical size bound is enforced") {
  TriangleSides big{2.5, 2.5, 2.5};  // perimeter 7.5 >= 2*pi
  CHECK_THROWS_AS(validate_triangle(1.0, big), Error);
  try {
    validate_triangle(1.0, big);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SizeBound);
  }
  // Same data is fine at kappa = 0.25 (diameter 2*pi).
  validate_triangle(0.25, big);
  CHECK_THROWS_AS(comparison_angle(1.0, 2.5, 2.5, 2.5), Error);
}

TEST_CASE("degenerate inputs are rejected") {
  TriangleSides zero{0.0, 1.0, 1.0};
  CHECK_THROWS_AS(validate_triangle(0.0, zero), Error);
  CHECK_THROWS_AS(side_from_sas(0.0, 0.0, 1.0, 1.0), Error);
  CHECK_THROWS_AS(side_from_sas(0.0, 1.0, 1.0, 4.0), Error);
  CHECK_THROWS_AS(side_from_sas(1.0, 3.2, 1.0, 1.0), Error);  // leg beyond the model diameter
}
