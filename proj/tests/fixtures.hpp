#pragma once

// Small hand-assembled complexes used across test files. Deliberately built
// inline (not via the gallery generators) so structural tests stay independent
// of generator code.

#include <cmath>
#include <vector>

#include "catk/complex.hpp"

namespace fixtures {

using catk::Complex;
using catk::Gluing;
using catk::Slot;
using catk::TriangleSides;

// Closed fan of n congruent isoceles triangles around an apex (corner 0 of
// every face), apex angle per face = `apex`, spoke length r. The rim is free
// boundary. Cone angle at the apex is n * apex.
inline Complex cone_fan(int n, double apex, double r = 1.0) {
  std::vector<TriangleSides> faces;
  std::vector<Gluing> gluings;
  // Corner 0 is the apex; sides 0 and 2 are spokes of length r; side 1 is the
  // free rim.
  const double rim = catk::side_from_sas(0.0, r, r, apex);
  for (int i = 0; i < n; ++i) faces.push_back({r, rim, r});
  for (int i = 0; i < n; ++i)
    gluings.push_back({Slot{i, 2}, Slot{(i + 1) % n, 0}, false});
  return Complex::build(0.0, faces, gluings);
}

// Book of n single-triangle pages sharing side 0 of each page (the spine).
inline Complex book_pages(int n, double spine_len = 1.0, double other = 1.0) {
  std::vector<TriangleSides> faces;
  std::vector<Gluing> gluings;
  for (int i = 0; i < n; ++i) faces.push_back({spine_len, other, other});
  for (int i = 0; i + 1 < n; ++i)
    gluings.push_back({Slot{i, 0}, Slot{i + 1, 0}, true});  // like corners match
  return Complex::build(0.0, faces, gluings);
}

// Two congruent triangles glued along all three sides (a doubled triangle).
inline Complex doubled_triangle(TriangleSides s = {1.0, 1.0, 1.0}, double kappa = 0.0) {
  std::vector<TriangleSides> faces{s, s};
  // Mirror gluing: each side to the same side of the twin, like corners match.
  std::vector<Gluing> gluings{{Slot{0, 0}, Slot{1, 0}, true},
                              {Slot{0, 1}, Slot{1, 1}, true},
                              {Slot{0, 2}, Slot{1, 2}, true}};
  return Complex::build(kappa, faces, gluings);
}

// `copies` polygonal disks (regular n-gon fans, rim length 1) glued along
// their common boundary polygon. copies = 2 is a doubled n-gon (a sphere);
// copies >= 3 makes the rim a singular cycle with m = copies and every
// polygon corner an edge break point.
inline Complex polygon_disks(int copies, int n) {
  std::vector<TriangleSides> faces;
  std::vector<Gluing> gluings;
  const double apex = 2.0 * std::numbers::pi_v<double> / n;
  const double r = 0.5 / std::sin(apex / 2.0);
  for (int d = 0; d < copies; ++d)
    for (int i = 0; i < n; ++i) faces.push_back({r, 1.0, r});
  auto face = [&](int d, int i) { return d * n + i; };
  for (int d = 0; d < copies; ++d)
    for (int i = 0; i < n; ++i)
      gluings.push_back({Slot{face(d, i), 2}, Slot{face(d, (i + 1) % n), 0}, false});
  for (int d = 0; d + 1 < copies; ++d)
    for (int i = 0; i < n; ++i)
      gluings.push_back({Slot{face(d, i), 1}, Slot{face(d + 1, i), 1}, true});
  return Complex::build(0.0, faces, gluings);
}

// Flat annulus: ring of `n` unit quads (inner cycle, outer cycle, unit rungs),
// each quad split along a diagonal. 2n faces, Euler characteristic 0.
inline Complex annulus(int n = 4) {
  std::vector<TriangleSides> faces;
  std::vector<Gluing> gluings;
  const double diag = std::sqrt(2.0);
  for (int j = 0; j < n; ++j) {
    faces.push_back({1.0, 1.0, diag});  // A_j: (in_j, in_j+1, out_j+1)
    faces.push_back({diag, 1.0, 1.0});  // B_j: (in_j, out_j+1, out_j)
  }
  auto A = [&](int j) { return 2 * j; };
  auto B = [&](int j) { return 2 * j + 1; };
  for (int j = 0; j < n; ++j) {
    gluings.push_back({Slot{A(j), 2}, Slot{B(j), 0}, false});            // diagonal
    gluings.push_back({Slot{A(j), 1}, Slot{B((j + 1) % n), 2}, false});  // rung j+1
  }
  return Complex::build(0.0, faces, gluings);
}

}  // namespace fixtures
