#include "catk/gallery.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "catk/base.hpp"
#include "catk/modelspace.hpp"

namespace catk {

namespace {

constexpr double kPi = std::numbers::pi_v<double>;

// Portable deterministic uniform draw in [0, 1): mt19937_64 output is fully
// specified by the standard, so fixtures are bit-identical across platforms.
double unit(std::mt19937_64& g) { return double(g() >> 11) * 0x1.0p-53; }

double draw(std::mt19937_64& g, double lo, double hi) {
  return lo + (hi - lo) * unit(g);
}

std::mt19937_64 seeded(int seed) {
  return std::mt19937_64(0x9e3779b97f4a7c15ull * (unsigned long long)(seed + 1));
}

void check_keys(const GallerySpec& spec,
                std::initializer_list<const char*> known) {
  for (const auto& kv : spec.params) {
    bool ok = false;
    for (const char* k : known)
      if (kv.first == k) ok = true;
    if (!ok)
      fail(ErrorKind::InvalidParams,
           "generator '" + spec.name + "' does not take a parameter named '" +
               kv.first + "'");
  }
}

// Small face/gluing accumulator shared by all generators.
struct Builder {
  std::vector<TriangleSides> faces;
  std::vector<Gluing> gluings;

  int add(double a, double b, double c) {
    faces.push_back({a, b, c});
    return (int)faces.size() - 1;
  }
  void glue(int f, int s, int g, int t, bool flip) {
    gluings.push_back({Slot{f, s}, Slot{g, t}, flip});
  }
  Complex build(double kappa = 0.0) {
    return Complex::build(kappa, std::move(faces), std::move(gluings));
  }
};

// ---------------------------------------------------------------------------
// cone: a closed fan of n identical flat sectors around one apex.  Total
// apex angle `angle`; the rim is free boundary.  The apex atom is
// 2*pi - angle, so the fixture passes verification iff angle >= 2*pi.
GalleryResult make_cone(const GallerySpec& spec) {
  check_keys(spec, {"angle", "sectors", "radius"});
  const double angle = spec.get("angle", 1.5 * kPi);
  const int n = spec.get_int("sectors", 6);
  const double r = spec.get("radius", 1.0);
  if (!(angle > 0.0) || !(r > 0.0) || n < 2 || n > 256)
    fail(ErrorKind::InvalidParams,
         "cone needs angle > 0, radius > 0, and 2..256 sectors");
  const double delta = angle / n;
  if (delta >= kPi - 1e-9)
    fail(ErrorKind::InvalidParams,
         "cone sector angle must stay below a half turn; raise `sectors`");

  const double rim = 2.0 * r * std::sin(delta / 2.0);
  Builder b;
  for (int i = 0; i < n; ++i) b.add(r, rim, r);  // (apex, rim_i, rim_{i+1})
  for (int i = 0; i < n; ++i) b.glue(i, 2, (i + 1) % n, 0, false);
  Complex c = b.build();

  ExpectedProperties e;
  e.cat_pass = angle >= 2.0 * kPi - 1e-12;
  e.closed = false;
  e.chi = 1;
  e.total_curvature = 2.0 * kPi - angle;
  e.violation_count = e.cat_pass ? 0 : 1;
  e.atoms.push_back({c.vertex_at(0, 0), 2.0 * kPi - angle});
  e.notes =
      "single-apex flat cone; the apex link is a circle of length `angle`";
  return {std::move(c), std::move(e)};
}

// ---------------------------------------------------------------------------
// book: m right-angle flat half-disks sharing a spine of two unit edges.
// Every page contributes pi to the mid-spine vertex link, so its atom is 0.
GalleryResult make_book(const GallerySpec& spec) {
  check_keys(spec, {"pages"});
  const int m = spec.get_int("pages", 3);
  if (m < 2 || m > 64)
    fail(ErrorKind::InvalidParams, "book needs 2..64 pages");

  const double far = side_from_sas(0.0, 1.0, 1.0, kPi / 2.0);
  Builder b;
  for (int i = 0; i < m; ++i) {
    b.add(1.0, 1.0, far);  // corners (u, w, tip)
    b.add(1.0, far, 1.0);  // corners (w, q, tip)
    b.glue(2 * i, 1, 2 * i + 1, 2, false);
  }
  for (int i = 0; i + 1 < m; ++i) {
    b.glue(2 * i, 0, 2 * i + 2, 0, true);
    b.glue(2 * i + 1, 0, 2 * i + 3, 0, true);
  }
  Complex c = b.build();

  ExpectedProperties e;
  e.cat_pass = true;
  e.closed = false;
  e.chi = 1;
  // The only interior vertex is the spine midpoint w (its link is an m-sheet
  // banana of half-turn arcs), so the whole interior measure vanishes.
  e.total_curvature = 0.0;
  e.atoms.push_back({c.vertex_at(0, 1), 0.0});
  e.violation_count = 0;
  e.wings.clear();
  for (int i = 0; i < m; ++i) e.wings.push_back({2 * i, 2 * i + 1});
  e.chain_edges = {c.edge_at({0, 0}), c.edge_at({1, 0})};
  e.chain_vertices = {c.vertex_at(0, 0), c.vertex_at(0, 1), c.vertex_at(1, 1)};
  e.notes = "flat m-page book over a two-edge spine; every spine atom is 0";
  return {std::move(c), std::move(e)};
}

// ---------------------------------------------------------------------------
// suspension / triple_disk: m regular n-gon disks (triangulated from their
// centers) glued to each other along the whole rim polygon.  Closed, chi = m,
// total curvature 2*pi*m; every rim vertex carries atom m * 2*pi/n > 0, so
// the fixture always fails verification.
GalleryResult make_suspension_core(int m, int n, std::string notes) {
  if (m < 2 || m > 16 || n < 3 || n > 128)
    fail(ErrorKind::InvalidParams,
         "suspension needs 2..16 sheets over a 3..128-gon rim");

  const double R = 0.5 / std::sin(kPi / n);  // circumradius for unit rim edges
  Builder b;
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < n; ++i) b.add(R, 1.0, R);  // (center_k, rim_i, rim_{i+1})
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < n; ++i)
      b.glue(k * n + i, 2, k * n + (i + 1) % n, 0, false);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k + 1 < m; ++k)
      b.glue(k * n + i, 1, (k + 1) * n + i, 1, true);
  Complex c = b.build();

  ExpectedProperties e;
  e.cat_pass = false;
  e.closed = true;
  e.chi = m;
  e.total_curvature = 2.0 * kPi * (double)m;
  for (int k = 0; k < m; ++k) e.atoms.push_back({c.vertex_at(k * n, 0), 0.0});
  for (int i = 0; i < n; ++i)
    e.atoms.push_back({c.vertex_at(i, 1), (double)m * 2.0 * kPi / n});
  e.violation_count = -1;
  // Designated surgery: the rim vertex shared by sheet-0 faces 0 and 1, with
  // the link segment spanned by those two faces (a one-sheet wedge).
  e.surgery_vertex = c.vertex_at(0, 2);
  {
    LinkGraph lk = link(c, e.surgery_vertex);
    for (int i = 0; i < (int)lk.arcs.size(); ++i)
      if (lk.arcs[i].face == 0 || lk.arcs[i].face == 1)
        e.surgery_segment.push_back(i);
  }
  e.notes = std::move(notes);
  return {std::move(c), std::move(e)};
}

GalleryResult make_suspension(const GallerySpec& spec) {
  check_keys(spec, {"sheets", "resolution"});
  const int m = spec.get_int("sheets", 3);
  const int n = spec.get_int("resolution", 8);
  std::ostringstream os;
  os << m << "-fold disk suspension over a " << n
     << "-gon rim; closed, chi = " << m
     << ", rim atoms positive (pairwise sheet angles " << 2 << "*(pi - pi*(" << n
     << "-2)/" << n << ") short of 2*pi)";
  return make_suspension_core(m, n, os.str());
}

GalleryResult make_triple_disk(const GallerySpec& spec) {
  check_keys(spec, {"resolution"});
  const int n = spec.get_int("resolution", 24);
  std::ostringstream os;
  os << "three disks glued along a " << n
     << "-gon rim; pairwise-fan checks fail at exactly " << n
     << " rim vertices with shortfall 4*pi/" << n;
  return make_suspension_core(3, n, os.str());
}

// ---------------------------------------------------------------------------
// branch: m flat wings fanning out of a half-spine ray whose root x lies on
// the free boundary.  Each wing is a strip between the shared spine ray and
// its own free ray, split into one root sector plus four annular rings, with
// a mild seeded flare (growing opening angles) so every interior spine vertex
// carries a strictly negative atom.  Designated surgery: the full link of x;
// radii {0.05, 0.1, 0.2, 0.4} land on the ring circles, and eps = 0.05
// reproduces the root sectors exactly (an identity surgery).
GalleryResult make_branch(const GallerySpec& spec) {
  check_keys(spec, {"wings", "seed"});
  const int m = spec.get_int("wings", 3);
  const int seed = spec.get_int("seed", 1);
  if (m < 2 || m > 8)
    fail(ErrorKind::InvalidParams, "branch needs 2..8 wings");

  const std::array<double, 6> rho = {0.0, 0.05, 0.1, 0.2, 0.4, 1.0};
  std::mt19937_64 rng = seeded(seed);

  // Per wing w: opening angle A_j against the spine at radius rho_j, chord
  // c_j from spine node s_j to free-ray node f_j, and the flare increments
  // eta_j = A_j - A_{j-1} that become the (negative) spine atoms.
  std::vector<std::array<double, 6>> A(m), ch(m), eta(m);
  for (int w = 0; w < m; ++w) {
    const double phi = draw(rng, 0.03, 0.06);
    A[w][1] = kPi / 4.0 + phi / 2.0;
    ch[w][1] = 2.0 * rho[1] * std::sin(A[w][1]);
    for (int j = 2; j <= 5; ++j) {
      eta[w][j] = draw(rng, 0.02, 0.05);
      A[w][j] = A[w][j - 1] + eta[w][j];
      ch[w][j] = ch[w][j - 1] + 2.0 * (rho[j] - rho[j - 1]) * std::sin(A[w][j]);
    }
  }

  Builder b;
  for (int w = 0; w < m; ++w) {
    b.add(rho[1], ch[w][1], rho[1]);  // ring 1: (x, s_1, f_1)
    for (int j = 2; j <= 5; ++j) {
      const double L = rho[j] - rho[j - 1];
      const double D = std::sqrt(L * L + ch[w][j - 1] * ch[w][j]);
      b.add(L, ch[w][j], D);          // (s_{j-1}, s_j, f_j)
      b.add(D, L, ch[w][j - 1]);      // (s_{j-1}, f_j, f_{j-1})
    }
  }
  for (int w = 0; w < m; ++w) {
    const int base = 9 * w;
    for (int j = 2; j <= 5; ++j) {
      const int q = base + 1 + 2 * (j - 2);
      b.glue(q, 2, q + 1, 0, false);  // ring diagonal
      if (j == 2)
        b.glue(base, 1, q + 1, 2, false);  // chord at rho_1
      else
        b.glue(q - 2, 1, q + 1, 2, false);  // chord at rho_{j-1}
    }
  }
  for (int w = 0; w + 1 < m; ++w) {
    b.glue(9 * w, 0, 9 * (w + 1), 0, true);  // spine segment x -> s_1
    for (int j = 2; j <= 5; ++j) {
      const int q = 1 + 2 * (j - 2);
      b.glue(9 * w + q, 0, 9 * (w + 1) + q, 0, true);  // s_{j-1} -> s_j
    }
  }
  Complex c = b.build();

  ExpectedProperties e;
  e.cat_pass = true;
  e.closed = false;
  e.chi = 1;
  e.violation_count = 0;
  for (int j = 1; j <= 4; ++j) {
    double a = 0.0;
    for (int w = 0; w < m; ++w) a -= eta[w][j + 1];
    const VertexId sj =
        (j == 1) ? c.vertex_at(0, 1) : c.vertex_at(1 + 2 * (j - 2), 1);
    e.atoms.push_back({sj, a});
  }
  double total = 0.0;
  for (const auto& atom : e.atoms) total += atom.value;
  e.total_curvature = total;
  e.surgery_vertex = c.vertex_at(0, 0);  // x, on the free boundary
  e.surgery_segment.clear();             // whole link
  std::ostringstream os;
  os << m
     << " flared flat wings on a boundary-rooted half-spine; cut the full "
        "link of the root at eps in {0.05, 0.1, 0.2, 0.4} (0.05 is an exact "
        "identity)";
  e.notes = os.str();
  return {std::move(c), std::move(e)};
}

// ---------------------------------------------------------------------------
// wing_chain: m flat wings over a two-edge spine (u -> w -> q).  Plain wings
// span both spine edges with two faces; pocket wings reuse the last plain
// wing's first half as a shared face and hang their own second half off its
// mid-rib, so wing interiors overlap on the shared face.  Bends are seeded
// in [1, 3], keeping every spine link cycle under 2*pi (verification fails).
GalleryResult make_wing_chain(const GallerySpec& spec) {
  check_keys(spec, {"wings", "pockets", "seed"});
  const int m = spec.get_int("wings", 3);
  const int p = spec.get_int("pockets", 0);
  const int seed = spec.get_int("seed", 1);
  if (m < 2 || m > 16 || p < 0 || p > m - 2)
    fail(ErrorKind::InvalidParams,
         "wing_chain needs 2..16 wings and 0..wings-2 pockets");

  std::mt19937_64 rng = seeded(seed);
  const int plain = m - p;
  std::vector<double> bend(plain), pocket_bend(p);
  for (int i = 0; i < plain; ++i) bend[i] = draw(rng, 1.0, 3.0);
  for (int j = 0; j < p; ++j) pocket_bend[j] = draw(rng, 0.5, 1.5);

  Builder b;
  for (int i = 0; i < plain; ++i) {
    const double far = side_from_sas(0.0, 1.0, 1.0, bend[i] / 2.0);
    b.add(1.0, 1.0, far);  // (u, w, tip_i)
    b.add(1.0, far, 1.0);  // (w, q, tip_i)
    b.glue(2 * i, 1, 2 * i + 1, 2, false);  // mid-rib w -> tip_i
  }
  const int shared = 2 * (plain - 1);
  for (int j = 0; j < p; ++j) {
    const double far = side_from_sas(0.0, 1.0, 1.0, pocket_bend[j]);
    b.add(1.0, far, 1.0);  // (w, q, tip) hanging off the shared mid-rib
    b.glue(shared, 1, 2 * plain + j, 2, false);
  }
  for (int i = 0; i + 1 < plain; ++i) {
    b.glue(2 * i, 0, 2 * (i + 1), 0, true);          // spine u -> w
    b.glue(2 * i + 1, 0, 2 * (i + 1) + 1, 0, true);  // spine w -> q
  }
  int prev = shared + 1;
  for (int j = 0; j < p; ++j) {
    b.glue(prev, 0, 2 * plain + j, 0, true);  // chain pockets onto w -> q
    prev = 2 * plain + j;
  }
  Complex c = b.build();

  ExpectedProperties e;
  e.cat_pass = false;
  e.closed = false;
  e.chi = 1;
  e.violation_count = -1;
  double arcs_w = 0.0;
  for (int i = 0; i < plain; ++i) arcs_w += bend[i];
  for (int j = 0; j < p; ++j) arcs_w += pocket_bend[j];
  e.atoms.push_back({c.vertex_at(0, 1), (double)m * kPi - arcs_w});
  e.total_curvature = e.atoms.back().value;
  for (int i = 0; i < plain; ++i) e.wings.push_back({2 * i, 2 * i + 1});
  for (int j = 0; j < p; ++j) e.wings.push_back({shared, 2 * plain + j});
  e.chain_edges = {c.edge_at({0, 0}), c.edge_at({1, 0})};
  e.chain_vertices = {c.vertex_at(0, 0), c.vertex_at(0, 1), c.vertex_at(1, 1)};
  std::ostringstream os;
  os << m << " seeded wings (" << p
     << " pocket) over a two-edge spine; built for turn-sum audits along the "
        "chain";
  e.notes = os.str();
  return {std::move(c), std::move(e)};
}

// ---------------------------------------------------------------------------
// cantor_strip: six rectangular collar flaps glued along one middle-thirds
// bump polyline.  The polyline keeps each remaining interval at every level
// and replaces each removed gap with a two-segment tent of the given slope.
// Exactly one flap turns with the tents (reflex pi + 2*theta at apexes); the
// other five pass straight through, so apex atoms are exactly -2*theta and
// junction atoms exactly 0 while every link cycle stays >= 2*pi.
GalleryResult make_cantor_strip(const GallerySpec& spec) {
  check_keys(spec, {"depth", "slope", "collar"});
  const int depth = spec.get_int("depth", 3);
  const double slope = spec.get("slope", 0.4);
  const double collar = spec.get("collar", 0.2);
  if (depth < 1 || depth > 4 || !(slope > 0.0) || slope > 2.0 ||
      !(collar > 0.0) || collar > 1.0)
    fail(ErrorKind::InvalidParams,
         "cantor_strip needs depth 1..4, slope in (0, 2], collar in (0, 1]");

  const double theta = std::atan(slope);

  // Piece tags along the polyline: 0 = kept interval, 1 = tent up-slant,
  // 2 = tent down-slant.  Apexes sit between tags 1 and 2.
  std::vector<std::pair<double, int>> pieces;
  const double slant_factor = 0.5 * std::sqrt(1.0 + slope * slope);
  const auto recurse = [&](auto&& self, double a, double b, int lev) -> void {
    if (lev > depth) {
      pieces.push_back({b - a, 0});
      return;
    }
    const double w = (b - a) / 3.0;
    self(self, a, a + w, lev + 1);
    pieces.push_back({w * slant_factor, 1});
    pieces.push_back({w * slant_factor, 2});
    self(self, b - w, b, lev + 1);
  };
  recurse(recurse, 0.0, 1.0, 1);
  const int P = (int)pieces.size();

  std::vector<char> apex(P + 1, 0);
  for (int v = 1; v < P; ++v)
    apex[v] = pieces[v - 1].second == 1 && pieces[v].second == 2;

  // One collar flap: per piece a planar quad (top = the piece, legs = collar
  // drops, tilted outward by `tilt` where the top vertex is an apex), split
  // into two triangles.  Returns the face id of T1_i for piece i (T2_i is
  // T1_i + 1).
  Builder b;
  const auto make_flap = [&](double tilt) -> std::vector<int> {
    std::vector<int> t1(P);
    int prev_t1 = -1;
    for (int i = 0; i < P; ++i) {
      const double len = pieces[i].first;
      const double bl = apex[i] ? tilt : 0.0;      // leg tilt at left end
      const double br = apex[i + 1] ? tilt : 0.0;  // leg tilt at right end
      const double bx0 = -collar * std::sin(bl);
      const double by0 = -collar * std::cos(bl);
      const double bx1 = len + collar * std::sin(br);
      const double by1 = -collar * std::cos(br);
      const double bottom = std::hypot(bx1 - bx0, by1 - by0);
      const double diag = std::hypot(bx1, by1);
      const int T1 = b.add(len, collar, diag);     // (V_i, V_{i+1}, B_{i+1})
      const int T2 = b.add(diag, bottom, collar);  // (V_i, B_{i+1}, B_i)
      b.glue(T1, 2, T2, 0, false);
      if (prev_t1 >= 0) b.glue(prev_t1, 1, T2, 2, false);  // rung V_i -> B_i
      t1[i] = T1;
      prev_t1 = T1;
    }
    return t1;
  };

  std::vector<std::vector<int>> flaps;
  flaps.push_back(make_flap(theta));  // the one flap that turns with the tents
  for (int f = 1; f < 6; ++f) flaps.push_back(make_flap(0.0));
  for (int i = 0; i < P; ++i)
    for (int f = 0; f + 1 < 6; ++f)
      b.glue(flaps[f][i], 0, flaps[f + 1][i], 0, true);
  Complex c = b.build();

  ExpectedProperties e;
  e.cat_pass = true;
  e.closed = false;
  e.chi = 1;
  e.violation_count = 0;
  double total = 0.0;
  for (int v = 1; v < P; ++v) {
    const VertexId id = c.vertex_at(flaps[0][v - 1], 1);
    const double val = apex[v] ? -2.0 * theta : 0.0;
    e.atoms.push_back({id, val});
    total += val;
  }
  e.total_curvature = total;
  std::ostringstream os;
  os << "six collar flaps over a depth-" << depth
     << " middle-thirds bump polyline (" << P
     << " pieces); junction atoms 0, apex atoms -2*atan(slope)";
  e.notes = os.str();
  return {std::move(c), std::move(e)};
}

// ---------------------------------------------------------------------------
// random_flat: a rows x cols grid of flat rectangles with seeded widths,
// heights, and diagonal directions, each split into two triangles.  With
// fins = 0 the complex is a flat disk (all interior atoms 0, verification
// passes).  Each fin is a corner chord: a triangle glued across the north
// and east edges of a random interior grid vertex v, adding a link arc of
// seeded angle alpha between directions a quarter turn apart.  That closes a
// cycle of length alpha + pi/2 < 2*pi, so every fin contributes exactly one
// violation and the atom at v becomes pi - alpha > 0.
GalleryResult make_random_flat(const GallerySpec& spec) {
  check_keys(spec, {"seed", "rows", "cols", "fins"});
  const int seed = spec.get_int("seed", 1);
  const int rows = spec.get_int("rows", 4);
  const int cols = spec.get_int("cols", 4);
  const int fins = spec.get_int("fins", 0);
  if (rows < 2 || rows > 9 || cols < 2 || cols > 9 || fins < 0 || fins > 12)
    fail(ErrorKind::InvalidParams,
         "random_flat needs rows, cols in 2..9 and fins in 0..12");
  if (2 * rows * cols + fins > 200)
    fail(ErrorKind::InvalidParams, "random_flat is capped at 200 faces");
  if (2 * fins > (cols - 1) * (rows - 1) + 1)
    fail(ErrorKind::InvalidParams,
         "random_flat cannot place that many fins on this grid");

  std::mt19937_64 rng = seeded(seed);
  std::vector<double> w(cols), h(rows);
  for (int i = 0; i < cols; ++i) w[i] = draw(rng, 0.6, 1.4);
  for (int j = 0; j < rows; ++j) h[j] = draw(rng, 0.6, 1.4);
  std::vector<char> split_a(rows * cols);
  for (auto& s : split_a) s = (rng() & 1) != 0;

  // Per quad (i, j): faces 2*q, 2*q + 1 with q = j*cols + i.
  // Split A cuts BL -> TR:  F1 = (BL, BR, TR), F2 = (BL, TR, TL).
  // Split B cuts BR -> TL:  F1 = (BL, BR, TL), F2 = (BR, TR, TL).
  Builder b;
  for (int j = 0; j < rows; ++j)
    for (int i = 0; i < cols; ++i) {
      const double d = std::hypot(w[i], h[j]);
      const int q = j * cols + i;
      if (split_a[q]) {
        b.add(w[i], h[j], d);
        b.add(d, w[i], h[j]);
        b.glue(2 * q, 2, 2 * q + 1, 0, false);
      } else {
        b.add(w[i], d, h[j]);
        b.add(h[j], w[i], d);
        b.glue(2 * q, 1, 2 * q + 1, 2, false);
      }
    }
  const auto right_slot = [&](int i, int j) {
    const int q = j * cols + i;
    return split_a[q] ? Slot{2 * q, 1} : Slot{2 * q + 1, 0};
  };
  const auto left_slot = [&](int i, int j) {
    const int q = j * cols + i;
    return split_a[q] ? Slot{2 * q + 1, 2} : Slot{2 * q, 2};
  };
  const auto top_slot = [&](int i, int j) {
    return Slot{2 * (j * cols + i) + 1, 1};
  };
  const auto bottom_slot = [&](int i, int j) {
    return Slot{2 * (j * cols + i), 0};
  };
  for (int j = 0; j < rows; ++j)
    for (int i = 0; i + 1 < cols; ++i) {
      const Slot a = right_slot(i, j), bb = left_slot(i + 1, j);
      b.glue(a.face, a.side, bb.face, bb.side, false);
    }
  for (int j = 0; j + 1 < rows; ++j)
    for (int i = 0; i < cols; ++i) {
      const Slot a = top_slot(i, j), bb = bottom_slot(i, j + 1);
      b.glue(a.face, a.side, bb.face, bb.side, false);
    }

  // Fin sites are interior grid vertices kept two steps apart (Manhattan), so
  // no two fins share an edge or an endpoint and each defect stays isolated.
  std::vector<std::pair<int, int>> sites;
  std::vector<double> alphas;
  std::set<std::pair<int, int>> touched;
  int attempts = 0;
  while ((int)sites.size() < fins) {
    if (++attempts > 200 * (fins + 1))
      fail(ErrorKind::InvalidParams,
           "random_flat could not place the requested fins; lower `fins`");
    const int gi = 1 + std::min((int)(unit(rng) * (cols - 1)), cols - 2);
    const int gj = 1 + std::min((int)(unit(rng) * (rows - 1)), rows - 2);
    bool ok = true;
    for (const auto& s : sites)
      if (std::abs(s.first - gi) + std::abs(s.second - gj) < 2) ok = false;
    if (!ok) continue;
    sites.push_back({gi, gj});
    alphas.push_back(draw(rng, 0.2, 0.6));
  }
  for (int f = 0; f < fins; ++f) {
    const auto [gi, gj] = sites[f];
    const double alpha = alphas[f];
    // North edge [v -> A] and east edge [C -> v], as the grid orients them.
    const Slot north = right_slot(gi - 1, gj);
    const Slot east = top_slot(gi, gj - 1);
    const double chord = side_from_sas(0.0, h[gj], w[gi], alpha);
    const int fin = b.add(h[gj], w[gi], chord);  // corners (A, v, C)
    b.glue(fin, 0, north.face, north.side, false);
    b.glue(fin, 1, east.face, east.side, false);
    touched.insert({gi, gj});
    touched.insert({gi, gj + 1});
    touched.insert({gi + 1, gj});
  }
  Complex c = b.build();

  const auto grid_vertex = [&](int gi, int gj) {
    const int q = (gj - 1) * cols + (gi - 1);
    return split_a[q] ? c.vertex_at(2 * q, 2) : c.vertex_at(2 * q + 1, 1);
  };

  ExpectedProperties e;
  e.cat_pass = fins == 0;
  e.closed = false;
  e.chi = 1;
  e.violation_count = fins;  // one short link cycle per fin site
  for (int gi = 1; gi < cols; ++gi)
    for (int gj = 1; gj < rows; ++gj) {
      if (touched.count({gi, gj})) continue;
      e.atoms.push_back({grid_vertex(gi, gj), 0.0});
    }
  for (int f = 0; f < fins; ++f)
    e.atoms.push_back(
        {grid_vertex(sites[f].first, sites[f].second), kPi - alphas[f]});
  // Fin chords also add seed-dependent negative atoms at their far corners,
  // so the total is only pinned for the flat case.
  e.total_curvature = fins == 0 ? 0.0 : std::nan("");
  std::ostringstream os;
  os << rows << "x" << cols << " seeded flat grid, " << fins
     << " corner-chord fin(s); a flat disk when fins = 0, one positive "
        "defect per fin otherwise";
  e.notes = os.str();
  return {std::move(c), std::move(e)};
}

}  // namespace

double GallerySpec::get(const std::string& key, double fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

int GallerySpec::get_int(const std::string& key, int fallback) const {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  const double v = it->second;
  const double r = std::nearbyint(v);
  if (std::abs(v - r) > 1e-9)
    fail(ErrorKind::InvalidParams,
         "parameter '" + key + "' must be an integer");
  return (int)r;
}

const std::vector<std::string>& gallery_names() {
  static const std::vector<std::string> names = {
      "cone",   "book",       "suspension",   "triple_disk",
      "branch", "wing_chain", "cantor_strip", "random_flat"};
  return names;
}

GalleryResult generate(const GallerySpec& spec) {
  if (spec.name == "cone") return make_cone(spec);
  if (spec.name == "book") return make_book(spec);
  if (spec.name == "suspension") return make_suspension(spec);
  if (spec.name == "triple_disk") return make_triple_disk(spec);
  if (spec.name == "branch") return make_branch(spec);
  if (spec.name == "wing_chain") return make_wing_chain(spec);
  if (spec.name == "cantor_strip") return make_cantor_strip(spec);
  if (spec.name == "random_flat") return make_random_flat(spec);
  fail(ErrorKind::InvalidParams, "unknown gallery fixture '" + spec.name + "'");
}

}  // namespace catk
