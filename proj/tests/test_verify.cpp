#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "catk/complex.hpp"
#include "catk/verify.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace catk;

namespace {

constexpr double pi = std::numbers::pi_v<double>;
constexpr double inf = std::numeric_limits<double>::infinity();

LinkGraph make_graph(int n, const std::vector<std::tuple<int, int, double>>& arcs) {
  LinkGraph g;
  for (int i = 0; i < n; ++i) g.nodes.push_back(i);
  for (const auto& [a, b, len] : arcs) {
    LinkArc arc;
    arc.a = a;
    arc.b = b;
    arc.length = len;
    g.arcs.push_back(arc);
  }
  return g;
}

// Independent oracle: enumerate every simple cycle by depth-first search and
// return the minimum length. Exponential, so only for small graphs.
double brute_systole(const LinkGraph& g) {
  double best = inf;
  const int n = (int)g.nodes.size();
  const int m = (int)g.arcs.size();
  for (int i = 0; i < m; ++i)
    if (g.arcs[i].a == g.arcs[i].b) best = std::min(best, g.arcs[i].length);
  std::vector<char> used_arc(m, 0), used_node(n, 0);
  for (int s = 0; s < n; ++s) {
    std::function<void(int, double)> go = [&](int u, double len) {
      for (int i = 0; i < m; ++i) {
        if (used_arc[i]) continue;
        const LinkArc& a = g.arcs[i];
        if (a.a == a.b) continue;  // self-loops handled above
        int v;
        if (a.a == u)
          v = a.b;
        else if (a.b == u)
          v = a.a;
        else
          continue;
        if (v == s && len > 0.0) {
          best = std::min(best, len + a.length);
          continue;
        }
        if (v <= s || used_node[v]) continue;  // canonical: s is the least node
        used_arc[i] = 1;
        used_node[v] = 1;
        go(v, len + a.length);
        used_arc[i] = 0;
        used_node[v] = 0;
      }
    };
    used_node[s] = 1;
    go(s, 0.0);
    used_node[s] = 0;
  }
  return best;
}

// Replace each arc by a chain of 1-3 sub-arcs of the same total length.
LinkGraph subdivide(const LinkGraph& g, oracles::Rng& rng) {
  LinkGraph out;
  out.nodes = g.nodes;
  GermId next_label = 1000;
  for (const LinkArc& a : g.arcs) {
    const int pieces = 1 + (int)(rng.uniform(0.0, 3.0));
    std::vector<double> cuts{0.0};
    for (int i = 1; i < pieces; ++i) cuts.push_back(rng.uniform(0.05, 0.95));
    cuts.push_back(1.0);
    std::sort(cuts.begin(), cuts.end());
    int prev = a.a;
    for (int i = 0; i < pieces; ++i) {
      int cur;
      if (i + 1 == pieces) {
        cur = a.b;
      } else {
        cur = (int)out.nodes.size();
        out.nodes.push_back(next_label++);
      }
      LinkArc piece;
      piece.a = prev;
      piece.b = cur;
      piece.length = (cuts[i + 1] - cuts[i]) * a.length;
      out.arcs.push_back(piece);
      prev = cur;
    }
  }
  return out;
}

LinkGraph random_graph(oracles::Rng& rng) {
  const int n = 3 + (int)(rng.uniform(0.0, 4.0));
  const int m = 2 + (int)(rng.uniform(0.0, 7.0));
  std::vector<std::tuple<int, int, double>> arcs;
  for (int i = 0; i < m; ++i) {
    int a = (int)(rng.uniform(0.0, (double)n));
    int b = (int)(rng.uniform(0.0, (double)n));
    arcs.emplace_back(std::min(a, n - 1), std::min(b, n - 1), rng.uniform(0.1, 2.0));
  }
  return make_graph(n, arcs);
}

std::vector<std::string> violation_locations(const Verdict& v) {
  std::vector<std::string> locs;
  for (const Violation& viol : v.violations) locs.push_back(viol.location);
  return locs;
}

}  // namespace

TEST_CASE("systole of elementary link graphs") {
  // Circle of total length 3*pi/2.
  LinkGraph circle =
      make_graph(3, {{0, 1, pi / 2}, {1, 2, pi / 2}, {2, 0, pi / 2}});
  CHECK(systole(circle) == doctest::Approx(1.5 * pi).epsilon(1e-15));

  // Theta graph: two junctions joined by three strands.
  LinkGraph theta = make_graph(2, {{0, 1, pi}, {0, 1, pi}, {0, 1, pi}});
  CHECK(systole(theta) == doctest::Approx(2.0 * pi).epsilon(1e-15));

  LinkGraph theta_short =
      make_graph(2, {{0, 1, pi}, {0, 1, pi}, {0, 1, pi - 0.2}});
  CHECK(systole(theta_short) == doctest::Approx(2.0 * pi - 0.2).epsilon(1e-15));

  // A self-loop is a cycle on its own.
  LinkGraph loop = make_graph(2, {{0, 0, 1.7}, {0, 1, 5.0}});
  CHECK(systole(loop) == doctest::Approx(1.7));

  // Dumbbell: the shorter loop wins, the bridge is irrelevant.
  LinkGraph dumbbell =
      make_graph(3, {{0, 0, 2.0}, {2, 2, 3.0}, {0, 1, 1.0}, {1, 2, 1.0}});
  CHECK(systole(dumbbell) == doctest::Approx(2.0));

  // Trees and forests have no cycle at all.
  LinkGraph path = make_graph(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}});
  CHECK(systole(path) == inf);
  CHECK_FALSE(shortest_cycle(path).found);

  // Cycle in one component, tree in another.
  LinkGraph mixed = make_graph(
      5, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 0, 1.0}, {3, 4, 0.1}});
  CHECK(systole(mixed) == doctest::Approx(3.0));
}

TEST_CASE("shortest cycle returns a consistent witness") {
  LinkGraph circle =
      make_graph(3, {{0, 1, 0.4}, {1, 2, 0.5}, {2, 0, 0.6}});
  ShortestCycle sc = shortest_cycle(circle);
  REQUIRE(sc.found);
  CHECK(sc.cycle.node_indices.size() == 3);
  CHECK(sc.cycle.arc_lengths.size() == 3);
  double sum = 0.0;
  for (double l : sc.cycle.arc_lengths) sum += l;
  CHECK(sc.cycle.length == doctest::Approx(sum).epsilon(1e-15));
  CHECK(sc.cycle.length == doctest::Approx(1.5));

  LinkGraph theta_short =
      make_graph(2, {{0, 1, pi}, {0, 1, pi}, {0, 1, pi - 0.2}});
  sc = shortest_cycle(theta_short);
  REQUIRE(sc.found);
  CHECK(sc.cycle.node_indices.size() == 2);
  CHECK(sc.cycle.arc_lengths.size() == 2);
  CHECK(sc.cycle.length == doctest::Approx(2.0 * pi - 0.2));
}

TEST_CASE("systole is invariant under arc subdivision") {
  oracles::Rng rng(20260815);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    LinkGraph g = random_graph(rng);
    const double before = systole(g);
    LinkGraph h = subdivide(g, rng);
    const double after = systole(h);
    if (std::isinf(before)) {
      CHECK(std::isinf(after));
    } else {
      CHECK(after == doctest::Approx(before).epsilon(1e-12));
      ++checked;
    }
  }
  CHECK(checked > 10);  // the sample must actually contain cycles
}

TEST_CASE("systole matches brute-force cycle enumeration") {
  oracles::Rng rng(77);
  int with_cycles = 0;
  for (int trial = 0; trial < 200; ++trial) {
    LinkGraph g = random_graph(rng);
    const double fast = systole(g);
    const double slow = brute_systole(g);
    if (std::isinf(slow)) {
      CHECK(std::isinf(fast));
    } else {
      CHECK(fast == doctest::Approx(slow).epsilon(1e-12));
      ++with_cycles;
    }
  }
  CHECK(with_cycles > 100);
}

TEST_CASE("cone with small total angle fails the link condition at its apex") {
  Complex cone = fixtures::cone_fan(3, pi / 2);
  const VertexId apex = cone.vertex_at(0, 0);

  Verdict b = check_condition_B(cone);
  REQUIRE_FALSE(b.pass);
  REQUIRE(b.violations.size() == 1);
  const Violation& v = b.violations[0];
  CHECK(v.kind == "B");
  CHECK(v.location == "vertex:" + std::to_string(apex));
  CHECK(v.magnitude == doctest::Approx(pi / 2).epsilon(1e-12));
  CHECK(v.witness_ids.size() == 3);
  REQUIRE(v.witness_values.size() == 3);
  double cycle_len = 0.0;
  for (double l : v.witness_values) cycle_len += l;
  CHECK(cycle_len == doctest::Approx(1.5 * pi).epsilon(1e-12));

  Verdict all = check_cat(cone);
  CHECK_FALSE(all.pass);
  REQUIRE(all.violations.size() == 1);
  CHECK(all.violations[0].kind == "B");
}

TEST_CASE("cones with total angle at least two pi pass") {
  CHECK(check_cat(fixtures::cone_fan(5, pi / 2)).pass);  // 5*pi/2 > 2*pi
  CHECK(check_cat(fixtures::cone_fan(4, pi / 2)).pass);  // exactly 2*pi
  CHECK(check_cat(fixtures::cone_fan(7, 1.1)).pass);
}

TEST_CASE("near-threshold shortfalls are warnings rather than failures") {
  // Total cone angle 2*pi - 1e-10: inside the numerical grace band.
  Complex snug = fixtures::cone_fan(4, (2.0 * pi - 1e-10) / 4.0);
  Verdict v = check_cat(snug);
  CHECK(v.pass);
  CHECK(v.violations.empty());
  REQUIRE(v.warnings.size() == 1);
  CHECK(v.warnings[0].kind == "B");
  CHECK(v.warnings[0].magnitude > 0.0);
  CHECK(v.warnings[0].magnitude <= 1e-9);

  // Total cone angle 2*pi - 1e-6: a genuine failure.
  Complex off = fixtures::cone_fan(4, (2.0 * pi - 1e-6) / 4.0);
  Verdict w = check_cat(off);
  CHECK_FALSE(w.pass);
  REQUIRE(w.violations.size() == 1);
  CHECK(w.violations[0].magnitude == doctest::Approx(1e-6).epsilon(1e-3));
}

TEST_CASE("flat pass fixtures: single face, books, annulus") {
  Complex tri = Complex::build(0.0, {TriangleSides{3.0, 4.0, 5.0}}, {});
  Verdict v = check_cat(tri);
  CHECK(v.pass);
  CHECK(v.violations.empty());

  CHECK(check_cat(fixtures::book_pages(3)).pass);
  CHECK(check_cat(fixtures::book_pages(5, 2.0, 1.5)).pass);
  CHECK(check_cat(fixtures::annulus(4)).pass);
  CHECK(check_cat(fixtures::annulus(7)).pass);

  // Books have no edge break points, so the pairwise-fan check is vacuous.
  Verdict a = check_condition_A(fixtures::book_pages(4));
  CHECK(a.pass);
  CHECK(a.violations.empty());
  CHECK(a.warnings.empty());
}

TEST_CASE("doubled triangle fails at every vertex") {
  Complex d = fixtures::doubled_triangle();  // equilateral, side 1
  Verdict v = check_cat(d);
  CHECK_FALSE(v.pass);
  REQUIRE(v.violations.size() == 3);
  std::set<std::string> locations;
  for (const Violation& viol : v.violations) {
    CHECK(viol.kind == "B");
    // Two corners of pi/3 close up into a circle of length 2*pi/3.
    CHECK(viol.magnitude == doctest::Approx(2.0 * pi - 2.0 * pi / 3.0).epsilon(1e-12));
    double len = 0.0;
    for (double l : viol.witness_values) len += l;
    CHECK(len == doctest::Approx(2.0 * pi / 3.0).epsilon(1e-12));
    locations.insert(viol.location);
  }
  CHECK(locations.size() == 3);  // one per vertex, all distinct
}

TEST_CASE("stacked disks fail the pairwise fan condition at rim corners") {
  // Three square disks glued along a common rim: every rim corner is an edge
  // break point with three fans of pi/2 (the interior angle of the square).
  Complex c = fixtures::polygon_disks(3, 4);
  Verdict a = check_condition_A(c);
  CHECK_FALSE(a.pass);
  REQUIRE(a.violations.size() == 4);
  for (const Violation& viol : a.violations) {
    CHECK(viol.kind == "A");
    CHECK(viol.location.rfind("breakpoint:", 0) == 0);
    REQUIRE(viol.witness_values.size() == 2);
    CHECK(viol.witness_values[0] == doctest::Approx(pi / 2).epsilon(1e-12));
    CHECK(viol.witness_values[1] == doctest::Approx(pi / 2).epsilon(1e-12));
    // Worst pair sums to pi, a shortfall of 2*pi - pi = pi.
    CHECK(viol.magnitude == doctest::Approx(pi).epsilon(1e-12));
  }

  // Hexagonal version: fans of 2*pi/3, shortfall 2*pi/3.
  Verdict a6 = check_condition_A(fixtures::polygon_disks(3, 6));
  REQUIRE(a6.violations.size() == 6);
  for (const Violation& viol : a6.violations)
    CHECK(viol.magnitude == doctest::Approx(2.0 * pi / 3.0).epsilon(1e-12));
}

TEST_CASE("fan and cycle checks report disjoint locations") {
  Complex c = fixtures::polygon_disks(3, 4);
  Verdict a = check_condition_A(c);
  Verdict b = check_condition_B(c);

  // Disk centers close up to exactly 2*pi, so the cycle condition holds away
  // from the rim.
  CHECK(b.pass);
  CHECK(b.violations.empty());

  std::vector<std::string> la = violation_locations(a);
  std::vector<std::string> lb = violation_locations(b);
  for (const std::string& loc : la) {
    CHECK(loc.rfind("breakpoint:", 0) == 0);
    CHECK(std::find(lb.begin(), lb.end(), loc) == lb.end());
  }

  Verdict all = check_cat(c);
  CHECK_FALSE(all.pass);
  CHECK(all.violations.size() == 4);
  for (const Violation& viol : all.violations) CHECK(viol.kind == "A");
  // Deterministic ordering by location.
  CHECK(std::is_sorted(all.violations.begin(), all.violations.end(),
                       [](const Violation& x, const Violation& y) {
                         return x.location < y.location;
                       }));
}

TEST_CASE("doubled polygon is a pillow with concentrated corner curvature") {
  // Two square disks back to back: rim edges have multiplicity two, so rim
  // corners are ordinary vertices whose link is a circle of length pi.
  Complex c = fixtures::polygon_disks(2, 4);
  Verdict v = check_cat(c);
  CHECK_FALSE(v.pass);
  REQUIRE(v.violations.size() == 4);
  for (const Violation& viol : v.violations) {
    CHECK(viol.kind == "B");
    CHECK(viol.magnitude == doctest::Approx(pi).epsilon(1e-12));
  }
}

TEST_CASE("spherical complexes run through the same checks") {
  // Doubled spherical equilateral triangle: link circles of length twice the
  // corner angle, which is well short of 2*pi.
  const double alpha = angle_from_sides(1.0, TriangleSides{1.0, 1.0, 1.0}, 0);
  Complex d = fixtures::doubled_triangle({1.0, 1.0, 1.0}, 1.0);
  Verdict v = check_cat(d);
  CHECK_FALSE(v.pass);
  REQUIRE(v.violations.size() == 3);
  for (const Violation& viol : v.violations)
    CHECK(viol.magnitude == doctest::Approx(2.0 * pi - 2.0 * alpha).epsilon(1e-12));

  // A spherical cone fan with total apex angle 2*pi passes.
  std::vector<TriangleSides> faces;
  std::vector<Gluing> gluings;
  const double rim = side_from_sas(1.0, 1.0, 1.0, pi / 2);
  for (int i = 0; i < 4; ++i) faces.push_back({1.0, rim, 1.0});
  for (int i = 0; i < 4; ++i)
    gluings.push_back({Slot{i, 2}, Slot{(i + 1) % 4, 0}, false});
  Complex sphere_cone = Complex::build(1.0, faces, gluings);
  CHECK(check_cat(sphere_cone).pass);
}
