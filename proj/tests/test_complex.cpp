#include "catk/complex.hpp"

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fixtures.hpp"

using namespace catk;
namespace {
constexpr double kPi = std::numbers::pi_v<double>;
}

TEST_CASE("two triangles glued along one side") {
  std::vector<TriangleSides> faces{{1, 1, 1}, {1, 1, 1}};
  std::vector<Gluing> gluings{{Slot{0, 0}, Slot{1, 0}, false}};
  Complex c = Complex::build(0.0, faces, gluings);
  CHECK(c.face_count() == 2);
  CHECK(c.vertex_count() == 4);
  CHECK(c.edge_count() == 5);
  CHECK(c.boundary_slots().size() == 4);
  const EdgeId shared = c.edge_at({0, 0});
  CHECK(shared == c.edge_at({1, 0}));
  CHECK(c.multiplicity(shared) == 2);
  CHECK(!c.is_boundary_edge(shared));
  CHECK(euler_characteristic(c, {0, 1}) == 1);
  CHECK(euler_characteristic(c, {0}) == 1);
  CHECK(c.total_area() == doctest::Approx(2.0 * std::sqrt(3.0) / 4.0));
}

TEST_CASE("doubled triangle is a closed sphere-like complex") {
  Complex c = fixtures::doubled_triangle();
  CHECK(c.vertex_count() == 3);
  CHECK(c.edge_count() == 3);
  CHECK(c.boundary_slots().empty());
  CHECK(euler_characteristic(c, {0, 1}) == 2);
  for (VertexId v = 0; v < c.vertex_count(); ++v) {
    LinkGraph g = link(c, v);
    CHECK(g.is_circle());
    CHECK(g.total_length() == doctest::Approx(2.0 * kPi / 3.0));
    CHECK(g.euler_char() == 0);
  }
  SingularLocus s = singular_locus(c);
  CHECK(s.edges.empty());
  CHECK(s.vertices.empty());
  CHECK(s.boundary_edges.empty());
}

TEST_CASE("flat cone fan links") {
  Complex c = fixtures::cone_fan(6, kPi / 3.0);
  CHECK(c.vertex_count() == 7);
  CHECK(c.edge_count() == 12);
  CHECK(euler_characteristic(c, {0, 1, 2, 3, 4, 5}) == 1);
  const VertexId apex = c.vertex_at(0, 0);
  LinkGraph la = link(c, apex);
  CHECK(la.is_circle());
  CHECK(la.total_length() == doctest::Approx(2.0 * kPi));
  // Rim vertices carry two corners and free sides: an arc of length 2pi/3.
  const VertexId rim = c.vertex_at(0, 1);
  LinkGraph lr = link(c, rim);
  CHECK(lr.is_arc());
  CHECK(lr.total_length() == doctest::Approx(2.0 * kPi / 3.0));
  CHECK(lr.euler_char() == 1);
}

TEST_CASE("book spine links") {
  Complex c = fixtures::book_pages(3);
  const EdgeId spine = c.edge_at({0, 0});
  CHECK(c.multiplicity(spine) == 3);

  LinkGraph mid = link_at_edge_point(c, spine);
  CHECK(mid.nodes.size() == 2);
  CHECK(mid.arcs.size() == 3);
  for (const LinkArc& a : mid.arcs) CHECK(a.length == doctest::Approx(kPi));
  CHECK(mid.total_length() == doctest::Approx(3.0 * kPi));
  CHECK(mid.euler_char() == -1);
  CHECK(!mid.is_circle());
  CHECK(!mid.is_arc());

  // A spine end vertex: one singular germ, three pendant free-side germs.
  const VertexId end = c.vertex_at(0, 0);
  LinkGraph le = link(c, end);
  CHECK(le.nodes.size() == 4);
  CHECK(le.arcs.size() == 3);
  CHECK(le.euler_char() == 1);
  CHECK(!le.is_arc());  // three valence-1 nodes, not two

  SingularLocus s = singular_locus(c);
  CHECK(s.edges == std::vector<EdgeId>{spine});
  CHECK(s.break_points.empty());
  CHECK(s.vertices.size() == 2);  // both spine ends
  REQUIRE(s.chains.size() == 1);
  CHECK(s.chains[0].edges == std::vector<EdgeId>{spine});
  CHECK(!s.chains[0].cycle);
  CHECK(s.chains[0].vertices.size() == 2);
}

TEST_CASE("triple square disk: singular cycle with break points") {
  Complex c = fixtures::polygon_disks(3, 4);
  CHECK(c.face_count() == 12);
  CHECK(c.vertex_count() == 7);  // 3 centers + 4 polygon corners
  CHECK(c.edge_count() == 16);
  CHECK(euler_characteristic(c, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}) == 3);

  SingularLocus s = singular_locus(c);
  CHECK(s.edges.size() == 4);
  CHECK(s.boundary_edges.empty());
  CHECK(s.vertices.size() == 4);
  CHECK(s.break_points.size() == 4);
  REQUIRE(s.chains.size() == 1);
  CHECK(s.chains[0].cycle);
  CHECK(s.chains[0].edges.size() == 4);
  CHECK(s.chains[0].vertices.size() == 5);
  CHECK(s.chains[0].vertices.front() == s.chains[0].vertices.back());

  // Fan-merged link at a break point: 2 hubs, 3 arcs of the square's corner
  // angle pi/2.
  const EdgeId rim = s.edges[0];
  for (int end : {0, 1}) {
    LinkGraph g = link_at_edge_point(c, rim, end);
    CHECK(g.nodes.size() == 2);
    REQUIRE(g.arcs.size() == 3);
    for (const LinkArc& a : g.arcs) CHECK(a.length == doctest::Approx(kPi / 2.0));
  }
  // Generic rim interior point: 3 arcs of pi.
  LinkGraph g = link_at_edge_point(c, rim);
  CHECK(g.arcs.size() == 3);
  CHECK(g.total_length() == doctest::Approx(3.0 * kPi));

  // Centers are manifold points.
  const VertexId center = c.vertex_at(0, 0);
  CHECK(link(c, center).is_circle());
  CHECK(link(c, center).total_length() == doctest::Approx(2.0 * kPi));
}

TEST_CASE("annulus of 8 flat triangles has Euler characteristic 0") {
  Complex c = fixtures::annulus(4);
  CHECK(c.face_count() == 8);
  std::vector<FaceId> all{0, 1, 2, 3, 4, 5, 6, 7};
  CHECK(euler_characteristic(c, all) == 0);
  CHECK(c.vertex_count() == 8);
  CHECK(c.edge_count() == 16);
  SingularLocus s = singular_locus(c);
  CHECK(s.edges.empty());
  CHECK(s.boundary_edges.size() == 8);
  CHECK(s.vertices.empty());  // every vertex is a manifold boundary point
}

TEST_CASE("build rejects malformed input") {
  std::vector<TriangleSides> faces{{1, 1, 1}, {1, 1, 1.000001}};
  CHECK_THROWS_AS(Complex::build(0.0, faces, {{Slot{0, 2}, Slot{1, 2}, false}}), Error);
  try {
    Complex::build(0.0, faces, {{Slot{0, 2}, Slot{1, 2}, false}});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LengthMismatch);
  }

  std::vector<TriangleSides> ok{{1, 1, 1}, {1, 1, 1}};
  CHECK_THROWS_AS(
      Complex::build(0.0, ok,
                     {{Slot{0, 0}, Slot{1, 0}, false}, {Slot{0, 0}, Slot{1, 0}, true}}),
      Error);
  CHECK_THROWS_AS(Complex::build(0.0, ok, {{Slot{0, 0}, Slot{0, 0}, false}}), Error);
  CHECK_THROWS_AS(Complex::build(0.0, ok, {{Slot{0, 0}, Slot{2, 0}, false}}), Error);
  CHECK_THROWS_AS(Complex::build(0.0, {{1, 1, 3}}, {}), Error);
  try {
    Complex::build(0.0, {{1, 1, 3}}, {});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidTriangle);
  }
  // Spherical faces too large for the model are a size-bound failure.
  CHECK_THROWS_AS(Complex::build(1.0, {{2.5, 2.5, 2.5}}, {}), Error);
}

TEST_CASE("edge length consistency holds across gluing chains") {
  // Three sides forced into one class with a length drift across the chain
  // would be caught even though each adjacent pair is within tolerance; here
  // lengths match exactly, so the build succeeds and the class has m = 3.
  Complex c = fixtures::book_pages(3, 2.0, 1.5);
  const EdgeId spine = c.edge_at({1, 0});
  CHECK(c.multiplicity(spine) == 3);
  CHECK(c.edge_length(spine) == doctest::Approx(2.0));
  auto [u, w] = c.edge_ends(spine);
  CHECK(u != w);
  CHECK(c.germ_vertex(c.germ_of_edge_end(spine, 0)) == u);
  CHECK(c.germ_vertex(c.germ_of_edge_end(spine, 1)) == w);
  CHECK(c.edges_at(u).size() == 4);  // spine + 3 free sides
  CHECK(c.germs_at(u).size() == 4);
  CHECK(c.faces_at(u).size() == 3);
}
