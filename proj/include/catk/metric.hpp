#pragma once

#include <vector>

#include "catk/complex.hpp"

namespace catk {

// A point of a complex: a vertex class, a point of an edge at arc-length
// fraction t in [0, 1] from the edge's end 0, or a point of a face in polar
// coordinates about the face's corner 0 (rho = distance from the corner,
// phi = angle from side 0 into the face, 0 <= phi <= corner angle).
struct PointRef {
  enum class Kind { vertex, edge, face };
  Kind kind = Kind::vertex;
  int id = 0;
  double t = 0.0;    // edge points: fraction of edge length from end 0
  double rho = 0.0;  // face points: polar about corner 0
  double phi = 0.0;

  static PointRef at_vertex(VertexId v) { return {Kind::vertex, v, 0.0, 0.0, 0.0}; }
  static PointRef on_edge(EdgeId e, double t) { return {Kind::edge, e, t, 0.0, 0.0}; }
  static PointRef in_face(FaceId f, double rho, double phi) {
    return {Kind::face, f, 0.0, rho, phi};
  }
};

// Shortest-path approximation graph for the intrinsic metric. Nodes are the
// vertex classes plus Steiner points at the dyadic fractions i/intervals of
// every edge; arcs join every pair of nodes on the closed boundary of a
// common face by the geodesic chord inside that face (faces are convex in
// M²_κ under the size bound, so chords stay inside, and interior graph nodes
// could never shorten a boundary-to-boundary path). The requested k Steiner
// points per edge are rounded up so `intervals` is a power of two: node sets
// at successive levels nest, which makes shortest paths monotone
// non-increasing under refinement.
struct RefinedGraph {
  struct Arc {
    int to = -1;
    double length = 0.0;
  };
  // One entry per (face, boundary node) incidence, recording the node's polar
  // coordinates about the face's corner 0. Corner nodes set `corner`; Steiner
  // nodes set `side` and their arc-length offset u from that side's starting
  // corner. side_mask has bit s set when the node lies on side s (two bits
  // for corners); pairs sharing a side use exact arc-length differences
  // instead of chords. Query points are attached through these entries.
  struct FaceEntry {
    int node = -1;
    double rho = 0.0;
    double phi = 0.0;
    int side_mask = 0;
    int corner = -1;
    int side = -1;
    double u = 0.0;
  };

  int requested = 0;  // the k that was asked for
  int intervals = 1;  // per-edge interval count (a power of two)
  int vertices = 0;
  std::vector<std::vector<Arc>> adjacency;
  std::vector<std::vector<FaceEntry>> face_entries;  // indexed by face

  int node_count() const { return (int)adjacency.size(); }
  int vertex_node(VertexId v) const { return v; }
  // Steiner node i of edge e, i in [1, intervals).
  int edge_node(EdgeId e, int i) const { return vertices + e * (intervals - 1) + (i - 1); }
};

RefinedGraph refine(const Complex& c, int k);

// Length of the shortest refined-graph path between a and b at refinement k:
// a deterministic upper bound on the intrinsic distance, converging from
// above as k grows. Query points that are not graph nodes are attached to
// every boundary node of their containing faces by in-face chords, and to
// each other directly when they share a face or an edge. The endpoints are
// ordered canonically before the search, so the result is exactly symmetric.
// Throws Disconnected when no path exists.
double distance(const Complex& c, const PointRef& a, const PointRef& b, int k);

// Comparison angle at x between y and z: the corner angle at x of the M²_κ
// triangle whose side lengths are the three pairwise distances at refinement
// k. All three points are attached to a single graph, so the distance triple
// obeys the triangle inequality up to roundoff.
double comparison_angle_at(const Complex& c, const PointRef& x, const PointRef& y,
                           const PointRef& z, int k);

// Identification of boundary polylines of two complexes, slot by slot: arc
// length along slot `a` measured from its starting corner maps to arc length
// along slot `b` from its starting corner, or from its ending corner when
// `reversed` is set.
struct BoundaryMap {
  struct Pair {
    Slot a;
    Slot b;
    bool reversed = false;
  };
  std::vector<Pair> pairs;
};

struct DistortionReport {
  double max_abs_distortion = 0.0;
  // max |d1 - d2| / max(d1, diam * 1e-6) over sampled pairs, where diam is
  // the largest sampled distance in the first complex.
  double max_relative_distortion = 0.0;
  int samples = 0;                // boundary sample points actually placed
  PointRef argmax_a, argmax_b;    // worst pair, as points of the first complex
  PointRef argmax_a2, argmax_b2;  // their images in the second complex
};

// Samples `samples` points uniformly by arc length along the mapped boundary
// of c1, transports them through the map, and reports the worst absolute and
// relative disagreement between pairwise distances in c1 and c2 at refinement
// k. Validates the map first: every slot must be free boundary in its own
// complex and matched slots must have equal lengths within eps_geom; throws
// BoundaryMismatch otherwise.
DistortionReport boundary_distortion(const Complex& c1, const Complex& c2,
                                     const BoundaryMap& map, int samples, int k);

}  // namespace catk
