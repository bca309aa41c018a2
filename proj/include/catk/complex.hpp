#pragma once

#include <utility>
#include <vector>

#include "catk/modelspace.hpp"

namespace catk {

using FaceId = int;
using VertexId = int;
using EdgeId = int;
// A germ is a direction along an edge out of one of its end vertices, after
// identification by the gluings; germs are the nodes of vertex links.
using GermId = int;

struct Slot {
  FaceId face = -1;
  int side = -1;
  friend bool operator==(const Slot&, const Slot&) = default;
  friend auto operator<=>(const Slot&, const Slot&) = default;
};

// flip = false glues head-to-tail (corner s of side a meets corner (s+1) mod 3
// of side b), the orientation arising when two faces of a consistently
// oriented surface share an edge. flip = true matches like corners instead.
struct Gluing {
  Slot a;
  Slot b;
  bool flip = false;
};

class Complex {
 public:
  static Complex build(double kappa, std::vector<TriangleSides> faces,
                       std::vector<Gluing> gluings);

  double kappa() const { return kappa_; }
  int face_count() const { return (int)faces_.size(); }
  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return (int)edge_slots_.size(); }
  int germ_count() const { return germ_count_; }

  const TriangleSides& sides(FaceId f) const;
  double side_length(const Slot& s) const;
  double corner_angle(FaceId f, int corner) const;
  double face_area(FaceId f) const;
  double total_area() const;
  double angle_sum(VertexId v) const;

  VertexId vertex_at(FaceId f, int corner) const;
  EdgeId edge_at(const Slot& s) const;
  int multiplicity(EdgeId e) const { return (int)edge_slots(e).size(); }
  bool is_boundary_edge(EdgeId e) const { return multiplicity(e) == 1; }
  double edge_length(EdgeId e) const;
  const std::vector<Slot>& edge_slots(EdgeId e) const;
  // Vertex classes at the two ends of the representative slot (end 0 = corner
  // s, end 1 = corner (s+1) mod 3 of that slot).
  std::pair<VertexId, VertexId> edge_ends(EdgeId e) const;

  GermId germ(const Slot& s, int end) const;
  GermId germ_of_edge_end(EdgeId e, int end) const;
  EdgeId germ_edge(GermId g) const;
  VertexId germ_vertex(GermId g) const;
  // The two germs flanking corner `corner` of face f: along side `corner` out
  // of the corner, and along side (corner+2) mod 3 into it.
  std::pair<GermId, GermId> corner_germs(FaceId f, int corner) const;

  const std::vector<GermId>& germs_at(VertexId v) const;
  const std::vector<FaceId>& faces_at(VertexId v) const;
  const std::vector<EdgeId>& edges_at(VertexId v) const;
  const std::vector<Slot>& boundary_slots() const { return boundary_slots_; }

  const std::vector<Gluing>& gluings() const { return gluings_; }

 private:
  Complex() = default;

  double kappa_ = 0.0;
  std::vector<TriangleSides> faces_;
  std::vector<Gluing> gluings_;
  std::vector<double> corner_angles_;   // 3 per face
  std::vector<double> face_areas_;
  int vertex_count_ = 0;
  int germ_count_ = 0;
  std::vector<VertexId> corner_vertex_;      // 3 per face
  std::vector<EdgeId> side_edge_;            // 3 per face
  std::vector<GermId> side_germ_;            // 6 per face: 2 ends per side
  std::vector<EdgeId> germ_edge_;            // per germ class
  std::vector<VertexId> germ_vertex_;        // per germ class
  std::vector<std::vector<Slot>> edge_slots_;
  std::vector<std::vector<GermId>> vertex_germs_;
  std::vector<std::vector<FaceId>> vertex_faces_;
  std::vector<std::vector<EdgeId>> vertex_edges_;
  std::vector<Slot> boundary_slots_;
};

struct LinkArc {
  int a = -1;  // indices into LinkGraph::nodes
  int b = -1;
  double length = 0.0;
  FaceId face = -1;  // originating corner, -1 for merged fan arcs
  int corner = -1;
};

// Metric graph of directions at a point: nodes are germs, arcs are face
// corners (or whole fans, after merging at an edge break point).
struct LinkGraph {
  std::vector<GermId> nodes;
  std::vector<LinkArc> arcs;

  double total_length() const;
  int euler_char() const { return (int)nodes.size() - (int)arcs.size(); }
  std::vector<int> degrees() const;
  int node_index(GermId g) const;  // -1 if absent
  bool connected() const;
  bool is_circle() const;
  bool is_arc() const;
};

LinkGraph link(const Complex& c, VertexId v);

// Link at a point of edge e. breakpoint_index = -1 gives the generic interior
// point (2 nodes, m(e) arcs of length pi). breakpoint_index 0 or 1 selects an
// end vertex of e, which must be an edge break point (an interior vertex of
// locus valence 2); the result is the fan-merged 2-node link there, one arc
// per sector between the two singular germs.
LinkGraph link_at_edge_point(const Complex& c, EdgeId e, int breakpoint_index = -1);

// True if v is an edge break point: an interior vertex (no free-side germs)
// with exactly two incident locus germs whose link decomposes into proper
// hub-to-hub fans.
bool is_edge_break_point(const Complex& c, VertexId v);

// Fan-merged 2-node link at a break point (throws InvalidParams otherwise).
LinkGraph break_point_link(const Complex& c, VertexId v);

int euler_characteristic(const Complex& c, const std::vector<FaceId>& faces);

struct SingularLocus {
  std::vector<EdgeId> edges;           // multiplicity >= 3
  std::vector<EdgeId> boundary_edges;  // multiplicity == 1, reported separately
  std::vector<VertexId> vertices;      // link neither a circle nor an arc
  // Interior vertices with exactly two incident locus germs whose link is a
  // union of proper hub-to-hub fans; these subdivide locus chains.
  std::vector<VertexId> break_points;

  struct Chain {
    std::vector<EdgeId> edges;
    // vertices.size() == edges.size() + 1; for a cycle the first vertex is
    // repeated at the end.
    std::vector<VertexId> vertices;
    bool cycle = false;
  };
  std::vector<Chain> chains;  // maximal locus chains through break points

  bool is_break_point(VertexId v) const;
  bool is_singular_vertex(VertexId v) const;
};

SingularLocus singular_locus(const Complex& c);

}  // namespace catk
