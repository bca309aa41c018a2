#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "catk/complex.hpp"

namespace catk {

// The curvature of a complex splits into a density kappa against area on face
// interiors and atoms at vertices; edge interiors carry nothing. The atom at
// a vertex x is pi*(2 - chi(link(x))) - L(link(x)), which reduces to
// 2*pi - L for manifold points (circle links, chi = 0) and to the sum of the
// per-fan turns sum_i (pi - theta_i) at edge break points.
struct CurvatureMeasure {
  std::map<VertexId, double> vertex_atoms;      // every non-break-point vertex
  std::map<VertexId, double> breakpoint_atoms;  // edge break points
  double face_density = 0.0;                    // kappa
  double positive_part = 0.0;                   // sum of positive atoms
  double negative_part = 0.0;                   // sum of negative atoms (>= 0)

  double atom(VertexId v) const;  // lookup across both maps (0 if absent)
};

CurvatureMeasure curvature_measure(const Complex& c);

// One maximal stretch of the boundary of a domain. Open chains run from one
// outer corner to another; cycles close up through regular boundary vertices
// only. Slots are the domain-side sides of the boundary edges, listed in walk
// order; vertices has one more entry than slots (cycles repeat the first).
struct BoundaryChain {
  std::vector<Slot> slots;
  std::vector<EdgeId> edges;
  std::vector<VertexId> vertices;
  bool cycle = false;
};

// A domain is a nonempty face subset. Its boundary decomposes into chains
// that together visit every boundary slot exactly once. Outer corners q are
// the boundary vertices where chains must end: vertices singular in the
// ambient complex, or where the domain-side link is not a single arc, or
// where the number of boundary slot ends differs from two.
struct Domain {
  std::vector<FaceId> faces;  // sorted, unique
  std::string label;

  std::vector<BoundaryChain> boundary;
  std::vector<Slot> boundary_slots;
  std::vector<EdgeId> boundary_edges;  // unique edge classes
  std::vector<VertexId> interior_vertices;
  std::vector<VertexId> boundary_vertices;
  std::vector<char> on_singular_locus;  // aligned with boundary_vertices
  std::vector<VertexId> outer_corners;  // sorted
  int chi = 0;

  bool contains(FaceId f) const;
  bool is_boundary_vertex(VertexId v) const;
};

Domain make_domain(const Complex& c, std::vector<FaceId> faces,
                   std::string label = "");

struct Admissibility {
  bool admissible = true;
  std::vector<std::string> diagnostics;
  // Smallest link distance from a boundary direction to a singular-locus
  // direction over boundary vertices on the locus; +infinity if never tested.
  double transversal_margin = std::numeric_limits<double>::infinity();
};

// A domain is admissible when (i) no boundary edge lies inside a
// singular-locus edge, (ii) at every boundary vertex on the locus the
// boundary directions keep positive link distance from the locus directions,
// and (iii) the domain-side link has positive length at each such vertex.
Admissibility check_admissible(const Complex& c, const Domain& d);

// Turn of the full domain boundary: per-chain turns plus one outer angle per
// outer corner. arcs/cycles are aligned with the open/closed chains of
// d.boundary in order; outer is aligned with d.outer_corners.
struct Turn {
  std::vector<double> arcs;
  std::vector<double> cycles;
  std::vector<double> outer;
  double total = 0.0;
};

// Sum of (pi - theta) over the chain's interior vertices, theta being the
// domain-side sector angle. Chain endpoints contribute outer angles at the
// domain level, not here. Throws ZeroSector if a sector angle vanishes.
double turn_of_polyline(const Complex& c, const Domain& d,
                        const BoundaryChain& arc);

// pi*(2 - chi) - L of the domain-side sub-link at q; pi - theta at a manifold
// corner with sector angle theta.
double outer_angle(const Complex& c, const Domain& d, VertexId q);

Turn boundary_turn(const Complex& c, const Domain& d);

enum class Closure { open, closed };

// Integral of the measure over the domain: atoms at interior vertices plus
// kappa times the area; `closed` adds the full atoms of boundary vertices.
double measure_of(const Complex& c, const CurvatureMeasure& m, const Domain& d,
                  Closure closure);

// measure_of(open d) - (2*pi*chi(d) - boundary turn). Exactly zero for
// polyhedral data up to floating roundoff; callers may rely on
// |residual| <= 1e-9 * (1 + #faces). Throws NotAdmissible when the domain
// fails check_admissible.
double gauss_bonnet_residual(const Complex& c, const Domain& d);

struct PositivePartReport {
  bool ok = true;
  bool cat_pass = false;             // verdict of the gluing checks on the input
  double positive_face_part = 0.0;   // max(kappa, 0) * area of the subset
  double area_bound = 0.0;           // |kappa| * area of the subset
  double worst_atom = 0.0;           // largest atom on the singular set (signed)
  std::string worst_location;
};

// The positive part of the measure on the open face subset is bounded by
// |kappa| * area plus the positive atoms; moreover, when the gluing checks
// pass, every atom at an interior singular point (break points, singular
// vertices off the free boundary) is non-positive. Convex free-boundary
// corners carry positive atoms regardless, so they are out of scope. Returns
// the verdict with the worst offending atom.
PositivePartReport positive_part_bound_check(const Complex& c,
                                             const CurvatureMeasure& m,
                                             const std::vector<FaceId>& faces);

// Audit of the wing decomposition formula along a chain: lhs is the measure
// of the open chain (atoms at its interior vertices); rhs sums the per-wing
// turns and subtracts, for each wing k >= 3, the turn-minus-endpoint-angle
// correction of its overlap with the union of the earlier wings. Exact on
// wing complexes.
struct WingAudit {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  std::vector<double> wing_turns;   // tau along the chain, one per wing
  std::vector<double> corrections;  // one per wing index k = 3..m
  // Worst ratio |atom| / sum over wing pairs |2*pi - theta_i - theta_j|;
  // diagnostic only, reported not asserted.
  double pairwise_ratio = 0.0;
  // Set when an overlap reaches a chain endpoint, where the endpoint angle
  // convention (contribute zero) is applied silently.
  bool endpoint_flag = false;
};

WingAudit explicit_formula_audit(const Complex& c,
                                 const SingularLocus::Chain& chain,
                                 const std::vector<std::vector<FaceId>>& wings);

}  // namespace catk
