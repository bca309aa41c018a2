#pragma once

#include <vector>

#include "catk/complex.hpp"
#include "catk/metric.hpp"
#include "catk/verify.hpp"

namespace catk {

// A star-shaped surgery region around a vertex x whose link is not metrically
// regular: the faces grown outward from a connected segment of link arcs, cut
// off near the sphere of radius eps about x. The outer rim is recorded as a
// tree whose nodes are the vertices on (or near) the sphere and whose edges
// are the boundary edge classes of the region; gluings interior to the region
// are forgotten, and everything at the rim is kept for the splice.
struct ConeRegion {
  VertexId apex = -1;
  double eps = 0.0;
  std::vector<int> segment;    // selected arc indices of link(c, apex)
  std::vector<FaceId> faces;   // member faces, sorted ascending

  struct TreeNode {
    VertexId vertex = -1;
    double radius = 0.0;  // graph distance to the apex
  };
  // One boundary edge class of the region, oriented by its unique member
  // slot: `a` is the node at the slot's starting corner, `b` at its ending
  // corner, and `length` is the slot's side length.
  struct TreeEdge {
    int a = -1;
    int b = -1;  // indices into `nodes`
    double length = 0.0;
    EdgeId edge = -1;
    Slot member_slot;
  };
  std::vector<TreeNode> nodes;
  std::vector<TreeEdge> edges;

  // True when the rim radii stay within the radial tolerance band
  // [eps / (1 + tol_radial), eps * (1 + tol_radial)] and their spread is at
  // most the tolerance ratio. A ragged rim is reported, not rejected.
  bool radial_ok = true;
  // Total length of the selected link arcs: the angle the region subtends
  // at the apex.
  double apex_angle = 0.0;
};

// Grows the surgery region at vertex x from the link arcs listed in
// `segment` (empty = the whole link). Faces are admitted while every corner
// stays within eps * (1 + tol_radial) of x; growth never crosses free or
// singular edges, edges through the apex, or radially aligned edges (so a
// partial segment stays inside its own sectors). Throws InvalidIndex for bad
// ids, InvalidParams for a malformed segment, NotSingular when the link at x
// is metrically regular (full angle 2*pi, or boundary angle pi), RadiusTooLarge
// when eps does not separate the rim from the apex or from the selected
// sectors' far corners, and CycleInTree when the rim closes a loop, traverses
// an edge twice, or is disconnected.
ConeRegion extract_cone(const Complex& c, VertexId x, const std::vector<int>& segment,
                        double eps);

// One face of the straightened replacement region: the M^2_kappa triangle
// whose side 1 matches a tree edge and whose sides 0 and 2 are spokes from a
// fresh apex with the tree-node radii as lengths. Side 0 runs apex -> a,
// side 1 runs a -> b, side 2 runs b -> apex.
struct ComparisonTriangle {
  TriangleSides sides{1.0, 1.0, 1.0};
  double apex_angle = 0.0;
  // Collinear data (tree edge no longer than the radius difference): the
  // triangle degenerates to a needle and the apex angle is taken as zero.
  bool needle = false;
};

// The replacement region: one triangle per tree edge, glued spoke-to-spoke
// along `seams` (one chain per tree node shared by several edges). Slot.face
// in a seam indexes `triangles`.
struct ComparisonLayout {
  double kappa = 0.0;
  std::vector<ComparisonTriangle> triangles;  // aligned with ConeRegion::edges
  double apex_angle = 0.0;                    // sum over triangles
  std::vector<Gluing> seams;
};

// Builds the comparison layout for a region in the curvature-kappa model.
// Degenerate spoke data propagates DegenerateTriangle; for kappa > 0 the size
// bound propagates SizeBound.
ComparisonLayout comparison_object(const ConeRegion& region, double kappa);

struct SurgeryResult {
  Complex new_complex;
  std::vector<FaceId> region_before;  // member faces of the input complex
  std::vector<FaceId> region_after;   // comparison faces of the new complex
  // Old face id -> new face id; -1 for faces removed with the region.
  std::vector<int> face_map;
  VertexId apex_after = -1;  // the fresh apex class (first region's)
  double apex_angle_before = 0.0;
  double apex_angle_after = 0.0;
  Verdict verdict_after;
  DistortionReport distortion;
};

// Replaces the region by its comparison layout: faces outside the region are
// kept, gluings between them survive unchanged, gluings onto the region's rim
// are rewired to the matching comparison sides (boundary chords to side 1,
// apex spokes to a spoke ending at the same rim node), and the layout's seams
// are added. Free boundary of the region vanishes with it; the comparison
// spokes left unglued become the new free boundary. The distortion report
// samples the surviving free boundary of the untouched faces, mapped slot to
// slot (empty boundary yields a zero report with samples = 0). Throws
// InvalidParams when the layout does not match the region or the curvature,
// and BoundaryMismatch when a glued rim side cannot be rewired consistently.
SurgeryResult splice(const Complex& c, const ConeRegion& region,
                     const ComparisonLayout& layout, int distortion_samples = 16,
                     int distortion_k = 16);

struct ScheduleTarget {
  VertexId vertex = -1;
  std::vector<int> segment;  // empty = the whole link
};

struct ScheduleRow {
  double eps = 0.0;
  int faces = 0;
  double distortion = 0.0;
  double omega_domain = 0.0;  // curvature of the tracked domain, open closure
  double tau_boundary = 0.0;  // total boundary turn of the tracked domain
  bool cat_pass = false;
};

struct Schedule {
  std::vector<SurgeryResult> steps;  // one per radius, largest first
  std::vector<ScheduleRow> rows;
};

// Runs one surgery per radius in `eps_list` (strictly decreasing), every
// radius applied to the ORIGINAL complex, all targets spliced in one pass.
// The tracked faces must either contain a region whole or avoid it: a region
// fully inside the tracked set is followed through the splice (its comparison
// triangles replace the members in the tracked domain), an untouched tracked
// face maps through by `face_map`, and a partial overlap is rejected. Each
// row reports the spliced complex's size, boundary distortion against the
// original, and the tracked domain's curvature, boundary turn, and
// verification verdict. Throws InvalidParams for a malformed schedule or a
// straddling tracked set, and OverlappingRegions when two targets' regions
// share a face.
Schedule surgery_schedule(const Complex& c, const std::vector<double>& eps_list,
                          const std::vector<ScheduleTarget>& targets,
                          const std::vector<FaceId>& tracked,
                          int distortion_samples = 24, int distortion_k = 16);

}  // namespace catk
