#include "catk/surgery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <string>

#include "catk/base.hpp"
#include "catk/measure.hpp"
#include "catk/modelspace.hpp"

namespace catk {

namespace {

constexpr double kPi = std::numbers::pi_v<double>;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Graph distance from x to every vertex class along the 1-skeleton (the
// refinement-0 graph has exactly the vertices as nodes and the edge classes
// as arcs). Radial fixtures keep their spoke chains geodesic, so these radii
// are exact there; elsewhere they are honest upper bounds.
std::vector<double> vertex_radii(const Complex& c, VertexId x) {
  const RefinedGraph g = refine(c, 0);
  std::vector<double> dist(g.node_count(), kInf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[g.vertex_node(x)] = 0.0;
  heap.push({0.0, g.vertex_node(x)});
  while (!heap.empty()) {
    auto [d, n] = heap.top();
    heap.pop();
    if (d > dist[n]) continue;
    for (const auto& arc : g.adjacency[n]) {
      const double nd = d + arc.length;
      if (nd < dist[arc.to]) {
        dist[arc.to] = nd;
        heap.push({nd, arc.to});
      }
    }
  }
  dist.resize(c.vertex_count());
  return dist;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  bool unite(int i, int j) {
    i = find(i);
    j = find(j);
    if (i == j) return false;
    parent[i] = j;
    return true;
  }
};

}  // namespace

ConeRegion extract_cone(const Complex& c, VertexId x, const std::vector<int>& segment,
                        double eps) {
  if (x < 0 || x >= c.vertex_count()) fail(ErrorKind::InvalidIndex, "no such vertex");
  if (!(eps > 0.0) || !std::isfinite(eps))
    fail(ErrorKind::InvalidParams, "surgery radius must be positive and finite");

  const LinkGraph lk = link(c, x);
  const double total = lk.total_length();
  // A metrically regular point (interior full angle 2*pi, or boundary angle
  // pi) leaves nothing to straighten.
  if ((lk.is_circle() && std::abs(total - 2.0 * kPi) <= eps_geom) ||
      (lk.is_arc() && std::abs(total - kPi) <= eps_geom))
    fail(ErrorKind::NotSingular, "the link at the vertex is metrically regular");

  ConeRegion region;
  region.apex = x;
  region.eps = eps;
  region.segment = segment;
  if (region.segment.empty()) {
    region.segment.resize(lk.arcs.size());
    std::iota(region.segment.begin(), region.segment.end(), 0);
  }
  std::set<int> seen_arcs;
  for (int a : region.segment) {
    if (a < 0 || a >= (int)lk.arcs.size()) fail(ErrorKind::InvalidIndex, "no such link arc");
    if (!seen_arcs.insert(a).second)
      fail(ErrorKind::InvalidParams, "a link arc is selected twice");
    region.apex_angle += lk.arcs[a].length;
  }
  {
    // The selected arcs must form one connected piece of the link.
    UnionFind uf((int)lk.nodes.size());
    for (int a : region.segment) uf.unite(lk.arcs[a].a, lk.arcs[a].b);
    const int root = uf.find(lk.arcs[region.segment.front()].a);
    for (int a : region.segment)
      if (uf.find(lk.arcs[a].a) != root || uf.find(lk.arcs[a].b) != root)
        fail(ErrorKind::InvalidParams, "the selected link arcs are not connected");
  }

  const std::vector<double> radius = vertex_radii(c, x);
  const double scale = std::max(1.0, eps);
  const double cap = eps * (1.0 + tol_radial) + eps_geom * scale;
  const double floor_r = eps / (1.0 + tol_radial) - eps_geom * scale;

  const auto face_ok = [&](FaceId f) {
    for (int s = 0; s < 3; ++s)
      if (radius[c.vertex_at(f, s)] > cap) return false;
    return true;
  };

  std::set<FaceId> members;
  std::queue<FaceId> work;
  for (int a : region.segment) {
    const FaceId f = lk.arcs[a].face;
    if (!face_ok(f))
      fail(ErrorKind::RadiusTooLarge, "a selected sector reaches past the surgery radius");
    if (members.insert(f).second) work.push(f);
  }
  while (!work.empty()) {
    const FaceId f = work.front();
    work.pop();
    for (int s = 0; s < 3; ++s) {
      const EdgeId e = c.edge_at({f, s});
      if (c.multiplicity(e) != 2) continue;  // free or singular edges fence the growth
      const auto ends = c.edge_ends(e);
      if (ends.first == x || ends.second == x) continue;  // sector walls at the apex
      // A radially aligned edge continues a sector wall outward; crossing it
      // would leak a partial segment into a neighboring sector.
      const double len = c.edge_length(e);
      const double dr = std::abs(radius[ends.first] - radius[ends.second]);
      if (len - dr <= eps_geom * std::max(1.0, len)) continue;
      for (const Slot& sl : c.edge_slots(e)) {
        if (sl.face == f || members.count(sl.face) || !face_ok(sl.face)) continue;
        members.insert(sl.face);
        work.push(sl.face);
      }
    }
  }
  region.faces.assign(members.begin(), members.end());

  // Classify the edge classes touched by the region and assemble the rim tree.
  std::map<VertexId, int> node_of;
  const auto node_for = [&](VertexId v) {
    auto it = node_of.find(v);
    if (it != node_of.end()) return it->second;
    const int idx = (int)region.nodes.size();
    node_of.emplace(v, idx);
    region.nodes.push_back({v, radius[v]});
    return idx;
  };
  std::set<EdgeId> done;
  std::vector<std::pair<EdgeId, Slot>> rim;  // class + its unique member slot
  for (FaceId f : region.faces) {
    for (int s = 0; s < 3; ++s) {
      const Slot sl{f, s};
      const EdgeId e = c.edge_at(sl);
      if (!done.insert(e).second) {
        // Second member slot on a class already classified: only legal when
        // the class is interior or an apex spoke.
        continue;
      }
      int member_slots = 0;
      for (const Slot& es : c.edge_slots(e))
        if (members.count(es.face)) ++member_slots;
      const int mult = c.multiplicity(e);
      const auto ends = c.edge_ends(e);
      const bool incident = (ends.first == x || ends.second == x);
      if (incident) continue;  // spokes: interior seams or rewired at splice
      if (member_slots == mult && mult > 1) continue;  // interior to the region
      if (member_slots > 1)
        fail(ErrorKind::CycleInTree, "the region rim traverses an edge class twice");
      // Recover the unique member slot of the class.
      Slot member = sl;
      if (!members.count(sl.face)) {
        for (const Slot& es : c.edge_slots(e))
          if (members.count(es.face)) member = es;
      }
      const double ra = radius[ends.first];
      const double rb = radius[ends.second];
      if (ra > cap || rb > cap)
        fail(ErrorKind::RadiusTooLarge, "a rim edge reaches past the surgery radius");
      if (mult == 1 && std::min(ra, rb) < floor_r) continue;  // free boundary, vanishes
      rim.push_back({e, member});
    }
  }
  if (rim.empty())
    fail(ErrorKind::RadiusTooLarge, "the surgery radius swallows the region's rim");

  UnionFind uf((int)c.vertex_count());
  for (const auto& [e, member] : rim) {
    ConeRegion::TreeEdge te;
    te.edge = e;
    te.member_slot = member;
    const VertexId va = c.vertex_at(member.face, member.side);
    const VertexId vb = c.vertex_at(member.face, (member.side + 1) % 3);
    if (va == x || vb == x)
      fail(ErrorKind::RadiusTooLarge, "the rim touches the apex");
    if (!uf.unite(va, vb))
      fail(ErrorKind::CycleInTree, "the region rim closes a loop");
    te.a = node_for(va);
    te.b = node_for(vb);
    te.length = c.side_length(member);
    region.edges.push_back(te);
  }
  {
    const int root = uf.find(region.nodes.front().vertex);
    for (const auto& n : region.nodes)
      if (uf.find(n.vertex) != root)
        fail(ErrorKind::CycleInTree, "the region rim is disconnected");
  }

  double minr = kInf, maxr = 0.0;
  for (const auto& n : region.nodes) {
    minr = std::min(minr, n.radius);
    maxr = std::max(maxr, n.radius);
  }
  region.radial_ok = (minr >= floor_r) && (maxr <= cap) &&
                     (maxr <= minr * (1.0 + tol_radial) + eps_geom * scale);
  return region;
}

ComparisonLayout comparison_object(const ConeRegion& region, double kappa) {
  if (region.edges.empty()) fail(ErrorKind::InvalidParams, "the region tree is empty");
  for (const auto& te : region.edges)
    if (te.a < 0 || te.b < 0 || te.a >= (int)region.nodes.size() ||
        te.b >= (int)region.nodes.size() || !(te.length > 0.0))
      fail(ErrorKind::InvalidParams, "malformed region tree");

  ComparisonLayout out;
  out.kappa = kappa;
  for (const auto& te : region.edges) {
    const double ra = region.nodes[te.a].radius;
    const double rb = region.nodes[te.b].radius;
    ComparisonTriangle tri;
    tri.sides = TriangleSides{ra, te.length, rb};
    const double scale = std::max({1.0, ra, rb});
    if (te.length <= std::abs(ra - rb) + eps_geom * scale) {
      tri.apex_angle = 0.0;
      tri.needle = true;
    } else {
      bool clamped = false;
      tri.apex_angle = comparison_angle(kappa, ra, rb, te.length, &clamped);
      tri.needle = clamped;
    }
    out.apex_angle += tri.apex_angle;
    out.triangles.push_back(tri);
  }

  std::vector<std::vector<int>> incident(region.nodes.size());
  for (int i = 0; i < (int)region.edges.size(); ++i) {
    incident[region.edges[i].a].push_back(i);
    incident[region.edges[i].b].push_back(i);
  }
  for (int n = 0; n < (int)region.nodes.size(); ++n) {
    for (size_t j = 0; j + 1 < incident[n].size(); ++j) {
      const int ea = incident[n][j];
      const int eb = incident[n][j + 1];
      const int sa = (region.edges[ea].a == n) ? 0 : 2;
      const int sb = (region.edges[eb].a == n) ? 0 : 2;
      // Spokes with the same polarity (both leaving or both entering the
      // apex) must be matched corner-for-corner.
      out.seams.push_back({Slot{ea, sa}, Slot{eb, sb}, sa == sb});
    }
  }
  return out;
}

namespace {

struct Rep {
  const ConeRegion* region = nullptr;
  const ComparisonLayout* layout = nullptr;
  int tri_base = 0;
  std::map<EdgeId, int> tree_of_edge;
  std::map<VertexId, int> node_of_vertex;
  std::vector<std::vector<int>> incident;  // node -> tree edge indices
};

Rep make_rep(const Complex& c, const ConeRegion& region, const ComparisonLayout& layout) {
  if (layout.triangles.size() != region.edges.size())
    fail(ErrorKind::InvalidParams, "comparison layout does not match the region tree");
  if (layout.kappa != c.kappa())
    fail(ErrorKind::InvalidParams, "comparison curvature differs from the complex");
  Rep rep;
  rep.region = &region;
  rep.layout = &layout;
  rep.incident.resize(region.nodes.size());
  for (int i = 0; i < (int)region.edges.size(); ++i) {
    const auto& te = region.edges[i];
    rep.tree_of_edge.emplace(te.edge, i);
    rep.incident[te.a].push_back(i);
    rep.incident[te.b].push_back(i);
    const auto& sides = layout.triangles[i].sides;
    const double scale = std::max({1.0, sides.a, sides.b, sides.c});
    if (std::abs(sides.a - region.nodes[te.a].radius) > eps_geom * scale ||
        std::abs(sides.b - te.length) > eps_geom * scale ||
        std::abs(sides.c - region.nodes[te.b].radius) > eps_geom * scale)
      fail(ErrorKind::InvalidParams, "comparison layout does not match the region tree");
  }
  for (int n = 0; n < (int)region.nodes.size(); ++n) {
    rep.node_of_vertex.emplace(region.nodes[n].vertex, n);
    if (rep.incident[n].empty())
      fail(ErrorKind::InvalidParams, "malformed region tree");
  }
  return rep;
}

SurgeryResult splice_impl(const Complex& c, std::vector<Rep> reps, int samples, int k) {
  std::vector<int> owner(c.face_count(), -1);
  for (int r = 0; r < (int)reps.size(); ++r) {
    for (FaceId f : reps[r].region->faces) {
      if (f < 0 || f >= c.face_count()) fail(ErrorKind::InvalidIndex, "no such face");
      if (owner[f] >= 0)
        fail(ErrorKind::OverlappingRegions, "two surgery regions share a face");
      owner[f] = r;
    }
  }

  std::vector<TriangleSides> new_faces;
  std::vector<int> face_map(c.face_count(), -1);
  for (FaceId f = 0; f < c.face_count(); ++f) {
    if (owner[f] < 0) {
      face_map[f] = (int)new_faces.size();
      new_faces.push_back(c.sides(f));
    }
  }
  std::vector<FaceId> region_after;
  for (auto& rep : reps) {
    rep.tri_base = (int)new_faces.size();
    for (const auto& tri : rep.layout->triangles) {
      region_after.push_back((FaceId)new_faces.size());
      new_faces.push_back(tri.sides);
    }
  }

  // Rewires a member slot to the comparison side that replaces it. Boundary
  // chords keep their orientation; spokes may flip, reported through
  // `reversed`.
  const auto map_member_slot = [&](const Rep& rep, const Slot& sl, bool* reversed) {
    *reversed = false;
    const EdgeId e = c.edge_at(sl);
    const auto tree_it = rep.tree_of_edge.find(e);
    if (tree_it != rep.tree_of_edge.end())
      return Slot{rep.tri_base + tree_it->second, 1};
    const auto ends = c.edge_ends(e);
    const VertexId apex = rep.region->apex;
    if (ends.first != apex && ends.second != apex)
      fail(ErrorKind::BoundaryMismatch,
           "a glued side of the region is neither a rim chord nor an apex spoke");
    const VertexId far = (ends.first == apex) ? ends.second : ends.first;
    const auto node_it = rep.node_of_vertex.find(far);
    if (node_it == rep.node_of_vertex.end())
      fail(ErrorKind::BoundaryMismatch, "an apex spoke does not end on the surgery sphere");
    const int node = node_it->second;
    const double r = rep.region->nodes[node].radius;
    if (std::abs(c.edge_length(e) - r) > eps_geom * std::max(1.0, r))
      fail(ErrorKind::BoundaryMismatch, "an apex spoke does not match the surgery radius");
    const int te = rep.incident[node].front();
    const int side = (rep.region->edges[te].a == node) ? 0 : 2;
    // Side 0 leaves the apex, side 2 returns to it; flip the gluing when the
    // original slot ran the other way.
    const bool old_leaves_apex = (c.vertex_at(sl.face, sl.side) == apex);
    const bool new_leaves_apex = (side == 0);
    *reversed = (old_leaves_apex != new_leaves_apex);
    return Slot{rep.tri_base + te, side};
  };

  std::vector<Gluing> new_gluings;
  for (const Gluing& g : c.gluings()) {
    const int oa = owner[g.a.face];
    const int ob = owner[g.b.face];
    if (oa < 0 && ob < 0) {
      new_gluings.push_back(
          {Slot{face_map[g.a.face], g.a.side}, Slot{face_map[g.b.face], g.b.side}, g.flip});
      continue;
    }
    if (oa >= 0 && oa == ob) continue;  // interior to one region: replaced wholesale
    bool rev_a = false, rev_b = false;
    const Slot na = (oa >= 0) ? map_member_slot(reps[oa], g.a, &rev_a)
                              : Slot{face_map[g.a.face], g.a.side};
    const Slot nb = (ob >= 0) ? map_member_slot(reps[ob], g.b, &rev_b)
                              : Slot{face_map[g.b.face], g.b.side};
    new_gluings.push_back({na, nb, g.flip != (rev_a != rev_b)});
  }
  for (const auto& rep : reps) {
    for (const Gluing& s : rep.layout->seams)
      new_gluings.push_back({Slot{rep.tri_base + s.a.face, s.a.side},
                             Slot{rep.tri_base + s.b.face, s.b.side}, s.flip});
  }

  Complex out = Complex::build(c.kappa(), std::move(new_faces), std::move(new_gluings));

  std::vector<FaceId> region_before;
  double angle_before = 0.0, angle_after = 0.0;
  for (const auto& rep : reps) {
    region_before.insert(region_before.end(), rep.region->faces.begin(),
                         rep.region->faces.end());
    angle_before += rep.region->apex_angle;
    angle_after += rep.layout->apex_angle;
  }
  std::sort(region_before.begin(), region_before.end());

  const VertexId apex_after = out.vertex_at(reps.front().tri_base, 0);

  BoundaryMap map;
  for (const Slot& bs : c.boundary_slots())
    if (owner[bs.face] < 0) map.pairs.push_back({bs, Slot{face_map[bs.face], bs.side}, false});
  DistortionReport distortion;
  if (!map.pairs.empty())
    distortion = boundary_distortion(c, out, map, std::max(2, samples), k);

  Verdict verdict = check_cat(out);
  return SurgeryResult{std::move(out),
                       std::move(region_before),
                       std::move(region_after),
                       std::move(face_map),
                       apex_after,
                       angle_before,
                       angle_after,
                       std::move(verdict),
                       distortion};
}

}  // namespace

SurgeryResult splice(const Complex& c, const ConeRegion& region,
                     const ComparisonLayout& layout, int distortion_samples,
                     int distortion_k) {
  std::vector<Rep> reps;
  reps.push_back(make_rep(c, region, layout));
  return splice_impl(c, std::move(reps), distortion_samples, distortion_k);
}

Schedule surgery_schedule(const Complex& c, const std::vector<double>& eps_list,
                          const std::vector<ScheduleTarget>& targets,
                          const std::vector<FaceId>& tracked,
                          int distortion_samples, int distortion_k) {
  if (eps_list.empty()) fail(ErrorKind::InvalidParams, "empty surgery schedule");
  for (size_t i = 0; i + 1 < eps_list.size(); ++i)
    if (!(eps_list[i] > eps_list[i + 1]))
      fail(ErrorKind::InvalidParams, "surgery radii must strictly decrease");
  if (targets.empty()) fail(ErrorKind::InvalidParams, "no surgery targets");
  if (tracked.empty()) fail(ErrorKind::InvalidParams, "a schedule requires a tracked domain");
  for (FaceId f : tracked)
    if (f < 0 || f >= c.face_count()) fail(ErrorKind::InvalidIndex, "no such tracked face");

  Schedule plan;
  for (double eps : eps_list) {
    std::vector<ConeRegion> regions;
    std::vector<ComparisonLayout> layouts;
    regions.reserve(targets.size());
    for (const auto& t : targets)
      regions.push_back(extract_cone(c, t.vertex, t.segment, eps));
    layouts.reserve(regions.size());
    for (const auto& r : regions) layouts.push_back(comparison_object(r, c.kappa()));
    std::vector<Rep> reps;
    reps.reserve(regions.size());
    for (size_t i = 0; i < regions.size(); ++i)
      reps.push_back(make_rep(c, regions[i], layouts[i]));
    SurgeryResult res = splice_impl(c, std::move(reps), distortion_samples, distortion_k);

    std::vector<char> is_tracked(c.face_count(), 0);
    for (FaceId f : tracked) is_tracked[f] = 1;
    std::vector<FaceId> dom;
    dom.reserve(tracked.size());
    for (FaceId f : tracked)
      if (res.face_map[f] >= 0) dom.push_back(res.face_map[f]);
    // Comparison triangles sit after the surviving faces, one block per
    // target in order; a block joins the domain iff its members were all
    // tracked.
    int members_total = 0;
    for (const auto& r : regions) members_total += (int)r.faces.size();
    int base = c.face_count() - members_total;
    for (const auto& r : regions) {
      int inside = 0;
      for (FaceId f : r.faces) inside += is_tracked[f];
      if (inside == (int)r.faces.size()) {
        for (size_t t = 0; t < r.edges.size(); ++t) dom.push_back(base + (int)t);
      } else if (inside != 0) {
        fail(ErrorKind::InvalidParams, "the tracked domain straddles a surgery region");
      }
      base += (int)r.edges.size();
    }
    const Domain d = make_domain(res.new_complex, dom);
    const CurvatureMeasure m = curvature_measure(res.new_complex);
    ScheduleRow row;
    row.eps = eps;
    row.faces = res.new_complex.face_count();
    row.distortion = res.distortion.max_abs_distortion;
    row.omega_domain = measure_of(res.new_complex, m, d, Closure::open);
    row.tau_boundary = boundary_turn(res.new_complex, d).total;
    row.cat_pass = res.verdict_after.pass;
    plan.rows.push_back(row);
    plan.steps.push_back(std::move(res));
  }
  return plan;
}

}  // namespace catk
