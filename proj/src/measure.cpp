#include "catk/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <set>
#include <sstream>

#include "catk/verify.hpp"

namespace catk {

namespace {

constexpr double kPi = std::numbers::pi_v<double>;
constexpr double kInf = std::numeric_limits<double>::infinity();

double atom_at(const Complex& c, VertexId v) {
  LinkGraph g = link(c, v);
  double total = 0.0;
  for (const LinkArc& a : g.arcs) total += a.length;
  return kPi * (2.0 - g.euler_char()) - total;
}

// Sub-link of directions into the domain closure at v: the corners of domain
// faces at v, as a subgraph of the full link.
struct SubLink {
  std::vector<GermId> nodes;         // germ classes incident to domain corners
  std::vector<LinkArc> arcs;         // node fields re-indexed into `nodes`
  std::vector<int> degree;           // per node
  double length = 0.0;
  int node_of(GermId g) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), g);
    return it != nodes.end() && *it == g ? (int)(it - nodes.begin()) : -1;
  }
  int euler_char() const { return (int)nodes.size() - (int)arcs.size(); }
  bool single_arc() const;
};

bool SubLink::single_arc() const {
  if (arcs.empty() || nodes.size() != arcs.size() + 1) return false;
  int leaves = 0;
  for (int d : degree) {
    if (d == 0 || d > 2) return false;
    if (d == 1) ++leaves;
  }
  if (leaves != 2) return false;
  // Connectivity: a disjoint cycle would also satisfy the counts above.
  std::vector<std::vector<int>> inc(nodes.size());
  for (int i = 0; i < (int)arcs.size(); ++i) {
    inc[arcs[i].a].push_back(i);
    inc[arcs[i].b].push_back(i);
  }
  std::vector<char> seen(nodes.size(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int ai : inc[u]) {
      const int w = arcs[ai].a == u ? arcs[ai].b : arcs[ai].a;
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == (int)nodes.size();
}

SubLink sub_link(const Complex& c, VertexId v,
                 const std::vector<char>& in_domain) {
  SubLink s;
  std::vector<LinkArc> raw;
  for (FaceId f : c.faces_at(v)) {
    if (!in_domain[f]) continue;
    for (int corner = 0; corner < 3; ++corner) {
      if (c.vertex_at(f, corner) != v) continue;
      auto [g0, g1] = c.corner_germs(f, corner);
      LinkArc a;
      a.a = g0;  // germ ids for now; re-indexed below
      a.b = g1;
      a.length = c.corner_angle(f, corner);
      a.face = f;
      a.corner = corner;
      raw.push_back(a);
      s.nodes.push_back(g0);
      s.nodes.push_back(g1);
    }
  }
  std::sort(s.nodes.begin(), s.nodes.end());
  s.nodes.erase(std::unique(s.nodes.begin(), s.nodes.end()), s.nodes.end());
  s.degree.assign(s.nodes.size(), 0);
  for (LinkArc a : raw) {
    a.a = s.node_of(a.a);
    a.b = s.node_of(a.b);
    ++s.degree[a.a];
    ++s.degree[a.b];
    s.length += a.length;
    s.arcs.push_back(a);
  }
  return s;
}

std::vector<char> domain_mask(const Complex& c, const std::vector<FaceId>& faces) {
  std::vector<char> mask(c.face_count(), 0);
  for (FaceId f : faces) mask[f] = 1;
  return mask;
}

}  // namespace

double CurvatureMeasure::atom(VertexId v) const {
  auto it = vertex_atoms.find(v);
  if (it != vertex_atoms.end()) return it->second;
  it = breakpoint_atoms.find(v);
  if (it != breakpoint_atoms.end()) return it->second;
  return 0.0;
}

CurvatureMeasure curvature_measure(const Complex& c) {
  CurvatureMeasure m;
  m.face_density = c.kappa();
  for (VertexId v = 0; v < c.vertex_count(); ++v) {
    const double a = atom_at(c, v);
    if (is_edge_break_point(c, v))
      m.breakpoint_atoms[v] = a;
    else
      m.vertex_atoms[v] = a;
    if (a > 0.0)
      m.positive_part += a;
    else
      m.negative_part -= a;
  }
  return m;
}

bool Domain::contains(FaceId f) const {
  return std::binary_search(faces.begin(), faces.end(), f);
}

bool Domain::is_boundary_vertex(VertexId v) const {
  return std::binary_search(boundary_vertices.begin(), boundary_vertices.end(), v);
}

Domain make_domain(const Complex& c, std::vector<FaceId> faces, std::string label) {
  if (faces.empty()) fail(ErrorKind::InvalidParams, "domain has no faces");
  std::sort(faces.begin(), faces.end());
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
  if (faces.front() < 0 || faces.back() >= c.face_count())
    fail(ErrorKind::InvalidIndex, "domain face id out of range");

  Domain d;
  d.faces = std::move(faces);
  d.label = std::move(label);
  d.chi = euler_characteristic(c, d.faces);
  const std::vector<char> mask = domain_mask(c, d.faces);

  // Boundary edges and slots: an edge is on the boundary when it is free in
  // the ambient complex or has a slot outside the domain.
  std::set<EdgeId> boundary_edge_set;
  for (FaceId f : d.faces)
    for (int s = 0; s < 3; ++s) {
      const EdgeId e = c.edge_at({f, s});
      bool boundary = c.multiplicity(e) == 1;
      for (const Slot& slot : c.edge_slots(e))
        if (!mask[slot.face]) boundary = true;
      if (boundary) {
        boundary_edge_set.insert(e);
        d.boundary_slots.push_back({f, s});
      }
    }
  d.boundary_edges.assign(boundary_edge_set.begin(), boundary_edge_set.end());
  std::sort(d.boundary_slots.begin(), d.boundary_slots.end());

  // Vertex classification.
  std::set<VertexId> touched;
  for (FaceId f : d.faces)
    for (int i = 0; i < 3; ++i) touched.insert(c.vertex_at(f, i));
  for (VertexId v : touched) {
    bool interior = true;
    for (FaceId f : c.faces_at(v))
      if (!mask[f]) interior = false;
    if (interior)
      for (EdgeId e : c.edges_at(v))
        if (c.multiplicity(e) == 1) interior = false;
    if (interior)
      d.interior_vertices.push_back(v);
    else
      d.boundary_vertices.push_back(v);
  }

  // Boundary slot ends per vertex: (index into boundary_slots, end).
  std::vector<std::vector<std::pair<int, int>>> ends_at(c.vertex_count());
  for (int i = 0; i < (int)d.boundary_slots.size(); ++i)
    for (int end = 0; end < 2; ++end) {
      const GermId g = c.germ(d.boundary_slots[i], end);
      ends_at[c.germ_vertex(g)].push_back({i, end});
    }

  // Outer corners: boundary vertices that cannot sit inside a smooth chain.
  const SingularLocus locus = singular_locus(c);
  std::set<VertexId> locus_vertex_set;
  for (VertexId v : locus.vertices) locus_vertex_set.insert(v);
  for (VertexId v : locus.break_points) locus_vertex_set.insert(v);
  std::set<EdgeId> locus_edge_set(locus.edges.begin(), locus.edges.end());
  std::set<VertexId> outer;
  for (VertexId v : d.boundary_vertices) {
    bool on_locus = locus_vertex_set.count(v) > 0;
    for (EdgeId e : c.edges_at(v))
      if (locus_edge_set.count(e)) on_locus = true;
    d.on_singular_locus.push_back(on_locus ? 1 : 0);

    const bool singular = locus_vertex_set.count(v) > 0;
    const bool two_ends = ends_at[v].size() == 2;
    const bool smooth = !singular && two_ends && sub_link(c, v, mask).single_arc();
    if (!smooth) outer.insert(v);
  }
  d.outer_corners.assign(outer.begin(), outer.end());

  // Chain the boundary slots: walk through regular vertices (which have
  // exactly two boundary slot ends), stop at outer corners.
  std::vector<char> visited(d.boundary_slots.size(), 0);
  auto other_end_vertex = [&](int slot_idx, int entry_end) {
    const GermId g = c.germ(d.boundary_slots[slot_idx], 1 - entry_end);
    return c.germ_vertex(g);
  };
  auto walk = [&](int slot_idx, int entry_end) {
    BoundaryChain chain;
    const GermId g0 = c.germ(d.boundary_slots[slot_idx], entry_end);
    chain.vertices.push_back(c.germ_vertex(g0));
    int cur = slot_idx, end = entry_end;
    while (true) {
      visited[cur] = 1;
      chain.slots.push_back(d.boundary_slots[cur]);
      chain.edges.push_back(c.edge_at(d.boundary_slots[cur]));
      const VertexId far = other_end_vertex(cur, end);
      chain.vertices.push_back(far);
      if (outer.count(far)) break;  // open chain ends here
      // Regular vertex: continue through the unique other boundary end.
      const auto& ends = ends_at[far];
      int nxt = -1, nxt_end = -1;
      for (const auto& [i, e] : ends)
        if (!(i == cur && e == 1 - end)) {
          nxt = i;
          nxt_end = e;
        }
      if (nxt < 0 || visited[nxt]) {
        chain.cycle = (far == chain.vertices.front());
        break;  // closed the cycle (or exhausted a slit; cycle flag says which)
      }
      cur = nxt;
      end = nxt_end;
    }
    return chain;
  };
  // Open chains first, started at outer corners for determinism.
  for (int i = 0; i < (int)d.boundary_slots.size(); ++i)
    for (int end = 0; end < 2; ++end) {
      if (visited[i]) break;
      const GermId g = c.germ(d.boundary_slots[i], end);
      if (outer.count(c.germ_vertex(g))) {
        d.boundary.push_back(walk(i, end));
        break;
      }
    }
  // Remaining slots belong to cycles through regular vertices only.
  for (int i = 0; i < (int)d.boundary_slots.size(); ++i)
    if (!visited[i]) d.boundary.push_back(walk(i, 0));

  return d;
}

Admissibility check_admissible(const Complex& c, const Domain& d) {
  Admissibility a;
  const SingularLocus locus = singular_locus(c);
  std::set<EdgeId> locus_edges(locus.edges.begin(), locus.edges.end());

  // (i) The boundary must not run along the singular locus.
  for (EdgeId e : d.boundary_edges)
    if (locus_edges.count(e)) {
      a.admissible = false;
      std::ostringstream os;
      os << "boundary edge " << e << " lies inside the singular locus";
      a.diagnostics.push_back(os.str());
    }

  // (ii)/(iii) At boundary vertices on the locus: boundary directions keep
  // positive link distance from locus directions, and the domain-side link
  // has positive length.
  const std::vector<char> mask = domain_mask(c, d.faces);
  for (size_t bi = 0; bi < d.boundary_vertices.size(); ++bi) {
    if (!d.on_singular_locus[bi]) continue;
    const VertexId v = d.boundary_vertices[bi];

    const SubLink sl = sub_link(c, v, mask);
    if (!(sl.length > 0.0)) {
      a.admissible = false;
      a.diagnostics.push_back("domain-side link has zero length at vertex " +
                              std::to_string(v));
    }

    // Germ sets: boundary directions at v vs. singular-locus directions at v.
    std::set<GermId> boundary_germs, locus_germs;
    for (const Slot& s : d.boundary_slots)
      for (int end = 0; end < 2; ++end) {
        const GermId g = c.germ(s, end);
        if (c.germ_vertex(g) == v) boundary_germs.insert(g);
      }
    for (GermId g : c.germs_at(v))
      if (locus_edges.count(c.germ_edge(g))) locus_germs.insert(g);
    if (boundary_germs.empty() || locus_germs.empty()) continue;

    // Multi-source shortest path in the full link metric.
    LinkGraph g = link(c, v);
    std::vector<double> dist(g.nodes.size(), kInf);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (GermId bg : boundary_germs) {
      const int n = g.node_index(bg);
      dist[n] = 0.0;
      pq.push({0.0, n});
    }
    std::vector<std::vector<int>> inc(g.nodes.size());
    for (int i = 0; i < (int)g.arcs.size(); ++i) {
      inc[g.arcs[i].a].push_back(i);
      if (g.arcs[i].b != g.arcs[i].a) inc[g.arcs[i].b].push_back(i);
    }
    while (!pq.empty()) {
      auto [dd, u] = pq.top();
      pq.pop();
      if (dd > dist[u]) continue;
      for (int ai : inc[u]) {
        const int w = g.arcs[ai].a == u ? g.arcs[ai].b : g.arcs[ai].a;
        if (dd + g.arcs[ai].length < dist[w]) {
          dist[w] = dd + g.arcs[ai].length;
          pq.push({dist[w], w});
        }
      }
    }
    double margin = kInf;
    for (GermId lg : locus_germs) margin = std::min(margin, dist[g.node_index(lg)]);
    a.transversal_margin = std::min(a.transversal_margin, margin);
    if (!(margin > 0.0)) {
      a.admissible = false;
      a.diagnostics.push_back("boundary direction tangent to the singular locus at vertex " +
                              std::to_string(v));
    }
  }
  return a;
}

double turn_of_polyline(const Complex& c, const Domain& d, const BoundaryChain& arc) {
  for (const Slot& s : arc.slots)
    if (!std::binary_search(d.boundary_slots.begin(), d.boundary_slots.end(), s))
      fail(ErrorKind::InvalidParams, "polyline slot is not on the domain boundary");
  const std::vector<char> mask = domain_mask(c, d.faces);
  const size_t first = arc.cycle ? 0 : 1;
  const size_t last = arc.vertices.empty() ? 0 : arc.vertices.size() - 1;
  double turn = 0.0;
  for (size_t i = first; i < last; ++i) {
    const VertexId v = arc.vertices[i];
    const double theta = sub_link(c, v, mask).length;
    if (!(theta > 0.0))
      fail(ErrorKind::ZeroSector,
           "zero sector angle at vertex " + std::to_string(v));
    turn += kPi - theta;
  }
  return turn;
}

double outer_angle(const Complex& c, const Domain& d, VertexId q) {
  const std::vector<char> mask = domain_mask(c, d.faces);
  const SubLink sl = sub_link(c, q, mask);
  return kPi * (2.0 - sl.euler_char()) - sl.length;
}

Turn boundary_turn(const Complex& c, const Domain& d) {
  Turn t;
  for (const BoundaryChain& chain : d.boundary) {
    const double turn = turn_of_polyline(c, d, chain);
    if (chain.cycle)
      t.cycles.push_back(turn);
    else
      t.arcs.push_back(turn);
    t.total += turn;
  }
  for (VertexId q : d.outer_corners) {
    const double o = outer_angle(c, d, q);
    t.outer.push_back(o);
    t.total += o;
  }
  return t;
}

double measure_of(const Complex& c, const CurvatureMeasure& m, const Domain& d,
                  Closure closure) {
  double total = 0.0;
  for (VertexId v : d.interior_vertices) total += m.atom(v);
  if (closure == Closure::closed)
    for (VertexId v : d.boundary_vertices) total += m.atom(v);
  for (FaceId f : d.faces) total += m.face_density * c.face_area(f);
  return total;
}

double gauss_bonnet_residual(const Complex& c, const Domain& d) {
  const Admissibility a = check_admissible(c, d);
  if (!a.admissible) {
    std::string why;
    for (const std::string& s : a.diagnostics) why += (why.empty() ? "" : "; ") + s;
    fail(ErrorKind::NotAdmissible, why.empty() ? "domain is not admissible" : why);
  }
  const CurvatureMeasure m = curvature_measure(c);
  const Turn t = boundary_turn(c, d);
  return measure_of(c, m, d, Closure::open) - (2.0 * kPi * d.chi - t.total);
}

PositivePartReport positive_part_bound_check(const Complex& c,
                                             const CurvatureMeasure& m,
                                             const std::vector<FaceId>& faces) {
  PositivePartReport r;
  double area = 0.0;
  for (FaceId f : faces) {
    if (f < 0 || f >= c.face_count())
      fail(ErrorKind::InvalidIndex, "face id out of range");
    area += c.face_area(f);
  }
  r.positive_face_part = std::max(m.face_density, 0.0) * area;
  r.area_bound = std::abs(m.face_density) * area;
  if (r.positive_face_part > r.area_bound + eps_geom * (1.0 + area)) r.ok = false;

  // Atoms are sign-constrained only at interior singular points: a convex
  // free-boundary corner (sector angle < pi) carries a positive atom on any
  // complex, passing or not, so vertices touching a free side are skipped.
  r.cat_pass = check_cat(c).pass;
  const SingularLocus locus = singular_locus(c);
  std::vector<VertexId> singular(locus.break_points);
  for (VertexId v : locus.vertices) {
    bool boundary = false;
    for (EdgeId e : c.edges_at(v)) boundary = boundary || c.is_boundary_edge(e);
    if (!boundary) singular.push_back(v);
  }
  r.worst_atom = -kInf;
  for (VertexId v : singular) {
    const double atom = m.atom(v);
    if (atom > r.worst_atom) {
      r.worst_atom = atom;
      r.worst_location = "vertex:" + std::to_string(v);
    }
  }
  if (singular.empty()) r.worst_atom = 0.0;
  if (r.cat_pass && r.worst_atom > eps_geom) r.ok = false;
  return r;
}

namespace {

// Per-vertex data for the wing audit: the full link at an interior chain
// vertex together with the two chain-direction hub germs.
struct ChainPoint {
  VertexId v = -1;
  LinkGraph link;
  int hub_in = -1;   // node index of the incoming chain germ
  int hub_out = -1;  // node index of the outgoing chain germ
};

struct PathShape {
  bool valid = false;     // simple path
  bool spans = false;     // endpoints are exactly the two hubs
  int hubs_touched = 0;   // how many of the two hubs it meets
  double length = 0.0;
};

// Classify one connected component (given as arc indices) of a face-filtered
// subgraph of the link.
PathShape classify_component(const LinkGraph& g, const std::vector<int>& arc_ids,
                             int hub_in, int hub_out) {
  PathShape p;
  std::map<int, int> degree;
  for (int ai : arc_ids) {
    const LinkArc& a = g.arcs[ai];
    ++degree[a.a];
    ++degree[a.b];
    p.length += a.length;
    if (a.a == a.b) return p;  // loop arc: not a path
  }
  int leaves = 0;
  for (auto [node, deg] : degree) {
    if (deg > 2) return p;  // branching: not a path
    if (deg == 1) ++leaves;
  }
  if (leaves != 2 || degree.size() != arc_ids.size() + 1) return p;  // cycle
  p.valid = true;
  const bool in_leaf = degree.count(hub_in) && degree[hub_in] == 1;
  const bool out_leaf = degree.count(hub_out) && degree[hub_out] == 1;
  const bool in_mid = degree.count(hub_in) && degree[hub_in] == 2;
  const bool out_mid = degree.count(hub_out) && degree[hub_out] == 2;
  p.hubs_touched = (int)(in_leaf || in_mid) + (int)(out_leaf || out_mid);
  p.spans = in_leaf && out_leaf;
  if (in_mid || out_mid) p.valid = false;  // hub strictly inside a fan
  return p;
}

// Split the arcs whose face lies in `wing` into connected components.
std::vector<std::vector<int>> components(const LinkGraph& g,
                                         const std::vector<char>& wing) {
  std::vector<int> arc_ids;
  for (int i = 0; i < (int)g.arcs.size(); ++i)
    if (g.arcs[i].face >= 0 && wing[g.arcs[i].face]) arc_ids.push_back(i);
  std::map<int, std::vector<int>> inc;
  for (int ai : arc_ids) {
    inc[g.arcs[ai].a].push_back(ai);
    inc[g.arcs[ai].b].push_back(ai);
  }
  std::vector<std::vector<int>> comps;
  std::set<int> seen;
  for (int start : arc_ids) {
    if (seen.count(start)) continue;
    std::vector<int> comp, stack{start};
    seen.insert(start);
    while (!stack.empty()) {
      const int ai = stack.back();
      stack.pop_back();
      comp.push_back(ai);
      for (int node : {g.arcs[ai].a, g.arcs[ai].b})
        for (int nb : inc[node])
          if (!seen.count(nb)) {
            seen.insert(nb);
            stack.push_back(nb);
          }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(comp);
  }
  return comps;
}

}  // namespace

WingAudit explicit_formula_audit(const Complex& c, const SingularLocus::Chain& chain,
                                 const std::vector<std::vector<FaceId>>& wings) {
  if (chain.edges.empty()) fail(ErrorKind::InvalidParams, "empty chain");
  if (chain.vertices.size() != chain.edges.size() + 1)
    fail(ErrorKind::InvalidParams, "chain vertex/edge counts disagree");
  if (wings.empty()) fail(ErrorKind::InvalidParams, "no wings supplied");

  std::vector<std::vector<char>> wing_mask;
  for (const auto& w : wings) {
    std::vector<char> mask(c.face_count(), 0);
    for (FaceId f : w) {
      if (f < 0 || f >= c.face_count())
        fail(ErrorKind::InvalidIndex, "wing face id out of range");
      mask[f] = 1;
    }
    wing_mask.push_back(std::move(mask));
  }

  // Every slot of every chain edge must belong to some wing.
  for (EdgeId e : chain.edges)
    for (const Slot& s : c.edge_slots(e)) {
      bool covered = false;
      for (const auto& mask : wing_mask) covered = covered || mask[s.face];
      if (!covered)
        fail(ErrorKind::MalformedWings,
             "wings do not cover the chain's incident slots");
    }

  // Interior vertices with their chain hub germs.
  std::vector<ChainPoint> points;
  const size_t n = chain.edges.size();
  auto germ_at = [&](EdgeId e, VertexId v, GermId avoid) {
    const GermId g0 = c.germ_of_edge_end(e, 0), g1 = c.germ_of_edge_end(e, 1);
    if (c.germ_vertex(g0) == v && g0 != avoid) return g0;
    if (c.germ_vertex(g1) == v && g1 != avoid) return g1;
    fail(ErrorKind::InvalidParams, "chain edge does not reach its listed vertex");
  };
  const size_t first = chain.cycle ? 0 : 1;
  for (size_t i = first; i < n; ++i) {
    ChainPoint p;
    p.v = chain.vertices[i];
    const EdgeId e_in = (i == 0) ? chain.edges[n - 1] : chain.edges[i - 1];
    const EdgeId e_out = chain.edges[i];
    const GermId g_in = germ_at(e_in, p.v, -1);
    const GermId g_out = germ_at(e_out, p.v, e_in == e_out ? g_in : -1);
    p.link = link(c, p.v);
    p.hub_in = p.link.node_index(g_in);
    p.hub_out = p.link.node_index(g_out);
    if (p.hub_in < 0 || p.hub_out < 0 || p.hub_in == p.hub_out)
      fail(ErrorKind::InvalidParams, "chain directions collapse at vertex " +
                                         std::to_string(p.v));
    points.push_back(std::move(p));
  }

  WingAudit audit;
  audit.wing_turns.assign(wings.size(), 0.0);

  // lhs: atoms at the interior vertices; also every link arc there must be
  // covered by some wing, or the decomposition cannot reproduce the measure.
  for (const ChainPoint& p : points) {
    double L = 0.0;
    for (const LinkArc& a : p.link.arcs) {
      L += a.length;
      bool covered = false;
      for (const auto& mask : wing_mask) covered = covered || mask[a.face];
      if (!covered)
        fail(ErrorKind::MalformedWings, "wings do not cover the link at vertex " +
                                            std::to_string(p.v));
    }
    audit.lhs += kPi * (2.0 - p.link.euler_char()) - L;
  }

  // Per-wing turns: each wing must run hub to hub as one simple path.
  std::vector<std::vector<double>> wing_theta(points.size());
  for (size_t k = 0; k < wings.size(); ++k) {
    for (size_t pi = 0; pi < points.size(); ++pi) {
      const ChainPoint& p = points[pi];
      auto comps = components(p.link, wing_mask[k]);
      if (comps.size() != 1)
        fail(ErrorKind::MalformedWings, "wing " + std::to_string(k) +
                                            " is not a single fan at vertex " +
                                            std::to_string(p.v));
      const PathShape shape = classify_component(p.link, comps[0], p.hub_in, p.hub_out);
      if (!shape.valid || !shape.spans)
        fail(ErrorKind::MalformedWings, "wing " + std::to_string(k) +
                                            " does not run hub to hub at vertex " +
                                            std::to_string(p.v));
      audit.wing_turns[k] += kPi - shape.length;
      wing_theta[pi].push_back(shape.length);
    }
  }

  // Corrections: overlap of wing k with the union of the earlier wings.
  // At every interior vertex each overlap component must be a sub-fan of
  // wing k's path that reaches the chain: a component spanning hub to hub
  // contributes its turning angle (pi minus its length), one ending at a
  // single hub closes a pocket there and contributes its angle.  Anything
  // else — a component away from both hubs, or a lone germ shared without a
  // shared corner (a pinch) — breaks the hub-to-hub decomposition that the
  // correction calculus rests on, so it is rejected rather than folded in.
  // The first two wings must meet only along the chain itself.
  for (size_t k = 1; k < wings.size(); ++k) {
    std::vector<char> overlap(c.face_count(), 0);
    std::vector<char> earlier_mask(c.face_count(), 0);
    for (int f = 0; f < c.face_count(); ++f) {
      bool earlier = false;
      for (size_t j = 0; j < k; ++j) earlier = earlier || wing_mask[j][f];
      earlier_mask[f] = earlier;
      overlap[f] = earlier && wing_mask[k][f];
    }
    double tau = 0.0, theta = 0.0;
    for (const ChainPoint& p : points) {
      const auto comps = components(p.link, overlap);
      if (k == 1 && !comps.empty())
        fail(ErrorKind::MalformedWings,
             "the first two wings share a face at vertex " + std::to_string(p.v));
      std::set<int> allowed{p.hub_in, p.hub_out};
      for (const auto& comp : comps) {
        const PathShape shape =
            classify_component(p.link, comp, p.hub_in, p.hub_out);
        if (!shape.valid)
          fail(ErrorKind::MalformedWings, "overlap fan is not a simple path at vertex " +
                                              std::to_string(p.v));
        if (shape.spans)
          tau += kPi - shape.length;  // pocket passes through this vertex
        else if (shape.hubs_touched == 1)
          theta += shape.length;  // pocket ends here: angle of its closure
        else
          fail(ErrorKind::MalformedWings, "wings overlap away from the chain at vertex " +
                                              std::to_string(p.v));
        for (int ai : comp) {
          allowed.insert(p.link.arcs[ai].a);
          allowed.insert(p.link.arcs[ai].b);
        }
      }
      std::set<int> mine, prior;
      for (const LinkArc& a : p.link.arcs) {
        if (wing_mask[k][a.face]) {
          mine.insert(a.a);
          mine.insert(a.b);
        }
        if (earlier_mask[a.face]) {
          prior.insert(a.a);
          prior.insert(a.b);
        }
      }
      for (int node : mine)
        if (prior.count(node) && !allowed.count(node))
          fail(ErrorKind::MalformedWings,
               "wings pinch at a germ of vertex " + std::to_string(p.v));
    }
    // Overlap faces touching a chain endpoint: the endpoint angle convention
    // contributes zero there; flag for review.
    if (!chain.cycle)
      for (VertexId endpoint : {chain.vertices.front(), chain.vertices.back()})
        for (FaceId f : c.faces_at(endpoint))
          if (overlap[f]) audit.endpoint_flag = true;
    if (k >= 2) audit.corrections.push_back(tau - theta);
  }

  audit.rhs = 0.0;
  for (double t : audit.wing_turns) audit.rhs += t;
  for (double corr : audit.corrections) audit.rhs -= corr;
  audit.residual = audit.lhs - audit.rhs;

  // Pairwise-wing diagnostic: compare each atom against the two-wing atoms.
  for (size_t pi = 0; pi < points.size(); ++pi) {
    const ChainPoint& p = points[pi];
    double L = 0.0;
    for (const LinkArc& a : p.link.arcs) L += a.length;
    const double atom = kPi * (2.0 - p.link.euler_char()) - L;
    double denom = 0.0;
    const auto& th = wing_theta[pi];
    for (size_t i = 0; i < th.size(); ++i)
      for (size_t j = i + 1; j < th.size(); ++j)
        denom += std::abs(2.0 * kPi - th[i] - th[j]);
    if (denom > 0.0)
      audit.pairwise_ratio = std::max(audit.pairwise_ratio, std::abs(atom) / denom);
    else if (std::abs(atom) > eps_geom)
      audit.pairwise_ratio = kInf;
  }
  return audit;
}

}  // namespace catk
