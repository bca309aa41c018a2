#include "catk/complex.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <set>
#include <string>

namespace catk {

namespace {

constexpr double kPi = std::numbers::pi_v<double>;

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Deterministic dense renumbering: classes ordered by smallest raw member.
std::vector<int> densify(UnionFind& uf, int n, int* count) {
  std::vector<int> order;
  order.reserve(n);
  for (int i = 0; i < n; ++i)
    if (uf.find(i) == i) order.push_back(i);
  std::vector<int> out(n);
  for (int i = 0; i < n; ++i) out[i] = -1;
  int next = 0;
  for (int rep : order) out[rep] = next++;
  for (int i = 0; i < n; ++i) out[i] = out[uf.find(i)];
  *count = next;
  return out;
}

int raw_germ(const Slot& s, int end) { return 6 * s.face + 2 * s.side + end; }
int raw_side(const Slot& s) { return 3 * s.face + s.side; }

void sort_unique(std::vector<int>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

Complex Complex::build(double kappa, std::vector<TriangleSides> faces,
                       std::vector<Gluing> gluings) {
  Complex c;
  c.kappa_ = kappa;
  const int nf = (int)faces.size();
  if (nf == 0) fail(ErrorKind::InvalidParams, "a complex needs at least one face");
  for (int f = 0; f < nf; ++f) {
    try {
      validate_triangle(kappa, faces[f]);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::SizeBound) throw;
      fail(ErrorKind::InvalidTriangle, "face " + std::to_string(f) + ": " + e.what());
    }
  }

  std::set<std::pair<Slot, Slot>> seen_pairs;
  for (const Gluing& g : gluings) {
    for (const Slot& s : {g.a, g.b})
      if (s.face < 0 || s.face >= nf || s.side < 0 || s.side > 2)
        fail(ErrorKind::InvalidIndex, "gluing references a slot outside the complex");
    if (g.a == g.b) fail(ErrorKind::SlotReuse, "side glued to itself");
    auto key = std::minmax(g.a, g.b);
    if (!seen_pairs.insert({key.first, key.second}).second)
      fail(ErrorKind::SlotReuse, "the same pair of sides is glued twice");
    const double la = faces[g.a.face][g.a.side];
    const double lb = faces[g.b.face][g.b.side];
    if (std::abs(la - lb) > eps_geom * std::max(1.0, std::max(la, lb)))
      fail(ErrorKind::LengthMismatch, "glued sides have lengths " + std::to_string(la) +
                                          " and " + std::to_string(lb));
  }

  // Three union-finds: side ends under the gluing relation give germs; germs
  // plus corner cohabitation give vertex classes; sides give edge classes.
  UnionFind germ_uf(6 * nf), vertex_uf(6 * nf), side_uf(3 * nf);
  for (const Gluing& g : gluings) {
    side_uf.unite(raw_side(g.a), raw_side(g.b));
    const int a0 = raw_germ(g.a, 0), a1 = raw_germ(g.a, 1);
    const int b0 = raw_germ(g.b, 0), b1 = raw_germ(g.b, 1);
    if (g.flip) {
      germ_uf.unite(a0, b0);
      germ_uf.unite(a1, b1);
    } else {
      germ_uf.unite(a0, b1);
      germ_uf.unite(a1, b0);
    }
  }
  vertex_uf.parent = germ_uf.parent;
  for (int f = 0; f < nf; ++f)
    for (int corner = 0; corner < 3; ++corner)
      vertex_uf.unite(raw_germ({f, corner}, 0), raw_germ({f, (corner + 2) % 3}, 1));

  int germ_count = 0, vertex_count = 0, edge_count = 0;
  std::vector<int> germ_class = densify(germ_uf, 6 * nf, &germ_count);
  std::vector<int> vertex_class = densify(vertex_uf, 6 * nf, &vertex_count);
  std::vector<int> edge_class = densify(side_uf, 3 * nf, &edge_count);

  // A cycle of gluings with an odd number of orientation reversals would
  // identify a side with itself reversed, folding the edge at its midpoint;
  // that quotient is not a complex of whole glued sides, so reject it.
  for (int f = 0; f < nf; ++f)
    for (int s = 0; s < 3; ++s)
      if (germ_class[raw_germ({f, s}, 0)] == germ_class[raw_germ({f, s}, 1)])
        fail(ErrorKind::SlotReuse,
             "gluing cycle identifies the two ends of an edge (a side ends up "
             "glued to itself reversed)");

  c.faces_ = std::move(faces);
  c.gluings_ = std::move(gluings);
  c.germ_count_ = germ_count;
  c.vertex_count_ = vertex_count;
  c.side_germ_.assign(6 * nf, -1);
  c.side_edge_.assign(3 * nf, -1);
  c.corner_vertex_.assign(3 * nf, -1);
  for (int i = 0; i < 6 * nf; ++i) c.side_germ_[i] = germ_class[i];
  for (int i = 0; i < 3 * nf; ++i) c.side_edge_[i] = edge_class[i];
  for (int f = 0; f < nf; ++f)
    for (int corner = 0; corner < 3; ++corner)
      c.corner_vertex_[3 * f + corner] = vertex_class[raw_germ({f, corner}, 0)];

  c.germ_edge_.assign(germ_count, -1);
  c.germ_vertex_.assign(germ_count, -1);
  c.edge_slots_.assign(edge_count, {});
  for (int f = 0; f < nf; ++f)
    for (int s = 0; s < 3; ++s) {
      Slot slot{f, s};
      c.edge_slots_[edge_class[raw_side(slot)]].push_back(slot);
      for (int end = 0; end < 2; ++end) {
        const int g = germ_class[raw_germ(slot, end)];
        c.germ_edge_[g] = edge_class[raw_side(slot)];
        c.germ_vertex_[g] = vertex_class[raw_germ(slot, end)];
      }
    }

  // Glued sides must also agree in length across whole classes (pairwise
  // checks above only cover explicit gluings; chains compose).
  for (const auto& slots : c.edge_slots_) {
    const double l0 = c.faces_[slots[0].face][slots[0].side];
    for (const Slot& s : slots) {
      const double l = c.faces_[s.face][s.side];
      if (std::abs(l - l0) > eps_geom * std::max(1.0, std::max(l, l0)))
        fail(ErrorKind::LengthMismatch, "edge class mixes side lengths " + std::to_string(l0) +
                                            " and " + std::to_string(l));
    }
  }

  c.vertex_germs_.assign(vertex_count, {});
  c.vertex_faces_.assign(vertex_count, {});
  c.vertex_edges_.assign(vertex_count, {});
  for (int g = 0; g < germ_count; ++g) c.vertex_germs_[c.germ_vertex_[g]].push_back(g);
  for (auto& v : c.vertex_germs_) sort_unique(v);
  for (int f = 0; f < nf; ++f)
    for (int corner = 0; corner < 3; ++corner)
      c.vertex_faces_[c.corner_vertex_[3 * f + corner]].push_back(f);
  for (auto& v : c.vertex_faces_) sort_unique(v);
  for (int v = 0; v < vertex_count; ++v) {
    for (GermId g : c.vertex_germs_[v]) c.vertex_edges_[v].push_back(c.germ_edge_[g]);
    sort_unique(c.vertex_edges_[v]);
  }

  for (int e = 0; e < edge_count; ++e)
    if ((int)c.edge_slots_[e].size() == 1) c.boundary_slots_.push_back(c.edge_slots_[e][0]);

  c.corner_angles_.assign(3 * nf, 0.0);
  c.face_areas_.assign(nf, 0.0);
  for (int f = 0; f < nf; ++f) {
    for (int corner = 0; corner < 3; ++corner)
      c.corner_angles_[3 * f + corner] =
          angle_from_sides(kappa, c.faces_[f], (corner + 1) % 3);
    c.face_areas_[f] = triangle_area(kappa, c.faces_[f]);
  }
  return c;
}

const TriangleSides& Complex::sides(FaceId f) const {
  if (f < 0 || f >= face_count()) fail(ErrorKind::InvalidIndex, "face id out of range");
  return faces_[f];
}

double Complex::side_length(const Slot& s) const { return sides(s.face)[s.side]; }

double Complex::corner_angle(FaceId f, int corner) const {
  if (f < 0 || f >= face_count() || corner < 0 || corner > 2)
    fail(ErrorKind::InvalidIndex, "corner out of range");
  return corner_angles_[3 * f + corner];
}

double Complex::face_area(FaceId f) const {
  if (f < 0 || f >= face_count()) fail(ErrorKind::InvalidIndex, "face id out of range");
  return face_areas_[f];
}

double Complex::total_area() const {
  double t = 0.0;
  for (double a : face_areas_) t += a;
  return t;
}

double Complex::angle_sum(VertexId v) const {
  double t = 0.0;
  for (FaceId f : faces_at(v))
    for (int corner = 0; corner < 3; ++corner)
      if (vertex_at(f, corner) == v) t += corner_angle(f, corner);
  return t;
}

VertexId Complex::vertex_at(FaceId f, int corner) const {
  if (f < 0 || f >= face_count() || corner < 0 || corner > 2)
    fail(ErrorKind::InvalidIndex, "corner out of range");
  return corner_vertex_[3 * f + corner];
}

EdgeId Complex::edge_at(const Slot& s) const {
  if (s.face < 0 || s.face >= face_count() || s.side < 0 || s.side > 2)
    fail(ErrorKind::InvalidIndex, "slot out of range");
  return side_edge_[raw_side(s)];
}

double Complex::edge_length(EdgeId e) const {
  const Slot& s = edge_slots(e)[0];
  return faces_[s.face][s.side];
}

const std::vector<Slot>& Complex::edge_slots(EdgeId e) const {
  if (e < 0 || e >= edge_count()) fail(ErrorKind::InvalidIndex, "edge id out of range");
  return edge_slots_[e];
}

std::pair<VertexId, VertexId> Complex::edge_ends(EdgeId e) const {
  const Slot& s = edge_slots(e)[0];
  return {vertex_at(s.face, s.side), vertex_at(s.face, (s.side + 1) % 3)};
}

GermId Complex::germ(const Slot& s, int end) const {
  if (s.face < 0 || s.face >= face_count() || s.side < 0 || s.side > 2 || end < 0 || end > 1)
    fail(ErrorKind::InvalidIndex, "germ reference out of range");
  return side_germ_[raw_germ(s, end)];
}

GermId Complex::germ_of_edge_end(EdgeId e, int end) const {
  return germ(edge_slots(e)[0], end);
}

EdgeId Complex::germ_edge(GermId g) const {
  if (g < 0 || g >= germ_count_) fail(ErrorKind::InvalidIndex, "germ id out of range");
  return germ_edge_[g];
}

VertexId Complex::germ_vertex(GermId g) const {
  if (g < 0 || g >= germ_count_) fail(ErrorKind::InvalidIndex, "germ id out of range");
  return germ_vertex_[g];
}

std::pair<GermId, GermId> Complex::corner_germs(FaceId f, int corner) const {
  return {germ({f, corner}, 0), germ({f, (corner + 2) % 3}, 1)};
}

const std::vector<GermId>& Complex::germs_at(VertexId v) const {
  if (v < 0 || v >= vertex_count_) fail(ErrorKind::InvalidIndex, "vertex id out of range");
  return vertex_germs_[v];
}

const std::vector<FaceId>& Complex::faces_at(VertexId v) const {
  if (v < 0 || v >= vertex_count_) fail(ErrorKind::InvalidIndex, "vertex id out of range");
  return vertex_faces_[v];
}

const std::vector<EdgeId>& Complex::edges_at(VertexId v) const {
  if (v < 0 || v >= vertex_count_) fail(ErrorKind::InvalidIndex, "vertex id out of range");
  return vertex_edges_[v];
}

double LinkGraph::total_length() const {
  double t = 0.0;
  for (const LinkArc& a : arcs) t += a.length;
  return t;
}

std::vector<int> LinkGraph::degrees() const {
  std::vector<int> d(nodes.size(), 0);
  for (const LinkArc& a : arcs) {
    d[a.a]++;
    d[a.b]++;
  }
  return d;
}

int LinkGraph::node_index(GermId g) const {
  for (int i = 0; i < (int)nodes.size(); ++i)
    if (nodes[i] == g) return i;
  return -1;
}

bool LinkGraph::connected() const {
  if (nodes.empty()) return true;
  std::vector<std::vector<int>> adj(nodes.size());
  for (const LinkArc& a : arcs) {
    adj[a.a].push_back(a.b);
    adj[a.b].push_back(a.a);
  }
  std::vector<char> seen(nodes.size(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    int n = stack.back();
    stack.pop_back();
    for (int m : adj[n])
      if (!seen[m]) {
        seen[m] = 1;
        stack.push_back(m);
      }
  }
  return std::all_of(seen.begin(), seen.end(), [](char s) { return s != 0; });
}

bool LinkGraph::is_circle() const {
  if (arcs.empty() || !connected()) return false;
  for (int d : degrees())
    if (d != 2) return false;
  return true;
}

bool LinkGraph::is_arc() const {
  if (arcs.empty() || !connected()) return false;
  int ones = 0;
  for (int d : degrees()) {
    if (d == 1)
      ones++;
    else if (d != 2)
      return false;
  }
  return ones == 2 && arcs.size() + 1 == nodes.size();
}

LinkGraph link(const Complex& c, VertexId v) {
  LinkGraph g;
  g.nodes = c.germs_at(v);
  for (FaceId f : c.faces_at(v))
    for (int corner = 0; corner < 3; ++corner) {
      if (c.vertex_at(f, corner) != v) continue;
      auto [ga, gb] = c.corner_germs(f, corner);
      g.arcs.push_back({g.node_index(ga), g.node_index(gb), c.corner_angle(f, corner), f, corner});
    }
  return g;
}

int euler_characteristic(const Complex& c, const std::vector<FaceId>& faces) {
  if (faces.empty()) fail(ErrorKind::InvalidParams, "face subset is empty");
  std::set<FaceId> fs(faces.begin(), faces.end());
  std::set<VertexId> vs;
  std::set<EdgeId> es;
  for (FaceId f : fs) {
    if (f < 0 || f >= c.face_count()) fail(ErrorKind::InvalidIndex, "face id out of range");
    for (int i = 0; i < 3; ++i) {
      vs.insert(c.vertex_at(f, i));
      es.insert(c.edge_at({f, i}));
    }
  }
  return (int)vs.size() - (int)es.size() + (int)fs.size();
}

namespace {

// Walks fans of the link at v between the two singular hub germs. Returns
// false (leaving fans untouched) if any fan fails to run properly hub-to-hub.
bool merge_fans(const Complex& c, VertexId v, GermId hub0, GermId hub1,
                std::vector<double>* fans) {
  LinkGraph full = link(c, v);
  const int h0 = full.node_index(hub0), h1 = full.node_index(hub1);
  std::vector<std::vector<int>> inc(full.nodes.size());
  for (int i = 0; i < (int)full.arcs.size(); ++i) {
    inc[full.arcs[i].a].push_back(i);
    inc[full.arcs[i].b].push_back(i);
  }
  std::vector<char> used(full.arcs.size(), 0);
  for (int start : inc[h0]) {
    if (used[start]) continue;
    double length = 0.0;
    int at = h0, arc = start;
    while (true) {
      used[arc] = 1;
      length += full.arcs[arc].length;
      at = full.arcs[arc].a == at ? full.arcs[arc].b : full.arcs[arc].a;
      if (at == h1) break;
      if (at == h0) return false;  // fan loops back to the same hub
      if (inc[at].size() != 2) return false;
      arc = inc[at][0] == arc ? inc[at][1] : inc[at][0];
    }
    fans->push_back(length);
  }
  // Every arc must belong to some hub-to-hub fan.
  return std::all_of(used.begin(), used.end(), [](char u) { return u != 0; });
}

struct BreakPointData {
  GermId hub0 = -1, hub1 = -1;
  std::vector<double> fans;
};

// Classifies v as an edge break point: interior (no boundary germs), exactly
// two incident locus germs, and all link fans running hub to hub.
bool break_point_data(const Complex& c, VertexId v, BreakPointData* out) {
  std::vector<GermId> hubs;
  for (GermId g : c.germs_at(v)) {
    const int m = c.multiplicity(c.germ_edge(g));
    if (m == 1) return false;
    if (m >= 3) hubs.push_back(g);
  }
  if (hubs.size() != 2) return false;
  BreakPointData d;
  d.hub0 = hubs[0];
  d.hub1 = hubs[1];
  if (!merge_fans(c, v, d.hub0, d.hub1, &d.fans)) return false;
  if (out) *out = d;
  return true;
}

}  // namespace

bool is_edge_break_point(const Complex& c, VertexId v) {
  return break_point_data(c, v, nullptr);
}

LinkGraph break_point_link(const Complex& c, VertexId v) {
  BreakPointData d;
  if (!break_point_data(c, v, &d))
    fail(ErrorKind::InvalidParams,
         "vertex " + std::to_string(v) + " is not an edge break point");
  LinkGraph g;
  g.nodes = {d.hub0, d.hub1};
  for (double fan : d.fans) g.arcs.push_back({0, 1, fan, -1, -1});
  return g;
}

LinkGraph link_at_edge_point(const Complex& c, EdgeId e, int breakpoint_index) {
  const int m = c.multiplicity(e);
  if (m < 2) fail(ErrorKind::BoundaryEdge, "edge has a free side; no interior point link");
  if (breakpoint_index < 0) {
    // Generic interior point: each incident face is locally a half-disk, so
    // every arc has length pi.
    LinkGraph g;
    g.nodes = {c.germ_of_edge_end(e, 0), c.germ_of_edge_end(e, 1)};
    for (int i = 0; i < m; ++i) g.arcs.push_back({0, 1, kPi, c.edge_slots(e)[i].face, -1});
    return g;
  }
  if (breakpoint_index > 1) fail(ErrorKind::InvalidParams, "breakpoint index must be -1, 0 or 1");
  const auto ends = c.edge_ends(e);
  return break_point_link(c, breakpoint_index == 0 ? ends.first : ends.second);
}

bool SingularLocus::is_break_point(VertexId v) const {
  return std::binary_search(break_points.begin(), break_points.end(), v);
}

bool SingularLocus::is_singular_vertex(VertexId v) const {
  return std::binary_search(vertices.begin(), vertices.end(), v);
}

SingularLocus singular_locus(const Complex& c) {
  SingularLocus s;
  for (EdgeId e = 0; e < c.edge_count(); ++e) {
    const int m = c.multiplicity(e);
    if (m >= 3) s.edges.push_back(e);
    if (m == 1) s.boundary_edges.push_back(e);
  }
  for (VertexId v = 0; v < c.vertex_count(); ++v) {
    LinkGraph g = link(c, v);
    if (!g.is_circle() && !g.is_arc()) {
      s.vertices.push_back(v);
      if (break_point_data(c, v, nullptr)) s.break_points.push_back(v);
    }
  }

  // Maximal chains of locus edges joined through break points. Non-break-point
  // ends terminate chains; an all-break-point component closes into a cycle.
  std::map<EdgeId, int> locus_index;
  for (int i = 0; i < (int)s.edges.size(); ++i) locus_index[s.edges[i]] = i;
  std::vector<char> visited(s.edges.size(), 0);

  // The walk is tracked in germ space so loop edges (both ends at one vertex)
  // traverse correctly: enter an edge through one end germ, exit the other.
  auto other_locus_germ = [&](VertexId v, GermId g) {
    GermId out = -1;
    for (GermId h : c.germs_at(v))
      if (h != g && c.multiplicity(c.germ_edge(h)) >= 3) out = h;
    return out;
  };
  auto walk = [&](EdgeId e0, int start_end) {
    SingularLocus::Chain chain;
    GermId g_in = c.germ_of_edge_end(e0, start_end);
    chain.vertices.push_back(c.germ_vertex(g_in));
    EdgeId e = e0;
    while (true) {
      visited[locus_index[e]] = 1;
      chain.edges.push_back(e);
      const GermId g0 = c.germ_of_edge_end(e, 0);
      const GermId g_out = g_in == g0 ? c.germ_of_edge_end(e, 1) : g0;
      const VertexId far = c.germ_vertex(g_out);
      chain.vertices.push_back(far);
      if (!s.is_break_point(far)) return chain;
      const GermId g_next = other_locus_germ(far, g_out);
      const EdgeId e_next = c.germ_edge(g_next);
      if (visited[locus_index[e_next]]) {
        // Exactly two locus germs at every break point, so a revisit can only
        // close the component into a cycle.
        chain.cycle = true;
        return chain;
      }
      e = e_next;
      g_in = g_next;
    }
  };

  // First pass: chains stopping at non-break-point vertices. Only the two
  // extremal edges of such a chain have a stopping end.
  for (EdgeId e : s.edges) {
    if (visited[locus_index[e]]) continue;
    const auto ends = c.edge_ends(e);
    int start_end = -1;
    if (!s.is_break_point(ends.first))
      start_end = 0;
    else if (!s.is_break_point(ends.second))
      start_end = 1;
    if (start_end < 0) continue;
    if (!s.is_break_point(ends.second) && ends.second < ends.first) start_end = 1;
    s.chains.push_back(walk(e, start_end));
  }
  // Second pass: leftovers are cycles of break points.
  for (EdgeId e : s.edges) {
    if (visited[locus_index[e]]) continue;
    const auto ends = c.edge_ends(e);
    s.chains.push_back(walk(e, ends.second < ends.first ? 1 : 0));
  }
  return s;
}

}  // namespace catk
