#include "catk/metric.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace catk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Adjacency = std::vector<std::vector<RefinedGraph::Arc>>;

// In-face chord between two points in polar coordinates about corner 0; a
// zero radius degenerates to the other radius (side_from_sas wants positive
// enclosing sides).
double chord(double kappa, double r1, double r2, double dphi) {
  if (r1 == 0.0) return r2;
  if (r2 == 0.0) return r1;
  return side_from_sas(kappa, r1, r2, dphi);
}

// True when arc length along the representative edge runs the same way as arc
// length along this slot's side (from corner `side` toward corner `side`+1).
bool slot_aligned(const Complex& c, const Slot& s) {
  return c.germ(s, 0) == c.germ_of_edge_end(c.edge_at(s), 0);
}

// Polar coordinates about corner 0 of the point of side `side` at arc-length
// offset u from corner `side`.
void side_point_polar(const Complex& c, FaceId f, int side, double u, double* rho,
                      double* phi) {
  const TriangleSides& len = c.sides(f);
  switch (side) {
    case 0:
      *rho = u;
      *phi = 0.0;
      return;
    case 2:
      *rho = len[2] - u;
      *phi = c.corner_angle(f, 0);
      return;
    default: {
      // Side 1 runs corner 1 -> corner 2: solve the sub-triangle cut off by
      // the chord from corner 0.
      const double d = side_from_sas(c.kappa(), len[0], u, c.corner_angle(f, 1));
      *rho = d;
      *phi = u <= 0.0 ? 0.0 : angle_from_sides(c.kappa(), {len[0], u, d}, 1);
      return;
    }
  }
}

void push_arc(Adjacency& adj, int a, int b, double w) {
  adj[a].push_back({b, w});
  adj[b].push_back({a, w});
}

std::vector<double> shortest_paths(const Adjacency& base, const Adjacency& extra,
                                   int source) {
  std::vector<double> dist(extra.size(), kInf);
  std::priority_queue<std::pair<double, int>, std::vector<std::pair<double, int>>,
                      std::greater<>>
      frontier;
  dist[source] = 0.0;
  frontier.push({0.0, source});
  while (!frontier.empty()) {
    const auto [d, u] = frontier.top();
    frontier.pop();
    if (d > dist[u]) continue;
    const auto relax = [&](const RefinedGraph::Arc& arc) {
      if (d + arc.length < dist[arc.to]) {
        dist[arc.to] = d + arc.length;
        frontier.push({dist[arc.to], arc.to});
      }
    };
    if (u < (int)base.size())
      for (const auto& arc : base[u]) relax(arc);
    for (const auto& arc : extra[u]) relax(arc);
  }
  return dist;
}

// A PointRef located against a refined graph: either an existing node, or a
// fresh query node described by its in-face placements.
struct Located {
  int node = -1;
  struct Occurrence {
    FaceId face = -1;
    double rho = 0.0, phi = 0.0;
    int side_mask = 0;
    double u = 0.0;  // offset along the side when side_mask is set
  };
  std::vector<Occurrence> occ;  // empty when the point is an existing node
  EdgeId edge = -1;             // set for edge points between graph nodes
  double along = 0.0;           // absolute offset from the edge's end 0
};

Located locate(const Complex& c, const RefinedGraph& g, const PointRef& p) {
  Located r;
  switch (p.kind) {
    case PointRef::Kind::vertex: {
      if (p.id < 0 || p.id >= c.vertex_count())
        fail(ErrorKind::InvalidIndex, "vertex id out of range");
      r.node = g.vertex_node(p.id);
      return r;
    }
    case PointRef::Kind::edge: {
      if (p.id < 0 || p.id >= c.edge_count())
        fail(ErrorKind::InvalidIndex, "edge id out of range");
      if (!(p.t >= 0.0 && p.t <= 1.0))
        fail(ErrorKind::InvalidParams, "edge offset must lie in [0, 1]");
      if (p.t == 0.0) {
        r.node = c.edge_ends(p.id).first;
        return r;
      }
      if (p.t == 1.0) {
        r.node = c.edge_ends(p.id).second;
        return r;
      }
      const double scaled = p.t * g.intervals;
      const int i = (int)std::lround(scaled);
      if (i > 0 && i < g.intervals && scaled == (double)i) {
        r.node = g.edge_node(p.id, i);
        return r;
      }
      r.edge = p.id;
      r.along = p.t * c.edge_length(p.id);
      for (const Slot& slot : c.edge_slots(p.id)) {
        Located::Occurrence o;
        o.face = slot.face;
        o.side_mask = 1 << slot.side;
        o.u = (slot_aligned(c, slot) ? p.t : 1.0 - p.t) * c.side_length(slot);
        side_point_polar(c, slot.face, slot.side, o.u, &o.rho, &o.phi);
        r.occ.push_back(o);
      }
      return r;
    }
    default: {
      if (p.id < 0 || p.id >= c.face_count())
        fail(ErrorKind::InvalidIndex, "face id out of range");
      if (!std::isfinite(p.rho) || !std::isfinite(p.phi) || p.rho < 0.0)
        fail(ErrorKind::InvalidParams, "face point needs finite coordinates, rho >= 0");
      if (c.kappa() > 0.0 && p.rho >= model_diameter(c.kappa()))
        fail(ErrorKind::InvalidParams, "face point radius exceeds the model diameter");
      const double corner = c.corner_angle(p.id, 0);
      if (p.phi < -eps_geom || p.phi > corner + eps_geom)
        fail(ErrorKind::InvalidParams, "face point direction lies outside the corner");
      if (p.rho == 0.0) {
        r.node = c.vertex_at(p.id, 0);
        return r;
      }
      const double phi = std::clamp(p.phi, 0.0, corner);
      const TriangleSides& len = c.sides(p.id);
      // The ray from corner 0 at angle phi stays in the wedge there; the point
      // is inside the face iff the chord from corner 1 stays in that wedge too.
      const double to_corner1 = side_from_sas(c.kappa(), len[0], p.rho, phi);
      if (to_corner1 > eps_geom) {
        const double at_corner1 =
            angle_from_sides(c.kappa(), {len[0], to_corner1, p.rho}, 2);
        if (at_corner1 > c.corner_angle(p.id, 1) + eps_geom)
          fail(ErrorKind::InvalidParams, "face point lies outside its triangle");
      }
      Located::Occurrence o;
      o.face = p.id;
      o.rho = p.rho;
      o.phi = phi;
      r.occ.push_back(o);
      return r;
    }
  }
}

// Assigns fresh node ids to located query points and returns the overlay
// adjacency connecting them to the base graph: chords to every boundary node
// of each containing face (exact arc-length differences along a shared side),
// plus direct arcs between query points sharing an edge or a face.
Adjacency attach(const Complex& c, const RefinedGraph& g, std::vector<Located>& points) {
  int next = g.node_count();
  for (auto& p : points)
    if (p.node < 0) p.node = next++;
  Adjacency extra(next);
  for (const auto& p : points) {
    for (const auto& o : p.occ) {
      for (const auto& entry : g.face_entries[o.face]) {
        const int shared = o.side_mask & entry.side_mask;
        double w;
        if (shared) {
          const int s = std::countr_zero((unsigned)shared);
          const double ue = entry.corner >= 0
                                ? (entry.corner == s ? 0.0 : c.side_length({o.face, s}))
                                : entry.u;
          w = std::abs(o.u - ue);
        } else {
          w = chord(c.kappa(), o.rho, entry.rho, std::abs(o.phi - entry.phi));
        }
        push_arc(extra, p.node, entry.node, w);
      }
    }
  }
  for (size_t i = 0; i < points.size(); ++i) {
    for (size_t j = i + 1; j < points.size(); ++j) {
      const auto& p = points[i];
      const auto& q = points[j];
      if (p.occ.empty() || q.occ.empty()) continue;
      if (p.edge >= 0 && p.edge == q.edge)
        push_arc(extra, p.node, q.node, std::abs(p.along - q.along));
      for (const auto& a : p.occ)
        for (const auto& b : q.occ) {
          if (a.face != b.face || (a.side_mask & b.side_mask) != 0) continue;
          push_arc(extra, p.node, q.node,
                   chord(c.kappa(), a.rho, b.rho, std::abs(a.phi - b.phi)));
        }
    }
  }
  return extra;
}

bool ref_before(const PointRef& a, const PointRef& b) {
  return std::make_tuple((int)a.kind, a.id, a.t, a.rho, a.phi) <
         std::make_tuple((int)b.kind, b.id, b.t, b.rho, b.phi);
}

// Fraction of the edge (from its end 0) of the point at arc-length offset u
// from the slot's starting corner.
double slot_offset_to_t(const Complex& c, const Slot& slot, double u) {
  const double frac = std::clamp(u / c.side_length(slot), 0.0, 1.0);
  return slot_aligned(c, slot) ? frac : 1.0 - frac;
}

void validate_slot(const Complex& c, const Slot& s, const char* which) {
  if (s.face < 0 || s.face >= c.face_count() || s.side < 0 || s.side > 2)
    fail(ErrorKind::InvalidIndex, std::string("boundary map slot out of range in the ") +
                                      which + " complex");
}

}  // namespace

RefinedGraph refine(const Complex& c, int k) {
  if (k < 0) fail(ErrorKind::InvalidParams, "refinement level must be non-negative");
  if (k > (1 << 20)) fail(ErrorKind::InvalidParams, "refinement level too large");
  RefinedGraph g;
  g.requested = k;
  g.intervals = (int)std::bit_ceil((unsigned)k + 1u);
  g.vertices = c.vertex_count();
  const int n = g.intervals;
  if (9.0 * c.face_count() * (double)n * n > 3e7)
    fail(ErrorKind::InvalidParams, "refined graph would be too large for this complex");
  g.adjacency.assign(g.vertices + c.edge_count() * (n - 1), {});
  g.face_entries.assign(c.face_count(), {});

  for (FaceId f = 0; f < c.face_count(); ++f) {
    auto& entries = g.face_entries[f];
    const TriangleSides& len = c.sides(f);
    entries.push_back({c.vertex_at(f, 0), 0.0, 0.0, (1 << 0) | (1 << 2), 0, -1, 0.0});
    entries.push_back({c.vertex_at(f, 1), len[0], 0.0, (1 << 1) | (1 << 0), 1, -1, 0.0});
    entries.push_back({c.vertex_at(f, 2), len[2], c.corner_angle(f, 0),
                       (1 << 2) | (1 << 1), 2, -1, 0.0});
    for (int s = 0; s < 3; ++s) {
      const Slot slot{f, s};
      const EdgeId e = c.edge_at(slot);
      const bool aligned = slot_aligned(c, slot);
      for (int i = 1; i < n; ++i) {
        const double frac = (double)i / n;
        RefinedGraph::FaceEntry entry;
        entry.node = g.edge_node(e, i);
        entry.side_mask = 1 << s;
        entry.side = s;
        entry.u = (aligned ? frac : 1.0 - frac) * len[s];
        side_point_polar(c, f, s, entry.u, &entry.rho, &entry.phi);
        entries.push_back(entry);
      }
    }
    // Nodes sharing a side: exact arc-length differences along it.
    for (int s = 0; s < 3; ++s) {
      std::vector<std::pair<double, int>> members{{0.0, c.vertex_at(f, s)},
                                                  {len[s], c.vertex_at(f, (s + 1) % 3)}};
      for (const auto& entry : entries)
        if (entry.side == s) members.push_back({entry.u, entry.node});
      for (size_t i = 0; i < members.size(); ++i)
        for (size_t j = i + 1; j < members.size(); ++j)
          if (members[i].second != members[j].second)
            push_arc(g.adjacency, members[i].second, members[j].second,
                     std::abs(members[i].first - members[j].first));
    }
    // Everything else: geodesic chords through the face.
    for (size_t i = 0; i < entries.size(); ++i)
      for (size_t j = i + 1; j < entries.size(); ++j) {
        const auto& p = entries[i];
        const auto& q = entries[j];
        if (p.node == q.node || (p.side_mask & q.side_mask) != 0) continue;
        push_arc(g.adjacency, p.node, q.node,
                 chord(c.kappa(), p.rho, q.rho, std::abs(p.phi - q.phi)));
      }
  }
  return g;
}

double distance(const Complex& c, const PointRef& a, const PointRef& b, int k) {
  const RefinedGraph g = refine(c, k);
  PointRef lo = a, hi = b;
  if (ref_before(hi, lo)) std::swap(lo, hi);
  std::vector<Located> points{locate(c, g, lo), locate(c, g, hi)};
  const Adjacency extra = attach(c, g, points);
  const double d = shortest_paths(g.adjacency, extra, points[0].node)[points[1].node];
  if (!(d < kInf))
    fail(ErrorKind::Disconnected, "the query points lie in different components");
  return d;
}

double comparison_angle_at(const Complex& c, const PointRef& x, const PointRef& y,
                           const PointRef& z, int k) {
  const RefinedGraph g = refine(c, k);
  std::vector<Located> points{locate(c, g, x), locate(c, g, y), locate(c, g, z)};
  const Adjacency extra = attach(c, g, points);
  const auto from_x = shortest_paths(g.adjacency, extra, points[0].node);
  const auto from_y = shortest_paths(g.adjacency, extra, points[1].node);
  const double d_xy = from_x[points[1].node];
  const double d_xz = from_x[points[2].node];
  const double d_yz = from_y[points[2].node];
  if (!(d_xy < kInf && d_xz < kInf && d_yz < kInf))
    fail(ErrorKind::Disconnected, "the query points lie in different components");
  return comparison_angle(c.kappa(), d_xy, d_xz, d_yz);
}

DistortionReport boundary_distortion(const Complex& c1, const Complex& c2,
                                     const BoundaryMap& map, int samples, int k) {
  if (map.pairs.empty()) fail(ErrorKind::InvalidParams, "boundary map has no slot pairs");
  if (samples < 2) fail(ErrorKind::InvalidParams, "need at least two boundary samples");
  std::set<Slot> seen_a, seen_b;
  double total = 0.0;
  for (const auto& pair : map.pairs) {
    validate_slot(c1, pair.a, "first");
    validate_slot(c2, pair.b, "second");
    if (!seen_a.insert(pair.a).second || !seen_b.insert(pair.b).second)
      fail(ErrorKind::InvalidParams, "boundary map repeats a slot");
    if (!c1.is_boundary_edge(c1.edge_at(pair.a)))
      fail(ErrorKind::BoundaryMismatch, "mapped slot is not free boundary in the first complex");
    if (!c2.is_boundary_edge(c2.edge_at(pair.b)))
      fail(ErrorKind::BoundaryMismatch, "mapped slot is not free boundary in the second complex");
    if (std::abs(c1.side_length(pair.a) - c2.side_length(pair.b)) > eps_geom)
      fail(ErrorKind::BoundaryMismatch, "matched boundary arcs differ in length");
    total += c1.side_length(pair.a);
  }

  std::vector<PointRef> refs1, refs2;
  for (int i = 0; i < samples; ++i) {
    const double pos = (i + 0.5) * total / samples;
    double cum = 0.0;
    size_t idx = 0;
    for (; idx + 1 < map.pairs.size(); ++idx) {
      const double len = c1.side_length(map.pairs[idx].a);
      if (pos <= cum + len) break;
      cum += len;
    }
    const auto& pair = map.pairs[idx];
    const double len1 = c1.side_length(pair.a);
    const double len2 = c2.side_length(pair.b);
    const double u = std::clamp(pos - cum, len1 * 1e-9, len1 * (1.0 - 1e-9));
    const double u2 = std::clamp(pair.reversed ? len2 - u : u, 0.0, len2);
    refs1.push_back(PointRef::on_edge(c1.edge_at(pair.a), slot_offset_to_t(c1, pair.a, u)));
    refs2.push_back(PointRef::on_edge(c2.edge_at(pair.b), slot_offset_to_t(c2, pair.b, u2)));
  }

  const auto matrix = [samples, k](const Complex& c, const std::vector<PointRef>& refs) {
    const RefinedGraph g = refine(c, k);
    std::vector<Located> points;
    points.reserve(refs.size());
    for (const auto& ref : refs) points.push_back(locate(c, g, ref));
    const Adjacency extra = attach(c, g, points);
    std::vector<std::vector<double>> m(samples, std::vector<double>(samples, 0.0));
    for (int i = 0; i < samples; ++i) {
      const auto dist = shortest_paths(g.adjacency, extra, points[i].node);
      for (int j = 0; j < samples; ++j) {
        if (!(dist[points[j].node] < kInf))
          fail(ErrorKind::Disconnected, "mapped boundary spans different components");
        m[i][j] = dist[points[j].node];
      }
    }
    return m;
  };
  const auto d1 = matrix(c1, refs1);
  const auto d2 = matrix(c2, refs2);

  double diam = 0.0;
  for (int i = 0; i < samples; ++i)
    for (int j = i + 1; j < samples; ++j) diam = std::max(diam, d1[i][j]);

  DistortionReport report;
  report.samples = samples;
  int bi = -1, bj = -1;
  for (int i = 0; i < samples; ++i)
    for (int j = i + 1; j < samples; ++j) {
      const double gap = std::abs(d1[i][j] - d2[i][j]);
      const double denom = std::max(d1[i][j], diam * 1e-6);
      if (denom > 0.0)
        report.max_relative_distortion = std::max(report.max_relative_distortion, gap / denom);
      if (bi < 0 || gap > report.max_abs_distortion) {
        report.max_abs_distortion = gap;
        bi = i;
        bj = j;
      }
    }
  if (bi >= 0) {
    report.argmax_a = refs1[bi];
    report.argmax_b = refs1[bj];
    report.argmax_a2 = refs2[bi];
    report.argmax_b2 = refs2[bj];
  }
  return report;
}

}  // namespace catk
