#include "catk/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>

namespace catk {

namespace {

constexpr double kPi = std::numbers::pi_v<double>;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct PathResult {
  double length = kInf;
  std::vector<int> nodes;  // endpoint-to-endpoint, inclusive
  std::vector<double> arcs;
};

// Shortest path between two nodes avoiding one arc; multigraph Dijkstra over
// arc indices so parallel arcs and loops are handled naturally.
PathResult shortest_path_avoiding(const LinkGraph& g, int from, int to, int banned_arc) {
  const int n = (int)g.nodes.size();
  std::vector<std::vector<int>> inc(n);
  for (int i = 0; i < (int)g.arcs.size(); ++i) {
    if (i == banned_arc) continue;
    inc[g.arcs[i].a].push_back(i);
    if (g.arcs[i].b != g.arcs[i].a) inc[g.arcs[i].b].push_back(i);
  }
  std::vector<double> dist(n, kInf);
  std::vector<int> via_arc(n, -1), via_node(n, -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[from] = 0.0;
  pq.push({0.0, from});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    for (int ai : inc[u]) {
      const LinkArc& arc = g.arcs[ai];
      const int v = arc.a == u ? arc.b : arc.a;
      const double nd = d + arc.length;
      if (nd < dist[v]) {
        dist[v] = nd;
        via_arc[v] = ai;
        via_node[v] = u;
        pq.push({nd, v});
      }
    }
  }
  PathResult r;
  r.length = dist[to];
  if (!std::isfinite(r.length)) return r;
  for (int at = to; at != from; at = via_node[at]) {
    r.nodes.push_back(at);
    r.arcs.push_back(g.arcs[via_arc[at]].length);
  }
  r.nodes.push_back(from);
  std::reverse(r.nodes.begin(), r.nodes.end());
  std::reverse(r.arcs.begin(), r.arcs.end());
  return r;
}

std::string join_ids(const std::vector<int>& ids) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < ids.size(); ++i) os << (i ? "," : "") << ids[i];
  os << "]";
  return os.str();
}

}  // namespace

void Verdict::merge(const Verdict& other) {
  pass = pass && other.pass;
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  warnings.insert(warnings.end(), other.warnings.begin(), other.warnings.end());
}

double systole(const LinkGraph& g) {
  ShortestCycle sc = shortest_cycle(g);
  return sc.found ? sc.cycle.length : kInf;
}

ShortestCycle shortest_cycle(const LinkGraph& g) {
  ShortestCycle best;
  double best_len = kInf;
  for (int i = 0; i < (int)g.arcs.size(); ++i) {
    const LinkArc& arc = g.arcs[i];
    if (arc.a == arc.b) {
      if (arc.length < best_len) {
        best_len = arc.length;
        best.found = true;
        best.cycle = {{arc.a}, {arc.length}, arc.length};
      }
      continue;
    }
    PathResult p = shortest_path_avoiding(g, arc.a, arc.b, i);
    const double total = p.length + arc.length;
    if (total < best_len) {
      best_len = total;
      best.found = true;
      best.cycle.node_indices = p.nodes;  // from a ... to b; arc closes b -> a
      best.cycle.arc_lengths = p.arcs;
      best.cycle.arc_lengths.push_back(arc.length);
      best.cycle.length = total;
    }
  }
  return best;
}

Verdict check_condition_B(const Complex& c) {
  Verdict v;
  for (VertexId x = 0; x < c.vertex_count(); ++x) {
    if (is_edge_break_point(c, x)) continue;  // condition (A) territory
    LinkGraph g = link(c, x);
    ShortestCycle sc = shortest_cycle(g);
    if (!sc.found) continue;  // forest links are CAT(1) outright
    const double shortfall = 2.0 * kPi - sc.cycle.length;
    if (shortfall <= 0.0) continue;
    Violation viol;
    viol.kind = "B";
    viol.location = "vertex:" + std::to_string(x);
    for (int ni : sc.cycle.node_indices) viol.witness_ids.push_back(g.nodes[ni]);
    viol.witness_values = sc.cycle.arc_lengths;
    {
      std::ostringstream os;
      os << "link cycle through germs " << join_ids(viol.witness_ids) << " of length "
         << sc.cycle.length;
      viol.witness = os.str();
    }
    viol.magnitude = shortfall;
    if (shortfall <= eps_geom)
      v.warnings.push_back(viol);
    else {
      v.violations.push_back(viol);
      v.pass = false;
    }
  }
  return v;
}

Verdict check_condition_A(const Complex& c) {
  Verdict v;
  for (VertexId x = 0; x < c.vertex_count(); ++x) {
    if (!is_edge_break_point(c, x)) continue;
    LinkGraph g = break_point_link(c, x);
    // Worst pair = the two smallest fan angles.
    int i0 = -1, i1 = -1;
    for (int i = 0; i < (int)g.arcs.size(); ++i) {
      if (i0 < 0 || g.arcs[i].length < g.arcs[i0].length) {
        i1 = i0;
        i0 = i;
      } else if (i1 < 0 || g.arcs[i].length < g.arcs[i1].length) {
        i1 = i;
      }
    }
    if (i1 < 0) continue;  // fewer than two fans: nothing to pair
    const double ti = g.arcs[i0].length, tj = g.arcs[i1].length;
    const double shortfall = (kPi - ti) + (kPi - tj);
    if (shortfall <= 0.0) continue;
    Violation viol;
    viol.kind = "A";
    viol.location = "breakpoint:" + std::to_string(x);
    viol.witness_ids = {std::min(i0, i1), std::max(i0, i1)};
    viol.witness_values = {ti, tj};
    {
      std::ostringstream os;
      os << "fan pair " << join_ids(viol.witness_ids) << " with angles (" << ti << ", " << tj
         << "), sum " << ti + tj << " < 2*pi";
      viol.witness = os.str();
    }
    viol.magnitude = shortfall;
    if (shortfall <= eps_geom)
      v.warnings.push_back(viol);
    else {
      v.violations.push_back(viol);
      v.pass = false;
    }
  }
  return v;
}

Verdict check_cat(const Complex& c) {
  Verdict v;
  if (c.kappa() > 0.0) {
    const double bound = 2.0 * model_diameter(c.kappa());
    for (FaceId f = 0; f < c.face_count(); ++f) {
      const TriangleSides& s = c.sides(f);
      const double perim = s.a + s.b + s.c;
      if (perim >= bound) {
        Violation viol;
        viol.kind = "SizeBound";
        viol.location = "face:" + std::to_string(f);
        viol.witness_values = {perim, bound};
        viol.witness = "perimeter " + std::to_string(perim) + " >= " + std::to_string(bound);
        viol.magnitude = perim - bound;
        v.violations.push_back(viol);
        v.pass = false;
      }
    }
  }
  v.merge(check_condition_A(c));
  v.merge(check_condition_B(c));
  // Deterministic report order: by location string, then kind.
  auto by_loc = [](const Violation& a, const Violation& b) {
    return a.location == b.location ? a.kind < b.kind : a.location < b.location;
  };
  std::sort(v.violations.begin(), v.violations.end(), by_loc);
  std::sort(v.warnings.begin(), v.warnings.end(), by_loc);
  return v;
}

}  // namespace catk
