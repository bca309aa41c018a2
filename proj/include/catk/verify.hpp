#pragma once

#include <string>
#include <vector>

#include "catk/complex.hpp"

namespace catk {

struct Violation {
  std::string kind;      // "A", "B", or "SizeBound"
  std::string location;  // "vertex:N", "breakpoint:N", or "face:N"
  // Witness payload. For B: witness_ids = germ ids of the short cycle's nodes,
  // witness_values = its arc lengths. For A: witness_ids = indices of the
  // failing fan pair, witness_values = the two fan angles.
  std::vector<int> witness_ids;
  std::vector<double> witness_values;
  std::string witness;  // human-readable rendering of the same data
  double magnitude = 0.0;
};

struct Verdict {
  bool pass = true;
  std::vector<Violation> violations;
  // Sub-tolerance slack (shortfalls below eps_geom): reported, never failing.
  std::vector<Violation> warnings;

  void merge(const Verdict& other);
};

// Length of the shortest embedded cycle of the metric graph (+infinity for
// forests): for each arc, shortest path between its endpoints avoiding that
// arc, plus the arc's own length; minimum over arcs. Loops and parallel arcs
// count as cycles.
double systole(const LinkGraph& g);

struct CycleWitness {
  std::vector<int> node_indices;  // cycle nodes, in order
  std::vector<double> arc_lengths;
  double length = 0.0;
};

// Shortest cycle with its node sequence; empty optional-style flag via
// `found`. Deterministic tie-breaking (first minimal arc in id order).
struct ShortestCycle {
  bool found = false;
  CycleWitness cycle;
};
ShortestCycle shortest_cycle(const LinkGraph& g);

// Condition (B): systole(link) >= 2*pi at every vertex that is not an edge
// break point.
Verdict check_condition_B(const Complex& c);

// Condition (A): at every edge break point, every pair of fan angles satisfies
// theta_i + theta_j >= 2*pi (equivalently the fan-merged 2-node link has
// systole >= 2*pi). The worst failing pair is reported per break point.
Verdict check_condition_A(const Complex& c);

// Size bound: for kappa > 0 every face perimeter must stay below twice the
// model-space diameter. Empty (passing) verdict when kappa <= 0.
Verdict check_size_bound(const Complex& c);

// Conjunction of A, B and the kappa > 0 size bound on every face.
Verdict check_cat(const Complex& c);

// Same verdict, computed with up to `threads` workers (conditions A and B run
// concurrently when threads >= 2). The report order is deterministic and
// identical at every thread count.
Verdict check_cat(const Complex& c, int threads);

// Resolve a worker budget: `requested` > 0 wins, otherwise the CATK_THREADS
// environment variable (when set to a positive integer), otherwise hardware
// concurrency. Always at least 1.
int thread_budget(int requested = 0);

}  // namespace catk
