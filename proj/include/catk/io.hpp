#pragma once

#include <string>

#include "catk/complex.hpp"
#include "catk/gallery.hpp"
#include "catk/measure.hpp"
#include "catk/metric.hpp"
#include "catk/surgery.hpp"
#include "catk/verify.hpp"

// JSON/CSV serialization of the library's public types and the small parsing
// layer the command-line tool is built on. Every reader throws ParseError
// with a position hint for malformed documents; unknown keys are rejected at
// every level, not just the top one. All numeric output is rounded to 12
// significant digits first, so text reports and JSON documents print exactly
// the same digits.

namespace catk {

// --- numeric formatting ----------------------------------------------------

// 12 significant digits, shortest spelling ("%.12g").
std::string format_real(double v);
// The double nearest to format_real(v): the value serializers actually emit.
double round12(double v);

// --- complex files ----------------------------------------------------------
// { "kappa": number,
//   "triangles": [ { "id": int, "sides": [a, b, c] } ],
//   "gluings":   [ { "a": [face, side], "b": [face, side],
//                    "flip": bool (default false) } ] }
// Triangle ids must cover 0..n-1 exactly (any order).

Complex parse_complex(const std::string& text);
Complex read_complex(const std::string& path);
std::string complex_to_json(const Complex& c);
void write_complex(const Complex& c, const std::string& path);

// --- domain files -----------------------------------------------------------
// { "faces": [int], "label": string (optional) }

Domain read_domain(const Complex& c, const std::string& path);
std::string domain_to_json(const Domain& d);

// --- reports ----------------------------------------------------------------

// { "pass": bool, "violations": [ {kind, location, witness, magnitude} ] }
std::string verdict_to_json(const Verdict& v);

// { "chi": int, "turn": { "arcs": [..], "cycles": [..],
//   "outer_angles": [..], "total": real }, "omega_open": real,
//   "residual": real }
std::string audit_to_json(const Complex& c, const Domain& d);

// { "distance": real, "refine": int }
std::string distance_to_json(double distance, int refine);

// Gallery metadata sidecar; mirrors ExpectedProperties field for field
// (total_curvature is null when it is not pinned).
std::string expected_to_json(const ExpectedProperties& e);

// Convergence table, one row per schedule step:
// eps,faces,distortion,omega_D,tau_boundary,cat_pass
std::string schedule_csv(const Schedule& s);

// --- point literals ---------------------------------------------------------
// "v:ID" vertex, "e:ID:T" point of an edge at fraction T, "f:ID:RHO:PHI"
// point of a face in polar coordinates about corner 0.
PointRef parse_point(const std::string& text);
std::string point_to_string(const PointRef& p);

// --- small file helpers -----------------------------------------------------

std::string slurp(const std::string& path);                 // ParseError if unreadable
void spill(const std::string& path, const std::string& s);  // ParseError on failure

}  // namespace catk
