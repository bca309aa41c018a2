#pragma once

#include <map>
#include <string>
#include <vector>

#include "catk/complex.hpp"

namespace catk {

// A named example request. Parameters are looked up by name and fall back to
// the generator's defaults; integral parameters must hold whole numbers.
// Unknown generator names, unknown parameter names, and out-of-range values
// throw InvalidParams.
struct GallerySpec {
  std::string name;
  std::map<std::string, double> params;

  double get(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
};

struct KnownAtom {
  VertexId vertex = -1;
  double value = 0.0;
};

// Facts the generator promises about its output, stated from the construction
// alone. Consumers re-derive every one of them with the verification and
// measure pipeline; nothing here is fed back from that pipeline.
struct ExpectedProperties {
  bool cat_pass = false;
  bool closed = false;  // every edge class has multiplicity >= 2
  int chi = 0;
  double total_curvature = 0.0;  // 2*pi*chi, meaningful when closed
  int violation_count = -1;      // expected defect count; -1 = unspecified
  std::vector<KnownAtom> atoms;  // exact expected curvature atoms

  // Layered examples: one face list per wing sharing the spine chain below.
  std::vector<std::vector<FaceId>> wings;
  std::vector<EdgeId> chain_edges;
  std::vector<VertexId> chain_vertices;

  // Designated surgery site, for examples built to be operated on.
  VertexId surgery_vertex = -1;
  std::vector<int> surgery_segment;  // link arc indices; empty = whole link

  std::string notes;
};

struct GalleryResult {
  Complex complex;
  ExpectedProperties expected;
};

// Generator names in a stable order:
//   cone         angle (3*pi/2), sectors (6), radius (1): closed fan around
//                one apex with a free rim; the apex atom is 2*pi - angle.
//   book         pages (3): unit-square pages bent flat along a two-segment
//                spine; every atom vanishes and verification passes.
//   suspension   sheets (3), resolution (n = 8): flat regular n-gon disks
//                glued rim to rim; closed, chi = sheets, and every rim vertex
//                carries atom sheets*2*pi/n > 0, so verification fails.
//   triple_disk  resolution (24): suspension with three sheets; the pairwise
//                fan condition fails at exactly `resolution` rim vertices
//                with magnitude 4*pi/resolution.
//   branch       wings (3), seed (1): flat flaring wings sharing a straight
//                spine ray from a boundary apex; passes verification and is
//                the designated surgery example (identity at radius 0.05,
//                strictly deeper cuts at 0.1, 0.2, 0.4).
//   wing_chain   wings (3), pockets (0), seed (1): a book with seeded bends,
//                where each pocket wing reuses the last plain wing's first
//                face; the layered-decomposition audit fixture.
//   cantor_strip depth (3), slope (0.4), collar (0.2): six collar flaps
//                glued along one middle-thirds bump polyline, exactly one of
//                which turns with the bumps; junction atoms vanish, bump
//                apexes carry -2*atan(slope), and verification passes with
//                tight cycles.
//   random_flat  seed (1), rows (4), cols (4), fins (0): a random flat grid
//                split by seeded diagonals; each fin is a corner chord glued
//                across two interior edges, creating one isolated positive
//                defect, so verification passes iff fins = 0.  chi = 1 and
//                exact flat-domain audits.
const std::vector<std::string>& gallery_names();

// Builds the named example. Generation is pure: the same spec yields the
// same complex, byte for byte.
GalleryResult generate(const GallerySpec& spec);

}  // namespace catk
