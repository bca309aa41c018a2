#include "catk/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "catk/base.hpp"

namespace catk {

namespace {

using nlohmann::json;

// Every emitted number passes through here so text and JSON agree digit for
// digit.
json num(double v) { return json(round12(v)); }

void reject_unknown_keys(const json& j, std::initializer_list<const char*> keys,
                         const std::string& where) {
  for (const auto& kv : j.items()) {
    bool known = false;
    for (const char* k : keys)
      if (kv.key() == k) known = true;
    if (!known)
      fail(ErrorKind::ParseError,
           where + " has an unknown key '" + kv.key() + "'");
  }
}

const json& require(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end())
    fail(ErrorKind::ParseError, where + " is missing '" + key + "'");
  return *it;
}

double as_number(const json& j, const std::string& where) {
  if (!j.is_number())
    fail(ErrorKind::ParseError, where + " must be a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer())
    fail(ErrorKind::ParseError, where + " must be an integer");
  return j.get<int>();
}

json parse_text(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    fail(ErrorKind::ParseError, what + " is not valid JSON");
  return j;
}

Slot parse_slot(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2)
    fail(ErrorKind::ParseError, where + " must be a [face, side] pair");
  Slot s;
  s.face = as_int(j[0], where + "[0]");
  s.side = as_int(j[1], where + "[1]");
  return s;
}

}  // namespace

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

double round12(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(format_real(v).c_str(), nullptr);
}

Complex parse_complex(const std::string& text) {
  const json j = parse_text(text, "complex file");
  if (!j.is_object())
    fail(ErrorKind::ParseError, "complex file must be a JSON object");
  reject_unknown_keys(j, {"kappa", "triangles", "gluings"}, "complex file");

  const double kappa = as_number(require(j, "kappa", "complex file"), "kappa");
  const json& tris = require(j, "triangles", "complex file");
  if (!tris.is_array() || tris.empty())
    fail(ErrorKind::ParseError, "'triangles' must be a non-empty array");

  std::vector<TriangleSides> faces(tris.size());
  std::vector<char> seen(tris.size(), 0);
  for (const json& t : tris) {
    if (!t.is_object())
      fail(ErrorKind::ParseError, "each triangle must be an object");
    reject_unknown_keys(t, {"id", "sides"}, "triangle");
    const int id = as_int(require(t, "id", "triangle"), "triangle id");
    if (id < 0 || id >= (int)faces.size() || seen[id])
      fail(ErrorKind::ParseError,
           "triangle ids must cover 0.." + std::to_string(faces.size() - 1) +
               " exactly; saw id " + std::to_string(id));
    seen[id] = 1;
    const json& s = require(t, "sides", "triangle");
    if (!s.is_array() || s.size() != 3)
      fail(ErrorKind::ParseError, "'sides' must be an [a, b, c] array");
    for (int k = 0; k < 3; ++k)
      faces[id][k] = as_number(s[k], "triangle side");
  }

  std::vector<Gluing> gluings;
  if (j.contains("gluings")) {
    const json& gs = j["gluings"];
    if (!gs.is_array())
      fail(ErrorKind::ParseError, "'gluings' must be an array");
    for (const json& g : gs) {
      if (!g.is_object())
        fail(ErrorKind::ParseError, "each gluing must be an object");
      reject_unknown_keys(g, {"a", "b", "flip"}, "gluing");
      Gluing gl;
      gl.a = parse_slot(require(g, "a", "gluing"), "gluing 'a'");
      gl.b = parse_slot(require(g, "b", "gluing"), "gluing 'b'");
      if (g.contains("flip")) {
        if (!g["flip"].is_boolean())
          fail(ErrorKind::ParseError, "'flip' must be a boolean");
        gl.flip = g["flip"].get<bool>();
      }
      gluings.push_back(gl);
    }
  }
  return Complex::build(kappa, std::move(faces), std::move(gluings));
}

Complex read_complex(const std::string& path) {
  return parse_complex(slurp(path));
}

std::string complex_to_json(const Complex& c) {
  json tris = json::array();
  for (FaceId f = 0; f < c.face_count(); ++f) {
    const TriangleSides& s = c.sides(f);
    tris.push_back(
        {{"id", f}, {"sides", {num(s.a), num(s.b), num(s.c)}}});
  }
  json gs = json::array();
  for (const Gluing& g : c.gluings())
    gs.push_back({{"a", {g.a.face, g.a.side}},
                  {"b", {g.b.face, g.b.side}},
                  {"flip", g.flip}});
  const json j = {{"kappa", num(c.kappa())}, {"triangles", tris}, {"gluings", gs}};
  return j.dump(2) + "\n";
}

void write_complex(const Complex& c, const std::string& path) {
  spill(path, complex_to_json(c));
}

Domain read_domain(const Complex& c, const std::string& path) {
  const json j = parse_text(slurp(path), "domain file");
  if (!j.is_object())
    fail(ErrorKind::ParseError, "domain file must be a JSON object");
  reject_unknown_keys(j, {"faces", "label"}, "domain file");
  const json& fs = require(j, "faces", "domain file");
  if (!fs.is_array())
    fail(ErrorKind::ParseError, "'faces' must be an array of face ids");
  std::vector<FaceId> faces;
  for (const json& f : fs) faces.push_back(as_int(f, "face id"));
  std::string label;
  if (j.contains("label")) {
    if (!j["label"].is_string())
      fail(ErrorKind::ParseError, "'label' must be a string");
    label = j["label"].get<std::string>();
  }
  return make_domain(c, std::move(faces), std::move(label));
}

std::string domain_to_json(const Domain& d) {
  const json j = {{"faces", d.faces}, {"label", d.label}};
  return j.dump(2) + "\n";
}

std::string verdict_to_json(const Verdict& v) {
  json viols = json::array();
  for (const Violation& x : v.violations)
    viols.push_back({{"kind", x.kind},
                     {"location", x.location},
                     {"witness", x.witness},
                     {"magnitude", num(x.magnitude)}});
  const json j = {{"pass", v.pass}, {"violations", viols}};
  return j.dump(2) + "\n";
}

std::string audit_to_json(const Complex& c, const Domain& d) {
  const CurvatureMeasure m = curvature_measure(c);
  const Turn t = boundary_turn(c, d);
  json arcs = json::array(), cycles = json::array(), outer = json::array();
  for (double x : t.arcs) arcs.push_back(num(x));
  for (double x : t.cycles) cycles.push_back(num(x));
  for (double x : t.outer) outer.push_back(num(x));
  const json j = {{"chi", d.chi},
                  {"turn",
                   {{"arcs", arcs},
                    {"cycles", cycles},
                    {"outer_angles", outer},
                    {"total", num(t.total)}}},
                  {"omega_open", num(measure_of(c, m, d, Closure::open))},
                  {"residual", num(gauss_bonnet_residual(c, d))}};
  return j.dump(2) + "\n";
}

std::string distance_to_json(double distance, int refine) {
  const json j = {{"distance", num(distance)}, {"refine", refine}};
  return j.dump(2) + "\n";
}

std::string expected_to_json(const ExpectedProperties& e) {
  json atoms = json::array();
  for (const KnownAtom& a : e.atoms)
    atoms.push_back({{"vertex", a.vertex}, {"value", num(a.value)}});
  json j = {{"cat_pass", e.cat_pass},
            {"closed", e.closed},
            {"chi", e.chi},
            {"violation_count", e.violation_count},
            {"atoms", atoms},
            {"wings", e.wings},
            {"chain_edges", e.chain_edges},
            {"chain_vertices", e.chain_vertices},
            {"surgery_vertex", e.surgery_vertex},
            {"surgery_segment", e.surgery_segment},
            {"notes", e.notes}};
  j["total_curvature"] =
      std::isnan(e.total_curvature) ? json(nullptr) : num(e.total_curvature);
  return j.dump(2) + "\n";
}

std::string schedule_csv(const Schedule& s) {
  std::ostringstream os;
  os << "eps,faces,distortion,omega_D,tau_boundary,cat_pass\n";
  for (const ScheduleRow& r : s.rows)
    os << format_real(r.eps) << ',' << r.faces << ','
       << format_real(r.distortion) << ',' << format_real(r.omega_domain)
       << ',' << format_real(r.tau_boundary) << ','
       << (r.cat_pass ? "true" : "false") << '\n';
  return os.str();
}

PointRef parse_point(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);

  const auto to_int = [&](const std::string& s) {
    size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(s, &pos);
    } catch (...) {
      pos = 0;
    }
    if (pos != s.size() || s.empty())
      fail(ErrorKind::ParseError, "bad id in point '" + text + "'");
    return v;
  };
  const auto to_real = [&](const std::string& s) {
    size_t pos = 0;
    double v = 0;
    try {
      v = std::stod(s, &pos);
    } catch (...) {
      pos = 0;
    }
    if (pos != s.size() || s.empty())
      fail(ErrorKind::ParseError, "bad coordinate in point '" + text + "'");
    return v;
  };

  if (parts.size() == 2 && parts[0] == "v")
    return PointRef::at_vertex(to_int(parts[1]));
  if (parts.size() == 3 && parts[0] == "e")
    return PointRef::on_edge(to_int(parts[1]), to_real(parts[2]));
  if (parts.size() == 4 && parts[0] == "f")
    return PointRef::in_face(to_int(parts[1]), to_real(parts[2]),
                             to_real(parts[3]));
  fail(ErrorKind::ParseError,
       "point '" + text + "' must be v:ID, e:ID:T, or f:ID:RHO:PHI");
}

std::string point_to_string(const PointRef& p) {
  switch (p.kind) {
    case PointRef::Kind::vertex:
      return "v:" + std::to_string(p.id);
    case PointRef::Kind::edge:
      return "e:" + std::to_string(p.id) + ":" + format_real(p.t);
    case PointRef::Kind::face:
      return "f:" + std::to_string(p.id) + ":" + format_real(p.rho) + ":" +
             format_real(p.phi);
  }
  return "";
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::ParseError, "cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spill(const std::string& path, const std::string& s) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::ParseError, "cannot write '" + path + "'");
  out << s;
  if (!out.flush())
    fail(ErrorKind::ParseError, "failed while writing '" + path + "'");
}

}  // namespace catk
