#include "nov/json_io.hpp"

#include <fstream>
#include <sstream>

namespace nov {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw NovikovError("ParseError", path + ": " + what);
}

const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, "missing field '" + key + "'");
  return *it;
}

long integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long>();
}

std::string text(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

int index_of(const std::vector<Generator>& g, const Json& j, const std::string& path) {
  if (j.is_number_integer()) {
    const long k = j.get<long>();
    if (k < 0 || k >= static_cast<long>(g.size())) fail(path, "index out of range");
    return static_cast<int>(k);
  }
  const std::string label = text(j, path);
  for (int k = 0; k < static_cast<int>(g.size()); ++k)
    if (g[k].label == label) return k;
  fail(path, "unknown generator '" + label + "'");
}

}  // namespace

Json rational_to_json(const Rational& q) { return q.get_str(); }

Rational rational_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) fail(path, "expected a rational as integer or \"p/q\" string");
  try {
    return parse_exponent(j.get<std::string>());
  } catch (const NovikovError& e) {
    fail(path, e.what());
  }
}

Json scalar_to_json(const Scalar& x) {
  Json terms = Json::array();
  for (const auto& [e, c] : x.terms()) {
    terms.push_back({{"num", c.get_num().get_str()},
                     {"den", c.get_den().get_str()},
                     {"exp_num", e.get_num().get_str()},
                     {"exp_den", e.get_den().get_str()}});
  }
  if (!x.precision()) return terms;
  return Json{{"terms", terms}, {"precision", rational_to_json(*x.precision())}};
}

Scalar scalar_from_json(const Json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return Scalar::parse(j.get<std::string>());
    } catch (const NovikovError& e) {
      fail(path, e.what());
    }
  }
  if (j.is_number_integer()) return Scalar(j.get<long>());
  std::optional<Exponent> prec;
  const Json* terms = &j;
  if (j.is_object()) {
    terms = &field(j, "terms", path);
    if (j.contains("precision")) prec = rational_from_json(j["precision"], path + ".precision");
  }
  if (!terms->is_array()) fail(path, "expected an array of terms");
  std::vector<Scalar::Term> out;
  int k = 0;
  for (const auto& t : *terms) {
    const std::string p = path + "[" + std::to_string(k++) + "]";
    auto part = [&](const char* key) {
      const Json& v = field(t, key, p);
      if (v.is_number_integer()) return mpz_class(v.get<long>());
      if (v.is_string()) {
        try {
          return mpz_class(v.get<std::string>());
        } catch (const std::invalid_argument&) {
          fail(p + "." + key, "not an integer");
        }
      }
      fail(p + "." + key, "expected an integer");
    };
    mpz_class num = part("num"), den = part("den"), en = part("exp_num"), ed = part("exp_den");
    if (den == 0 || ed == 0) fail(p, "zero denominator");
    Rational c(num, den), e(en, ed);
    c.canonicalize();
    e.canonicalize();
    out.emplace_back(e, c);
  }
  if (prec && *prec <= 0) fail(path, "precision must be positive");
  return Scalar::from_terms(std::move(out), prec);
}

Json complex_to_json(const ChainComplex& c) {
  Json gens = Json::array();
  for (const auto& g : c.gens) gens.push_back({{"label", g.label}, {"parity", g.parity}});
  Json diff = Json::array();
  for (const auto& [k, v] : c.d.entries()) {
    diff.push_back({{"target", c.gens[k.first].label},
                    {"source", c.gens[k.second].label},
                    {"scalar", scalar_to_json(v)}});
  }
  return Json{{"generators", gens}, {"differential", diff}};
}

ChainComplex complex_from_json(const Json& j, const std::string& path) {
  const Json& gens = field(j, "generators", path);
  if (!gens.is_array()) fail(path + ".generators", "expected an array");
  std::vector<Generator> g;
  std::set<std::string> seen;
  int k = 0;
  for (const auto& x : gens) {
    const std::string p = path + ".generators[" + std::to_string(k++) + "]";
    Generator gen{text(field(x, "label", p), p + ".label"),
                  static_cast<int>(integer(field(x, "parity", p), p + ".parity"))};
    if (gen.parity != 0 && gen.parity != 1) fail(p + ".parity", "parity must be 0 or 1");
    if (!seen.insert(gen.label).second) fail(p + ".label", "duplicate label " + gen.label);
    g.push_back(gen);
  }
  ChainComplex c(g);
  if (j.contains("differential")) {
    const Json& diff = j["differential"];
    if (!diff.is_array()) fail(path + ".differential", "expected an array");
    k = 0;
    for (const auto& e : diff) {
      const std::string p = path + ".differential[" + std::to_string(k++) + "]";
      const int t = index_of(g, field(e, "target", p), p + ".target");
      const int s = index_of(g, field(e, "source", p), p + ".source");
      c.d.add_to(t, s, scalar_from_json(field(e, "scalar", p), p + ".scalar"));
    }
  }
  return c;
}

Json matrix_to_json(const SMat& m) {
  Json out = Json::array();
  for (const auto& [k, v] : m.entries()) {
    out.push_back({{"row", k.first}, {"col", k.second}, {"scalar", scalar_to_json(v)}});
  }
  return out;
}

SMat matrix_from_json(const Json& j, int rows, int cols, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of entries");
  SMat m(rows, cols);
  int k = 0;
  for (const auto& e : j) {
    const std::string p = path + "[" + std::to_string(k++) + "]";
    const long r = integer(field(e, "row", p), p + ".row");
    const long c = integer(field(e, "col", p), p + ".col");
    if (r < 0 || r >= rows || c < 0 || c >= cols) fail(p, "entry outside the map's shape");
    m.add_to(static_cast<int>(r), static_cast<int>(c),
             scalar_from_json(field(e, "scalar", p), p + ".scalar"));
  }
  return m;
}

Json cube_to_json(const CubeDiagram& c) {
  Json verts = Json::object(), faces = Json::object();
  for (const auto& v : all_vertices(c.n)) verts[v] = complex_to_json(c.vertex_complex(v));
  for (const auto& f : all_faces(c.n)) {
    if (!is_vertex(f) && !c.f(f).empty()) faces[f] = matrix_to_json(c.f(f));
  }
  return Json{{"n", c.n}, {"vertices", verts}, {"faces", faces}};
}

CubeDiagram cube_from_json(const Json& j, const std::string& path) {
  const long n = integer(field(j, "n", path), path + ".n");
  if (n < 0 || n > 8) fail(path + ".n", "dimension must lie in 0..8");
  const Json& verts = field(j, "vertices", path);
  std::map<FaceCode, ChainComplex> cx;
  std::map<FaceCode, std::vector<Generator>> gens;
  for (const auto& v : all_vertices(static_cast<int>(n))) {
    if (!verts.contains(v)) fail(path + ".vertices", "missing vertex " + v);
    cx[v] = complex_from_json(verts[v], path + ".vertices." + v);
    gens[v] = cx[v].gens;
  }
  for (const auto& [key, val] : verts.items()) {
    if (!gens.count(key)) fail(path + ".vertices", "unexpected vertex code '" + key + "'");
  }
  CubeDiagram c = CubeDiagram::zero(static_cast<int>(n), gens);
  for (const auto& [v, x] : cx) c.maps[v] = x.d;
  if (j.contains("faces")) {
    const Json& faces = j["faces"];
    if (!faces.is_object()) fail(path + ".faces", "expected an object keyed by face code");
    for (const auto& [key, val] : faces.items()) {
      if (static_cast<long>(key.size()) != n || !valid_code(key)) {
        fail(path + ".faces", "bad face code '" + key + "'");
      }
      if (is_vertex(key)) fail(path + ".faces." + key, "vertex maps come from the complexes");
      c.maps[key] = matrix_from_json(val, c.size_at(nu_ter(key)), c.size_at(nu_in(key)),
                                     path + ".faces." + key);
    }
  }
  return c;
}

Json model_to_json(const MorseModel& m) {
  Json cells = Json::array();
  for (int k = 0; k < m.size(); ++k) {
    Json c{{"label", m.cells[k].label},
           {"parity", m.cells[k].parity},
           {"value", rational_to_json(m.values[k])}};
    if (m.has_base()) c["base"] = m.base[k];
    cells.push_back(c);
  }
  Json bd = Json::array();
  for (const auto& [k, c] : m.boundary) {
    if (c == 0) continue;
    bd.push_back({{"target", m.cells[k.first].label},
                  {"source", m.cells[k.second].label},
                  {"coeff", c}});
  }
  return Json{{"name", m.name}, {"cells", cells}, {"boundary", bd}};
}

MorseModel model_from_json(const Json& j, const std::string& path) {
  MorseModel m;
  if (j.contains("name")) m.name = text(j["name"], path + ".name");
  const Json& cells = field(j, "cells", path);
  if (!cells.is_array()) fail(path + ".cells", "expected an array");
  int k = 0;
  bool any_base = false, all_base = true;
  for (const auto& c : cells) {
    const std::string p = path + ".cells[" + std::to_string(k++) + "]";
    Generator g{text(field(c, "label", p), p + ".label"),
                static_cast<int>(integer(field(c, "parity", p), p + ".parity"))};
    if (g.parity != 0 && g.parity != 1) fail(p + ".parity", "parity must be 0 or 1");
    m.cells.push_back(g);
    m.values.push_back(rational_from_json(field(c, "value", p), p + ".value"));
    if (c.contains("base")) {
      any_base = true;
      m.base.push_back(text(c["base"], p + ".base"));
    } else {
      all_base = false;
    }
  }
  if (any_base && !all_base) fail(path + ".cells", "base given for some cells only");
  if (j.contains("boundary")) {
    k = 0;
    for (const auto& e : j["boundary"]) {
      const std::string p = path + ".boundary[" + std::to_string(k++) + "]";
      const int t = index_of(m.cells, field(e, "target", p), p + ".target");
      const int s = index_of(m.cells, field(e, "source", p), p + ".source");
      m.boundary[{t, s}] += integer(field(e, "coeff", p), p + ".coeff");
    }
  }
  for (auto it = m.boundary.begin(); it != m.boundary.end();) {
    it = it->second == 0 ? m.boundary.erase(it) : std::next(it);
  }
  try {
    validate_model(m);
  } catch (const NovikovError& e) {
    fail(path, e.what());
  }
  return m;
}

MorseModel model_ref_from_json(const Json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return bundled_model(j.get<std::string>());
    } catch (const NovikovError& e) {
      fail(path, e.what());
    }
  }
  return model_from_json(j, path);
}

Json region_to_json(const Region& k) {
  Json out = Json::array();
  for (const auto& x : k) out.push_back(x);
  return out;
}

Region region_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected a list of labels");
  Region k;
  int i = 0;
  for (const auto& x : j) k.insert(text(x, path + "[" + std::to_string(i++) + "]"));
  return k;
}

Hamiltonian hamiltonian_from_json(const MorseModel& m, const Json& j, const std::string& path) {
  Hamiltonian h(m.size());
  if (j.is_array()) {
    if (static_cast<int>(j.size()) != m.size()) fail(path, "one value per cell expected");
    for (int k = 0; k < m.size(); ++k) {
      h[k] = rational_from_json(j[k], path + "[" + std::to_string(k) + "]");
    }
    return h;
  }
  if (!j.is_object()) fail(path, "expected an array or an object keyed by cell label");
  for (int k = 0; k < m.size(); ++k) {
    h[k] = rational_from_json(field(j, m.cells[k].label, path), path + "." + m.cells[k].label);
  }
  return h;
}

Json ray_to_json(const Ray& r) {
  Json prefix = Json::array();
  for (const auto& c : r.prefix) prefix.push_back(cube_to_json(c));
  Json tail{{"kind", tail_kind_str(r.tail.kind)}};
  if (r.tail.kind == TailSpec::Kind::StationaryGap) {
    tail["payload"] = Json{{"step", cube_to_json(*r.tail.step)}};
  } else if (r.tail.kind == TailSpec::Kind::ModelTail) {
    tail["payload"] = Json{{"name", r.tail.name}};
  }
  return Json{{"n", r.n}, {"prefix", prefix}, {"tail", tail}};
}

Ray ray_from_json(const Json& j, const std::string& path) {
  Ray r;
  r.n = static_cast<int>(integer(field(j, "n", path), path + ".n"));
  if (r.n < 1) fail(path + ".n", "rays need n >= 1");
  if (j.contains("prefix")) {
    int k = 0;
    for (const auto& c : j["prefix"]) {
      r.prefix.push_back(cube_from_json(c, path + ".prefix[" + std::to_string(k++) + "]"));
    }
  }
  const std::string tp = path + ".tail";
  const Json tail = j.contains("tail") ? j["tail"] : Json{{"kind", "finite"}};
  const std::string kind = text(field(tail, "kind", tp), tp + ".kind");
  if (kind == "finite") {
    r.tail = TailSpec::finite();
  } else if (kind == "stationary-gap") {
    const Json& pl = field(tail, "payload", tp);
    CubeDiagram step;
    if (pl.contains("step")) {
      step = cube_from_json(pl["step"], tp + ".payload.step");
    } else {
      if (r.n != 1) fail(tp + ".payload", "complex/map payloads describe 1-rays only");
      ChainComplex c = complex_from_json(field(pl, "complex", tp + ".payload"),
                                         tp + ".payload.complex");
      step = CubeDiagram::zero(1, {{"0", c.gens}, {"1", c.gens}});
      step.maps["0"] = c.d;
      step.maps["1"] = c.d;
      step.maps["-"] =
          matrix_from_json(field(pl, "map", tp + ".payload"), c.size(), c.size(), tp + ".payload.map");
    }
    try {
      r.tail = TailSpec::stationary_gap(step);
    } catch (const NovikovError& e) {
      fail(tp, e.what());
    }
  } else if (kind == "model") {
    const Json& pl = field(tail, "payload", tp);
    MorseModel m = model_ref_from_json(field(pl, "model", tp + ".payload"), tp + ".payload.model");
    const std::string family = text(field(pl, "family", tp + ".payload"), tp + ".payload.family");
    if (r.n != 1) fail(tp, "model tails describe 1-rays");
    if (family == "scaling") {
      r.tail = scaling_ray(m).tail;
    } else if (family == "cofinal") {
      r.tail = cofinal_ray(m, region_from_json(field(pl, "region", tp + ".payload"),
                                               tp + ".payload.region"))
                   .tail;
    } else {
      fail(tp + ".payload.family", "unknown family '" + family + "'");
    }
  } else {
    fail(tp + ".kind", "unknown tail kind '" + kind + "'");
  }
  return r;
}

Json betti_to_json(const Betti& b) { return Json{{"even", b.even}, {"odd", b.odd}}; }

Json barcode_to_json(const Barcode& b) {
  Json bars = Json::array();
  for (const auto& bar : b.bars) {
    Json x{{"parity", bar.parity ? "odd" : "even"}, {"label", bar.label}};
    x["length"] = bar.length ? Json(exponent_str(*bar.length)) : Json("inf");
    x["open_at_zero"] = bar.open_at_zero;
    x["beyond_precision"] = bar.beyond_precision;
    bars.push_back(x);
  }
  Json out{{"bars", bars},
           {"free", {{"even", b.free_count(0)}, {"odd", b.free_count(1)}}},
           {"torsion", {{"even", b.torsion_count(0)}, {"odd", b.torsion_count(1)}}}};
  out["precision"] = b.precision ? Json(exponent_str(*b.precision)) : Json(nullptr);
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw NovikovError("ParseError", path + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw NovikovError("ParseError", path + ": " + e.what());
  }
}

}  // namespace nov
