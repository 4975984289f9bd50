// cubecalc: batch front end over cubes, rays and Morse models.
// Exit status: 0 ok, 1 violation or rejected input, 2 usage or parse error,
// 3 internal error. Reports are deterministic for fixed inputs and flags.
#include <openssl/evp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <functional>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "nov/json_io.hpp"
#include "nov/morse.hpp"
#include "nov/rays.hpp"

using namespace nov;

namespace {

struct Flags {
  std::optional<Exponent> precision;
  std::optional<int> depth;
  std::optional<Exponent> work;
  std::optional<int> direction;
  std::string format = "text";
  int jobs = 1;
};

// flag problems detected before any computation
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Outcome {
  std::string status = "ok";  // ok | violation | error
  Json result = Json::object();
};

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream s;
  for (unsigned int k = 0; k < len; ++k) s << std::hex << std::setw(2) << std::setfill('0') << int(md[k]);
  return s.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NovikovError("ParseError", path + ": cannot open file");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Json parse_text(const std::string& text, const std::string& path) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw NovikovError("ParseError", path + ": " + e.what());
  }
}

Exponent need_precision(const Flags& f) {
  if (!f.precision) throw UsageError("--precision is required for this command");
  return *f.precision;
}

int need_depth(const Flags& f) {
  if (!f.depth) throw UsageError("--depth is required for this command");
  return *f.depth;
}

Exponent work_of(const Flags& f) { return f.work ? *f.work : need_precision(f); }

// the input itself, or the named member when present
const Json& member_or_self(const Json& j, const std::string& key) {
  return j.is_object() && j.contains(key) ? j[key] : j;
}

// exponent as p/q without the T^{...} braces
std::string plain(const Exponent& e) {
  std::string s = exponent_str(e);
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == '{' || c == '}'; }), s.end());
  return s;
}

Json report_json(const CubeReport& rep) {
  Json faces = Json::array();
  for (const auto& f : rep.faces) {
    faces.push_back({{"face", f.face}, {"residual_nnz", f.residual_nnz}, {"detail", f.detail}});
  }
  return Json{{"ok", rep.ok}, {"structural", rep.structural}, {"failing_faces", faces}};
}

Json free_json(const Barcode& b) {
  return Json{{"even", b.free_count(0)}, {"odd", b.free_count(1)}};
}

Json barcode_json(const Barcode& b) {
  Json j = barcode_to_json(b);
  j["table"] = b.table();
  return j;
}

// ---------------------------------------------------------------- cube commands

Outcome verify_cube_cmd(const Json& in, const Flags& f) {
  const CubeDiagram c = cube_from_json(member_or_self(in, "cube"));
  const CubeReport rep = verify_cube(c, f.work);
  Outcome out;
  out.result = Json{{"n", c.n}, {"report", report_json(rep)}};
  if (f.work) out.result["modulo"] = plain(*f.work);
  out.status = rep.ok ? "ok" : "violation";
  return out;
}

Outcome cone_cmd(const Json& in, const Flags& f) {
  const CubeDiagram c = cube_from_json(member_or_self(in, "cube"));
  int dir = c.n;
  if (in.is_object() && in.contains("direction")) dir = in["direction"].get<int>();
  if (f.direction) dir = *f.direction;
  const CubeReport before = verify_cube(c);
  const CubeDiagram k = cone(c, dir);
  const CubeReport after = verify_cube(k);
  Outcome out;
  out.result = Json{{"direction", dir},
                    {"input", report_json(before)},
                    {"output", report_json(after)},
                    {"cube", cube_to_json(k)}};
  out.status = before.ok && after.ok ? "ok" : "violation";
  return out;
}

Outcome compose_cmd(const Json& in, const Flags&) {
  if (!in.is_object() || !in.contains("first") || !in.contains("second")) {
    throw NovikovError("ParseError", "input: expected members 'first' and 'second'");
  }
  const CubeDiagram a = cube_from_json(in["first"], "first");
  const CubeDiagram b = cube_from_json(in["second"], "second");
  const CubeDiagram c = compose(a, b);
  const CubeReport rep = verify_cube(c);
  Outcome out;
  out.result = Json{{"output", report_json(rep)}, {"cube", cube_to_json(c)}};
  out.status = verify_cube(a).ok && verify_cube(b).ok && rep.ok ? "ok" : "violation";
  return out;
}

// ---------------------------------------------------------------- rays

Outcome tel_cmd(const Json& in, const Flags& f) {
  const Exponent r0 = need_precision(f);
  const int depth = need_depth(f);
  const Ray r = ray_from_json(member_or_self(in, "ray"));
  validate_ray(r);
  const CubeDiagram tel = telescope(r, depth);
  const CubeReport rep = verify_cube(tel);
  Json sizes = Json::object();
  for (const auto& v : all_vertices(tel.n)) sizes[v.empty() ? "total" : v] = tel.size_at(v);
  const ChainComplex total = full_cone(tel);
  Outcome out;
  out.result = Json{{"dimension", tel.n},
                    {"sizes", sizes},
                    {"report", report_json(rep)},
                    {"barcode", barcode_json(barcode(total, work_of(f)))}};
  out.result["barcode"]["precision"] = plain(r0);
  bool ok = rep.ok;
  if (r.n == 1) {
    const ColimitReport c = colimit_t0(r, depth);
    out.result["colimit"] = Json{{"tel_betti", betti_to_json(c.tel_betti)},
                                 {"colimit_betti", betti_to_json(c.colimit_betti)},
                                 {"comparison_chain_map", c.comparison_chain_map},
                                 {"quasi_isomorphism", c.quasi_isomorphism}};
    ok = ok && c.comparison_chain_map && c.quasi_isomorphism;
  }
  out.status = ok ? "ok" : "violation";
  return out;
}

Outcome sh_cmd(const Json& in, const Flags& f) {
  const Exponent r0 = need_precision(f);
  const int depth = need_depth(f);
  const Ray r = ray_from_json(member_or_self(in, "ray"));
  validate_ray(r);
  const CompletedHomology h = completed_homology(r, r0, f.work);
  Json stages = Json::array();
  const int last = r.max_depth() ? std::min(depth, *r.max_depth()) : depth;
  for (int k = 1; k <= last; ++k) {
    const Barcode b = barcode(full_cone(telescope(r, k)), work_of(f));
    stages.push_back(Json{{"depth", k}, {"free", free_json(b)}});
  }
  Outcome out;
  out.result = Json{{"method", h.method}, {"barcode", barcode_json(h.bars)}, {"stages", stages}};
  out.result["stage"] = h.stage ? Json(*h.stage) : Json(nullptr);
  return out;
}

// ---------------------------------------------------------------- models

// {"model": name-or-model, ...}, a bare model object or a bundled name
MorseModel model_of(const Json& in) {
  const bool bare = in.is_string() || (in.is_object() && in.contains("cells"));
  if (!bare && (!in.is_object() || !in.contains("model"))) {
    throw NovikovError("ParseError", "input: expected member 'model'");
  }
  MorseModel m = bare ? model_ref_from_json(in, "model") : model_ref_from_json(in["model"], "model");
  validate_model(m);
  return m;
}

Hamiltonian hamiltonian_of(const MorseModel& m, const Json& in, const std::string& key) {
  if (!in.is_object() || !in.contains(key)) return m.values;
  return hamiltonian_from_json(m, in[key], key);
}

std::vector<Region> regions_of(const Json& in) {
  if (!in.contains("regions") || !in["regions"].is_array()) {
    throw NovikovError("ParseError", "regions: expected a list of label lists");
  }
  std::vector<Region> out;
  int k = 0;
  for (const auto& r : in["regions"]) {
    out.push_back(region_from_json(r, "regions[" + std::to_string(k++) + "]"));
  }
  return out;
}

Json minmax_json(const MinMaxSquare& sq) {
  Json pieces = Json::array();
  for (const auto& p : sq.pieces) {
    pieces.push_back({{"cell", p.label},
                      {"type", p.equal_values ? "four-generator" : "two-arrow"},
                      {"nonzero", p.nonzero},
                      {"pattern_ok", p.pattern_ok},
                      {"acyclic", p.acyclic}});
  }
  return Json{{"pieces", pieces},
              {"strict", sq.strict},
              {"decomposition", sq.decomposition},
              {"pieces_ok", sq.pieces_ok},
              {"acyclic", sq.verdict.acyclic},
              {"betti_t0", betti_to_json(sq.verdict.betti)}};
}

Json mv_json(const MayerVietoris& mv) {
  Json spots = Json::array();
  for (const auto& s : mv.spots) {
    spots.push_back({{"spot", s.name},
                     {"parity", s.parity ? "odd" : "even"},
                     {"dim", s.dim},
                     {"rank_in", s.rank_in},
                     {"rank_out", s.rank_out},
                     {"composite_zero", s.composite_zero},
                     {"exact", s.exact}});
  }
  return Json{{"h00", betti_to_json(mv.h00)},
              {"h10_plus_h01", betti_to_json(mv.hmid)},
              {"h11", betti_to_json(mv.h11)},
              {"spots", spots},
              {"exact", mv.exact},
              {"table", mv.table()}};
}

Outcome mv_cmd(const Json& in, const Flags& f) {
  const Exponent r0 = need_precision(f);
  Outcome out;
  CubeDiagram square;
  bool ok = true;
  if (in.is_object() && in.contains("model")) {
    const MorseModel m = model_of(in);
    const MinMaxSquare sq =
        minmax_square(m, hamiltonian_of(m, in, "hx"), hamiltonian_of(m, in, "hy"));
    square = sq.square;
    out.result["minmax"] = minmax_json(sq);
    ok = sq.pieces_ok && sq.verdict.acyclic;
  } else {
    square = cube_from_json(member_or_self(in, "square"), "square");
    if (square.n != 2) throw NovikovError("InvalidShape", "mayer-vietoris needs a 2-cube");
    const CubeReport rep = verify_cube(square);
    out.result["report"] = report_json(rep);
    ok = rep.ok;
  }
  const MayerVietoris mv = mayer_vietoris(square);
  out.result["sequence"] = mv_json(mv);
  Json vb = Json::object();
  for (const auto& v : all_vertices(2)) {
    vb[v] = barcode_json(barcode(square.vertex_complex(v), work_of(f)));
    vb[v]["precision"] = plain(r0);
  }
  out.result["vertex_barcodes"] = vb;
  out.status = ok && mv.exact ? "ok" : "violation";
  return out;
}

Json descent_json(const DescentComplex& dc) {
  Json graded = Json::array();
  for (const auto& g : dc.graded) graded.push_back(g.nnz());
  return Json{{"generators", dc.total.size()},
              {"acyclic", dc.verdict.acyclic},
              {"betti_t0", betti_to_json(dc.verdict.betti)},
              {"graded_nnz", graded}};
}

Outcome morse_descent(const Json& in, const Flags& f) {
  need_precision(f);
  const int depth = need_depth(f);
  const MorseModel m = model_of(in);
  const DescentInstance inst = involutive_descent_instance(m, regions_of(in), depth);
  Outcome out;
  out.result = Json{{"regions", inst.n},
                    {"descent", descent_json(inst.descent)},
                    {"slices_checked", inst.slices.slices_checked}};
  Json ab = Json::array();
  for (const auto& c : inst.appendix_b) ab.push_back({{"check", c.name}, {"acyclic", c.acyclic}});
  out.result["appendix_b"] = ab;
  out.status = inst.acyclic && inst.appendix_b_ok ? "ok" : "violation";
  return out;
}

Outcome descent_cmd(const Json& in, const Flags& f) {
  if (in.is_object() && in.contains("model")) return morse_descent(in, f);
  need_precision(f);
  const int depth = need_depth(f);
  const Ray r = ray_from_json(member_or_self(in, "ray"));
  validate_ray(r);
  const DescentComplex dc = descent_complex(r, depth);
  Outcome out;
  out.result = Json{{"descent", descent_json(dc)}};
  out.status = dc.verdict.acyclic ? "ok" : "violation";
  return out;
}

Outcome global_sections_cmd(const Json& in, const Flags& f) {
  const Exponent r0 = need_precision(f);
  const int depth = need_depth(f);
  const MorseModel m = model_of(in);
  const GlobalSections gs = global_sections(m, r0, depth);
  Json stages = Json::array();
  for (const auto& s : gs.stage_free) stages.push_back(betti_to_json(s));
  Outcome out;
  out.result = Json{{"model", m.name},
                    {"barcode", barcode_json(gs.bars)},
                    {"betti", betti_to_json(gs.betti)},
                    {"stage_free", stages},
                    {"weights_exact", gs.weights_exact},
                    {"consistent", gs.consistent}};
  out.status = gs.consistent ? "ok" : "violation";
  return out;
}

Outcome empty_set_cmd(const Json& in, const Flags& f) {
  const Exponent r0 = need_precision(f);
  need_depth(f);
  const MorseModel m = model_of(in);
  const EmptySet es = empty_set(m, hamiltonian_of(m, in, "base_h"), r0);
  Outcome out;
  out.result = Json{{"model", m.name}, {"barcode", barcode_json(es.bars)}, {"gap", plain(es.gap)}};
  out.result["stage"] = es.stage ? Json(*es.stage) : Json(nullptr);
  out.status = es.bars.is_zero() ? "ok" : "violation";
  return out;
}

Outcome minmax_cmd(const Json& in, const Flags&) {
  const MorseModel m = model_of(in);
  const MinMaxSquare sq = minmax_square(m, hamiltonian_of(m, in, "hx"), hamiltonian_of(m, in, "hy"));
  Outcome out;
  out.result = minmax_json(sq);
  out.result["model"] = m.name;
  out.status = sq.pieces_ok && sq.verdict.acyclic ? "ok" : "violation";
  return out;
}

Outcome relative_sh_cmd(const Json& in, const Flags& f) {
  const Exponent r0 = need_precision(f);
  const int depth = need_depth(f);
  const MorseModel m = model_of(in);
  if (!in.contains("region")) throw NovikovError("ParseError", "input: expected member 'region'");
  const RelativeSH sh = relative_sh(m, region_from_json(in["region"], "region"), r0, depth);
  Json stages = Json::array();
  for (const auto& s : sh.stage_free) stages.push_back(betti_to_json(s));
  Outcome out;
  out.result = Json{{"model", m.name},
                    {"barcode", barcode_json(sh.bars)},
                    {"quotient_betti", betti_to_json(sh.quotient_betti)},
                    {"stage_free", stages},
                    {"outside_vanishes", sh.outside_vanishes},
                    {"inside_survives", sh.inside_survives}};
  bool ok = sh.outside_vanishes && sh.inside_survives &&
            sh.bars.free_count(0) == sh.quotient_betti.even &&
            sh.bars.free_count(1) == sh.quotient_betti.odd;
  for (const auto& s : sh.stage_free) ok = ok && s == sh.quotient_betti;
  out.status = ok ? "ok" : "violation";
  return out;
}

// ---------------------------------------------------------------- reports

using Command = std::function<Outcome(const Json&, const Flags&)>;

struct FileReport {
  Json json;
  int exit_code = 0;
};

FileReport run_file(const std::string& name, const Command& cmd, const std::string& path,
                    const Flags& f) {
  Json prov{{"input", path}};
  prov["precision"] = f.precision ? Json(plain(*f.precision)) : Json(nullptr);
  prov["depth"] = f.depth ? Json(*f.depth) : Json(nullptr);
  prov["work"] = f.work ? Json(plain(*f.work)) : Json(nullptr);
  Json rep{{"command", name}, {"provenance", prov}};
  FileReport out;
  try {
    const std::string text = read_file(path);
    rep["provenance"]["sha256"] = sha256_hex(text);
    const Outcome o = cmd(parse_text(text, path), f);
    rep["status"] = o.status;
    rep["result"] = o.result;
    out.exit_code = o.status == "ok" ? 0 : 1;
  } catch (const UsageError& e) {
    rep["status"] = "error";
    rep["error"] = Json{{"code", "Usage"}, {"message", e.what()}};
    out.exit_code = 2;
  } catch (const NovikovError& e) {
    rep["status"] = "error";
    rep["error"] = Json{{"code", e.code()}, {"message", e.what()}};
    out.exit_code = e.code() == "ParseError" ? 2 : 1;
  } catch (const std::exception& e) {
    rep["status"] = "error";
    rep["error"] = Json{{"code", "Internal"}, {"message", e.what()}};
    out.exit_code = 3;
  }
  out.json = rep;
  return out;
}

void render_text(std::ostream& os, const Json& j, int indent) {
  const std::string pad(indent, ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_string() && v.get<std::string>().find('\n') != std::string::npos) {
        os << pad << k << ":\n";
        std::istringstream lines(v.get<std::string>());
        for (std::string line; std::getline(lines, line);) os << pad << "  " << line << "\n";
      } else if (v.is_structured() && !v.empty()) {
        os << pad << k << ":\n";
        render_text(os, v, indent + 2);
      } else {
        os << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else if (j.is_array()) {
    bool flat = std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_primitive(); });
    if (flat) {
      os << pad << j.dump() << "\n";
      return;
    }
    for (const auto& x : j) {
      os << pad << "-\n";
      render_text(os, x, indent + 2);
    }
  } else {
    os << pad << j.dump() << "\n";
  }
}

int run_batch(const std::string& name, const Command& cmd, const std::vector<std::string>& inputs,
              const Flags& f) {
  std::vector<FileReport> reports(inputs.size());
  const std::size_t jobs = static_cast<std::size_t>(std::max(1, f.jobs));
  for (std::size_t start = 0; start < inputs.size(); start += jobs) {
    std::vector<std::future<FileReport>> running;
    for (std::size_t k = start; k < std::min(inputs.size(), start + jobs); ++k) {
      running.push_back(std::async(std::launch::async, run_file, name, cmd, inputs[k], f));
    }
    for (std::size_t k = 0; k < running.size(); ++k) reports[start + k] = running[k].get();
  }
  int code = 0;
  for (const auto& r : reports) code = std::max(code, r.exit_code);
  if (f.format == "json") {
    if (reports.size() == 1) {
      std::cout << reports[0].json.dump(2) << "\n";
    } else {
      Json all = Json::array();
      for (const auto& r : reports) all.push_back(r.json);
      std::cout << all.dump(2) << "\n";
    }
  } else {
    for (std::size_t k = 0; k < reports.size(); ++k) {
      if (k) std::cout << "\n";
      render_text(std::cout, reports[k].json, 0);
    }
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cubecalc: cubes of chain complexes over the Novikov ring"};
  app.require_subcommand(1);

  Flags flags;
  std::string precision, work;
  int depth = 0;
  int direction = 0;
  std::vector<std::string> inputs;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("inputs", inputs, "input JSON files")->required()->check(CLI::ExistingFile);
    sub->add_option("--precision", precision, "declared precision r0 as p/q");
    sub->add_option("--depth", depth, "telescope depth")->check(CLI::PositiveNumber);
    sub->add_option("--work", work, "working precision p/q, at least the precision");
    sub->add_option("--format", flags.format, "report format")
        ->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--jobs", flags.jobs, "files processed in parallel")
        ->check(CLI::PositiveNumber);
  };

  std::vector<std::pair<CLI::App*, std::pair<std::string, Command>>> commands;
  const auto add = [&](CLI::App* parent, const std::string& name, const std::string& help,
                       Command cmd, const std::string& full) {
    CLI::App* sub = parent->add_subcommand(name, help);
    add_common(sub);
    commands.push_back({sub, {full, std::move(cmd)}});
    return sub;
  };

  add(&app, "verify-cube", "check the cube equations of an n-cube", verify_cube_cmd, "verify-cube");
  add(&app, "cone", "cone of a cube in one direction", cone_cmd, "cone")
      ->add_option("--direction", direction, "direction to contract (default: last)")
      ->check(CLI::PositiveNumber);
  add(&app, "compose", "compose two maps of cubes", compose_cmd, "compose");
  add(&app, "tel", "truncated telescope of a ray", tel_cmd, "tel");
  add(&app, "sh", "completed telescope homology of a ray", sh_cmd, "sh");
  add(&app, "mv", "Mayer-Vietoris sequence of an acyclic square", mv_cmd, "mv");
  add(&app, "descent", "descent complex of a ray or a model with regions", descent_cmd, "descent");
  CLI::App* morse = app.add_subcommand("morse", "Morse-Novikov model computations");
  morse->require_subcommand(1);
  add(morse, "global-sections", "SH of the whole model", global_sections_cmd, "morse global-sections");
  add(morse, "empty-set", "SH of the empty set", empty_set_cmd, "morse empty-set");
  add(morse, "minmax", "min/max square and its cell pieces", minmax_cmd, "morse minmax");
  add(morse, "relative-sh", "SH of a region", relative_sh_cmd, "morse relative-sh");
  add(morse, "descent", "involutive descent for regions", morse_descent, "morse descent");

  try {
    app.parse(argc, argv);
    if (!precision.empty()) flags.precision = parse_exponent(precision);
    if (!work.empty()) flags.work = parse_exponent(work);
    if (depth > 0) flags.depth = depth;
    if (direction > 0) flags.direction = direction;
    if (flags.precision && *flags.precision <= 0) throw UsageError("--precision must be positive");
    if (flags.work && flags.precision && *flags.work < *flags.precision) {
      throw UsageError("--work must be at least --precision");
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  for (const auto& [sub, named] : commands) {
    if (sub->parsed()) return run_batch(named.first, named.second, inputs, flags);
  }
  std::cerr << app.help();
  return 2;
}
