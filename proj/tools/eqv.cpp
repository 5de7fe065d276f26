#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "eqv/algebra.hpp"
#include "eqv/error.hpp"
#include "eqv/io.hpp"
#include "eqv/windex.hpp"

using namespace eqv;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFailed = 1, kError = 2 };

struct Config {
  std::string group;
  int bound = -1;
  std::string mode = "sparse";
  std::string format;  // empty: the command's default (DOT for hasse, JSON otherwise)
  unsigned seed = 0;
  std::string out;
  std::vector<std::string> inputs;
  std::string indexing;
  std::string map;
  std::string operad;
  std::string system;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Written whole or not at all.
void emit(const Config& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  const std::string tmp = cfg.out + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw UsageError("cannot write " + cfg.out);
    f << text;
    if (!f) throw UsageError("cannot write " + cfg.out);
  }
  std::filesystem::rename(tmp, cfg.out);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json header(const std::string& kind, json extra = json::object()) {
  json j = {{"schema", io::kSchema}, {"kind", kind}};
  j.update(extra);
  return j;
}

OrbitCategoryPtr group_of(const Config& cfg) {
  if (cfg.group.empty()) return nullptr;
  return io::read_group(slurp(cfg.group));
}

OrbitCategoryPtr required_group(const Config& cfg) {
  if (cfg.group.empty()) throw UsageError("--group is required");
  return group_of(cfg);
}

const std::string& input(const Config& cfg, std::size_t i) {
  if (cfg.inputs.size() <= i) throw UsageError("missing input file");
  return cfg.inputs[i];
}

const std::string& option(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string(flag) + " is required");
  return value;
}

json level_set(const LevelSet& s) { return {{"level", s.level}, {"counts", s.counts}}; }

EnumMode mode_of(const std::string& m) {
  if (m == "sparse") return EnumMode::Sparse;
  if (m == "truncated") return EnumMode::Truncated;
  if (m == "exact-indexing") return EnumMode::ExactIndexing;
  throw UsageError("--mode must be sparse, truncated or exact-indexing");
}

// ---- windex ----

int windex_validate(const Config& cfg) {
  const WeakIndexingSystem w = io::read_windex(slurp(input(cfg, 0)), group_of(cfg));
  const auto v = validate(w);
  json r = header("windex-report");
  r["valid"] = v.empty();
  json vs = json::array();
  for (const auto& x : v) {
    json parts = json::array();
    for (const auto& p : x.parts) parts.push_back(level_set(p));
    vs.push_back({{"kind", x.kind}, {"level", x.level}, {"set", level_set(x.set)}, {"parts", parts},
                  {"result", level_set(x.result)}, {"message", x.message}});
  }
  r["violations"] = vs;
  if (v.empty()) {
    r["unital"] = is_unital(w);
    r["almost_essentially_unital"] = is_aeu(w);
    r["indexing_system"] = is_indexing_system(w);
  }
  if (cfg.format == "text") {
    std::string t = v.empty() ? "valid\n" : "invalid\n";
    for (const auto& x : v) t += x.kind + " at level " + std::to_string(x.level) + ": " + x.message + "\n";
    emit(cfg, t);
  } else {
    emit(cfg, dump(r));
  }
  return v.empty() ? kOk : kFailed;
}

std::vector<WeakIndexingSystem> enumerated(const Config& cfg) {
  auto oc = required_group(cfg);
  const EnumMode mode = mode_of(cfg.mode);
  int bound = cfg.bound;
  if (bound < 0) bound = mode == EnumMode::ExactIndexing ? std::max(2, oc->group().order()) : 4;
  return enumerate(std::make_shared<SetUniverse>(oc, bound), mode);
}

int windex_enumerate(const Config& cfg) {
  const auto systems = enumerated(cfg);
  if (cfg.format == "dot") {
    emit(cfg, hasse_dot(systems, hasse(systems)));
    return kOk;
  }
  if (cfg.format == "text") {
    std::string t = "count " + std::to_string(systems.size()) + "\n";
    for (const auto& w : systems) t += describe(w) + "\n";
    emit(cfg, t);
    return kOk;
  }
  json r = header("windex-list");
  r["mode"] = cfg.mode;
  r["bound"] = systems.empty() ? cfg.bound : systems.front().bound();
  r["count"] = systems.size();
  json list = json::array();
  for (const auto& w : systems) {
    json j = json::parse(io::write_windex(w));
    list.push_back({{"bound", j["bound"]}, {"repr", j["repr"]}, {"admissible", j["admissible"]}});
  }
  r["systems"] = list;
  emit(cfg, dump(r));
  return kOk;
}

int windex_hasse(const Config& cfg) {
  const auto systems = enumerated(cfg);
  const auto edges = hasse(systems);
  if (cfg.format == "json") {
    json r = header("hasse");
    r["count"] = systems.size();
    json es = json::array();
    for (const auto& e : edges) es.push_back({e.lower, e.upper});
    r["edges"] = es;
    json names = json::array();
    for (const auto& w : systems) names.push_back(describe(w));
    r["systems"] = names;
    emit(cfg, dump(r));
  } else {
    emit(cfg, hasse_dot(systems, edges));
  }
  return kOk;
}

int windex_binary(const Config& cfg, const std::string& op) {
  auto oc = group_of(cfg);
  const WeakIndexingSystem a = io::read_windex(slurp(input(cfg, 0)), oc);
  const WeakIndexingSystem b = io::read_windex(slurp(input(cfg, 1)), a.universe().category_ptr());
  if (a.bound() != b.bound()) throw InvalidArgument("systems have different bounds");
  if (op == "leq") {
    const bool r = leq(a, b);
    if (cfg.format == "text")
      emit(cfg, r ? "true\n" : "false\n");
    else
      emit(cfg, dump(header("leq", {{"leq", r}})));
    return kOk;
  }
  const WeakIndexingSystem c = op == "join" ? join(a, b) : meet(a, b);
  emit(cfg, cfg.format == "text" ? describe(c) + "\n" : io::write_windex(c));
  return kOk;
}

// ---- operad ----

OperadPtr operad_input(const Config& cfg) { return io::read_operad(slurp(input(cfg, 0)), group_of(cfg)); }

WeakIndexingSystem indexing_input(const Config& cfg, const OperadPtr& o) {
  return io::read_windex(slurp(option(cfg.indexing, "--indexing")), o->space().category_ptr());
}

int operad_validate(const Config& cfg) {
  const OperadPtr o = operad_input(cfg);
  ValidateOptions opt;
  opt.seed = cfg.seed;
  const OperadReport r = validate_operad(*o, opt);
  json j = header("operad-report");
  j["ok"] = r.ok();
  j["violations"] = r.violations;
  j["checked"] = r.checked;
  j["data"] = r.data;
  j["out_of_bound"] = r.out_of_bound;
  j["sampled"] = r.sampled;
  j["coverage"] = r.coverage();
  if (cfg.format == "text") {
    std::string t = r.ok() ? "valid\n" : "invalid\n";
    for (const auto& v : r.violations) t += v + "\n";
    emit(cfg, t);
  } else {
    emit(cfg, dump(j));
  }
  return r.ok() ? kOk : kFailed;
}

int operad_support(const Config& cfg) {
  const WeakIndexingSystem w = arity_support(*operad_input(cfg));
  emit(cfg, cfg.format == "text" ? describe(w) + "\n" : io::write_windex(w));
  return kOk;
}

int operad_h0(const Config& cfg) {
  const OperadPtr o = operad_input(cfg);
  emit(cfg, io::write_ninfty(arity_support(*o), o->bound()));
  return kOk;
}

int operad_borelify(const Config& cfg) {
  const OperadPtr o = operad_input(cfg);
  emit(cfg, io::write_operad(*borelify(o, indexing_input(cfg, o))));
  return kOk;
}

int operad_maps(const Config& cfg) {
  const OperadPtr o = operad_input(cfg);
  const NinftyMaps m = alg_to_ninfty(*o, indexing_input(cfg, o));
  if (cfg.format == "text")
    emit(cfg, m.inhabited ? "inhabited\n" : "empty\n");
  else
    emit(cfg, dump(header("maps-to-ninfty", {{"inhabited", m.inhabited}})));
  return kOk;
}

int operad_tabulate(const Config& cfg) {
  emit(cfg, io::write_operad(*operad_input(cfg)));
  return kOk;
}

// ---- algebra ----

int algebra_validate(const Config& cfg) {
  const std::string text = slurp(input(cfg, 0));
  AlgebraOptions opt;
  opt.seed = cfg.seed;
  json j = header("algebra-report");
  std::vector<std::string> violations;
  if (io::kind_of(text) == "chan") {
    violations = validate_chan(io::read_chan(text, group_of(cfg)), opt);
  } else {
    const AlgebraReport r = validate_strict_algebra(io::read_algebra(text, group_of(cfg)), opt);
    violations = r.violations;
    j["checked"] = r.checked;
    j["sampled"] = r.sampled;
  }
  j["ok"] = violations.empty();
  j["violations"] = violations;
  if (cfg.format == "text") {
    std::string t = violations.empty() ? "valid\n" : "invalid\n";
    for (const auto& v : violations) t += v + "\n";
    emit(cfg, t);
  } else {
    emit(cfg, dump(j));
  }
  return violations.empty() ? kOk : kFailed;
}

StrictAlgebra algebra_input(const std::string& path, OrbitCategoryPtr oc) {
  const std::string text = slurp(path);
  if (io::kind_of(text) == "chan") return chan_to_strict(io::read_chan(text, std::move(oc)));
  return io::read_algebra(text, std::move(oc));
}

int algebra_morphism_cmd(const Config& cfg) {
  const StrictAlgebra a = algebra_input(input(cfg, 0), group_of(cfg));
  const StrictAlgebra b = algebra_input(input(cfg, 1), a.x.category_ptr());
  const CoeffMap f = io::read_coeff_map(slurp(option(cfg.map, "--map")));
  const MorphismResult full = algebra_morphism(f, a, b, MorphismCheck::Full);
  const MorphismResult fast = algebra_morphism(f, a, b, MorphismCheck::Fast);
  json j = header("morphism-report");
  j["morphism"] = full.morphism;
  j["fast"] = fast.morphism;
  j["fast_path"] = fast.fast;
  j["agree"] = full.morphism == fast.morphism;
  j["failure"] = full.failure ? level_set(*full.failure) : json(nullptr);
  const json locus = json::parse(io::write_windex(intertwining_locus(f, a, b)));
  j["locus"] = {{"bound", locus["bound"]}, {"admissible", locus["admissible"]}};
  if (cfg.format == "text")
    emit(cfg, std::string(full.morphism ? "morphism" : "not a morphism") + (j["agree"] ? "" : " (fast check disagrees)") + "\n");
  else
    emit(cfg, dump(j));
  return full.morphism ? kOk : kFailed;
}

int algebra_roundtrip(const Config& cfg) {
  const std::string text = slurp(input(cfg, 0));
  json j = header("chan-roundtrip");
  bool identical = false;
  bool valid = false;
  if (io::kind_of(text) == "chan") {
    const ChanData c = io::read_chan(text, group_of(cfg));
    valid = validate_chan(c).empty();
    const StrictAlgebra s = chan_to_strict(c);
    const bool strict_valid = validate_strict_algebra(s).ok();
    j["input"] = "chan";
    j["input_valid"] = valid;
    j["image_valid"] = strict_valid;
    identical = strict_to_chan(s) == c;
    valid = valid && strict_valid;
  } else {
    const StrictAlgebra s = io::read_algebra(text, group_of(cfg));
    valid = validate_strict_algebra(s).ok();
    const ChanData c = strict_to_chan(s);
    const bool chan_valid = validate_chan(c).empty();
    j["input"] = "strict-algebra";
    j["input_valid"] = valid;
    j["image_valid"] = chan_valid;
    identical = same_algebra(chan_to_strict(c), s);
    valid = valid && chan_valid;
  }
  j["result"] = identical ? "identical" : "different";
  emit(cfg, cfg.format == "text" ? j["result"].get<std::string>() + "\n" : dump(j));
  return identical && valid ? kOk : kFailed;
}

int algebra_free(const Config& cfg) {
  auto oc = group_of(cfg);
  const OperadPtr o = io::read_operad(slurp(option(cfg.operad, "--operad")), oc);
  const CoeffSystem x = io::read_coeff_system(slurp(option(cfg.system, "--system")), o->space().category_ptr());
  const CoeffSystem t = free_algebra(o, x);
  if (cfg.format == "text") {
    std::string s;
    for (int h = 0; h < t.category().num_levels(); ++h) s += "level " + std::to_string(h) + ": " + std::to_string(t.size(h)) + "\n";
    emit(cfg, s);
  } else {
    emit(cfg, io::write_coeff_system(t));
  }
  return kOk;
}

int algebra_mackey(const Config& cfg) {
  emit(cfg, io::write_mackey(strict_to_mackey(algebra_input(input(cfg, 0), group_of(cfg)))));
  return kOk;
}

void fail(const std::string& kind, const std::string& reason) {
  std::cerr << json({{"error", kind}, {"reason", reason}}).dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariant algebra calculus: weak indexing systems, genuine operads and strict algebras."};
  app.require_subcommand(1);
  Config cfg;
  auto common = [&](CLI::App* c) {
    c->add_option("--group", cfg.group, "group document");
    c->add_option("--bound", cfg.bound, "arity or cardinality bound");
    c->add_option("--mode", cfg.mode, "sparse | truncated | exact-indexing");
    c->add_option("--format", cfg.format, "json | dot | text")->check(CLI::IsMember({"json", "dot", "text"}));
    c->add_option("--seed", cfg.seed, "sampling seed");
    c->add_option("--out", cfg.out, "output path (written only on success)");
    c->add_option("inputs", cfg.inputs, "input documents");
  };
  std::function<int()> run;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, std::function<int()> body) {
    CLI::App* c = parent->add_subcommand(name, help);
    common(c);
    c->callback([&run, body] { run = body; });
    return c;
  };

  CLI::App* windex = app.add_subcommand("windex", "weak indexing systems");
  windex->require_subcommand(1);
  leaf(windex, "validate", "check the axioms of a system", [&] { return windex_validate(cfg); });
  leaf(windex, "enumerate", "all systems of a group", [&] { return windex_enumerate(cfg); });
  leaf(windex, "join", "least upper bound of two systems", [&] { return windex_binary(cfg, "join"); });
  leaf(windex, "meet", "greatest lower bound of two systems", [&] { return windex_binary(cfg, "meet"); });
  leaf(windex, "leq", "containment of two systems", [&] { return windex_binary(cfg, "leq"); });
  leaf(windex, "hasse", "Hasse diagram of the enumerated poset", [&] { return windex_hasse(cfg); });

  CLI::App* operad = app.add_subcommand("operad", "discrete genuine operads");
  operad->require_subcommand(1);
  leaf(operad, "validate", "check the operad axioms", [&] { return operad_validate(cfg); });
  leaf(operad, "support", "arity support", [&] { return operad_support(cfg); });
  leaf(operad, "h0", "ninfty of the arity support", [&] { return operad_h0(cfg); });
  leaf(operad, "borelify", "empty the inadmissible arities", [&] { return operad_borelify(cfg); })
      ->add_option("--indexing", cfg.indexing, "weak indexing system document");
  leaf(operad, "maps-to-ninfty", "whether a map to ninfty exists", [&] { return operad_maps(cfg); })
      ->add_option("--indexing", cfg.indexing, "weak indexing system document");
  leaf(operad, "tabulate", "materialize every structure map", [&] { return operad_tabulate(cfg); });

  CLI::App* algebra = app.add_subcommand("algebra", "strict algebras");
  algebra->require_subcommand(1);
  leaf(algebra, "validate", "check a strict algebra or norm data", [&] { return algebra_validate(cfg); });
  leaf(algebra, "morphism", "morphism check, full and fast", [&] { return algebra_morphism_cmd(cfg); })
      ->add_option("--map", cfg.map, "coefficient map document");
  leaf(algebra, "chan-roundtrip", "translate to the other model and back", [&] { return algebra_roundtrip(cfg); });
  CLI::App* free = leaf(algebra, "free", "free algebra on a coefficient system", [&] { return algebra_free(cfg); });
  free->add_option("--operad", cfg.operad, "operad document");
  free->add_option("--system", cfg.system, "coefficient system document");
  leaf(algebra, "mackey", "semi-Mackey functor of an algebra", [&] { return algebra_mackey(cfg); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    fail("usage", e.what());
    return kError;
  }
  try {
    return run();
  } catch (const SchemaError& e) {
    fail("schema", e.what());
  } catch (const CapExceeded& e) {
    fail("cap", e.what());
  } catch (const InvalidArgument& e) {
    fail("invalid-argument", e.what());
  } catch (const UsageError& e) {
    fail("usage", e.what());
  } catch (const std::exception& e) {
    fail("internal", e.what());
  }
  return kError;
}
