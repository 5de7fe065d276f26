#include "eqv/io.hpp"

#include <json.hpp>

#include "eqv/error.hpp"

namespace eqv::io {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("not JSON: ") + e.what());
  }
}

[[noreturn]] void bad(const std::string& where, const std::string& what) { throw SchemaError(where + ": " + what); }

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing \"") + key + "\"");
  return *it;
}

int as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<int>();
}

std::vector<int> int_list(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_int(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::vector<int>> int_table(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array");
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(int_list(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

void check_header(const json& j, const std::string& kind, bool nested) {
  if (!j.is_object()) bad(kind, "expected an object");
  if (!nested || j.contains("schema")) {
    const int s = as_int(field(j, "schema", kind), kind + ".schema");
    if (s != kSchema) bad(kind, "unsupported schema " + std::to_string(s));
  }
  if (j.contains("kind") && j["kind"] != kind) bad(kind, "document is a " + j["kind"].dump());
  if (!nested && !j.contains("kind")) bad(kind, "missing \"kind\"");
}

// ---- groups ----

Group group_of(const json& j) {
  try {
    if (j.is_string()) return named_group(j.get<std::string>());
    if (j.contains("table")) {
      const std::string name = j.value("name", std::string());
      return Group::from_table(name, int_table(j["table"], "group.table"));
    }
    if (j.contains("generators")) {
      const int degree = as_int(field(j, "degree", "group"), "group.degree");
      return group_from_generators(degree, int_table(j["generators"], "group.generators"), kDefaultGroupCap,
                                   j.value("name", std::string()));
    }
    if (j.contains("name")) return named_group(j["name"].get<std::string>());
  } catch (const InvalidArgument& e) {
    bad("group", e.what());
  } catch (const json::exception& e) {
    bad("group", e.what());
  }
  bad("group", "needs \"name\", \"table\" or \"generators\"");
}

json group_json(const Group& g) {
  json j = {{"name", g.name()}, {"order", g.order()}};
  bool named = false;
  try {
    named = !g.name().empty() && named_group(g.name()) == g;
  } catch (const InvalidArgument&) {
  }
  if (!named) j["table"] = g.table();
  return j;
}

OrbitCategoryPtr category_of(const json& doc, OrbitCategoryPtr oc, const std::string& where) {
  if (!doc.contains("group")) {
    if (!oc) bad(where, "missing \"group\"");
    return oc;
  }
  const Group g = group_of(doc["group"]);
  if (oc) {
    if (!(oc->group() == g)) bad(where, "group differs from the one in use");
    return oc;
  }
  return OrbitCategory::make(g);
}

json morphism_ref(const OrbitCategory& oc, int m) {
  const auto& mor = oc.morphism(m);
  return {{"src", mor.src}, {"tgt", mor.tgt}, {"elt", mor.elt}};
}

int morphism_of(const OrbitCategory& oc, const json& j, const std::string& where) {
  const int src = as_int(field(j, "src", where), where + ".src");
  const int tgt = as_int(field(j, "tgt", where), where + ".tgt");
  const int elt = as_int(field(j, "elt", where), where + ".elt");
  if (src < 0 || tgt < 0 || src >= oc.num_levels() || tgt >= oc.num_levels() || elt < 0 ||
      elt >= oc.group().order())
    bad(where, "no such morphism");
  const int m = oc.find_morphism(src, tgt, elt);
  if (m < 0) bad(where, "no such morphism");
  return m;
}

json orbit_types(const OrbitCategory& oc) {
  json out = json::array();
  for (int h = 0; h < oc.num_levels(); ++h) {
    json level = json::array();
    for (int t = 0; t < oc.num_types(h); ++t)
      level.push_back({{"class", oc.type(h, t).cls}, {"size", oc.type(h, t).size}});
    out.push_back(level);
  }
  return out;
}

// ---- level sets ----

json level_set_json(const LevelSet& s) { return {{"level", s.level}, {"counts", s.counts}}; }

LevelSet level_set_of(const OrbitCategory& oc, const json& j, const std::string& where) {
  LevelSet s;
  s.level = as_int(field(j, "level", where), where + ".level");
  if (s.level < 0 || s.level >= oc.num_levels()) bad(where, "no such level");
  s.counts = int_list(field(j, "counts", where), where + ".counts");
  if (static_cast<int>(s.counts.size()) != oc.num_types(s.level)) bad(where, "one count per orbit type expected");
  for (int c : s.counts)
    if (c < 0) bad(where, "negative count");
  return s;
}

// ---- coefficient systems ----

json coeff_json(const CoeffSystem& x) {
  const OrbitCategory& oc = x.category();
  json j;
  json levels = json::array();
  for (int h = 0; h < oc.num_levels(); ++h)
    levels.push_back({{"class", h}, {"subgroup", oc.rep(h).elements}, {"size", x.size(h)}});
  j["levels"] = levels;
  json res = json::array();
  for (int m = 0; m < oc.num_morphisms(); ++m) {
    if (m == oc.identity(oc.morphism(m).src)) continue;
    json r = morphism_ref(oc, m);
    r["table"] = x.restriction()[m];
    res.push_back(r);
  }
  j["restrictions"] = res;
  if (x.has_monoid()) j["monoid"] = {{"add", x.monoid().add}, {"zero", x.monoid().zero}};
  return j;
}

CoeffSystem coeff_of(const json& j, const OrbitCategoryPtr& oc, const std::string& where) {
  const json& levels = field(j, "levels", where);
  if (!levels.is_array() || static_cast<int>(levels.size()) != oc->num_levels())
    bad(where, "one entry per subgroup class expected");
  std::vector<int> sizes(oc->num_levels(), -1);
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const std::string w = where + ".levels[" + std::to_string(i) + "]";
    const int h = as_int(field(levels[i], "class", w), w + ".class");
    if (h < 0 || h >= oc->num_levels() || sizes[h] >= 0) bad(w, "bad or repeated class");
    if (levels[i].contains("subgroup") && int_list(levels[i]["subgroup"], w + ".subgroup") != oc->rep(h).elements)
      bad(w, "subgroup does not match the class representative");
    sizes[h] = as_int(field(levels[i], "size", w), w + ".size");
    if (sizes[h] < 0) bad(w, "negative size");
    if (levels[i].contains("labels") && levels[i]["labels"].size() != static_cast<std::size_t>(sizes[h]))
      bad(w, "one label per element expected");
  }
  std::vector<std::vector<int>> res(oc->num_morphisms());
  std::vector<char> seen(oc->num_morphisms(), 0);
  const json& rs = field(j, "restrictions", where);
  if (!rs.is_array()) bad(where + ".restrictions", "expected an array");
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const std::string w = where + ".restrictions[" + std::to_string(i) + "]";
    const int m = morphism_of(*oc, rs[i], w);
    if (seen[m]) bad(w, "repeated morphism");
    seen[m] = 1;
    res[m] = int_list(field(rs[i], "table", w), w + ".table");
  }
  for (int m = 0; m < oc->num_morphisms(); ++m) {
    const auto& mor = oc->morphism(m);
    if (seen[m]) {
      if (static_cast<int>(res[m].size()) != sizes[mor.tgt])
        bad(where, "restriction table " + morphism_ref(*oc, m).dump() + " has the wrong length");
      for (int v : res[m])
        if (v < 0 || v >= sizes[mor.src]) bad(where, "restriction value out of range in " + morphism_ref(*oc, m).dump());
      continue;
    }
    if (m != oc->identity(mor.src)) bad(where, "missing restriction along " + morphism_ref(*oc, m).dump());
    for (int v = 0; v < sizes[mor.src]; ++v) res[m].push_back(v);
  }
  std::optional<MonoidData> monoid;
  if (j.contains("monoid")) {
    const std::string w = where + ".monoid";
    MonoidData d;
    const json& add = field(j["monoid"], "add", w);
    if (!add.is_array() || static_cast<int>(add.size()) != oc->num_levels()) bad(w, "one table per level expected");
    for (int h = 0; h < oc->num_levels(); ++h) {
      d.add.push_back(int_table(add[h], w + ".add"));
      if (static_cast<int>(d.add[h].size()) != sizes[h]) bad(w, "addition table has the wrong size");
      for (const auto& row : d.add[h]) {
        if (static_cast<int>(row.size()) != sizes[h]) bad(w, "addition table has the wrong size");
        for (int v : row)
          if (v < 0 || v >= sizes[h]) bad(w, "sum out of range");
      }
    }
    d.zero = int_list(field(j["monoid"], "zero", w), w + ".zero");
    if (static_cast<int>(d.zero.size()) != oc->num_levels()) bad(w, "one zero per level expected");
    for (int h = 0; h < oc->num_levels(); ++h)
      if (d.zero[h] < 0 || d.zero[h] >= sizes[h]) bad(w, "zero out of range");
    monoid = std::move(d);
  }
  try {
    return CoeffSystem(oc, sizes, res, monoid);
  } catch (const InvalidArgument& e) {
    bad(where, e.what());
  }
}

// ---- weak indexing systems ----

json windex_json(const WeakIndexingSystem& w) {
  json j;
  j["bound"] = w.bound();
  j["repr"] = w.repr() == Repr::Sparse ? "sparse" : "truncated";
  json adm = json::array();
  for (int h = 0; h < w.universe().num_levels(); ++h)
    for (const LevelSet& s : w.admissible(h)) adm.push_back(level_set_json(s));
  j["admissible"] = adm;
  j["orbit_types"] = orbit_types(w.category());
  return j;
}

WeakIndexingSystem windex_of(const json& j, const OrbitCategoryPtr& oc, const std::string& where) {
  const int bound = as_int(field(j, "bound", where), where + ".bound");
  if (bound < 0) bad(where, "negative bound");
  auto u = std::make_shared<SetUniverse>(oc, bound);
  Repr repr = Repr::Truncated;
  if (j.contains("repr")) {
    if (j["repr"] == "sparse")
      repr = Repr::Sparse;
    else if (j["repr"] != "truncated")
      bad(where, "repr must be \"sparse\" or \"truncated\"");
  }
  const bool gens = j.contains("generators");
  if (gens == j.contains("admissible")) bad(where, "exactly one of \"admissible\" and \"generators\" expected");
  const char* key = gens ? "generators" : "admissible";
  const json& list = j[key];
  if (!list.is_array()) bad(where + "." + key, "expected an array");
  std::vector<LevelSet> sets;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string w = where + "." + key + "[" + std::to_string(i) + "]";
    sets.push_back(level_set_of(*oc, list[i], w));
    if (u->index_of(sets.back()) < 0) bad(w, "set exceeds the bound");
  }
  if (gens) return from_generators(u, sets, repr);
  std::vector<char> bits(u->total_size(), 0);
  for (const LevelSet& s : sets) bits[u->offset(s.level) + u->index_of(s)] = 1;
  return WeakIndexingSystem(u, std::move(bits), repr);
}

// ---- algebras ----

json algebra_json(const StrictAlgebra& a) {
  json j;
  j["system"] = coeff_json(a.x);
  j["indexing"] = windex_json(a.i);
  json mu = json::array();
  for (const auto& [s, table] : a.mu) mu.push_back({{"set", level_set_json(s)}, {"table", table}});
  j["mu"] = mu;
  return j;
}

StrictAlgebra algebra_of(const json& j, const OrbitCategoryPtr& oc, const std::string& where) {
  StrictAlgebra a{coeff_of(field(j, "system", where), oc, where + ".system"),
                  windex_of(field(j, "indexing", where), oc, where + ".indexing"),
                  {}};
  const json& mu = field(j, "mu", where);
  if (!mu.is_array()) bad(where + ".mu", "expected an array");
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const std::string w = where + ".mu[" + std::to_string(i) + "]";
    const LevelSet s = level_set_of(*oc, field(mu[i], "set", w), w + ".set");
    if (!a.mu.emplace(s, int_list(field(mu[i], "table", w), w + ".table")).second) bad(w, "repeated set");
  }
  return a;
}

json chan_json(const ChanData& c) {
  json j;
  j["system"] = coeff_json(c.x);
  j["indexing"] = windex_json(c.i);
  json norms = json::array();
  for (const auto& [key, table] : c.norms) norms.push_back({{"level", key.first}, {"type", key.second}, {"table", table}});
  j["norms"] = norms;
  return j;
}

ChanData chan_of(const json& j, const OrbitCategoryPtr& oc, const std::string& where) {
  ChanData c{coeff_of(field(j, "system", where), oc, where + ".system"),
             windex_of(field(j, "indexing", where), oc, where + ".indexing"),
             {}};
  const json& norms = field(j, "norms", where);
  if (!norms.is_array()) bad(where + ".norms", "expected an array");
  for (std::size_t i = 0; i < norms.size(); ++i) {
    const std::string w = where + ".norms[" + std::to_string(i) + "]";
    const int h = as_int(field(norms[i], "level", w), w + ".level");
    const int t = as_int(field(norms[i], "type", w), w + ".type");
    if (h < 0 || h >= oc->num_levels() || t < 0 || t >= oc->num_types(h)) bad(w, "no such orbit type");
    if (!c.norms.emplace(std::make_pair(h, t), int_list(field(norms[i], "table", w), w + ".table")).second)
      bad(w, "repeated orbit type");
  }
  return c;
}

// ---- operads ----

GSet gset_of(const json& j, const OrbitCategoryPtr& oc, const std::string& where) {
  const int n = as_int(field(j, "size", where), where + ".size");
  auto action = int_table(field(j, "action", where), where + ".action");
  if (static_cast<int>(action.size()) != oc->group().order()) bad(where, "one permutation per group element expected");
  for (const auto& row : action) {
    if (static_cast<int>(row.size()) != n) bad(where, "permutation of the wrong length");
    for (int v : row)
      if (v < 0 || v >= n) bad(where, "point out of range");
  }
  try {
    return GSet(oc->group_ptr(), whole_group(oc->group()), n, std::move(action));
  } catch (const InvalidArgument& e) {
    bad(where, e.what());
  }
}

json operad_json(const DiscreteOperad& o) {
  const auto t = tabulate(o);
  const ProfileSpace& sp = o.space();
  const OrbitCategory& oc = sp.category();
  json j;
  j["builtin"] = "tabulated";
  j["bound"] = sp.bound();
  j["colors"] = coeff_json(sp.colors());
  json profiles = json::array();
  for (int p = 0; p < sp.num_profiles(); ++p) profiles.push_back({{"key", sp.describe(p)}, {"size", t->sizes()[p]}});
  j["profiles"] = profiles;
  j["identities"] = t->identities();
  j["rho"] = t->rho_table();
  json res = json::array();
  for (int m = 0; m < oc.num_morphisms(); ++m) {
    json r = morphism_ref(oc, m);
    json tables = json::object();
    for (int p : sp.profiles_at(oc.morphism(m).tgt)) tables[std::to_string(p)] = t->res_table()[m][p];
    r["tables"] = tables;
    res.push_back(r);
  }
  j["res"] = res;
  json gamma = json::array();
  for (const auto& [key, table] : t->gamma_table())
    gamma.push_back({{"profile", key.first}, {"inputs", key.second}, {"table", table}});
  j["gamma"] = gamma;
  return j;
}

void check_values(const std::vector<int>& row, int n, const std::string& where) {
  for (int v : row)
    if (v < 0 || v >= n) bad(where, "operation out of range");
}

OperadPtr tabulated_of(const json& j, const OrbitCategoryPtr& oc, const std::string& where) {
  const int bound = as_int(field(j, "bound", where), where + ".bound");
  const CoeffSystem colors = coeff_of(field(j, "colors", where), oc, where + ".colors");
  auto sp = std::make_shared<ProfileSpace>(oc, colors, bound);
  auto t = std::make_shared<TabulatedOperad>(sp);
  const json& profiles = field(j, "profiles", where);
  if (!profiles.is_array() || static_cast<int>(profiles.size()) != sp->num_profiles())
    bad(where + ".profiles", "one entry per profile expected (" + std::to_string(sp->num_profiles()) + ")");
  for (int p = 0; p < sp->num_profiles(); ++p) {
    const std::string w = where + ".profiles[" + std::to_string(p) + "]";
    if (profiles[p].contains("key") && profiles[p]["key"] != sp->describe(p)) bad(w, "profile key mismatch");
    t->sizes()[p] = as_int(field(profiles[p], "size", w), w + ".size");
    if (t->sizes()[p] < 0) bad(w, "negative size");
  }
  const auto ids = int_table(field(j, "identities", where), where + ".identities");
  if (ids.size() != t->identities().size()) bad(where + ".identities", "one row per level expected");
  for (std::size_t h = 0; h < ids.size(); ++h) {
    if (ids[h].size() != t->identities()[h].size()) bad(where + ".identities", "one entry per color expected");
    for (std::size_t c = 0; c < ids[h].size(); ++c) {
      const int pp = sp->point_profile(static_cast<int>(h), static_cast<int>(c));
      if (pp >= 0 && t->sizes()[pp] > 0) check_values({ids[h][c]}, t->sizes()[pp], where + ".identities");
    }
  }
  t->identities() = ids;
  const json& rho = field(j, "rho", where);
  if (!rho.is_array() || static_cast<int>(rho.size()) != sp->num_profiles()) bad(where + ".rho", "one entry per profile expected");
  for (int p = 0; p < sp->num_profiles(); ++p) {
    const std::string w = where + ".rho[" + std::to_string(p) + "]";
    auto rows = int_table(rho[p], w);
    if (rows.size() != sp->automorphisms(p).size()) bad(w, "one row per automorphism expected");
    for (std::size_t a = 0; a < rows.size(); ++a) {
      if (static_cast<int>(rows[a].size()) != t->sizes()[p]) bad(w, "row of the wrong length");
      check_values(rows[a], t->sizes()[sp->act(p, static_cast<int>(a))], w);
    }
    t->rho_table()[p] = std::move(rows);
  }
  const json& res = field(j, "res", where);
  if (!res.is_array()) bad(where + ".res", "expected an array");
  std::vector<char> seen(oc->num_morphisms(), 0);
  for (std::size_t i = 0; i < res.size(); ++i) {
    const std::string w = where + ".res[" + std::to_string(i) + "]";
    const int m = morphism_of(*oc, res[i], w);
    if (seen[m]) bad(w, "repeated morphism");
    seen[m] = 1;
    const json& tables = field(res[i], "tables", w);
    for (int p : sp->profiles_at(oc->morphism(m).tgt)) {
      const auto key = std::to_string(p);
      if (!tables.contains(key)) bad(w, "missing profile " + key);
      auto row = int_list(tables[key], w + "." + key);
      if (static_cast<int>(row.size()) != t->sizes()[p]) bad(w, "row of the wrong length");
      check_values(row, t->sizes()[sp->res_target(m, p)], w);
      t->res_table()[m][p] = std::move(row);
    }
  }
  for (int m = 0; m < oc->num_morphisms(); ++m)
    if (!seen[m]) bad(where + ".res", "missing morphism " + morphism_ref(*oc, m).dump());
  const json& gamma = field(j, "gamma", where);
  if (!gamma.is_array()) bad(where + ".gamma", "expected an array");
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    const std::string w = where + ".gamma[" + std::to_string(i) + "]";
    const int p = as_int(field(gamma[i], "profile", w), w + ".profile");
    if (p < 0 || p >= sp->num_profiles()) bad(w, "no such profile");
    const auto qs = int_list(field(gamma[i], "inputs", w), w + ".inputs");
    if (qs.size() != sp->canonical_set(p).orbits.size()) bad(w, "one input per orbit expected");
    std::size_t n = static_cast<std::size_t>(t->sizes()[p]);
    for (int q : qs) {
      if (q < 0 || q >= sp->num_profiles()) bad(w, "no such profile");
      n *= static_cast<std::size_t>(t->sizes()[q]);
    }
    const int target = sp->gamma_target(p, qs);
    if (target < 0) bad(w, "composite beyond the bound");
    auto row = int_list(field(gamma[i], "table", w), w + ".table");
    if (row.size() != n) bad(w, "table of the wrong length");
    check_values(row, t->sizes()[target], w);
    if (!t->gamma_table().emplace(std::make_pair(p, qs), std::move(row)).second) bad(w, "repeated entry");
  }
  return t;
}

OperadPtr operad_of(const json& j, const OrbitCategoryPtr& oc, const std::string& where) {
  const json& b = field(j, "builtin", where);
  if (!b.is_string()) bad(where + ".builtin", "expected a string");
  const std::string kind = b.get<std::string>();
  const int bound = j.contains("bound") ? as_int(j["bound"], where + ".bound") : kDefaultArityBound;
  if (bound < 0) bad(where, "negative bound");
  try {
    if (kind == "comm") return comm(oc, bound);
    if (kind == "triv")
      return triv(j.contains("colors") ? coeff_of(j["colors"], oc, where + ".colors") : terminal_system(oc), bound);
    if (kind == "ninfty") return ninfty(windex_of(field(j, "indexing", where), oc, where + ".indexing"), bound);
    if (kind == "end") return endomorphism_operad(oc, gset_of(field(j, "gset", where), oc, where + ".gset"), bound);
  } catch (const InvalidArgument& e) {
    bad(where, e.what());
  }
  if (kind == "tabulated") return tabulated_of(j, oc, where);
  bad(where + ".builtin", "unknown operad \"" + kind + "\"");
}

template <class F>
auto read_doc(const std::string& text, const std::string& kind, OrbitCategoryPtr oc, F&& body) {
  const json j = parse(text);
  check_header(j, kind, false);
  const OrbitCategoryPtr cat = category_of(j, std::move(oc), kind);
  return body(j, cat);
}

std::string write_doc(const std::string& kind, const Group& g, json body) {
  json j = {{"schema", kSchema}, {"kind", kind}, {"group", group_json(g)}};
  for (auto& [k, v] : body.items()) j[k] = std::move(v);
  return j.dump(2) + "\n";
}

}  // namespace

std::string kind_of(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) bad("document", "missing \"kind\"");
  return j["kind"].get<std::string>();
}

OrbitCategoryPtr read_group(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object()) bad("group", "expected an object");
  if (j.contains("kind") && j["kind"] != "group") {
    check_header(j, j["kind"].get<std::string>(), false);
    return OrbitCategory::make(group_of(field(j, "group", "document")));
  }
  check_header(j, "group", false);
  return OrbitCategory::make(group_of(j));
}

std::string write_group(const Group& g) {
  json j = {{"schema", kSchema}, {"kind", "group"}};
  const json body = group_json(g);
  for (const auto& [k, v] : body.items()) j[k] = v;
  return j.dump(2) + "\n";
}

CoeffSystem read_coeff_system(const std::string& text, OrbitCategoryPtr oc) {
  return read_doc(text, "coeff-system", std::move(oc),
                  [](const json& j, const OrbitCategoryPtr& c) { return coeff_of(j, c, "coeff-system"); });
}

std::string write_coeff_system(const CoeffSystem& x) { return write_doc("coeff-system", x.category().group(), coeff_json(x)); }

CoeffMap read_coeff_map(const std::string& text) {
  const json j = parse(text);
  check_header(j, "coeff-map", false);
  return int_table(field(j, "levels", "coeff-map"), "coeff-map.levels");
}

std::string write_coeff_map(const CoeffMap& f) {
  return json({{"schema", kSchema}, {"kind", "coeff-map"}, {"levels", f}}).dump(2) + "\n";
}

WeakIndexingSystem read_windex(const std::string& text, OrbitCategoryPtr oc) {
  return read_doc(text, "windex", std::move(oc),
                  [](const json& j, const OrbitCategoryPtr& c) { return windex_of(j, c, "windex"); });
}

std::string write_windex(const WeakIndexingSystem& w) { return write_doc("windex", w.category().group(), windex_json(w)); }

StrictAlgebra read_algebra(const std::string& text, OrbitCategoryPtr oc) {
  return read_doc(text, "strict-algebra", std::move(oc),
                  [](const json& j, const OrbitCategoryPtr& c) { return algebra_of(j, c, "strict-algebra"); });
}

std::string write_algebra(const StrictAlgebra& a) {
  return write_doc("strict-algebra", a.x.category().group(), algebra_json(a));
}

ChanData read_chan(const std::string& text, OrbitCategoryPtr oc) {
  return read_doc(text, "chan", std::move(oc), [](const json& j, const OrbitCategoryPtr& c) { return chan_of(j, c, "chan"); });
}

std::string write_chan(const ChanData& c) { return write_doc("chan", c.x.category().group(), chan_json(c)); }

std::string write_mackey(const SemiMackey& m) {
  const OrbitCategory& oc = m.category();
  json transfers = json::array();
  for (int i = 0; i < oc.num_morphisms(); ++i) {
    json r = morphism_ref(oc, i);
    r["table"] = m.transfers()[i];
    transfers.push_back(r);
  }
  return write_doc("semi-mackey", oc.group(), {{"values", coeff_json(m.values())}, {"transfers", transfers}});
}

OperadPtr read_operad(const std::string& text, OrbitCategoryPtr oc) {
  return read_doc(text, "operad", std::move(oc),
                  [](const json& j, const OrbitCategoryPtr& c) { return operad_of(j, c, "operad"); });
}

std::string write_operad(const DiscreteOperad& o) { return write_doc("operad", o.category().group(), operad_json(o)); }

std::string write_ninfty(const WeakIndexingSystem& w, int bound) {
  return write_doc("operad", w.category().group(), {{"builtin", "ninfty"}, {"bound", bound}, {"indexing", windex_json(w)}});
}

std::string write_builtin(const Group& g, const std::string& name, int bound) {
  return write_doc("operad", g, {{"builtin", name}, {"bound", bound}});
}

std::string write_end(const GSet& y, int bound) {
  return write_doc("operad", y.group(),
                   {{"builtin", "end"}, {"bound", bound}, {"gset", {{"size", y.size()}, {"action", y.action()}}}});
}

}  // namespace eqv::io
