// Writes the example corpus, or with --check compares it against a directory.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "eqv/algebra.hpp"
#include "eqv/io.hpp"

using namespace eqv;
namespace fs = std::filesystem;

namespace {

using Corpus = std::map<std::string, std::string>;

CoeffSystem cyclic(const OrbitCategoryPtr& oc, int n) {
  std::vector<std::vector<int>> add(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) add[a][b] = (a + b) % n;
  return constant_monoid(oc, add, 0);
}

// Norms multiplying by the index, on a constant monoid.
ChanData index_norms(const CoeffSystem& x, const WeakIndexingSystem& w) {
  const OrbitCategory& oc = x.category();
  ChanData c{x, w, {}};
  for (int h = 0; h < oc.num_levels(); ++h)
    for (int t = 0; t < oc.num_types(h); ++t) {
      if (t == oc.point_type(h)) continue;
      LevelSet s = empty_set(oc, h);
      s.counts[t] = 1;
      if (cardinality(oc, s) > w.bound() || !w.contains(s)) continue;
      const int k = oc.type(h, t).cls;
      const int index = oc.level_order(h) / oc.level_order(k);
      std::vector<int> table;
      for (int v = 0; v < x.size(k); ++v) {
        int acc = x.zero(h);
        for (int i = 0; i < index; ++i) acc = x.add(h, acc, v);
        table.push_back(acc);
      }
      c.norms.emplace(std::make_pair(h, t), table);
    }
  return c;
}

// X^e = Z/2, X^{C2} = Z/2 x Z/2 (code 2a + b) restricting to a; norm x -> (0, phi(x)).
ChanData split_c2(const OrbitCategoryPtr& oc, const WeakIndexingSystem& w, bool phi) {
  std::vector<std::vector<int>> res;
  for (int m = 0; m < oc->num_morphisms(); ++m) {
    const auto& mor = oc->morphism(m);
    if (mor.src == mor.tgt)
      res.push_back(mor.src == 0 ? std::vector<int>{0, 1} : std::vector<int>{0, 1, 2, 3});
    else
      res.push_back({0, 0, 1, 1});
  }
  MonoidData d;
  d.add = {{{0, 1}, {1, 0}}, std::vector<std::vector<int>>(4, std::vector<int>(4))};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) d.add[1][a][b] = a ^ b;
  d.zero = {0, 0};
  ChanData c{CoeffSystem(oc, {2, 4}, res, d), w, {}};
  c.norms[{oc->top(), oc->type_of(oc->top(), 0, 0)}] = phi ? std::vector<int>{0, 1} : std::vector<int>{0, 0};
  return c;
}

void add_algebra(Corpus& out, const std::string& stem, const ChanData& c) {
  out["algebras/" + stem + ".chan.json"] = io::write_chan(c);
  out["algebras/" + stem + ".strict.json"] = io::write_algebra(chan_to_strict(c));
}

Corpus build() {
  Corpus out;
  for (const std::string name : {"C2", "C4", "C2xC2", "S3"}) {
    auto oc = OrbitCategory::make(named_group(name));
    std::string dir = name;
    for (char& ch : dir) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    Corpus c;
    const int order = oc->group().order();
    // C2 at bound 3 so that the sparse set pt + [C2/e] is in range.
    const int bound = order == 2 ? 3 : std::max(2, order);
    auto u = std::make_shared<SetUniverse>(oc, bound);
    c["group.json"] = io::write_group(oc->group());

    const auto indexing = enumerate(u, EnumMode::ExactIndexing);
    const WeakIndexingSystem complete = complete_system(u);
    c["windex/minimal.json"] = io::write_windex(minimal_system(u));
    c["windex/complete.json"] = io::write_windex(complete);
    if (order <= 4)
      for (std::size_t i = 0; i < indexing.size(); ++i)
        c["windex/indexing_" + std::to_string(i) + ".json"] = io::write_windex(indexing[i]);
    // Drop 2 * pt at the bottom level: every free orbit above restricts to it.
    std::vector<char> bits = complete.bits();
    bits[u->offset(0) + u->index_of(point(*oc, 0, 2))] = 0;
    c["windex/invalid.json"] = io::write_windex(WeakIndexingSystem(u, bits));

    c["operads/comm.json"] = io::write_builtin(oc->group(), "comm", 3);
    c["operads/triv.json"] = io::write_builtin(oc->group(), "triv", 3);
    c["operads/ninfty_complete.json"] = io::write_ninfty(complete, std::min(bound, 3));
    c["operads/ninfty_minimal.json"] = io::write_ninfty(minimal_system(u), std::min(bound, 3));
    c["systems/const2.json"] = io::write_coeff_system(constant_system(oc, 2));
    c["systems/trunc2.json"] = io::write_coeff_system(truncated_naturals(oc, 2));
    c["algebras/terminal.strict.json"] = io::write_algebra(terminal_algebra(complete));

    if (name == "C2") {
      const GSet swap(oc->group_ptr(), whole_group(oc->group()), 2, {{0, 1}, {1, 0}});
      c["operads/end_swap.json"] = io::write_end(swap, 2);
      // One composite changed: the validator must locate it.
      auto t = tabulate(*endomorphism_operad(oc, swap, 2));
      for (auto it = t->gamma_table().rbegin(); it != t->gamma_table().rend(); ++it) {
        const int n = t->sizes()[t->space().gamma_target(it->first.first, it->first.second)];
        if (n < 2) continue;
        it->second.back() = (it->second.back() + 1) % n;
        break;
      }
      c["operads/end_swap_mutated.json"] = io::write_operad(*t);
      add_algebra(c, "z2_zero_norm", ChanData{cyclic(oc, 2), complete, {{{oc->top(), oc->type_of(oc->top(), 0, 0)}, {0, 0}}}});
      add_algebra(c, "z3_index", index_norms(cyclic(oc, 3), complete));
      add_algebra(c, "trunc3_double", index_norms(truncated_naturals(oc, 3), complete));
      add_algebra(c, "split_norm", split_c2(oc, complete, true));
      add_algebra(c, "split_zero", split_c2(oc, complete, false));
      c["algebras/split_identity.map.json"] = io::write_coeff_map({{0, 1}, {0, 1, 2, 3}});
      c["algebras/z3_double.map.json"] = io::write_coeff_map({{0, 2, 1}, {0, 2, 1}});
    }
    if (name == "C4") {
      for (std::size_t i = 0; i < indexing.size(); ++i)
        add_algebra(c, "z2_index_" + std::to_string(i), index_norms(cyclic(oc, 2), indexing[i]));
      add_algebra(c, "trunc2_index", index_norms(truncated_naturals(oc, 2), complete));
    }
    if (name == "C2xC2") add_algebra(c, "z2_index", index_norms(cyclic(oc, 2), complete));
    for (auto& [path, text] : c) out[dir + "/" + path] = std::move(text);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const bool check = argc == 3 && std::string(argv[1]) == "--check";
  if (argc != 2 && !check) {
    std::cerr << "usage: eqv_corpus DIR | eqv_corpus --check DIR\n";
    return 2;
  }
  const fs::path root = argv[argc - 1];
  const Corpus corpus = build();
  int mismatches = 0;
  for (const auto& [path, text] : corpus) {
    const fs::path file = root / path;
    if (check) {
      std::ifstream in(file, std::ios::binary);
      std::ostringstream s;
      s << in.rdbuf();
      if (!in || s.str() != text) {
        std::cerr << "differs: " << path << "\n";
        ++mismatches;
      }
      continue;
    }
    fs::create_directories(file.parent_path());
    std::ofstream(file, std::ios::binary) << text;
  }
  if (check) std::cout << corpus.size() - mismatches << "/" << corpus.size() << " corpus files reproduced\n";
  return mismatches == 0 ? 0 : 1;
}
