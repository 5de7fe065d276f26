#pragma once

#include <string>

#include "eqv/algebra.hpp"
#include "eqv/burnside.hpp"
#include "eqv/coeff_system.hpp"
#include "eqv/operad.hpp"
#include "eqv/windex.hpp"

// JSON documents, all carrying "schema": 1 and a "kind". Readers throw
// SchemaError on malformed input; a document nested in another inherits the
// group of its parent.
namespace eqv::io {

inline constexpr int kSchema = 1;

/// "kind" of a document.
std::string kind_of(const std::string& text);

/// A group document, or the "group" member of any document.
OrbitCategoryPtr read_group(const std::string& text);
std::string write_group(const Group& g);

/// When `oc` is given the document's group must agree with it.
CoeffSystem read_coeff_system(const std::string& text, OrbitCategoryPtr oc = nullptr);
std::string write_coeff_system(const CoeffSystem& x);

CoeffMap read_coeff_map(const std::string& text);
std::string write_coeff_map(const CoeffMap& f);

/// "admissible" is taken verbatim; "generators" is closed up.
WeakIndexingSystem read_windex(const std::string& text, OrbitCategoryPtr oc = nullptr);
std::string write_windex(const WeakIndexingSystem& w);

StrictAlgebra read_algebra(const std::string& text, OrbitCategoryPtr oc = nullptr);
std::string write_algebra(const StrictAlgebra& a);

ChanData read_chan(const std::string& text, OrbitCategoryPtr oc = nullptr);
std::string write_chan(const ChanData& c);

std::string write_mackey(const SemiMackey& m);

/// Builtins ("comm", "triv", "ninfty", "end") or "tabulated" tables.
OperadPtr read_operad(const std::string& text, OrbitCategoryPtr oc = nullptr);
/// Tabulated form of any operad.
std::string write_operad(const DiscreteOperad& o);
/// ninfty(w) as a builtin document.
std::string write_ninfty(const WeakIndexingSystem& w, int bound);
/// "comm" or "triv" (terminal colors) as a builtin document.
std::string write_builtin(const Group& g, const std::string& name, int bound);
/// End(Y) as a builtin document; Y must be a G-set.
std::string write_end(const GSet& y, int bound);

}  // namespace eqv::io
