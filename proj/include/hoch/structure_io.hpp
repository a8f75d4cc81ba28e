#pragma once

#include <string>
#include <variant>

#include "hoch/dg.hpp"

namespace hoch {

using Structure = std::variant<DGAlgebra, DGCoalgebra>;

// Structure-constant files. Top level: ring, basis, unit or counit, diff,
// mult or comult. Schema errors are InvalidInput naming the JSON pointer
// (and the line for syntax errors). With check, axiom violations throw
// AxiomFailure.
Structure parse_structure(const std::string& text, bool check = true, const std::string& source = "<input>");
Structure parse_structure_file(const std::string& path, bool check = true);

// Inverse of parse_structure; deterministic, two-space indent.
std::string serialize_structure(const Structure& s);
std::string serialize_structure(const DGAlgebra& a);
std::string serialize_structure(const DGCoalgebra& c);

}  // namespace hoch
