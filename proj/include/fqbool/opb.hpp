#pragma once

#include "fqbool/boolsys.hpp"

#include <iosfwd>
#include <string>

namespace fqb {

// Pseudo-Boolean export: variables x1..xN in registry order, one nonlinear
// equality per equation. The sidecar maps PB names back to registry ids.
void export_opb(const BooleanSystem& sys, std::ostream& out);
std::string export_opb(const BooleanSystem& sys);
json opb_sidecar(const BooleanSystem& sys);

// Parses a PB solver "v" line (leading "v" optional); unmentioned variables
// default to 0 and are reported in `missing`.
Assignment import_solution(const std::string& v_lines, const json& sidecar, std::size_t* missing = nullptr);
// Same, then confirms with evaluate(); throws ExternalSolverMismatch.
Assignment import_and_verify(const BooleanSystem& sys, const std::string& v_lines, const json& sidecar);

}  // namespace fqb
