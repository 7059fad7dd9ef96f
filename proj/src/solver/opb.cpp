#include "fqbool/opb.hpp"

#include "fqbool/errors.hpp"

#include <ostream>
#include <sstream>

namespace fqb {

void export_opb(const BooleanSystem& sys, std::ostream& out) {
  out << "* #variable= " << sys.num_vars() << " #constraint= " << sys.num_equations() << "\n";
  for (const auto& f : sys.equations()) {
    Int rhs = 0;
    bool any = false;
    for (const auto& [m, c] : f.terms()) {
      if (m.is_constant()) {
        rhs = -c;
        continue;
      }
      out << (c > 0 ? "+" : "") << to_string(c);
      for (const auto& [v, e] : m.factors()) out << " x" << (v + 1);
      out << ' ';
      any = true;
    }
    // Constant-only rows still need a left-hand side.
    if (!any) out << (sys.num_vars() ? "+0 x1 " : "");
    out << "= " << to_string(rhs) << " ;\n";
  }
  if (!out) throw Error(Errc::IoError, "OPB write failed");
}

std::string export_opb(const BooleanSystem& sys) {
  std::ostringstream s;
  export_opb(sys, s);
  return s.str();
}

json opb_sidecar(const BooleanSystem& sys) {
  json vars = json::array();
  for (const auto& v : sys.registry()) vars.push_back({{"pb", "x" + std::to_string(v.id + 1)}, {"id", v.id}, {"name", v.name}});
  return {{"format", "opb"}, {"variables", std::move(vars)}};
}

Assignment import_solution(const std::string& v_lines, const json& sidecar, std::size_t* missing) {
  const auto& vars = sidecar.at("variables");
  std::map<std::string, VarId> index;
  for (const auto& v : vars) index[v.at("pb").get<std::string>()] = v.at("id").get<VarId>();
  Assignment a(vars.size(), 0);
  std::vector<std::uint8_t> seen(vars.size(), 0);
  std::istringstream in(v_lines);
  for (std::string tok; in >> tok;) {
    if (tok == "v") continue;
    bool neg = false;
    if (tok[0] == '-' || tok[0] == '~') {
      neg = true;
      tok.erase(0, 1);
    }
    auto it = index.find(tok);
    if (it == index.end()) throw Error(Errc::ParseError, "unknown literal '" + tok + "' in solution line");
    a.at(it->second) = !neg;
    seen[it->second] = 1;
  }
  if (missing) {
    *missing = 0;
    for (auto s : seen) *missing += !s;
  }
  return a;
}

Assignment import_and_verify(const BooleanSystem& sys, const std::string& v_lines, const json& sidecar) {
  Assignment a = import_solution(v_lines, sidecar);
  if (a.size() != sys.num_vars() || !satisfies(sys, a))
    throw Error(Errc::ExternalSolverMismatch, "imported assignment does not solve the system");
  return a;
}

}  // namespace fqb
