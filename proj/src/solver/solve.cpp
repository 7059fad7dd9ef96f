#include "fqbool/solver.hpp"

#include "engine.hpp"
#include "fqbool/errors.hpp"
#include "fqbool/opb.hpp"

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace fqb {

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::Exhaustive: return "exhaustive";
    case Backend::Backtracking: return "backtracking";
    case Backend::External: return "external";
  }
  return "?";
}

Backend backend_from_name(const std::string& s) {
  if (s == "exhaustive") return Backend::Exhaustive;
  if (s == "backtracking") return Backend::Backtracking;
  if (s == "external") return Backend::External;
  throw Error(Errc::InvalidArgument, "unknown backend '" + s + "'");
}

const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Sat: return "sat";
    case SolveStatus::Unsat: return "unsat";
    case SolveStatus::Unknown: return "unknown";
  }
  return "?";
}

namespace {

void check_literals(const BooleanSystem& sys, const std::vector<Literal>& lits) {
  for (auto [v, b] : lits)
    if (v >= sys.num_vars()) throw Error(Errc::InvalidArgument, "assumption on unknown variable");
}

// Canonical-preimage rows, minus any that touch an assumed variable (the
// caller may have pinned a non-canonical preimage on purpose).
std::vector<SparsePoly> symmetry_rows(const BooleanSystem& sys, const BackendConfig& cfg,
                                      const std::vector<Literal>& assumptions, const std::vector<VarId>& project) {
  std::vector<SparsePoly> rows;
  if (!cfg.symmetry_breaking) return rows;
  std::set<VarId> pinned;
  for (auto [v, b] : assumptions) pinned.insert(v);
  for (VarId v : project) pinned.insert(v);
  for (auto& r : detail::canonical_rows(sys)) {
    bool clash = false;
    for (VarId v : r.variables()) clash = clash || pinned.count(v);
    if (!clash) rows.push_back(std::move(r));
  }
  return rows;
}

template <class Num>
SolveOutcome run_backtracking(const BooleanSystem& sys, const std::vector<SparsePoly>& ge,
                              const std::vector<Literal>& assumptions, const detail::Deadline& dl) {
  auto C = detail::compile<Num>(sys.num_vars(), sys.equations(), ge);
  detail::Backtracker<Num> bt(C, dl);
  SolveOutcome out;
  out.status = bt.run(assumptions, {}, [&](const Assignment& a) {
    out.assignment = a;
    return false;
  });
  out.nodes = bt.nodes();
  if (out.status == SolveStatus::Unknown) out.reason = "timeout";
  return out;
}

std::string run_command(const std::string& cmd) {
  std::FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) throw Error(Errc::IoError, "cannot run external solver");
  std::string text;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) text.append(buf.data(), n);
  ::pclose(pipe);
  return text;
}

SolveOutcome run_external(const BooleanSystem& base, const BackendConfig& cfg, const std::vector<Literal>& assumptions) {
  if (cfg.external_command.empty()) throw Error(Errc::InvalidArgument, "external backend needs a command");
  BooleanSystem sys = base;
  for (auto [v, b] : assumptions) {
    SparsePoly f = SparsePoly::variable(Ring::integers(), v);
    if (b) f -= SparsePoly::constant(Ring::integers(), 1);
    sys.add_equation(f, "assumption");
  }
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / ("fqbool-" + std::to_string(::getpid()) + "-" +
                                                     std::to_string(reinterpret_cast<std::uintptr_t>(&sys)) + ".opb");
  {
    std::ofstream f(path);
    export_opb(sys, f);
    if (!f) throw Error(Errc::IoError, "cannot write " + path.string());
  }
  std::string cmd = cfg.external_command;
  for (std::size_t at; (at = cmd.find("{opb}")) != std::string::npos;) cmd.replace(at, 5, path.string());
  if (cfg.external_command.find("{opb}") == std::string::npos) cmd += " " + path.string();
  const std::string text = run_command(cmd);
  std::error_code ec;
  fs::remove(path, ec);

  SolveOutcome out;
  std::string vlines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("s ", 0) == 0) {
      if (line.find("UNSAT") != std::string::npos)
        out.status = SolveStatus::Unsat;
      else if (line.find("SATISFIABLE") != std::string::npos || line.find("OPTIMUM") != std::string::npos)
        out.status = SolveStatus::Sat;
    } else if (line.rfind("v ", 0) == 0) {
      vlines += line.substr(2) + " ";
    }
  }
  if (out.status == SolveStatus::Sat) {
    out.assignment = import_and_verify(sys, vlines, opb_sidecar(sys));
  } else if (out.status == SolveStatus::Unknown) {
    out.reason = "external solver gave no verdict";
  }
  return out;
}

}  // namespace

SolveOutcome solve(const BooleanSystem& sys, const BackendConfig& cfg, const std::vector<Literal>& assumptions) {
  check_literals(sys, assumptions);
  const detail::Deadline dl(cfg.time_limit);
  SolveOutcome out;
  switch (cfg.backend) {
    case Backend::Exhaustive: {
      if (sys.num_vars() > cfg.var_limit) {
        out.reason = "too many variables";
        return out;
      }
      if (detail::fits_machine_words(sys.equations(), {}))
        out = detail::exhaustive(detail::compile<std::int64_t>(sys.num_vars(), sys.equations(), {}), assumptions, dl);
      else
        out = detail::exhaustive(detail::compile<Int>(sys.num_vars(), sys.equations(), {}), assumptions, dl);
      break;
    }
    case Backend::Backtracking: {
      const auto ge = symmetry_rows(sys, cfg, assumptions, {});
      if (detail::fits_machine_words(sys.equations(), ge))
        out = run_backtracking<std::int64_t>(sys, ge, assumptions, dl);
      else
        out = run_backtracking<Int>(sys, ge, assumptions, dl);
      break;
    }
    case Backend::External:
      out = run_external(sys, cfg, assumptions);
      break;
  }
  if (out.status == SolveStatus::Sat && !satisfies(sys, out.assignment))
    throw std::logic_error(std::string("solver returned a non-solution (") + backend_name(cfg.backend) + ")");
  return out;
}

SolveStatus enumerate_projected(const BooleanSystem& sys, const BackendConfig& cfg, const std::vector<VarId>& project,
                                const std::function<bool(const Assignment&)>& on_solution) {
  for (VarId v : project)
    if (v >= sys.num_vars()) throw Error(Errc::InvalidArgument, "projection on unknown variable");
  const detail::Deadline dl(cfg.time_limit);
  const auto ge = symmetry_rows(sys, cfg, {}, project);
  auto check = [&](const Assignment& a) {
    if (!satisfies(sys, a)) throw std::logic_error("enumeration produced a non-solution");
    return on_solution(a);
  };
  // An empty projection still means "one witness".
  if (detail::fits_machine_words(sys.equations(), ge)) {
    auto C = detail::compile<std::int64_t>(sys.num_vars(), sys.equations(), ge);
    return detail::Backtracker<std::int64_t>(C, dl).run({}, project, check);
  }
  auto C = detail::compile<Int>(sys.num_vars(), sys.equations(), ge);
  return detail::Backtracker<Int>(C, dl).run({}, project, check);
}

}  // namespace fqb
