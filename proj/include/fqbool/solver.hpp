#pragma once

#include "fqbool/boolsys.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace fqb {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed2024u;

enum class Backend { Exhaustive, Backtracking, External };
const char* backend_name(Backend b);
Backend backend_from_name(const std::string& s);

struct BackendConfig {
  Backend backend = Backend::Backtracking;
  std::size_t var_limit = 30;      // Exhaustive refuses larger systems
  double time_limit = 0;           // seconds; 0 = unlimited
  std::uint64_t seed = kDefaultSeed;
  double epsilon = 0;              // accepted for interface parity; exact backends ignore it
  // Backtracking only: restrict non-injective theta expansions to one
  // canonical preimage per value (never changes satisfiability).
  bool symmetry_breaking = true;
  // External only: command line, "{opb}" is replaced by the OPB file path.
  std::string external_command;
};

enum class SolveStatus { Sat, Unsat, Unknown };
const char* status_name(SolveStatus s);

struct SolveOutcome {
  SolveStatus status = SolveStatus::Unknown;
  Assignment assignment;  // Sat only; covers the whole registry
  std::string reason;     // Unknown only
  std::uint64_t nodes = 0;
};

using Literal = std::pair<VarId, bool>;

SolveOutcome solve(const BooleanSystem& sys, const BackendConfig& cfg, const std::vector<Literal>& assumptions = {});

// Enumerates every assignment of `project` that extends to a solution (one
// call per distinct projection, in search order). The callback returns false
// to stop early. Returns Unsat if nothing was found, Sat otherwise, Unknown
// on timeout.
SolveStatus enumerate_projected(const BooleanSystem& sys, const BackendConfig& cfg, const std::vector<VarId>& project,
                                const std::function<bool(const Assignment&)>& on_solution);

}  // namespace fqb
