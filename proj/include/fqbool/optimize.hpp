#pragma once

// Bounded-integer optimization by bisection over Boolean feasibility queries.

#include "fqbool/encode.hpp"
#include "fqbool/solver.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fqb {

// Integer variable with values -shift .. bound-shift.
struct IntVar {
  std::string name;
  Int bound;
  Int shift = 0;
  VarClass cls = VarClass::YBit;
};

// min o(X, Y) subject to F(X, Y) = 0 (mod p), 0 <= g_i <= b_i, e_j = 0,
// with 0 <= o < u on the points of interest.
struct StandardProblem {
  Int p = 2;
  VarRegistry vars;  // X names first, then Y names
  std::vector<std::string> X;
  std::vector<IntVar> Y;
  std::vector<SparsePoly> F;  // over Z_p
  std::vector<Inequality> I;  // over Z
  std::vector<SparsePoly> E;  // over Z, exact equalities
  SparsePoly o;               // over Z
  Int u = 1;
  bool centered = false;  // X in {-(p-1)/2 .. (p-1)/2}
  LiftMode lift = LiftMode::CoeffSum;

  // Registers a variable in `vars` and the matching list.
  VarId add_x(const std::string& name);
  VarId add_y(const std::string& name, const Int& bound, const Int& shift = 0, VarClass cls = VarClass::YBit);
  SparsePoly var(const std::string& name, const Ring& r = Ring::integers()) const;
};

// The fixed part C of every level system plus the encoded objective.
struct Base {
  BooleanSystem C;
  SparsePoly obar;  // objective over Z in Boolean variables
  Int u;
};

Base build_base(const StandardProblem& prob);

struct LevelSystem {
  BooleanSystem sys;
  Int alpha;
  int beta = -1;
  std::vector<VarId> fbits;
  std::size_t delta = 0;  // index of the window equation
};

// C plus alpha + sum_{j<beta} 2^j F_j - obar (no F-bits when beta <= 0).
LevelSystem build_level(const Base& base, const Int& alpha, int beta);

struct OptStep {
  Int alpha, mu;
  int beta = -1;
  SolveStatus outcome = SolveStatus::Unknown;
  std::optional<Int> value;  // objective of the Sat witness
};

struct OptResult {
  enum class Status { Optimal, Infeasible, Unknown };
  Status status = Status::Unknown;
  Int value;
  Assignment witness;                  // over the base system's registry
  std::map<std::string, Int> solution;  // decoded X and Y
  std::vector<OptStep> trace;
  Int alpha, mu;  // bisection state at exit (for resumption when Unknown)
  std::string reason;
};
const char* opt_status_name(OptResult::Status s);

struct OptOptions {
  BackendConfig backend;
  // Called at every loop head with the current [alpha, mu].
  std::function<void(const Int& alpha, const Int& mu)> observer;
};

OptResult qfp_opt(const StandardProblem& prob, const OptOptions& opt = {});
// Same loop on a prebuilt base (systems that are not StandardProblems).
OptResult qfp_opt(const Base& base, const OptOptions& opt = {});

// ceil(log_{4/3} u) + 1.
std::size_t iteration_bound(const Int& u);

struct ShiftedObjective {
  SparsePoly o;
  Int shift;
  Int u;
};
// o + #(o) h_o h^{d_o}, u = 2 #(o) h_o h^{d_o} + 1; h = max |variable value|.
ShiftedObjective shift_objective(const StandardProblem& prob, const SparsePoly& o);

// Checks a decoded point against the original constraints.
bool feasible(const StandardProblem& prob, const std::map<std::string, Int>& point);
Int objective_value(const StandardProblem& prob, const std::map<std::string, Int>& point);

json problem_to_json(const StandardProblem& prob);
StandardProblem problem_from_json(const json& j);
json result_to_json(const OptResult& r);
json step_to_json(const OptStep& s);

}  // namespace fqb
