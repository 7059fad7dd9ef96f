#include "doctest.h"
#include "fqbool/errors.hpp"
#include "fqbool/opb.hpp"
#include "support.hpp"

#include <sstream>

using namespace fqb;
using fqb::testing::Rng;
using fqb::testing::uniform;

namespace {

BooleanSystem from_text(const std::vector<std::string>& eqs, const std::vector<std::string>& names) {
  BooleanSystem sys;
  for (const auto& n : names) sys.add_var(n, VarClass::Aux);
  VarRegistry reg = sys.names();
  for (const auto& e : eqs) sys.add_equation(parse_poly(e, Ring(), reg), "test");
  return sys;
}

BackendConfig with(Backend b) {
  BackendConfig c;
  c.backend = b;
  return c;
}

// Random multilinear system; planted when `planted`, else arbitrary constants.
BooleanSystem random_boolean_system(Rng& rng, std::size_t n, bool planted) {
  BooleanSystem sys;
  for (std::size_t i = 0; i < n; ++i) sys.add_var("b" + std::to_string(i), VarClass::Aux);
  Assignment hidden(n);
  for (auto& x : hidden) x = rng() & 1;
  const auto neq = uniform(rng, 1, 4);
  for (std::int64_t e = 0; e < neq; ++e) {
    SparsePoly f;
    const auto nt = uniform(rng, 1, 6);
    for (std::int64_t t = 0; t < nt; ++t) {
      std::vector<Monomial::Factor> fs;
      const auto deg = uniform(rng, 1, 3);
      for (std::int64_t d = 0; d < deg; ++d) fs.emplace_back(static_cast<VarId>(uniform(rng, 0, n - 1)), 1);
      const auto c = uniform(rng, -4, 4);
      f.add_term(Monomial::from_factors(fs).multilinear(), c == 0 ? 1 : c);
    }
    const Int at = f.evaluate([&](VarId v) { return Int(hidden[v]); });
    f.add_term(Monomial(), planted ? Int(-at) : Int(uniform(rng, -3, 3)));
    sys.add_equation(f, "rand");
  }
  return sys;
}

}  // namespace

TEST_CASE("evaluate examples") {
  BooleanSystem empty;
  CHECK(evaluate(empty, {}).empty());
  CHECK(satisfies(empty, {}));
  const auto sys = from_text({"X + Y - 1"}, {"X", "Y"});
  CHECK(evaluate(sys, {1, 0}) == std::vector<Int>{0});
  CHECK_THROWS_AS(evaluate(sys, {1}), Error);
}

TEST_CASE("solve examples") {
  for (auto b : {Backend::Exhaustive, Backend::Backtracking}) {
    const auto one = solve(from_text({"X"}, {"X"}), with(b));
    CHECK(one.status == SolveStatus::Sat);
    CHECK(one.assignment == Assignment{0});
    CHECK(solve(from_text({"X + Y - 3"}, {"X", "Y"}), with(b)).status == SolveStatus::Unsat);
  }
}

TEST_CASE("exhaustive refuses large systems") {
  BooleanSystem sys;
  for (int i = 0; i < 31; ++i) sys.add_var("b", VarClass::Aux);
  const auto out = solve(sys, with(Backend::Exhaustive));
  CHECK(out.status == SolveStatus::Unknown);
  CHECK(out.reason == "too many variables");
}

TEST_CASE("backtracking timeout reports unknown") {
  // Subset-sum style system with no solution and little propagation.
  BooleanSystem sys;
  SparsePoly f;
  for (int i = 0; i < 40; ++i) f.add_term(Monomial::var(sys.add_var("b", VarClass::Aux)), 2 * (i % 7) + 2);
  f.add_term(Monomial(), -101);
  sys.add_equation(f, "odd");
  BackendConfig cfg;
  cfg.time_limit = 0.05;
  const auto out = solve(sys, cfg);
  CHECK(out.status != SolveStatus::Sat);
  if (out.status == SolveStatus::Unknown) CHECK(out.reason == "timeout");
}

TEST_CASE("exhaustive and backtracking agree up to 16 variables") {
  Rng rng(123);
  int sat = 0, unsat = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = static_cast<std::size_t>(uniform(rng, 1, 16));
    const auto sys = random_boolean_system(rng, n, trial % 2 == 0);
    const auto a = solve(sys, with(Backend::Exhaustive));
    const auto b = solve(sys, with(Backend::Backtracking));
    REQUIRE(a.status != SolveStatus::Unknown);
    CHECK(a.status == b.status);
    if (b.status == SolveStatus::Sat) {
      CHECK(satisfies(sys, b.assignment));
      ++sat;
    } else {
      ++unsat;
    }
  }
  CHECK(sat > 50);
  CHECK(unsat > 20);
}

TEST_CASE("symmetry breaking never changes satisfiability") {
  Rng rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    PolySystem S = testing::random_system(rng, Ring::mod(5), 2, 2, 3, 3);
    const auto sys = full_reduce(S);
    BackendConfig on, off;
    off.symmetry_breaking = false;
    CHECK(solve(sys, on).status == solve(sys, off).status);
  }
}

TEST_CASE("assumptions") {
  const auto sys = from_text({"X + Y - 1"}, {"X", "Y"});
  for (auto b : {Backend::Exhaustive, Backend::Backtracking}) {
    auto out = solve(sys, with(b), {{0, true}});
    CHECK(out.status == SolveStatus::Sat);
    CHECK(out.assignment == Assignment{1, 0});
    CHECK(solve(sys, with(b), {{0, true}, {1, true}}).status == SolveStatus::Unsat);
  }
}

TEST_CASE("determinism") {
  Rng rng(1);
  const auto sys = random_boolean_system(rng, 14, true);
  const auto a = solve(sys, {}), b = solve(sys, {});
  CHECK(a.assignment == b.assignment);
  CHECK(a.nodes == b.nodes);
}

TEST_CASE("projected enumeration") {
  const auto sys = from_text({"X + Y + Z - 1"}, {"X", "Y", "Z"});
  std::set<Assignment> seen;
  const auto st = enumerate_projected(sys, {}, {0, 1}, [&](const Assignment& a) {
    seen.insert({a[0], a[1]});
    return true;
  });
  CHECK(st == SolveStatus::Sat);
  CHECK(seen == std::set<Assignment>{{0, 0}, {1, 0}, {0, 1}});
}

TEST_CASE("OPB export format") {
  CHECK(export_opb(from_text({"X1 + 2*X2 - 3"}, {"X1", "X2"})) ==
        "* #variable= 2 #constraint= 1\n+1 x1 +2 x2 = 3 ;\n");
  CHECK(export_opb(from_text({"X1*X2 - X2"}, {"X1", "X2"})) ==
        "* #variable= 2 #constraint= 1\n+1 x1 x2 -1 x2 = 0 ;\n");
}

TEST_CASE("OPB round trip through an independent parser") {
  Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const auto sys = random_boolean_system(rng, 8, true);
    const std::string text = export_opb(sys);
    const auto sol = solve(sys, {});
    REQUIRE(sol.status == SolveStatus::Sat);
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    CHECK(line == "* #variable= 8 #constraint= " + std::to_string(sys.num_equations()));
    std::size_t rows = 0;
    while (std::getline(in, line)) {
      ++rows;
      // Tokens: coefficient then literals, until "=".
      std::istringstream ls(line);
      std::string tok;
      long lhs = 0, term = 0;
      bool in_term = false;
      long rhs = 0;
      while (ls >> tok) {
        if (tok == "=") {
          if (in_term) lhs += term;
          ls >> rhs;
          break;
        }
        if (tok[0] == 'x') {
          term *= sol.assignment[std::stoul(tok.substr(1)) - 1];
        } else {
          if (in_term) lhs += term;
          term = std::stol(tok);
          in_term = true;
        }
      }
      CHECK(lhs == rhs);
    }
    CHECK(rows == sys.num_equations());
  }
}

TEST_CASE("solution import") {
  const auto sys = from_text({"X1 - X2 - 1"}, {"X1", "X2"});
  const auto side = opb_sidecar(sys);
  CHECK(import_solution("v x1 -x2", side) == Assignment{1, 0});
  std::size_t missing = 0;
  CHECK(import_solution("x2", side, &missing) == Assignment{0, 1});
  CHECK(missing == 1);
  CHECK_THROWS_AS(import_solution("v y7", side), Error);
  CHECK(import_and_verify(sys, "v x1 -x2", side) == Assignment{1, 0});
  try {
    import_and_verify(sys, "v -x1 -x2", side);
    FAIL("expected mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ExternalSolverMismatch);
  }
}

TEST_CASE("external backend via a shell command") {
  // A stand-in "PB solver" that prints a fixed answer.
  const auto sys = from_text({"X1 - X2 - 1"}, {"X1", "X2"});
  BackendConfig cfg;
  cfg.backend = Backend::External;
  cfg.external_command = "test -s {opb} && printf 's SATISFIABLE\\nv x1 -x2\\n'";
  const auto out = solve(sys, cfg);
  CHECK(out.status == SolveStatus::Sat);
  CHECK(out.assignment == Assignment{1, 0});
  cfg.external_command = "printf 's UNSATISFIABLE\\n' #";
  CHECK(solve(sys, cfg).status == SolveStatus::Unsat);
  cfg.external_command = "printf 's SATISFIABLE\\nv -x1 -x2\\n' #";
  CHECK_THROWS_AS(solve(sys, cfg), Error);
}

TEST_CASE("large coefficients use the exact path") {
  BooleanSystem sys;
  const VarId a = sys.add_var("a", VarClass::Aux), b = sys.add_var("b", VarClass::Aux);
  SparsePoly f;
  const Int big = Int(1) << 80;
  f.add_term(Monomial::var(a), big);
  f.add_term(Monomial::var(b), -big);
  f.add_term(Monomial::from_factors({{a, 1}, {b, 1}}), 1);
  f.add_term(Monomial(), -1);
  sys.add_equation(f, "big");
  for (auto be : {Backend::Exhaustive, Backend::Backtracking}) {
    const auto out = solve(sys, with(be));
    CHECK(out.status == SolveStatus::Sat);
    CHECK(out.assignment == Assignment{1, 1});
  }
}
