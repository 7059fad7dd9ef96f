#pragma once

// Shared fixtures and brute-force oracles for the test executables.

#include "fqbool/encode.hpp"
#include "fqbool/polyio.hpp"
#include "fqbool/solver.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace fqb::testing {

using Rng = std::mt19937_64;

// Uniform integer in [lo, hi]; avoids the implementation-defined distributions.
inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(rng() % span);
}

// Every element of a finite ring, as packed Ints.
inline std::vector<Int> elements(const Ring& r) {
  std::vector<Int> out;
  for (Int a = 0; a < r.order(); ++a) out.push_back(a);
  return out;
}

inline std::vector<std::string> var_names(std::size_t n, const std::string& stem = "x") {
  std::vector<std::string> v;
  for (std::size_t i = 1; i <= n; ++i) v.push_back(stem + std::to_string(i));
  return v;
}

inline Monomial random_monomial(Rng& rng, std::size_t nvars, unsigned max_deg) {
  std::vector<Monomial::Factor> f;
  unsigned left = static_cast<unsigned>(uniform(rng, 0, max_deg));
  while (left > 0) {
    const auto v = static_cast<VarId>(uniform(rng, 0, static_cast<std::int64_t>(nvars) - 1));
    const auto e = static_cast<unsigned>(uniform(rng, 1, left));
    f.emplace_back(v, e);
    left -= e;
  }
  return Monomial::from_factors(std::move(f));
}

inline SparsePoly random_poly(Rng& rng, const Ring& r, std::size_t nvars, unsigned max_deg, std::size_t max_terms) {
  SparsePoly f(r);
  const std::int64_t cmax = r.is_integers() ? 5 : static_cast<std::int64_t>(r.order() - 1);
  const auto t = uniform(rng, 1, static_cast<std::int64_t>(max_terms));
  for (std::int64_t i = 0; i < t; ++i) {
    Int c = uniform(rng, r.is_integers() ? -cmax : 1, cmax);
    if (c == 0) c = 1;
    f.add_term(random_monomial(rng, nvars, max_deg), c);
  }
  return f;
}

inline PolySystem random_system(Rng& rng, const Ring& r, std::size_t nvars, std::size_t npolys, unsigned max_deg,
                                std::size_t max_terms) {
  PolySystem S;
  S.ring = r;
  for (const auto& n : var_names(nvars)) S.vars.add(n);
  for (std::size_t i = 0; i < npolys; ++i) S.polys.push_back(random_poly(rng, r, nvars, max_deg, max_terms));
  return S;
}

// Calls fn(point) for every point of R^n.
template <class Fn>
void for_each_point(const std::vector<Int>& values, std::size_t n, Fn&& fn) {
  std::vector<std::size_t> idx(n, 0);
  std::vector<Int> pt(n, values.empty() ? Int(0) : values[0]);
  for (;;) {
    for (std::size_t i = 0; i < n; ++i) pt[i] = values[idx[i]];
    fn(static_cast<const std::vector<Int>&>(pt));
    std::size_t i = 0;
    while (i < n && ++idx[i] == values.size()) idx[i++] = 0;
    if (i == n) return;
  }
}

// V(F) over the system's ring, by exhaustive evaluation.
inline std::set<std::vector<Int>> brute_roots(const PolySystem& S) {
  std::set<std::vector<Int>> roots;
  for_each_point(elements(S.ring), S.vars.size(), [&](const std::vector<Int>& pt) {
    for (const auto& f : S.polys)
      if (f.evaluate([&](VarId v) { return pt[v]; }) != 0) return;
    roots.insert(pt);
  });
  return roots;
}

// Decoded solution set of a reduced system, projected on the original
// variables (packed field elements for extension rings).
inline std::set<std::vector<Int>> decoded_roots(const BooleanSystem& sys, const PolySystem& S,
                                                const BackendConfig& cfg = {}) {
  std::vector<VarId> project;
  for (const auto& e : sys.decode_map())
    for (const auto& [b, w] : e.weights) project.push_back(b);
  std::set<std::vector<Int>> out;
  const auto st = enumerate_projected(sys, cfg, project, [&](const Assignment& a) {
    const auto sol = decode(sys, a);
    std::vector<Int> pt;
    if (sys.field()) {
      const auto packed = decode_field(sys, sol);
      for (const auto& n : S.vars.names()) pt.push_back(packed.at(n));
    } else {
      for (const auto& n : S.vars.names()) pt.push_back(sol.decoded.at(n));
    }
    out.insert(pt);
    return true;
  });
  if (st == SolveStatus::Unknown) throw std::runtime_error("enumeration timed out");
  return out;
}

// Every satisfying assignment, by plain enumeration (small systems only).
inline std::vector<Assignment> all_solutions(const BooleanSystem& sys) {
  std::vector<Assignment> out;
  const std::size_t n = sys.num_vars();
  Assignment a(n, 0);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    for (std::size_t i = 0; i < n; ++i) a[i] = (m >> i) & 1;
    if (satisfies(sys, a)) out.push_back(a);
  }
  return out;
}

}  // namespace fqb::testing

#include "fqbool/optimize.hpp"

namespace fqb::testing {

// Every point of a StandardProblem's box, as name -> value.
template <class Fn>
void for_each_problem_point(const StandardProblem& prob, Fn&& fn) {
  std::vector<std::pair<Int, Int>> ranges;  // [lo, hi] per registry id
  for (VarId v = 0; v < prob.vars.size(); ++v) {
    const std::string& n = prob.vars.name(v);
    bool is_y = false;
    for (const auto& y : prob.Y)
      if (y.name == n) ranges.emplace_back(-y.shift, y.bound - y.shift), is_y = true;
    if (!is_y) {
      const Int lo = prob.centered ? Int(-(prob.p - 1) / 2) : Int(0);
      ranges.emplace_back(lo, lo + prob.p - 1);
    }
  }
  std::map<std::string, Int> pt;
  std::vector<Int> cur;
  for (const auto& r : ranges) cur.push_back(r.first);
  for (;;) {
    for (VarId v = 0; v < cur.size(); ++v) pt[prob.vars.name(v)] = cur[v];
    fn(static_cast<const std::map<std::string, Int>&>(pt));
    std::size_t i = 0;
    for (; i < cur.size(); ++i) {
      if (cur[i] < ranges[i].second) {
        ++cur[i];
        break;
      }
      cur[i] = ranges[i].first;
    }
    if (i == cur.size()) return;
  }
}

// Minimum of o over feasible points with 0 <= o < u.
inline std::optional<Int> brute_optimum(const StandardProblem& prob) {
  std::optional<Int> best;
  for_each_problem_point(prob, [&](const std::map<std::string, Int>& pt) {
    if (!feasible(prob, pt)) return;
    const Int o = objective_value(prob, pt);
    if (o < 0 || o >= prob.u) return;
    if (!best || o < *best) best = o;
  });
  return best;
}

// Small random problem; the objective is shifted into [0, u).
inline StandardProblem random_problem(Rng& rng) {
  StandardProblem prob;
  prob.p = std::array{2, 3, 5}[uniform(rng, 0, 2)];
  const auto nx = uniform(rng, 0, 2), ny = uniform(rng, nx == 0 ? 1 : 0, 2);
  for (std::int64_t i = 0; i < nx; ++i) prob.add_x("x" + std::to_string(i + 1));
  for (std::int64_t i = 0; i < ny; ++i) prob.add_y("y" + std::to_string(i + 1), uniform(rng, 1, 3));
  const std::size_t n = prob.vars.size();
  if (uniform(rng, 0, 1)) prob.F.push_back(random_poly(rng, Ring::mod(prob.p), n, 2, 3));
  if (uniform(rng, 0, 1)) {
    SparsePoly g = random_poly(rng, Ring(), n, 2, 2);
    prob.I.push_back({g, Int(uniform(rng, 1, 4))});
  }
  SparsePoly o = random_poly(rng, Ring(), n, 2, 2);
  const auto sh = shift_objective(prob, o);
  prob.o = sh.o;
  prob.u = sh.u;
  return prob;
}

}  // namespace fqb::testing
