#include "fqbool/errors.hpp"
#include "fqbool/optimize.hpp"

#include <cmath>

namespace fqb {

const char* opt_status_name(OptResult::Status s) {
  switch (s) {
    case OptResult::Status::Optimal: return "optimal";
    case OptResult::Status::Infeasible: return "infeasible";
    case OptResult::Status::Unknown: return "unknown";
  }
  return "?";
}

std::size_t iteration_bound(const Int& u) {
  if (u <= 1) return 1;
  // Smallest k with (4/3)^k >= u, computed exactly: 4^k >= u * 3^k.
  std::size_t k = 0;
  Int four = 1, three = 1;
  while (four < u * three) four *= 4, three *= 3, ++k;
  return k + 1;
}

OptResult qfp_opt(const Base& base, const OptOptions& opt) {
  OptResult res;
  Int alpha = 0, mu = base.u;
  Assignment best;
  auto finish = [&](OptResult::Status st, const Int& value, const Assignment& w) {
    res.status = st;
    res.value = value;
    res.witness = w;
    if (st == OptResult::Status::Optimal) {
      res.witness.resize(base.C.num_vars());
      res.solution = decode(base.C, res.witness).decoded;
    }
    res.alpha = alpha;
    res.mu = mu;
    return res;
  };
  if (base.u < 1) throw Error(Errc::InvalidArgument, "objective bound u must be >= 1");

  for (;;) {
    if (opt.observer) opt.observer(alpha, mu);
    const int beta = static_cast<int>(floor_log2(mu - alpha)) - 1;
    const LevelSystem L = build_level(base, alpha, beta);
    const SolveOutcome out = solve(L.sys, opt.backend);
    OptStep step{alpha, mu, beta, out.status, std::nullopt};

    if (out.status == SolveStatus::Unknown) {
      res.trace.push_back(step);
      res.reason = out.reason;
      return finish(OptResult::Status::Unknown, 0, {});
    }
    if (out.status == SolveStatus::Sat) {
      const Int value = base.obar.evaluate([&](VarId v) { return Int(out.assignment[v]); });
      step.value = value;
      res.trace.push_back(step);
      bool window_zero = true;
      for (VarId f : L.fbits) window_zero = window_zero && !out.assignment[f];
      if (window_zero) {
        if (value != alpha) throw std::logic_error("window bits zero but objective differs from alpha");
        return finish(OptResult::Status::Optimal, alpha, out.assignment);
      }
      if (value <= alpha || value >= mu) throw std::logic_error("objective outside the level window");
      mu = value;
      best = out.assignment;
      continue;
    }
    res.trace.push_back(step);
    if (mu - alpha > 1) {
      alpha += Int(1) << std::max(beta, 0);
      continue;
    }
    if (mu != base.u) return finish(OptResult::Status::Optimal, mu, best);
    return finish(OptResult::Status::Infeasible, 0, {});
  }
}

OptResult qfp_opt(const StandardProblem& prob, const OptOptions& opt) {
  const Base base = build_base(prob);
  OptResult res = qfp_opt(base, opt);
  if (res.status == OptResult::Status::Optimal) {
    // Re-check against the original formulation, not just the encoding.
    if (!feasible(prob, res.solution)) throw std::logic_error("optimum decodes to an infeasible point");
    if (objective_value(prob, res.solution) != res.value)
      throw std::logic_error("decoded objective disagrees with the encoded one");
  }
  return res;
}

json step_to_json(const OptStep& s) {
  json j = {{"alpha", int_to_json(s.alpha)}, {"mu", int_to_json(s.mu)}, {"beta", s.beta},
            {"outcome", status_name(s.outcome)}};
  if (s.value) j["value"] = int_to_json(*s.value);
  return j;
}

json result_to_json(const OptResult& r) {
  json j = {{"status", opt_status_name(r.status)}};
  if (r.status == OptResult::Status::Optimal) {
    j["value"] = int_to_json(r.value);
    json sol = json::object();
    for (const auto& [k, v] : r.solution) sol[k] = int_to_json(v);
    j["solution"] = std::move(sol);
  }
  if (r.status == OptResult::Status::Unknown) {
    j["reason"] = r.reason;
    j["alpha"] = int_to_json(r.alpha);
    j["mu"] = int_to_json(r.mu);
  }
  json t = json::array();
  for (const auto& s : r.trace) t.push_back(step_to_json(s));
  j["trace"] = std::move(t);
  return j;
}

}  // namespace fqb
