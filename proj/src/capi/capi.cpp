#include "fqbool/fqbool.h"

#include "fqbool/errors.hpp"
#include "fqbool/opb.hpp"
#include "fqbool/problems.hpp"

#include <cstdlib>
#include <cstring>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>

struct fqb_system {
  fqb::BooleanSystem sys;
};

namespace {

using namespace fqb;

thread_local std::string g_last_error;

fqb_status code_of(Errc e) {
  switch (e) {
    case Errc::RingMismatch: return FQB_E_RING_MISMATCH;
    case Errc::ShapeMismatch: return FQB_E_SHAPE_MISMATCH;
    case Errc::NotInvertible: return FQB_E_NOT_INVERTIBLE;
    case Errc::UnsupportedModulus: return FQB_E_UNSUPPORTED_MODULUS;
    case Errc::NotQuadratic: return FQB_E_NOT_QUADRATIC;
    case Errc::BadModulus: return FQB_E_BAD_MODULUS;
    case Errc::UnboundedVariable: return FQB_E_UNBOUNDED_VARIABLE;
    case Errc::EmptyOrPointConstraint: return FQB_E_EMPTY_CONSTRAINT;
    case Errc::MissingBits: return FQB_E_MISSING_BITS;
    case Errc::ParseError: return FQB_E_PARSE;
    case Errc::ExternalSolverMismatch: return FQB_E_EXTERNAL_MISMATCH;
    case Errc::IoError: return FQB_E_IO;
    case Errc::RankDeficient: return FQB_E_RANK_DEFICIENT;
    case Errc::CenteredRepUnsupported: return FQB_E_CENTERED_UNSUPPORTED;
    case Errc::KeygenFailed: return FQB_E_KEYGEN_FAILED;
    case Errc::InvalidArgument: return FQB_E_INVALID_ARGUMENT;
  }
  return FQB_E_INTERNAL;
}

struct UnknownOperation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Runs `body`, translating exceptions into status codes.
template <class Fn>
fqb_status guard(Fn&& body) {
  try {
    body();
    g_last_error.clear();
    return FQB_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return code_of(e.code());
  } catch (const json::exception& e) {
    g_last_error = std::string("ParseError: ") + e.what();
    return FQB_E_PARSE;
  } catch (const UnknownOperation& e) {
    g_last_error = e.what();
    return FQB_E_UNKNOWN_OPERATION;
  } catch (const std::exception& e) {
    g_last_error = std::string("internal error: ") + e.what();
    return FQB_E_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void put(char** out, const json& j) {
  if (!out) throw Error(Errc::InvalidArgument, "null output pointer");
  *out = dup(j.dump());
}

json parse(const char* text, bool optional = false) {
  if (!text || !*text) {
    if (optional) return json::object();
    throw Error(Errc::InvalidArgument, "missing JSON input");
  }
  return json::parse(text);
}

BackendConfig backend_from_json(const json& j) {
  BackendConfig cfg;
  if (j.is_null()) return cfg;
  if (!j.is_object()) throw Error(Errc::ParseError, "backend options must be an object");
  if (j.contains("backend")) cfg.backend = backend_from_name(j["backend"].get<std::string>());
  cfg.var_limit = j.value("var_limit", cfg.var_limit);
  cfg.time_limit = j.value("time_limit", cfg.time_limit);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.epsilon = j.value("epsilon", cfg.epsilon);
  cfg.symmetry_breaking = j.value("symmetry_breaking", cfg.symmetry_breaking);
  cfg.external_command = j.value("external_command", cfg.external_command);
  return cfg;
}

BackendConfig backend_of(const json& req) { return backend_from_json(req.value("backend", json())); }

ReduceOptions reduce_options(const json& j) {
  ReduceOptions o;
  if (j.contains("representation")) {
    const auto r = j["representation"].get<std::string>();
    if (r == "centered") o.rep = Representation::Centered;
    else if (r != "standard") throw Error(Errc::InvalidArgument, "unknown representation '" + r + "'");
  }
  if (j.contains("lift")) o.lift = lift_mode_from_name(j["lift"].get<std::string>());
  return o;
}

json assignment_to_json(const Assignment& a) {
  json j = json::array();
  for (auto b : a) j.push_back(static_cast<int>(b));
  return j;
}

json decoded_json(const BooleanSystem& sys, const Assignment& a) {
  const auto sol = decode(sys, a);
  json out = json::object();
  if (sys.field()) {
    for (const auto& [k, v] : decode_field(sys, sol)) out[k] = coeff_to_json(*sys.field(), v);
  } else {
    for (const auto& [k, v] : sol.decoded) out[k] = int_to_json(v);
  }
  return out;
}

json outcome_json(const BooleanSystem& sys, const SolveOutcome& r) {
  json j = {{"status", status_name(r.status)}, {"nodes", r.nodes}};
  if (r.status == SolveStatus::Sat) {
    if (!satisfies(sys, r.assignment)) throw std::logic_error("solver returned a non-solution");
    j["assignment"] = assignment_to_json(r.assignment);
    j["solution"] = decoded_json(sys, r.assignment);
  }
  if (r.status == SolveStatus::Unknown) j["reason"] = r.reason;
  return j;
}

json ints_json(const std::vector<Int>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(int_to_json(x));
  return a;
}

// --- operations ---------------------------------------------------------------

using Trace = std::function<void(const json&)>;

OptResult run_opt(const StandardProblem& prob, const json& req, const Trace& trace) {
  OptOptions opt;
  opt.backend = backend_of(req);
  OptResult r = qfp_opt(prob, opt);
  if (trace)
    for (const auto& s : r.trace) trace(step_to_json(s));
  return r;
}

OptResult run_opt(const Base& base, const json& req, const Trace& trace) {
  OptOptions opt;
  opt.backend = backend_of(req);
  OptResult r = qfp_opt(base, opt);
  if (trace)
    for (const auto& s : r.trace) trace(step_to_json(s));
  return r;
}

json op_solve(const json& req, const Trace&) {
  const PolySystem S = system_from_json(req.at("system"));
  const BooleanSystem sys = full_reduce(S, reduce_options(req));
  json j = outcome_json(sys, solve(sys, backend_of(req)));
  j["variables"] = sys.num_vars();
  j["equations"] = sys.num_equations();
  return j;
}

json op_optimize(const json& req, const Trace& trace) {
  const StandardProblem prob = problem_from_json(req.at("problem"));
  return result_to_json(run_opt(prob, req, trace));
}

PolySystem system_or_matrix(const json& req) {
  if (req.contains("system")) return system_from_json(req["system"]);
  const Matrix A = matrix_from_json(req.at("A"));
  const Int p = int_from_json(req.at("p"));
  if (req.contains("b")) return lswn_system(A, vector_from_json(req["b"]), p);
  return linear_system(A, p);
}

json op_pswn(const json& req, const Trace& trace) {
  const PolySystem S = system_or_matrix(req);
  const StandardProblem prob = pswn_build(S);
  const OptResult r = run_opt(prob, req, trace);
  json j = result_to_json(r);
  if (r.status == OptResult::Status::Optimal) {
    j["weight"] = int_to_json(r.value);
    json x = json::object(), e = json::array();
    for (const auto& n : S.vars.names()) x[n] = int_to_json(r.solution.at(n));
    for (std::size_t i = 0; i < S.polys.size(); ++i) e.push_back(int_to_json(r.solution.at("e" + std::to_string(i + 1))));
    j["x"] = x;
    j["errors"] = e;
  }
  return j;
}

json op_sis(const json& req, const Trace&) {
  const PolySystem S = system_or_matrix(req);
  Int nsq;
  if (req.contains("norm_sq")) nsq = int_from_json(req["norm_sq"]);
  else {
    const Int b = int_from_json(req.at("bound"));
    nsq = b * b;
  }
  if (nsq < 1) throw Error(Errc::InvalidArgument, "the norm bound must be >= 1");
  const BooleanSystem sys = sis_build(S, nsq);
  const SolveOutcome r = solve(sys, backend_of(req));
  json j = outcome_json(sys, r);
  j["norm_sq_bound"] = int_to_json(nsq);
  if (r.status == SolveStatus::Sat) {
    const auto d = decode(sys, r.assignment).decoded;
    Int s = 0;
    std::map<VarId, Int> x;
    for (VarId v = 0; v < S.vars.size(); ++v) s += d.at(S.vars.name(v)) * d.at(S.vars.name(v)), x[v] = d.at(S.vars.name(v));
    for (const auto& f : S.polys)
      if (f.evaluate([&](VarId v) { return S.ring.from_int(x.at(v)); }) != 0)
        throw std::logic_error("SIS solution does not satisfy the system");
    if (s < 1 || s > nsq) throw std::logic_error("SIS solution outside the norm window");
    j["norm_sq"] = int_to_json(s);
  }
  return j;
}

json op_minsol(const json& req, const Trace& trace) {
  const PolySystem S = system_or_matrix(req);
  const OptResult r = run_opt(smallest_solution_build(S), req, trace);
  json j = result_to_json(r);
  if (r.status == OptResult::Status::Optimal) j["norm_sq"] = int_to_json(r.value + 1);
  return j;
}

LatticeInstance lattice_of(const json& req) { return lattice_from_json(req.contains("lattice") ? req["lattice"] : req); }

json lattice_result(const LatticeInstance& L, const OptResult& r) {
  json j = result_to_json(r);
  j["coeff_bound_used"] = int_to_json(effective_coeff_bound(L));
  if (matrix_rank(L.B) == L.cols()) j["coeff_bound_closed_form"] = int_to_json(svp_coeff_bound(L.B));
  if (r.status == OptResult::Status::Optimal) {
    std::vector<Int> v, a;
    for (std::size_t i = 0; i < L.rows(); ++i) v.push_back(r.solution.at("v" + std::to_string(i + 1)));
    for (std::size_t i = 0; i < L.cols(); ++i) a.push_back(r.solution.at("a" + std::to_string(i + 1)));
    for (std::size_t i = 0; i < L.rows(); ++i) {
      Int s = 0;
      for (std::size_t k = 0; k < L.cols(); ++k) s += L.B[i][k] * a[k];
      if (s != v[i]) throw std::logic_error("lattice vector does not match its coefficients");
    }
    j["v"] = ints_json(v);
    j["a"] = ints_json(a);
  }
  return j;
}

json op_svp(const json& req, const Trace& trace) {
  const LatticeInstance L = lattice_of(req);
  const OptResult r = run_opt(svp_build(L), req, trace);
  json j = lattice_result(L, r);
  if (r.status == OptResult::Status::Optimal) j["norm_sq"] = int_to_json(r.value + 1);
  return j;
}

json op_cvp(const json& req, const Trace& trace) {
  const LatticeInstance L = lattice_of(req);
  const OptResult r = run_opt(cvp_build(L), req, trace);
  json j = lattice_result(L, r);
  if (r.status == OptResult::Status::Optimal) j["distance_sq"] = int_to_json(r.value);
  return j;
}

json op_qubo(const json& req, const Trace& trace) {
  const Matrix Q = matrix_from_json(req.at("Q"));
  const OptResult r = run_opt(qubo_build(Q), req, trace);
  json j = result_to_json(r);
  if (r.status == OptResult::Status::Optimal) j["minimum"] = int_to_json(qubo_unshift(Q, r.value));
  return j;
}

json op_binlp(const json& req, const Trace& trace) {
  const auto c = vector_from_json(req.at("c"));
  const OptResult r = run_opt(binlp_build(c, matrix_from_json(req.at("A")), vector_from_json(req.at("h"))), req, trace);
  json j = result_to_json(r);
  if (r.status == OptResult::Status::Optimal) j["minimum"] = int_to_json(binlp_unshift(c, r.value));
  return j;
}

json op_hnf(const json& req, const Trace&) {
  const Matrix B = matrix_from_json(req.at("B"));
  const HnfResult R = hnf(B);
  json piv = json::array();
  for (auto f : R.pivot) piv.push_back(f);
  return {{"status", "ok"},        {"H", matrix_to_json(R.H)}, {"E", matrix_to_json(R.E)},
          {"pivot", piv},          {"bound", int_to_json(hnf_entry_bound(B))}};
}

json op_ntru_gen(const json& req, const Trace&) {
  const NtruParams P = ntru_params_from_json(req.at("params"));
  const std::uint64_t seed = req.value("seed", kDefaultSeed);
  const NtruKey K = ntru_keygen(P, seed, req.value("max_tries", std::size_t{1000}));
  return {{"status", "ok"}, {"key", ntru_key_to_json(P, K)}};
}

json op_ntru_attack(const json& req, const Trace& trace) {
  const NtruParams P = ntru_params_from_json(req.at("params"));
  if (!P.h) throw Error(Errc::InvalidArgument, "params need the public key h");
  json j;
  if (req.value("min_weight", false)) {
    const NtruMinWeight W = ntru_min_weight_system(P);
    j["variables"] = W.base.C.num_vars();
    j["equations"] = W.base.C.num_equations();
    if (req.value("emit", false)) j["system"] = to_json(W.base.C);
    if (!req.value("solve", false)) {
      j["status"] = "built";
      return j;
    }
    const OptResult r = run_opt(W.base, req, trace);
    json res = result_to_json(r);
    for (auto it = res.begin(); it != res.end(); ++it) j[it.key()] = it.value();
    if (r.status == OptResult::Status::Optimal) {
      const auto f = ntru_decode_f(W.attack, r.witness);
      j["f"] = ints_json(f);
      j["candidate_ok"] = ntru_candidate_ok(P, f);
    }
    return j;
  }
  const NtruAttack A = ntru_attack_system(P);
  j["variables"] = A.sys.num_vars();
  j["equations"] = A.sys.num_equations();
  if (req.value("emit", false)) j["system"] = to_json(A.sys);
  if (!req.value("solve", false)) {
    j["status"] = "built";
    return j;
  }
  const SolveOutcome r = solve(A.sys, backend_of(req));
  j["status"] = status_name(r.status);
  j["nodes"] = r.nodes;
  if (r.status == SolveStatus::Unknown) j["reason"] = r.reason;
  if (r.status == SolveStatus::Sat) {
    if (!satisfies(A.sys, r.assignment)) throw std::logic_error("solver returned a non-solution");
    const auto f = ntru_decode_f(A, r.assignment);
    j["f"] = ints_json(f);
    j["candidate_ok"] = ntru_candidate_ok(P, f);
  }
  return j;
}

json op_ntru_check(const json& req, const Trace&) {
  const json& kj = req.contains("key") ? req["key"] : req;
  const NtruParams P = ntru_params_from_json(kj);
  const NtruKey K = ntru_key_from_json(kj);
  const bool roundtrip = cyclic_convolve(K.h, make_cyclic(P.q, K.f)) == make_cyclic(P.q, K.g);
  const NtruAttack A = ntru_attack_system(P);
  bool ok = false;
  try {
    ok = satisfies(A.sys, ntru_witness(A, K));
  } catch (const Error&) {
    ok = false;
  }
  return {{"status", ok && roundtrip ? "sat" : "unsat"},
          {"witness_satisfies", ok},
          {"roundtrip", roundtrip},
          {"variables", A.sys.num_vars()},
          {"equations", A.sys.num_equations()}};
}

const std::map<std::string, json (*)(const json&, const Trace&)>& operations() {
  static const std::map<std::string, json (*)(const json&, const Trace&)> ops = {
      {"solve", op_solve},     {"optimize", op_optimize}, {"pswn", op_pswn},
      {"lswn", op_pswn},       {"sis", op_sis},           {"minsol", op_minsol},
      {"svp", op_svp},         {"cvp", op_cvp},           {"qubo", op_qubo},
      {"binlp", op_binlp},     {"hnf", op_hnf},           {"ntru_gen", op_ntru_gen},
      {"ntru_attack", op_ntru_attack}, {"ntru_check", op_ntru_check},
  };
  return ops;
}

}  // namespace

extern "C" {

const char* fqb_version(void) { return "0.1.0"; }

const char* fqb_last_error(void) { return g_last_error.c_str(); }

const char* fqb_status_name(fqb_status s) {
  switch (s) {
    case FQB_OK: return "ok";
    case FQB_E_INVALID_ARGUMENT: return "invalid argument";
    case FQB_E_PARSE: return "parse error";
    case FQB_E_RING_MISMATCH: return "ring mismatch";
    case FQB_E_SHAPE_MISMATCH: return "shape mismatch";
    case FQB_E_NOT_INVERTIBLE: return "not invertible";
    case FQB_E_UNSUPPORTED_MODULUS: return "unsupported modulus";
    case FQB_E_UNBOUNDED_VARIABLE: return "unbounded variable";
    case FQB_E_EMPTY_CONSTRAINT: return "empty or point constraint";
    case FQB_E_MISSING_BITS: return "missing bits";
    case FQB_E_EXTERNAL_MISMATCH: return "external solver mismatch";
    case FQB_E_IO: return "i/o error";
    case FQB_E_RANK_DEFICIENT: return "rank deficient";
    case FQB_E_CENTERED_UNSUPPORTED: return "centered representation unsupported";
    case FQB_E_KEYGEN_FAILED: return "key generation failed";
    case FQB_E_NOT_QUADRATIC: return "not quadratic";
    case FQB_E_BAD_MODULUS: return "bad modulus";
    case FQB_E_UNKNOWN_OPERATION: return "unknown operation";
    case FQB_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void fqb_free(char* s) { std::free(s); }

fqb_status fqb_reduce(const char* system_json, const char* options_json, fqb_system** out) {
  return guard([&] {
    if (!out) throw Error(Errc::InvalidArgument, "null output pointer");
    const PolySystem S = system_from_json(parse(system_json));
    *out = new fqb_system{full_reduce(S, reduce_options(parse(options_json, true)))};
  });
}

fqb_status fqb_system_load(const char* boolean_json, fqb_system** out) {
  return guard([&] {
    if (!out) throw Error(Errc::InvalidArgument, "null output pointer");
    *out = new fqb_system{boolean_system_from_json(parse(boolean_json))};
  });
}

void fqb_system_destroy(fqb_system* sys) { delete sys; }

fqb_status fqb_system_json(const fqb_system* sys, char** out) {
  return guard([&] {
    if (!sys) throw Error(Errc::InvalidArgument, "null system");
    put(out, to_json(sys->sys));
  });
}

fqb_status fqb_system_opb(const fqb_system* sys, char** opb, char** sidecar_json) {
  return guard([&] {
    if (!sys || !opb) throw Error(Errc::InvalidArgument, "null argument");
    std::string text = export_opb(sys->sys);
    char* o = dup(text);
    if (sidecar_json) {
      try {
        put(sidecar_json, opb_sidecar(sys->sys));
      } catch (...) {
        std::free(o);
        throw;
      }
    }
    *opb = o;
  });
}

size_t fqb_system_num_vars(const fqb_system* sys) { return sys ? sys->sys.num_vars() : 0; }

size_t fqb_system_num_equations(const fqb_system* sys) { return sys ? sys->sys.num_equations() : 0; }

fqb_status fqb_system_solve(const fqb_system* sys, const char* backend_json, char** out) {
  return guard([&] {
    if (!sys) throw Error(Errc::InvalidArgument, "null system");
    const BackendConfig cfg = backend_from_json(parse(backend_json, true));
    put(out, outcome_json(sys->sys, solve(sys->sys, cfg)));
  });
}

fqb_status fqb_system_check(const fqb_system* sys, const char* assignment_json, char** out) {
  return guard([&] {
    if (!sys) throw Error(Errc::InvalidArgument, "null system");
    Assignment a;
    for (const auto& b : parse(assignment_json)) a.push_back(static_cast<std::uint8_t>(b.get<int>() != 0));
    const auto res = evaluate(sys->sys, a);
    json r = json::array();
    bool ok = true;
    for (const auto& v : res) r.push_back(int_to_json(v)), ok = ok && v == 0;
    put(out, {{"satisfied", ok}, {"residuals", r}});
  });
}

fqb_status fqb_call(const char* op, const char* request_json, fqb_trace_fn trace, void* ctx, char** out) {
  return guard([&] {
    if (!op) throw Error(Errc::InvalidArgument, "null operation");
    const auto& ops = operations();
    auto it = ops.find(op);
    if (it == ops.end()) throw UnknownOperation(std::string("unknown operation '") + op + "'");
    Trace t;
    if (trace) t = [&](const json& s) { trace(s.dump().c_str(), ctx); };
    put(out, it->second(parse(request_json, true), t));
  });
}

}  // extern "C"
