// fqbool command-line tool. Talks to the library only through the C API.

#include "fqbool/fqbool.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0, kExitError = 1, kExitUsage = 2, kExitUnsat = 20, kExitUnknown = 30;

struct Failure {
  int code;
  std::string message;
};

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitUsage, "cannot read '" + path + "'"};
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Failure{kExitError, "cannot write '" + path + "'"};
}

// Owns a string returned by the library.
struct Owned {
  char* p = nullptr;
  ~Owned() { fqb_free(p); }
  std::string str() const { return p ? p : ""; }
};

int error_exit_code(fqb_status s) {
  switch (s) {
    case FQB_E_PARSE:
    case FQB_E_INVALID_ARGUMENT:
    case FQB_E_UNKNOWN_OPERATION:
    case FQB_E_SHAPE_MISMATCH:
      return kExitUsage;
    default:
      return kExitError;
  }
}

void check(fqb_status s) {
  if (s != FQB_OK) throw Failure{error_exit_code(s), fqb_last_error()};
}

void print_trace(const char* step, void* ctx) {
  auto* out = static_cast<std::ostringstream*>(ctx);
  *out << step << '\n';
}

int exit_code_for(const json& r) {
  const std::string s = r.value("status", "");
  if (s == "sat" || s == "optimal" || s == "ok" || s == "built") return kExitOk;
  if (s == "unsat" || s == "infeasible") return kExitUnsat;
  return kExitUnknown;
}

// --- shared options ----------------------------------------------------------

struct Common {
  std::string backend = "backtracking";
  std::size_t var_limit = 30;
  double time_limit = 0;
  std::uint64_t seed = 0x5eed2024u;
  std::optional<double> epsilon;
  bool no_symmetry = false;
  std::string external;
  std::string output;
  std::string trace;
  bool as_json = false;

  json backend_json() const {
    json b = {{"backend", backend}, {"var_limit", var_limit}, {"time_limit", time_limit},
              {"seed", seed},       {"symmetry_breaking", !no_symmetry}};
    if (!external.empty()) b["external_command"] = external;
    return b;
  }
};

void add_backend_options(CLI::App* app, Common& c) {
  app->add_option("--backend", c.backend, "Boolean solver: exhaustive, backtracking or external")
      ->check(CLI::IsMember({"exhaustive", "backtracking", "external"}))
      ->capture_default_str();
  app->add_option("--var-limit", c.var_limit, "Largest system the exhaustive backend accepts")->capture_default_str();
  app->add_option("--time-limit", c.time_limit, "Seconds per solver call (0 = no limit)")->capture_default_str();
  app->add_option("--seed", c.seed, "Seed for randomized choices")->capture_default_str();
  app->add_option("--epsilon", c.epsilon, "Failure probability (accepted for compatibility; exact backends ignore it)");
  app->add_flag("--no-symmetry", c.no_symmetry, "Disable symmetry breaking in the backtracking backend");
  app->add_option("--external-command", c.external,
                  "Command for the external backend; {opb} is replaced by the OPB file path");
}

void add_output_options(CLI::App* app, Common& c, bool trace) {
  app->add_option("-o,--output", c.output, "Write the result here instead of standard output");
  app->add_flag("--json", c.as_json, "Print the full JSON response");
  if (trace) app->add_option("--trace", c.trace, "Write the bisection trace as JSON lines ('-' = standard output)");
}

// Human-readable rendering of a response.
std::string render(const json& r) {
  std::ostringstream out;
  out << "status: " << r.value("status", "?") << '\n';
  auto scalar = [&](const char* key, const char* label) {
    if (r.contains(key)) out << label << ": " << (r[key].is_string() ? r[key].get<std::string>() : r[key].dump()) << '\n';
  };
  scalar("reason", "reason");
  scalar("value", "objective");
  scalar("minimum", "minimum");
  scalar("weight", "weight");
  scalar("norm_sq", "norm^2");
  scalar("distance_sq", "distance^2");
  scalar("variables", "boolean variables");
  scalar("equations", "equations");
  scalar("coeff_bound_used", "coefficient bound");
  scalar("candidate_ok", "candidate in key space");
  scalar("witness_satisfies", "witness");
  auto vec = [&](const char* key) {
    if (!r.contains(key)) return;
    out << key << ": [";
    bool first = true;
    for (const auto& x : r[key]) {
      out << (first ? "" : ", ") << (x.is_string() ? x.get<std::string>() : x.dump());
      first = false;
    }
    out << "]\n";
  };
  vec("v");
  vec("a");
  vec("f");
  vec("errors");
  const json* sol = r.contains("x") ? &r["x"] : r.contains("solution") ? &r["solution"] : nullptr;
  if (sol)
    for (auto it = sol->begin(); it != sol->end(); ++it)
      out << it.key() << " = " << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump()) << '\n';
  return out.str();
}

int finish(const json& r, const Common& c, const std::string& trace_text = {}) {
  if (!c.trace.empty()) write_output(c.trace, trace_text);
  json shown = r;
  if (!c.as_json) shown.erase("trace");
  write_output(c.output, c.as_json ? shown.dump(2) + "\n" : render(shown));
  return exit_code_for(r);
}

int call(const std::string& op, const json& req, const Common& c) {
  if (c.epsilon) std::cerr << "note: --epsilon is ignored by the exact classical backends\n";
  std::ostringstream trace;
  Owned out;
  check(fqb_call(op.c_str(), req.dump().c_str(), c.trace.empty() ? nullptr : print_trace, &trace, &out.p));
  return finish(json::parse(out.str()), c, trace.str());
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Failure{kExitUsage, what + " is not valid JSON: " + e.what()};
  }
}

// JSON matrix, or whitespace text with one row per line.
json matrix_input(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception&) {
  }
  json M = json::array();
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    for (char& ch : line)
      if (ch == ',') ch = ' ';
    std::istringstream ls(line);
    json row = json::array();
    std::string tok;
    while (ls >> tok) row.push_back(tok);
    if (!row.empty()) M.push_back(row);
  }
  if (M.empty()) throw Failure{kExitUsage, "empty matrix input"};
  return M;
}

json int_list(const std::string& text) {
  json v = json::array();
  std::string s = text;
  for (char& ch : s)
    if (ch == ',') ch = ' ';
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) v.push_back(tok);
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fqbool: polynomial systems over finite fields and bounded-integer optimization via Boolean systems"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(fqb_version()));
  Common c;
  std::string input;
  std::string representation = "standard", lift = "coeffsum", emit = "json", sidecar;
  std::string p, bound, norm_sq, coeff_bound, target;
  std::size_t N = 7, df = 2, dg = 2;
  std::string nq = "32", np = "3", emit_system, emit_opb;
  bool do_solve = false, min_weight = false;

  auto input_opt = [&](CLI::App* s, const char* help) { s->add_option("input", input, help)->required(); };
  auto rep_opts = [&](CLI::App* s) {
    s->add_option("--representation", representation, "standard or centered")
        ->check(CLI::IsMember({"standard", "centered"}))
        ->capture_default_str();
    s->add_option("--lift", lift, "Lift multiple range: termcount, coeffsum or signedrange")
        ->check(CLI::IsMember({"termcount", "coeffsum", "signedrange"}))
        ->capture_default_str();
  };

  auto* reduce = app.add_subcommand("reduce", "Reduce a polynomial system JSON to a Boolean system");
  input_opt(reduce, "Polynomial system JSON ('-' = stdin)");
  rep_opts(reduce);
  reduce->add_option("--emit", emit, "json or opb")->check(CLI::IsMember({"json", "opb"}))->capture_default_str();
  reduce->add_option("--sidecar", sidecar, "With --emit opb: write the variable map JSON here");
  reduce->add_option("-o,--output", c.output, "Output file (default: standard output)");

  auto* solve = app.add_subcommand("solve", "Solve a polynomial system over a finite field and decode a solution");
  input_opt(solve, "Polynomial system JSON ('-' = stdin)");
  rep_opts(solve);
  add_backend_options(solve, c);
  add_output_options(solve, c, false);

  auto* optimize = app.add_subcommand("optimize", "Minimize a standard problem by bisection");
  input_opt(optimize, "Standard problem JSON");
  add_backend_options(optimize, c);
  add_output_options(optimize, c, true);

  auto* pswn = app.add_subcommand("pswn", "Minimum number of violated equations (noisy system)");
  input_opt(pswn, "Polynomial system JSON, or {\"A\",\"b\",\"p\"} for a linear instance");
  add_backend_options(pswn, c);
  add_output_options(pswn, c, true);

  auto* sis = app.add_subcommand("sis", "Short nonzero solution of a linear system over F_p");
  input_opt(sis, "{\"A\",\"p\"} JSON, polynomial system JSON, or matrix text (with --p)");
  sis->add_option("--p", p, "Field size for matrix text input");
  sis->add_option("--bound", bound, "Euclidean norm bound b");
  sis->add_option("--norm-sq", norm_sq, "Squared norm bound (instead of --bound)");
  add_backend_options(sis, c);
  add_output_options(sis, c, false);

  auto* minsol = app.add_subcommand("minsol", "Smallest nonzero solution in the centered representation");
  input_opt(minsol, "{\"A\",\"p\"} JSON, polynomial system JSON, or matrix text (with --p)");
  minsol->add_option("--p", p, "Field size for matrix text input");
  add_backend_options(minsol, c);
  add_output_options(minsol, c, true);

  auto* svp = app.add_subcommand("svp", "Shortest nonzero lattice vector (basis vectors are columns)");
  input_opt(svp, "Lattice JSON {\"B\",\"coeff_bound\"?} or matrix text");
  svp->add_option("--coeff-bound", coeff_bound, "Bound on |a_i| (default: the closed-form bound)");
  add_backend_options(svp, c);
  add_output_options(svp, c, true);

  auto* cvp = app.add_subcommand("cvp", "Closest lattice vector to a target");
  input_opt(cvp, "Lattice JSON {\"B\",\"target\",\"coeff_bound\"?} or matrix text");
  cvp->add_option("--target", target, "Target vector, comma separated");
  cvp->add_option("--coeff-bound", coeff_bound, "Bound on |a_i| (default: the closed-form bound)");
  add_backend_options(cvp, c);
  add_output_options(cvp, c, true);

  auto* qubo = app.add_subcommand("qubo", "Minimize y^T Q y over {0,1}^m (Q upper triangular)");
  input_opt(qubo, "{\"Q\"} JSON or matrix text");
  add_backend_options(qubo, c);
  add_output_options(qubo, c, true);

  auto* binlp = app.add_subcommand("binlp", "Minimize c.y subject to A y <= h over {0,1}^n");
  input_opt(binlp, "{\"c\",\"A\",\"h\"} JSON");
  add_backend_options(binlp, c);
  add_output_options(binlp, c, true);

  auto* ntru = app.add_subcommand("ntru", "NTRU fixtures and key-recovery systems");
  ntru->require_subcommand(1);
  auto* gen = ntru->add_subcommand("gen", "Generate a seeded key pair");
  gen->add_option("--N", N, "Ring degree")->capture_default_str();
  gen->add_option("--p", np, "Small modulus")->capture_default_str();
  gen->add_option("--q", nq, "Large modulus (prime or power of two)")->capture_default_str();
  gen->add_option("--df", df, "f has df ones and df-1 minus ones")->capture_default_str();
  gen->add_option("--dg", dg, "g has dg ones and dg minus ones")->capture_default_str();
  gen->add_option("--seed", c.seed, "Seed")->capture_default_str();
  gen->add_option("-o,--output", c.output, "Key file (default: standard output)");
  auto* attack = ntru->add_subcommand("attack", "Build (and optionally solve) the key-recovery system");
  input_opt(attack, "Parameters JSON with public key h (a key file works too)");
  attack->add_option("--emit-system", emit_system, "Write the Boolean system JSON here");
  attack->add_option("--emit-opb", emit_opb, "Write the OPB export here (variable map next to it as .map.json)");
  attack->add_flag("--solve", do_solve, "Run the selected backend on the system");
  attack->add_flag("--min-weight", min_weight, "Drop the weight equations and minimize sum f^2 + sum g^2 - 1");
  add_backend_options(attack, c);
  add_output_options(attack, c, true);
  auto* ntru_check = ntru->add_subcommand("check", "Check that a key file's bits satisfy the attack system");
  input_opt(ntru_check, "Key file from 'ntru gen'");
  add_output_options(ntru_check, c, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (reduce->parsed()) {
      const std::string opts = json{{"representation", representation}, {"lift", lift}}.dump();
      fqb_system* sys = nullptr;
      check(fqb_reduce(read_input(input).c_str(), opts.c_str(), &sys));
      struct Close {
        fqb_system* s;
        ~Close() { fqb_system_destroy(s); }
      } close{sys};
      if (emit == "opb") {
        Owned opb, map;
        check(fqb_system_opb(sys, &opb.p, &map.p));
        write_output(c.output, opb.str());
        std::string side = sidecar;
        if (side.empty() && !c.output.empty() && c.output != "-") side = c.output + ".map.json";
        if (!side.empty()) write_output(side, json::parse(map.str()).dump(2) + "\n");
      } else {
        Owned out;
        check(fqb_system_json(sys, &out.p));
        write_output(c.output, json::parse(out.str()).dump(2) + "\n");
      }
      return kExitOk;
    }
    if (solve->parsed()) {
      json req = {{"system", parse_json(read_input(input), "input")},
                  {"representation", representation},
                  {"lift", lift},
                  {"backend", c.backend_json()}};
      return call("solve", req, c);
    }
    if (optimize->parsed())
      return call("optimize", {{"problem", parse_json(read_input(input), "input")}, {"backend", c.backend_json()}}, c);
    if (pswn->parsed()) {
      json in = parse_json(read_input(input), "input");
      json req = in.contains("polys") ? json{{"system", in}} : in;
      req["backend"] = c.backend_json();
      return call("pswn", req, c);
    }
    auto linear_request = [&]() {
      const std::string text = read_input(input);
      json req;
      json in;
      try {
        in = json::parse(text);
      } catch (const json::exception&) {
      }
      if (in.is_object()) {
        req = in.contains("polys") ? json{{"system", in}} : in;
      } else {
        req["A"] = matrix_input(text);
      }
      if (!p.empty()) req["p"] = p;
      if (!req.contains("system") && !req.contains("p")) throw Failure{kExitUsage, "the field size is missing (--p)"};
      req["backend"] = c.backend_json();
      return req;
    };
    if (sis->parsed()) {
      json req = linear_request();
      if (!bound.empty()) req["bound"] = bound;
      if (!norm_sq.empty()) req["norm_sq"] = norm_sq;
      if (!req.contains("bound") && !req.contains("norm_sq")) throw Failure{kExitUsage, "sis needs --bound or --norm-sq"};
      return call("sis", req, c);
    }
    if (minsol->parsed()) return call("minsol", linear_request(), c);
    auto lattice_request = [&]() {
      json in = matrix_input(read_input(input));
      json L = in.is_object() ? in : json{{"B", in}};
      if (!coeff_bound.empty()) L["coeff_bound"] = coeff_bound;
      if (!target.empty()) L["target"] = int_list(target);
      return json{{"lattice", L}, {"backend", c.backend_json()}};
    };
    if (svp->parsed()) return call("svp", lattice_request(), c);
    if (cvp->parsed()) return call("cvp", lattice_request(), c);
    if (qubo->parsed()) {
      json in = matrix_input(read_input(input));
      json req = in.is_object() ? in : json{{"Q", in}};
      req["backend"] = c.backend_json();
      return call("qubo", req, c);
    }
    if (binlp->parsed()) {
      json req = parse_json(read_input(input), "input");
      req["backend"] = c.backend_json();
      return call("binlp", req, c);
    }
    if (gen->parsed()) {
      json req = {{"params", {{"N", N}, {"p", np}, {"q", nq}, {"df", df}, {"dg", dg}}}, {"seed", c.seed}};
      Owned out;
      check(fqb_call("ntru_gen", req.dump().c_str(), nullptr, nullptr, &out.p));
      write_output(c.output, json::parse(out.str())["key"].dump(2) + "\n");
      return kExitOk;
    }
    if (attack->parsed()) {
      json params = parse_json(read_input(input), "input");
      for (const char* secret : {"f", "g", "fp", "fq"}) params.erase(secret);
      json req = {{"params", params},
                  {"emit", !emit_system.empty() || !emit_opb.empty()},
                  {"solve", do_solve},
                  {"min_weight", min_weight},
                  {"backend", c.backend_json()}};
      if (c.epsilon) std::cerr << "note: --epsilon is ignored by the exact classical backends\n";
      std::ostringstream trace;
      Owned out;
      check(fqb_call("ntru_attack", req.dump().c_str(), c.trace.empty() ? nullptr : print_trace, &trace, &out.p));
      json r = json::parse(out.str());
      if (r.contains("system")) {
        if (!emit_system.empty()) write_output(emit_system, r["system"].dump(2) + "\n");
        if (!emit_opb.empty()) {
          fqb_system* sys = nullptr;
          check(fqb_system_load(r["system"].dump().c_str(), &sys));
          Owned opb, map;
          const fqb_status st = fqb_system_opb(sys, &opb.p, &map.p);
          fqb_system_destroy(sys);
          check(st);
          write_output(emit_opb, opb.str());
          write_output(emit_opb + ".map.json", json::parse(map.str()).dump(2) + "\n");
        }
        r.erase("system");
      }
      return finish(r, c, trace.str());
    }
    if (ntru_check->parsed()) {
      Owned out;
      const json req = {{"key", parse_json(read_input(input), "key file")}};
      check(fqb_call("ntru_check", req.dump().c_str(), nullptr, nullptr, &out.p));
      const json r = json::parse(out.str());
      if (!c.as_json) {
        std::string msg = r["witness_satisfies"].get<bool>() ? "witness satisfies F_NTRU\n" : "witness does not satisfy F_NTRU\n";
        if (!r["roundtrip"].get<bool>()) msg += "h * f != g (mod q)\n";
        write_output(c.output, msg);
        return exit_code_for(r);
      }
      return finish(r, c);
    }
  } catch (const Failure& f) {
    std::cerr << "fqbool: " << f.message << '\n';
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "fqbool: " << e.what() << '\n';
    return kExitError;
  }
  return kExitUsage;
}
