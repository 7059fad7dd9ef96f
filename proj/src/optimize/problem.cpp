#include "fqbool/errors.hpp"
#include "fqbool/optimize.hpp"

namespace fqb {

VarId StandardProblem::add_x(const std::string& name) {
  const VarId id = vars.add(name);
  X.push_back(name);
  return id;
}

VarId StandardProblem::add_y(const std::string& name, const Int& bound, const Int& shift, VarClass cls) {
  if (bound < 0) throw Error(Errc::UnboundedVariable, "negative bound for '" + name + "'");
  const VarId id = vars.add(name);
  Y.push_back({name, bound, shift, cls});
  return id;
}

SparsePoly StandardProblem::var(const std::string& name, const Ring& r) const {
  return SparsePoly::variable(r, vars.at(name));
}

Base build_base(const StandardProblem& prob) {
  if (prob.u < 1) throw Error(Errc::InvalidArgument, "objective bound u must be >= 1");
  Encoder enc(prob.vars, prob.centered ? Representation::Centered : Representation::Standard);
  std::size_t declared = 0;
  for (const auto& x : prob.X) {
    enc.declare(prob.vars.at(x), VarDomain::field(prob.p));
    ++declared;
  }
  for (const auto& y : prob.Y) {
    const VarId id = prob.vars.at(y.name);
    enc.declare(id, y.bound == 1 && y.shift == 0 ? VarDomain::boolean(y.cls) : VarDomain::bounded(y.bound, y.shift, y.cls));
    ++declared;
  }
  if (declared != prob.vars.size())
    throw Error(Errc::UnboundedVariable, "every problem variable must be listed in X or Y");
  // Expansions in registry order, so bit ids do not depend on which
  // constraint mentions a variable first.
  for (VarId v = 0; v < prob.vars.size(); ++v) enc.expansion(v);

  if (!prob.F.empty()) {
    const Ring ring = Ring::mod(prob.p);
    for (const auto& f : prob.F)
      if (f.ring() != ring) throw Error(Errc::RingMismatch, "F must live over Z_p");
    reduce_into(enc, prob.F, prob.lift, "F");
  }
  encode_inequalities(enc, prob.I);
  if (!prob.E.empty()) {
    const IntegerEncoding ie = encode_integers(enc, prob.E, "eq");
    for (std::size_t i = 0; i < ie.gbar.size(); ++i) enc.system().add_equation(ie.gbar[i], "eq:" + std::to_string(i));
  }
  const IntegerEncoding oe = encode_integers(enc, {prob.o}, "obj");
  return {std::move(enc.system()), oe.gbar.at(0), prob.u};
}

LevelSystem build_level(const Base& base, const Int& alpha, int beta) {
  if (alpha < 0) throw Error(Errc::InvalidArgument, "alpha must be >= 0");
  if (beta < -1) throw Error(Errc::InvalidArgument, "beta must be >= -1");
  LevelSystem L{base.C, alpha, beta, {}, 0};
  SparsePoly delta = SparsePoly::constant(Ring::integers(), alpha) - base.obar;
  for (int j = 0; j < beta; ++j) {
    const VarId f = L.sys.add_var("F." + std::to_string(j), VarClass::FBit, std::nullopt, static_cast<unsigned>(j));
    L.fbits.push_back(f);
    delta.add_term(Monomial::var(f), Int(1) << j);
  }
  L.delta = L.sys.add_equation(delta, "window");
  return L;
}

namespace {

Int max_magnitude(const StandardProblem& prob, VarId v) {
  const std::string& name = prob.vars.name(v);
  for (const auto& y : prob.Y)
    if (y.name == name) return std::max<Int>(abs(y.shift), abs(Int(y.bound - y.shift)));
  return prob.p - 1;
}

}  // namespace

ShiftedObjective shift_objective(const StandardProblem& prob, const SparsePoly& o) {
  Int h = 0, ho = 0;
  for (VarId v : o.variables()) h = std::max(h, max_magnitude(prob, v));
  for (const auto& [m, c] : o.terms()) ho = std::max(ho, abs(c));
  const Int s = Int(o.size()) * ho * pow(h, o.degree());
  ShiftedObjective out{o + SparsePoly::constant(o.ring(), s), s, 2 * s + 1};
  return out;
}

bool feasible(const StandardProblem& prob, const std::map<std::string, Int>& point) {
  std::vector<Int> val(prob.vars.size());
  for (VarId v = 0; v < prob.vars.size(); ++v) {
    auto it = point.find(prob.vars.name(v));
    if (it == point.end()) return false;
    val[v] = it->second;
  }
  for (const auto& x : prob.X) {
    const Int& a = val[prob.vars.at(x)];
    const Int lo = prob.centered ? Int(-(prob.p - 1) / 2) : Int(0);
    if (a < lo || a > lo + prob.p - 1) return false;
  }
  for (const auto& y : prob.Y) {
    const Int& a = val[prob.vars.at(y.name)];
    if (a < -y.shift || a > y.bound - y.shift) return false;
  }
  auto at = [&](VarId v) { return val.at(v); };
  for (const auto& f : prob.F)
    if (f.evaluate(at) != 0) return false;
  for (const auto& [g, b] : prob.I) {
    const Int x = g.evaluate(at);
    if (x < 0 || x > b) return false;
  }
  for (const auto& e : prob.E)
    if (e.evaluate(at) != 0) return false;
  return true;
}

Int objective_value(const StandardProblem& prob, const std::map<std::string, Int>& point) {
  return prob.o.evaluate([&](VarId v) { return point.at(prob.vars.name(v)); });
}

// ---------------------------------------------------------------------------

json problem_to_json(const StandardProblem& prob) {
  json Y = json::array(), F = json::array(), I = json::array(), E = json::array();
  for (const auto& y : prob.Y) {
    json e = {{"name", y.name}, {"bound", int_to_json(y.bound)}};
    if (y.shift != 0) e["shift"] = int_to_json(y.shift);
    if (y.cls != VarClass::YBit) e["class"] = class_name(y.cls);
    Y.push_back(std::move(e));
  }
  for (const auto& f : prob.F) F.push_back(terms_to_json(f, prob.vars));
  for (const auto& [g, b] : prob.I) I.push_back({{"g", terms_to_json(g, prob.vars)}, {"b", int_to_json(b)}});
  for (const auto& e : prob.E) E.push_back(terms_to_json(e, prob.vars));
  json j = {{"p", int_to_json(prob.p)}, {"X", prob.X},   {"Y", Y},
            {"F", F},                   {"I", I},        {"E", E},
            {"o", terms_to_json(prob.o, prob.vars)},     {"u", int_to_json(prob.u)},
            {"centered", prob.centered}, {"lift", lift_mode_name(prob.lift)}};
  return j;
}

StandardProblem problem_from_json(const json& j) {
  StandardProblem prob;
  try {
    prob.p = j.contains("p") ? int_from_json(j.at("p")) : Int(2);
    if (prob.p < 2) throw Error(Errc::BadModulus, "p must be >= 2");
    for (const auto& x : j.value("X", json::array())) prob.add_x(x.get<std::string>());
    for (const auto& y : j.value("Y", json::array())) {
      if (!y.contains("bound")) throw Error(Errc::UnboundedVariable, "Y entry without bound");
      prob.add_y(y.at("name").get<std::string>(), int_from_json(y.at("bound")),
                 y.contains("shift") ? int_from_json(y.at("shift")) : Int(0),
                 y.contains("class") ? class_from_name(y.at("class").get<std::string>()) : VarClass::YBit);
    }
    const std::size_t known = prob.vars.size();
    const Ring Zp = Ring::mod(prob.p), Z;
    for (const auto& f : j.value("F", json::array())) prob.F.push_back(poly_from_json(f, Zp, prob.vars));
    for (const auto& i : j.value("I", json::array()))
      prob.I.push_back({poly_from_json(i.at("g"), Z, prob.vars), int_from_json(i.at("b"))});
    for (const auto& e : j.value("E", json::array())) prob.E.push_back(poly_from_json(e, Z, prob.vars));
    prob.o = j.contains("o") ? poly_from_json(j.at("o"), Z, prob.vars) : SparsePoly();
    prob.u = j.contains("u") ? int_from_json(j.at("u")) : Int(1);
    prob.centered = j.value("centered", false);
    if (j.contains("lift")) prob.lift = lift_mode_from_name(j.at("lift").get<std::string>());
    if (prob.vars.size() != known)
      throw Error(Errc::UnboundedVariable, "variable '" + prob.vars.name(static_cast<VarId>(known)) +
                                               "' is used but not declared in X or Y");
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
  return prob;
}

}  // namespace fqb
