#include "fqbool/boolsys.hpp"

#include "fqbool/errors.hpp"

namespace fqb {

namespace {

constexpr const char* kClassNames[] = {"XBit", "YBit", "VBit", "UBit", "GBit", "FBit", "HBit", "Aux"};

}  // namespace

const char* class_name(VarClass c) { return kClassNames[static_cast<int>(c)]; }

VarClass class_from_name(const std::string& s) {
  for (int i = 0; i < 8; ++i)
    if (s == kClassNames[i]) return static_cast<VarClass>(i);
  throw Error(Errc::ParseError, "unknown variable class '" + s + "'");
}

// ---------------------------------------------------------------------------

Int AffineExpansion::min_value() const {
  Int v = offset;
  for (const auto& [b, w] : weights)
    if (w < 0) v += w;
  return v;
}

Int AffineExpansion::max_value() const {
  Int v = offset;
  for (const auto& [b, w] : weights)
    if (w > 0) v += w;
  return v;
}

Int AffineExpansion::value(const Assignment& a) const {
  Int v = offset;
  for (const auto& [b, w] : weights) {
    if (b >= a.size()) throw Error(Errc::MissingBits, "no value for bit " + std::to_string(b) + " of " + var);
    if (a[b]) v += w;
  }
  return v;
}

SparsePoly AffineExpansion::as_poly() const {
  SparsePoly p;
  p.add_term(Monomial(), offset);
  for (const auto& [b, w] : weights) p.add_term(Monomial::var(b), w);
  return p;
}

// ---------------------------------------------------------------------------

VarId BooleanSystem::add_var(const std::string& stem, VarClass cls, std::optional<std::string> origin, unsigned bit) {
  const VarId id = names_.fresh(stem);
  vars_.push_back({id, names_.name(id), cls, std::move(origin), bit});
  return id;
}

std::size_t BooleanSystem::add_equation(const SparsePoly& f, std::string provenance) {
  if (!f.ring().is_integers()) throw Error(Errc::RingMismatch, "Boolean equations live over Z");
  for (const auto& [m, c] : f.terms())
    for (const auto& [v, e] : m.factors())
      if (v >= vars_.size()) throw Error(Errc::InvalidArgument, "equation uses unregistered variable");
  eqs_.push_back(f.is_multilinear() ? f : f.multilinearize());
  prov_.push_back(std::move(provenance));
  return eqs_.size() - 1;
}

void BooleanSystem::add_decode(AffineExpansion e) {
  if (decode_index_.count(e.var)) throw Error(Errc::InvalidArgument, "variable '" + e.var + "' decoded twice");
  decode_index_.emplace(e.var, decode_.size());
  decode_.push_back(std::move(e));
}

const AffineExpansion* BooleanSystem::find_decode(const std::string& var) const {
  auto it = decode_index_.find(var);
  return it == decode_index_.end() ? nullptr : &decode_[it->second];
}

void BooleanSystem::set_field(const Ring& r, std::vector<FieldVar> vars) {
  field_ = r;
  field_vars_ = std::move(vars);
}

std::size_t BooleanSystem::total_terms() const { return fqb::total_terms(eqs_); }

// ---------------------------------------------------------------------------

EncodedSolution decode(const BooleanSystem& sys, const Assignment& a) {
  if (a.size() < sys.num_vars())
    throw Error(Errc::MissingBits, "assignment covers " + std::to_string(a.size()) + " of " +
                                       std::to_string(sys.num_vars()) + " variables");
  EncodedSolution s;
  s.assignment = a;
  for (const auto& e : sys.decode_map()) s.decoded[e.var] = e.value(a);
  return s;
}

std::map<std::string, Int> decode_field(const BooleanSystem& sys, const EncodedSolution& s) {
  std::map<std::string, Int> out;
  if (!sys.field()) return out;
  for (const auto& fv : sys.field_vars()) {
    std::vector<Int> c;
    for (const auto& comp : fv.components) c.push_back(s.decoded.at(comp));
    out[fv.var] = sys.field()->pack(c);
  }
  return out;
}

std::vector<Int> evaluate(const BooleanSystem& sys, const Assignment& a) {
  if (a.size() < sys.num_vars()) throw Error(Errc::MissingBits, "assignment does not cover the registry");
  std::vector<Int> r;
  r.reserve(sys.num_equations());
  for (const auto& f : sys.equations()) {
    Int acc = 0;
    for (const auto& [m, c] : f.terms()) {
      bool on = true;
      for (const auto& [v, e] : m.factors()) on = on && a[v];
      if (on) acc += c;
    }
    r.push_back(acc);
  }
  return r;
}

bool satisfies(const BooleanSystem& sys, const Assignment& a) {
  for (const auto& r : evaluate(sys, a))
    if (r != 0) return false;
  return true;
}

bool set_value(const AffineExpansion& e, const Int& value, Assignment& a) {
  Int rest = value - e.offset;
  const auto& w = e.weights;
  // theta shape: 1, 2, ..., 2^{s-1}, r with 1 <= r <= 2^s.
  bool theta = !w.empty();
  for (std::size_t i = 0; theta && i + 1 < w.size(); ++i) theta = w[i].second == (Int(1) << i);
  if (theta) {
    const std::size_t s = w.size() - 1;
    const Int top = Int(1) << s;
    theta = w.back().second >= 1 && w.back().second <= top;
    if (theta) {
      if (rest < 0 || rest > top - 1 + w.back().second) return false;
      const bool hi = rest >= top;
      a.at(w.back().first) = hi;
      if (hi) rest -= w.back().second;
      for (std::size_t i = 0; i < s; ++i) a.at(w[i].first) = static_cast<std::uint8_t>(bit_test(rest, static_cast<unsigned>(i)));
      return true;
    }
  }
  if (w.empty()) return rest == 0;
  if (w.size() > 24) throw Error(Errc::InvalidArgument, "set_value: expansion too wide for search");
  for (std::uint32_t mask = 0; mask < (1u << w.size()); ++mask) {
    Int v = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (mask >> i & 1u) v += w[i].second;
    if (v == rest) {
      for (std::size_t i = 0; i < w.size(); ++i) a.at(w[i].first) = mask >> i & 1u;
      return true;
    }
  }
  return false;
}

bool complete_lifts(const BooleanSystem& sys, Assignment& a) {
  if (a.size() < sys.num_vars()) a.resize(sys.num_vars(), 0);
  for (const auto& lr : sys.lifts()) {
    for (const auto& [b, w] : lr.counter.weights) a[b] = 0;
    Int residual = 0;  // equation value with the counter at its minimum
    for (const auto& [m, c] : sys.equations()[lr.equation].terms()) {
      bool on = true;
      for (const auto& [v, e] : m.factors()) on = on && a[v];
      if (on) residual += c;
    }
    // residual = f - k*offset; need k*(theta) = residual.
    if (residual % lr.modulus != 0) return false;
    const Int theta_value = residual / lr.modulus;
    if (!set_value(lr.counter, theta_value + lr.counter.offset, a)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

json expansion_to_json(const AffineExpansion& e, const BooleanSystem& sys) {
  json w = json::array();
  for (const auto& [b, c] : e.weights) w.push_back({sys.registry()[b].name, to_string(c)});
  return {{"var", e.var}, {"offset", to_string(e.offset)}, {"weights", w}};
}

namespace {

AffineExpansion expansion_from_json(const json& j, const BooleanSystem& sys) {
  AffineExpansion e;
  e.var = j.at("var").get<std::string>();
  e.offset = parse_int(j.at("offset").get<std::string>());
  for (const auto& w : j.at("weights")) e.weights.emplace_back(sys.names().at(w.at(0).get<std::string>()), parse_int(w.at(1).get<std::string>()));
  return e;
}

}  // namespace

json to_json(const BooleanSystem& sys) {
  json reg = json::array();
  for (const auto& v : sys.registry()) {
    json r = {{"id", v.id}, {"name", v.name}, {"class", class_name(v.cls)}};
    if (v.origin) r["origin"] = {{"var", *v.origin}, {"bit", v.bit}};
    reg.push_back(r);
  }
  json eqs = json::array();
  for (std::size_t i = 0; i < sys.num_equations(); ++i)
    eqs.push_back({{"terms", terms_to_json(sys.equations()[i], sys.names())}, {"provenance", sys.provenance()[i]}});
  auto list = [&](const std::vector<AffineExpansion>& v) {
    json a = json::array();
    for (const auto& e : v) a.push_back(expansion_to_json(e, sys));
    return a;
  };
  json lifts = json::array();
  for (const auto& l : sys.lifts())
    lifts.push_back({{"equation", l.equation}, {"modulus", to_string(l.modulus)}, {"counter", expansion_to_json(l.counter, sys)}});
  json out = {{"ring", ring_to_json(Ring::integers())},
              {"registry", reg},
              {"equations", eqs},
              {"decode", list(sys.decode_map())},
              {"internal", list(sys.internal())},
              {"symmetric", list(sys.symmetric())},
              {"lifts", lifts}};
  if (sys.field()) {
    json fv = json::array();
    for (const auto& f : sys.field_vars()) fv.push_back({{"var", f.var}, {"components", f.components}});
    out["field"] = {{"ring", ring_to_json(*sys.field())}, {"vars", fv}};
  }
  return out;
}

BooleanSystem boolean_system_from_json(const json& j) {
  BooleanSystem sys;
  for (const auto& r : j.at("registry")) {
    std::optional<std::string> origin;
    unsigned bit = 0;
    if (r.contains("origin")) {
      origin = r.at("origin").at("var").get<std::string>();
      bit = r.at("origin").at("bit").get<unsigned>();
    }
    const auto name = r.at("name").get<std::string>();
    const VarId id = sys.add_var(name, class_from_name(r.at("class").get<std::string>()), origin, bit);
    if (sys.registry()[id].name != name || (r.contains("id") && r.at("id").get<VarId>() != id))
      throw Error(Errc::ParseError, "registry entries must be unique and in id order");
  }
  VarRegistry names = sys.names();
  const Ring Z = Ring::integers();
  for (const auto& e : j.at("equations")) {
    SparsePoly f = poly_from_json(e.at("terms"), Z, names);
    if (names.size() != sys.num_vars()) throw Error(Errc::ParseError, "equation references unknown variable");
    sys.add_equation(f, e.value("provenance", std::string()));
  }
  if (j.contains("decode"))
    for (const auto& e : j.at("decode")) sys.add_decode(expansion_from_json(e, sys));
  if (j.contains("internal"))
    for (const auto& e : j.at("internal")) sys.add_internal(expansion_from_json(e, sys));
  if (j.contains("symmetric"))
    for (const auto& e : j.at("symmetric")) sys.add_symmetric(expansion_from_json(e, sys));
  if (j.contains("lifts"))
    for (const auto& l : j.at("lifts"))
      sys.add_lift({l.at("equation").get<std::size_t>(), parse_int(l.at("modulus").get<std::string>()),
                    expansion_from_json(l.at("counter"), sys)});
  if (j.contains("field")) {
    std::vector<FieldVar> fv;
    for (const auto& f : j.at("field").at("vars"))
      fv.push_back({f.at("var").get<std::string>(), f.at("components").get<std::vector<std::string>>()});
    sys.set_field(ring_from_json(j.at("field").at("ring")), std::move(fv));
  }
  return sys;
}

}  // namespace fqb
