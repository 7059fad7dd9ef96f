#include "fqbool/polyio.hpp"

#include "fqbool/errors.hpp"

#include <cctype>

namespace fqb {

json ring_to_json(const Ring& r) {
  switch (r.kind()) {
    case Ring::Kind::Integers: return {{"kind", "Integers"}};
    case Ring::Kind::ModK: return {{"kind", "ModK"}, {"modulus", to_string(r.characteristic())}};
    case Ring::Kind::ExtField: {
      json phi = json::array();
      for (const auto& c : r.phi()) phi.push_back(to_string(c));
      return {{"kind", "ExtField"}, {"p", to_string(r.characteristic())}, {"phi", phi}, {"gen", r.generator()}};
    }
  }
  return {};
}

Int int_from_json(const json& j) {
  if (j.is_string()) return parse_int(j.get<std::string>());
  if (j.is_number_integer()) return Int(j.get<long long>());
  throw Error(Errc::ParseError, "expected an integer, got " + j.dump());
}

Ring ring_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw Error(Errc::ParseError, "ring needs a 'kind'");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "Integers") return Ring::integers();
  if (kind == "ModK") return Ring::mod(int_from_json(j.at("modulus")));
  if (kind == "ExtField") {
    std::vector<Int> phi;
    for (const auto& c : j.at("phi")) phi.push_back(int_from_json(c));
    const bool trusted = j.value("trusted", false);
    return Ring::ext(int_from_json(j.at("p")), std::move(phi), trusted, j.value("gen", std::string("t")));
  }
  throw Error(Errc::ParseError, "unknown ring kind '" + kind + "'");
}

json coeff_to_json(const Ring& r, const Int& c) {
  if (!r.is_ext()) return to_string(c);
  json a = json::array();
  for (const auto& x : r.coords(c)) a.push_back(to_string(x));
  return a;
}

Int coeff_from_json(const Ring& r, const json& j) {
  if (j.is_array()) {
    std::vector<Int> c;
    for (const auto& x : j) c.push_back(int_from_json(x));
    return r.pack(c);
  }
  return r.from_int(int_from_json(j));
}

json terms_to_json(const SparsePoly& f, const VarRegistry& vars) {
  json terms = json::array();
  for (const auto& [m, c] : f.terms()) {
    json mono = json::object();
    for (const auto& [v, e] : m.factors()) mono[vars.name(v)] = e;
    terms.push_back({{"m", mono}, {"c", coeff_to_json(f.ring(), c)}});
  }
  return terms;
}

json poly_to_json(const SparsePoly& f, const VarRegistry& vars) {
  json names = json::array();
  for (auto v : f.variables()) names.push_back(vars.name(v));
  return {{"ring", ring_to_json(f.ring())}, {"vars", names}, {"terms", terms_to_json(f, vars)}};
}

SparsePoly poly_from_json(const json& j, const Ring& r, VarRegistry& vars) {
  if (j.is_string()) return parse_poly(j.get<std::string>(), r, vars);
  if (j.is_number_integer()) return SparsePoly::constant(r, j.get<long long>());
  const json* terms = &j;
  if (j.is_object()) {
    if (j.contains("vars"))
      for (const auto& n : j.at("vars")) vars.intern(n.get<std::string>());
    terms = &j.at("terms");
  }
  if (!terms->is_array()) throw Error(Errc::ParseError, "polynomial terms must be an array");
  SparsePoly f(r);
  for (const auto& t : *terms) {
    std::vector<Monomial::Factor> fs;
    if (t.contains("m"))
      for (const auto& [name, e] : t.at("m").items()) {
        const auto exp = e.get<long long>();
        if (exp < 0) throw Error(Errc::ParseError, "negative exponent");
        fs.emplace_back(vars.intern(name), static_cast<unsigned>(exp));
      }
    f.add_term(Monomial::from_factors(std::move(fs)), coeff_from_json(r, t.at("c")));
  }
  return f;
}

// ---------------------------------------------------------------------------
// Recursive-descent expression parser.

namespace {

class Parser {
 public:
  Parser(std::string_view s, const Ring& r, VarRegistry& vars) : s_(s), r_(r), vars_(vars) {}

  SparsePoly run() {
    SparsePoly f = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& why) {
    throw Error(Errc::ParseError, why + " at offset " + std::to_string(i_) + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  SparsePoly expr() {
    SparsePoly acc(r_);
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    while (true) {
      SparsePoly t = term();
      acc += neg ? -t : t;
      if (eat('+')) neg = false;
      else if (eat('-')) neg = true;
      else break;
    }
    return acc;
  }

  SparsePoly term() {
    SparsePoly acc = factor();
    while (eat('*')) acc = acc * factor();
    return acc;
  }

  SparsePoly factor() {
    SparsePoly base = atom();
    if (eat('^')) {
      skip();
      const std::size_t start = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (start == i_) fail("expected exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(std::string(s_.substr(start, i_ - start)))));
    }
    return base;
  }

  SparsePoly atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end");
    const char c = s_[i_];
    if (c == '(') {
      ++i_;
      SparsePoly e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return SparsePoly::constant(r_, parse_int(s_.substr(start, i_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_' || s_[i_] == '.'))
        ++i_;
      const std::string name(s_.substr(start, i_ - start));
      if (r_.is_ext() && name == r_.generator()) {
        SparsePoly g(r_);
        g.add_term(Monomial(), r_.gen_pow(1));
        return g;
      }
      return SparsePoly::variable(r_, vars_.intern(name));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t i_ = 0;
  const Ring& r_;
  VarRegistry& vars_;
};

std::string coeff_text(const Ring& r, const Int& c) {
  if (!r.is_ext()) return to_string(c);
  const auto x = r.coords(c);
  std::string out;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] == 0) continue;
    if (!out.empty()) out += " + ";
    if (j == 0 || x[j] != 1) out += to_string(x[j]);
    if (j > 0) {
      if (x[j] != 1) out += "*";
      out += r.generator();
      if (j > 1) out += "^" + std::to_string(j);
    }
  }
  return "(" + out + ")";
}

}  // namespace

SparsePoly parse_poly(std::string_view text, const Ring& r, VarRegistry& vars) { return Parser(text, r, vars).run(); }

std::string format_poly(const SparsePoly& f, const std::vector<std::string>& names) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : f.terms()) {
    std::string coeff = coeff_text(f.ring(), c);
    bool negative = !f.ring().is_ext() && c < 0;
    if (negative) coeff = coeff.substr(1);
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    std::string mono;
    for (const auto& [v, e] : m.factors()) {
      if (!mono.empty()) mono += "*";
      mono += v < names.size() ? names[v] : "?" + std::to_string(v);
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty())
      out += coeff;
    else if (coeff == "1")
      out += mono;
    else
      out += coeff + "*" + mono;
  }
  return out;
}

std::string format_poly(const SparsePoly& f, const VarRegistry& vars) { return format_poly(f, vars.names()); }

PolySystem system_from_json(const json& j) {
  PolySystem s;
  s.ring = ring_from_json(j.at("ring"));
  if (j.contains("vars"))
    for (const auto& n : j.at("vars")) s.vars.intern(n.get<std::string>());
  for (const auto& p : j.at("polys")) s.polys.push_back(poly_from_json(p, s.ring, s.vars));
  return s;
}

json system_to_json(const PolySystem& s) {
  json polys = json::array();
  for (const auto& f : s.polys) polys.push_back({{"terms", terms_to_json(f, s.vars)}});
  return {{"ring", ring_to_json(s.ring)}, {"vars", s.vars.names()}, {"polys", polys}};
}

}  // namespace fqb
