#include "fqbool/encode.hpp"
#include "fqbool/errors.hpp"

namespace fqb {

Int chain_value_bound(const Encoder& enc, const std::vector<SparsePoly>& G) {
  unsigned d = 0;
  Int h = 0;
  for (const auto& g : G) {
    d = std::max(d, g.degree());
    for (VarId v : g.variables()) h = std::max({h, abs(enc.value_min(v)), abs(enc.value_max(v))});
  }
  return pow(h, d);
}

IntegerEncoding encode_integers(Encoder& enc, const std::vector<SparsePoly>& G, const std::string& tag) {
  IntegerEncoding out;
  bool signed_values = false;
  for (const auto& g : G) {
    if (!g.ring().is_integers()) throw Error(Errc::RingMismatch, "encode_integers expects polynomials over Z");
    for (VarId v : g.variables()) {
      if (!enc.declared(v)) throw Error(Errc::UnboundedVariable, "no bound for '" + enc.vars().name(v) + "'");
      signed_values = signed_values || enc.value_min(v) < 0;
    }
  }
  out.chain_bound = chain_value_bound(enc, G);
  Quadratized Q = quadratize(G, enc.vars());
  for (VarId v : Q.new_vars) {
    const VarDomain d = signed_values ? VarDomain::bounded(2 * out.chain_bound, out.chain_bound, VarClass::VBit)
                                      : VarDomain::bounded(out.chain_bound, 0, VarClass::VBit);
    enc.declare(v, d, false);
  }
  for (std::size_t i = 0; i < Q.polys.size(); ++i) {
    SparsePoly b = enc.to_bits(Q.polys[i]);
    if (Q.roles[i] == Quadratized::Role::Target)
      out.gbar.push_back(std::move(b));
    else
      out.side_equations.push_back(
          enc.system().add_equation(b, tag + (Q.roles[i] == Quadratized::Role::Squaring ? ":square" : ":product")));
  }
  return out;
}

void encode_inequalities(Encoder& enc, const std::vector<Inequality>& I) {
  std::vector<SparsePoly> gs;
  std::vector<Int> bs;
  for (const auto& [g, b] : I) {
    if (b <= 0) {
      if (g.degree() > 0)
        throw Error(Errc::EmptyOrPointConstraint, "bound " + to_string(b) + " leaves at most one value; use g = 0");
      const Int c = g.constant_term();
      if (c < 0 || c > b) enc.system().add_equation(SparsePoly::constant(Ring::integers(), 1), "ineq:infeasible");
      continue;
    }
    gs.push_back(g);
    bs.push_back(b);
  }
  if (gs.empty()) return;
  IntegerEncoding E = encode_integers(enc, gs, "ineq");
  for (std::size_t i = 0; i < gs.size(); ++i) {
    AffineExpansion slack = theta(bs[i], enc.system(), VarClass::GBit, "G." + std::to_string(i));
    if (!theta_injective(bs[i])) enc.system().add_symmetric(slack);
    enc.system().add_internal(slack);
    enc.system().add_equation(slack.as_poly() - E.gbar[i], "ineq:" + std::to_string(i));
  }
}

std::size_t add_norm_window(Encoder& enc, const std::vector<VarId>& xs, const Int& norm_sq_bound) {
  if (norm_sq_bound < 1) throw Error(Errc::InvalidArgument, "norm bound must be >= 1");
  SparsePoly norm = SparsePoly::constant(Ring::integers(), -1);
  for (VarId x : xs) norm += enc.to_bits(SparsePoly::variable(Ring::integers(), x).pow(2));
  AffineExpansion slack = theta(norm_sq_bound - 1, enc.system(), VarClass::GBit, "G.norm");
  if (norm_sq_bound > 1 && !theta_injective(norm_sq_bound - 1)) enc.system().add_symmetric(slack);
  enc.system().add_internal(slack);
  return enc.system().add_equation(slack.as_poly() - norm, "norm-window");
}

}  // namespace fqb
