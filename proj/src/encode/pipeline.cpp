#include "fqbool/encode.hpp"
#include "fqbool/errors.hpp"

#include <set>

namespace fqb {

namespace {

const char* role_name(Quadratized::Role r) {
  switch (r) {
    case Quadratized::Role::Squaring: return "square";
    case Quadratized::Role::Product: return "product";
    case Quadratized::Role::Target: return "target";
  }
  return "?";
}

}  // namespace

void reduce_into(Encoder& enc, const std::vector<SparsePoly>& F, LiftMode mode, const std::string& tag) {
  if (F.empty()) return;
  const Ring ring = F.front().ring();
  if (ring.is_integers()) throw Error(Errc::RingMismatch, "reduce_into expects Z_k or F_{p^m}");
  if (enc.representation() == Representation::Centered) mode = LiftMode::SignedRange;

  const std::size_t before = enc.vars().size();
  Quadratized Q = quadratize(F, enc.vars());
  std::vector<std::string> prov;
  for (auto r : Q.roles) prov.push_back(tag + ":" + role_name(r));

  std::vector<SparsePoly> polys;
  Int k;
  if (ring.is_ext()) {
    if (enc.representation() == Representation::Centered)
      throw Error(Errc::CenteredRepUnsupported, "centered representation over extension fields");
    k = ring.characteristic();
    std::set<VarId> chain(Q.new_vars.begin(), Q.new_vars.end());
    Descended D = descend_extension(Q.polys, enc.vars());
    std::vector<FieldVar> fvars = enc.system().field_vars();
    for (const auto& [v, comps] : D.components) {
      const bool original = !chain.count(v) && v < before;
      FieldVar fv{enc.vars().name(v), {}};
      for (VarId c : comps) {
        enc.declare(c, VarDomain::field(k), original);
        fv.components.push_back(enc.vars().name(c));
      }
      if (original) fvars.push_back(std::move(fv));
    }
    for (VarId v = 0; v < enc.vars().size(); ++v)
      if (enc.declared(v) && enc.domain(v) && enc.domain(v)->kind == VarDomain::Kind::Field) enc.expansion(v);
    enc.system().set_field(ring, std::move(fvars));
    std::vector<std::string> dprov;
    for (const auto& t : prov)
      for (unsigned j = 0; j < ring.degree(); ++j) dprov.push_back(t + "[t^" + std::to_string(j) + "]");
    prov = std::move(dprov);
    polys = std::move(D.polys);
  } else {
    k = ring.characteristic();
    for (VarId v : Q.new_vars) enc.declare(v, VarDomain::field(k), false);
    polys = std::move(Q.polys);
  }
  const std::vector<SparsePoly> B = bit_blast(enc, polys);
  lift_modular(enc.system(), B, k, mode, prov);
}

BooleanSystem full_reduce(const PolySystem& F, const ReduceOptions& opt) {
  Encoder enc(F.vars, opt.rep);
  const LiftMode mode = opt.rep == Representation::Centered ? LiftMode::SignedRange : opt.lift;
  if (F.ring.is_integers()) throw Error(Errc::RingMismatch, "full_reduce expects a finite ring");
  if (F.ring.is_mod()) {
    // Every input variable is decoded, even if no equation mentions it.
    for (VarId v = 0; v < F.vars.size(); ++v) {
      enc.declare(v, VarDomain::field(F.ring.characteristic()));
      enc.expansion(v);
    }
    reduce_into(enc, F.polys, mode);
  } else if (!F.polys.empty()) {
    reduce_into(enc, F.polys, mode);
  } else {
    // No equations: still expose every variable through its components.
    Descended D = descend_extension({SparsePoly(F.ring)}, enc.vars());
    std::vector<FieldVar> fvars;
    for (const auto& [v, comps] : D.components) {
      FieldVar fv{enc.vars().name(v), {}};
      for (VarId c : comps) {
        enc.declare(c, VarDomain::field(F.ring.characteristic()));
        enc.expansion(c);
        fv.components.push_back(enc.vars().name(c));
      }
      fvars.push_back(std::move(fv));
    }
    enc.system().set_field(F.ring, std::move(fvars));
  }
  return std::move(enc.system());
}

}  // namespace fqb
