#include "fqbool/errors.hpp"
#include "fqbool/problems.hpp"

namespace fqb {

namespace {

void require_odd_prime_field(const PolySystem& F) {
  if (!F.ring.is_mod()) throw Error(Errc::RingMismatch, "expected polynomials over F_p");
  if (F.ring.characteristic() % 2 == 0)
    throw Error(Errc::CenteredRepUnsupported, "centered representation needs an odd p");
}

}  // namespace

BooleanSystem sis_build(const PolySystem& F, const Int& norm_sq_bound) {
  require_odd_prime_field(F);
  Encoder enc(F.vars, Representation::Centered);
  std::vector<VarId> xs;
  for (VarId v = 0; v < F.vars.size(); ++v) {
    enc.declare(v, VarDomain::field(F.ring.characteristic()));
    enc.expansion(v);
    xs.push_back(v);
  }
  reduce_into(enc, F.polys, LiftMode::SignedRange, "F");
  add_norm_window(enc, xs, norm_sq_bound);
  return std::move(enc.system());
}

StandardProblem smallest_solution_build(const PolySystem& F) {
  require_odd_prime_field(F);
  StandardProblem prob;
  prob.p = F.ring.characteristic();
  prob.centered = true;
  prob.lift = LiftMode::SignedRange;
  for (const auto& n : F.vars.names()) prob.add_x(n);
  prob.F = F.polys;
  SparsePoly o = SparsePoly::constant(Ring(), -1);
  for (VarId v = 0; v < F.vars.size(); ++v) o += SparsePoly::variable(Ring(), v).pow(2);
  prob.o = o;
  prob.u = Int(F.vars.size()) * (prob.p - 1) * (prob.p - 1);
  if (prob.u < 1) prob.u = 1;
  return prob;
}

}  // namespace fqb
