#include "fqbool/encode.hpp"
#include "fqbool/errors.hpp"

namespace fqb {

void Encoder::declare(VarId v, const VarDomain& d, bool original) {
  if (expansions_.count(v)) throw Error(Errc::InvalidArgument, "variable '" + vars_.name(v) + "' already expanded");
  if (d.kind == VarDomain::Kind::Field && d.size < 2) throw Error(Errc::BadModulus, "field domain needs k >= 2");
  if (d.kind == VarDomain::Kind::Bounded && d.size < 0) throw Error(Errc::UnboundedVariable, "negative bound");
  domains_[v] = d;
  original_[v] = original;
}

void Encoder::set_expansion(VarId v, AffineExpansion e, bool original) {
  if (expansions_.count(v)) throw Error(Errc::InvalidArgument, "variable '" + vars_.name(v) + "' already expanded");
  e.var = vars_.name(v);
  if (original)
    sys_.add_decode(e);
  else
    sys_.add_internal(e);
  original_[v] = original;
  expansions_.emplace(v, std::move(e));
}

const VarDomain* Encoder::domain(VarId v) const {
  auto it = domains_.find(v);
  return it == domains_.end() ? nullptr : &it->second;
}

const AffineExpansion& Encoder::expansion(VarId v) {
  if (auto it = expansions_.find(v); it != expansions_.end()) return it->second;
  const VarDomain* d = domain(v);
  if (!d) throw Error(Errc::UnboundedVariable, "no domain declared for '" + vars_.name(v) + "'");
  const std::string& name = vars_.name(v);
  const std::string stem = std::string(1, class_name(d->cls)[0]) + "." + name;
  AffineExpansion e;
  Int b;
  switch (d->kind) {
    case VarDomain::Kind::Field:
      b = d->size - 1;
      if (rep_ == Representation::Centered) {
        if (d->size % 2 == 0)
          throw Error(Errc::CenteredRepUnsupported, "centered representation needs an odd modulus");
        e = theta_centered(b, b / 2, sys_, d->cls, stem, name);
      } else {
        e = theta(b, sys_, d->cls, stem, name);
      }
      break;
    case VarDomain::Kind::Bounded:
      b = d->size;
      e = theta_centered(b, d->shift, sys_, d->cls, stem, name);
      break;
    case VarDomain::Kind::Boolean:
      e.var = name;
      e.weights.emplace_back(sys_.add_var(stem, d->cls, name, 0), 1);
      break;
  }
  if (d->kind != VarDomain::Kind::Boolean && !theta_injective(b) && b > 0) sys_.add_symmetric(e);
  if (original_[v])
    sys_.add_decode(e);
  else
    sys_.add_internal(e);
  return expansions_.emplace(v, std::move(e)).first->second;
}

SparsePoly Encoder::to_bits(const SparsePoly& f) {
  if (f.ring().is_ext()) throw Error(Errc::RingMismatch, "to_bits needs integer coefficients");
  SparsePoly out;
  for (const auto& [m, c] : f.terms()) {
    SparsePoly acc = SparsePoly::constant(Ring::integers(), c);
    for (const auto& [v, e] : m.factors()) {
      const SparsePoly x = expansion(v).as_poly();
      for (unsigned k = 0; k < e; ++k) acc = mul_multilinear(acc, x);
    }
    out += acc;
  }
  return out;
}

Int Encoder::value_min(VarId v) const {
  if (auto it = expansions_.find(v); it != expansions_.end()) return it->second.min_value();
  const VarDomain* d = domain(v);
  if (!d) throw Error(Errc::UnboundedVariable, "no domain declared for '" + vars_.name(v) + "'");
  switch (d->kind) {
    case VarDomain::Kind::Field: return rep_ == Representation::Centered ? Int(-((d->size - 1) / 2)) : Int(0);
    case VarDomain::Kind::Bounded: return -d->shift;
    case VarDomain::Kind::Boolean: return 0;
  }
  return 0;
}

Int Encoder::value_max(VarId v) const {
  if (auto it = expansions_.find(v); it != expansions_.end()) return it->second.max_value();
  const VarDomain* d = domain(v);
  if (!d) throw Error(Errc::UnboundedVariable, "no domain declared for '" + vars_.name(v) + "'");
  switch (d->kind) {
    case VarDomain::Kind::Field: return rep_ == Representation::Centered ? Int((d->size - 1) / 2) : Int(d->size - 1);
    case VarDomain::Kind::Bounded: return d->size - d->shift;
    case VarDomain::Kind::Boolean: return 1;
  }
  return 0;
}

// ---------------------------------------------------------------------------

std::vector<SparsePoly> bit_blast(Encoder& enc, const std::vector<SparsePoly>& F) {
  std::vector<SparsePoly> out;
  for (const auto& f : F) {
    if (!f.ring().is_mod()) throw Error(Errc::RingMismatch, "bit_blast expects polynomials over Z_k");
    if (f.degree() > 2) throw Error(Errc::NotQuadratic, "bit_blast input has degree " + std::to_string(f.degree()));
    const Int& k = f.ring().characteristic();
    for (VarId v : f.variables())
      if (!enc.declared(v)) enc.declare(v, VarDomain::field(k));
    if (enc.representation() == Representation::Standard) {
      out.push_back(enc.to_bits(f).with_ring(f.ring()));
    } else {
      // Symmetric residues for the input coefficients, then exact integer
      // expansion: the lift sees the true signed range.
      SparsePoly s;
      for (const auto& [m, c] : f.terms()) s.add_term(m, 2 * c > k ? c - k : c);
      out.push_back(enc.to_bits(s));
    }
  }
  return out;
}

LiftInfo lift_range(const SparsePoly& f, const Int& k, LiftMode mode) {
  if (k < 2) throw Error(Errc::BadModulus, "lift modulus must be >= 2");
  switch (mode) {
    case LiftMode::TermCount: return {0, Int(f.size())};
    case LiftMode::CoeffSum: {
      Int C = 0;
      for (const auto& [m, c] : f.terms()) C += mod(c, k);
      return {0, C / k};
    }
    case LiftMode::SignedRange: {
      Int lo = 0, hi = 0;
      for (const auto& [m, c] : f.terms()) {
        if (m.is_constant()) {
          lo += c, hi += c;
        } else if (c < 0) {
          lo += c;
        } else {
          hi += c;
        }
      }
      const Int m_lo = ceil_div(lo, k);
      const Int M = floor_div(hi, k) - m_lo;
      // No attainable multiple: keep M = 0, the equation is then unsatisfiable.
      return {m_lo, M < 0 ? Int(0) : M};
    }
  }
  return {0, 0};
}

std::vector<std::size_t> lift_modular(BooleanSystem& sys, const std::vector<SparsePoly>& BF, const Int& k,
                                      LiftMode mode, const std::vector<std::string>& provenance) {
  if (k < 2) throw Error(Errc::BadModulus, "lift modulus must be >= 2");
  const Ring Z = Ring::integers(), Zk = Ring::mod(k);
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < BF.size(); ++i) {
    SparsePoly f = BF[i].ring().is_integers() ? BF[i] : BF[i].with_ring(Z);
    if (mode != LiftMode::SignedRange) f = f.with_ring(Zk).with_ring(Z);
    const LiftInfo li = lift_range(f, k, mode);
    const std::size_t eq = sys.num_equations();
    AffineExpansion counter = theta(li.M, sys, VarClass::UBit, "U." + std::to_string(eq));
    counter.offset = li.m_lo;
    if (li.M > 0 && !theta_injective(li.M)) sys.add_symmetric(counter);
    std::string tag = i < provenance.size() ? provenance[i] : std::string("lift");
    sys.add_equation(f - counter.as_poly().scale(k), tag + " mod " + to_string(k));
    sys.add_lift({eq, k, std::move(counter)});
    idx.push_back(eq);
  }
  return idx;
}

}  // namespace fqb
