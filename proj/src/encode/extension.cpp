#include "fqbool/encode.hpp"
#include "fqbool/errors.hpp"

namespace fqb {

Descended descend_extension(const std::vector<SparsePoly>& F, VarRegistry& vars) {
  Descended D;
  if (F.empty()) return D;
  const Ring& ext = F.front().ring();
  if (!ext.is_ext()) throw Error(Errc::RingMismatch, "descend_extension needs an extension field");
  const unsigned m = ext.degree();
  const Int& p = ext.characteristic();
  const Ring Fp = Ring::mod(p);

  // x = sum_j x_j t^j, written over the extension ring.
  std::map<VarId, SparsePoly> sub;
  const std::size_t n = vars.size();
  for (VarId v = 0; v < n; ++v) {
    auto& comps = D.components[v];
    SparsePoly s(ext);
    for (unsigned j = 0; j < m; ++j) {
      const VarId c = vars.fresh(vars.name(v) + "." + std::to_string(j));
      comps.push_back(c);
      s.add_term(Monomial::var(c), ext.gen_pow(j));
    }
    sub.emplace(v, std::move(s));
  }

  const unsigned pm1 = static_cast<unsigned>(p - 1);
  for (const auto& f : F) {
    if (f.ring() != ext) throw Error(Errc::RingMismatch, "descend_extension: mixed rings");
    const SparsePoly g = f.substitute(sub);
    std::vector<SparsePoly> parts(m, SparsePoly(Fp));
    for (const auto& [mono, c] : g.terms()) {
      // x^e = x^{((e-1) mod (p-1)) + 1} for x in F_p.
      std::vector<Monomial::Factor> fs;
      for (auto [v, e] : mono.factors()) fs.emplace_back(v, (e - 1) % pm1 + 1);
      const Monomial reduced = Monomial::from_factors(std::move(fs));
      const auto coords = ext.coords(c);
      for (unsigned j = 0; j < m; ++j) parts[j].add_term(reduced, coords[j]);
    }
    for (auto& part : parts) D.polys.push_back(std::move(part));
  }
  return D;
}

}  // namespace fqb
