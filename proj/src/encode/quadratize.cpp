#include "fqbool/encode.hpp"
#include "fqbool/errors.hpp"

#include <set>

namespace fqb {

Quadratized quadratize(const std::vector<SparsePoly>& F, VarRegistry& vars) {
  Quadratized Q;
  bool mq = true;
  for (const auto& f : F) mq = mq && f.degree() <= 2;
  if (F.empty() || mq) {
    Q.polys = F;
    Q.roles.assign(F.size(), Quadratized::Role::Target);
    for (std::size_t j = 0; j < F.size(); ++j) Q.hat_index.push_back(j);
    return Q;
  }
  const Ring ring = F.front().ring();
  for (const auto& f : F)
    if (f.ring() != ring) throw Error(Errc::RingMismatch, "quadratize: polys over different rings");

  // d_i per variable, in id order.
  std::map<VarId, unsigned> maxdeg;
  for (const auto& f : F)
    for (const auto& [m, c] : f.terms())
      for (const auto& [v, e] : m.factors()) maxdeg[v] = std::max(maxdeg[v], e);

  auto var = [&](VarId v) { return SparsePoly::variable(ring, v); };

  // Squaring chains: square[v][j-1] = u_{v,j} = x_v^{2^j}.
  std::map<VarId, std::vector<VarId>> square;
  for (const auto& [v, d] : maxdeg) {
    if (d < 2) continue;
    const unsigned chain = floor_log2(d);
    VarId prev = v;
    for (unsigned j = 1; j <= chain; ++j) {
      const VarId u = vars.fresh("u." + vars.name(v) + "." + std::to_string(j));
      square[v].push_back(u);
      Q.new_vars.push_back(u);
      Q.represents[u] = Monomial::var(v, 1u << j);
      Q.polys.push_back(var(u) - var(prev) * var(prev));
      Q.roles.push_back(Quadratized::Role::Squaring);
      prev = u;
    }
  }

  auto next_v = [&, counter = std::size_t{0}]() mutable {
    for (;;) {
      std::string name = "v." + std::to_string(++counter);
      if (!vars.find(name)) return vars.add(name);
    }
  };

  // One rewritten monomial per distinct monomial of F.
  std::map<Monomial, Monomial> rewritten;
  for (const auto& f : F) {
    for (const auto& [m, c] : f.terms()) {
      if (rewritten.count(m)) continue;
      std::vector<VarId> factors;
      std::vector<Monomial> meaning;
      for (const auto& [v, e] : m.factors())
        for (unsigned k = 0; (e >> k) != 0; ++k)
          if (e >> k & 1u) {
            factors.push_back(k == 0 ? v : square.at(v).at(k - 1));
            meaning.push_back(Monomial::var(v, 1u << k));
          }
      if (factors.size() <= 2) {
        std::vector<Monomial::Factor> fs;
        for (auto id : factors) fs.emplace_back(id, 1);
        rewritten.emplace(m, Monomial::from_factors(std::move(fs)));
        continue;
      }
      VarId acc = factors[0];
      Monomial acc_meaning = meaning[0];
      for (std::size_t i = 1; i + 1 < factors.size(); ++i) {
        const VarId v = next_v();
        Q.new_vars.push_back(v);
        acc_meaning = acc_meaning * meaning[i];
        Q.represents[v] = acc_meaning;
        Q.polys.push_back(var(v) - var(acc) * var(factors[i]));
        Q.roles.push_back(Quadratized::Role::Product);
        acc = v;
      }
      rewritten.emplace(m, Monomial::from_factors({{acc, 1}, {factors.back(), 1}}));
    }
  }

  for (const auto& f : F) {
    SparsePoly hat(ring);
    for (const auto& [m, c] : f.terms()) hat.add_term(rewritten.at(m), c);
    Q.hat_index.push_back(Q.polys.size());
    Q.polys.push_back(std::move(hat));
    Q.roles.push_back(Quadratized::Role::Target);
  }
  return Q;
}

}  // namespace fqb
