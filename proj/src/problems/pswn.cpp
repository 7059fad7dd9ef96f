#include "fqbool/errors.hpp"
#include "fqbool/problems.hpp"

namespace fqb {

StandardProblem pswn_build(const PolySystem& F) {
  if (!F.ring.is_mod()) throw Error(Errc::RingMismatch, "noisy systems are built over F_p");
  const Int& p = F.ring.characteristic();
  if (p > 64) throw Error(Errc::InvalidArgument, "p too large for the e^(p-1) slack");
  StandardProblem prob;
  prob.p = p;
  for (const auto& n : F.vars.names()) prob.add_x(n);
  const std::size_t r = F.polys.size();
  std::vector<VarId> e(r), H(r);
  for (std::size_t j = 0; j < r; ++j) e[j] = prob.add_x("e" + std::to_string(j + 1));
  for (std::size_t j = 0; j < r; ++j) H[j] = prob.add_y("H" + std::to_string(j + 1), 1, 0, VarClass::HBit);
  // F's variable ids coincide with the first ids of prob.vars.
  for (std::size_t j = 0; j < r; ++j) prob.F.push_back(F.polys[j] - SparsePoly::variable(F.ring, e[j]));
  const unsigned pm1 = static_cast<unsigned>(p) - 1;
  for (std::size_t j = 0; j < r; ++j)
    prob.F.push_back(SparsePoly::variable(F.ring, H[j]) - SparsePoly::variable(F.ring, e[j]).pow(pm1));
  SparsePoly o;
  for (std::size_t j = 0; j < r; ++j) o += SparsePoly::variable(Ring(), H[j]);
  prob.o = o;
  prob.u = Int(r) + 1;
  return prob;
}

PolySystem lswn_system(const Matrix& A, const std::vector<Int>& b, const Int& p) {
  PolySystem S = linear_system(A, p);
  if (b.size() != A.size()) throw Error(Errc::ShapeMismatch, "A and b disagree on the number of rows");
  for (std::size_t j = 0; j < b.size(); ++j) S.polys[j] -= SparsePoly::constant(S.ring, b[j]);
  return S;
}

PolySystem linear_system(const Matrix& A, const Int& p) {
  PolySystem S;
  S.ring = Ring::mod(p);
  const std::size_t n = A.empty() ? 0 : A[0].size();
  for (std::size_t i = 0; i < n; ++i) S.vars.add("x" + std::to_string(i + 1));
  for (const auto& row : A) {
    if (row.size() != n) throw Error(Errc::ShapeMismatch, "ragged matrix");
    SparsePoly f(S.ring);
    for (std::size_t i = 0; i < n; ++i) f.add_term(Monomial::var(static_cast<VarId>(i)), row[i]);
    S.polys.push_back(std::move(f));
  }
  return S;
}

}  // namespace fqb
