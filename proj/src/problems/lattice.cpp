#include "fqbool/errors.hpp"
#include "fqbool/problems.hpp"

#include <stdexcept>

namespace fqb {

LatticeInstance lattice_from_json(const json& j) {
  try {
    LatticeInstance L;
    L.B = matrix_from_json(j.at("B"));
    if (j.contains("target") && !j["target"].is_null()) {
      L.target = vector_from_json(j["target"]);
      if (L.target->size() != L.rows()) throw Error(Errc::ShapeMismatch, "target length differs from the row count");
    }
    if (j.contains("coeff_bound") && !j["coeff_bound"].is_null()) {
      L.coeff_bound = int_from_json(j["coeff_bound"]);
      if (*L.coeff_bound < 0) throw Error(Errc::InvalidArgument, "coeff_bound must be >= 0");
    }
    if (L.rows() == 0 || L.cols() == 0) throw Error(Errc::ShapeMismatch, "empty basis");
    return L;
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

Int inf_norm(const Matrix& M) {
  Int n = 0;
  for (const auto& row : M)
    for (const auto& x : row)
      if (abs(x) > n) n = abs(x);
  return n;
}

namespace {

// Fraction-free Gaussian elimination; returns the rank and, for square
// input, the determinant.
std::pair<std::size_t, Int> bareiss(Matrix A) {
  const std::size_t m = A.size(), n = m ? A[0].size() : 0;
  std::size_t rank = 0;
  Int prev = 1;
  int sign = 1;
  for (std::size_t col = 0; col < n && rank < m; ++col) {
    std::size_t piv = rank;
    while (piv < m && A[piv][col] == 0) ++piv;
    if (piv == m) continue;
    if (piv != rank) {
      std::swap(A[piv], A[rank]);
      sign = -sign;
    }
    for (std::size_t i = rank + 1; i < m; ++i) {
      for (std::size_t j = col + 1; j < n; ++j) A[i][j] = (A[i][j] * A[rank][col] - A[i][col] * A[rank][j]) / prev;
      A[i][col] = 0;
    }
    prev = A[rank][col];
    ++rank;
  }
  Int det = 0;
  if (m == n && rank == n) det = n ? sign * prev : Int(1);
  return {rank, det};
}

void col_combine(Matrix& M, std::size_t a, std::size_t b, const Int& s, const Int& t, const Int& u, const Int& v) {
  // (col_a, col_b) <- (s col_a + t col_b, u col_a + v col_b)
  for (auto& row : M) {
    Int x = row[a], y = row[b];
    row[a] = s * x + t * y;
    row[b] = u * x + v * y;
  }
}

void col_axpy(Matrix& M, std::size_t dst, std::size_t src, const Int& q) {
  for (auto& row : M) row[dst] -= q * row[src];
}

void col_negate(Matrix& M, std::size_t c) {
  for (auto& row : M) row[c] = -row[c];
}

// g = gcd(a, b) = x a + y b, g >= 0.
Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
  Int r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    Int q = floor_div(r0, r1);
    Int r2 = r0 - q * r1, s2 = s0 - q * s1, t2 = t0 - q * t1;
    r0 = r1, r1 = r2, s0 = s1, s1 = s2, t0 = t1, t1 = t2;
  }
  if (r0 < 0) r0 = -r0, s0 = -s0, t0 = -t0;
  x = s0, y = t0;
  return r0;
}

}  // namespace

std::size_t matrix_rank(const Matrix& M) { return bareiss(M).first; }

Int determinant(const Matrix& M) {
  for (const auto& row : M)
    if (row.size() != M.size()) throw Error(Errc::ShapeMismatch, "determinant of a non-square matrix");
  return bareiss(M).second;
}

Matrix multiply(const Matrix& A, const Matrix& B) {
  const std::size_t inner = B.size();
  const std::size_t cols = B.empty() ? 0 : B[0].size();
  Matrix C(A.size(), std::vector<Int>(cols, 0));
  for (std::size_t i = 0; i < A.size(); ++i) {
    if (A[i].size() != inner) throw Error(Errc::ShapeMismatch, "inner dimensions differ");
    for (std::size_t k = 0; k < inner; ++k)
      if (A[i][k] != 0)
        for (std::size_t j = 0; j < cols; ++j) C[i][j] += A[i][k] * B[k][j];
  }
  return C;
}

Int hnf_entry_bound(const Matrix& B) {
  const std::size_t n = B.empty() ? 0 : B[0].size();
  return pow(isqrt_ceil(Int(n)) * inf_norm(B), static_cast<unsigned>(n));
}

HnfResult hnf(const Matrix& B) {
  const std::size_t m = B.size(), n = m ? B[0].size() : 0;
  if (n == 0) throw Error(Errc::ShapeMismatch, "empty basis");
  if (matrix_rank(B) < n) throw Error(Errc::RankDeficient, "basis columns are linearly dependent");
  HnfResult R;
  R.H = B;
  R.E.assign(n, std::vector<Int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) R.E[i][i] = 1;
  R.pivot.assign(n, 0);
  auto both = [&](auto&& op) {
    op(R.H);
    op(R.E);
  };

  // Rows bottom to top; column k receives the gcd of row i over columns 0..k.
  std::ptrdiff_t k = static_cast<std::ptrdiff_t>(n) - 1;
  for (std::size_t ii = m; ii-- > 0 && k >= 0;) {
    const std::size_t kk = static_cast<std::size_t>(k);
    for (std::size_t j = 0; j < kk; ++j) {
      const Int a = R.H[ii][kk], b = R.H[ii][j];
      if (b == 0) continue;
      Int x, y;
      const Int g = ext_gcd(a, b, x, y);
      // [col_k, col_j] <- [x col_k + y col_j, -(b/g) col_k + (a/g) col_j]; det = 1.
      both([&](Matrix& M) { col_combine(M, kk, j, x, y, -(b / g), a / g); });
    }
    if (R.H[ii][kk] == 0) continue;
    if (R.H[ii][kk] < 0) both([&](Matrix& M) { col_negate(M, kk); });
    const Int piv = R.H[ii][kk];
    for (std::size_t j = kk + 1; j < n; ++j) {
      const Int q = floor_div(R.H[ii][j], piv);
      if (q != 0) both([&](Matrix& M) { col_axpy(M, j, kk, q); });
    }
    R.pivot[kk] = ii;
    --k;
  }
  if (k >= 0) throw std::logic_error("hnf: rank check and elimination disagree");

  // Post-hoc checks.
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t f = R.pivot[j];
    if (j > 0 && f <= R.pivot[j - 1]) throw std::logic_error("hnf: pivots not strictly increasing");
    if (R.H[f][j] < 1) throw std::logic_error("hnf: non-positive pivot");
    for (std::size_t i = f + 1; i < m; ++i)
      if (R.H[i][j] != 0) throw std::logic_error("hnf: entry below pivot");
    for (std::size_t l = j + 1; l < n; ++l)
      if (R.H[f][l] < 0 || R.H[f][l] >= R.H[f][j]) throw std::logic_error("hnf: pivot row not reduced");
  }
  if (multiply(B, R.E) != R.H) throw std::logic_error("hnf: H != B E");
  if (abs(determinant(R.E)) != 1) throw std::logic_error("hnf: transform not unimodular");
  if (inf_norm(R.H) > hnf_entry_bound(B)) throw std::logic_error("hnf: entry bound violated");
  return R;
}

Int svp_coeff_bound(const Matrix& B) {
  const std::size_t m = B.size(), n = m ? B[0].size() : 0;
  const Int h = inf_norm(B);
  const Int e2 = pow(isqrt_ceil(Int(n)) * h, static_cast<unsigned>(n)) + 1;
  return Int(n) * isqrt_ceil(Int(m)) * h * pow(e2, static_cast<unsigned>(n + 1));
}

Int effective_coeff_bound(const LatticeInstance& L) {
  if (L.coeff_bound) return *L.coeff_bound;
  if (matrix_rank(L.B) < L.cols())
    throw Error(Errc::RankDeficient, "basis is rank deficient; supply a coefficient bound");
  return svp_coeff_bound(L.B);
}

namespace {

// a_i and v_i as shifted bounded integers and the exact equalities v = B a.
StandardProblem lattice_skeleton(const LatticeInstance& L, const Int& vstar) {
  const std::size_t m = L.rows(), n = L.cols();
  for (const auto& row : L.B)
    if (row.size() != n) throw Error(Errc::ShapeMismatch, "ragged basis");
  const Int bstar = effective_coeff_bound(L);
  StandardProblem prob;
  for (std::size_t i = 0; i < n; ++i) prob.add_y("a" + std::to_string(i + 1), 2 * bstar, bstar);
  for (std::size_t i = 0; i < m; ++i) prob.add_y("v" + std::to_string(i + 1), 2 * vstar, vstar);
  for (std::size_t i = 0; i < m; ++i) {
    SparsePoly e = prob.var("v" + std::to_string(i + 1));
    for (std::size_t j = 0; j < n; ++j) e -= prob.var("a" + std::to_string(j + 1)).scale(L.B[i][j]);
    prob.E.push_back(e);
  }
  return prob;
}

}  // namespace

StandardProblem svp_build(const LatticeInstance& L) {
  const Int h = inf_norm(L.B);
  const Int root_m = isqrt_ceil(Int(L.rows()));
  StandardProblem prob = lattice_skeleton(L, root_m * h);
  SparsePoly o = SparsePoly::constant(Ring(), -1);
  for (std::size_t i = 0; i < L.rows(); ++i) o += prob.var("v" + std::to_string(i + 1)).pow(2);
  prob.o = o;
  prob.u = Int(L.rows()) * h * h;
  if (prob.u < 1) prob.u = 1;
  return prob;
}

StandardProblem cvp_build(const LatticeInstance& L) {
  if (!L.target) throw Error(Errc::InvalidArgument, "CVP needs a target vector");
  const auto& b0 = *L.target;
  if (b0.size() != L.rows()) throw Error(Errc::ShapeMismatch, "target length differs from the row count");
  const Int h = inf_norm(L.B);
  Int t = 0, t2 = 0;
  for (const auto& x : b0) {
    t = std::max(t, abs(x));
    t2 += x * x;
  }
  const Int root_m = isqrt_ceil(Int(L.rows()));
  StandardProblem prob = lattice_skeleton(L, root_m * h + (root_m + 1) * t);
  SparsePoly o;
  for (std::size_t i = 0; i < L.rows(); ++i)
    o += (prob.var("v" + std::to_string(i + 1)) - SparsePoly::constant(Ring(), b0[i])).pow(2);
  prob.o = o;
  // v = 0 is always admissible, so the optimum is at most ||b0||^2.
  prob.u = Int(L.rows()) * (h + t) * (h + t);
  if (prob.u <= t2) prob.u = t2 + 1;
  return prob;
}

}  // namespace fqb
