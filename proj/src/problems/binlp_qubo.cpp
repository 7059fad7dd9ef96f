#include "fqbool/errors.hpp"
#include "fqbool/problems.hpp"

namespace fqb {

Matrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw Error(Errc::ParseError, "matrix must be an array of rows");
  Matrix M;
  for (const auto& row : j) M.push_back(vector_from_json(row));
  for (const auto& r : M)
    if (r.size() != M[0].size()) throw Error(Errc::ShapeMismatch, "ragged matrix");
  return M;
}

json matrix_to_json(const Matrix& M) {
  json j = json::array();
  for (const auto& row : M) {
    json r = json::array();
    for (const auto& x : row) r.push_back(int_to_json(x));
    j.push_back(std::move(r));
  }
  return j;
}

std::vector<Int> vector_from_json(const json& j) {
  if (!j.is_array()) throw Error(Errc::ParseError, "expected an array of integers");
  std::vector<Int> v;
  for (const auto& x : j) v.push_back(int_from_json(x));
  return v;
}

Matrix parse_matrix_text(const std::string& text) {
  Matrix M;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(pos, end - pos);
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::vector<Int> row;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (std::isspace(static_cast<unsigned char>(line[i])) || line[i] == ',')) ++i;
      std::size_t s = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != ',') ++i;
      if (i > s) row.push_back(parse_int(line.substr(s, i - s)));
    }
    if (!row.empty()) M.push_back(std::move(row));
    pos = end + 1;
  }
  for (const auto& r : M)
    if (r.size() != M[0].size()) throw Error(Errc::ShapeMismatch, "ragged matrix");
  return M;
}

// ---------------------------------------------------------------------------

StandardProblem binlp_build(const std::vector<Int>& c, const Matrix& A, const std::vector<Int>& h) {
  const std::size_t n = c.size();
  if (A.size() != h.size()) throw Error(Errc::ShapeMismatch, "A and h disagree on the number of rows");
  for (const auto& row : A)
    if (row.size() != n) throw Error(Errc::ShapeMismatch, "A and c disagree on the number of columns");
  StandardProblem prob;
  for (std::size_t j = 0; j < n; ++j) prob.add_y("y" + std::to_string(j + 1), 1);
  const Ring Z;
  for (std::size_t i = 0; i < A.size(); ++i) {
    // g_i = A_i y + e_i >= 0 always; g_i <= h_i + e_i is the constraint.
    Int e = 0;
    SparsePoly g(Z);
    for (std::size_t j = 0; j < n; ++j) {
      e += abs(A[i][j]);
      g.add_term(Monomial::var(static_cast<VarId>(j)), A[i][j]);
    }
    g.add_term(Monomial(), e);
    const Int b = h[i] + e;
    if (b >= 1)
      prob.I.push_back({g, b});
    else if (b == 0)
      prob.E.push_back(g);
    else
      prob.E.push_back(SparsePoly::constant(Z, 1));
  }
  Int cabs = 0;
  SparsePoly o(Z);
  for (std::size_t j = 0; j < n; ++j) {
    cabs += abs(c[j]);
    o.add_term(Monomial::var(static_cast<VarId>(j)), c[j]);
  }
  o.add_term(Monomial(), cabs);
  prob.o = o;
  prob.u = 2 * cabs + 1;
  return prob;
}

Int binlp_unshift(const std::vector<Int>& c, const Int& value) {
  Int cabs = 0;
  for (const auto& x : c) cabs += abs(x);
  return value - cabs;
}

namespace {

Int qubo_shift(const Matrix& Q) {
  Int qmax = 0;
  for (const auto& row : Q)
    for (const auto& x : row) qmax = std::max(qmax, abs(x));
  const Int m = Q.size();
  return m * m * qmax;
}

}  // namespace

StandardProblem qubo_build(const Matrix& Q) {
  const std::size_t m = Q.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (Q[i].size() != m) throw Error(Errc::ShapeMismatch, "Q must be square");
    for (std::size_t j = 0; j < i; ++j)
      if (Q[i][j] != 0) throw Error(Errc::InvalidArgument, "Q must be upper triangular");
  }
  StandardProblem prob;
  for (std::size_t j = 0; j < m; ++j) prob.add_y("y" + std::to_string(j + 1), 1);
  SparsePoly o;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j)
      o.add_term(Monomial::from_factors({{static_cast<VarId>(i), 1}, {static_cast<VarId>(j), 1}}).multilinear(),
                 Q[i][j]);
  const Int s = qubo_shift(Q);
  o.add_term(Monomial(), s);
  prob.o = o;
  prob.u = 2 * s + 1;
  return prob;
}

Int qubo_unshift(const Matrix& Q, const Int& value) { return value - qubo_shift(Q); }

}  // namespace fqb
