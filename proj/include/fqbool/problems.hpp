#pragma once

// Builders for the application problems: (0,1)-LP, QUBO, noisy systems,
// SIS and smallest solutions, SVP/CVP, NTRU key recovery.

#include "fqbool/cyclic.hpp"
#include "fqbool/optimize.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fqb {

using Matrix = std::vector<std::vector<Int>>;  // row-major

Matrix matrix_from_json(const json& j);
json matrix_to_json(const Matrix& M);
// Whitespace-separated rows, one row per line; '#' starts a comment.
Matrix parse_matrix_text(const std::string& text);
std::vector<Int> vector_from_json(const json& j);

// --- (0,1)-LP and QUBO -----------------------------------------------------

// min c.y subject to A y <= h, y in {0,1}^n. The objective is shifted by
// (u-1)/2 = sum |c_j| into [0, u).
StandardProblem binlp_build(const std::vector<Int>& c, const Matrix& A, const std::vector<Int>& h);
// Back from the shifted objective to c.y.
Int binlp_unshift(const std::vector<Int>& c, const Int& value);

// min y^T Q y over {0,1}^m for upper-triangular Q; shift m^2 Q_max.
StandardProblem qubo_build(const Matrix& Q);
Int qubo_unshift(const Matrix& Q, const Int& value);

// --- noisy systems -----------------------------------------------------------

// f_j - e_j = 0 and H_j - e_j^{p-1} = 0 over F_p, objective sum H_j
// (Hamming weight of the error vector), u = r + 1.
StandardProblem pswn_build(const PolySystem& F);
// The linear instance A x = b over F_p as a polynomial system.
PolySystem lswn_system(const Matrix& A, const std::vector<Int>& b, const Int& p);

// --- SIS / smallest solution -----------------------------------------------

PolySystem linear_system(const Matrix& A, const Int& p);
// Centered encoding of F plus the window 1 <= ||x||^2 <= norm_sq_bound.
BooleanSystem sis_build(const PolySystem& F, const Int& norm_sq_bound);
// min ||x||^2 - 1 over nonzero solutions of F (centered), u = n (p-1)^2.
StandardProblem smallest_solution_build(const PolySystem& F);

// --- lattices ---------------------------------------------------------------

struct LatticeInstance {
  Matrix B;  // m x n, basis vectors are the columns
  std::optional<std::vector<Int>> target;
  std::optional<Int> coeff_bound;

  std::size_t rows() const { return B.size(); }
  std::size_t cols() const { return B.empty() ? 0 : B[0].size(); }
};
LatticeInstance lattice_from_json(const json& j);

Int inf_norm(const Matrix& M);
std::size_t matrix_rank(const Matrix& M);
Int determinant(const Matrix& M);
Matrix multiply(const Matrix& A, const Matrix& B);

// Column Hermite normal form H = B E with E unimodular (n x n). pivot[j] is
// the row of column j's last nonzero entry (strictly increasing, 0-based);
// pivots are positive and the other entries of a pivot row to the right of
// the pivot are reduced into [0, pivot).
struct HnfResult {
  Matrix H, E;
  std::vector<std::size_t> pivot;
};
HnfResult hnf(const Matrix& B);
// (ceil(sqrt n) ||B||)^n.
Int hnf_entry_bound(const Matrix& B);

// n ceil(sqrt m) ||B|| ((ceil(sqrt n) ||B||)^n + 1)^{n+1}.
Int svp_coeff_bound(const Matrix& B);

// Coefficients a_i in [-b*, b*], coordinates v in [-V*, V*], v = B a exact.
// SVP: objective ||v||^2 - 1 (nonzero by the window), V* = ceil(sqrt m) ||B||.
// CVP: objective ||v - b0||^2, V* = ceil(sqrt m) ||B|| + (ceil(sqrt m) + 1) ||b0||
// so that every vector at least as close as 0 fits.
StandardProblem svp_build(const LatticeInstance& L);
StandardProblem cvp_build(const LatticeInstance& L);
// The coefficient bound actually used (user override or the closed form).
Int effective_coeff_bound(const LatticeInstance& L);

// --- NTRU -------------------------------------------------------------------

struct NtruParams {
  std::size_t N = 0;
  Int p = 3, q = 32;
  std::size_t df = 1, dg = 1;
  std::optional<CyclicElement> h;
};
NtruParams ntru_params_from_json(const json& j);
json ntru_params_to_json(const NtruParams& P);
void ntru_validate(const NtruParams& P);

struct NtruKey {
  std::vector<Int> f, g;  // centered, entries in {-1, 0, 1}
  CyclicElement h, fp, fq;
};
NtruKey ntru_keygen(const NtruParams& P, std::uint64_t seed, std::size_t max_tries = 1000);
json ntru_key_to_json(const NtruParams& P, const NtruKey& K);
NtruKey ntru_key_from_json(const json& j);

struct NtruAttack {
  BooleanSystem sys;
  std::vector<std::pair<VarId, VarId>> fbits, gbits;  // (F_i1, F_i2), (G_i1, G_i2)
  std::vector<AffineExpansion> qexp, pexp;
  std::size_t cardinality_eqs[2] = {0, 0};
};
// The cardinality, sum and anti-redundancy constraints on the key bits plus
// the lifted convolution equations mod q and mod p.
NtruAttack ntru_attack_system(const NtruParams& P);
// Bits of a known key (f_i = -1, 0, 1 as (0,0), (1,0), (1,1)) with all lift
// counters completed.
Assignment ntru_witness(const NtruAttack& A, const NtruKey& K);
std::vector<Int> ntru_decode_f(const NtruAttack& A, const Assignment& a);
// h * f mod q, centered, has exactly dg entries 1, dg entries -1.
bool ntru_candidate_ok(const NtruParams& P, const std::vector<Int>& f);

// Min-weight variant: cardinality equations dropped, objective
// sum f_i^2 + sum g_i^2 - 1 (0 <= o < 4N).
struct NtruMinWeight {
  NtruAttack attack;
  Base base;
};
NtruMinWeight ntru_min_weight_system(const NtruParams& P);

}  // namespace fqb
