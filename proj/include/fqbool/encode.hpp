#pragma once

// Reduction chain from polynomial systems over finite fields / bounded
// integers to integer polynomial systems in 0/1 variables.

#include "fqbool/boolsys.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fqb {

enum class LiftMode { TermCount, CoeffSum, SignedRange };
enum class Representation { Standard, Centered };

const char* lift_mode_name(LiftMode m);
LiftMode lift_mode_from_name(const std::string& s);

// theta_b: weights 1, 2, ..., 2^{s-1}, b + 1 - 2^s with s = floor(log2 b);
// value set exactly {0..b}. b = 0 gives the empty expansion.
AffineExpansion theta(const Int& b, BooleanSystem& sys, VarClass cls, const std::string& stem,
                      const std::string& var = {});
// Same weights, offset -shift: values {-shift .. b-shift}.
AffineExpansion theta_centered(const Int& b, const Int& shift, BooleanSystem& sys, VarClass cls,
                               const std::string& stem, const std::string& var = {});
bool theta_injective(const Int& b);

// ---------------------------------------------------------------------------

struct Quadratized {
  enum class Role { Squaring, Product, Target };
  std::vector<SparsePoly> polys;  // squaring chains, product chains, then targets
  std::vector<Role> roles;
  std::vector<VarId> new_vars;
  std::vector<std::size_t> hat_index;  // hat_index[j] = position of rewritten F[j]
  std::map<VarId, Monomial> represents;  // new variable -> monomial it stands for
};

// Returns F unchanged (no new variables) when every poly has degree <= 2.
Quadratized quadratize(const std::vector<SparsePoly>& F, VarRegistry& vars);

// ---------------------------------------------------------------------------

struct Descended {
  std::vector<SparsePoly> polys;  // over Z_p; m components per input poly
  std::map<VarId, std::vector<VarId>> components;  // x -> (x.0, ..., x.{m-1})
};

// x_i = sum_j x_ij t^j; every input poly f = sum_j g_j t^j yields g_0..g_{m-1}.
// Exponents are reduced with x^p = x since the components live in F_p.
Descended descend_extension(const std::vector<SparsePoly>& F, VarRegistry& vars);

// ---------------------------------------------------------------------------

struct VarDomain {
  enum class Kind { Field, Bounded, Boolean };
  Kind kind = Kind::Field;
  Int size;       // Field: modulus k; Bounded: b (values -shift .. b-shift)
  Int shift = 0;  // Bounded only
  VarClass cls = VarClass::XBit;

  static VarDomain field(const Int& k, VarClass cls = VarClass::XBit) { return {Kind::Field, k, 0, cls}; }
  static VarDomain bounded(const Int& b, const Int& shift = 0, VarClass cls = VarClass::YBit) {
    return {Kind::Bounded, b, shift, cls};
  }
  static VarDomain boolean(VarClass cls = VarClass::YBit) { return {Kind::Boolean, 1, 0, cls}; }
};

// Shared state of one encoding pipeline: the original-variable registry,
// each variable's domain, and the Boolean system receiving bits/equations.
// Expansions are created lazily and reused, so parts encoded separately
// agree on their shared variables.
class Encoder {
 public:
  explicit Encoder(Representation rep = Representation::Standard) : rep_(rep) {}
  Encoder(VarRegistry vars, Representation rep) : vars_(std::move(vars)), rep_(rep) {}

  VarRegistry& vars() { return vars_; }
  const VarRegistry& vars() const { return vars_; }
  BooleanSystem& system() { return sys_; }
  const BooleanSystem& system() const { return sys_; }
  Representation representation() const { return rep_; }

  // `original` variables go to the decode map, others to the internal list.
  void declare(VarId v, const VarDomain& d, bool original = true);
  void set_expansion(VarId v, AffineExpansion e, bool original = true);
  bool declared(VarId v) const { return domains_.count(v) || expansions_.count(v); }
  const VarDomain* domain(VarId v) const;

  const AffineExpansion& expansion(VarId v);
  // Substitutes every variable by its expansion over Z, multilinearized.
  // Coefficients of f are read as integers (canonical residues for Z_k).
  SparsePoly to_bits(const SparsePoly& f);

  Int value_min(VarId v) const;
  Int value_max(VarId v) const;

 private:
  VarRegistry vars_;
  Representation rep_;
  BooleanSystem sys_;
  std::map<VarId, VarDomain> domains_;
  std::map<VarId, bool> original_;
  std::map<VarId, AffineExpansion> expansions_;
};

// Bit-blasts an MQ system over Z_k. Standard: coefficients reduced into
// {0..k-1} (result over Z_k). Centered: signed coefficients (result over Z).
std::vector<SparsePoly> bit_blast(Encoder& enc, const std::vector<SparsePoly>& F);

struct LiftInfo {
  Int m_lo;
  Int M;  // counter is theta_M
};
// Multiple range for f = 0 (mod k) under the given mode.
LiftInfo lift_range(const SparsePoly& f, const Int& k, LiftMode mode);
// Appends f - k*(theta_M(U) + m_lo) for every f; returns the equation indices.
std::vector<std::size_t> lift_modular(BooleanSystem& sys, const std::vector<SparsePoly>& BF, const Int& k,
                                      LiftMode mode, const std::vector<std::string>& provenance = {});

// Quadratize + (descend) + bit-blast + lift of equations over Z_k or
// F_{p^m}, added into an existing encoder. Undeclared variables become
// field-valued originals.
void reduce_into(Encoder& enc, const std::vector<SparsePoly>& F, LiftMode mode, const std::string& tag = "F");

struct ReduceOptions {
  Representation rep = Representation::Standard;
  LiftMode lift = LiftMode::CoeffSum;
};
BooleanSystem full_reduce(const PolySystem& F, const ReduceOptions& opt = {});

// ---------------------------------------------------------------------------

struct IntegerEncoding {
  std::vector<SparsePoly> gbar;  // rewritten targets in Boolean variables
  std::vector<std::size_t> side_equations;  // indices of the chain equations added
  Int chain_bound;  // h^{d_g}
};

// h^{d_g}: h = max |value| over the variables of G, d_g = max degree of G.
Int chain_value_bound(const Encoder& enc, const std::vector<SparsePoly>& G);
IntegerEncoding encode_integers(Encoder& enc, const std::vector<SparsePoly>& G, const std::string& tag = "int");

struct Inequality {
  SparsePoly g;  // over Z
  Int b;         // 0 <= g <= b
};
// Appends theta_b(G_i) - gbar_i for each inequality plus the chain equations.
void encode_inequalities(Encoder& enc, const std::vector<Inequality>& I);

// theta_{b_sq - 1}(G) - (sum_i x_i^2 - 1) for the given (centered) variables.
std::size_t add_norm_window(Encoder& enc, const std::vector<VarId>& xs, const Int& norm_sq_bound);

}  // namespace fqb
