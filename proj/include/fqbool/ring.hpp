#pragma once

#include "fqbool/bigint.hpp"

#include <string>
#include <vector>

namespace fqb {

// Coefficient ring: Z, Z_k, or F_{p^m} = F_p[t]/(phi).
//
// Elements are always carried as a single Int. For ModK that is the canonical
// residue; for ExtField the power-basis coordinates c_0..c_{m-1} are packed as
// sum c_j p^j, which keeps SparsePoly's coefficient type uniform.
class Ring {
 public:
  enum class Kind { Integers, ModK, ExtField };

  Ring() = default;  // Z
  static Ring integers() { return Ring(); }
  static Ring mod(const Int& k);
  // phi: coefficients low -> high, monic of degree m >= 1. Irreducibility is
  // checked exhaustively for small fields unless `trusted` is set.
  static Ring ext(const Int& p, std::vector<Int> phi, bool trusted = false, std::string generator = "t");

  Kind kind() const { return kind_; }
  bool is_integers() const { return kind_ == Kind::Integers; }
  bool is_mod() const { return kind_ == Kind::ModK; }
  bool is_ext() const { return kind_ == Kind::ExtField; }
  // k for ModK, p for ExtField, 0 for Z.
  const Int& characteristic() const { return mod_; }
  unsigned degree() const { return kind_ == Kind::ExtField ? static_cast<unsigned>(phi_.size() - 1) : 1; }
  const std::vector<Int>& phi() const { return phi_; }
  const std::string& generator() const { return gen_; }
  // Number of elements (0 for Z).
  Int order() const;

  Int normalize(const Int& a) const;
  Int from_int(const Int& a) const;
  Int add(const Int& a, const Int& b) const;
  Int sub(const Int& a, const Int& b) const;
  Int neg(const Int& a) const;
  Int mul(const Int& a, const Int& b) const;
  Int pow(const Int& a, unsigned e) const;

  // ExtField packing. coords() has length m; other rings give {a}.
  std::vector<Int> coords(const Int& a) const;
  Int pack(const std::vector<Int>& coords) const;
  // The generator power t^k as a ring element (ExtField only).
  Int gen_pow(unsigned k) const;

  bool operator==(const Ring& o) const {
    return kind_ == o.kind_ && mod_ == o.mod_ && phi_ == o.phi_;
  }
  bool operator!=(const Ring& o) const { return !(*this == o); }
  std::string describe() const;

 private:
  Kind kind_ = Kind::Integers;
  Int mod_ = 0;
  std::vector<Int> phi_;
  std::string gen_ = "t";
};

// Coordinates of c * t^k in the power basis 1, t, ..., t^{m-1}.
std::vector<Int> ext_reduce(const Ring& r, const Int& c, unsigned k);

// True if the monic polynomial (low -> high) over F_p has no factor of degree
// 1..deg/2. Exhaustive; intended for small fields.
bool is_irreducible(const Int& p, const std::vector<Int>& phi);

}  // namespace fqb
