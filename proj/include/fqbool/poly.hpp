#pragma once

#include "fqbool/bigint.hpp"
#include "fqbool/ring.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fqb {

using VarId = std::uint32_t;

// Dense variable ids; names are metadata only.
class VarRegistry {
 public:
  VarId add(const std::string& name);  // throws on duplicates
  VarId intern(const std::string& name);
  // Registers stem, or stem#k for the first free k.
  VarId fresh(const std::string& stem);
  std::optional<VarId> find(const std::string& name) const;
  VarId at(const std::string& name) const;
  const std::string& name(VarId id) const { return names_.at(id); }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::map<std::string, VarId, std::less<>> index_;
};

class Monomial {
 public:
  using Factor = std::pair<VarId, unsigned>;

  Monomial() = default;
  static Monomial var(VarId v, unsigned exp = 1);
  // Factors need not be sorted or merged; zero exponents are dropped.
  static Monomial from_factors(std::vector<Factor> f);

  const std::vector<Factor>& factors() const { return f_; }
  bool is_constant() const { return f_.empty(); }
  unsigned degree() const;
  unsigned exponent(VarId v) const;
  bool is_multilinear() const;
  Monomial multilinear() const;

  Monomial operator*(const Monomial& o) const;
  bool operator==(const Monomial& o) const { return f_ == o.f_; }
  bool operator!=(const Monomial& o) const { return f_ != o.f_; }
  // Lexicographic on the sorted (var, exponent) sequence.
  bool operator<(const Monomial& o) const { return f_ < o.f_; }

 private:
  std::vector<Factor> f_;
};

class SparsePoly {
 public:
  using Terms = std::map<Monomial, Int>;

  explicit SparsePoly(Ring r = Ring::integers()) : ring_(std::move(r)) {}
  static SparsePoly constant(const Ring& r, const Int& c);
  static SparsePoly variable(const Ring& r, VarId v);

  const Ring& ring() const { return ring_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  unsigned degree() const;
  unsigned degree_in(VarId v) const;
  std::vector<VarId> variables() const;
  Int constant_term() const;
  Int coefficient(const Monomial& m) const;
  bool is_multilinear() const;

  // Adds c*m; c is taken in the ring (normalized here).
  void add_term(const Monomial& m, const Int& c);

  SparsePoly& operator+=(const SparsePoly& o);
  SparsePoly& operator-=(const SparsePoly& o);
  SparsePoly operator+(const SparsePoly& o) const;
  SparsePoly operator-(const SparsePoly& o) const;
  SparsePoly operator-() const;
  SparsePoly operator*(const SparsePoly& o) const;
  SparsePoly scale(const Int& c) const;
  SparsePoly pow(unsigned e) const;
  bool operator==(const SparsePoly& o) const { return ring_ == o.ring_ && terms_ == o.terms_; }
  bool operator!=(const SparsePoly& o) const { return !(*this == o); }

  // Replaces each mapped variable by a polynomial over the same ring.
  SparsePoly substitute(const std::map<VarId, SparsePoly>& sub) const;
  SparsePoly rename(const std::function<VarId(VarId)>& f) const;
  // X^k -> X for every variable (Boolean semantics).
  SparsePoly multilinearize() const;
  // Reinterprets coefficients in another ring (e.g. canonical residues as Z).
  SparsePoly with_ring(const Ring& r) const;

  Int evaluate(const std::function<Int(VarId)>& value) const;

 private:
  void check_ring(const SparsePoly& o) const;

  Ring ring_;
  Terms terms_;
};

// Product of two polynomials in Boolean variables, multilinearized on the fly.
SparsePoly mul_multilinear(const SparsePoly& a, const SparsePoly& b);

// Sum of the term counts (total sparseness).
std::size_t total_terms(const std::vector<SparsePoly>& F);

}  // namespace fqb
