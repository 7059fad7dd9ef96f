#pragma once

#include "fqbool/poly.hpp"
#include "fqbool/polyio.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fqb {

// Which family a Boolean variable belongs to: encoded F_p values, bounded
// integers, chain values, lift multiples, inequality slacks, objective window
// bits, Hamming slacks, anything else.
enum class VarClass { XBit, YBit, VBit, UBit, GBit, FBit, HBit, Aux };

const char* class_name(VarClass c);
VarClass class_from_name(const std::string& s);

struct BoolVar {
  VarId id = 0;
  std::string name;
  VarClass cls = VarClass::Aux;
  std::optional<std::string> origin;  // original variable (or equation tag)
  unsigned bit = 0;
};

// One bit per registry entry, values 0/1.
using Assignment = std::vector<std::uint8_t>;

struct AffineExpansion {
  std::string var;
  std::vector<std::pair<VarId, Int>> weights;
  Int offset = 0;

  Int min_value() const;
  Int max_value() const;
  Int value(const Assignment& a) const;
  SparsePoly as_poly() const;  // over Z, in Boolean ids
};

// Multiple counter introduced by lifting equation `equation` modulo `modulus`.
struct LiftRecord {
  std::size_t equation = 0;
  Int modulus;
  AffineExpansion counter;
};

// An F_{p^m} variable and the F_p components of its power-basis expansion.
struct FieldVar {
  std::string var;
  std::vector<std::string> components;
};

class BooleanSystem {
 public:
  VarId add_var(const std::string& stem, VarClass cls, std::optional<std::string> origin = std::nullopt,
                unsigned bit = 0);
  const std::vector<BoolVar>& registry() const { return vars_; }
  const VarRegistry& names() const { return names_; }
  std::size_t num_vars() const { return vars_.size(); }

  // Equations must be Z-polynomials; they are multilinearized on entry.
  std::size_t add_equation(const SparsePoly& f, std::string provenance);
  const std::vector<SparsePoly>& equations() const { return eqs_; }
  const std::vector<std::string>& provenance() const { return prov_; }
  std::size_t num_equations() const { return eqs_.size(); }

  void add_decode(AffineExpansion e);
  const std::vector<AffineExpansion>& decode_map() const { return decode_; }
  const AffineExpansion* find_decode(const std::string& var) const;

  // Expansions of auxiliary integer quantities (chain variables, slacks).
  void add_internal(AffineExpansion e) { internal_.push_back(std::move(e)); }
  const std::vector<AffineExpansion>& internal() const { return internal_; }

  void add_lift(LiftRecord r) { lifts_.push_back(std::move(r)); }
  const std::vector<LiftRecord>& lifts() const { return lifts_; }

  // Expansions whose bits only ever enter equations through the expansion
  // value; a solver may restrict them to one canonical preimage per value.
  void add_symmetric(AffineExpansion e) { symmetric_.push_back(std::move(e)); }
  const std::vector<AffineExpansion>& symmetric() const { return symmetric_; }

  void set_field(const Ring& r, std::vector<FieldVar> vars);
  const std::optional<Ring>& field() const { return field_; }
  const std::vector<FieldVar>& field_vars() const { return field_vars_; }

  std::size_t total_terms() const;

 private:
  std::vector<BoolVar> vars_;
  VarRegistry names_;
  std::vector<SparsePoly> eqs_;
  std::vector<std::string> prov_;
  std::vector<AffineExpansion> decode_;
  std::map<std::string, std::size_t> decode_index_;
  std::vector<AffineExpansion> internal_;
  std::vector<LiftRecord> lifts_;
  std::vector<AffineExpansion> symmetric_;
  std::optional<Ring> field_;
  std::vector<FieldVar> field_vars_;
};

struct EncodedSolution {
  Assignment assignment;
  std::map<std::string, Int> decoded;
};

// Evaluates every decode entry; throws MissingBits on a short assignment.
EncodedSolution decode(const BooleanSystem& sys, const Assignment& a);
// For systems descended from F_{p^m}: packed field elements per variable.
std::map<std::string, Int> decode_field(const BooleanSystem& sys, const EncodedSolution& s);

// Residual of every equation over Z.
std::vector<Int> evaluate(const BooleanSystem& sys, const Assignment& a);
bool satisfies(const BooleanSystem& sys, const Assignment& a);

// Sets the lift counters of `a` so that every lifted equation whose other
// bits are fixed balances (canonical theta preimage). Returns false if some
// required multiple is out of the counter's range.
bool complete_lifts(const BooleanSystem& sys, Assignment& a);
// Writes a canonical preimage of `value` into the expansion's bits.
bool set_value(const AffineExpansion& e, const Int& value, Assignment& a);

json to_json(const BooleanSystem& sys);
BooleanSystem boolean_system_from_json(const json& j);
json expansion_to_json(const AffineExpansion& e, const BooleanSystem& sys);

}  // namespace fqb
