#include "fqbool/encode.hpp"
#include "fqbool/errors.hpp"

namespace fqb {

const char* lift_mode_name(LiftMode m) {
  switch (m) {
    case LiftMode::TermCount: return "TermCount";
    case LiftMode::CoeffSum: return "CoeffSum";
    case LiftMode::SignedRange: return "SignedRange";
  }
  return "?";
}

LiftMode lift_mode_from_name(const std::string& s) {
  if (s == "TermCount" || s == "termcount" || s == "terms") return LiftMode::TermCount;
  if (s == "CoeffSum" || s == "coeffsum" || s == "coeffs") return LiftMode::CoeffSum;
  if (s == "SignedRange" || s == "signedrange" || s == "signed") return LiftMode::SignedRange;
  throw Error(Errc::InvalidArgument, "unknown lift mode '" + s + "'");
}

AffineExpansion theta(const Int& b, BooleanSystem& sys, VarClass cls, const std::string& stem, const std::string& var) {
  if (b < 0) throw Error(Errc::InvalidArgument, "theta bound must be >= 0");
  AffineExpansion e;
  e.var = var.empty() ? stem : var;
  if (b == 0) return e;
  const unsigned s = floor_log2(b);
  const std::optional<std::string> origin = var.empty() ? std::nullopt : std::optional<std::string>(var);
  for (unsigned i = 0; i <= s; ++i) {
    const VarId id = sys.add_var(stem + "." + std::to_string(i), cls, origin, i);
    e.weights.emplace_back(id, i < s ? Int(1) << i : b + 1 - (Int(1) << s));
  }
  return e;
}

AffineExpansion theta_centered(const Int& b, const Int& shift, BooleanSystem& sys, VarClass cls,
                               const std::string& stem, const std::string& var) {
  AffineExpansion e = theta(b, sys, cls, stem, var);
  e.offset = -shift;
  return e;
}

bool theta_injective(const Int& b) { return b >= 1 && ((b + 1) & b) == 0; }

}  // namespace fqb
