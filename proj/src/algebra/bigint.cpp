#include "fqbool/bigint.hpp"

#include "fqbool/errors.hpp"

#include <cctype>
#include <limits>

namespace fqb {

Int parse_int(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  bool neg = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) neg = text[i++] == '-';
  if (i == text.size()) throw Error(Errc::ParseError, "empty integer literal");
  Int v = 0;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) break;
    if (c < '0' || c > '9') throw Error(Errc::ParseError, "bad integer literal '" + std::string(text) + "'");
    v = v * 10 + (c - '0');
  }
  for (; i < text.size(); ++i)
    if (!std::isspace(static_cast<unsigned char>(text[i])))
      throw Error(Errc::ParseError, "trailing characters in integer literal '" + std::string(text) + "'");
  return neg ? Int(-v) : v;
}

std::string to_string(const Int& v) { return v.str(); }

Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;  // truncates
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Int ceil_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
  return q;
}

Int mod(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

unsigned floor_log2(const Int& v) {
  if (v < 1) throw Error(Errc::InvalidArgument, "floor_log2 of non-positive value");
  return static_cast<unsigned>(boost::multiprecision::msb(v));
}

Int pow(Int base, unsigned exp) {
  Int r = 1;
  while (exp) {
    if (exp & 1u) r *= base;
    exp >>= 1;
    if (exp) base *= base;
  }
  return r;
}

Int isqrt_ceil(const Int& n) {
  if (n < 0) throw Error(Errc::InvalidArgument, "square root of negative value");
  Int r = boost::multiprecision::sqrt(n);
  if (r * r < n) ++r;
  return r;
}

Int abs(const Int& v) { return v < 0 ? Int(-v) : v; }

bool fits_int64(const Int& v) {
  return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

const char* errc_name(Errc e) noexcept {
  switch (e) {
    case Errc::RingMismatch: return "RingMismatch";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::NotInvertible: return "NotInvertible";
    case Errc::UnsupportedModulus: return "UnsupportedModulus";
    case Errc::NotQuadratic: return "NotQuadratic";
    case Errc::BadModulus: return "BadModulus";
    case Errc::UnboundedVariable: return "UnboundedVariable";
    case Errc::EmptyOrPointConstraint: return "EmptyOrPointConstraint";
    case Errc::MissingBits: return "MissingBits";
    case Errc::ParseError: return "ParseError";
    case Errc::ExternalSolverMismatch: return "ExternalSolverMismatch";
    case Errc::IoError: return "IoError";
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::CenteredRepUnsupported: return "CenteredRepUnsupported";
    case Errc::KeygenFailed: return "KeygenFailed";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace fqb
