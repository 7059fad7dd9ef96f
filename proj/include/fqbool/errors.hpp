#pragma once

#include <stdexcept>
#include <string>

namespace fqb {

enum class Errc {
  RingMismatch,
  ShapeMismatch,
  NotInvertible,
  UnsupportedModulus,
  NotQuadratic,
  BadModulus,
  UnboundedVariable,
  EmptyOrPointConstraint,
  MissingBits,
  ParseError,
  ExternalSolverMismatch,
  IoError,
  RankDeficient,
  CenteredRepUnsupported,
  KeygenFailed,
  InvalidArgument,
};

const char* errc_name(Errc e) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace fqb
