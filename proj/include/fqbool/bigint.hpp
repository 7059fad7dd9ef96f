#pragma once

// Arbitrary-precision integer helpers. Everything coefficient-like in the
// library is an Int; fixed-width words only appear inside the solver once a
// system is known to fit.

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace fqb {

using Int = boost::multiprecision::cpp_int;

Int parse_int(std::string_view text);
std::string to_string(const Int& v);

// Rounding division towards -inf / +inf; b != 0.
Int floor_div(const Int& a, const Int& b);
Int ceil_div(const Int& a, const Int& b);
// Canonical residue in [0, m) for m > 0.
Int mod(const Int& a, const Int& m);

// floor(log2(v)) for v >= 1.
unsigned floor_log2(const Int& v);
Int pow(Int base, unsigned exp);
// ceil(sqrt(n)) for n >= 0.
Int isqrt_ceil(const Int& n);
Int abs(const Int& v);

bool fits_int64(const Int& v);

}  // namespace fqb
