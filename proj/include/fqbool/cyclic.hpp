#pragma once

// The convolution ring Z_k[X]/(X^N - 1), coefficient vectors low -> high.

#include "fqbool/bigint.hpp"

#include <vector>

namespace fqb {

struct CyclicElement {
  Int modulus;
  std::vector<Int> coeffs;

  std::size_t length() const { return coeffs.size(); }
  bool operator==(const CyclicElement& o) const { return modulus == o.modulus && coeffs == o.coeffs; }
};

// Reduces the coefficients into {0, ..., k-1}.
CyclicElement make_cyclic(const Int& k, std::vector<Int> coeffs);
CyclicElement cyclic_one(const Int& k, std::size_t N);

CyclicElement cyclic_convolve(const CyclicElement& a, const CyclicElement& b);
// k prime (extended Euclid) or k = 2^e (invert mod 2, then Newton/Hensel).
CyclicElement cyclic_invert(const CyclicElement& f);

// Centered lift of a residue vector, values in (-k/2, k/2].
std::vector<Int> centered(const CyclicElement& a);

}  // namespace fqb
