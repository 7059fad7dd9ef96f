#include "fqbool/ring.hpp"

#include "fqbool/errors.hpp"

namespace fqb {

namespace {

using Coeffs = std::vector<Int>;

// Remainder of a modulo monic b over F_p (both low -> high).
Coeffs poly_rem(Coeffs a, const Coeffs& b, const Int& p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const Int lead = a.back();
    if (lead != 0) {
      const std::size_t shift = a.size() - 1 - db;
      for (std::size_t i = 0; i <= db; ++i) a[shift + i] = mod(a[shift + i] - lead * b[i], p);
    }
    a.pop_back();
  }
  return a;
}

bool small_prime(const Int& p) {
  if (p < 2) return false;
  for (Int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

bool is_irreducible(const Int& p, const std::vector<Int>& phi) {
  const std::size_t m = phi.size() - 1;
  for (std::size_t d = 1; d <= m / 2; ++d) {
    // Enumerate monic candidates of degree d via a base-p counter.
    Coeffs cand(d + 1, 0);
    cand[d] = 1;
    while (true) {
      bool divides = true;
      for (const auto& c : poly_rem(phi, cand, p)) divides = divides && c == 0;
      if (divides)
        return false;
      std::size_t i = 0;
      while (i < d && cand[i] == p - 1) cand[i++] = 0;
      if (i == d) break;
      ++cand[i];
    }
  }
  return true;
}

Ring Ring::mod(const Int& k) {
  if (k < 2) throw Error(Errc::BadModulus, "modulus must be >= 2, got " + to_string(k));
  Ring r;
  r.kind_ = Kind::ModK;
  r.mod_ = k;
  return r;
}

Ring Ring::ext(const Int& p, std::vector<Int> phi, bool trusted, std::string generator) {
  if (!small_prime(p)) throw Error(Errc::BadModulus, "extension characteristic must be prime");
  if (phi.size() < 2) throw Error(Errc::InvalidArgument, "phi must have degree >= 1");
  for (auto& c : phi) c = fqb::mod(c, p);
  if (phi.back() != 1) throw Error(Errc::InvalidArgument, "phi must be monic");
  const std::size_t m = phi.size() - 1;
  if (!trusted) {
    if (m > 8) throw Error(Errc::InvalidArgument, "irreducibility unchecked for degree > 8; pass trusted");
    if (!is_irreducible(p, phi)) throw Error(Errc::InvalidArgument, "phi is reducible over F_p");
  }
  Ring r;
  r.kind_ = Kind::ExtField;
  r.mod_ = p;
  r.phi_ = std::move(phi);
  r.gen_ = std::move(generator);
  return r;
}

Int Ring::order() const {
  switch (kind_) {
    case Kind::Integers: return 0;
    case Kind::ModK: return mod_;
    case Kind::ExtField: return fqb::pow(mod_, degree());
  }
  return 0;
}

Int Ring::normalize(const Int& a) const {
  switch (kind_) {
    case Kind::Integers: return a;
    case Kind::ModK: return fqb::mod(a, mod_);
    case Kind::ExtField:
      if (a < 0 || a >= order()) throw Error(Errc::InvalidArgument, "packed extension element out of range");
      return a;
  }
  return a;
}

Int Ring::from_int(const Int& a) const {
  switch (kind_) {
    case Kind::Integers: return a;
    case Kind::ModK:
    case Kind::ExtField: return fqb::mod(a, mod_);  // embeds into the constant coordinate
  }
  return a;
}

std::vector<Int> Ring::coords(const Int& a) const {
  if (kind_ != Kind::ExtField) return {a};
  std::vector<Int> c(degree());
  Int v = a;
  for (auto& x : c) {
    x = v % mod_;
    v /= mod_;
  }
  return c;
}

Int Ring::pack(const std::vector<Int>& c) const {
  if (kind_ != Kind::ExtField) {
    if (c.size() != 1) throw Error(Errc::ShapeMismatch, "scalar ring expects one coordinate");
    return normalize(c[0]);
  }
  if (c.size() != degree()) throw Error(Errc::ShapeMismatch, "coordinate vector length != m");
  Int v = 0;
  for (std::size_t j = c.size(); j-- > 0;) v = v * mod_ + fqb::mod(c[j], mod_);
  return v;
}

Int Ring::add(const Int& a, const Int& b) const {
  switch (kind_) {
    case Kind::Integers: return a + b;
    case Kind::ModK: return fqb::mod(a + b, mod_);
    case Kind::ExtField: {
      auto x = coords(a), y = coords(b);
      for (std::size_t j = 0; j < x.size(); ++j) x[j] += y[j];
      return pack(x);
    }
  }
  return 0;
}

Int Ring::neg(const Int& a) const {
  switch (kind_) {
    case Kind::Integers: return -a;
    case Kind::ModK: return fqb::mod(-a, mod_);
    case Kind::ExtField: {
      auto x = coords(a);
      for (auto& c : x) c = -c;
      return pack(x);
    }
  }
  return 0;
}

Int Ring::sub(const Int& a, const Int& b) const { return add(a, neg(b)); }

Int Ring::mul(const Int& a, const Int& b) const {
  switch (kind_) {
    case Kind::Integers: return a * b;
    case Kind::ModK: return fqb::mod(a * b, mod_);
    case Kind::ExtField: {
      const auto x = coords(a), y = coords(b);
      Coeffs prod(2 * x.size() - 1, 0);
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < y.size(); ++j) prod[i + j] += x[i] * y[j];
      }
      for (auto& c : prod) c = fqb::mod(c, mod_);
      auto r = poly_rem(std::move(prod), phi_, mod_);
      r.resize(degree(), 0);
      return pack(r);
    }
  }
  return 0;
}

Int Ring::pow(const Int& a, unsigned e) const {
  Int r = from_int(1), b = a;
  while (e) {
    if (e & 1u) r = mul(r, b);
    e >>= 1;
    if (e) b = mul(b, b);
  }
  return r;
}

Int Ring::gen_pow(unsigned k) const {
  if (kind_ != Kind::ExtField) throw Error(Errc::RingMismatch, "generator powers need an extension field");
  std::vector<Int> t(degree(), 0);
  if (degree() == 1) {
    // F_p[t]/(t + c): t = -c.
    t[0] = fqb::mod(-phi_[0], mod_);
  } else {
    t[1] = 1;
  }
  return pow(pack(t), k);
}

std::string Ring::describe() const {
  switch (kind_) {
    case Kind::Integers: return "Z";
    case Kind::ModK: return "Z_" + to_string(mod_);
    case Kind::ExtField: return "F_" + to_string(mod_) + "^" + std::to_string(degree());
  }
  return "?";
}

std::vector<Int> ext_reduce(const Ring& r, const Int& c, unsigned k) {
  if (!r.is_ext()) throw Error(Errc::RingMismatch, "ext_reduce needs an extension field");
  return r.coords(r.mul(c, r.gen_pow(k)));
}

}  // namespace fqb
