#include "fqbool/cyclic.hpp"

#include "fqbool/errors.hpp"

namespace fqb {

namespace {

using Dense = std::vector<Int>;  // low -> high, over F_p

void trim(Dense& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Int inv_mod(const Int& a, const Int& p) {
  // a^(p-2) would do; extended gcd is cheaper for large p.
  Int r0 = p, r1 = mod(a, p), s0 = 0, s1 = 1;
  while (r1 != 0) {
    Int q = r0 / r1;
    Int t = r0 - q * r1;
    r0 = r1, r1 = t;
    t = s0 - q * s1;
    s0 = s1, s1 = t;
  }
  if (r0 != 1) throw Error(Errc::NotInvertible, "element not invertible");
  return mod(s0, p);
}

// a = q*b + r over F_p; b nonzero and trimmed.
void divmod(const Dense& a, const Dense& b, const Int& p, Dense& q, Dense& r) {
  r = a;
  trim(r);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, 0);
  const Int lead_inv = inv_mod(b.back(), p);
  while (r.size() >= b.size()) {
    const std::size_t shift = r.size() - b.size();
    const Int c = mod(r.back() * lead_inv, p);
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] = mod(r[shift + i] - c * b[i], p);
    trim(r);
  }
}

Dense mul(const Dense& a, const Dense& b, const Int& p) {
  if (a.empty() || b.empty()) return {};
  Dense c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  for (auto& x : c) x = mod(x, p);
  trim(c);
  return c;
}

Dense sub(const Dense& a, const Dense& b, const Int& p) {
  Dense c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
  for (auto& x : c) x = mod(x, p);
  trim(c);
  return c;
}

// Inverse of f in F_p[X]/(X^N - 1) by the extended Euclidean algorithm.
std::vector<Int> invert_prime(const std::vector<Int>& f, const Int& p) {
  const std::size_t N = f.size();
  Dense modpoly(N + 1, 0);
  modpoly[0] = mod(Int(-1), p);
  modpoly[N] = 1;
  Dense r0 = modpoly, r1 = f, t0, t1{1};
  trim(r1);
  if (r1.empty()) throw Error(Errc::NotInvertible, "zero element");
  while (!r1.empty()) {
    Dense q, r;
    divmod(r0, r1, p, q, r);
    Dense t = sub(t0, mul(q, t1, p), p);
    r0 = std::move(r1), r1 = std::move(r);
    t0 = std::move(t1), t1 = std::move(t);
  }
  if (r0.size() != 1) throw Error(Errc::NotInvertible, "gcd with X^N - 1 is not a unit");
  const Int c = inv_mod(r0[0], p);
  std::vector<Int> out(N, 0);
  for (std::size_t i = 0; i < t0.size(); ++i) out[i % N] = mod(out[i % N] + t0[i] * c, p);
  return out;
}

}  // namespace

CyclicElement make_cyclic(const Int& k, std::vector<Int> coeffs) {
  if (k < 2) throw Error(Errc::BadModulus, "cyclic modulus must be >= 2");
  if (coeffs.empty()) throw Error(Errc::ShapeMismatch, "cyclic element needs N >= 1");
  for (auto& c : coeffs) c = mod(c, k);
  return {k, std::move(coeffs)};
}

CyclicElement cyclic_one(const Int& k, std::size_t N) {
  std::vector<Int> c(N, 0);
  c.at(0) = 1;
  return make_cyclic(k, std::move(c));
}

CyclicElement cyclic_convolve(const CyclicElement& a, const CyclicElement& b) {
  if (a.modulus != b.modulus || a.length() != b.length())
    throw Error(Errc::ShapeMismatch, "cyclic operands differ in N or modulus");
  const std::size_t N = a.length();
  std::vector<Int> c(N, 0);
  for (std::size_t j = 0; j < N; ++j) {
    if (a.coeffs[j] == 0) continue;
    for (std::size_t k = 0; k < N; ++k) c[(j + k) % N] += a.coeffs[j] * b.coeffs[k];
  }
  return make_cyclic(a.modulus, std::move(c));
}

CyclicElement cyclic_invert(const CyclicElement& f) {
  const Int& k = f.modulus;
  if (is_prime(k)) return make_cyclic(k, invert_prime(f.coeffs, k));

  unsigned e = floor_log2(k);
  if (Int(1) << e != k) throw Error(Errc::UnsupportedModulus, "cyclic_invert needs a prime or a power of two");
  // Invert mod 2, then lift: g <- g (2 - f g) doubles the 2-adic precision.
  std::vector<Int> f2(f.coeffs.size());
  for (std::size_t i = 0; i < f2.size(); ++i) f2[i] = mod(f.coeffs[i], 2);
  CyclicElement g = make_cyclic(k, invert_prime(f2, 2));
  const CyclicElement two = make_cyclic(k, [&] {
    std::vector<Int> c(f.length(), 0);
    c[0] = 2;
    return c;
  }());
  for (unsigned prec = 1; prec < e; prec *= 2) {
    CyclicElement fg = cyclic_convolve(f, g);
    std::vector<Int> d(f.length());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = two.coeffs[i] - fg.coeffs[i];
    g = cyclic_convolve(g, make_cyclic(k, std::move(d)));
  }
  if (cyclic_convolve(f, g) != cyclic_one(k, f.length())) throw Error(Errc::NotInvertible, "Hensel lift failed");
  return g;
}

std::vector<Int> centered(const CyclicElement& a) {
  std::vector<Int> out;
  for (const auto& c : a.coeffs) out.push_back(2 * c > a.modulus ? Int(c - a.modulus) : c);
  return out;
}

}  // namespace fqb
