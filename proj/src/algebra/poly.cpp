#include "fqbool/poly.hpp"

#include "fqbool/errors.hpp"

#include <algorithm>
#include <set>

namespace fqb {

VarId VarRegistry::add(const std::string& name) {
  if (index_.count(name)) throw Error(Errc::InvalidArgument, "duplicate variable '" + name + "'");
  const auto id = static_cast<VarId>(names_.size());
  names_.push_back(name);
  index_.emplace(name, id);
  return id;
}

VarId VarRegistry::intern(const std::string& name) {
  if (auto it = index_.find(name); it != index_.end()) return it->second;
  return add(name);
}

VarId VarRegistry::fresh(const std::string& stem) {
  if (!index_.count(stem)) return add(stem);
  for (std::size_t k = 1;; ++k) {
    std::string n = stem + "#" + std::to_string(k);
    if (!index_.count(n)) return add(n);
  }
}

std::optional<VarId> VarRegistry::find(const std::string& name) const {
  if (auto it = index_.find(name); it != index_.end()) return it->second;
  return std::nullopt;
}

VarId VarRegistry::at(const std::string& name) const {
  if (auto id = find(name)) return *id;
  throw Error(Errc::InvalidArgument, "unknown variable '" + name + "'");
}

// ---------------------------------------------------------------------------

Monomial Monomial::var(VarId v, unsigned exp) {
  Monomial m;
  if (exp) m.f_.emplace_back(v, exp);
  return m;
}

Monomial Monomial::from_factors(std::vector<Factor> f) {
  std::sort(f.begin(), f.end());
  Monomial m;
  for (const auto& [v, e] : f) {
    if (!e) continue;
    if (!m.f_.empty() && m.f_.back().first == v)
      m.f_.back().second += e;
    else
      m.f_.emplace_back(v, e);
  }
  return m;
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (const auto& f : f_) d += f.second;
  return d;
}

unsigned Monomial::exponent(VarId v) const {
  auto it = std::lower_bound(f_.begin(), f_.end(), Factor{v, 0});
  return (it != f_.end() && it->first == v) ? it->second : 0;
}

bool Monomial::is_multilinear() const {
  return std::all_of(f_.begin(), f_.end(), [](const Factor& f) { return f.second == 1; });
}

Monomial Monomial::multilinear() const {
  Monomial m = *this;
  for (auto& f : m.f_) f.second = 1;
  return m;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial m;
  m.f_.reserve(f_.size() + o.f_.size());
  auto a = f_.begin(), b = o.f_.begin();
  while (a != f_.end() || b != o.f_.end()) {
    if (b == o.f_.end() || (a != f_.end() && a->first < b->first)) {
      m.f_.push_back(*a++);
    } else if (a == f_.end() || b->first < a->first) {
      m.f_.push_back(*b++);
    } else {
      m.f_.emplace_back(a->first, a->second + b->second);
      ++a, ++b;
    }
  }
  return m;
}

// ---------------------------------------------------------------------------

SparsePoly SparsePoly::constant(const Ring& r, const Int& c) {
  SparsePoly p(r);
  p.add_term(Monomial(), r.from_int(c));
  return p;
}

SparsePoly SparsePoly::variable(const Ring& r, VarId v) {
  SparsePoly p(r);
  p.add_term(Monomial::var(v), r.from_int(1));
  return p;
}

void SparsePoly::check_ring(const SparsePoly& o) const {
  if (ring_ != o.ring_)
    throw Error(Errc::RingMismatch, "operands over " + ring_.describe() + " and " + o.ring_.describe());
}

unsigned SparsePoly::degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

unsigned SparsePoly::degree_in(VarId v) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(v));
  return d;
}

std::vector<VarId> SparsePoly::variables() const {
  std::set<VarId> s;
  for (const auto& [m, c] : terms_)
    for (const auto& f : m.factors()) s.insert(f.first);
  return {s.begin(), s.end()};
}

Int SparsePoly::constant_term() const { return coefficient(Monomial()); }

Int SparsePoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Int(0) : it->second;
}

bool SparsePoly::is_multilinear() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.is_multilinear(); });
}

void SparsePoly::add_term(const Monomial& m, const Int& c) {
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    Int v = ring_.normalize(ring_.is_ext() ? c : ring_.from_int(c));
    if (v != 0) terms_.emplace(m, std::move(v));
    return;
  }
  it->second = ring_.add(it->second, c);
  if (it->second == 0) terms_.erase(it);
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
  check_ring(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
  check_ring(o);
  for (const auto& [m, c] : o.terms_) add_term(m, ring_.neg(c));
  return *this;
}

SparsePoly SparsePoly::operator+(const SparsePoly& o) const {
  SparsePoly r = *this;
  r += o;
  return r;
}

SparsePoly SparsePoly::operator-(const SparsePoly& o) const {
  SparsePoly r = *this;
  r -= o;
  return r;
}

SparsePoly SparsePoly::operator-() const {
  SparsePoly r(ring_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, ring_.neg(c));
  return r;
}

SparsePoly SparsePoly::operator*(const SparsePoly& o) const {
  check_ring(o);
  SparsePoly r(ring_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ring_.mul(ca, cb));
  return r;
}

SparsePoly SparsePoly::scale(const Int& c) const {
  SparsePoly r(ring_);
  const Int k = ring_.is_ext() ? c : ring_.from_int(c);
  for (const auto& [m, a] : terms_) r.add_term(m, ring_.mul(a, k));
  return r;
}

SparsePoly SparsePoly::pow(unsigned e) const {
  SparsePoly r = constant(ring_, 1), b = *this;
  while (e) {
    if (e & 1u) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

SparsePoly SparsePoly::substitute(const std::map<VarId, SparsePoly>& sub) const {
  for (const auto& [v, p] : sub) check_ring(p);
  SparsePoly r(ring_);
  std::map<std::pair<VarId, unsigned>, SparsePoly> powers;
  for (const auto& [m, c] : terms_) {
    SparsePoly term(ring_);
    Monomial kept;
    SparsePoly acc = constant(ring_, 1);
    for (const auto& [v, e] : m.factors()) {
      auto it = sub.find(v);
      if (it == sub.end()) {
        kept = kept * Monomial::var(v, e);
        continue;
      }
      auto key = std::make_pair(v, e);
      auto pw = powers.find(key);
      if (pw == powers.end()) pw = powers.emplace(key, it->second.pow(e)).first;
      acc = acc * pw->second;
    }
    for (const auto& [am, ac] : acc.terms_) r.add_term(am * kept, ring_.mul(ac, c));
  }
  return r;
}

SparsePoly SparsePoly::rename(const std::function<VarId(VarId)>& f) const {
  SparsePoly r(ring_);
  for (const auto& [m, c] : terms_) {
    std::vector<Monomial::Factor> fs;
    for (const auto& [v, e] : m.factors()) fs.emplace_back(f(v), e);
    r.add_term(Monomial::from_factors(std::move(fs)), c);
  }
  return r;
}

SparsePoly SparsePoly::multilinearize() const {
  SparsePoly r(ring_);
  for (const auto& [m, c] : terms_) r.add_term(m.multilinear(), c);
  return r;
}

SparsePoly SparsePoly::with_ring(const Ring& target) const {
  if (ring_.is_ext() || target.is_ext()) {
    if (ring_ != target) throw Error(Errc::RingMismatch, "cannot reinterpret extension-field coefficients");
    return *this;
  }
  SparsePoly r(target);
  for (const auto& [m, c] : terms_) r.add_term(m, c);
  return r;
}

Int SparsePoly::evaluate(const std::function<Int(VarId)>& value) const {
  Int acc = ring_.from_int(0);
  for (const auto& [m, c] : terms_) {
    Int t = c;
    for (const auto& [v, e] : m.factors()) t = ring_.mul(t, ring_.pow(ring_.is_ext() ? value(v) : ring_.from_int(value(v)), e));
    acc = ring_.add(acc, t);
  }
  return acc;
}

SparsePoly mul_multilinear(const SparsePoly& a, const SparsePoly& b) {
  if (a.ring() != b.ring()) throw Error(Errc::RingMismatch, "mul_multilinear ring mismatch");
  SparsePoly r(a.ring());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) r.add_term((ma * mb).multilinear(), a.ring().mul(ca, cb));
  return r;
}

std::size_t total_terms(const std::vector<SparsePoly>& F) {
  std::size_t t = 0;
  for (const auto& f : F) t += f.size();
  return t;
}

}  // namespace fqb
