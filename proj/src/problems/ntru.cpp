#include "fqbool/errors.hpp"
#include "fqbool/problems.hpp"

#include <random>

namespace fqb {

namespace {

bool small_prime(const Int& p) {
  if (p < 2) return false;
  for (Int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Int gcd(Int a, Int b) {
  while (b != 0) {
    Int r = a % b;
    a = b, b = r;
  }
  return a;
}

// Unbiased draw from [0, n) that does not depend on the standard library's
// distribution implementation.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return x % n;
}

// `ones` entries 1, `minus` entries -1, rest 0, at shuffled positions.
std::vector<Int> ternary(std::mt19937_64& rng, std::size_t N, std::size_t ones, std::size_t minus) {
  std::vector<Int> v(N, 0);
  for (std::size_t i = 0; i < ones; ++i) v[i] = 1;
  for (std::size_t i = ones; i < ones + minus; ++i) v[i] = -1;
  for (std::size_t i = N; i > 1; --i) std::swap(v[i - 1], v[draw(rng, i)]);
  return v;
}

std::vector<Int> ints(const json& j) { return vector_from_json(j); }

json ints_to_json(const std::vector<Int>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(int_to_json(x));
  return a;
}

}  // namespace

void ntru_validate(const NtruParams& P) {
  if (P.N < 1) throw Error(Errc::InvalidArgument, "N must be positive");
  if (!small_prime(P.p)) throw Error(Errc::InvalidArgument, "p must be prime");
  if (P.q <= P.p) throw Error(Errc::InvalidArgument, "q must exceed p");
  if (gcd(P.p, P.q) != 1) throw Error(Errc::InvalidArgument, "gcd(p, q) must be 1");
  if (P.df < 1 || 2 * P.df - 1 > P.N) throw Error(Errc::InvalidArgument, "need 1 <= df and 2 df - 1 <= N");
  if (P.dg < 1 || 2 * P.dg > P.N) throw Error(Errc::InvalidArgument, "need 1 <= dg and 2 dg <= N");
  if (P.h && (P.h->length() != P.N || P.h->modulus != P.q))
    throw Error(Errc::ShapeMismatch, "public key must have N coefficients mod q");
}

NtruParams ntru_params_from_json(const json& j) {
  try {
    NtruParams P;
    P.N = j.at("N").get<std::size_t>();
    P.p = int_from_json(j.value("p", json(3)));
    P.q = int_from_json(j.value("q", json(32)));
    P.df = j.value("df", std::size_t{1});
    P.dg = j.value("dg", std::size_t{1});
    if (j.contains("h") && !j["h"].is_null()) P.h = make_cyclic(P.q, ints(j["h"]));
    ntru_validate(P);
    return P;
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

json ntru_params_to_json(const NtruParams& P) {
  json j = {{"N", P.N}, {"p", int_to_json(P.p)}, {"q", int_to_json(P.q)}, {"df", P.df}, {"dg", P.dg}};
  if (P.h) j["h"] = ints_to_json(P.h->coeffs);
  return j;
}

NtruKey ntru_keygen(const NtruParams& P, std::uint64_t seed, std::size_t max_tries) {
  ntru_validate(P);
  std::mt19937_64 rng(seed);
  const std::vector<Int> g = ternary(rng, P.N, P.dg, P.dg);
  for (std::size_t t = 0; t < max_tries; ++t) {
    std::vector<Int> f = ternary(rng, P.N, P.df, P.df - 1);
    NtruKey K;
    try {
      K.fp = cyclic_invert(make_cyclic(P.p, f));
      K.fq = cyclic_invert(make_cyclic(P.q, f));
    } catch (const Error& e) {
      if (e.code() == Errc::NotInvertible) continue;
      throw;
    }
    K.f = std::move(f);
    K.g = g;
    K.h = cyclic_convolve(make_cyclic(P.q, g), K.fq);
    return K;
  }
  throw Error(Errc::KeygenFailed, "no invertible f after " + std::to_string(max_tries) + " tries");
}

json ntru_key_to_json(const NtruParams& P, const NtruKey& K) {
  NtruParams pub = P;
  pub.h = K.h;
  json j = ntru_params_to_json(pub);
  j["f"] = ints_to_json(K.f);
  j["g"] = ints_to_json(K.g);
  j["fp"] = ints_to_json(K.fp.coeffs);
  j["fq"] = ints_to_json(K.fq.coeffs);
  return j;
}

NtruKey ntru_key_from_json(const json& j) {
  const NtruParams P = ntru_params_from_json(j);
  if (!P.h) throw Error(Errc::ParseError, "key file without public key h");
  try {
    NtruKey K;
    K.f = ints(j.at("f"));
    K.g = ints(j.at("g"));
    K.h = *P.h;
    K.fp = make_cyclic(P.p, ints(j.at("fp")));
    K.fq = make_cyclic(P.q, ints(j.at("fq")));
    if (K.f.size() != P.N || K.g.size() != P.N) throw Error(Errc::ShapeMismatch, "f and g need N coefficients");
    return K;
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

// ---------------------------------------------------------------------------

namespace {

NtruAttack build_attack(const NtruParams& P, bool cardinality) {
  ntru_validate(P);
  if (!P.h) throw Error(Errc::InvalidArgument, "the attack needs the public key h");
  const std::size_t N = P.N;
  NtruAttack A;
  BooleanSystem& S = A.sys;
  const Ring Z;
  auto bit = [&](VarId v) { return SparsePoly::variable(Z, v); };
  auto num = [&](const Int& c) { return SparsePoly::constant(Z, c); };

  for (std::size_t i = 0; i < N; ++i) {
    const std::string f = "f" + std::to_string(i);
    A.fbits.emplace_back(S.add_var("F." + std::to_string(i) + ".1", VarClass::XBit, f, 1),
                         S.add_var("F." + std::to_string(i) + ".2", VarClass::XBit, f, 2));
  }
  for (std::size_t i = 0; i < N; ++i) {
    const std::string g = "g" + std::to_string(i);
    A.gbits.emplace_back(S.add_var("G." + std::to_string(i) + ".1", VarClass::XBit, g, 1),
                         S.add_var("G." + std::to_string(i) + ".2", VarClass::XBit, g, 2));
  }
  for (std::size_t i = 0; i < N; ++i)
    A.qexp.push_back(theta(P.q - 1, S, VarClass::XBit, "Q." + std::to_string(i), "q" + std::to_string(i)));
  for (std::size_t i = 0; i < N; ++i)
    A.pexp.push_back(theta(P.p - 1, S, VarClass::XBit, "P." + std::to_string(i), "p" + std::to_string(i)));
  for (auto* list : {&A.qexp, &A.pexp})
    for (const auto& e : *list) {
      if (!theta_injective(e.max_value())) S.add_symmetric(e);
      S.add_internal(e);
    }

  // f_i = F_i1 + F_i2 - 1 with F_i2 => F_i1: -1, 0, 1 = (0,0), (1,0), (1,1).
  auto pair_exp = [&](const std::pair<VarId, VarId>& b, const std::string& name) {
    AffineExpansion e;
    e.var = name;
    e.weights = {{b.first, 1}, {b.second, 1}};
    e.offset = -1;
    return e;
  };
  std::vector<SparsePoly> f(N), g(N);
  for (std::size_t i = 0; i < N; ++i) {
    AffineExpansion fe = pair_exp(A.fbits[i], "f" + std::to_string(i));
    AffineExpansion ge = pair_exp(A.gbits[i], "g" + std::to_string(i));
    f[i] = fe.as_poly();
    g[i] = ge.as_poly();
    S.add_decode(std::move(fe));
    S.add_decode(std::move(ge));
  }

  // Cardinalities via f_i^2 = F_i2 - F_i1 + 1 on the admissible bit pairs.
  const Int n = static_cast<long long>(N);
  if (cardinality) {
    SparsePoly cf = num(n + 1 - 2 * Int(P.df)), cg = num(n - 2 * Int(P.dg));
    for (std::size_t i = 0; i < N; ++i) {
      cf += bit(A.fbits[i].second) - bit(A.fbits[i].first);
      cg += bit(A.gbits[i].second) - bit(A.gbits[i].first);
    }
    A.cardinality_eqs[0] = S.add_equation(cf, "card f");
    A.cardinality_eqs[1] = S.add_equation(cg, "card g");
  } else {
    A.cardinality_eqs[0] = A.cardinality_eqs[1] = static_cast<std::size_t>(-1);
  }
  SparsePoly sf = num(-1), sg;
  for (std::size_t i = 0; i < N; ++i) {
    sf += f[i];
    sg += g[i];
  }
  S.add_equation(sf, "sum f");
  S.add_equation(sg, "sum g");
  for (std::size_t i = 0; i < N; ++i)
    S.add_equation(bit(A.fbits[i].first) * bit(A.fbits[i].second) - bit(A.fbits[i].second),
                   "order f" + std::to_string(i));
  for (std::size_t i = 0; i < N; ++i)
    S.add_equation(bit(A.gbits[i].first) * bit(A.gbits[i].second) - bit(A.gbits[i].second),
                   "order g" + std::to_string(i));

  // Convolutions: (a * f)_i = sum_{j + k = i mod N} a_j f_k.
  auto conv = [&](auto&& a, std::size_t i) {
    SparsePoly s;
    for (std::size_t j = 0; j < N; ++j) s += mul_multilinear(a(j), f[(i + N - j) % N]);
    return s;
  };
  const auto& h = P.h->coeffs;
  std::vector<SparsePoly> modq, modp;
  std::vector<std::string> tq, tp;
  for (std::size_t i = 0; i < N; ++i) {
    modq.push_back(conv([&](std::size_t j) { return num(h[j]); }, i) - g[i]);
    tq.push_back("h*f=g " + std::to_string(i));
  }
  for (std::size_t i = 0; i < N; ++i) {
    modq.push_back(conv([&](std::size_t j) { return A.qexp[j].as_poly(); }, i) - num(i == 0 ? 1 : 0));
    tq.push_back("fq*f=1 " + std::to_string(i));
  }
  for (std::size_t i = 0; i < N; ++i) {
    modp.push_back(conv([&](std::size_t j) { return A.pexp[j].as_poly(); }, i) - num(i == 0 ? 1 : 0));
    tp.push_back("fp*f=1 " + std::to_string(i));
  }
  lift_modular(S, modq, P.q, LiftMode::CoeffSum, tq);
  lift_modular(S, modp, P.p, LiftMode::CoeffSum, tp);
  return A;
}

}  // namespace

NtruAttack ntru_attack_system(const NtruParams& P) { return build_attack(P, true); }

Assignment ntru_witness(const NtruAttack& A, const NtruKey& K) {
  Assignment a(A.sys.num_vars(), 0);
  const std::size_t N = A.fbits.size();
  if (K.f.size() != N || K.g.size() != N) throw Error(Errc::ShapeMismatch, "key length differs from N");
  auto put = [&](const std::pair<VarId, VarId>& b, const Int& x) {
    if (x < -1 || x > 1) throw Error(Errc::InvalidArgument, "key coefficients must be ternary");
    a[b.first] = x >= 0;
    a[b.second] = x == 1;
  };
  for (std::size_t i = 0; i < N; ++i) {
    put(A.fbits[i], K.f[i]);
    put(A.gbits[i], K.g[i]);
    if (!set_value(A.qexp[i], K.fq.coeffs.at(i), a) || !set_value(A.pexp[i], K.fp.coeffs.at(i), a))
      throw Error(Errc::InvalidArgument, "inverse coefficient out of range");
  }
  if (!complete_lifts(A.sys, a)) throw Error(Errc::InvalidArgument, "key does not balance the lifted equations");
  return a;
}

std::vector<Int> ntru_decode_f(const NtruAttack& A, const Assignment& a) {
  if (a.size() < A.sys.num_vars()) throw Error(Errc::MissingBits, "assignment shorter than the system");
  std::vector<Int> f;
  for (const auto& [b1, b2] : A.fbits) f.push_back(Int(a[b1]) + Int(a[b2]) - 1);
  return f;
}

bool ntru_candidate_ok(const NtruParams& P, const std::vector<Int>& f) {
  if (!P.h || f.size() != P.N) return false;
  for (const auto& x : f)
    if (x < -1 || x > 1) return false;
  const std::vector<Int> g = centered(cyclic_convolve(*P.h, make_cyclic(P.q, f)));
  std::size_t plus = 0, minus = 0;
  for (const auto& x : g) {
    if (x == 1) ++plus;
    else if (x == -1) ++minus;
    else if (x != 0) return false;
  }
  return plus == P.dg && minus == P.dg;
}

NtruMinWeight ntru_min_weight_system(const NtruParams& P) {
  NtruMinWeight W{build_attack(P, false), {}};
  const Ring Z;
  // sum f_i^2 + sum g_i^2 - 1 = sum (F_i2 - F_i1 + G_i2 - G_i1) + 2N - 1.
  SparsePoly o = SparsePoly::constant(Z, 2 * Int(static_cast<long long>(P.N)) - 1);
  for (std::size_t i = 0; i < P.N; ++i) {
    o += SparsePoly::variable(Z, W.attack.fbits[i].second) - SparsePoly::variable(Z, W.attack.fbits[i].first);
    o += SparsePoly::variable(Z, W.attack.gbits[i].second) - SparsePoly::variable(Z, W.attack.gbits[i].first);
  }
  W.base.C = W.attack.sys;
  W.base.obar = o;
  W.base.u = 4 * Int(static_cast<long long>(P.N));
  return W;
}

}  // namespace fqb
