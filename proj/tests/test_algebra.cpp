#include "doctest.h"
#include "fqbool/cyclic.hpp"
#include "fqbool/errors.hpp"
#include "fqbool/polyio.hpp"
#include "support.hpp"

using namespace fqb;
using fqb::testing::Rng;
using fqb::testing::uniform;

namespace {

SparsePoly P(const std::string& s, const Ring& r, VarRegistry& v) { return parse_poly(s, r, v); }

// Multiplication table of F_p[t]/(phi) by explicit polynomial products.
std::vector<std::vector<Int>> table_oracle(int p, const std::vector<int>& phi) {
  const int m = static_cast<int>(phi.size()) - 1;
  int q = 1;
  for (int i = 0; i < m; ++i) q *= p;
  auto digits = [&](int a) {
    std::vector<int> d(m);
    for (int j = 0; j < m; ++j) d[j] = a % p, a /= p;
    return d;
  };
  std::vector<std::vector<Int>> T(q, std::vector<Int>(q));
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) {
      auto x = digits(a), y = digits(b);
      std::vector<int> prod(2 * m, 0);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
      for (int k = 2 * m - 1; k >= m; --k) {
        const int c = prod[k];
        if (!c) continue;
        for (int j = 0; j <= m; ++j) prod[k - m + j] = ((prod[k - m + j] - c * phi[j]) % p + p) % p;
      }
      int packed = 0;
      for (int j = m - 1; j >= 0; --j) packed = packed * p + prod[j];
      T[a][b] = packed;
    }
  return T;
}

}  // namespace

TEST_CASE("characteristic two square") {
  VarRegistry v;
  const Ring F2 = Ring::mod(2);
  const auto x1 = P("x+1", F2, v);
  CHECK((x1 * x1) == P("x^2+1", F2, v));
}

TEST_CASE("substitute renames") {
  VarRegistry v;
  const Ring Z;
  const auto f = P("x1^2", Z, v);
  const VarId u = v.add("u");
  std::map<VarId, SparsePoly> sub{{v.at("x1"), SparsePoly::variable(Z, u)}};
  CHECK(f.substitute(sub) == P("u^2", Z, v));
}

TEST_CASE("evaluation of a sparse integer polynomial") {
  VarRegistry v;
  const auto f = P("x1^3*x2^5 + 2*x1^7*x2^5 + 3", Ring(), v);
  CHECK(f.size() == 3);
  CHECK(f.evaluate([](VarId) { return Int(1); }) == 6);
}

TEST_CASE("ring mismatch is rejected") {
  VarRegistry v;
  auto a = P("x", Ring::mod(3), v), b = P("x", Ring::mod(5), v);
  CHECK_THROWS_AS(a + b, Error);
  try {
    (void)(a * b);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::RingMismatch);
  }
}

TEST_CASE("normal form and evaluation homomorphism") {
  Rng rng(11);
  for (const Ring& r : {Ring(), Ring::mod(6), Ring::mod(7), Ring::ext(2, {1, 1, 0, 1})}) {
    for (int trial = 0; trial < 20; ++trial) {
      auto f = testing::random_poly(rng, r, 3, 4, 5), g = testing::random_poly(rng, r, 3, 4, 5);
      const auto s = f + g, p = f * g, d = f - f;
      CHECK(d.is_zero());
      for (const auto* h : {&s, &p})
        for (const auto& [m, c] : h->terms()) CHECK(c != 0);
      for (int k = 0; k < 5; ++k) {
        std::vector<Int> pt(3);
        for (auto& x : pt) x = r.is_integers() ? Int(uniform(rng, -4, 4)) : Int(uniform(rng, 0, 1000)) % r.order();
        auto at = [&](VarId v) { return pt[v]; };
        CHECK(s.evaluate(at) == r.add(f.evaluate(at), g.evaluate(at)));
        CHECK(p.evaluate(at) == r.mul(f.evaluate(at), g.evaluate(at)));
      }
    }
  }
}

TEST_CASE("extension arithmetic matches multiplication tables") {
  struct Case {
    int p;
    std::vector<int> phi;
  };
  for (const auto& c : {Case{2, {1, 1, 1}}, Case{3, {1, 0, 1}}, Case{2, {1, 1, 0, 1}}, Case{5, {2, 0, 1}},
                        Case{2, {1, 1, 0, 0, 1}}, Case{2, {1, 0, 1, 0, 0, 1}}, Case{7, {1, 0, 1}},
                        Case{2, {1, 1, 0, 0, 0, 0, 1}}}) {
    std::vector<Int> phi(c.phi.begin(), c.phi.end());
    const Ring r = Ring::ext(c.p, phi);
    const auto T = table_oracle(c.p, c.phi);
    CHECK(r.order() == Int(T.size()));
    for (std::size_t a = 0; a < T.size(); ++a)
      for (std::size_t b = 0; b < T.size(); ++b) REQUIRE(r.mul(a, b) == T[a][b]);
  }
}

TEST_CASE("irreducibility check") {
  CHECK(is_irreducible(2, {1, 1, 1}));
  CHECK_FALSE(is_irreducible(2, {1, 0, 1}));  // (t+1)^2
  CHECK(is_irreducible(3, {1, 0, 1}));
  CHECK_FALSE(is_irreducible(5, {1, 0, 1}));  // 2^2 = -1
  CHECK_THROWS_AS(Ring::ext(2, {1, 0, 1}), Error);
  CHECK_NOTHROW(Ring::ext(2, {1, 0, 1}, true));
  CHECK_THROWS_AS(Ring::mod(1), Error);
}

TEST_CASE("ext_reduce") {
  const Ring F4 = Ring::ext(2, {1, 1, 1});
  CHECK(ext_reduce(F4, 1, 2) == std::vector<Int>{1, 1});
  CHECK(ext_reduce(F4, F4.pack({0, 1}), 0) == std::vector<Int>{0, 1});
  const Ring F9 = Ring::ext(3, {1, 0, 1});
  CHECK(ext_reduce(F9, F9.pack({0, 1}), 1) == std::vector<Int>{2, 0});
  CHECK_THROWS_AS(ext_reduce(Ring::mod(3), 1, 1), Error);
}

TEST_CASE("cyclic convolution") {
  CHECK(cyclic_convolve(make_cyclic(7, {1, 0, 0}), make_cyclic(7, {4, 5, 6})).coeffs == std::vector<Int>{4, 5, 6});
  CHECK(cyclic_convolve(make_cyclic(5, {1, 1}), make_cyclic(5, {1, 1})).coeffs == std::vector<Int>{2, 2});
  CHECK(cyclic_convolve(make_cyclic(4, {0, 1, 0}), make_cyclic(4, {0, 1, 0})).coeffs == std::vector<Int>{0, 0, 1});
  CHECK_THROWS_AS(cyclic_convolve(make_cyclic(4, {0, 1, 0}), make_cyclic(4, {0, 1})), Error);
  CHECK_THROWS_AS(cyclic_convolve(make_cyclic(4, {0, 1}), make_cyclic(5, {0, 1})), Error);
}

TEST_CASE("cyclic inversion") {
  CHECK(cyclic_invert(make_cyclic(3, {1, 0, 0})).coeffs == std::vector<Int>{1, 0, 0});
  try {
    cyclic_invert(make_cyclic(2, {0, 1, 1}));
    FAIL("expected NotInvertible");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotInvertible);
  }
  CHECK_THROWS_AS(cyclic_invert(make_cyclic(6, {1, 0, 0})), Error);

  Rng rng(5);
  int inverted = 0;
  for (const int k : {32, 16, 3, 7, 2}) {
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<Int> c(5);
      for (auto& x : c) x = uniform(rng, 0, k - 1);
      const auto f = make_cyclic(k, c);
      try {
        const auto g = cyclic_invert(f);
        CHECK(cyclic_convolve(f, g) == cyclic_one(k, 5));
        ++inverted;
      } catch (const Error& e) {
        CHECK(e.code() == Errc::NotInvertible);
      }
    }
  }
  CHECK(inverted > 50);
}

TEST_CASE("polynomial JSON round trip") {
  for (const Ring& r : {Ring(), Ring::mod(9), Ring::ext(3, {1, 0, 1}, false, "a")}) {
    VarRegistry v;
    const auto f = r.is_ext() ? P("a*x1^2*x2 + (a+1)*x2 + 2", r, v) : P("x1^2*x2 - 3*x2 + 2", r, v);
    const json j = poly_to_json(f, v);
    VarRegistry v2;
    const Ring r2 = ring_from_json(j.at("ring"));
    CHECK(r2 == r);
    const auto g = poly_from_json(j, r2, v2);
    CHECK(format_poly(g, v2) == format_poly(f, v));
    CHECK(poly_to_json(g, v2).dump() == j.dump());
  }
}

TEST_CASE("JSON term-list polynomial form") {
  const json j = json::parse(R"({"ring": {"kind": "Integers"}, "vars": ["x1", "x2"],
      "terms": [{"m": {"x1": 3, "x2": 5}, "c": "1"}, {"m": {}, "c": "-4"}]})");
  VarRegistry v;
  const auto f = poly_from_json(j, ring_from_json(j.at("ring")), v);
  CHECK(f.size() == 2);
  CHECK(f.constant_term() == -4);
  CHECK(f.degree() == 8);
}

TEST_CASE("parser errors") {
  VarRegistry v;
  CHECK_THROWS_AS(P("x + * y", Ring(), v), Error);
  CHECK_THROWS_AS(P("(x + 1", Ring(), v), Error);
}
