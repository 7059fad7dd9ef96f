#include "doctest.h"
#include "fqbool/errors.hpp"
#include "support.hpp"

#include <algorithm>

using namespace fqb;
using fqb::testing::Rng;
using fqb::testing::uniform;

namespace {

std::vector<Int> weights_of(const AffineExpansion& e) {
  std::vector<Int> w;
  for (const auto& [b, c] : e.weights) w.push_back(c);
  return w;
}

// Value multiset of an expansion over all bit patterns.
std::vector<Int> image(const AffineExpansion& e, std::size_t nvars) {
  std::vector<Int> vals;
  const std::size_t k = e.weights.size();
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << k); ++m) {
    Assignment a(nvars, 0);
    for (std::size_t i = 0; i < k; ++i) a[e.weights[i].first] = (m >> i) & 1;
    vals.push_back(e.value(a));
  }
  std::sort(vals.begin(), vals.end());
  return vals;
}

std::vector<Int> range(int lo, int hi) {
  std::vector<Int> r;
  for (int i = lo; i <= hi; ++i) r.push_back(i);
  return r;
}

std::vector<Int> unique_sorted(std::vector<Int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

Assignment bits_for(const BooleanSystem& sys, const std::map<std::string, Int>& values) {
  Assignment a(sys.num_vars(), 0);
  for (const auto& [name, val] : values) REQUIRE(set_value(*sys.find_decode(name), val, a));
  return a;
}

}  // namespace

TEST_CASE("theta weights") {
  BooleanSystem sys;
  CHECK(weights_of(theta(6, sys, VarClass::Aux, "B")) == std::vector<Int>{1, 2, 3});
  CHECK(weights_of(theta(1, sys, VarClass::GBit, "G")) == std::vector<Int>{1});
  CHECK(weights_of(theta(8, sys, VarClass::Aux, "C")) == std::vector<Int>{1, 2, 4, 1});
  const auto z = theta(0, sys, VarClass::Aux, "Z");
  CHECK(z.weights.empty());
  CHECK(z.offset == 0);
}

TEST_CASE("theta surjectivity and injectivity for b up to 64") {
  for (int b = 1; b <= 64; ++b) {
    BooleanSystem sys;
    const auto e = theta(b, sys, VarClass::Aux, "B");
    CHECK(e.weights.size() == floor_log2(b) + 1);
    const auto img = image(e, sys.num_vars());
    CHECK(unique_sorted(img) == range(0, b));
    const bool injective = unique_sorted(img).size() == img.size();
    CHECK(injective == theta_injective(b));
    CHECK(injective == (((b + 1) & b) == 0));
  }
}

TEST_CASE("centered theta") {
  BooleanSystem sys;
  CHECK(unique_sorted(image(theta_centered(2, 1, sys, VarClass::XBit, "X"), 64)) == range(-1, 1));
  const auto e = theta_centered(6, 3, sys, VarClass::XBit, "Y");
  auto img = image(e, sys.num_vars());
  CHECK(img.size() == 8);
  CHECK(std::count(img.begin(), img.end(), Int(0)) == 2);
  CHECK(unique_sorted(img) == range(-3, 3));
  BooleanSystem s2;
  CHECK(weights_of(theta_centered(5, 0, s2, VarClass::Aux, "Z")) == std::vector<Int>{1, 2, 2});
}

TEST_CASE("quadratize reproduces the worked example") {
  VarRegistry v;
  const auto f = parse_poly("x1^3*x2^5 + 2*x1^7*x2^5 + 3", Ring(), v);
  const auto Q = quadratize({f}, v);
  CHECK(Q.polys.size() == 10);
  CHECK(Q.new_vars.size() == 9);
  std::vector<std::string> got;
  for (const auto& p : Q.polys) got.push_back(format_poly(p, v));
  const std::vector<std::string> want{
      "-x1^2 + u.x1.1",       "-u.x1.1^2 + u.x1.2",  "-x2^2 + u.x2.1", "-u.x2.1^2 + u.x2.2",
      "-x1*u.x1.1 + v.1",     "-x2*v.1 + v.2",       "-x1*u.x1.1 + v.3", "-u.x1.2*v.3 + v.4",
      "-x2*v.4 + v.5",        "3 + u.x2.2*v.2 + 2*u.x2.2*v.5"};
  CHECK(got == want);
  CHECK(Q.hat_index == std::vector<std::size_t>{9});
  CHECK(Q.represents.at(v.at("v.5")) == Monomial::from_factors({{v.at("x1"), 7}, {v.at("x2"), 1}}));
}

TEST_CASE("quadratize leaves MQ input alone") {
  VarRegistry v;
  const auto f = parse_poly("x1*x2 - 1", Ring::mod(5), v);
  const auto Q = quadratize({f}, v);
  CHECK(Q.new_vars.empty());
  CHECK(Q.polys.size() == 1);
  CHECK(Q.polys[0] == f);
}

TEST_CASE("quadratize soundness and size formulas") {
  Rng rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const int p = std::array{2, 3, 5, 7}[trial % 4];
    const auto n = static_cast<std::size_t>(uniform(rng, 1, 3));
    auto S = testing::random_system(rng, Ring::mod(p), n, static_cast<std::size_t>(uniform(rng, 1, 3)), 8, 4);
    const std::size_t TF = total_terms(S.polys);
    VarRegistry vars = S.vars;
    const auto Q = quadratize(S.polys, vars);
    for (const auto& q : Q.polys) CHECK(q.degree() <= 2);
    CHECK(total_terms(Q.polys) == TF + 2 * Q.new_vars.size());
    CHECK(Q.polys.size() == S.polys.size() + Q.new_vars.size());
    // Chain values are forced, so V(Q(F)) projects onto V(F) iff the forced
    // extension of every X point solves Q(F) exactly when X solves F.
    const auto roots = testing::brute_roots(S);
    testing::for_each_point(testing::elements(S.ring), n, [&](const std::vector<Int>& x) {
      std::map<VarId, Int> val;
      for (VarId i = 0; i < n; ++i) val[i] = x[i];
      for (const auto& [v, m] : Q.represents) {
        Int r = 1;
        for (const auto& [xv, e] : m.factors()) r *= pow(x[xv], e);
        val[v] = r % p;
      }
      bool ok = true;
      for (const auto& q : Q.polys) ok = ok && q.evaluate([&](VarId v) { return val.at(v); }) == 0;
      CHECK(ok == (roots.count(x) > 0));
    });
  }
}

TEST_CASE("quadratize projection by full enumeration on tiny cases") {
  VarRegistry v;
  const Ring F3 = Ring::mod(3);
  PolySystem S{F3, {}, {}};
  S.vars.add("x1");
  S.polys.push_back(parse_poly("x1^3 + 2", F3, S.vars));
  const auto roots = testing::brute_roots(S);
  PolySystem QS{F3, S.vars, {}};
  QS.polys = quadratize(S.polys, QS.vars).polys;
  std::set<std::vector<Int>> proj;
  for (const auto& r : testing::brute_roots(QS)) proj.insert({r[0]});
  CHECK(proj == roots);
  CHECK(roots == std::set<std::vector<Int>>{{1}});
}

TEST_CASE("bit_blast over F3") {
  Encoder enc;
  const Ring F3 = Ring::mod(3);
  const auto f = parse_poly("x1 + x2 + 1", F3, enc.vars());
  const auto B = bit_blast(enc, {f});
  REQUIRE(B.size() == 1);
  CHECK(format_poly(B[0], enc.system().names()) == "1 + X.x1.0 + X.x1.1 + X.x2.0 + X.x2.1");
  const auto* d = enc.system().find_decode("x1");
  REQUIRE(d);
  CHECK(weights_of(*d) == std::vector<Int>{1, 1});
}

TEST_CASE("bit_blast over F2 is a renaming") {
  Encoder enc;
  const Ring F2 = Ring::mod(2);
  const auto f = parse_poly("x*y + x + 1", F2, enc.vars());
  const auto B = bit_blast(enc, {f});
  CHECK(format_poly(B[0], enc.system().names()) == "1 + X.x.0 + X.x.0*X.y.0");
  CHECK(enc.system().num_vars() == 2);
}

TEST_CASE("bit_blast squares agree pointwise over F5") {
  Encoder enc;
  const Ring F5 = Ring::mod(5);
  const auto f = parse_poly("x^2", F5, enc.vars());
  const auto B = bit_blast(enc, {f})[0];
  CHECK(B.is_multilinear());
  const auto& e = *enc.system().find_decode("x");
  CHECK(weights_of(e) == std::vector<Int>{1, 2, 1});
  for (int m = 0; m < 8; ++m) {
    Assignment a{std::uint8_t(m & 1), std::uint8_t(m >> 1 & 1), std::uint8_t(m >> 2 & 1)};
    const Int x = e.value(a);
    CHECK(B.evaluate([&](VarId v) { return Int(a[v]); }) == (x * x) % 5);
  }
  CHECK_THROWS_AS(bit_blast(enc, {parse_poly("x^3", F5, enc.vars())}), Error);
}

TEST_CASE("lift_modular worked example") {
  Encoder enc;
  const Ring F3 = Ring::mod(3);
  const auto B = bit_blast(enc, {parse_poly("x1 + x2 + 1", F3, enc.vars())});
  CHECK(lift_range(B[0].with_ring(Ring()), 3, LiftMode::CoeffSum).M == 1);
  CHECK(lift_range(B[0].with_ring(Ring()), 3, LiftMode::TermCount).M == 5);
  auto& sys = enc.system();
  lift_modular(sys, B, 3, LiftMode::CoeffSum);
  REQUIRE(sys.lifts().size() == 1);
  CHECK(sys.lifts()[0].counter.weights.size() == 1);
  // x1 = x2 = 1 via bits (1,0),(1,0); U = 1.
  Assignment a(sys.num_vars(), 0);
  a[sys.names().at("X.x1.0")] = 1;
  a[sys.names().at("X.x2.0")] = 1;
  a[sys.lifts()[0].counter.weights[0].first] = 1;
  CHECK(evaluate(sys, a) == std::vector<Int>{0});
  CHECK_THROWS_AS(lift_modular(sys, B, 1, LiftMode::CoeffSum), Error);
}

TEST_CASE("lift of the zero polynomial") {
  BooleanSystem sys;
  lift_modular(sys, {SparsePoly(Ring::mod(3))}, 3, LiftMode::CoeffSum);
  CHECK(sys.lifts()[0].counter.weights.empty());
  CHECK(sys.equations()[0].is_zero());
}

TEST_CASE("signed range lifting") {
  Encoder enc(Representation::Centered);
  const auto B = bit_blast(enc, {parse_poly("x1 + x2", Ring::mod(3), enc.vars())});
  const auto li = lift_range(B[0], 3, LiftMode::SignedRange);
  CHECK(li.m_lo == 0);
  CHECK(li.M == 0);
  const auto& d = *enc.system().find_decode("x1");
  CHECK(d.offset == -1);
  // bits (0,0) decode to -1 in the centered representation.
  CHECK(d.value(Assignment(enc.system().num_vars(), 0)) == -1);
}

TEST_CASE("descent over F4") {
  const Ring F4 = Ring::ext(2, {1, 1, 1});
  VarRegistry v;
  const auto f = parse_poly("x^2 + t", F4, v);
  const auto D = descend_extension({f}, v);
  REQUIRE(D.polys.size() == 2);
  CHECK(format_poly(D.polys[0], v) == "x.0 + x.1");
  CHECK(format_poly(D.polys[1], v) == "1 + x.1");
}

TEST_CASE("descent with m = 1 renames") {
  const Ring F5 = Ring::ext(5, {2, 1});  // t = -2 = 3
  VarRegistry v;
  const auto D = descend_extension({parse_poly("x*y + 1", F5, v)}, v);
  REQUIRE(D.polys.size() == 1);
  CHECK(format_poly(D.polys[0], v) == "1 + x.0*y.0");
}

TEST_CASE("descent round trip on small extensions") {
  Rng rng(77);
  for (const Ring& r : {Ring::ext(2, {1, 1, 1}), Ring::ext(3, {1, 0, 1}), Ring::ext(2, {1, 1, 0, 1})}) {
    for (int trial = 0; trial < 6; ++trial) {
      auto S = testing::random_system(rng, r, 2, 2, 2, 3);
      PolySystem G{Ring::mod(r.characteristic()), S.vars, {}};
      const auto D = descend_extension(S.polys, G.vars);
      G.polys = D.polys;
      CHECK(G.polys.size() == r.degree() * S.polys.size());
      CHECK(total_terms(G.polys) <= r.degree() * r.degree() * r.degree() * total_terms(S.polys));
      // Roots of G (over all registry vars) project/pack to roots of S.
      std::set<std::vector<Int>> packed;
      for (const auto& root : testing::brute_roots(G)) {
        std::vector<Int> pt;
        for (VarId x = 0; x < S.vars.size(); ++x) {
          std::vector<Int> c;
          for (VarId comp : D.components.at(x)) c.push_back(root[comp]);
          pt.push_back(r.pack(c));
        }
        packed.insert(pt);
      }
      CHECK(packed == testing::brute_roots(S));
    }
  }
}

TEST_CASE("full_reduce small cases") {
  {
    PolySystem S{Ring::mod(3), {}, {}};
    S.polys.push_back(parse_poly("x - 1", S.ring, S.vars));
    const auto sys = full_reduce(S);
    CHECK(testing::decoded_roots(sys, S) == std::set<std::vector<Int>>{{1}});
  }
  {
    PolySystem S{Ring::mod(2), {}, {}};
    S.polys.push_back(parse_poly("x^2 + x + 1", S.ring, S.vars));
    const auto sys = full_reduce(S);
    CHECK(testing::decoded_roots(sys, S).empty());
    CHECK(solve(sys, {}).status == SolveStatus::Unsat);
  }
}

TEST_CASE("full_reduce matches brute force over F5 cubes") {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    auto S = testing::random_system(rng, Ring::mod(5), 3, static_cast<std::size_t>(uniform(rng, 1, 2)), 4, 3);
    for (auto mode : {LiftMode::CoeffSum, LiftMode::TermCount}) {
      const auto sys = full_reduce(S, {Representation::Standard, mode});
      for (const auto& f : sys.equations()) CHECK(f.is_multilinear());
      CHECK(testing::decoded_roots(sys, S) == testing::brute_roots(S));
    }
  }
}

TEST_CASE("full_reduce centered over F3 and F5") {
  Rng rng(31);
  for (int trial = 0; trial < 12; ++trial) {
    const int p = trial % 2 ? 3 : 5;
    auto S = testing::random_system(rng, Ring::mod(p), 2, 2, 3, 3);
    const auto sys = full_reduce(S, {Representation::Centered, LiftMode::CoeffSum});
    std::set<std::vector<Int>> centered;
    for (auto pt : testing::brute_roots(S)) {
      for (auto& x : pt)
        if (2 * x > p) x -= p;
      centered.insert(pt);
    }
    CHECK(testing::decoded_roots(sys, S) == centered);
  }
}

TEST_CASE("decode examples") {
  Encoder enc;
  enc.vars().add("x");
  enc.declare(0, VarDomain::field(3));
  enc.expansion(0);
  Assignment a{1, 0};
  CHECK(decode(enc.system(), a).decoded.at("x") == 1);
  CHECK_THROWS_AS(decode(enc.system(), Assignment{1}), Error);

  BooleanSystem sys;
  auto t6 = theta(6, sys, VarClass::Aux, "B", "b");
  sys.add_decode(t6);
  CHECK(decode(sys, {1, 1, 0}).decoded.at("b") == 3);
  CHECK(decode(sys, {0, 0, 1}).decoded.at("b") == 3);
}

TEST_CASE("integer encoding") {
  SUBCASE("linear needs no chain variables") {
    Encoder enc;
    const auto g = parse_poly("y1 + 2*y2", Ring(), enc.vars());
    enc.declare(enc.vars().at("y1"), VarDomain::bounded(3));
    enc.declare(enc.vars().at("y2"), VarDomain::bounded(3));
    const auto E = encode_integers(enc, {g});
    CHECK(E.side_equations.empty());
    CHECK(format_poly(E.gbar[0], enc.system().names()) == "Y.y1.0 + 2*Y.y1.1 + 2*Y.y2.0 + 4*Y.y2.1");
  }
  SUBCASE("chain bound for y^2") {
    Encoder enc;
    const auto g = parse_poly("y^2", Ring(), enc.vars());
    enc.declare(0, VarDomain::bounded(3));
    CHECK(chain_value_bound(enc, {g}) == 9);
    BooleanSystem scratch;
    CHECK(theta(9, scratch, VarClass::VBit, "V").weights.size() == 4);
  }
  SUBCASE("zero polynomial") {
    Encoder enc;
    const auto E = encode_integers(enc, {SparsePoly()});
    CHECK(E.gbar[0].is_zero());
    CHECK(E.side_equations.empty());
  }
  SUBCASE("missing bound") {
    Encoder enc;
    const auto g = parse_poly("y^3", Ring(), enc.vars());
    CHECK_THROWS_AS(encode_integers(enc, {g}), Error);
  }
  SUBCASE("evaluation identity with chains") {
    Encoder enc;
    const auto g = parse_poly("y1^3*y2 - 2*y2^2", Ring(), enc.vars());
    enc.declare(0, VarDomain::bounded(2));
    enc.declare(1, VarDomain::bounded(3, 1));
    const auto E = encode_integers(enc, {g});
    CHECK_FALSE(E.side_equations.empty());
    for (int y1 = 0; y1 <= 2; ++y1)
      for (int y2 = -1; y2 <= 2; ++y2) {
        // Pin the inputs, let the solver find the (forced) chain values.
        Assignment a = bits_for(enc.system(), {{"y1", y1}, {"y2", y2}});
        const auto& sys = enc.system();
        BackendConfig cfg;
        std::vector<Literal> lits;
        for (const auto& d : sys.decode_map())
          for (const auto& [b, w] : d.weights) lits.emplace_back(b, a[b]);
        const auto out = solve(sys, cfg, lits);
        REQUIRE(out.status == SolveStatus::Sat);
        const Int gv = E.gbar[0].evaluate([&](VarId v) { return Int(out.assignment[v]); });
        CHECK(gv == Int(y1 * y1 * y1 * y2 - 2 * y2 * y2));
      }
  }
}

TEST_CASE("inequality encoding") {
  SUBCASE("box 0 <= y <= 3") {
    Encoder enc;
    const auto g = parse_poly("y", Ring(), enc.vars());
    enc.declare(0, VarDomain::bounded(3));
    encode_inequalities(enc, {{g, 3}});
    const auto& sys = enc.system();
    CHECK(sys.num_vars() == 4);
    CHECK(format_poly(sys.equations()[0], sys.names()) == "-Y.y.0 - 2*Y.y.1 + G.0.0 + 2*G.0.1");
    CHECK(testing::all_solutions(sys).size() == 4);
  }
  SUBCASE("constant zero with b = 1") {
    Encoder enc;
    encode_inequalities(enc, {{SparsePoly(), 1}});
    CHECK(testing::all_solutions(enc.system()).size() == 1);
  }
  SUBCASE("point constraint") {
    Encoder enc;
    const auto g = parse_poly("y", Ring(), enc.vars());
    enc.declare(0, VarDomain::bounded(3));
    try {
      encode_inequalities(enc, {{g, 0}});
      FAIL("expected EmptyOrPointConstraint");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::EmptyOrPointConstraint);
    }
  }
  SUBCASE("feasible set matches enumeration") {
    Encoder enc;
    const auto g = parse_poly("y1*y2 - y1 + 2", Ring(), enc.vars());
    enc.declare(0, VarDomain::bounded(3));
    enc.declare(1, VarDomain::bounded(2));
    encode_inequalities(enc, {{g, 4}});
    std::set<std::pair<int, int>> want, got;
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; b <= 2; ++b)
        if (a * b - a + 2 >= 0 && a * b - a + 2 <= 4) want.insert({a, b});
    for (const auto& sol : testing::all_solutions(enc.system())) {
      const auto d = decode(enc.system(), sol).decoded;
      got.insert({static_cast<int>(d.at("y1")), static_cast<int>(d.at("y2"))});
    }
    CHECK(got == want);
  }
}

TEST_CASE("norm window") {
  Encoder enc(Representation::Centered);
  enc.vars().add("x1");
  enc.vars().add("x2");
  enc.declare(0, VarDomain::field(3));
  enc.declare(1, VarDomain::field(3));
  add_norm_window(enc, {0, 1}, 1);
  std::set<std::pair<int, int>> got;
  for (const auto& sol : testing::all_solutions(enc.system())) {
    const auto d = decode(enc.system(), sol).decoded;
    got.insert({static_cast<int>(d.at("x1")), static_cast<int>(d.at("x2"))});
  }
  CHECK(got == std::set<std::pair<int, int>>{{-1, 0}, {1, 0}, {0, -1}, {0, 1}});
}

TEST_CASE("boolean system JSON round trip") {
  PolySystem S{Ring::ext(3, {1, 0, 1}), {}, {}};
  S.polys.push_back(parse_poly("x*y + t*x + 1", S.ring, S.vars));
  const auto sys = full_reduce(S);
  const json j = to_json(sys);
  const auto back = boolean_system_from_json(j);
  CHECK(to_json(back).dump() == j.dump());
  CHECK(back.num_equations() == sys.num_equations());
  CHECK(back.field().has_value());
}
