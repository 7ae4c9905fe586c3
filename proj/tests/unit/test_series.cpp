#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "invt/molien.hpp"
#include "invt/polyaction.hpp"

using namespace invt;
using testutil::gfmat;
using testutil::qmat;
using Q = CyclotomicField;

namespace {

CyclotomicNumber q(long n, long d = 1) { return CyclotomicNumber(1, Rational(n, d)); }
CPoly ints(std::vector<long long> c) { return cpoly::from_ints(c); }

RationalFunction prod_den(std::vector<int> degrees, CPoly num = {CyclotomicNumber::one(1)}) {
  CPoly den{CyclotomicNumber::one(1)};
  for (int d : degrees) den = cpoly::mul(den, cpoly::one_minus_t_pow(d));
  return RationalFunction(num, den);
}

template <class F>
std::vector<long long> invariant_dims(const Group<F>& G, int D) {
  PolyRing<F> ring(G.field(), G.dim(), D);
  return invariants_up_to(ring, G, D).dims();
}

std::vector<long long> coeff_ints(const std::vector<CyclotomicNumber>& c) {
  std::vector<long long> out;
  for (auto& x : c) {
    REQUIRE(x.is_rational());
    out.push_back(x.rational_value().get_num().get_si());
  }
  return out;
}

CPoly random_poly(std::mt19937& rng, int deg, int conductor) {
  std::uniform_int_distribution<int> coef(-3, 3), expo(0, conductor - 1);
  CPoly p;
  for (int i = 0; i <= deg; ++i)
    p.push_back(CyclotomicNumber::zeta(conductor, expo(rng)) * q(coef(rng)) + q(coef(rng)));
  return cpoly::trim(p);
}

}  // namespace

TEST_CASE("cyclotomic minimal and display") {
  CHECK(CyclotomicNumber::zeta(4, 2).minimal().conductor() == 1);
  CHECK(CyclotomicNumber::zeta(12, 3).minimal() == CyclotomicNumber::zeta(4));
  CHECK(CyclotomicNumber::zeta(12, 3).minimal().conductor() == 4);
  CHECK(CyclotomicNumber::zeta(6).minimal().conductor() == 3);
  CHECK(CyclotomicNumber::zeta(5).minimal().conductor() == 5);
  CHECK((CyclotomicNumber::zeta(4, 3) + q(1)).display() == "-E(4)+1");
  CHECK(CyclotomicNumber(12, Rational(-1, 2)).display() == "-1/2");
  CHECK(CyclotomicNumber::zeta(3, 2).display() == "-E(3)-1");
  // sqrt(2) = zeta_8 + zeta_8^7 lives at conductor 8.
  auto r2 = CyclotomicNumber::zeta(24, 3) + CyclotomicNumber::zeta(24, 21);
  CHECK(r2.minimal().conductor() == 8);
  CHECK(r2 * r2 == q(2));
}

TEST_CASE("polynomial arithmetic") {
  auto a = ints({1, 2, 1}), b = ints({1, 1});
  auto [qt, r] = cpoly::divmod(a, b);
  CHECK(qt == ints({1, 1}));
  CHECK(r.empty());
  CHECK(cpoly::gcd(ints({-1, 0, 1}), ints({1, 2, 1})) == ints({1, 1}));
  CHECK(cpoly::to_string(ints({1, -2, 0, 3})) == "1 - 2*t + 3*t^3");
  CHECK(cpoly::eval(ints({1, 1, 1}), CyclotomicNumber::zeta(3)).is_zero());
  CHECK_THROWS_AS(cpoly::divmod(a, {}), Error);
}

TEST_CASE("rational function canonical form") {
  RationalFunction f(ints({-1, 0, 1}), ints({-2, -2}));
  CHECK(f.is_polynomial());
  CHECK(f.num() == cpoly::scale(ints({-1, 1}), q(-1, 2)));
  CHECK(RationalFunction(ints({2}), ints({4})) == RationalFunction::polynomial({q(1, 2)}));
  CHECK(prod_den({1, 2}).to_string() == "(1) / (1 - t - t^2 + t^3)");
  CHECK(RationalFunction(ints({1}), ints({2, -3})).to_string() == "(1) / (2 - 3*t)");
  CHECK_THROWS_AS(RationalFunction(ints({1}), {}), Error);
}

TEST_CASE("molien examples") {
  auto pm = Group<Q>::generate(Q(), 2, {qmat({{-1, 0}, {0, -1}})});
  CHECK(molien(pm, {}, CharacterContext<Q>{Q()}) == prod_den({2, 2}, ints({1, 0, 1})));

  auto s2 = Group<Q>::generate(Q(), 2, {qmat({{0, 1}, {1, 0}})});
  CHECK(molien(s2, {}, CharacterContext<Q>{Q()}) == prod_den({1, 2}));
  // Sign character: the alternating polynomials are (x - y) k[x, y]^S2.
  std::vector<CyclotomicNumber> sign;
  for (auto& c : s2.classes()) sign.push_back(q(c.order == 1 ? 1 : -1));
  CHECK(molien(s2, sign, CharacterContext<Q>{Q()}) == prod_den({1, 2}, ints({0, 1})));

  for (int n = 1; n <= 4; ++n) {
    auto triv = Group<Q>::generate(Q(), n, {Matrix<Q>::identity(Q(), n)});
    CHECK(molien(triv, {}, CharacterContext<Q>{Q()}) == prod_den(std::vector<int>(n, 1)));
  }

  auto bad = std::vector<CyclotomicNumber>{q(1)};
  CHECK_THROWS_AS(molien(s2, bad, CharacterContext<Q>{Q()}), Error);
}

TEST_CASE("molien agrees with invariant dimensions") {
  const int D = 12;
  for (int n : {3, 4, 5, 6}) {
    CAPTURE(n);
    Q f(n);
    auto G = Group<Q>::generate(f, 2, dihedral_generators(f, n));
    auto series = molien(G, {}, CharacterContext<Q>{f});
    CHECK(coeff_ints(series.expand(D)) == invariant_dims(G, D));
    // Dihedral invariants are polynomial on xy and x^n + y^n.
    CHECK(series == prod_den({2, n}));
  }
  for (int p : {5, 7}) {
    CAPTURE(p);
    auto f = FiniteField::create(p, 1);
    auto G = Group<FiniteField>::generate(f, 2, {gfmat(f, {{0, 1}, {1, 0}}), gfmat(f, {{-1, 0}, {0, 1}})});
    auto ctx = CharacterContext<FiniteField>(f, lift_order_for(G, 1));
    auto series = molien(G, {}, ctx);
    CHECK(coeff_ints(series.expand(D)) == invariant_dims(G, D));
    CHECK(series == prod_den({2, 4}));
  }
}

TEST_CASE("hilbert_from_dims") {
  std::vector<long long> s2;
  for (int d = 0; d <= 10; ++d) s2.push_back(d / 2 + 1);
  auto fit = hilbert_from_dims(s2, {1, 2});
  REQUIRE(fit.closed_form);
  CHECK(*fit.closed_form == prod_den({1, 2}));
  CHECK(fit.window_low == 1);
  CHECK(fit.numerator == ints({1}));

  // Invariants of +-I against the generators x^2, xy, y^2: numerator 1 + t^2 inside the window.
  std::vector<long long> pm;
  for (int d = 0; d <= 10; ++d) pm.push_back(d % 2 ? 0 : d + 1);
  auto fit2 = hilbert_from_dims(pm, {2, 2});
  CHECK(*fit2.closed_form == prod_den({2, 2}, ints({1, 0, 1})));

  auto bumped = s2;
  bumped[9] += 1;
  CHECK_THROWS_AS(hilbert_from_dims(bumped, {1, 2}), Error);
  CHECK_THROWS_AS(hilbert_from_dims({1, 1}, {1, 2}), Error);
  // An explicit bound moves the window.
  auto fit3 = hilbert_from_dims(s2, {1, 2}, 5);
  CHECK(fit3.window_low == 5);
}

TEST_CASE("quotient_X examples") {
  auto m = prod_den({1, 1});
  auto r = prod_den({2, 2}, ints({1, 0, 1}));
  auto x = quotient_X(m, r);
  CHECK(x == RationalFunction(ints({1, 2, 1}), ints({1, 0, 1})));
  CHECK(x - RationalFunction::polynomial(ints({1})) == RationalFunction(ints({0, 2}), ints({1, 0, 1})));
  // S2 on k[x, y]: X is the coinvariant series 1 + t.
  CHECK(quotient_X(m, prod_den({1, 2})) == RationalFunction::polynomial(ints({1, 1})));
}

TEST_CASE("evaluation with poles") {
  auto x = prod_den({14}, cpoly::one_minus_t_pow(42));
  CHECK(x.is_polynomial());
  CHECK(x.evaluate(q(-1)) == q(3));
  CHECK(x.evaluate(q(1)) == q(3));
  CHECK(RationalFunction::polynomial(ints({1, 1})).evaluate(q(1)) == q(2));

  auto p = prod_den({1, 1});
  auto e = p.evaluate_checked(q(1));
  CHECK(e.pole);
  CHECK(e.pole_order == 2);
  CHECK_THROWS_AS(p.evaluate(q(1)), Error);
  CHECK(p.evaluate(q(-1)) == q(1, 4));

  auto i = CyclotomicNumber::zeta(4);
  RationalFunction g(cpoly::mul(CPoly{q(1), i}, CPoly{q(1), i}), ints({1, 0, -1}));
  auto ge = g.evaluate_checked(q(1));
  CHECK(ge.pole);
  CHECK(ge.pole_order == 1);
  CHECK(g.evaluate(i) == q(0));
}

TEST_CASE("series properties") {
  std::mt19937 rng(20261019);
  for (int trial = 0; trial < 25; ++trial) {
    CAPTURE(trial);
    int m = trial % 2 ? 4 : 3;
    auto num = random_poly(rng, 3, m);
    auto den = random_poly(rng, 3, m);
    if (den.empty() || den[0].is_zero()) den = cpoly::add(den, ints({1}));
    RationalFunction f(num, den), g(random_poly(rng, 2, m), cpoly::add(random_poly(rng, 1, m), ints({5})));
    if (g.num().empty() || f.num().empty()) continue;

    CHECK((f * g) / g == f);
    CHECK((f + g) - g == f);

    auto z = CyclotomicNumber::zeta(5);
    for (long long s : {7, 11, 13}) {
      auto fe = f.evaluate_checked(z), fs = f.galois(s).evaluate_checked(z.galois(s));
      CHECK(fe.pole == fs.pole);
      if (!fe.pole) CHECK(fs.value == fe.value.galois(s));
    }

    const int D = 20;
    auto s = TruncatedSeries::from_rational(f, D);
    auto back = rational_reconstruct(s);
    REQUIRE(back);
    CHECK(*back == f);
    auto sg = TruncatedSeries::from_rational(g, D);
    if (!sg[0].is_zero()) CHECK((s * sg) / sg == s);
    CHECK(TruncatedSeries::from_rational(f * g, D) == s * sg);
  }
  std::vector<long long> noise;
  for (int d = 0; d <= 10; ++d) noise.push_back((d * d * 7 + 3) % 11);
  CHECK_FALSE(rational_reconstruct(TruncatedSeries::from_ints(noise, 10)));
}
