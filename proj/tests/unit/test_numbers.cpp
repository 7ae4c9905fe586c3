#include <random>
#include <set>

#include "doctest.h"
#include "invt/brauer.hpp"
#include "invt/cyclotomic.hpp"
#include "invt/error.hpp"
#include "invt/finite_field.hpp"

using namespace invt;

namespace {

CyclotomicNumber random_cyclotomic(std::mt19937& rng, int m) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  std::vector<Rational> c(euler_phi(m));
  for (auto& q : c) {
    q = Rational(num(rng), den(rng));
    q.canonicalize();
  }
  return CyclotomicNumber(m, c);
}

}  // namespace

TEST_CASE("rational literals") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational(" -7 ") == Rational(-7));
  CHECK(to_string(parse_rational("4/2")) == "2");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == std::vector<Rational>{-1, 1});
  CHECK(cyclotomic_polynomial(4) == std::vector<Rational>{1, 0, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<Rational>{1, -1, 1});
  CHECK(cyclotomic_polynomial(12).size() == 5);
  CHECK(euler_phi(28) == 12);
}

TEST_CASE("cyclotomic arithmetic") {
  auto i = CyclotomicNumber::zeta(4);
  CHECK((i * i) == CyclotomicNumber(4, Rational(-1)));
  CHECK(parse_cyclotomic("z^2+1", 4).is_zero());
  CHECK(parse_cyclotomic("1/2*z - 3", 8).to_string() == "1/2*z-3");
  CHECK((CyclotomicNumber::one(5) / CyclotomicNumber::zeta(5)) == CyclotomicNumber::zeta(5, 4));
  // Mixed conductors meet in the lcm field: zeta_4 * zeta_3 is a primitive 12th root.
  auto w = CyclotomicNumber::zeta(4) * CyclotomicNumber::zeta(3);
  CHECK(w.conductor() == 12);
  CHECK(element_order(w) == 12);
}

TEST_CASE("element_order examples") {
  CHECK(element_order(CyclotomicNumber::one(1)) == 1);
  CHECK(element_order(CyclotomicNumber(1, Rational(-1))) == 2);
  CHECK(element_order(CyclotomicNumber::zeta(5)) == 5);
  CHECK(element_order(-CyclotomicNumber::zeta(5)) == 10);
  CHECK_THROWS_AS(element_order(CyclotomicNumber(1, Rational(2))), Error);
  CHECK_THROWS_AS(element_order(CyclotomicNumber::zeta(4) + CyclotomicNumber::one(4)), Error);

  auto f7 = FiniteField::create(7, 1);
  CHECK(element_order(f7.one()) == 1);
  CHECK(element_order(f7.from_int(-1)) == 2);
  // Oracle: brute-force powers of 3 modulo 7 in machine integers.
  int order = 0;
  for (int n = 1, x = 3; n <= 6; ++n, x = x * 3 % 7)
    if (x == 1 && order == 0) order = n;
  CHECK(order == 6);
  CHECK(element_order(f7.from_int(3)) == order);
  CHECK_THROWS_AS(element_order(f7.zero()), Error);
}

TEST_CASE("cyclotomic_embed") {
  CHECK(CyclotomicNumber::one(2).embed(4) == CyclotomicNumber::one(4));
  CHECK(CyclotomicNumber::zeta(2).embed(4) == CyclotomicNumber::zeta(4, 2));
  auto r = (CyclotomicNumber::zeta(3) + CyclotomicNumber::one(3)).embed(6);
  CHECK(r.conductor() == 6);
  // (r - 1)^3 = zeta_3^3 = 1 after expansion; r - 1 itself is not 1.
  auto s = r - CyclotomicNumber::one(6);
  CHECK((s * s * s).is_one());
  CHECK(!s.is_one());
  CHECK(r == CyclotomicNumber::zeta(6, 2) + CyclotomicNumber::one(6));
  CHECK_THROWS_AS(CyclotomicNumber::zeta(3).embed(4), Error);
}

TEST_CASE("embedding composes along m | m' | m''") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    auto x = random_cyclotomic(rng, 3);
    CHECK(x.embed(6).embed(12) == x.embed(12));
    auto y = random_cyclotomic(rng, 4);
    CHECK(y.embed(8).embed(24) == y.embed(24));
    // Ring homomorphism.
    CHECK((x * x + x).embed(12) == x.embed(12) * x.embed(12) + x.embed(12));
  }
}

TEST_CASE("field axioms on random triples") {
  std::mt19937 rng(11);
  for (int m : {1, 4, 5, 12}) {
    for (int trial = 0; trial < 8; ++trial) {
      auto a = random_cyclotomic(rng, m), b = random_cyclotomic(rng, m), c = random_cyclotomic(rng, m);
      CHECK(((a * b) * c) == (a * (b * c)));
      CHECK((a * (b + c)) == (a * b + a * c));
      if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
    }
  }
  for (auto f : {FiniteField::create(7, 1), FiniteField::create(3, 2), FiniteField::create(2, 5),
                 FiniteField::create(5, 3)}) {
    std::uniform_int_distribution<std::uint32_t> d(0, static_cast<std::uint32_t>(f.order() - 1));
    for (int trial = 0; trial < 50; ++trial) {
      auto a = f.from_index(d(rng)), b = f.from_index(d(rng)), c = f.from_index(d(rng));
      CHECK(((a * b) * c) == (a * (b * c)));
      CHECK((a * (b + c)) == (a * b + a * c));
      CHECK(((a - b) + b) == a);
      if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
      if (!a.is_zero()) CHECK((f.order() - 1) % element_order(a) == 0);
    }
  }
}

TEST_CASE("finite field construction") {
  auto f9 = FiniteField::create(3, "g^2+1");
  CHECK(f9.order() == 9);
  CHECK(f9.generator() * f9.generator() == f9.from_int(-1));
  CHECK(f9.parse("g + 2") == f9.generator() - f9.one());
  CHECK(f9.parse("1/2*g") == f9.from_int(2) * f9.generator());
  CHECK(f9 == FiniteField::create(3, 2));  // default modulus is g^2+1
  CHECK_THROWS_AS(FiniteField::create(3, "g^2+2"), Error);  // g^2 - 1 factors
  CHECK_THROWS_AS(FiniteField::create(4, 1), Error);
  CHECK(is_irreducible(2, {1, 1, 1}));
  CHECK(!is_irreducible(2, {1, 0, 1}));
}

TEST_CASE("field embedding and splitting extension") {
  auto f9 = FiniteField::create(3, 2);
  auto big = splitting_extension(f9, 28);
  CHECK(big.order() == 729);
  FieldEmbedding emb(f9, big);
  std::mt19937 rng(3);
  for (std::uint32_t a = 0; a < 9; ++a)
    for (std::uint32_t b = 0; b < 9; ++b) {
      auto x = f9.from_index(a), y = f9.from_index(b);
      CHECK(emb(x * y) == emb(x) * emb(y));
      CHECK(emb(x + y) == emb(x) + emb(y));
    }
  CHECK(splitting_extension(FiniteField::create(7, 1), 6).order() == 7);
  CHECK_THROWS_AS(splitting_extension(f9, 3), Error);
}

TEST_CASE("brauer_lift examples") {
  auto f7 = FiniteField::create(7, 1);
  BrauerLiftContext ctx(f7, 6);
  CHECK(ctx.xi() == f7.from_int(3));
  CHECK(ctx.lift(f7.one()).is_one());
  CHECK(ctx.lift(f7.from_int(3)) == CyclotomicNumber::zeta(6));
  CHECK(ctx.lift(f7.from_int(2)) == CyclotomicNumber::zeta(3));
  CHECK(ctx.lift(f7.from_int(6)) == CyclotomicNumber(1, Rational(-1)));
  CHECK_THROWS_AS(ctx.lift(f7.zero()), Error);
  BrauerLiftContext sub(f7, 2);
  CHECK_THROWS_AS(sub.lift(f7.from_int(3)), Error);
  // Explicit generator choice: xi = 5 permutes the values by a Galois automorphism.
  BrauerLiftContext other(f7, f7.from_int(5));
  CHECK(other.m() == 6);
  CHECK(other.lift(f7.from_int(5)) == CyclotomicNumber::zeta(6));
  CHECK(other.lift(f7.from_int(3)) == CyclotomicNumber::zeta(6, 5));
}

TEST_CASE("brauer_lift is an injective homomorphism on the root group") {
  auto f = FiniteField::create(3, 6);
  BrauerLiftContext ctx(f, 28);
  std::vector<GFElement> roots;
  for (long long j = 0; j < 28; ++j) roots.push_back(ctx.xi().pow(j));
  std::set<std::string> images;
  for (auto& x : roots) {
    images.insert(ctx.lift(x).key());
    for (auto& y : roots) CHECK(ctx.lift(x * y) == ctx.lift(x) * ctx.lift(y));
  }
  CHECK(images.size() == 28);
}
