#include <map>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "invt/group.hpp"

using namespace invt;
using testutil::qmat;
using Q = CyclotomicField;

namespace {

// Classes by brute-force conjugation over every element; sizes sorted.
template <class F>
std::multiset<std::size_t> brute_class_sizes(const Group<F>& g) {
  std::set<std::set<std::string>> classes;
  for (auto& x : g.elements()) {
    std::set<std::string> c;
    for (auto& h : g.elements()) c.insert((h * x * inverse(h)).key());
    classes.insert(c);
  }
  std::multiset<std::size_t> sizes;
  for (auto& c : classes) sizes.insert(c.size());
  return sizes;
}

}  // namespace

TEST_CASE("matrix basics") {
  auto a = qmat({{1, 2}, {3, 4}});
  auto ai = inverse(a);
  CHECK((a * ai).is_identity());
  CHECK(rank(qmat({{1, 2}, {2, 4}})) == 1);
  CHECK_THROWS_AS(inverse(qmat({{1, 2}, {2, 4}})), Error);
  auto k = kernel(qmat({{1, 1, 1}}));
  CHECK(k.dim() == 2);
  // det(xI - A) = x^2 - 5x - 2.
  auto cp = charpoly(a);
  CHECK(cp.size() == 3);
  CHECK(cp[0] == Q().from_int(-2));
  CHECK(cp[1] == Q().from_int(-5));
  CHECK(cp[2].is_one());
  auto b = qmat({{2, 0, 1}, {1, 3, 0}, {0, 1, 4}});
  // Oracle: cofactor expansion det(B) = 2*12 - 0 + 1*1 = 25; charpoly(0) = -det.
  CHECK(charpoly(b)[0] == Q().from_int(-25));
  CHECK(charpoly(b)[2] == Q().from_int(-9));
}

TEST_CASE("generate_group examples") {
  auto minus = Group<Q>::generate(Q(), 2, {qmat({{-1, 0}, {0, -1}})});
  CHECK(minus.order() == 2);
  auto s3 = Group<Q>::generate(Q(), 3, symmetric_generators(Q(), 3));
  long long fact = 1;
  for (int i = 2; i <= 3; ++i) fact *= i;
  CHECK(s3.order() == static_cast<std::size_t>(fact));
  auto triv = Group<Q>::generate(Q(), 2, {});
  CHECK(triv.order() == 1);
  CHECK_THROWS_AS(Group<Q>::generate(Q(), 2, {qmat({{1, 1}, {0, 1}})}, 50), Error);
  CHECK_THROWS_AS(Group<Q>::generate(Q(), 2, {qmat({{1, 1}, {1, 1}})}), Error);
}

TEST_CASE("closure idempotence and class equation") {
  std::vector<Group<Q>> groups{Group<Q>::generate(Q(), 3, symmetric_generators(Q(), 3)),
                               Group<Q>::generate(Q(), 4, symmetric_generators(Q(), 4)),
                               Group<Q>::generate(Q(4), 2, dihedral_generators(Q(4), 4)),
                               Group<Q>::generate(Q(5), 2, dihedral_generators(Q(5), 5))};
  std::vector<std::size_t> orders{6, 24, 8, 10};
  for (std::size_t i = 0; i < groups.size(); ++i) {
    auto& g = groups[i];
    CHECK(g.order() == orders[i]);
    auto again = Group<Q>::generate(g.field(), g.dim(), g.elements());
    CHECK(again.order() == g.order());
    std::size_t total = 0;
    std::multiset<std::size_t> sizes;
    for (auto& c : g.classes()) {
      total += c.members.size();
      CHECK(g.order() % c.members.size() == 0);
      CHECK(c.representative == c.members.front());
      sizes.insert(c.members.size());
    }
    CHECK(total == g.order());
    CHECK(sizes == brute_class_sizes(g));
  }
}

TEST_CASE("conjugacy_classes examples") {
  auto s3 = Group<Q>::generate(Q(), 3, symmetric_generators(Q(), 3));
  std::multiset<std::size_t> sizes;
  for (auto& c : s3.classes()) sizes.insert(c.members.size());
  CHECK(sizes == std::multiset<std::size_t>{1, 2, 3});
  auto z4 = Group<Q>::generate(Q(4), 2, {cyclic_scalar_generator(Q(4), 4, 2)});
  auto cls = z4.classes();
  CHECK(cls.size() == 4);
  for (auto& c : cls) CHECK(c.members.size() == 1);
  auto f3 = FiniteField::create(3, 1);
  auto s3mod = Group<FiniteField>::generate(f3, 3, symmetric_generators(f3, 3));
  int regular = 0;
  for (auto& c : s3mod.classes()) regular += c.p_regular;
  CHECK(regular == 2);  // identity and transpositions; 3-cycles are 3-singular
}

TEST_CASE("eigenvalues") {
  CharacterContext<Q> ctx{Q()};
  auto ev = ctx.eigenvalues(Matrix<Q>::identity(Q(), 3), 1);
  CHECK(ev.size() == 3);
  for (auto& e : ev) CHECK(e.is_one());
  auto sw = qmat({{0, 1}, {1, 0}});
  auto ev2 = ctx.eigenvalues(sw, 2);
  REQUIRE(ev2.size() == 2);
  CHECK(ev2[0].is_one());
  CHECK(ev2[1] == CyclotomicNumber(1, Rational(-1)));

  // Eigenvalue product equals det and the multiset is a class function.
  auto d4 = Group<Q>::generate(Q(4), 2, dihedral_generators(Q(4), 4));
  for (std::size_t i = 0; i < d4.order(); ++i) {
    auto& g = d4.element(static_cast<int>(i));
    auto ord = d4.element_order(static_cast<int>(i));
    auto ev = ctx.eigenvalues(g, ord);
    CyclotomicNumber prod = CyclotomicNumber::one(1);
    for (auto& e : ev) prod *= e;
    CHECK(prod == g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0));
    auto conj = d4.element(1) * g * inverse(d4.element(1));
    auto ev3 = ctx.eigenvalues(conj, ord);
    CHECK(ev3 == ev);
  }

  // Modular: S_3 permutation matrices over GF(7); 3-cycle has eigenvalues 1, w, w^2.
  auto f7 = FiniteField::create(7, 1);
  auto s3 = Group<FiniteField>::generate(f7, 3, symmetric_generators(f7, 3));
  CharacterContext<FiniteField> mctx(f7, lift_order_for(s3));
  for (auto& c : s3.classes()) {
    auto ev = mctx.eigenvalues(s3.element(c.representative), c.order);
    CyclotomicNumber sum(1);
    for (auto& e : ev) sum += e;
    auto tr = s3.element(c.representative).trace();
    // Permutation character: number of fixed points, identical in both characteristics.
    CHECK(sum == CyclotomicNumber(1, Rational(static_cast<long>(tr.index()))));
  }
}

TEST_CASE("find_regular_certificate") {
  auto minus = Group<Q>::generate(Q(), 2, {qmat({{-1, 0}, {0, -1}})});
  auto cert = find_regular_certificate(minus, 1, Q().from_int(-1));
  CHECK(cert.orbit_size == 2);
  auto s2 = Group<Q>::generate(Q(), 2, {qmat({{0, 1}, {1, 0}})});
  auto c2 = find_regular_certificate(s2, 1, Q().from_int(-1));
  CHECK(s2.element(1).apply(c2.vector) == Vec<Q>{-c2.vector[0], -c2.vector[1]});
  CHECK(c2.vector[0] == -c2.vector[1]);
  CHECK(c2.orbit_size == 2);
  auto c3 = find_regular_certificate(s2, 0, Q().one());
  CHECK(has_trivial_stabilizer(s2, c3.vector));
  CHECK(!(c3.vector[0] == c3.vector[1]));
  // A reflection's fixed line is pointwise fixed by the whole group.
  auto refl = Group<Q>::generate(Q(), 2, {qmat({{-1, 0}, {0, 1}})});
  CHECK_THROWS_AS(find_regular_certificate(refl, 1, Q().one()), Error);
  // Over GF(3): -1 acting on one coordinate.
  auto f3 = FiniteField::create(3, 1);
  auto pm = Group<FiniteField>::generate(f3, 1, {testutil::gfmat(f3, {{2}})});
  auto c4 = find_regular_certificate(pm, 1, f3.from_int(-1));
  CHECK(!c4.by_search);
  CHECK(c4.orbit_size == 2);
}

TEST_CASE("coset_fixed_points") {
  auto c4 = Group<Q>::generate(Q(4), 1, {cyclic_scalar_generator(Q(4), 4, 1)});
  int c = c4.generator_indices()[0];
  CosetSpace<Q> whole(c4, c4.subgroup_indices({c}));
  CHECK(whole.size() == 1);
  CHECK(whole.fixed_points(c, 3) == 1);
  CosetSpace<Q> x(c4, c4.subgroup_indices({c4.mul(c, c)}));
  CHECK(x.size() == 2);
  CHECK(x.fixed_points(c, 1) == 0);
  CHECK(x.fixed_points(c, 2) == 2);
  auto s2 = Group<Q>::generate(Q(), 2, {qmat({{0, 1}, {1, 0}})});
  CosetSpace<Q> y(s2, {0});
  CHECK(y.fixed_points(1, 1) == 0);
  // Left normalizer action and right c-action commute.
  auto s3 = Group<Q>::generate(Q(), 3, symmetric_generators(Q(), 3));
  CosetSpace<Q> z(s3, s3.subgroup_indices({1}));
  for (int gamma = 0; gamma < static_cast<int>(s3.order()); ++gamma) {
    if (!z.normalizes(gamma)) continue;
    for (int cc = 0; cc < static_cast<int>(s3.order()); ++cc)
      for (int k = 0; k < static_cast<int>(z.size()); ++k) CHECK(z.left(gamma, z.right(k, cc)) == z.right(z.left(gamma, k), cc));
  }
}
