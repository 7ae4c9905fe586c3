#include "doctest.h"
#include "helpers.hpp"
#include "invt/homology.hpp"
#include "invt/molien.hpp"

using namespace invt;
using testutil::qmat;
using Q = CyclotomicField;

namespace {

CyclotomicNumber q(long n) { return CyclotomicNumber(1, Rational(n)); }

Vec<Q> poly(const PolyRing<Q>& ring, std::vector<std::pair<long, std::vector<int>>> terms, int& deg) {
  std::vector<std::pair<CyclotomicNumber, std::vector<int>>> t;
  for (auto& [c, e] : terms) t.push_back({q(c), e});
  return ring.from_terms(t, deg);
}

GradedAlgebraR<Q>::Poly make(const PolyRing<Q>& ring, std::vector<std::pair<long, std::vector<int>>> terms) {
  int d = 0;
  auto v = poly(ring, terms, d);
  return {d, v};
}

/// Graded piece of k[x,y] spanned by monomials passing the filter.
template <class Keep>
GradedSpace<Q> monomial_module(const PolyRing<Q>& ring, int D, Keep keep) {
  GradedSpace<Q> m;
  for (int d = 0; d <= D; ++d) {
    std::vector<Vec<Q>> vs;
    for (int i = 0; i < ring.size(d); ++i)
      if (keep(ring.exps(d, i))) {
        Vec<Q> v(ring.size(d), q(0));
        v[i] = q(1);
        vs.push_back(v);
      }
    m.parts.push_back(Subspace<Q>::span(Q(), ring.size(d), vs));
  }
  return m;
}

template <class F>
void check_resolution_invariants(const TruncatedResolution<F>& res, const GradedAlgebraR<F>& R) {
  for (int i = 0; i + 1 < res.length(); ++i) {
    CHECK(res.min_degree(i + 1) > res.min_degree(i));
    for (int d = 0; d <= res.D; ++d) {
      const auto& a = res.differential[i][d];
      const auto& b = res.differential[i + 1][d];
      if (a.cols == 0 || b.cols == 0) continue;
      auto ab = a * b;
      CHECK(std::all_of(ab.a.begin(), ab.a.end(), [](const auto& x) { return x.is_zero(); }));
      // Exactness at F_i: ker d_i = im d_{i+1}.
      CHECK(a.cols - rank(a) == rank(b));
    }
  }
  // Minimality: no entry of d_i lies in R_0, i.e. the entry between two generators of the
  // same degree d vanishes.
  for (int i = 1; i < res.length(); ++i)
    for (int d = 0; d <= res.D; ++d) {
      int rows = 0, cols = 0;
      auto ro = detail::free_offsets(R, res.generator_degrees[i - 1], d, rows);
      auto co = detail::free_offsets(R, res.generator_degrees[i], d, cols);
      for (std::size_t g = 0; g < ro.size(); ++g)
        for (std::size_t h = 0; h < co.size(); ++h)
          if (res.generator_degrees[i - 1][g] == d && res.generator_degrees[i][h] == d)
            CHECK(res.differential[i][d](ro[g], co[h]).is_zero());
    }
  // Shift property.
  for (auto& [ij, v] : res.tor.dims) CHECK(ij.second >= ij.first);
}

struct Hypersurface {
  static constexpr int D = 13;
  Q f;
  PolyRing<Q> ring{f, 2, D};
  Group<Q> G = Group<Q>::generate(f, 2, {qmat({{-1, 0}, {0, -1}})});
  GradedAlgebraR<Q> R = GradedAlgebraR<Q>::by_degrees(ring, invariants_up_to(ring, G, D));
  GradedSpace<Q> minus = relative_invariants_up_to(ring, G, {qmat({{-1}})}, D);
  GradedSpace<Q> plus = relative_invariants_up_to(ring, G, {qmat({{1}})}, D);
};

}  // namespace

TEST_CASE("graded subalgebra generators") {
  Hypersurface ex;
  CHECK(ex.R.dim(2) == 3);
  CHECK(ex.R.dim(3) == 0);
  REQUIRE(ex.R.algebra_generators().size() == 3);
  for (auto& g : ex.R.algebra_generators()) CHECK(g.degree == 2);
  CHECK_FALSE(ex.R.is_polynomial());

  PolyRing<Q> ring(Q(), 2, 6);
  auto R = GradedAlgebraR<Q>::polynomial(ring, {make(ring, {{1, {1, 0}}, {1, {0, 1}}}), make(ring, {{1, {1, 1}}})}, 6);
  CHECK(R.is_polynomial());
  CHECK(R.normalization_degrees() == std::vector<int>{1, 2});
  for (int d = 0; d <= 6; ++d) CHECK(R.dim(d) == d / 2 + 1);
  // x^2 and y^2 with x^2 + y^2 are dependent.
  CHECK_THROWS_AS(GradedAlgebraR<Q>::polynomial(
                      ring, {make(ring, {{1, {2, 0}}}), make(ring, {{1, {0, 2}}}), make(ring, {{1, {2, 0}}, {1, {0, 2}}})}, 6),
                  Error);
}

TEST_CASE("minimal_generators examples") {
  Hypersurface ex;
  auto gR = minimal_generators(ex.R, ex.R.parts(), 8);
  CHECK(gR[0].size() == 1);
  for (int d = 1; d <= 8; ++d) CHECK(gR[d].empty());

  auto gm = minimal_generators(ex.R, ex.minus, 8);
  CHECK(gm[1].size() == 2);
  for (int d = 0; d <= 8; ++d)
    if (d != 1) CHECK(gm[d].empty());

  PolyRing<Q> ring(Q(), 2, 8);
  auto S2 = Group<Q>::generate(Q(), 2, {qmat({{0, 1}, {1, 0}})});
  auto R = GradedAlgebraR<Q>::by_degrees(ring, invariants_up_to(ring, S2, 8));
  auto all = monomial_module(ring, 8, [](auto&) { return true; });
  auto g = minimal_generators(R, all, 8);
  CHECK(g[0].size() == 1);
  CHECK(g[1].size() == 1);
  for (int d = 2; d <= 8; ++d) CHECK(g[d].empty());

  // x^2 k[x,y] is not closed under y.
  auto bad = monomial_module(ring, 8, [](auto& e) { return e[0] >= 2 && e[1] == 0; });
  auto full = GradedAlgebraR<Q>::by_degrees(ring, monomial_module(ring, 8, [](auto&) { return true; }));
  CHECK_THROWS_AS(minimal_generators(full, bad, 8), Error);
}

TEST_CASE("hypersurface odd module Betti numbers") {
  Hypersurface ex;
  auto res = truncated_minimal_resolution(ex.R, ex.minus, Hypersurface::D);
  for (int i = 0; i <= 7; ++i)
    for (int j = 0; j <= Hypersurface::D; ++j) {
      CAPTURE(i);
      CAPTURE(j);
      CHECK(res.tor.beta(i, j) == (j == 2 * i + 1 ? 2 : 0));
    }
  CHECK(res.tor.max_index() == 6);
  CHECK_FALSE(res.tor.hd.bounded);
  check_resolution_invariants(res, ex.R);
  CHECK(res.tor.betti_table() ==
        "       0 1 2 3 4 5 6\n"
        "total: 2 2 2 2 2 2 2\n"
        "    1: 2 . . . . . .\n"
        "    2: . 2 . . . . .\n"
        "    3: . . 2 . . . .\n"
        "    4: . . . 2 . . .\n"
        "    5: . . . . 2 . .\n"
        "    6: . . . . . 2 .\n"
        "    7: . . . . . . 2\n");

  auto series = res.tor.euler_series();
  CHECK(series == euler_dimension_series(ex.R, ex.minus, Hypersurface::D));
  auto closed = rational_reconstruct(series);
  REQUIRE(closed);
  CHECK(*closed == RationalFunction(cpoly::from_ints({0, 2}), cpoly::from_ints({1, 0, 1})));
  CHECK(closed->evaluate(q(1)) == q(1));

  auto plus = truncated_minimal_resolution(ex.R, ex.plus, Hypersurface::D);
  CHECK(plus.tor.dims.size() == 1);
  CHECK(plus.tor.beta(0, 0) == 1);
  CHECK(plus.tor.hd.bounded);
  CHECK(plus.tor.hd.value == 0);
}

TEST_CASE("equivariant hypersurface odd module") {
  Hypersurface ex;
  // C of order 2 acting by -1 on V and trivially on U.
  auto theta = Group<Q>::generate(Q(), 3, {qmat({{-1, 0, 0}, {0, -1, 0}, {0, 0, 1}})});
  CharacterContext<Q> ctx{Q()};
  auto eq = split_blocks(theta, 2, 1, ctx);
  REQUIRE(eq.classes() == 2);
  CHECK(eq.class_labels == std::vector<std::string>{"1a", "2a"});
  auto res = truncated_minimal_resolution(ex.R, ex.minus, Hypersurface::D, &eq);
  for (int i = 0; i <= 6; ++i) {
    auto& chi = res.tor.characters.at({i, 2 * i + 1});
    CHECK(chi[0] == q(2));
    CHECK(chi[1] == q(-2));
  }
  auto classwise = euler_character_series(ex.R, ex.minus, eq, Hypersurface::D);
  for (std::size_t c = 0; c < 2; ++c) CHECK(res.tor.euler_character_series(c) == classwise[c]);
  auto x = rational_reconstruct(classwise[1]);
  REQUIRE(x);
  CHECK(*x == RationalFunction(cpoly::from_ints({0, -2}), cpoly::from_ints({1, 0, 1})));
}

TEST_CASE("koszul_tor examples") {
  const int D = 10;
  PolyRing<Q> ring(Q(), 2, D);
  auto R = GradedAlgebraR<Q>::polynomial(ring, {make(ring, {{1, {2, 0}}}), make(ring, {{1, {0, 2}}})}, D);

  auto tr = koszul_tor(R, R.parts(), D);
  CHECK(tr.dims.size() == 1);
  CHECK(tr.beta(0, 0) == 1);
  CHECK(tr.hd.bounded);

  auto odd = monomial_module(ring, D, [](auto& e) { return (e[0] + e[1]) % 2 == 1; });
  auto t = koszul_tor(R, odd, D);
  CHECK(t.dims.size() == 1);
  CHECK(t.beta(0, 1) == 2);
  CHECK(t.hd.bounded);
  CHECK(t.hd.value == 0);

  // The maximal ideal of k[x,y] over k[x,y]: Tor_0 = 2 in degree 1, Tor_1 = 1 in degree 2.
  auto lin = GradedAlgebraR<Q>::polynomial(ring, {make(ring, {{1, {1, 0}}}), make(ring, {{1, {0, 1}}})}, D);
  auto mideal = monomial_module(ring, D, [](auto& e) { return e[0] + e[1] >= 1; });
  auto tm = koszul_tor(lin, mideal, D);
  CHECK(tm.beta(0, 1) == 2);
  CHECK(tm.beta(1, 2) == 1);
  CHECK(tm.dims.size() == 2);
  CHECK(tm.hd.value == 1);

  // The Koszul engine refuses non-polynomial R.
  Hypersurface ex;
  CHECK_THROWS_AS(koszul_tor(ex.R, ex.minus, 6), Error);
}

TEST_CASE("Tor engines agree") {
  const int D = 12;
  PolyRing<Q> ring(Q(), 2, D);
  auto x2y2 = GradedAlgebraR<Q>::polynomial(ring, {make(ring, {{1, {2, 0}}}), make(ring, {{1, {0, 2}}})}, D);
  auto e1e2 = GradedAlgebraR<Q>::polynomial(ring, {make(ring, {{1, {1, 0}}, {1, {0, 1}}}), make(ring, {{1, {1, 1}}})}, D);
  auto lin = GradedAlgebraR<Q>::polynomial(ring, {make(ring, {{1, {1, 0}}}), make(ring, {{1, {0, 1}}})}, D);
  auto xy = GradedAlgebraR<Q>::polynomial(ring, {make(ring, {{1, {1, 0}}}), make(ring, {{1, {0, 2}}})}, D);

  struct Case {
    const GradedAlgebraR<Q>* R;
    GradedSpace<Q> M;
    const char* name;
  };
  std::vector<Case> cases{
      {&x2y2, monomial_module(ring, D, [](auto&) { return true; }), "k[x,y] over x2,y2"},
      {&e1e2, monomial_module(ring, D, [](auto&) { return true; }), "k[x,y] over e1,e2"},
      {&lin, monomial_module(ring, D, [](auto& e) { return e[0] + e[1] >= 1; }), "maximal ideal"},
      {&lin, monomial_module(ring, D, [](auto& e) { return e[0] + e[1] >= 3; }), "cube of the maximal ideal"},
      {&lin, monomial_module(ring, D, [](auto& e) { return e[0] >= 2 || e[1] >= 3; }), "(x^2, y^3)"},
      {&xy, monomial_module(ring, D, [](auto& e) { return e[0] >= 1 || e[1] >= 1; }), "m over x,y^2"},
      {&x2y2, monomial_module(ring, D, [](auto& e) { return e[0] >= 1 && e[1] >= 1; }), "xy k[x,y] over x2,y2"},
  };
  for (auto& c : cases) {
    CAPTURE(c.name);
    auto koszul = koszul_tor(*c.R, c.M, D);
    auto syz = truncated_minimal_resolution(*c.R, c.M, D);
    CHECK(koszul.dims == syz.tor.dims);
    CHECK(koszul.euler_series() == euler_dimension_series(*c.R, c.M, D));
    check_resolution_invariants(syz, *c.R);
  }
}

TEST_CASE("equivariant Koszul characters") {
  const int D = 10;
  Q f;
  PolyRing<Q> ring(f, 2, D);
  auto R = GradedAlgebraR<Q>::polynomial(ring, {make(ring, {{1, {1, 0}}, {1, {0, 1}}}), make(ring, {{1, {1, 1}}})}, D);
  auto M = monomial_module(ring, D, [](auto&) { return true; });
  // C acts on V by -I (the transposition's eigenvalue -1 inverted), trivially on U.
  auto theta = Group<Q>::generate(f, 3, {qmat({{-1, 0, 0}, {0, -1, 0}, {0, 0, 1}})});
  CharacterContext<Q> ctx{f};
  auto eq = split_blocks(theta, 2, 1, ctx);
  auto k = koszul_tor(R, M, D, &eq);
  auto s = truncated_minimal_resolution(R, M, D, &eq);
  CHECK(k.characters == s.tor.characters);
  auto classwise = euler_character_series(R, M, eq, D);
  for (std::size_t c = 0; c < eq.classes(); ++c) {
    CHECK(k.euler_character_series(c) == classwise[c]);
    auto chi = eq.class_orders[c] == 1 ? 1 : -1;
    CHECK(classwise[c] == TruncatedSeries::from_ints({1, chi}, D));
  }
}

TEST_CASE("Koszul characters in characteristic 3") {
  const int D = 8;
  auto k = FiniteField::create(3, 1);
  PolyRing<FiniteField> ring(k, 1, D);
  int d = 0;
  auto x2 = ring.from_terms({{k.one(), {2}}}, d);
  auto R = GradedAlgebraR<FiniteField>::polynomial(ring, {{2, x2}}, D);
  GradedSpace<FiniteField> M;
  for (int e = 0; e <= D; ++e) M.parts.push_back(Subspace<FiniteField>::whole(k, 1));
  auto theta = Group<FiniteField>::generate(k, 2, {testutil::gfmat(k, {{-1, 0}, {0, 1}})});
  CharacterContext<FiniteField> ctx(k, lift_order_for(theta));
  auto eq = split_blocks(theta, 1, 1, ctx);
  auto tor = koszul_tor(R, M, D, &eq);
  CHECK(tor.beta(0, 0) == 1);
  CHECK(tor.beta(0, 1) == 1);
  CHECK(tor.dims.size() == 2);
  auto classwise = euler_character_series(R, M, eq, D);
  for (std::size_t c = 0; c < eq.classes(); ++c) CHECK(tor.euler_character_series(c) == classwise[c]);
  CHECK(tor.characters.at({0, 1})[1] == q(-1));
}

TEST_CASE("non-stable actions are refused") {
  const int D = 6;
  Q f;
  PolyRing<Q> ring(f, 2, D);
  auto R = GradedAlgebraR<Q>::polynomial(ring, {make(ring, {{1, {2, 0}}}), make(ring, {{1, {0, 2}}})}, D);
  auto M = R.parts();
  auto theta = Group<Q>::generate(f, 3, {qmat({{0, -1, 0}, {1, 0, 0}, {0, 0, 1}})});
  CharacterContext<Q> ctx{f};
  auto eq = split_blocks(theta, 2, 1, ctx);
  // Rotation by 90 degrees swaps x^2 and y^2 rather than scaling them.
  CHECK_THROWS_AS(koszul_tor(R, M, D, &eq), Error);
}

TEST_CASE("hd and alternating partial sums") {
  // Even partial sums of X's expansion at t = 1 exceed or equal the limit, with equality
  // exactly when hd <= m.
  Hypersurface ex;
  auto res = truncated_minimal_resolution(ex.R, ex.minus, Hypersurface::D);
  long long partial = 0;
  for (int m = 0; m <= 5; ++m) {
    for (auto& [ij, v] : res.tor.dims)
      if (ij.first == m) partial += m % 2 ? -v : v;
    if (m % 2 == 0) {
      CHECK(partial == 2);
      CHECK(partial > 1);
    } else {
      CHECK(partial == 0);
      CHECK(partial < 1);
    }
  }
  auto plus = truncated_minimal_resolution(ex.R, ex.plus, Hypersurface::D);
  CHECK(plus.tor.beta(0, 0) == 1);
  CHECK(plus.tor.hd.text() == "hd = 0 (certified through degree 13)");
  CHECK(res.tor.hd.text() == "hd >= 6 observed (truncated at degree 13)");
}
