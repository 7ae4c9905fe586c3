// Builds data/g168.json: a unitary reflection group of order 336 in GL_3(GF(9)), its
// subgroup of order 168 generated by the negated reflections, and basic invariants.
#include <fstream>
#include <iostream>

#include "invt/homology.hpp"
#include "json.hpp"

using namespace invt;
using F = FiniteField;
using Json = nlohmann::ordered_json;

namespace {

GFElement conj(const GFElement& x) { return x.pow(3); }

Json matrix_json(const Matrix<F>& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows; ++i) {
    Json r = Json::array();
    for (int j = 0; j < m.cols; ++j) r.push_back(m(i, j).to_string());
    rows.push_back(r);
  }
  return rows;
}

Json poly_json(const PolyRing<F>& ring, int d, const Vec<F>& p) {
  Json terms = Json::array();
  for (int i = 0; i < ring.size(d); ++i)
    if (!p[i].is_zero()) terms.push_back(Json::array({p[i].to_string(), ring.exps(d, i)}));
  return terms;
}

}  // namespace

int main(int argc, char** argv) {
  std::string out_path = argc > 1 ? argv[1] : "data/g168.json";
  auto k = F::create(3, "g^2+1");
  // Nonisotropic points of P^2 for the form sum x_i conj(y_i), first nonzero coordinate 1.
  std::vector<Vec<F>> roots;
  for (std::uint32_t a = 0; a < 9; ++a)
    for (std::uint32_t b = 0; b < 9; ++b)
      for (std::uint32_t c = 0; c < 9; ++c) {
        Vec<F> v{k.from_index(a), k.from_index(b), k.from_index(c)};
        auto lead = std::find_if(v.begin(), v.end(), [](auto& x) { return !x.is_zero(); });
        if (lead == v.end() || !lead->is_one()) continue;
        auto n = k.zero();
        for (auto& x : v) n += x * conj(x);
        if (!n.is_zero()) roots.push_back(v);
      }
  auto reflection = [&](const Vec<F>& v) {
    auto n = k.zero();
    for (auto& x : v) n += x * conj(x);
    auto m = Matrix<F>::identity(k, 3);
    // x - 2 (x,v)/(v,v) v, and -2 = 1 in characteristic 3.
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) += v[i] * conj(v[j]) / n;
    return m;
  };
  std::cerr << roots.size() << " nonisotropic points\n";
  auto r1 = reflection(roots[0]);
  for (std::size_t i = 1; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      std::vector<Matrix<F>> gens{r1, reflection(roots[i]), reflection(roots[j])};
      Group<F> g24;
      try {
        g24 = Group<F>::generate(k, 3, gens, 337);
      } catch (const Error&) {
        continue;
      }
      if (g24.order() != 336) continue;
      std::vector<Matrix<F>> neg;
      for (auto& r : gens) neg.push_back(Matrix<F>::scalar(k, 3, -k.one()) * r);
      auto G = Group<F>::generate(k, 3, neg);
      if (G.order() != 168) continue;
      std::cerr << "reflections from points 0, " << i << ", " << j << "\n";
      int D = 21;
      PolyRing<F> ring(k, 3, D);
      auto inv = invariants_up_to(ring, g24, 14);
      auto R = GradedAlgebraR<F>::by_degrees(ring, inv);
      Json f = Json::object();
      for (auto& gen : R.algebra_generators()) f["f" + std::to_string(gen.degree)] = poly_json(ring, gen.degree, gen.poly);
      std::vector<Matrix<F>> det(gens.size(), Matrix<F>::scalar(k, 1, -k.one()));
      auto rel = relative_invariants_up_to(ring, g24, det, D);
      if (rel.dim(21) != 1) {
        std::cerr << "unexpected det-relative invariants in degree 21\n";
        return 1;
      }
      f["f21"] = poly_json(ring, 21, rel.parts[21].basis[0]);
      Json gj = Json::array(), rj = Json::array();
      for (auto& m : neg) gj.push_back(matrix_json(m));
      for (auto& m : gens) rj.push_back(matrix_json(m));
      Json doc{{"schema", 1},
               {"description", "order-168 subgroup of a unitary reflection group of order 336 over GF(9)"},
               {"field", {{"p", 3}, {"modulus", "g^2+1"}}},
               {"reflections", rj},
               {"generators", gj},
               {"invariants", f}};
      std::ofstream(out_path) << doc.dump(2) << "\n";
      return 0;
    }
  std::cerr << "no triple found\n";
  return 1;
}
