#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "invt/error.hpp"
#include "invt/finite_field.hpp"
#include "invt/group.hpp"
#include "invt/matrix.hpp"
#include "invt/parallel.hpp"

namespace invt {

/// Monomials x^e of k[x_1..x_n] in degrees 0..D, graded-lex within each degree
/// (x_1^d first). Action convention: (g.f)(w) = f(g^{-1} w).
template <class F>
class PolyRing {
 public:
  using E = typename F::Element;
  using Exps = std::vector<int>;

  PolyRing(const F& field, int n, int D) : field_(field), n_(n), D_(D), basis_(D + 1) {
    require(n >= 1 && D >= 0, ErrorCode::Precondition, "polynomial ring needs n >= 1 and D >= 0");
    long double range = 1;
    for (int i = 0; i < n; ++i) range *= D + 1;
    require(range < 1.8e19L, ErrorCode::TooLarge, "monomial encoding overflows");
    for (int d = 0; d <= D; ++d) {
      Exps e(n, 0);
      fill(d, 0, e, basis_[d]);
      for (std::size_t i = 0; i < basis_[d].size(); ++i) index_.emplace(encode(basis_[d][i]), static_cast<int>(i));
    }
  }

  const F& field() const { return field_; }
  int nvars() const { return n_; }
  int max_degree() const { return D_; }
  int size(int d) const { return d < 0 || d > D_ ? 0 : static_cast<int>(basis_[d].size()); }
  const Exps& exps(int d, int i) const { return basis_[d][i]; }
  int index(const Exps& e) const {
    auto it = index_.find(encode(e));
    require(it != index_.end(), ErrorCode::Precondition, "monomial outside the truncation");
    return it->second;
  }
  int product_index(int da, int ia, int db, int ib) const {
    const auto &a = basis_[da][ia], &b = basis_[db][ib];
    std::uint64_t k = 0, m = 1;
    for (int i = 0; i < n_; ++i, m *= D_ + 1) k += std::uint64_t(a[i] + b[i]) * m;
    return index_.at(k);
  }

  /// Product of homogeneous polynomials given as dense coordinate vectors.
  Vec<F> multiply(int da, const Vec<F>& a, int db, const Vec<F>& b) const {
    require(da + db <= D_, ErrorCode::TruncationTooSmall, "product exceeds the truncation degree");
    Vec<F> r(size(da + db), field_.zero());
    for (int i = 0; i < size(da); ++i) {
      if (a[i].is_zero()) continue;
      for (int j = 0; j < size(db); ++j)
        if (!b[j].is_zero()) r[product_index(da, i, db, j)] += a[i] * b[j];
    }
    return r;
  }
  /// (U tensor k[V]_da) times a polynomial of degree db; u blocks of monomial coordinates.
  Vec<F> multiply_tensor(int u, int da, const Vec<F>& a, int db, const Vec<F>& b) const {
    require(da + db <= D_, ErrorCode::TruncationTooSmall, "product exceeds the truncation degree");
    int na = size(da), nr = size(da + db);
    Vec<F> r(std::size_t(u) * nr, field_.zero());
    for (int k = 0; k < u; ++k)
      for (int i = 0; i < na; ++i) {
        const auto& x = a[std::size_t(k) * na + i];
        if (x.is_zero()) continue;
        for (int j = 0; j < size(db); ++j)
          if (!b[j].is_zero()) r[std::size_t(k) * nr + product_index(da, i, db, j)] += x * b[j];
      }
    return r;
  }

  /// Matrices of f -> f o g^{-1} on degrees 0..D, built by multiplying in one linear form at a time.
  std::vector<Matrix<F>> action_matrices(const Matrix<F>& g, int D) const {
    auto ginv = inverse(g);
    std::vector<Matrix<F>> out;
    out.push_back(Matrix<F>::identity(field_, 1));
    std::vector<Vec<F>> forms(n_, Vec<F>(n_, field_.zero()));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) forms[i][j] = ginv(i, j);
    for (int d = 1; d <= D; ++d) {
      Matrix<F> m(field_, size(d), size(d));
      for (int c = 0; c < size(d); ++c) {
        Exps e = basis_[d][c];
        int k = 0;
        while (e[k] == 0) ++k;
        --e[k];
        auto prev = out[d - 1].col(index(e));
        auto img = multiply(d - 1, prev, 1, forms[k]);
        for (int r = 0; r < size(d); ++r) m(r, c) = img[r];
      }
      out.push_back(std::move(m));
    }
    return out;
  }
  Matrix<F> action_matrix(const Matrix<F>& g, int d) const { return action_matrices(g, d)[d]; }

  /// Dense vector of a homogeneous polynomial from sparse (coefficient, exponent) terms.
  Vec<F> from_terms(const std::vector<std::pair<E, Exps>>& terms, int& degree) const {
    require(!terms.empty(), ErrorCode::Parse, "empty polynomial");
    degree = -1;
    for (auto& [c, e] : terms) {
      require(static_cast<int>(e.size()) == n_, ErrorCode::Parse, "exponent vector has the wrong length");
      int d = 0;
      for (int x : e) {
        require(x >= 0, ErrorCode::Parse, "negative exponent");
        d += x;
      }
      require(degree < 0 || d == degree, ErrorCode::Parse, "polynomial is not homogeneous");
      degree = d;
    }
    require(degree <= D_, ErrorCode::TruncationTooSmall, "polynomial degree exceeds the truncation");
    Vec<F> v(size(degree), field_.zero());
    for (auto& [c, e] : terms) v[index(e)] += c;
    return v;
  }
  E evaluate(int d, const Vec<F>& f, const Vec<F>& point) const {
    E s = field_.zero();
    for (int i = 0; i < size(d); ++i) {
      if (f[i].is_zero()) continue;
      E t = f[i];
      for (int k = 0; k < n_; ++k)
        if (basis_[d][i][k]) t *= point[k].pow(basis_[d][i][k]);
      s += t;
    }
    return s;
  }
  std::string monomial_string(int d, int i) const {
    const auto& e = basis_[d][i];
    std::string s;
    for (int k = 0; k < n_; ++k) {
      if (!e[k]) continue;
      if (!s.empty()) s += "*";
      s += "x" + std::to_string(k + 1);
      if (e[k] > 1) s += "^" + std::to_string(e[k]);
    }
    return s.empty() ? "1" : s;
  }
  std::string poly_string(int d, const Vec<F>& f) const {
    std::string s;
    for (int i = 0; i < size(d); ++i) {
      if (f[i].is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += f[i].is_one() ? monomial_string(d, i) : "(" + f[i].to_string() + ")*" + monomial_string(d, i);
    }
    return s.empty() ? "0" : s;
  }

 private:
  void fill(int left, int k, Exps& e, std::vector<Exps>& out) const {
    if (k == n_ - 1) {
      e[k] = left;
      out.push_back(e);
      return;
    }
    for (int a = left; a >= 0; --a) {
      e[k] = a;
      fill(left - a, k + 1, e, out);
    }
    e[k] = 0;
  }
  std::uint64_t encode(const Exps& e) const {
    std::uint64_t k = 0, m = 1;
    for (int i = 0; i < n_; ++i, m *= D_ + 1) k += std::uint64_t(e[i]) * m;
    return k;
  }

  F field_;
  int n_, D_;
  std::vector<std::vector<Exps>> basis_;
  std::unordered_map<std::uint64_t, int> index_;
};

/// Per-degree subspaces of U tensor k[V]_d (u = dim U; u = 1 for plain polynomials).
template <class F>
struct GradedSpace {
  int u = 1;
  std::vector<Subspace<F>> parts;

  int max_degree() const { return static_cast<int>(parts.size()) - 1; }
  int dim(int d) const { return d < 0 || d > max_degree() ? 0 : parts[d].dim(); }
  std::vector<long long> dims() const {
    std::vector<long long> r;
    for (auto& p : parts) r.push_back(p.dim());
    return r;
  }
};

/// Per-degree action of a linear map on U tensor k[V]: kron(on_U, action on k[V]_d).
template <class F>
struct TensorAction {
  Matrix<F> on_u;
  std::vector<Matrix<F>> on_poly;  // degrees 0..D
  Matrix<F> at(int d) const { return kron(on_u, on_poly[d]); }
};

template <class F>
std::vector<TensorAction<F>> tensor_actions(const PolyRing<F>& ring, const std::vector<Matrix<F>>& on_v,
                                            const std::vector<Matrix<F>>& on_u, int D) {
  std::vector<TensorAction<F>> out;
  for (std::size_t i = 0; i < on_v.size(); ++i) out.push_back({on_u[i], ring.action_matrices(on_v[i], D)});
  return out;
}

/// Common fixed space of the given actions in every degree <= D; plain kernel linear
/// algebra, valid in every characteristic. jobs > 1 splits degrees across threads.
template <class F>
GradedSpace<F> fixed_space(const PolyRing<F>& ring, const std::vector<TensorAction<F>>& acts, int u, int D,
                           int jobs = 1) {
  GradedSpace<F> out;
  out.u = u;
  out.parts.resize(D + 1);
  auto one_degree = [&](int d) {
    int N = u * ring.size(d);
    if (acts.empty()) {
      out.parts[d] = Subspace<F>::whole(ring.field(), N);
      return;
    }
    Matrix<F> stacked(ring.field(), N * static_cast<int>(acts.size()), N);
    for (std::size_t k = 0; k < acts.size(); ++k) {
      auto m = acts[k].at(d);
      for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) stacked(static_cast<int>(k) * N + i, j) = m(i, j);
        stacked(static_cast<int>(k) * N + i, i) -= ring.field().one();
      }
    }
    out.parts[d] = kernel(std::move(stacked));
  };
  parallel_for(D + 1, jobs, one_degree);
  return out;
}

template <class F>
GradedSpace<F> invariants_up_to(const PolyRing<F>& ring, const Group<F>& G, int D, int jobs = 1) {
  std::vector<Matrix<F>> ones(G.generators().size(), Matrix<F>::identity(ring.field(), 1));
  return fixed_space(ring, tensor_actions(ring, G.generators(), ones, D), 1, D, jobs);
}

/// (U tensor k[V])^G with U a left G-module given by one matrix per generator.
template <class F>
GradedSpace<F> relative_invariants_up_to(const PolyRing<F>& ring, const Group<F>& G,
                                         const std::vector<Matrix<F>>& rho_gens, int D, int jobs = 1) {
  int u = rho_gens.empty() ? 1 : rho_gens[0].rows;
  extend_representation(G, rho_gens, ring.field(), u);
  return fixed_space(ring, tensor_actions(ring, G.generators(), rho_gens, D), u, D, jobs);
}

/// dim of k[V]_d / (positive-degree invariants)_d.
template <class F>
std::vector<long long> coinvariant_dims(const PolyRing<F>& ring, const GradedSpace<F>& inv, int D) {
  std::vector<long long> out;
  for (int d = 0; d <= D; ++d) {
    std::vector<Vec<F>> span;
    for (int e = 1; e <= d; ++e)
      for (auto& f : inv.parts[e].basis)
        for (int h = 0; h < ring.size(d - e); ++h) {
          Vec<F> mono(ring.size(d - e), ring.field().zero());
          mono[h] = ring.field().one();
          span.push_back(ring.multiply(e, f, d - e, mono));
        }
    out.push_back(ring.size(d) - Subspace<F>::span(ring.field(), ring.size(d), span).dim());
  }
  return out;
}

/// Dimensions of the subalgebra generated by homogeneous polynomials, degrees 0..D.
template <class F>
GradedSpace<F> generated_subalgebra(const PolyRing<F>& ring, const std::vector<std::pair<int, Vec<F>>>& gens, int D) {
  GradedSpace<F> out;
  out.parts.push_back(Subspace<F>::whole(ring.field(), 1));
  for (int d = 1; d <= D; ++d) {
    std::vector<Vec<F>> span;
    for (auto& [e, g] : gens) {
      if (e > d) continue;
      for (auto& b : out.parts[d - e].basis) span.push_back(ring.multiply(e, g, d - e, b));
    }
    out.parts.push_back(Subspace<F>::span(ring.field(), ring.size(d), span));
  }
  return out;
}

/// Points w with f_i(w) = f_i(v) for all i, over a finite field, with the G-orbit
/// decomposition. Only the reduced point set is seen.
struct FiberDescriptor {
  std::vector<Vec<FiniteField>> points;
  std::vector<std::vector<int>> orbits;  // point indices; orbits[i][0] is the representative
  bool free = false;
};

inline constexpr long long kMaxFiberSpace = 1000000;

/// All points of V bucketed by the values of f, so that many fibers of one map are cheap.
class FiberIndex {
 public:
  FiberIndex(const PolyRing<FiniteField>& ring, std::vector<std::pair<int, Vec<FiniteField>>> f)
      : ring_(&ring), f_(std::move(f)) {
    const auto& k = ring.field();
    int n = ring.nvars();
    long long q = k.order(), total = 1;
    for (int i = 0; i < n; ++i) {
      total *= q;
      require(total <= kMaxFiberSpace, ErrorCode::TooLarge, "|V| exceeds the fiber enumeration cap");
    }
    for (long long t = 0; t < total; ++t) {
      Vec<FiniteField> w;
      for (long long r = t, i = 0; i < n; ++i, r /= q) w.push_back(k.from_index(static_cast<std::uint32_t>(r % q)));
      buckets_[value_key(w)].push_back(std::move(w));
    }
  }

  std::size_t size_of(const Vec<FiniteField>& v) const {
    auto it = buckets_.find(value_key(v));
    return it == buckets_.end() ? 0 : it->second.size();
  }

  FiberDescriptor fiber(const Group<FiniteField>& G, const Vec<FiniteField>& v) const {
    FiberDescriptor out;
    auto it = buckets_.find(value_key(v));
    if (it != buckets_.end()) out.points = it->second;
    std::unordered_map<std::string, int> where;
    for (std::size_t i = 0; i < out.points.size(); ++i) where.emplace(point_key(out.points[i]), static_cast<int>(i));
    std::vector<bool> seen(out.points.size(), false);
    out.free = true;
    for (std::size_t i = 0; i < out.points.size(); ++i) {
      if (seen[i]) continue;
      std::vector<int> orbit;
      std::set<int> members;
      for (auto& g : G.elements()) {
        auto w = where.find(point_key(g.apply(out.points[i])));
        require(w != where.end(), ErrorCode::Precondition, "fiber is not G-stable; are the f_i invariant?");
        if (members.insert(w->second).second) orbit.push_back(w->second);
      }
      for (int m : orbit) seen[m] = true;
      if (orbit.size() != G.order()) out.free = false;
      out.orbits.push_back(std::move(orbit));
    }
    return out;
  }

 private:
  static std::string point_key(const Vec<FiniteField>& w) {
    std::string key;
    for (auto& x : w) key += x.key() + ",";
    return key;
  }
  std::string value_key(const Vec<FiniteField>& w) const {
    std::string key;
    for (auto& [d, p] : f_) key += ring_->evaluate(d, p, w).key() + ",";
    return key;
  }

  const PolyRing<FiniteField>* ring_;
  std::vector<std::pair<int, Vec<FiniteField>>> f_;
  std::unordered_map<std::string, std::vector<Vec<FiniteField>>> buckets_;
};

inline FiberDescriptor enumerate_fiber(const PolyRing<FiniteField>& ring, const Group<FiniteField>& G,
                                       const std::vector<std::pair<int, Vec<FiniteField>>>& f,
                                       const Vec<FiniteField>& v) {
  return FiberIndex(ring, f).fiber(G, v);
}

/// For a linear map c preserving the fiber: per orbit, the element g with c w = g w on the
/// orbit representative w, or -1 when c moves the orbit elsewhere. FiberNotCStable if c
/// maps some fiber point off the fiber.
inline std::vector<int> fiber_transporters(const FiberDescriptor& fib, const Group<FiniteField>& G,
                                           const Matrix<FiniteField>& c) {
  auto key_of = [](const Vec<FiniteField>& w) {
    std::string key;
    for (auto& x : w) key += x.key() + ",";
    return key;
  };
  std::unordered_map<std::string, int> orbit_of;
  for (std::size_t o = 0; o < fib.orbits.size(); ++o)
    for (int p : fib.orbits[o]) orbit_of.emplace(key_of(fib.points[p]), static_cast<int>(o));
  for (auto& w : fib.points)
    require(orbit_of.count(key_of(c.apply(w))) > 0, ErrorCode::FiberNotCStable, "c maps the fiber off itself");
  std::vector<int> out;
  for (std::size_t o = 0; o < fib.orbits.size(); ++o) {
    const auto& w = fib.points[fib.orbits[o][0]];
    auto cw = c.apply(w);
    int found = -1;
    if (orbit_of.at(key_of(cw)) == static_cast<int>(o))
      for (std::size_t g = 0; g < G.order() && found < 0; ++g)
        if (G.element(static_cast<int>(g)).apply(w) == cw) found = static_cast<int>(g);
    out.push_back(found);
  }
  return out;
}

}  // namespace invt
