#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "invt/polyaction.hpp"
#include "invt/series.hpp"

namespace invt {

/// A finite group Theta acting on V and on U, listed element by element, with the
/// classes on which characters are taken (p-regular classes only).
template <class F>
struct Equivariance {
  std::vector<Matrix<F>> on_v;
  std::vector<Matrix<F>> on_u;
  std::vector<int> class_reps;  // indices into on_v / on_u
  std::vector<long long> class_orders;
  std::vector<std::string> class_labels;
  const CharacterContext<F>* ctx = nullptr;

  std::size_t order() const { return on_v.size(); }
  std::size_t classes() const { return class_reps.size(); }
};

/// ATLAS-style labels "1a", "2a", "2b", ... in class order.
inline std::vector<std::string> class_labels_by_order(const std::vector<long long>& orders) {
  std::map<long long, int> seen;
  std::vector<std::string> out;
  for (long long o : orders) {
    int k = seen[o]++;
    std::string suffix;
    do {
      suffix.insert(suffix.begin(), static_cast<char>('a' + k % 26));
      k = k / 26 - 1;
    } while (k >= 0);
    out.push_back(std::to_string(o) + suffix);
  }
  return out;
}

/// Equivariance data from a group of block matrices diag(A_V, B_U, ...): the first nv
/// rows act on V, the next nu on U. Non-p-regular classes are dropped.
template <class F>
Equivariance<F> split_blocks(const Group<F>& theta, int nv, int nu, const CharacterContext<F>& ctx) {
  Equivariance<F> eq;
  eq.ctx = &ctx;
  auto block = [&](const Matrix<F>& m, int off, int n) {
    Matrix<F> b(m.field, n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) b(i, j) = m(off + i, off + j);
    return b;
  };
  for (auto& m : theta.elements()) {
    eq.on_v.push_back(block(m, 0, nv));
    eq.on_u.push_back(block(m, nv, nu));
  }
  for (auto& c : theta.classes()) {
    if (!ctx.p_regular(c.order)) continue;
    eq.class_reps.push_back(c.representative);
    eq.class_orders.push_back(c.order);
  }
  eq.class_labels = class_labels_by_order(eq.class_orders);
  return eq;
}

/// Connected graded subalgebra R of k[V] given by per-degree subspaces through its truncation.
/// Either a polynomial normalization k[f_1..f_n] (independence certified through D) or
/// arbitrary degreewise data such as the full invariant ring.
template <class F>
class GradedAlgebraR {
 public:
  using Poly = std::pair<int, Vec<F>>;
  struct Generator {
    int degree;
    Vec<F> poly;    // in k[V]_degree
    Vec<F> coords;  // in R_degree
  };

  /// k[f_1..f_n]; Precondition if the f_i are dependent in some degree <= D.
  static GradedAlgebraR polynomial(const PolyRing<F>& ring, std::vector<Poly> f, int D) {
    auto parts = generated_subalgebra(ring, f, D);
    std::vector<int> degs;
    for (auto& [d, p] : f) {
      require(d >= 1, ErrorCode::Precondition, "normalization generators must have positive degree");
      degs.push_back(d);
    }
    auto expect = expected_polynomial_dims(degs, D);
    for (int d = 0; d <= D; ++d)
      require(parts.dim(d) == expect[d], ErrorCode::Precondition,
              "normalization is not algebraically independent in degree " + std::to_string(d));
    GradedAlgebraR r(ring, std::move(parts));
    r.normalization_ = std::move(f);
    return r;
  }

  /// R_d = parts[d]; checks R_0 = k and closure of products with algebra generators.
  static GradedAlgebraR by_degrees(const PolyRing<F>& ring, GradedSpace<F> parts) {
    return GradedAlgebraR(ring, std::move(parts));
  }

  const PolyRing<F>& ring() const { return *ring_; }
  const F& field() const { return ring_->field(); }
  int max_degree() const { return parts_.max_degree(); }
  int dim(int d) const { return parts_.dim(d); }
  const Subspace<F>& part(int d) const { return parts_.parts[d]; }
  const GradedSpace<F>& parts() const { return parts_; }
  bool is_polynomial() const { return !normalization_.empty(); }
  const std::vector<Poly>& normalization() const { return normalization_; }
  const std::vector<Generator>& algebra_generators() const { return gens_; }
  int min_generator_degree() const { return gens_.empty() ? 1 : gens_.front().degree; }

  std::vector<int> normalization_degrees() const {
    std::vector<int> d;
    for (auto& [e, p] : normalization_) d.push_back(e);
    return d;
  }

  /// Matrix R_b -> R_{e+b} of multiplication by the i-th basis element of R_e.
  const Matrix<F>& left_mult(int e, int i, int b) const {
    ensure_products();
    return products_[e][b][i];
  }
  /// Multiplication by an element of R_e given in coordinates, as a matrix R_b -> R_{e+b}.
  Matrix<F> left_mult_coords(int e, const Vec<F>& x, int b) const {
    Matrix<F> m(field(), dim(e + b), dim(b));
    for (int i = 0; i < dim(e); ++i) {
      if (x[i].is_zero()) continue;
      m = m + left_mult(e, i, b).scaled(x[i]);
    }
    return m;
  }

  /// Action of a linear map of V on R_d (given its matrix on k[V]_d); NotThetaStable if R_d moves.
  Matrix<F> restrict_action(const Matrix<F>& on_poly_d, int d) const {
    Matrix<F> out;
    require(restrict_to(on_poly_d, part(d), out), ErrorCode::NotThetaStable,
            "the acting group does not preserve R in degree " + std::to_string(d));
    return out;
  }

  static std::vector<int> expected_polynomial_dims(const std::vector<int>& degs, int D) {
    std::vector<int> c(D + 1, 0);
    c[0] = 1;
    for (int e : degs)
      for (int d = e; d <= D; ++d) c[d] += c[d - e];
    return c;
  }

 private:
  GradedAlgebraR(const PolyRing<F>& ring, GradedSpace<F> parts) : ring_(&ring), parts_(std::move(parts)) {
    require(parts_.max_degree() >= 0 && parts_.dim(0) == 1, ErrorCode::Precondition, "R must have R_0 = k");
    require(parts_.max_degree() <= ring.max_degree(), ErrorCode::TruncationTooSmall,
            "R is truncated beyond the polynomial ring");
    const F& k = ring.field();
    for (int d = 1; d <= parts_.max_degree(); ++d) {
      std::vector<Vec<F>> decomposable;
      for (auto& g : gens_)
        for (auto& b : part(d - g.degree).basis) {
          auto p = ring.multiply(g.degree, g.poly, d - g.degree, b);
          require(part(d).contains(p), ErrorCode::Precondition,
                  "R is not closed under multiplication in degree " + std::to_string(d));
          decomposable.push_back(std::move(p));
        }
      auto span = Subspace<F>::span(k, ring.size(d), decomposable);
      for (auto& b : part(d).basis) {
        if (span.contains(b)) continue;
        gens_.push_back({d, b, part(d).coords(b)});
        span = Subspace<F>::span(k, ring.size(d), [&] {
          auto v = span.basis;
          v.push_back(b);
          return v;
        }());
      }
    }
  }

  void ensure_products() const {
    std::call_once(*products_once_, [this] {
      int D = max_degree();
      products_.assign(D + 1, std::vector<std::vector<Matrix<F>>>(D + 1));
      for (int e = 0; e <= D; ++e)
        for (int b = 0; e + b <= D; ++b)
          for (int i = 0; i < dim(e); ++i) {
            Matrix<F> m(field(), dim(e + b), dim(b));
            for (int j = 0; j < dim(b); ++j) {
              auto p = ring_->multiply(e, part(e).basis[i], b, part(b).basis[j]);
              auto c = part(e + b).coords(p);
              for (int r = 0; r < m.rows; ++r) m(r, j) = c[r];
            }
            products_[e][b].push_back(std::move(m));
          }
    });
  }

  const PolyRing<F>* ring_;
  GradedSpace<F> parts_;
  std::vector<Poly> normalization_;
  std::vector<Generator> gens_;
  mutable std::shared_ptr<std::once_flag> products_once_ = std::make_shared<std::once_flag>();
  mutable std::vector<std::vector<std::vector<Matrix<F>>>> products_;
};

struct HdReport {
  bool bounded = false;
  int value = -1;  // hd bound when bounded, else largest index seen with Tor nonzero
  int D = 0;
  std::string text() const;
};

/// beta_{i,j} = dim Tor_i^R(M,k)_j for j <= D, with optional Theta characters per class.
struct TorTable {
  int D = 0;
  std::map<std::pair<int, int>, long long> dims;  // nonzero entries only
  std::vector<std::string> class_labels;          // empty without characters
  std::map<std::pair<int, int>, std::vector<CyclotomicNumber>> characters;
  HdReport hd;

  long long beta(int i, int j) const;
  int max_index() const;
  bool has_characters() const { return !class_labels.empty(); }
  /// sum_i (-1)^i beta_{i,j} t^j through D.
  TruncatedSeries euler_series() const;
  /// sum_i (-1)^i chi_{Tor_{i,j}}(class c) t^j through D.
  TruncatedSeries euler_character_series(std::size_t c) const;
  /// Rows j - i, columns i; "." for zero.
  std::string betti_table() const;
  /// i,j,dim[,class...] rows in (i, j) order.
  std::string csv() const;
  /// Sets hd from the entries: bounded when the top index reaches index_cap or leaves room
  /// of min_generator_degree above its last entry within D.
  void finish(int min_generator_degree, int index_cap = -1);
};

/// Minimal free resolution F_i -> ... -> F_0 -> M of a graded R-module M inside U tensor k[V],
/// degreewise through D. F_{i,d} = sum over generators g of R_{d - deg g}, generator-major.
template <class F>
struct TruncatedResolution {
  int D = 0;
  std::vector<std::vector<int>> generator_degrees;   // per i, ascending
  std::vector<std::vector<Matrix<F>>> differential;  // [i][d]: F_{i,d} -> F_{i-1,d}; i = 0 lands in U tensor k[V]_d
  std::vector<std::vector<int>> free_dims;           // [i][d] = dim F_{i,d}
  TorTable tor;

  int length() const { return static_cast<int>(generator_degrees.size()); }
  int min_degree(int i) const { return generator_degrees[i].empty() ? -1 : generator_degrees[i].front(); }
};

namespace detail {

template <class F>
Matrix<F> columns_to_matrix(const F& k, int rows, const std::vector<Vec<F>>& cols) {
  Matrix<F> m(k, rows, static_cast<int>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < rows; ++i) m(i, static_cast<int>(j)) = cols[j][i];
  return m;
}

/// Theta-stable complement of s inside k (both Theta-stable), by averaging a projection.
/// acts[t] is the action of element t on the ambient space.
template <class F>
std::vector<Vec<F>> stable_complement(const Subspace<F>& kspace, const Subspace<F>& s,
                                      const std::vector<Matrix<F>>& acts) {
  const F& f = kspace.field;
  int n = kspace.dim();
  // s in k-coordinates, then any complement of it.
  std::vector<Vec<F>> basis;
  for (auto& v : s.basis) basis.push_back(kspace.coords(v));
  int sdim = static_cast<int>(basis.size());
  for (int i = 0; i < n && static_cast<int>(basis.size()) < n; ++i) {
    Vec<F> e(n, f.zero());
    e[i] = f.one();
    auto grown = basis;
    grown.push_back(e);
    if (Subspace<F>::span(f, n, grown).dim() == static_cast<int>(grown.size())) basis = std::move(grown);
  }
  auto b = columns_to_matrix(f, n, basis);
  Matrix<F> keep(f, n, n);
  for (int i = 0; i < sdim; ++i) keep(i, i) = f.one();
  auto p0 = b * keep * inverse(b);
  Matrix<F> p(f, n, n);
  for (auto& a : acts) {
    Matrix<F> t;
    require(restrict_to(a, kspace, t), ErrorCode::NotThetaStable, "module is not stable under the acting group");
    p = p + t * p0 * inverse(t);
  }
  p = p.scaled(f.from_int(static_cast<long long>(acts.size())).inverse());
  std::vector<Vec<F>> out;
  for (auto& w : kernel(p).basis) out.push_back(kspace.combine(w));
  return out;
}

/// Generator-major offsets of F_d for generators of the given degrees.
template <class F>
std::vector<int> free_offsets(const GradedAlgebraR<F>& R, const std::vector<int>& gdeg, int d, int& total) {
  std::vector<int> off;
  total = 0;
  for (int a : gdeg) {
    off.push_back(total);
    if (a <= d) total += R.dim(d - a);
  }
  return off;
}

}  // namespace detail

/// Degreewise bases of complements of R_+ M in M, d = 0..D. NotAnRModule if some algebra
/// generator of R maps M_d outside M.
template <class F>
std::vector<std::vector<Vec<F>>> minimal_generators(const GradedAlgebraR<F>& R, const GradedSpace<F>& M, int D) {
  const auto& ring = R.ring();
  std::vector<std::vector<Vec<F>>> out(D + 1);
  for (int d = 0; d <= D; ++d) {
    std::vector<Vec<F>> dec;
    for (auto& g : R.algebra_generators()) {
      if (g.degree > d) continue;
      for (auto& m : M.parts[d - g.degree].basis) {
        auto p = ring.multiply_tensor(M.u, d - g.degree, m, g.degree, g.poly);
        require(M.parts[d].contains(p), ErrorCode::NotAnRModule,
                "M is not closed under R in degree " + std::to_string(d));
        dec.push_back(std::move(p));
      }
    }
    auto s = Subspace<F>::span(ring.field(), M.parts[d].ambient, dec);
    for (auto& b : M.parts[d].basis) {
      if (s.contains(b)) continue;
      out[d].push_back(b);
      auto v = s.basis;
      v.push_back(b);
      s = Subspace<F>::span(ring.field(), M.parts[d].ambient, v);
    }
  }
  return out;
}

/// Syzygy iteration: free cover on minimal generators, degreewise kernel, repeat. With eq,
/// generator complements are chosen Theta-stably (|Theta| must be invertible in k) and Tor
/// characters are the characters of Theta on the generator spaces.
template <class F>
TruncatedResolution<F> truncated_minimal_resolution(const GradedAlgebraR<F>& R, const GradedSpace<F>& M, int D,
                                                    const Equivariance<F>* eq = nullptr, int jobs = 1) {
  const auto& ring = R.ring();
  const F& k = ring.field();
  require(D <= R.max_degree() && D <= M.max_degree(), ErrorCode::TruncationTooSmall,
          "R or M is truncated below degree " + std::to_string(D));
  if (eq)
    require(k.characteristic() == 0 || eq->order() % k.characteristic() != 0, ErrorCode::Precondition,
            "equivariant minimal resolutions need |Theta| invertible in k");
  const int u = M.u;
  const auto& gens = R.algebra_generators();

  // Ambient of the current level: dims, multiplication by algebra generators and by R basis
  // elements, and the Theta action per element and degree.
  std::function<int(int)> amb_dim = [&](int d) { return u * ring.size(d); };
  std::function<Vec<F>(int, int, const Vec<F>&)> gen_mult = [&](int s, int d, const Vec<F>& v) {
    return ring.multiply_tensor(u, d, v, gens[s].degree, gens[s].poly);
  };
  std::function<Vec<F>(int, int, int, const Vec<F>&)> r_mult = [&](int e, int ri, int d, const Vec<F>& v) {
    return ring.multiply_tensor(u, d, v, e, R.part(e).basis[ri]);
  };
  std::vector<std::vector<Matrix<F>>> theta;      // [t][d] on the ambient
  std::vector<std::vector<Matrix<F>>> theta_r;    // [t][d] on R_d
  if (eq) {
    for (std::size_t t = 0; t < eq->order(); ++t) {
      auto acts = ring.action_matrices(eq->on_v[t], D);
      std::vector<Matrix<F>> amb, onr;
      for (int d = 0; d <= D; ++d) {
        amb.push_back(kron(eq->on_u[t], acts[d]));
        onr.push_back(R.restrict_action(acts[d], d));
      }
      theta.push_back(std::move(amb));
      theta_r.push_back(std::move(onr));
    }
  }

  TruncatedResolution<F> res;
  res.D = D;
  res.tor.D = D;
  if (eq) res.tor.class_labels = eq->class_labels;
  std::vector<Subspace<F>> K(M.parts.begin(), M.parts.begin() + D + 1);
  bool level0 = true;

  for (int i = 0;; ++i) {
    bool any = false;
    for (auto& s : K) any = any || s.dim() > 0;
    if (!any) break;
    require(i <= D + 1, ErrorCode::Internal, "resolution failed to terminate within the truncation");

    // Minimal generators: complement of R_+ K in K, degree by degree.
    std::vector<std::vector<Vec<F>>> W(D + 1);
    for (int a = 0; a <= D; ++a) {
      if (K[a].dim() == 0) continue;
      std::vector<Vec<F>> dec;
      for (std::size_t s = 0; s < gens.size(); ++s) {
        int e = gens[s].degree;
        if (e > a) continue;
        for (auto& v : K[a - e].basis) {
          auto p = gen_mult(static_cast<int>(s), a - e, v);
          require(K[a].contains(p), level0 ? ErrorCode::NotAnRModule : ErrorCode::Internal,
                  "M is not closed under R in degree " + std::to_string(a));
          dec.push_back(std::move(p));
        }
      }
      auto S = Subspace<F>::span(k, amb_dim(a), dec);
      if (S.dim() == K[a].dim()) continue;
      if (eq) {
        std::vector<Matrix<F>> acts;
        for (auto& th : theta) acts.push_back(th[a]);
        W[a] = detail::stable_complement(K[a], S, acts);
      } else {
        for (auto& b : K[a].basis) {
          if (S.contains(b)) continue;
          W[a].push_back(b);
          auto v = S.basis;
          v.push_back(b);
          S = Subspace<F>::span(k, amb_dim(a), v);
        }
      }
    }

    std::vector<int> gdeg;
    std::vector<Vec<F>> gvec;
    for (int a = 0; a <= D; ++a)
      for (auto& w : W[a]) {
        gdeg.push_back(a);
        gvec.push_back(w);
        res.tor.dims[{i, a}] += 1;
      }

    // Characters of Tor_{i,a} = characters on W_a; and Theta on W_a for the next level.
    std::vector<std::vector<Matrix<F>>> rho_w;  // [t][a]
    if (eq) {
      rho_w.assign(eq->order(), std::vector<Matrix<F>>(D + 1));
      for (int a = 0; a <= D; ++a) {
        if (W[a].empty()) continue;
        auto ws = Subspace<F>::span(k, amb_dim(a), W[a]);
        // Express generators in the rref basis of W_a so that restriction is consistent.
        W[a] = ws.basis;
        for (std::size_t t = 0; t < eq->order(); ++t) {
          Matrix<F> m;
          require(restrict_to(theta[t][a], ws, m), ErrorCode::NotThetaStable, "generator space is not Theta-stable");
          rho_w[t][a] = std::move(m);
        }
        std::vector<CyclotomicNumber> chi;
        for (std::size_t c = 0; c < eq->classes(); ++c)
          chi.push_back(eq->ctx->brauer_character(rho_w[eq->class_reps[c]][a], eq->class_orders[c]).minimal());
        res.tor.characters[{i, a}] = std::move(chi);
      }
      gvec.clear();
      for (int a = 0; a <= D; ++a)
        for (auto& w : W[a]) gvec.push_back(w);
    }

    // phi_d : F_{i,d} -> ambient_d and its kernel K_{i+1,d}.
    std::vector<Matrix<F>> phi(D + 1);
    std::vector<Subspace<F>> Knext(D + 1);
    std::vector<int> fdims(D + 1);
    parallel_for(D + 1, jobs, [&](int d) {
      int total = 0;
      auto off = detail::free_offsets(R, gdeg, d, total);
      (void)off;
      std::vector<Vec<F>> cols;
      for (std::size_t g = 0; g < gdeg.size(); ++g) {
        if (gdeg[g] > d) continue;
        for (int r = 0; r < R.dim(d - gdeg[g]); ++r) cols.push_back(r_mult(d - gdeg[g], r, gdeg[g], gvec[g]));
      }
      phi[d] = detail::columns_to_matrix(k, amb_dim(d), cols);
      fdims[d] = total;
      Knext[d] = kernel(phi[d]);
      require(total - Knext[d].dim() == K[d].dim(), ErrorCode::Internal,
              "free cover does not surject in degree " + std::to_string(d));
    });
    res.generator_degrees.push_back(gdeg);
    res.differential.push_back(phi);
    res.free_dims.push_back(fdims);

    // The next ambient is F_i.
    std::vector<std::vector<Matrix<F>>> gen_mats(gens.size(), std::vector<Matrix<F>>(D + 1));
    for (std::size_t s = 0; s < gens.size(); ++s)
      for (int b = 0; b + gens[s].degree <= D; ++b) gen_mats[s][b] = R.left_mult_coords(gens[s].degree, gens[s].coords, b);
    auto blockwise = [&R, gdeg, D, &k](int d, int e, const Vec<F>& v, const std::function<const Matrix<F>&(int)>& m) {
      int tin = 0, tout = 0;
      auto oin = detail::free_offsets(R, gdeg, d, tin);
      auto oout = detail::free_offsets(R, gdeg, d + e, tout);
      Vec<F> out(tout, k.zero());
      for (std::size_t g = 0; g < gdeg.size(); ++g) {
        if (gdeg[g] > d) continue;
        int b = d - gdeg[g];
        Vec<F> y(v.begin() + oin[g], v.begin() + oin[g] + R.dim(b));
        auto z = m(b).apply(y);
        for (std::size_t r = 0; r < z.size(); ++r) out[oout[g] + r] = z[r];
      }
      (void)D;
      return out;
    };
    auto shared_gen_mats = std::make_shared<decltype(gen_mats)>(std::move(gen_mats));
    amb_dim = [fd = fdims](int d) { return fd[d]; };
    gen_mult = [blockwise, shared_gen_mats, &gens](int s, int d, const Vec<F>& v) {
      return blockwise(d, gens[s].degree, v, [&](int b) -> const Matrix<F>& { return (*shared_gen_mats)[s][b]; });
    };
    r_mult = [blockwise, &R](int e, int ri, int d, const Vec<F>& v) {
      return blockwise(d, e, v, [&](int b) -> const Matrix<F>& { return R.left_mult(e, ri, b); });
    };
    if (eq) {
      for (std::size_t t = 0; t < eq->order(); ++t)
        for (int d = 0; d <= D; ++d) {
          Matrix<F> m(k, fdims[d], fdims[d]);
          int row = 0;
          for (int a = 0; a <= d; ++a) {
            if (W[a].empty()) continue;
            auto blk = kron(rho_w[t][a], theta_r[t][d - a]);
            for (int x = 0; x < blk.rows; ++x)
              for (int y = 0; y < blk.cols; ++y) m(row + x, row + y) = blk(x, y);
            row += blk.rows;
          }
          theta[t][d] = std::move(m);
        }
    }
    K = std::move(Knext);
    level0 = false;
  }
  res.tor.finish(R.min_generator_degree());
  return res;
}

/// Tor via the Koszul complex M tensor Lambda(e_1..e_n), deg e_s = deg f_s, over a polynomial
/// normalization. With eq, Theta must scale each f_s; characters are taken on kernels and
/// images directly, valid in every characteristic.
template <class F>
TorTable koszul_tor(const GradedAlgebraR<F>& R, const GradedSpace<F>& M, int D, const Equivariance<F>* eq = nullptr,
                    int jobs = 1) {
  require(R.is_polynomial(), ErrorCode::Precondition, "the Koszul engine needs a polynomial normalization");
  require(D <= M.max_degree() && D <= R.ring().max_degree(), ErrorCode::TruncationTooSmall,
          "M is truncated below degree " + std::to_string(D));
  const auto& ring = R.ring();
  const F& k = ring.field();
  const auto& f = R.normalization();
  const int n = static_cast<int>(f.size()), u = M.u;

  // mult[s][e]: M_e -> M_{e + d_s} in M-coordinates.
  std::vector<std::vector<Matrix<F>>> mult(n, std::vector<Matrix<F>>(D + 1));
  for (int s = 0; s < n; ++s)
    for (int e = 0; e + f[s].first <= D; ++e) {
      Matrix<F> m(k, M.dim(e + f[s].first), M.dim(e));
      for (int j = 0; j < M.dim(e); ++j) {
        auto p = ring.multiply_tensor(u, e, M.parts[e].basis[j], f[s].first, f[s].second);
        Vec<F> c;
        require(M.parts[e + f[s].first].try_coords(p, c), ErrorCode::NotAnRModule,
                "M is not closed under f_" + std::to_string(s + 1) + " in degree " + std::to_string(e));
        for (int r = 0; r < m.rows; ++r) m(r, j) = c[r];
      }
      mult[s][e] = std::move(m);
    }

  // Theta on M_e per class representative, and the scalars lambda_s.
  std::vector<std::vector<Matrix<F>>> rho;  // [c][e]
  std::vector<std::vector<typename F::Element>> lambda;  // [c][s]
  if (eq) {
    for (std::size_t t = 0; t < eq->order(); ++t)
      for (int s = 0; s < n; ++s) {
        auto img = ring.action_matrix(eq->on_v[t], f[s].first).apply(f[s].second);
        auto probe = Subspace<F>::span(k, ring.size(f[s].first), {f[s].second});
        require(probe.contains(img), ErrorCode::NotThetaStable,
                "Theta does not scale f_" + std::to_string(s + 1));
      }
    for (std::size_t c = 0; c < eq->classes(); ++c) {
      int t = eq->class_reps[c];
      auto acts = ring.action_matrices(eq->on_v[t], D);
      std::vector<Matrix<F>> per;
      for (int e = 0; e <= D; ++e) {
        Matrix<F> m;
        require(restrict_to(kron(eq->on_u[t], acts[e]), M.parts[e], m), ErrorCode::NotThetaStable,
                "M is not Theta-stable in degree " + std::to_string(e));
        per.push_back(std::move(m));
      }
      rho.push_back(std::move(per));
      std::vector<typename F::Element> ls;
      for (int s = 0; s < n; ++s) {
        auto img = acts[f[s].first].apply(f[s].second);
        int p = 0;
        while (f[s].second[p].is_zero()) ++p;
        ls.push_back(img[p] / f[s].second[p]);
      }
      lambda.push_back(std::move(ls));
    }
  }

  // Subsets of {0..n-1} by size, each with its degree sum.
  std::vector<std::vector<unsigned>> subsets(n + 1);
  for (unsigned m = 0; m < (1u << n); ++m) subsets[__builtin_popcount(m)].push_back(m);
  auto deg_of = [&](unsigned m) {
    int d = 0;
    for (int s = 0; s < n; ++s)
      if (m >> s & 1) d += f[s].first;
    return d;
  };

  TorTable tab;
  tab.D = D;
  if (eq) tab.class_labels = eq->class_labels;
  std::mutex mu;
  parallel_for(D + 1, jobs, [&](int j) {
    // C_i = sum over |S| = i of M_{j - deg S}.
    std::vector<std::vector<int>> off(n + 1);
    std::vector<int> size(n + 1, 0);
    for (int i = 0; i <= n; ++i)
      for (unsigned m : subsets[i]) {
        off[i].push_back(size[i]);
        int e = j - deg_of(m);
        size[i] += e >= 0 ? M.dim(e) : 0;
      }
    auto pos = [&](int i, unsigned m) {
      auto it = std::find(subsets[i].begin(), subsets[i].end(), m);
      return off[i][it - subsets[i].begin()];
    };
    // d_i : C_i -> C_{i-1}, m e_S -> sum_k (-1)^k f_{s_k} m e_{S - s_k}.
    std::vector<Matrix<F>> dmat(n + 2);
    for (int i = 1; i <= n; ++i) {
      Matrix<F> m(k, size[i - 1], size[i]);
      for (unsigned S : subsets[i]) {
        int e = j - deg_of(S);
        if (e < 0) continue;
        int col = pos(i, S), kpos = 0;
        for (int s = 0; s < n; ++s) {
          if (!(S >> s & 1)) continue;
          int row = pos(i - 1, S & ~(1u << s));
          const auto& mm = mult[s][e];
          auto sign = kpos % 2 ? -k.one() : k.one();
          for (int r = 0; r < mm.rows; ++r)
            for (int c = 0; c < mm.cols; ++c)
              if (!mm(r, c).is_zero()) m(row + r, col + c) += sign * mm(r, c);
          ++kpos;
        }
      }
      dmat[i] = std::move(m);
    }
    dmat[0] = Matrix<F>(k, 0, size[0]);
    dmat[n + 1] = Matrix<F>(k, size[n], 0);
    std::map<std::pair<int, int>, long long> local;
    std::map<std::pair<int, int>, std::vector<CyclotomicNumber>> local_chars;
    for (int i = 0; i <= n; ++i) {
      auto Z = kernel(dmat[i]);
      auto B = image(dmat[i + 1]);
      long long h = Z.dim() - B.dim();
      if (h == 0) continue;
      local[{i, j}] = h;
      if (!eq) continue;
      std::vector<CyclotomicNumber> chi;
      for (std::size_t c = 0; c < eq->classes(); ++c) {
        Matrix<F> act(k, size[i], size[i]);
        for (unsigned S : subsets[i]) {
          int e = j - deg_of(S);
          if (e < 0) continue;
          auto ls = k.one();
          for (int s = 0; s < n; ++s)
            if (S >> s & 1) ls *= lambda[c][s];
          int p0 = pos(i, S);
          const auto& r = rho[c][e];
          for (int x = 0; x < r.rows; ++x)
            for (int y = 0; y < r.cols; ++y) act(p0 + x, p0 + y) = ls * r(x, y);
        }
        Matrix<F> az, ab;
        require(restrict_to(act, Z, az) && restrict_to(act, B, ab), ErrorCode::NotThetaStable,
                "Koszul cycles are not Theta-stable");
        long long o = eq->class_orders[c];
        auto val = eq->ctx->brauer_character(az, o) - eq->ctx->brauer_character(ab, o);
        chi.push_back(val.minimal());
      }
      local_chars[{i, j}] = std::move(chi);
    }
    std::lock_guard<std::mutex> lock(mu);
    tab.dims.insert(local.begin(), local.end());
    tab.characters.insert(local_chars.begin(), local_chars.end());
  });
  tab.finish(R.min_generator_degree(), n);
  return tab;
}

/// Per class of Theta: [M](t) / [R](t) as truncated series of Brauer character values.
template <class F>
std::vector<TruncatedSeries> euler_character_series(const GradedAlgebraR<F>& R, const GradedSpace<F>& M,
                                                    const Equivariance<F>& eq, int D) {
  const auto& ring = R.ring();
  std::vector<TruncatedSeries> out;
  for (std::size_t c = 0; c < eq.classes(); ++c) {
    int t = eq.class_reps[c];
    long long o = eq.class_orders[c];
    auto acts = ring.action_matrices(eq.on_v[t], D);
    std::vector<CyclotomicNumber> m, r;
    for (int d = 0; d <= D; ++d) {
      Matrix<F> a;
      require(restrict_to(kron(eq.on_u[t], acts[d]), M.parts[d], a), ErrorCode::NotThetaStable,
              "M is not Theta-stable in degree " + std::to_string(d));
      m.push_back(M.dim(d) ? eq.ctx->brauer_character(a, o) : CyclotomicNumber(1));
      r.push_back(R.dim(d) ? eq.ctx->brauer_character(R.restrict_action(acts[d], d), o) : CyclotomicNumber(1));
    }
    out.push_back(TruncatedSeries(m, D) / TruncatedSeries(r, D));
  }
  return out;
}

/// Series of dimensions [M](t) / [R](t) through D.
template <class F>
TruncatedSeries euler_dimension_series(const GradedAlgebraR<F>& R, const GradedSpace<F>& M, int D) {
  std::vector<long long> m, r;
  for (int d = 0; d <= D; ++d) {
    m.push_back(M.dim(d));
    r.push_back(R.dim(d));
  }
  return TruncatedSeries::from_ints(m, D) / TruncatedSeries::from_ints(r, D);
}

}  // namespace invt
