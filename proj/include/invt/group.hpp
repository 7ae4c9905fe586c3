#pragma once

#include <cstddef>
#include <deque>
#include <numeric>
#include <optional>
#include <type_traits>
#include <string>
#include <unordered_map>
#include <vector>

#include "invt/brauer.hpp"
#include "invt/cyclotomic.hpp"
#include "invt/error.hpp"
#include "invt/finite_field.hpp"
#include "invt/matrix.hpp"

namespace invt {

inline constexpr std::size_t kDefaultGroupCap = 10000;

struct ConjugacyClass {
  int representative;  // least member index
  std::vector<int> members;
  long long order;
  bool p_regular;
};

/// Finite matrix group enumerated breadth-first from the identity, multiplying by
/// generators on the right in the order given.
template <class F>
class Group {
 public:
  using M = Matrix<F>;

  static Group generate(const F& field, int dim, std::vector<M> gens, std::size_t cap = kDefaultGroupCap) {
    Group g;
    g.field_ = field;
    g.dim_ = dim;
    for (auto& s : gens) {
      require(s.rows == dim && s.cols == dim, ErrorCode::Precondition, "generator has the wrong size");
      require(is_invertible(s), ErrorCode::NotInvertible, "singular generator " + s.to_string());
    }
    for (auto& s : gens) s = s.normalized();
    g.gens_ = gens;
    g.add(M::identity(field, dim));
    for (std::size_t head = 0; head < g.elems_.size(); ++head) {
      for (auto& s : g.gens_) {
        auto y = g.elems_[head] * s;
        if (g.index_of(y) >= 0) continue;
        require(g.elems_.size() < cap, ErrorCode::CapExceeded,
                "group closure exceeds cap " + std::to_string(cap));
        g.add(std::move(y));
        g.parent_.push_back({static_cast<int>(head), static_cast<int>(&s - g.gens_.data())});
      }
    }
    for (auto& s : g.gens_) g.gen_index_.push_back(g.index_of(s));
    g.build_inverses();
    return g;
  }

  const F& field() const { return field_; }
  int dim() const { return dim_; }
  std::size_t order() const { return elems_.size(); }
  const std::vector<M>& generators() const { return gens_; }
  const std::vector<int>& generator_indices() const { return gen_index_; }
  const M& element(int i) const { return elems_[i]; }
  const std::vector<M>& elements() const { return elems_; }
  int identity() const { return 0; }
  /// Element i = element(parent.first) * generators()[parent.second]; entry 0 is unused.
  const std::vector<std::pair<int, int>>& bfs_parents() const { return parent_; }

  int index_of(const M& m) const {
    auto it = index_.find(m.key());
    return it == index_.end() ? -1 : it->second;
  }
  int inverse(int i) const { return inv_[i]; }
  int mul(int a, int b) const {
    if (!table_.empty()) return table_[std::size_t(a) * order() + b];
    int r = index_of(elems_[a] * elems_[b]);
    require(r >= 0, ErrorCode::Internal, "product left the group");
    return r;
  }
  long long element_order(int i) const {
    long long n = 1;
    for (int x = i; x != 0; x = mul(x, i)) ++n;
    return n;
  }
  bool is_abelian() const {
    for (int a : gen_index_)
      for (int b : gen_index_)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  /// Classes ordered by least member; members sorted. p_regular uses the field characteristic.
  std::vector<ConjugacyClass> classes() const {
    int p = field_.characteristic();
    std::vector<int> cls(order(), -1);
    std::vector<ConjugacyClass> out;
    for (int x = 0; x < static_cast<int>(order()); ++x) {
      if (cls[x] >= 0) continue;
      ConjugacyClass c{x, {x}, element_order(x), true};
      cls[x] = static_cast<int>(out.size());
      for (std::size_t h = 0; h < c.members.size(); ++h)
        for (int s : gen_index_) {
          int y = mul(mul(inverse(s), c.members[h]), s);
          if (cls[y] < 0) {
            cls[y] = cls[x];
            c.members.push_back(y);
          }
        }
      std::sort(c.members.begin(), c.members.end());
      c.p_regular = p == 0 || c.order % p != 0;
      out.push_back(std::move(c));
    }
    return out;
  }

  /// Subgroup generated by members of this group, with its elements mapped to indices here.
  std::vector<int> subgroup_indices(const std::vector<int>& gens) const {
    std::vector<int> elems{0};
    std::vector<bool> seen(order(), false);
    seen[0] = true;
    for (std::size_t h = 0; h < elems.size(); ++h)
      for (int s : gens) {
        int y = mul(elems[h], s);
        if (!seen[y]) {
          seen[y] = true;
          elems.push_back(y);
        }
      }
    return elems;
  }

 private:
  void add(M m) {
    index_.emplace(m.key(), static_cast<int>(elems_.size()));
    elems_.push_back(std::move(m));
  }
  void build_inverses() {
    std::size_t n = order();
    if (n <= 2048) {
      table_.resize(n * n);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          int r = index_of(elems_[a] * elems_[b]);
          require(r >= 0, ErrorCode::Internal, "closure is not multiplicatively closed");
          table_[a * n + b] = r;
        }
    }
    inv_.assign(n, -1);
    for (std::size_t a = 0; a < n; ++a) {
      if (inv_[a] >= 0) continue;
      int r = index_of(::invt::inverse(elems_[a]));
      require(r >= 0, ErrorCode::Internal, "inverse left the group");
      inv_[a] = r;
      inv_[r] = static_cast<int>(a);
    }
  }

  F field_;
  int dim_ = 0;
  std::vector<M> gens_;
  std::vector<int> gen_index_;
  std::vector<M> elems_;
  std::unordered_map<std::string, int> index_;
  std::vector<int> inv_;
  std::vector<int> table_;
  std::vector<std::pair<int, int>> parent_{{-1, -1}};
};

/// Extends generator images to all elements along the closure tree and checks that the
/// result is a homomorphism; ActionMismatch otherwise.
template <class F, class G2>
std::vector<Matrix<G2>> extend_representation(const Group<F>& g, const std::vector<Matrix<G2>>& images,
                                              const G2& field, int dim) {
  require(images.size() == g.generators().size(), ErrorCode::ActionMismatch,
          "representation needs one matrix per generator");
  for (auto& m : images)
    require(m.rows == dim && m.cols == dim, ErrorCode::ActionMismatch, "representation matrix has the wrong size");
  std::vector<Matrix<G2>> rho(g.order());
  rho[0] = Matrix<G2>::identity(field, dim);
  for (std::size_t i = 1; i < g.order(); ++i) {
    auto [par, s] = g.bfs_parents()[i];
    rho[i] = (rho[par] * images[s]).normalized();
  }
  for (std::size_t x = 0; x < g.order(); ++x)
    for (std::size_t k = 0; k < images.size(); ++k) {
      int y = g.mul(static_cast<int>(x), g.generator_indices()[k]);
      require(rho[x] * images[k] == rho[y], ErrorCode::ActionMismatch,
              "module matrices do not satisfy the group relations");
    }
  return rho;
}

template <class F>
Matrix<F> permutation_matrix(const F& f, const std::vector<int>& perm) {
  int n = static_cast<int>(perm.size());
  Matrix<F> m(f, n, n);
  for (int j = 0; j < n; ++j) m(perm[j], j) = f.one();
  return m;
}

/// zeta I for a primitive n-th root of unity zeta of the field.
inline Matrix<CyclotomicField> cyclic_scalar_generator(const CyclotomicField& f, int n, int dim) {
  return Matrix<CyclotomicField>::scalar(f, dim, CyclotomicNumber::zeta(n));
}
inline Matrix<FiniteField> cyclic_scalar_generator(const FiniteField& f, int n, int dim) {
  require(n > 0 && (f.order() - 1) % n == 0, ErrorCode::NotInRootGroup,
          f.describe() + " has no primitive " + std::to_string(n) + "-th root of unity");
  return Matrix<FiniteField>::scalar(f, dim, f.exp((f.order() - 1) / n));
}

/// Permutation matrices of S_n generated by adjacent transpositions.
template <class F>
std::vector<Matrix<F>> symmetric_generators(const F& f, int n) {
  std::vector<Matrix<F>> gens;
  for (int i = 0; i + 1 < n; ++i) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::swap(p[i], p[i + 1]);
    gens.push_back(permutation_matrix(f, p));
  }
  return gens;
}

/// Dihedral group of order 2n as diag(zeta_n, zeta_n^-1) and the coordinate swap.
template <class F>
std::vector<Matrix<F>> dihedral_generators(const F& f, int n) {
  auto r = cyclic_scalar_generator(f, n, 2);
  r(1, 1) = r(0, 0).inverse();
  return {r, permutation_matrix(f, {1, 0})};
}

/// Splitting data for eigenvalues and Brauer characters. Char 0 values are traces in
/// Q(zeta); char p values are sums of lifts of eigenvalues found over a splitting field.
template <class F>
class CharacterContext;

template <>
class CharacterContext<CyclotomicField> {
 public:
  using E = CyclotomicNumber;
  explicit CharacterContext(const CyclotomicField& f, long long = 1) : field_(f) {}

  CyclotomicNumber brauer_character(const Matrix<CyclotomicField>& x, long long) const { return x.trace(); }
  CyclotomicNumber lift(const E& root) const { return root; }
  bool p_regular(long long) const { return true; }
  std::string fingerprint() const { return "characteristic 0; characters are traces in " + field_.describe(); }

  /// Eigenvalues of x (order d) with multiplicity, in increasing exponent of zeta_d.
  std::vector<CyclotomicNumber> eigenvalues(const Matrix<CyclotomicField>& x, long long d) const {
    std::vector<CyclotomicNumber> out;
    int n = x.rows;
    for (long long j = 0; j < d; ++j) {
      auto z = CyclotomicNumber::zeta(static_cast<int>(d), j);
      int mult = n - rank(x - Matrix<CyclotomicField>::scalar(x.field, n, z));
      for (int k = 0; k < mult; ++k) out.push_back(z);
    }
    require(static_cast<int>(out.size()) == n, ErrorCode::NotSemisimple, "eigenvalue count deficient");
    return out;
  }

 private:
  CyclotomicField field_;
};

template <>
class CharacterContext<FiniteField> {
 public:
  using E = GFElement;
  /// m: lcm of the p'-parts of all element orders that will be evaluated.
  CharacterContext(const FiniteField& f, long long m)
      : field_(f), big_(splitting_extension(f, m)), emb_(f, big_), lift_(big_, m) {}

  const BrauerLiftContext& lift_context() const { return lift_; }
  bool p_regular(long long order) const { return order % field_.characteristic() != 0; }
  std::string fingerprint() const {
    return "Brauer lift over " + field_.describe() + " split in " + lift_.fingerprint();
  }
  CyclotomicNumber lift(const E& root) const { return lift_.lift(emb_(root)); }

  std::vector<CyclotomicNumber> eigenvalues(const Matrix<FiniteField>& x, long long d) const {
    require(p_regular(d), ErrorCode::NotPRegular,
            "element of order " + std::to_string(d) + " is not p-regular");
    require(lift_.m() % d == 0, ErrorCode::NotInRootGroup, "element order does not divide the lift order");
    int n = x.rows;
    Matrix<FiniteField> y(big_, n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) y(i, j) = emb_(x(i, j));
    std::vector<CyclotomicNumber> out;
    long long step = lift_.m() / d;
    for (long long j = 0; j < d; ++j) {
      auto r = lift_.xi().pow(j * step);
      int mult = n - rank(y - Matrix<FiniteField>::scalar(big_, n, r));
      for (int k = 0; k < mult; ++k) out.push_back(lift_.lift(r));
    }
    require(static_cast<int>(out.size()) == n, ErrorCode::NotSemisimple, "eigenvalue count deficient");
    return out;
  }
  CyclotomicNumber brauer_character(const Matrix<FiniteField>& x, long long d) const {
    auto ev = eigenvalues(x, d);
    CyclotomicNumber s(static_cast<int>(lift_.m()));
    for (auto& e : ev) s += e;
    return s;
  }

 private:
  FiniteField field_, big_;
  FieldEmbedding emb_;
  BrauerLiftContext lift_;
};

/// p'-part of n (n itself in characteristic 0).
inline long long p_prime_part(long long n, int p) {
  if (p == 0) return n;
  while (n % p == 0) n /= p;
  return n;
}

template <class F>
long long lift_order_for(const Group<F>& g, long long m = 1) {
  int p = g.field().characteristic();
  for (std::size_t i = 0; i < g.order(); ++i) m = lcm_ll(m, p_prime_part(g.element_order(static_cast<int>(i)), p));
  return m;
}

/// Regular element certificate: g v = omega v and the orbit G v has |G| points.
template <class F>
struct RegularCertificate {
  int element;
  typename F::Element omega;
  long long omega_order;
  Vec<F> vector;
  std::size_t orbit_size;
  bool by_search;  // true when found by a finite sweep rather than exhaustive enumeration
};

template <class F>
bool has_trivial_stabilizer(const Group<F>& g, const Vec<F>& v) {
  for (std::size_t h = 1; h < g.order(); ++h)
    if (g.element(static_cast<int>(h)).apply(v) == v) return false;
  return true;
}

/// Searches the omega-eigenspace of element g for a vector with trivial stabilizer.
template <class F>
RegularCertificate<F> find_regular_certificate(const Group<F>& G, int g, const typename F::Element& omega,
                                               int sweep_bound = 4) {
  const auto& f = G.field();
  int n = G.dim();
  auto es = kernel(G.element(g) - Matrix<F>::scalar(f, n, omega));
  require(es.dim() > 0, ErrorCode::Precondition, omega.to_string() + " is not an eigenvalue");
  long long ord = element_order(omega);
  auto accept = [&](const Vec<F>& c, bool search) -> std::optional<RegularCertificate<F>> {
    auto v = es.combine(c);
    if (std::all_of(v.begin(), v.end(), [](auto& x) { return x.is_zero(); })) return std::nullopt;
    if (!has_trivial_stabilizer(G, v)) return std::nullopt;
    return RegularCertificate<F>{g, omega, ord, v, G.order(), search};
  };
  int k = es.dim();
  if constexpr (std::is_same_v<F, CyclotomicField>) {
    // Coefficients cycle through 1..B, then 0 and negatives, in lexicographic order.
    std::vector<long long> values;
    for (int b = 1; b <= sweep_bound; ++b) values.push_back(b);
    values.push_back(0);
    for (int b = 1; b <= sweep_bound; ++b) values.push_back(-b);
    std::vector<std::size_t> idx(k, 0);
    while (true) {
      Vec<F> c;
      for (int i = 0; i < k; ++i) c.push_back(f.from_int(values[idx[i]]));
      if (auto r = accept(c, true)) return *r;
      int i = k - 1;
      while (i >= 0 && ++idx[i] == values.size()) idx[i--] = 0;
      if (i < 0) break;
    }
  } else {
    long long q = f.order(), total = 1;
    for (int i = 0; i < k; ++i) {
      total *= q;
      require(total <= 1000000, ErrorCode::TooLarge, "eigenspace too large to enumerate");
    }
    for (long long t = 1; t < total; ++t) {
      Vec<F> c;
      for (long long r = t, i = 0; i < k; ++i, r /= q) c.push_back(f.from_index(static_cast<std::uint32_t>(r % q)));
      if (auto r = accept(c, false)) return *r;
    }
  }
  fail(ErrorCode::NotRegular, "no regular vector found in the " + omega.to_string() + "-eigenspace" +
                                  (f.characteristic() == 0 ? " (deterministic sweep, not a proof)" : ""));
}

/// Right cosets Hg of a subgroup, with the right action of a designated element c.
template <class F>
struct CosetSpace {
  const Group<F>* G = nullptr;
  std::vector<int> subgroup;
  std::vector<int> coset_of;  // element -> coset number
  std::vector<int> reps;      // least element of each coset

  CosetSpace(const Group<F>& g, std::vector<int> h) : G(&g), subgroup(std::move(h)) {
    std::sort(subgroup.begin(), subgroup.end());
    coset_of.assign(g.order(), -1);
    for (int x = 0; x < static_cast<int>(g.order()); ++x) {
      if (coset_of[x] >= 0) continue;
      int id = static_cast<int>(reps.size());
      reps.push_back(x);
      for (int h : subgroup) coset_of[g.mul(h, x)] = id;
    }
  }
  std::size_t size() const { return reps.size(); }
  /// Hg -> Hgc.
  int right(int coset, int c) const { return coset_of[G->mul(reps[coset], c)]; }
  /// Hg -> H gamma g, defined for gamma normalizing H.
  int left(int gamma, int coset) const { return coset_of[G->mul(gamma, reps[coset])]; }
  bool normalizes(int gamma) const {
    for (int h : subgroup) {
      int y = G->mul(G->mul(gamma, h), G->inverse(gamma));
      if (!std::binary_search(subgroup.begin(), subgroup.end(), y)) return false;
    }
    return true;
  }
  /// Number of cosets with H g c^j = H g.
  std::size_t fixed_points(int c, long long j) const {
    int cj = 0;
    for (long long k = 0; k < j; ++k) cj = G->mul(cj, c);
    std::size_t n = 0;
    for (std::size_t i = 0; i < size(); ++i)
      if (right(static_cast<int>(i), cj) == static_cast<int>(i)) ++n;
    return n;
  }
};

}  // namespace invt
