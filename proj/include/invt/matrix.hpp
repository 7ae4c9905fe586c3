#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "invt/error.hpp"

namespace invt {

template <class F>
using Vec = std::vector<typename F::Element>;

/// Dense row-major matrix over the field policy F.
template <class F>
struct Matrix {
  using E = typename F::Element;

  F field;
  int rows = 0, cols = 0;
  std::vector<E> a;

  Matrix() = default;
  Matrix(const F& f, int r, int c) : field(f), rows(r), cols(c), a(std::size_t(r) * c, f.zero()) {}

  static Matrix identity(const F& f, int n) {
    Matrix m(f, n, n);
    for (int i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
  }
  static Matrix scalar(const F& f, int n, const E& s) {
    Matrix m(f, n, n);
    for (int i = 0; i < n; ++i) m(i, i) = s;
    return m;
  }

  E& operator()(int i, int j) { return a[std::size_t(i) * cols + j]; }
  const E& operator()(int i, int j) const { return a[std::size_t(i) * cols + j]; }

  Vec<F> row(int i) const { return Vec<F>(a.begin() + std::size_t(i) * cols, a.begin() + std::size_t(i + 1) * cols); }
  Vec<F> col(int j) const {
    Vec<F> v;
    v.reserve(rows);
    for (int i = 0; i < rows; ++i) v.push_back((*this)(i, j));
    return v;
  }

  bool is_square() const { return rows == cols; }
  /// Entries brought into the field's canonical representation (common conductor).
  Matrix normalized() const {
    Matrix r = *this;
    for (auto& v : r.a) v = field.coerce(v);
    return r;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    require(x.cols == y.rows, ErrorCode::Precondition, "matrix shape mismatch in product");
    Matrix r(x.field, x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
      for (int k = 0; k < x.cols; ++k) {
        const E& v = x(i, k);
        if (v.is_zero()) continue;
        for (int j = 0; j < y.cols; ++j)
          if (!y(k, j).is_zero()) r(i, j) += v * y(k, j);
      }
    return r;
  }
  friend Matrix operator+(Matrix x, const Matrix& y) {
    for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] += y.a[i];
    return x;
  }
  friend Matrix operator-(Matrix x, const Matrix& y) {
    for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] -= y.a[i];
    return x;
  }
  Matrix scaled(const E& s) const {
    Matrix r = *this;
    for (auto& v : r.a) v = v * s;
    return r;
  }
  Vec<F> apply(const Vec<F>& v) const {
    Vec<F> r(rows, field.zero());
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        if (!v[j].is_zero() && !(*this)(i, j).is_zero()) r[i] += (*this)(i, j) * v[j];
    return r;
  }
  Matrix transpose() const {
    Matrix r(field, cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r(j, i) = (*this)(i, j);
    return r;
  }
  E trace() const {
    E t = field.zero();
    for (int i = 0; i < std::min(rows, cols); ++i) t += (*this)(i, i);
    return t;
  }
  bool is_identity() const {
    if (rows != cols) return false;
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        if (i == j ? !(*this)(i, j).is_one() : !(*this)(i, j).is_zero()) return false;
    return true;
  }
  friend bool operator==(const Matrix& x, const Matrix& y) {
    if (x.rows != y.rows || x.cols != y.cols) return false;
    for (std::size_t i = 0; i < x.a.size(); ++i)
      if (x.a[i] != y.a[i]) return false;
    return true;
  }
  friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }

  std::string key() const {
    std::string k;
    for (auto& v : a) {
      k += v.key();
      k += ';';
    }
    return k;
  }
  std::string to_string() const {
    std::string s = "[";
    for (int i = 0; i < rows; ++i) {
      s += i ? ",[" : "[";
      for (int j = 0; j < cols; ++j) s += (j ? "," : "") + (*this)(i, j).to_string();
      s += "]";
    }
    return s + "]";
  }
};

/// In-place reduced row echelon form with leftmost pivots; returns pivot columns.
template <class F>
std::vector<int> rref(Matrix<F>& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int p = -1;
    for (int i = r; i < m.rows; ++i)
      if (!m(i, c).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m(p, j), m(r, j));
    auto inv = m(r, c).inverse();
    for (int j = c; j < m.cols; ++j)
      if (!m(r, j).is_zero()) m(r, j) = m(r, j) * inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      auto f = m(i, c);
      for (int j = c; j < m.cols; ++j)
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class F>
int rank(Matrix<F> m) {
  return static_cast<int>(rref(m).size());
}

/// Subspace of F^n held as a reduced row echelon basis.
template <class F>
struct Subspace {
  using E = typename F::Element;

  F field;
  int ambient = 0;
  std::vector<Vec<F>> basis;  // rref rows
  std::vector<int> pivots;

  Subspace() = default;
  Subspace(const F& f, int n) : field(f), ambient(n) {}

  static Subspace span(const F& f, int n, const std::vector<Vec<F>>& vectors) {
    Subspace s(f, n);
    if (vectors.empty() || n == 0) return s;
    Matrix<F> m(f, static_cast<int>(vectors.size()), n);
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = vectors[i][j];
    s.pivots = rref(m);
    for (std::size_t i = 0; i < s.pivots.size(); ++i) s.basis.push_back(m.row(static_cast<int>(i)));
    return s;
  }
  static Subspace whole(const F& f, int n) {
    Subspace s(f, n);
    for (int i = 0; i < n; ++i) {
      Vec<F> v(n, f.zero());
      v[i] = f.one();
      s.basis.push_back(std::move(v));
      s.pivots.push_back(i);
    }
    return s;
  }

  int dim() const { return static_cast<int>(basis.size()); }

  /// v minus its projection along the pivot coordinates; zero iff v lies in the span.
  Vec<F> reduce(Vec<F> v) const {
    for (std::size_t i = 0; i < basis.size(); ++i) {
      auto c = v[pivots[i]];
      if (c.is_zero()) continue;
      for (int j = 0; j < ambient; ++j)
        if (!basis[i][j].is_zero()) v[j] -= c * basis[i][j];
    }
    return v;
  }
  bool contains(const Vec<F>& v) const {
    auto r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](const E& x) { return x.is_zero(); });
  }
  /// Coordinates in the rref basis; NotThetaStable-style failures are reported by the caller.
  Vec<F> coords(const Vec<F>& v) const {
    Vec<F> c;
    c.reserve(basis.size());
    for (int p : pivots) c.push_back(v[p]);
    return c;
  }
  bool try_coords(const Vec<F>& v, Vec<F>& out) const {
    if (!contains(v)) return false;
    out = coords(v);
    return true;
  }
  Vec<F> combine(const Vec<F>& c) const {
    Vec<F> v(ambient, field.zero());
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (!c[i].is_zero())
        for (int j = 0; j < ambient; ++j)
          if (!basis[i][j].is_zero()) v[j] += c[i] * basis[i][j];
    return v;
  }
};

/// Null space {x : m x = 0} as an rref basis.
template <class F>
Subspace<F> kernel(Matrix<F> m) {
  auto piv = rref(m);
  std::vector<bool> is_piv(m.cols, false);
  for (int p : piv) is_piv[p] = true;
  std::vector<Vec<F>> vs;
  for (int free = 0; free < m.cols; ++free) {
    if (is_piv[free]) continue;
    Vec<F> v(m.cols, m.field.zero());
    v[free] = m.field.one();
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m(static_cast<int>(i), free);
    vs.push_back(std::move(v));
  }
  return Subspace<F>::span(m.field, m.cols, vs);
}

/// Column space of m as an rref basis of F^rows.
template <class F>
Subspace<F> image(const Matrix<F>& m) {
  std::vector<Vec<F>> vs;
  for (int j = 0; j < m.cols; ++j) vs.push_back(m.col(j));
  return Subspace<F>::span(m.field, m.rows, vs);
}

template <class F>
Subspace<F> intersect(const Subspace<F>& a, const Subspace<F>& b) {
  // Solve sum x_i a_i - sum y_j b_j = 0.
  int n = a.ambient, da = a.dim(), db = b.dim();
  Matrix<F> m(a.field, n, da + db);
  for (int i = 0; i < da; ++i)
    for (int r = 0; r < n; ++r) m(r, i) = a.basis[i][r];
  for (int j = 0; j < db; ++j)
    for (int r = 0; r < n; ++r) m(r, da + j) = -b.basis[j][r];
  auto k = kernel(m);
  std::vector<Vec<F>> vs;
  for (auto& v : k.basis) vs.push_back(a.combine(Vec<F>(v.begin(), v.begin() + da)));
  return Subspace<F>::span(a.field, n, vs);
}

template <class F>
Matrix<F> inverse(const Matrix<F>& m) {
  require(m.is_square(), ErrorCode::Precondition, "inverse of a non-square matrix");
  int n = m.rows;
  Matrix<F> aug(m.field, n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = m.field.one();
  }
  auto piv = rref(aug);
  require(static_cast<int>(piv.size()) >= n && piv[n - 1] == n - 1, ErrorCode::NotInvertible,
          "singular matrix " + m.to_string());
  Matrix<F> r(m.field, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = aug(i, n + j);
  return r;
}

template <class F>
bool is_invertible(const Matrix<F>& m) {
  return m.is_square() && rank(m) == m.rows;
}

template <class F>
Matrix<F> kron(const Matrix<F>& x, const Matrix<F>& y) {
  Matrix<F> r(x.field, x.rows * y.rows, x.cols * y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) {
      if (x(i, j).is_zero()) continue;
      for (int k = 0; k < y.rows; ++k)
        for (int l = 0; l < y.cols; ++l) r(i * y.rows + k, j * y.cols + l) = x(i, j) * y(k, l);
    }
  return r;
}

template <class F>
Matrix<F> direct_sum(const Matrix<F>& x, const Matrix<F>& y) {
  Matrix<F> r(x.field, x.rows + y.rows, x.cols + y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) r(i, j) = x(i, j);
  for (int i = 0; i < y.rows; ++i)
    for (int j = 0; j < y.cols; ++j) r(x.rows + i, x.cols + j) = y(i, j);
  return r;
}

/// Rows of the given matrices one block after another; all must have `cols` columns.
template <class F>
Matrix<F> vstack(const F& f, int cols, const std::vector<Matrix<F>>& ms) {
  int rows = 0;
  for (auto& m : ms) {
    require(m.cols == cols, ErrorCode::Precondition, "matrix shape mismatch in vstack");
    rows += m.rows;
  }
  Matrix<F> r(f, rows, cols);
  std::size_t at = 0;
  for (auto& m : ms) {
    std::copy(m.a.begin(), m.a.end(), r.a.begin() + at);
    at += m.a.size();
  }
  return r;
}

/// Multiplicative order of an invertible matrix; CapExceeded beyond cap.
template <class F>
long long matrix_order(const Matrix<F>& m, long long cap = 100000) {
  auto one = Matrix<F>::identity(m.field, m.rows);
  auto x = m.normalized();
  for (long long k = 1; k <= cap; ++k) {
    if (x == one) return k;
    x = (x * m).normalized();
  }
  fail(ErrorCode::CapExceeded, "matrix order exceeds cap");
}

/// Matrix of the map v -> t v on an invariant subspace, in the subspace's rref basis.
/// Returns false if t does not preserve the subspace.
template <class F>
bool restrict_to(const Matrix<F>& t, const Subspace<F>& s, Matrix<F>& out) {
  int k = s.dim();
  out = Matrix<F>(t.field, k, k);
  for (int j = 0; j < k; ++j) {
    auto img = t.apply(s.basis[j]);
    Vec<F> c;
    if (!s.try_coords(img, c)) return false;
    for (int i = 0; i < k; ++i) out(i, j) = c[i];
  }
  return true;
}

/// Coefficients c_0..c_n of det(x I - m) by Berkowitz's division-free algorithm.
template <class F>
Vec<F> charpoly(const Matrix<F>& m) {
  require(m.is_square(), ErrorCode::Precondition, "charpoly of a non-square matrix");
  const F& f = m.field;
  int n = m.rows;
  // Coefficients kept high-to-low during the recursion.
  Vec<F> c{f.one(), -m(0, 0)};
  if (n == 0) return {f.one()};
  for (int r = 1; r < n; ++r) {
    // Toeplitz column for the leading (r+1)x(r+1) block.
    Vec<F> R(m.a.begin() + std::size_t(r) * n, m.a.begin() + std::size_t(r) * n + r);  // row r, cols < r
    Vec<F> S(r);
    for (int i = 0; i < r; ++i) S[i] = m(i, r);
    Vec<F> t;
    t.push_back(f.one());
    t.push_back(-m(r, r));
    Vec<F> v = S;
    for (int k = 0; k < r; ++k) {
      auto d = f.zero();
      for (int i = 0; i < r; ++i) d += R[i] * v[i];
      t.push_back(-d);
      if (k + 1 < r) {
        Vec<F> w(r, f.zero());
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < r; ++j)
            if (!v[j].is_zero()) w[i] += m(i, j) * v[j];
        v = std::move(w);
      }
    }
    Vec<F> nc(r + 2, f.zero());
    for (int i = 0; i < r + 2; ++i)
      for (int j = 0; j <= i && j < static_cast<int>(c.size()); ++j)
        if (i - j < static_cast<int>(t.size())) nc[i] += t[i - j] * c[j];
    c = std::move(nc);
  }
  std::reverse(c.begin(), c.end());
  return c;
}

}  // namespace invt
