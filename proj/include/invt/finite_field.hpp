#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace invt {

namespace detail {
struct GFTables;
}

/// Largest field order for which log/exp tables are built.
inline constexpr long long kMaxFieldOrder = 1 << 20;

/// Element of GF(p^k). The index is the base-p encoding of the residue polynomial
/// (constant coefficient least significant). Field tables are interned and live for
/// the whole process, so elements never dangle.
class GFElement {
 public:
  GFElement() = default;
  GFElement(const detail::GFTables* field, std::uint32_t index) : f_(field), v_(index) {}

  std::uint32_t index() const noexcept { return v_; }
  const detail::GFTables* tables() const noexcept { return f_; }
  bool is_zero() const noexcept { return v_ == 0; }
  bool is_one() const noexcept { return v_ == 1; }

  GFElement inverse() const;
  GFElement pow(long long e) const;

  GFElement& operator+=(const GFElement& o) { return *this = *this + o; }
  GFElement& operator-=(const GFElement& o) { return *this = *this - o; }
  GFElement& operator*=(const GFElement& o) { return *this = *this * o; }
  GFElement& operator/=(const GFElement& o) { return *this = *this / o; }

  friend GFElement operator+(const GFElement& a, const GFElement& b);
  friend GFElement operator-(const GFElement& a, const GFElement& b);
  friend GFElement operator*(const GFElement& a, const GFElement& b);
  friend GFElement operator/(const GFElement& a, const GFElement& b) { return a * b.inverse(); }
  GFElement operator-() const;

  friend bool operator==(const GFElement& a, const GFElement& b) { return a.v_ == b.v_ && a.f_ == b.f_; }
  friend bool operator!=(const GFElement& a, const GFElement& b) { return !(a == b); }

  /// Polynomial string in g with coefficients in 0..p-1, e.g. "2*g+1".
  std::string to_string() const;
  std::string key() const { return std::to_string(v_); }

 private:
  const detail::GFTables* f_ = nullptr;
  std::uint32_t v_ = 0;
};

std::ostream& operator<<(std::ostream& os, const GFElement& x);

/// Field policy for GF(p^k) given by a monic irreducible defining polynomial over GF(p).
class FiniteField {
 public:
  using Element = GFElement;

  /// GF(2); placeholder for default-constructed containers.
  FiniteField() : FiniteField(create(2, 1)) {}

  /// modulus: coefficients c_0..c_k with c_k = 1; empty selects the default
  /// (lexicographically first monic irreducible of degree k).
  static FiniteField create(int p, int k, std::vector<int> modulus = {});
  /// Modulus given as a polynomial string in g, e.g. "g^2+1".
  static FiniteField create(int p, std::string_view modulus);

  int characteristic() const noexcept;
  int degree() const noexcept;
  long long order() const noexcept;
  const std::vector<int>& modulus() const noexcept;

  Element zero() const { return Element(t_, 0); }
  Element one() const { return Element(t_, 1); }
  Element from_int(long long v) const;
  Element from_index(std::uint32_t v) const;
  Element from_coeffs(const std::vector<int>& coeffs) const;
  std::vector<int> coeffs(const Element& x) const;
  /// The class of the variable modulo the defining polynomial.
  Element generator() const;
  /// A fixed multiplicative generator (least index of full order).
  Element primitive() const;
  /// Discrete logarithm base primitive(); x must be nonzero.
  long long log(const Element& x) const;
  Element exp(long long e) const;
  /// Polynomial string in g; rational coefficients must have denominators prime to p.
  Element parse(std::string_view text) const;
  std::string describe() const;
  Element coerce(const Element& x) const { return x; }
  const detail::GFTables* tables() const noexcept { return t_; }

  bool operator==(const FiniteField& o) const { return t_ == o.t_; }
  bool operator!=(const FiniteField& o) const { return t_ != o.t_; }

 private:
  explicit FiniteField(const detail::GFTables* t) : t_(t) {}
  const detail::GFTables* t_;
};

bool is_prime(long long n);
/// Trial-division irreducibility test over GF(p); coefficients low to high.
bool is_irreducible(int p, const std::vector<int>& poly);
std::vector<int> default_modulus(int p, int k);

/// Least n >= 1 with x^n = 1.
long long element_order(const GFElement& x);

/// Ring embedding GF(p^k) -> GF(p^K), k | K, sending g to the least-index root of the
/// small field's defining polynomial in the big field.
class FieldEmbedding {
 public:
  FieldEmbedding(const FiniteField& small, const FiniteField& big);
  GFElement operator()(const GFElement& x) const;
  const FiniteField& source() const { return small_; }
  const FiniteField& target() const { return big_; }

 private:
  FiniteField small_, big_;
  std::vector<std::uint32_t> map_;
};

/// GF(p^(k*s)) for the least s with e | p^(k*s) - 1.
FiniteField splitting_extension(const FiniteField& base, long long e);

}  // namespace invt
