#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "invt/rational.hpp"

namespace invt {

/// Largest conductor reachable by automatic embedding of mixed-conductor operands.
inline constexpr long kMaxConductor = 10000;

int euler_phi(int m);

/// Integer coefficients of the m-th cyclotomic polynomial, constant term first.
const std::vector<Rational>& cyclotomic_polynomial(int m);

/// Exact element of Q(zeta_m) stored as a residue modulo Phi_m in the power basis of zeta_m.
///
/// Operands with different conductors are combined in Q(zeta_lcm). Conductor 1 is Q.
class CyclotomicNumber {
 public:
  CyclotomicNumber() : CyclotomicNumber(1) {}
  explicit CyclotomicNumber(int conductor);
  CyclotomicNumber(int conductor, const Rational& value);
  /// Reduces an arbitrary-length coefficient vector modulo Phi_m.
  CyclotomicNumber(int conductor, std::vector<Rational> coeffs);

  static CyclotomicNumber zero(int m) { return CyclotomicNumber(m); }
  static CyclotomicNumber one(int m) { return CyclotomicNumber(m, Rational(1)); }
  /// zeta_m^j for any integer j.
  static CyclotomicNumber zeta(int m, long long j = 1);

  int conductor() const noexcept { return m_; }
  const std::vector<Rational>& coeffs() const noexcept { return c_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  /// Requires is_rational().
  Rational rational_value() const;

  CyclotomicNumber embed(int target) const;
  /// Galois automorphism zeta_m -> zeta_m^s, gcd(s, m) = 1.
  CyclotomicNumber galois(long long s) const;
  CyclotomicNumber inverse() const;
  CyclotomicNumber pow(long long e) const;

  CyclotomicNumber& operator+=(const CyclotomicNumber& o);
  CyclotomicNumber& operator-=(const CyclotomicNumber& o);
  CyclotomicNumber& operator*=(const CyclotomicNumber& o);
  CyclotomicNumber& operator/=(const CyclotomicNumber& o);

  friend CyclotomicNumber operator+(CyclotomicNumber a, const CyclotomicNumber& b) { return a += b; }
  friend CyclotomicNumber operator-(CyclotomicNumber a, const CyclotomicNumber& b) { return a -= b; }
  friend CyclotomicNumber operator*(CyclotomicNumber a, const CyclotomicNumber& b) { return a *= b; }
  friend CyclotomicNumber operator/(CyclotomicNumber a, const CyclotomicNumber& b) { return a /= b; }
  CyclotomicNumber operator-() const;

  friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b);
  friend bool operator!=(const CyclotomicNumber& a, const CyclotomicNumber& b) { return !(a == b); }

  /// Polynomial string in z, e.g. "z^2+1" or "-1/2*z+3"; "0" for zero.
  std::string to_string() const;
  /// Canonical byte key, equal iff the values are equal at the same conductor.
  std::string key() const;
  /// The same value in the smallest cyclotomic field containing it.
  CyclotomicNumber minimal() const;
  /// Conductor-independent text in GAP notation at the minimal conductor, e.g. "-E(4)+1" or "-1/2".
  std::string display() const;

 private:
  int m_;
  std::vector<Rational> c_;
};

std::ostream& operator<<(std::ostream& os, const CyclotomicNumber& x);

/// Lifts a and b to a common conductor (lcm, capped at kMaxConductor).
int common_conductor(int a, int b);

/// Parses a polynomial string in "z" (rational coefficients) as an element of Q(zeta_m).
CyclotomicNumber parse_cyclotomic(std::string_view text, int conductor);

/// Least n >= 1 with x^n = 1; NotARootOfUnity otherwise.
long long element_order(const CyclotomicNumber& x);

/// Field policy for Q(zeta_m). Conductor 1 is the rationals.
class CyclotomicField {
 public:
  using Element = CyclotomicNumber;

  explicit CyclotomicField(int conductor = 1);

  int conductor() const noexcept { return m_; }
  int characteristic() const noexcept { return 0; }
  Element zero() const { return Element(m_); }
  Element one() const { return Element::one(m_); }
  Element from_int(long long v) const { return Element(m_, Rational(static_cast<long>(v))); }
  Element from_rational(const Rational& q) const { return Element(m_, q); }
  Element zeta(long long j = 1) const { return Element::zeta(m_, j); }
  Element parse(std::string_view text) const { return parse_cyclotomic(text, m_); }
  /// Brings a value of any dividing conductor into this field.
  Element coerce(const Element& x) const;
  std::string describe() const;
  bool operator==(const CyclotomicField& o) const { return m_ == o.m_; }

 private:
  int m_;
};

}  // namespace invt
