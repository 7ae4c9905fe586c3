#pragma once

#include <optional>
#include <string>
#include <vector>

#include "invt/cyclotomic.hpp"
#include "invt/error.hpp"

namespace invt {

/// Univariate polynomial in t over Q(zeta), constant term first, no trailing zeros.
using CPoly = std::vector<CyclotomicNumber>;

namespace cpoly {

CPoly trim(CPoly p);
int degree(const CPoly& p);  // -1 for zero
CPoly constant(const CyclotomicNumber& c);
CPoly monomial(const CyclotomicNumber& c, int k);
CPoly from_ints(const std::vector<long long>& c);
CPoly add(const CPoly& a, const CPoly& b);
CPoly sub(const CPoly& a, const CPoly& b);
CPoly mul(const CPoly& a, const CPoly& b);
CPoly scale(const CPoly& a, const CyclotomicNumber& c);
/// Quotient and remainder; DivisionByZeroSeries for b = 0.
std::pair<CPoly, CPoly> divmod(const CPoly& a, const CPoly& b);
/// Monic gcd by the Euclidean algorithm.
CPoly gcd(const CPoly& a, const CPoly& b);
CyclotomicNumber eval(const CPoly& p, const CyclotomicNumber& x);
CPoly galois(const CPoly& p, long long s);
/// 1 - t^d.
CPoly one_minus_t_pow(int d);
std::string to_string(const CPoly& p, char var = 't');

}  // namespace cpoly

struct Evaluation {
  bool pole = false;
  int pole_order = 0;
  CyclotomicNumber value;
};

/// num/den with gcd removed and den monic.
class RationalFunction {
 public:
  RationalFunction() : num_{}, den_{CyclotomicNumber::one(1)} {}
  RationalFunction(CPoly num, CPoly den);
  static RationalFunction polynomial(CPoly p) { return RationalFunction(std::move(p), {CyclotomicNumber::one(1)}); }

  const CPoly& num() const { return num_; }
  const CPoly& den() const { return den_; }
  bool is_zero() const { return num_.empty(); }
  bool is_polynomial() const { return cpoly::degree(den_) == 0; }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  friend bool operator==(const RationalFunction& a, const RationalFunction& b);
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

  /// Value at a point with the pole order there (0 when regular).
  Evaluation evaluate_checked(const CyclotomicNumber& x) const;
  /// PoleAtPoint if x is a pole.
  CyclotomicNumber evaluate(const CyclotomicNumber& x) const;
  RationalFunction galois(long long s) const;
  /// Power series coefficients c_0..c_D; den(0) must be nonzero.
  std::vector<CyclotomicNumber> expand(int D) const;
  /// "num / den" with rational denominators cleared to integers.
  std::string to_string() const;

 private:
  CPoly num_, den_;
};

/// Coefficients c_0..c_D; operations truncate at the smaller D.
class TruncatedSeries {
 public:
  TruncatedSeries() = default;
  TruncatedSeries(std::vector<CyclotomicNumber> c, int D);
  static TruncatedSeries from_ints(const std::vector<long long>& c, int D);
  static TruncatedSeries from_rational(const RationalFunction& f, int D) { return {f.expand(D), D}; }

  int truncation() const { return D_; }
  const CyclotomicNumber& operator[](int d) const { return c_[d]; }
  const std::vector<CyclotomicNumber>& coeffs() const { return c_; }

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  /// DivisionByZeroSeries if b's constant term vanishes.
  friend TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b);
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

  TruncatedSeries times_poly(const CPoly& p) const;
  std::string to_string() const;

 private:
  std::vector<CyclotomicNumber> c_;
  int D_ = -1;
};

struct HilbertFit {
  TruncatedSeries series;
  CPoly numerator;  // series * prod(1 - t^{d_i}), truncated
  std::optional<RationalFunction> closed_form;
  int window_low = 0;  // numerator checked to vanish in (window_low, D]
};

/// Fits dims against the denominator prod(1 - t^{d_i}). The numerator must vanish in
/// (bound, D], where bound defaults to sum(d_i) - #d_i; NoStabilization otherwise.
HilbertFit hilbert_from_dims(const std::vector<long long>& dims, const std::vector<int>& degrees,
                             std::optional<int> numerator_bound = std::nullopt);

/// X_{M,R}(t) = Hilb(M) / Hilb(R).
RationalFunction quotient_X(const RationalFunction& m, const RationalFunction& r);

/// Rational function whose expansion agrees with s through its truncation, with
/// deg num + deg den <= D - slack; nullopt if none exists.
std::optional<RationalFunction> rational_reconstruct(const TruncatedSeries& s, int slack = 2);

}  // namespace invt
