#pragma once

#include <string>

#include "invt/cyclotomic.hpp"
#include "invt/finite_field.hpp"

namespace invt {

/// Fixes one pair (xi, zeta_m): xi a primitive m-th root of unity in a finite field and
/// zeta_m = exp(2 pi i / m). Every lift in a session goes through one context, so
/// Brauer character values are comparable.
class BrauerLiftContext {
 public:
  /// xi = primitive^((q-1)/m); m must divide q-1.
  BrauerLiftContext(FiniteField field, long long m);
  /// Explicit xi; m is its multiplicative order.
  BrauerLiftContext(FiniteField field, GFElement xi);

  const FiniteField& field() const noexcept { return field_; }
  long long m() const noexcept { return m_; }
  const GFElement& xi() const noexcept { return xi_; }
  CyclotomicNumber zeta_hat() const { return CyclotomicNumber::zeta(static_cast<int>(m_), 1); }

  /// j in [0, m) with xi^j = x; NotInRootGroup unless x^m = 1.
  long long discrete_log(const GFElement& x) const;
  /// zeta_m^j where xi^j = x.
  CyclotomicNumber lift(const GFElement& x) const;

  /// Human-readable record of the chosen pair, printed in every report.
  std::string fingerprint() const;

 private:
  FiniteField field_;
  long long m_;
  GFElement xi_;
  long long xi_log_unit_;  // xi = primitive^((q-1)/m * unit)
};

}  // namespace invt
