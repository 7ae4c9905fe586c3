#include "invt/brauer.hpp"

#include "invt/error.hpp"
#include "invt/rational.hpp"

namespace invt {

namespace {

long long inverse_mod(long long a, long long m) {
  long long g = m, x = 0, x1 = 1, a1 = ((a % m) + m) % m;
  while (a1 != 0) {
    long long q = g / a1;
    long long t = g - q * a1;
    g = a1;
    a1 = t;
    t = x - q * x1;
    x = x1;
    x1 = t;
  }
  return ((x % m) + m) % m;
}

}  // namespace

BrauerLiftContext::BrauerLiftContext(FiniteField field, long long m) : field_(field), m_(m) {
  long long n = field.order() - 1;
  require(m >= 1 && n % m == 0, ErrorCode::NotInRootGroup,
          "m = " + std::to_string(m) + " does not divide |" + field.describe() + "^x| = " + std::to_string(n));
  require(m <= kMaxConductor, ErrorCode::ConductorMismatch, "lift order exceeds conductor cap");
  xi_ = field.exp(n / m);
  xi_log_unit_ = 1;
}

BrauerLiftContext::BrauerLiftContext(FiniteField field, GFElement xi) : field_(field), xi_(xi) {
  require(xi.tables() == field.tables(), ErrorCode::Precondition, "xi does not lie in the context field");
  m_ = element_order(xi);
  require(m_ <= kMaxConductor, ErrorCode::ConductorMismatch, "lift order exceeds conductor cap");
  long long n = field.order() - 1;
  xi_log_unit_ = field.log(xi) / (n / m_);
}

long long BrauerLiftContext::discrete_log(const GFElement& x) const {
  require(x.tables() == field_.tables(), ErrorCode::Precondition, "element does not lie in the context field");
  require(!x.is_zero() && x.pow(m_).is_one(), ErrorCode::NotInRootGroup,
          x.to_string() + " is not an m-th root of unity for m = " + std::to_string(m_));
  long long n = field_.order() - 1;
  long long step = n / m_;
  long long l = field_.log(x) / step;
  return l * inverse_mod(xi_log_unit_, m_) % m_;
}

CyclotomicNumber BrauerLiftContext::lift(const GFElement& x) const {
  return CyclotomicNumber::zeta(static_cast<int>(m_), discrete_log(x));
}

std::string BrauerLiftContext::fingerprint() const {
  return field_.describe() + "; m=" + std::to_string(m_) + "; xi=" + xi_.to_string() +
         " -> zeta_" + std::to_string(m_) + "=exp(2*pi*i/" + std::to_string(m_) + ")";
}

}  // namespace invt
