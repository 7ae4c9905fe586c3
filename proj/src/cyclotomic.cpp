#include "invt/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <ostream>
#include <sstream>

#include "invt/error.hpp"
#include "invt/matrix.hpp"

namespace invt {

namespace {

using QPoly = std::vector<Rational>;

void trim_poly(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division of a by the monic polynomial b over Q; remainder must vanish.
QPoly exact_divide(QPoly a, const QPoly& b) {
  trim_poly(a);
  std::size_t db = b.size() - 1;
  if (a.size() < b.size()) return {};
  QPoly q(a.size() - db, Rational(0));
  for (std::size_t i = a.size(); i-- > db;) {
    Rational c = a[i];
    if (c == 0) continue;
    q[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  return q;
}

// Remainder of a modulo a monic polynomial of degree >= 1.
void reduce_mod(QPoly& a, const QPoly& mod) {
  std::size_t d = mod.size() - 1;
  for (std::size_t i = a.size(); i-- > d;) {
    if (a[i] == 0) continue;
    Rational c = a[i];
    for (std::size_t j = 0; j <= d; ++j) a[i - d + j] -= c * mod[j];
  }
  a.resize(d, Rational(0));
}

// Quotient and remainder of a by nonzero b over Q.
std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
  trim_poly(a);
  std::size_t db = b.size() - 1;
  if (a.size() < b.size()) return {QPoly{}, a};
  QPoly q(a.size() - db, Rational(0));
  for (std::size_t i = a.size(); i-- > db;) {
    if (a[i] == 0) continue;
    Rational c = a[i] / b.back();
    q[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  trim_poly(a);
  return {q, a};
}

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

int euler_phi(int m) {
  require(m >= 1, ErrorCode::Precondition, "conductor must be positive");
  int result = m, n = m;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

const std::vector<Rational>& cyclotomic_polynomial(int m) {
  require(m >= 1 && m <= kMaxConductor, ErrorCode::ConductorMismatch,
          "conductor " + std::to_string(m) + " outside [1, " + std::to_string(kMaxConductor) + "]");
  static std::map<int, QPoly> cache;
  {
    std::lock_guard<std::mutex> lock(cache_mutex());
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
  }
  // x^m - 1 divided by Phi_d for every proper divisor d.
  QPoly p(m + 1, Rational(0));
  p[0] = -1;
  p[m] = 1;
  for (int d = 1; d < m; ++d)
    if (m % d == 0) p = exact_divide(p, cyclotomic_polynomial(d));
  std::lock_guard<std::mutex> lock(cache_mutex());
  return cache.emplace(m, std::move(p)).first->second;
}

int common_conductor(int a, int b) {
  long long l = lcm_ll(a, b);
  require(l <= kMaxConductor, ErrorCode::ConductorMismatch,
          "common conductor lcm(" + std::to_string(a) + ", " + std::to_string(b) + ") exceeds cap");
  return static_cast<int>(l);
}

CyclotomicNumber::CyclotomicNumber(int conductor) : m_(conductor), c_(euler_phi(conductor), Rational(0)) {}

CyclotomicNumber::CyclotomicNumber(int conductor, const Rational& value) : CyclotomicNumber(conductor) {
  c_[0] = value;
}

CyclotomicNumber::CyclotomicNumber(int conductor, std::vector<Rational> coeffs) : m_(conductor) {
  const QPoly& phi = cyclotomic_polynomial(conductor);
  std::size_t d = phi.size() - 1;
  if (coeffs.size() < d) coeffs.resize(d, Rational(0));
  reduce_mod(coeffs, phi);
  c_ = std::move(coeffs);
}

CyclotomicNumber CyclotomicNumber::zeta(int m, long long j) {
  long long e = ((j % m) + m) % m;
  std::vector<Rational> c(static_cast<std::size_t>(std::max<long long>(e + 1, euler_phi(m))), Rational(0));
  c[static_cast<std::size_t>(e)] = 1;
  return CyclotomicNumber(m, std::move(c));
}

bool CyclotomicNumber::is_zero() const {
  for (const auto& q : c_)
    if (q != 0) return false;
  return true;
}

bool CyclotomicNumber::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

bool CyclotomicNumber::is_one() const { return is_rational() && c_[0] == 1; }

Rational CyclotomicNumber::rational_value() const {
  require(is_rational(), ErrorCode::Precondition, "value " + to_string() + " is not rational");
  return c_[0];
}

CyclotomicNumber CyclotomicNumber::embed(int target) const {
  if (target == m_) return *this;
  require(target % m_ == 0, ErrorCode::ConductorMismatch,
          "cannot embed Q(zeta_" + std::to_string(m_) + ") into Q(zeta_" + std::to_string(target) + ")");
  int step = target / m_;
  std::vector<Rational> c(static_cast<std::size_t>(step) * c_.size() + 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) c[i * step] = c_[i];
  return CyclotomicNumber(target, std::move(c));
}

CyclotomicNumber CyclotomicNumber::galois(long long s) const {
  require(gcd_ll(s, m_) == 1, ErrorCode::Precondition, "Galois exponent must be coprime to the conductor");
  long long sm = ((s % m_) + m_) % m_;
  std::vector<Rational> c(static_cast<std::size_t>(m_), Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) c[(i * sm) % m_] += c_[i];
  return CyclotomicNumber(m_, std::move(c));
}

CyclotomicNumber& CyclotomicNumber::operator+=(const CyclotomicNumber& o) {
  if (o.m_ != m_) {
    int l = common_conductor(m_, o.m_);
    *this = embed(l);
    return *this += o.embed(l);
  }
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

CyclotomicNumber& CyclotomicNumber::operator-=(const CyclotomicNumber& o) {
  if (o.m_ != m_) {
    int l = common_conductor(m_, o.m_);
    *this = embed(l);
    return *this -= o.embed(l);
  }
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

CyclotomicNumber& CyclotomicNumber::operator*=(const CyclotomicNumber& o) {
  if (o.m_ != m_) {
    int l = common_conductor(m_, o.m_);
    *this = embed(l);
    return *this *= o.embed(l);
  }
  if (c_.size() == 1) {
    c_[0] *= o.c_[0];
    return *this;
  }
  std::vector<Rational> prod(2 * c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j)
      if (o.c_[j] != 0) prod[i + j] += c_[i] * o.c_[j];
  }
  reduce_mod(prod, cyclotomic_polynomial(m_));
  c_ = std::move(prod);
  return *this;
}

CyclotomicNumber CyclotomicNumber::inverse() const {
  require(!is_zero(), ErrorCode::NotInvertible, "division by zero in Q(zeta_" + std::to_string(m_) + ")");
  if (c_.size() == 1) return CyclotomicNumber(m_, Rational(1 / c_[0]));
  // Extended Euclid: track s with s * self == r (mod Phi_m).
  QPoly r0 = cyclotomic_polynomial(m_), r1 = c_;
  trim_poly(r1);
  QPoly s0{}, s1{Rational(1)};
  while (r1.size() > 1) {
    auto [q, rem] = divmod(r0, r1);
    trim_poly(rem);
    // s2 = s0 - q * s1
    QPoly s2(std::max(s0.size(), q.size() + s1.size()), Rational(0));
    for (std::size_t i = 0; i < s0.size(); ++i) s2[i] += s0[i];
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
    trim_poly(s2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r1 is a nonzero constant.
  Rational inv_c = 1 / r1[0];
  for (auto& v : s1) v *= inv_c;
  return CyclotomicNumber(m_, std::move(s1));
}

CyclotomicNumber& CyclotomicNumber::operator/=(const CyclotomicNumber& o) { return *this *= o.inverse(); }

CyclotomicNumber CyclotomicNumber::operator-() const {
  CyclotomicNumber r = *this;
  for (auto& q : r.c_) q = -q;
  return r;
}

CyclotomicNumber CyclotomicNumber::pow(long long e) const {
  if (e < 0) return inverse().pow(-e);
  CyclotomicNumber result = one(m_), base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) {
  if (a.m_ != b.m_) {
    int l = common_conductor(a.m_, b.m_);
    return a.embed(l).c_ == b.embed(l).c_;
  }
  return a.c_ == b.c_;
}

std::string CyclotomicNumber::to_string() const {
  std::ostringstream os;
  bool any = false;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const Rational& q = c_[i];
    if (q == 0) continue;
    bool neg = q < 0;
    Rational a = neg ? Rational(-q) : q;
    if (any)
      os << (neg ? "-" : "+");
    else if (neg)
      os << "-";
    if (i == 0) {
      os << invt::to_string(a);
    } else {
      if (a != 1) os << invt::to_string(a) << "*";
      os << "z";
      if (i > 1) os << "^" << i;
    }
    any = true;
  }
  if (!any) os << "0";
  return os.str();
}

std::string CyclotomicNumber::key() const {
  std::string k = std::to_string(m_) + ":";
  for (const auto& q : c_) {
    k += q.get_str();
    k += ',';
  }
  return k;
}

std::ostream& operator<<(std::ostream& os, const CyclotomicNumber& x) { return os << x.to_string(); }

CyclotomicNumber CyclotomicNumber::minimal() const {
  if (is_rational()) return CyclotomicNumber(1, c_[0]);
  for (int d = 2; d < m_; ++d) {
    if (m_ % d != 0) continue;
    bool fixed = true;
    for (int s = 1 + d; s < m_ && fixed; s += d)
      if (gcd_ll(s, m_) == 1) fixed = galois(s) == *this;
    if (!fixed) continue;
    // Solve x = sum a_j zeta_d^j over Q.
    int k = euler_phi(d), n = euler_phi(m_);
    CyclotomicField q;
    Matrix<CyclotomicField> a(q, n, k + 1);
    for (int j = 0; j < k; ++j) {
      auto col = zeta(d, j).embed(m_);
      for (int i = 0; i < n; ++i) a(i, j) = CyclotomicNumber(1, col.c_[i]);
    }
    for (int i = 0; i < n; ++i) a(i, k) = CyclotomicNumber(1, c_[i]);
    auto piv = rref(a);
    std::vector<Rational> sol(k, Rational(0));
    for (std::size_t r = 0; r < piv.size(); ++r)
      if (piv[r] < k) sol[piv[r]] = a(static_cast<int>(r), k).rational_value();
    return CyclotomicNumber(d, std::move(sol));
  }
  return *this;
}

std::string CyclotomicNumber::display() const {
  auto x = minimal();
  if (x.m_ == 1) return invt::to_string(x.c_[0]);
  std::ostringstream os;
  bool any = false;
  std::string root = "E(" + std::to_string(x.m_) + ")";
  for (std::size_t i = x.c_.size(); i-- > 0;) {
    const Rational& q = x.c_[i];
    if (q == 0) continue;
    bool neg = q < 0;
    Rational a = neg ? Rational(-q) : q;
    if (any)
      os << (neg ? "-" : "+");
    else if (neg)
      os << "-";
    if (i == 0) {
      os << invt::to_string(a);
    } else {
      if (a != 1) os << invt::to_string(a) << "*";
      os << root;
      if (i > 1) os << "^" << i;
    }
    any = true;
  }
  return os.str();
}

CyclotomicNumber parse_cyclotomic(std::string_view text, int conductor) {
  std::vector<Rational> c(static_cast<std::size_t>(euler_phi(conductor)), Rational(0));
  for (auto& [coef, e] : parse_univariate_terms(text, 'z')) {
    CyclotomicNumber term = CyclotomicNumber::zeta(conductor, e);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += coef * term.coeffs()[i];
  }
  return CyclotomicNumber(conductor, std::move(c));
}

long long element_order(const CyclotomicNumber& x) {
  require(!x.is_zero(), ErrorCode::NotARootOfUnity, "zero has no multiplicative order");
  // Roots of unity in Q(zeta_m) have order dividing lcm(2, m).
  long long bound = lcm_ll(2, x.conductor());
  CyclotomicNumber p = x;
  for (long long n = 1; n <= bound; ++n) {
    if (p.is_one()) return n;
    p *= x;
  }
  fail(ErrorCode::NotARootOfUnity, "value " + x.to_string() + " is not a root of unity");
}

CyclotomicField::CyclotomicField(int conductor) : m_(conductor) {
  require(conductor >= 1 && conductor <= kMaxConductor, ErrorCode::ConductorMismatch,
          "invalid conductor " + std::to_string(conductor));
}

CyclotomicNumber CyclotomicField::coerce(const CyclotomicNumber& x) const { return x.embed(m_); }

std::string CyclotomicField::describe() const {
  return m_ == 1 ? std::string("Q") : "Q(zeta_" + std::to_string(m_) + ")";
}

}  // namespace invt
