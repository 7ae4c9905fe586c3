#include "invt/series.hpp"

#include <algorithm>
#include <sstream>

namespace invt {

namespace cpoly {

namespace {
const CyclotomicNumber kZero(1);
}

CPoly trim(CPoly p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  return p;
}

int degree(const CPoly& p) { return static_cast<int>(p.size()) - 1; }

CPoly constant(const CyclotomicNumber& c) { return trim({c}); }

CPoly monomial(const CyclotomicNumber& c, int k) {
  if (c.is_zero()) return {};
  CPoly p(k + 1, kZero);
  p[k] = c;
  return p;
}

CPoly from_ints(const std::vector<long long>& c) {
  CPoly p;
  for (long long v : c) p.emplace_back(1, Rational(static_cast<long>(v)));
  return trim(std::move(p));
}

CPoly add(const CPoly& a, const CPoly& b) {
  CPoly r(std::max(a.size(), b.size()), kZero);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return trim(std::move(r));
}

CPoly sub(const CPoly& a, const CPoly& b) {
  CPoly r(std::max(a.size(), b.size()), kZero);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return trim(std::move(r));
}

CPoly mul(const CPoly& a, const CPoly& b) {
  if (a.empty() || b.empty()) return {};
  CPoly r(a.size() + b.size() - 1, kZero);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!b[j].is_zero()) r[i + j] += a[i] * b[j];
  }
  return trim(std::move(r));
}

CPoly scale(const CPoly& a, const CyclotomicNumber& c) {
  CPoly r = a;
  for (auto& x : r) x *= c;
  return trim(std::move(r));
}

std::pair<CPoly, CPoly> divmod(const CPoly& a, const CPoly& b) {
  require(!b.empty(), ErrorCode::DivisionByZeroSeries, "polynomial division by zero");
  CPoly r = trim(a);
  if (r.size() < b.size()) return {{}, r};
  CPoly q(r.size() - b.size() + 1, kZero);
  auto lead_inv = b.back().inverse();
  for (std::size_t i = r.size(); i-- >= b.size();) {
    if (r[i].is_zero()) continue;
    auto c = r[i] * lead_inv;
    q[i - (b.size() - 1)] = c;
    for (std::size_t j = 0; j < b.size(); ++j) r[i - (b.size() - 1) + j] -= c * b[j];
  }
  return {trim(std::move(q)), trim(std::move(r))};
}

CPoly gcd(const CPoly& a, const CPoly& b) {
  CPoly x = trim(a), y = trim(b);
  while (!y.empty()) {
    auto r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  if (x.empty()) return {};
  return scale(x, x.back().inverse());
}

CyclotomicNumber eval(const CPoly& p, const CyclotomicNumber& x) {
  CyclotomicNumber r(1);
  for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i];
  return r;
}

CPoly galois(const CPoly& p, long long s) {
  CPoly r;
  for (auto& c : p) r.push_back(c.galois(s));
  return r;
}

CPoly one_minus_t_pow(int d) {
  CPoly p(d + 1, kZero);
  p[0] = CyclotomicNumber::one(1);
  p[d] = p[d] - CyclotomicNumber::one(1);
  return trim(std::move(p));
}

std::string to_string(const CPoly& p, char var) {
  if (p.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i].is_zero()) continue;
    std::string c = p[i].display();
    bool rational = p[i].is_rational();
    bool neg = rational && c[0] == '-';
    if (neg) c = c.substr(1);
    if (!rational) c = "(" + c + ")";
    std::string mono = i == 0 ? "" : i == 1 ? std::string(1, var) : std::string(1, var) + "^" + std::to_string(i);
    std::string term = mono.empty() ? c : (c == "1" ? mono : c + "*" + mono);
    if (s.empty())
      s = (neg ? "-" : "") + term;
    else
      s += (neg ? " - " : " + ") + term;
  }
  return s;
}

}  // namespace cpoly

RationalFunction::RationalFunction(CPoly num, CPoly den) {
  num = cpoly::trim(std::move(num));
  den = cpoly::trim(std::move(den));
  require(!den.empty(), ErrorCode::DivisionByZeroSeries, "rational function with zero denominator");
  if (num.empty()) {
    num_ = {};
    den_ = {CyclotomicNumber::one(1)};
    return;
  }
  auto g = cpoly::gcd(num, den);
  if (cpoly::degree(g) > 0) {
    num = cpoly::divmod(num, g).first;
    den = cpoly::divmod(den, g).first;
  }
  auto lead = den.back().inverse();
  num_ = cpoly::scale(num, lead);
  den_ = cpoly::scale(den, lead);
  for (auto& c : num_) c = c.minimal();
  for (auto& c : den_) c = c.minimal();
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  return {cpoly::add(cpoly::mul(a.num_, b.den_), cpoly::mul(b.num_, a.den_)), cpoly::mul(a.den_, b.den_)};
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
  return {cpoly::sub(cpoly::mul(a.num_, b.den_), cpoly::mul(b.num_, a.den_)), cpoly::mul(a.den_, b.den_)};
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return {cpoly::mul(a.num_, b.num_), cpoly::mul(a.den_, b.den_)};
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  require(!b.is_zero(), ErrorCode::DivisionByZeroSeries, "division by the zero series");
  return {cpoly::mul(a.num_, b.den_), cpoly::mul(a.den_, b.num_)};
}

bool operator==(const RationalFunction& a, const RationalFunction& b) {
  return a.num_ == b.num_ && a.den_ == b.den_;
}

Evaluation RationalFunction::evaluate_checked(const CyclotomicNumber& x) const {
  Evaluation e;
  CPoly d = den_;
  CPoly lin{-x, CyclotomicNumber::one(1)};
  while (cpoly::eval(d, x).is_zero()) {
    ++e.pole_order;
    d = cpoly::divmod(d, lin).first;
  }
  e.pole = e.pole_order > 0;
  e.value = e.pole ? CyclotomicNumber(1) : (cpoly::eval(num_, x) / cpoly::eval(den_, x)).minimal();
  return e;
}

CyclotomicNumber RationalFunction::evaluate(const CyclotomicNumber& x) const {
  auto e = evaluate_checked(x);
  require(!e.pole, ErrorCode::PoleAtPoint,
          to_string() + " has a pole of order " + std::to_string(e.pole_order) + " at t = " + x.display());
  return e.value;
}

RationalFunction RationalFunction::galois(long long s) const {
  return {cpoly::galois(num_, s), cpoly::galois(den_, s)};
}

std::vector<CyclotomicNumber> RationalFunction::expand(int D) const {
  require(!den_[0].is_zero(), ErrorCode::DivisionByZeroSeries, "denominator vanishes at t = 0");
  auto inv0 = den_[0].inverse();
  std::vector<CyclotomicNumber> c(D + 1, CyclotomicNumber(1));
  for (int d = 0; d <= D; ++d) {
    CyclotomicNumber s = d < static_cast<int>(num_.size()) ? num_[d] : CyclotomicNumber(1);
    for (int k = 1; k <= d && k < static_cast<int>(den_.size()); ++k) s -= den_[k] * c[d - k];
    c[d] = (s * inv0).minimal();
  }
  return c;
}

std::string RationalFunction::to_string() const {
  // Scale to den(0) = 1 when possible, then clear rational denominators.
  CPoly n = num_, d = den_;
  if (!d[0].is_zero()) {
    auto s = d[0].inverse();
    n = cpoly::scale(n, s);
    d = cpoly::scale(d, s);
  }
  bool rational = true;
  Integer l = 1;
  for (const auto* p : {&n, &d})
    for (auto& c : *p) {
      if (!c.is_rational()) {
        rational = false;
        continue;
      }
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.rational_value().get_den_mpz_t());
    }
  if (rational && l != 1) {
    CyclotomicNumber s(1, Rational(l));
    n = cpoly::scale(n, s);
    d = cpoly::scale(d, s);
  }
  if (cpoly::degree(d) == 0 && d[0].is_one()) return cpoly::to_string(n);
  return "(" + cpoly::to_string(n) + ") / (" + cpoly::to_string(d) + ")";
}

TruncatedSeries::TruncatedSeries(std::vector<CyclotomicNumber> c, int D) : c_(std::move(c)), D_(D) {
  c_.resize(D + 1, CyclotomicNumber(1));
  for (auto& x : c_) x = x.minimal();
}

TruncatedSeries TruncatedSeries::from_ints(const std::vector<long long>& c, int D) {
  std::vector<CyclotomicNumber> v;
  for (int d = 0; d <= D && d < static_cast<int>(c.size()); ++d) v.emplace_back(1, Rational(static_cast<long>(c[d])));
  return {v, D};
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  int D = std::min(a.D_, b.D_);
  std::vector<CyclotomicNumber> c;
  for (int d = 0; d <= D; ++d) c.push_back(a.c_[d] + b.c_[d]);
  return {c, D};
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
  int D = std::min(a.D_, b.D_);
  std::vector<CyclotomicNumber> c;
  for (int d = 0; d <= D; ++d) c.push_back(a.c_[d] - b.c_[d]);
  return {c, D};
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  int D = std::min(a.D_, b.D_);
  std::vector<CyclotomicNumber> c(D + 1, CyclotomicNumber(1));
  for (int i = 0; i <= D; ++i) {
    if (a.c_[i].is_zero()) continue;
    for (int j = 0; i + j <= D; ++j)
      if (!b.c_[j].is_zero()) c[i + j] += a.c_[i] * b.c_[j];
  }
  return {c, D};
}

TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b) {
  int D = std::min(a.D_, b.D_);
  require(D < 0 || !b.c_[0].is_zero(), ErrorCode::DivisionByZeroSeries, "series divisor has zero constant term");
  std::vector<CyclotomicNumber> c(D + 1, CyclotomicNumber(1));
  if (D < 0) return {c, D};
  auto inv0 = b.c_[0].inverse();
  for (int d = 0; d <= D; ++d) {
    auto s = a.c_[d];
    for (int k = 1; k <= d; ++k)
      if (!b.c_[k].is_zero()) s -= b.c_[k] * c[d - k];
    c[d] = s * inv0;
  }
  return {c, D};
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
  int D = std::min(a.D_, b.D_);
  for (int d = 0; d <= D; ++d)
    if (a.c_[d] != b.c_[d]) return false;
  return true;
}

TruncatedSeries TruncatedSeries::times_poly(const CPoly& p) const {
  std::vector<CyclotomicNumber> c(D_ + 1, CyclotomicNumber(1));
  for (int i = 0; i <= D_; ++i)
    for (int j = 0; j < static_cast<int>(p.size()) && i + j <= D_; ++j) c[i + j] += c_[i] * p[j];
  return {c, D_};
}

std::string TruncatedSeries::to_string() const {
  CPoly p(c_.begin(), c_.end());
  auto body = cpoly::to_string(cpoly::trim(p));
  return body + " + O(t^" + std::to_string(D_ + 1) + ")";
}

HilbertFit hilbert_from_dims(const std::vector<long long>& dims, const std::vector<int>& degrees,
                             std::optional<int> numerator_bound) {
  require(!dims.empty(), ErrorCode::Precondition, "no dimensions supplied");
  int D = static_cast<int>(dims.size()) - 1;
  HilbertFit fit{TruncatedSeries::from_ints(dims, D), {}, std::nullopt, 0};
  if (degrees.empty()) return fit;
  CPoly den{CyclotomicNumber::one(1)};
  int sum = 0;
  for (int d : degrees) {
    require(d >= 1, ErrorCode::Precondition, "denominator degrees must be positive");
    den = cpoly::mul(den, cpoly::one_minus_t_pow(d));
    sum += d;
  }
  auto prod = fit.series.times_poly(den);
  fit.numerator = cpoly::trim(prod.coeffs());
  fit.window_low = numerator_bound.value_or(sum - static_cast<int>(degrees.size()));
  require(fit.window_low < D, ErrorCode::NoStabilization,
          "truncation " + std::to_string(D) + " leaves no stabilization window above degree " +
              std::to_string(fit.window_low));
  for (int d = std::max(fit.window_low + 1, 0); d <= D; ++d)
    require(prod[d].is_zero(), ErrorCode::NoStabilization,
            "numerator coefficient at t^" + std::to_string(d) + " is nonzero; no stabilization within truncation");
  fit.closed_form = RationalFunction(fit.numerator, den);
  return fit;
}

RationalFunction quotient_X(const RationalFunction& m, const RationalFunction& r) { return m / r; }

std::optional<RationalFunction> rational_reconstruct(const TruncatedSeries& s, int slack) {
  int N = s.truncation() + 1;
  CPoly r0 = cpoly::monomial(CyclotomicNumber::one(1), N);
  CPoly r1 = cpoly::trim(s.coeffs());
  if (r1.empty()) return RationalFunction();
  CPoly u0{}, u1{CyclotomicNumber::one(1)};
  std::optional<std::pair<CPoly, CPoly>> best;
  int best_total = N;
  while (!r1.empty()) {
    int total = cpoly::degree(r1) + cpoly::degree(u1);
    if (total < best_total && !u1[0].is_zero()) {
      best_total = total;
      best = {r1, u1};
    }
    auto [q, rem] = cpoly::divmod(r0, r1);
    auto u2 = cpoly::sub(u0, cpoly::mul(q, u1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
  if (!best || best_total > N - 1 - slack) return std::nullopt;
  RationalFunction f(best->first, best->second);
  if (!(TruncatedSeries::from_rational(f, s.truncation()) == s)) return std::nullopt;
  return f;
}

}  // namespace invt
