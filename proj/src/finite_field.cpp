#include "invt/finite_field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>

#include "invt/error.hpp"
#include "invt/rational.hpp"

namespace invt {

namespace detail {

struct GFTables {
  int p = 0;
  int k = 0;
  std::uint32_t q = 0;
  std::vector<int> modulus;
  std::vector<std::uint32_t> exp;  // length 2(q-1)
  std::vector<std::uint32_t> log;  // log[0] unused
  std::vector<std::uint32_t> neg;
  std::vector<std::uint32_t> add;  // q*q table when small
  std::vector<std::uint32_t> pow_p;

  std::uint32_t plus(std::uint32_t a, std::uint32_t b) const {
    if (!add.empty()) return add[static_cast<std::size_t>(a) * q + b];
    if (p == 2) return a ^ b;
    std::uint32_t r = 0;
    for (int i = 0; i < k; ++i) {
      std::uint32_t da = a % p, db = b % p;
      a /= p;
      b /= p;
      r += ((da + db) % p) * pow_p[i];
    }
    return r;
  }
  std::uint32_t times(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp[log[a] + log[b]];
  }
};

}  // namespace detail

namespace {

using detail::GFTables;

std::vector<int> to_digits(std::uint32_t v, int p, int k) {
  std::vector<int> d(k);
  for (int i = 0; i < k; ++i) {
    d[i] = static_cast<int>(v % p);
    v /= p;
  }
  return d;
}

std::uint32_t from_digits(const std::vector<int>& d, int p) {
  std::uint32_t v = 0;
  for (std::size_t i = d.size(); i-- > 0;) v = v * p + static_cast<std::uint32_t>(d[i]);
  return v;
}

// Product of residues modulo the monic modulus, digits low to high.
std::vector<int> poly_mulmod(const std::vector<int>& a, const std::vector<int>& b, const std::vector<int>& mod,
                             int p) {
  int k = static_cast<int>(mod.size()) - 1;
  std::vector<long long> prod(2 * k, 0);
  for (int i = 0; i < k; ++i)
    if (a[i])
      for (int j = 0; j < k; ++j) prod[i + j] += static_cast<long long>(a[i]) * b[j];
  for (int i = 2 * k - 1; i >= k; --i) {
    long long c = prod[i] % p;
    if (c == 0) continue;
    for (int j = 0; j <= k; ++j) prod[i - k + j] -= c * mod[j];
  }
  std::vector<int> r(k);
  for (int i = 0; i < k; ++i) r[i] = static_cast<int>(((prod[i] % p) + p) % p);
  return r;
}

long long powmod_ll(long long b, long long e, long long m) {
  long long r = 1 % m;
  b %= m;
  if (b < 0) b += m;
  while (e > 0) {
    if (e & 1) r = static_cast<long long>((__int128)r * b % m);
    b = static_cast<long long>((__int128)b * b % m);
    e >>= 1;
  }
  return r;
}

std::vector<long long> prime_factors(long long n) {
  std::vector<long long> f;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      f.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) f.push_back(n);
  return f;
}

// Remainder of a modulo b over GF(p); b need not be monic.
std::vector<int> poly_rem(std::vector<int> a, const std::vector<int>& b, int p) {
  int db = static_cast<int>(b.size()) - 1;
  while (db >= 0 && b[db] == 0) --db;
  long long inv_lead = powmod_ll(b[db], p - 2, p);
  for (int i = static_cast<int>(a.size()) - 1; i >= db; --i) {
    long long c = (a[i] % p + p) % p * inv_lead % p;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) a[i - db + j] = static_cast<int>(((a[i - db + j] - c * b[j]) % p + p) % p);
  }
  a.resize(static_cast<std::size_t>(std::max(db, 0)));
  return a;
}

std::unique_ptr<GFTables> build_tables(int p, int k, std::vector<int> modulus) {
  auto t = std::make_unique<GFTables>();
  t->p = p;
  t->k = k;
  long long q = 1;
  for (int i = 0; i < k; ++i) q *= p;
  t->q = static_cast<std::uint32_t>(q);
  t->modulus = modulus;
  t->pow_p.resize(k);
  for (int i = 0; i < k; ++i) t->pow_p[i] = i == 0 ? 1 : t->pow_p[i - 1] * p;

  t->neg.resize(q);
  for (std::uint32_t v = 0; v < q; ++v) {
    auto d = to_digits(v, p, k);
    for (auto& x : d) x = (p - x) % p;
    t->neg[v] = from_digits(d, p);
  }

  // Least-index element of multiplicative order q-1.
  auto factors = prime_factors(q - 1);
  auto power = [&](std::vector<int> base, long long e) {
    std::vector<int> r(k, 0);
    r[0] = 1;
    while (e > 0) {
      if (e & 1) r = poly_mulmod(r, base, modulus, p);
      base = poly_mulmod(base, base, modulus, p);
      e >>= 1;
    }
    return r;
  };
  std::vector<int> one(k, 0);
  one[0] = 1;
  std::uint32_t prim = 0;
  for (std::uint32_t v = 1; v < q && prim == 0; ++v) {
    auto d = to_digits(v, p, k);
    bool full = true;
    for (long long r : factors)
      if (power(d, (q - 1) / r) == one) {
        full = false;
        break;
      }
    if (q == 2 || full) prim = v;
  }
  require(prim != 0, ErrorCode::Internal, "no primitive element found");

  t->exp.resize(2 * (q - 1));
  t->log.assign(q, 0);
  std::vector<int> cur = one, pd = to_digits(prim, p, k);
  for (long long i = 0; i < q - 1; ++i) {
    std::uint32_t v = from_digits(cur, p);
    t->exp[i] = v;
    t->exp[i + q - 1] = v;
    t->log[v] = static_cast<std::uint32_t>(i);
    cur = poly_mulmod(cur, pd, modulus, p);
  }
  if (q <= 1024) {
    t->add.resize(static_cast<std::size_t>(q) * q);
    for (std::uint32_t a = 0; a < q; ++a) {
      auto da = to_digits(a, p, k);
      for (std::uint32_t b = 0; b < q; ++b) {
        auto db = to_digits(b, p, k);
        std::vector<int> s(k);
        for (int i = 0; i < k; ++i) s[i] = (da[i] + db[i]) % p;
        t->add[static_cast<std::size_t>(a) * q + b] = from_digits(s, p);
      }
    }
  }
  return t;
}

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::pair<int, std::vector<int>>, std::unique_ptr<GFTables>>& registry() {
  static std::map<std::pair<int, std::vector<int>>, std::unique_ptr<GFTables>> r;
  return r;
}

}  // namespace

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_irreducible(int p, const std::vector<int>& poly) {
  int k = static_cast<int>(poly.size()) - 1;
  if (k < 1) return false;
  if (k == 1) return true;
  // Every monic polynomial of degree 1..k/2 as a trial divisor.
  for (int d = 1; 2 * d <= k; ++d) {
    long long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long long v = 0; v < count; ++v) {
      std::vector<int> div = to_digits(static_cast<std::uint32_t>(v), p, d);
      div.push_back(1);
      auto r = poly_rem(poly, div, p);
      bool zero = true;
      for (int c : r)
        if (c != 0) zero = false;
      if (zero) return false;
    }
  }
  return true;
}

std::vector<int> default_modulus(int p, int k) {
  long long count = 1;
  for (int i = 0; i < k; ++i) count *= p;
  for (long long v = 0; v < count; ++v) {
    auto poly = to_digits(static_cast<std::uint32_t>(v), p, k);
    poly.push_back(1);
    if (is_irreducible(p, poly)) return poly;
  }
  fail(ErrorCode::Internal, "no irreducible polynomial found");
}

FiniteField FiniteField::create(int p, int k, std::vector<int> modulus) {
  require(is_prime(p), ErrorCode::Precondition, "characteristic " + std::to_string(p) + " is not prime");
  require(k >= 1, ErrorCode::Precondition, "extension degree must be positive");
  long long q = 1;
  for (int i = 0; i < k; ++i) {
    q *= p;
    require(q <= kMaxFieldOrder, ErrorCode::TooLarge,
            "field order " + std::to_string(p) + "^" + std::to_string(k) + " exceeds table cap");
  }
  if (modulus.empty()) modulus = default_modulus(p, k);
  for (auto& c : modulus) c = ((c % p) + p) % p;
  require(static_cast<int>(modulus.size()) == k + 1 && modulus.back() == 1, ErrorCode::Precondition,
          "defining polynomial must be monic of degree " + std::to_string(k));
  require(is_irreducible(p, modulus), ErrorCode::NotIrreducible,
          "defining polynomial is reducible over GF(" + std::to_string(p) + ")");
  std::lock_guard<std::mutex> lock(registry_mutex());
  auto key = std::make_pair(p, modulus);
  auto& slot = registry()[key];
  if (!slot) slot = build_tables(p, k, modulus);
  return FiniteField(slot.get());
}

FiniteField FiniteField::create(int p, std::string_view modulus) {
  require(is_prime(p), ErrorCode::Precondition, "characteristic " + std::to_string(p) + " is not prime");
  auto terms = parse_univariate_terms(modulus, 'g');
  require(!terms.empty(), ErrorCode::Parse, "empty defining polynomial");
  long long k = terms.back().second;
  std::vector<int> coeffs(static_cast<std::size_t>(k + 1), 0);
  for (auto& [c, e] : terms) {
    require(c.get_den() == 1, ErrorCode::Parse, "defining polynomial needs integer coefficients");
    mpz_class r = c.get_num() % p;
    coeffs[static_cast<std::size_t>(e)] = static_cast<int>((r.get_si() + p) % p);
  }
  return create(p, static_cast<int>(k), coeffs);
}

int FiniteField::characteristic() const noexcept { return t_->p; }
int FiniteField::degree() const noexcept { return t_->k; }
long long FiniteField::order() const noexcept { return t_->q; }
const std::vector<int>& FiniteField::modulus() const noexcept { return t_->modulus; }

GFElement FiniteField::from_int(long long v) const {
  long long r = ((v % t_->p) + t_->p) % t_->p;
  return GFElement(t_, static_cast<std::uint32_t>(r));
}

GFElement FiniteField::from_index(std::uint32_t v) const {
  require(v < t_->q, ErrorCode::Precondition, "field index out of range");
  return GFElement(t_, v);
}

GFElement FiniteField::from_coeffs(const std::vector<int>& coeffs) const {
  // Reduce an arbitrary-length coefficient list modulo the defining polynomial.
  std::vector<int> a(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) a[i] = ((coeffs[i] % t_->p) + t_->p) % t_->p;
  if (a.size() < static_cast<std::size_t>(t_->k)) a.resize(t_->k, 0);
  auto r = poly_rem(a, t_->modulus, t_->p);
  r.resize(t_->k, 0);
  return GFElement(t_, from_digits(r, t_->p));
}

std::vector<int> FiniteField::coeffs(const GFElement& x) const { return to_digits(x.index(), t_->p, t_->k); }

GFElement FiniteField::generator() const { return from_coeffs({0, 1}); }

GFElement FiniteField::primitive() const { return GFElement(t_, t_->q == 2 ? 1 : t_->exp[1]); }

long long FiniteField::log(const GFElement& x) const {
  require(!x.is_zero(), ErrorCode::NotInvertible, "logarithm of zero");
  return t_->log[x.index()];
}

GFElement FiniteField::exp(long long e) const {
  long long n = static_cast<long long>(t_->q) - 1;
  e = ((e % n) + n) % n;
  return GFElement(t_, t_->exp[static_cast<std::size_t>(e)]);
}

GFElement FiniteField::parse(std::string_view text) const {
  GFElement acc = zero();
  GFElement g = generator();
  for (auto& [c, e] : parse_univariate_terms(text, 'g')) {
    long long den = mpz_class(c.get_den() % t_->p).get_si();
    require(den != 0, ErrorCode::Parse, "coefficient denominator divisible by characteristic");
    long long num = mpz_class(c.get_num() % t_->p).get_si();
    GFElement coef = from_int(num) / from_int(den);
    acc += coef * g.pow(e);
  }
  return acc;
}

std::string FiniteField::describe() const {
  std::string s = "GF(" + std::to_string(t_->p);
  if (t_->k > 1) {
    s += "^" + std::to_string(t_->k) + "; ";
    std::ostringstream os;
    bool any = false;
    for (int i = t_->k; i >= 0; --i) {
      int c = t_->modulus[i];
      if (c == 0) continue;
      if (any) os << "+";
      if (i == 0 || c != 1) os << c;
      if (i > 0 && c != 1) os << "*";
      if (i > 0) os << "g";
      if (i > 1) os << "^" << i;
      any = true;
    }
    s += os.str();
  }
  return s + ")";
}

GFElement operator+(const GFElement& a, const GFElement& b) {
  return GFElement(a.f_, a.f_->plus(a.v_, b.v_));
}

GFElement operator-(const GFElement& a, const GFElement& b) {
  return GFElement(a.f_, a.f_->plus(a.v_, a.f_->neg[b.v_]));
}

GFElement operator*(const GFElement& a, const GFElement& b) {
  return GFElement(a.f_, a.f_->times(a.v_, b.v_));
}

GFElement GFElement::operator-() const { return GFElement(f_, f_->neg[v_]); }

GFElement GFElement::inverse() const {
  require(v_ != 0, ErrorCode::NotInvertible, "division by zero in finite field");
  std::uint32_t n = f_->q - 1;
  return GFElement(f_, f_->exp[(n - f_->log[v_]) % n]);
}

GFElement GFElement::pow(long long e) const {
  if (v_ == 0) {
    require(e >= 0, ErrorCode::NotInvertible, "negative power of zero");
    return GFElement(f_, e == 0 ? 1 : 0);
  }
  long long n = static_cast<long long>(f_->q) - 1;
  long long l = static_cast<long long>(f_->log[v_]);
  long long r = static_cast<long long>((static_cast<__int128>(l) * (((e % n) + n) % n)) % n);
  return GFElement(f_, f_->exp[static_cast<std::size_t>(r)]);
}

std::string GFElement::to_string() const {
  if (f_ == nullptr) return "0";
  auto d = to_digits(v_, f_->p, f_->k);
  std::ostringstream os;
  bool any = false;
  for (int i = f_->k - 1; i >= 0; --i) {
    if (d[i] == 0) continue;
    if (any) os << "+";
    if (i == 0 || d[i] != 1) os << d[i];
    if (i > 0 && d[i] != 1) os << "*";
    if (i > 0) os << "g";
    if (i > 1) os << "^" << i;
    any = true;
  }
  if (!any) os << "0";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const GFElement& x) { return os << x.to_string(); }

long long element_order(const GFElement& x) {
  require(!x.is_zero(), ErrorCode::NotARootOfUnity, "zero has no multiplicative order");
  FiniteField f = FiniteField::create(x.tables()->p, x.tables()->k, x.tables()->modulus);
  long long n = f.order() - 1;
  return n / gcd_ll(f.log(x), n);
}

FieldEmbedding::FieldEmbedding(const FiniteField& small, const FiniteField& big) : small_(small), big_(big) {
  require(small.characteristic() == big.characteristic() && big.degree() % small.degree() == 0,
          ErrorCode::Precondition, small.describe() + " does not embed in " + big.describe());
  // Least-index root of the small modulus in the big field.
  const auto& mod = small.modulus();
  std::uint32_t root = 0;
  bool found = false;
  for (std::uint32_t v = 0; v < big.order() && !found; ++v) {
    GFElement x = big.from_index(v), acc = big.zero();
    for (std::size_t i = mod.size(); i-- > 0;) acc = acc * x + big.from_int(mod[i]);
    if (acc.is_zero()) {
      root = v;
      found = true;
    }
  }
  require(found, ErrorCode::Internal, "defining polynomial has no root in extension");
  GFElement r = big.from_index(root);
  map_.resize(small.order());
  for (std::uint32_t v = 0; v < small.order(); ++v) {
    auto d = small.coeffs(small.from_index(v));
    GFElement acc = big.zero();
    for (std::size_t i = d.size(); i-- > 0;) acc = acc * r + big.from_int(d[i]);
    map_[v] = acc.index();
  }
}

GFElement FieldEmbedding::operator()(const GFElement& x) const {
  require(x.tables() == small_.tables(), ErrorCode::Precondition, "element not in embedding source field");
  return big_.from_index(map_[x.index()]);
}

FiniteField splitting_extension(const FiniteField& base, long long e) {
  require(e >= 1, ErrorCode::Precondition, "root-of-unity order must be positive");
  require(e % base.characteristic() != 0, ErrorCode::NotPRegular,
          "roots of unity of order divisible by the characteristic do not exist");
  long long q = base.order();
  long long acc = q % e;
  int s = 1;
  while ((acc - 1 + e) % e != 0) {
    acc = acc * (q % e) % e;
    ++s;
  }
  if (s == 1) return base;
  return FiniteField::create(base.characteristic(), base.degree() * s);
}

}  // namespace invt
