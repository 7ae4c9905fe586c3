#include "invt/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <map>

#include "invt/error.hpp"

namespace invt {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
    s = trim(s);
  }
  auto slash = s.find('/');
  std::string_view num = trim(s.substr(0, slash));
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : trim(s.substr(slash + 1));
  if (!all_digits(num) || !all_digits(den))
    fail(ErrorCode::Parse, "malformed rational literal '" + std::string(text) + "'");
  Integer n{std::string(num)}, d{std::string(den)};
  if (d == 0) fail(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::vector<std::pair<Rational, long long>> parse_univariate_terms(std::string_view text, char var) {
  std::map<long long, Rational> acc;
  std::string_view s = trim(text);
  if (s.empty()) fail(ErrorCode::Parse, "empty polynomial literal");
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  };
  bool first = true;
  while (true) {
    skip();
    if (pos >= s.size()) break;
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
      negative = s[pos] == '-';
      ++pos;
      skip();
    } else if (!first) {
      fail(ErrorCode::Parse, "expected '+' or '-' at column " + std::to_string(pos + 1) + " in '" +
                                 std::string(text) + "'");
    }
    first = false;
    std::size_t start = pos;
    while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/' ||
                              std::isspace(static_cast<unsigned char>(s[pos]))))
      ++pos;
    std::string_view coef_text = trim(s.substr(start, pos - start));
    Rational coef = coef_text.empty() ? Rational(1) : parse_rational(coef_text);
    skip();
    long long exponent = 0;
    if (pos < s.size() && s[pos] == '*') {
      ++pos;
      skip();
      if (pos >= s.size() || s[pos] != var)
        fail(ErrorCode::Parse, std::string("expected variable '") + var + "' in '" + std::string(text) + "'");
    }
    if (pos < s.size() && s[pos] == var) {
      ++pos;
      exponent = 1;
      skip();
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        skip();
        std::size_t e0 = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (e0 == pos) fail(ErrorCode::Parse, "missing exponent in '" + std::string(text) + "'");
        exponent = std::atoll(std::string(s.substr(e0, pos - e0)).c_str());
      }
    } else if (coef_text.empty()) {
      fail(ErrorCode::Parse, "malformed term at column " + std::to_string(start + 1) + " in '" +
                                 std::string(text) + "'");
    }
    acc[exponent] += negative ? Rational(-coef) : coef;
  }
  std::vector<std::pair<Rational, long long>> out;
  for (auto& [e, c] : acc)
    if (c != 0) out.emplace_back(c, e);
  return out;
}

long long gcd_ll(long long a, long long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

long long lcm_ll(long long a, long long b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd_ll(a, b) * b;
}

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Ok: return "Ok";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::Precondition: return "PreconditionFailure";
    case ErrorCode::NotARootOfUnity: return "NotARootOfUnity";
    case ErrorCode::NotInRootGroup: return "NotInRootGroup";
    case ErrorCode::ConductorMismatch: return "ConductorMismatch";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::NotRegular: return "NotRegular";
    case ErrorCode::NotSemisimple: return "NotSemisimple";
    case ErrorCode::FiberNotCStable: return "FiberNotCStable";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::ActionMismatch: return "ActionMismatch";
    case ErrorCode::CharacterLengthMismatch: return "CharacterLengthMismatch";
    case ErrorCode::NoStabilization: return "NoStabilization";
    case ErrorCode::DivisionByZeroSeries: return "DivisionByZeroSeries";
    case ErrorCode::PoleAtPoint: return "PoleAtPoint";
    case ErrorCode::NotAnRModule: return "NotAnRModule";
    case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::NotThetaStable: return "NotThetaStable";
    case ErrorCode::NotPRegular: return "NotPRegular";
    case ErrorCode::UnsupportedGroupForInequality: return "UnsupportedGroupForInequality";
    case ErrorCode::HypothesisFailure: return "HypothesisFailure";
    case ErrorCode::NonPolynomialX: return "NonPolynomialX";
    case ErrorCode::Io: return "IoError";
    case ErrorCode::Internal: return "InternalError";
  }
  return "Unknown";
}

}  // namespace invt
