#pragma once

#include <memory>
#include <optional>
#include <unordered_map>
#include <string>
#include <vector>

#include "invt/homology.hpp"
#include "invt/report.hpp"

namespace invt {

/// Element of Groth(k(Theta)) stored as its Brauer character on the p-regular classes.
struct GrothElement {
  std::vector<std::string> labels;
  std::vector<CyclotomicNumber> values;

  std::size_t size() const { return values.size(); }
  GrothElement& operator+=(const GrothElement& o);
  GrothElement& operator-=(const GrothElement& o);
  friend GrothElement operator+(GrothElement a, const GrothElement& b) { return a += b; }
  friend GrothElement operator-(GrothElement a, const GrothElement& b) { return a -= b; }
  /// Tensor product.
  friend GrothElement operator*(const GrothElement& a, const GrothElement& b);
  friend bool operator==(const GrothElement& a, const GrothElement& b);
  friend bool operator!=(const GrothElement& a, const GrothElement& b) { return !(a == b); }

  static GrothElement zero(const std::vector<std::string>& labels);
  /// "1a: 2, 2a: 0"
  std::string to_string() const;
  Json to_json() const;
};

/// One generator of Theta as blocks: on V, on U, and on the comparison module ("target").
template <class F>
struct ThetaGenerator {
  Matrix<F> on_v, on_u, target;
};

/// Theta realized as a group of block matrices diag(A_V, B_U, T).
template <class F>
struct Theta {
  Group<F> group;
  int nv = 0, nu = 0, nt = 0;
  std::shared_ptr<CharacterContext<F>> ctx;
  Equivariance<F> eq;
  std::vector<Matrix<F>> on_target;  // per element

  const std::vector<std::string>& labels() const { return eq.class_labels; }
  std::size_t classes() const { return eq.classes(); }
};

template <class F>
Matrix<F> diagonal_block(const Matrix<F>& m, int off, int n) {
  Matrix<F> b(m.field, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = m(off + i, off + j);
  return b;
}

/// With no generators Theta is trivial. extra_lift_order is folded into the Brauer lift
/// order so later evaluations at other roots share one lift context.
template <class F>
Theta<F> make_theta(const F& k, int nv, int nu, int nt, std::vector<ThetaGenerator<F>> gens,
                    long long extra_lift_order = 1) {
  if (gens.empty())
    gens.push_back({Matrix<F>::identity(k, nv), Matrix<F>::identity(k, nu), Matrix<F>::identity(k, nt)});
  std::vector<Matrix<F>> mats;
  for (auto& g : gens) {
    require(g.on_v.rows == nv && g.on_u.rows == nu && g.target.rows == nt, ErrorCode::ActionMismatch,
            "Theta generator blocks have the wrong sizes");
    mats.push_back(direct_sum(direct_sum(g.on_v, g.on_u), g.target));
  }
  Theta<F> t{Group<F>::generate(k, nv + nu + nt, std::move(mats)), nv, nu, nt, nullptr, {}, {}};
  t.ctx = std::make_shared<CharacterContext<F>>(k, lift_order_for(t.group, extra_lift_order));
  t.eq = split_blocks(t.group, nv, nu, *t.ctx);
  for (auto& m : t.group.elements()) t.on_target.push_back(diagonal_block(m, nv + nu, nt));
  return t;
}

/// Brauer character of a module given by one matrix per element of Theta.
template <class F>
GrothElement character_of(const Theta<F>& theta, const std::vector<Matrix<F>>& per_element) {
  require(per_element.size() == theta.group.order(), ErrorCode::ActionMismatch,
          "module needs one matrix per element of Theta");
  GrothElement out{theta.labels(), {}};
  for (std::size_t c = 0; c < theta.classes(); ++c) {
    int t = theta.eq.class_reps[c];
    out.values.push_back(per_element[t].rows ? theta.ctx->brauer_character(per_element[t], theta.eq.class_orders[c])
                                             : CyclotomicNumber(1));
  }
  return out;
}

template <class F>
GrothElement target_character(const Theta<F>& theta) {
  return character_of(theta, theta.on_target);
}

/// sum_{i, j <= D} (-1)^i [Tor_{i,j}] from a table carrying characters.
GrothElement euler_characteristic(const TorTable& tor);
/// sum_{i <= m, j <= D} (-1)^i [Tor_{i,j}].
GrothElement partial_euler_sum(const TorTable& tor, int m);
/// sum_j [Tor_{i,j}].
GrothElement tor_total(const TorTable& tor, int i);

enum class CompareMode { Equality, Inequality };

struct Comparison {
  CompareMode mode = CompareMode::Equality;
  bool equal = false;
  bool holds = false;                   // a == b, or a >= b
  std::vector<std::string> simples;     // inequality mode: simple-module names
  std::vector<Rational> multiplicities;  // of a - b on each simple
  Json to_json() const;
};

/// Linear characters of an abelian Theta with |Theta| invertible in k, as values on the
/// classes of theta (one class per element). Named by exponents on the generators.
template <class F>
std::pair<std::vector<std::string>, std::vector<std::vector<CyclotomicNumber>>> simple_characters(
    const Theta<F>& theta) {
  const auto& G = theta.group;
  int p = G.field().characteristic();
  require(G.is_abelian() && (p == 0 || G.order() % p != 0), ErrorCode::UnsupportedGroupForInequality,
          "inequality testing needs an abelian Theta of order invertible in k");
  require(theta.classes() == G.order(), ErrorCode::Internal, "abelian group with merged classes");
  std::vector<long long> ords;
  long long total = 1;
  for (int s : G.generator_indices()) {
    ords.push_back(G.element_order(s));
    total *= ords.back();
    require(total <= 100000, ErrorCode::TooLarge, "too many candidate characters");
  }
  std::vector<std::string> names;
  std::vector<std::vector<CyclotomicNumber>> values;
  std::vector<long long> a(ords.size(), 0);
  for (long long t = 0; t < total; ++t) {
    for (long long r = t, k = 0; k < static_cast<long long>(ords.size()); r /= ords[k], ++k) a[k] = r % ords[k];
    std::vector<CyclotomicNumber> lam(G.order());
    lam[0] = CyclotomicNumber::one(1);
    for (std::size_t x = 1; x < G.order(); ++x) {
      auto [par, s] = G.bfs_parents()[x];
      lam[x] = lam[par] * CyclotomicNumber::zeta(static_cast<int>(ords[s]), a[s]);
    }
    bool hom = true;
    for (std::size_t x = 0; x < G.order() && hom; ++x)
      for (std::size_t s = 0; s < ords.size() && hom; ++s)
        hom = lam[G.mul(static_cast<int>(x), G.generator_indices()[s])] ==
              lam[x] * CyclotomicNumber::zeta(static_cast<int>(ords[s]), a[s]);
    if (!hom) continue;
    std::string name = "lambda(";
    for (std::size_t s = 0; s < a.size(); ++s) name += (s ? "," : "") + std::to_string(a[s]);
    names.push_back(name + ")");
    std::vector<CyclotomicNumber> v;
    for (int r : theta.eq.class_reps) v.push_back(lam[r]);
    values.push_back(std::move(v));
  }
  require(values.size() == G.order(), ErrorCode::Internal, "character count differs from the group order");
  return {names, values};
}

/// Equality compares classwise. Inequality decomposes a - b into simple multiplicities;
/// UnsupportedGroupForInequality unless Theta is abelian and |Theta| is invertible in k.
template <class F>
Comparison compare(const GrothElement& a, const GrothElement& b, CompareMode mode, const Theta<F>& theta) {
  require(a.size() == b.size() && a.size() == theta.classes(), ErrorCode::CharacterLengthMismatch,
          "compared elements do not match the classes of Theta");
  Comparison out;
  out.mode = mode;
  out.equal = a == b;
  out.holds = out.equal;
  if (mode == CompareMode::Equality) return out;
  auto [names, chars] = simple_characters(theta);
  auto diff = a - b;
  out.simples = names;
  out.holds = true;
  auto n = static_cast<long>(theta.group.order());
  for (auto& lam : chars) {
    CyclotomicNumber s(1);
    for (std::size_t c = 0; c < lam.size(); ++c) s += diff.values[c] * lam[c].inverse();
    s /= CyclotomicNumber(1, Rational(n));
    s = s.minimal();
    require(s.is_rational(), ErrorCode::Internal, "multiplicity is not rational; not a virtual character");
    Rational m = s.rational_value();
    require(m.get_den() == 1, ErrorCode::Internal, "multiplicity is not an integer; not a virtual character");
    if (m < 0) out.holds = false;
    out.multiplicities.push_back(m);
  }
  return out;
}

/// Classwise closed forms of a truncated character series and their t = 1 values.
struct ClassSeries {
  std::string label;
  TruncatedSeries series;
  std::optional<RationalFunction> closed_form;
  std::optional<Evaluation> at_one;
  Json to_json() const;
};

std::vector<ClassSeries> closed_forms(const std::vector<std::string>& labels, const std::vector<TruncatedSeries>& s);

/// Tor over R of M with Theta characters, by the syzygy engine when |Theta| is invertible
/// in k and by the Koszul engine otherwise (R must then be polynomial).
template <class F>
TorTable equivariant_tor(const GradedAlgebraR<F>& R, const GradedSpace<F>& M, int D, const Theta<F>& theta,
                         int jobs = 1) {
  int p = theta.group.field().characteristic();
  bool invertible = p == 0 || theta.group.order() % p != 0;
  if (R.is_polynomial() && !invertible) return koszul_tor(R, M, D, &theta.eq, jobs);
  require(invertible, ErrorCode::Precondition,
          "characters over a non-polynomial R need |Theta| invertible in k");
  return truncated_minimal_resolution(R, M, D, &theta.eq, jobs).tor;
}

/// The "tor" task: Betti table, classwise series and t = 1 values. With expect_pole the
/// task is a negative test: a pole at t = 1 on some class is an expected failure.
template <class F>
TaskResult tor_report(const GradedAlgebraR<F>& R, const GradedSpace<F>& M, int D, const Theta<F>& theta,
                      bool expect_pole = false, int jobs = 1) {
  TaskResult out;
  out.task = "tor";
  auto tor = equivariant_tor(R, M, D, theta, jobs);
  auto classwise = euler_character_series(R, M, theta.eq, D);
  auto forms = closed_forms(theta.labels(), classwise);
  bool agree = true;
  for (std::size_t c = 0; c < classwise.size(); ++c) agree = agree && tor.euler_character_series(c) == classwise[c];
  out.data["truncation"] = D;
  out.data["lift"] = theta.ctx->fingerprint();
  Json betti = Json::array();
  for (auto& [ij, v] : tor.dims) betti.push_back(Json{{"i", ij.first}, {"j", ij.second}, {"dim", v}});
  out.data["betti"] = betti;
  out.data["hd"] = tor.hd.text();
  out.data["series_identity"] = agree;
  Json cls = Json::array();
  bool pole = false, missing = false;
  for (auto& f : forms) {
    cls.push_back(f.to_json());
    if (!f.at_one) missing = true;
    else if (f.at_one->pole) pole = true;
  }
  out.data["classes"] = cls;
  out.csv = tor.csv();
  std::string t = "Betti table (rows j-i, columns i), truncated at degree " + std::to_string(D) + ":\n";
  t += tor.betti_table();
  t += tor.hd.text() + "\n";
  t += std::string("series identity [M](t)/[R](t) = sum (-1)^i [Tor_i](t) through degree ") + std::to_string(D) +
       ": " + (agree ? "holds" : "FAILS") + "\n";
  for (auto& f : forms) {
    t += "class " + f.label + ": ";
    if (!f.closed_form) {
      t += "no rational closed form within degree " + std::to_string(D) + "\n";
      continue;
    }
    t += f.closed_form->to_string() + "; at t=1: ";
    t += f.at_one->pole ? "pole of order " + std::to_string(f.at_one->pole_order) : f.at_one->value.display();
    t += "\n";
  }
  if (!agree) out.note(Status::Fail);
  if (missing) out.note(Status::Fail);
  if (expect_pole) out.note(pole ? Status::ExpectedFailure : Status::Fail);
  else if (pole) out.note(Status::Fail);
  t += std::string("verdict: ") + status_name(out.status) + (expect_pole ? " (pole at t=1 expected)" : "") + "\n";
  out.text = t;
  out.data["verdict"] = status_name(out.status);
  return out;
}

/// Checks the three parts of the omnibus inequality theorem for M over R with Theta acting
/// on U only: [Tor_0] >= [U] with equality iff hd = 0, alternating partial sums, and the
/// classwise t = 1 limit. The target block of theta carries [U].
template <class F>
TaskResult verify_omnibus(const GradedAlgebraR<F>& R, const GradedSpace<F>& M, int D, const Theta<F>& theta,
                          int jobs = 1) {
  TaskResult out;
  out.task = "omnibus";
  auto tor = equivariant_tor(R, M, D, theta, jobs);
  auto U = target_character(theta);
  bool can_order = true;
  try {
    simple_characters(theta);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::UnsupportedGroupForInequality) throw;
    can_order = false;
  }
  auto mode = can_order ? CompareMode::Inequality : CompareMode::Equality;
  std::string t = "[U] = " + U.to_string() + "\n" + tor.hd.text() + "\n";
  out.data["truncation"] = D;
  out.data["lift"] = theta.ctx->fingerprint();
  out.data["U"] = U.to_json();
  out.data["hd"] = tor.hd.text();
  if (!can_order) t += "Theta is not abelian of invertible order: inequalities checked on dimensions only\n";

  auto dims_order = [&](const GrothElement& a, const GrothElement& b, int sign) {
    Rational d = a.values[0].rational_value() - b.values[0].rational_value();
    return sign * d >= 0;
  };
  // (i)
  auto tor0 = tor_total(tor, 0);
  auto c0 = compare(tor0, U, mode, theta);
  bool free_hd = tor.hd.bounded && tor.hd.value <= 0;
  bool ok_i = (can_order ? c0.holds : dims_order(tor0, U, 1)) && (!c0.equal || tor.max_index() <= 0) &&
              (!free_hd || c0.equal);
  out.data["part_i"] = Json{{"tor0", tor0.to_json()}, {"comparison", c0.to_json()}, {"free", free_hd},
                            {"verdict", ok_i ? "PASS" : "FAIL"}};
  t += "(i) [M (x)_R k] = " + tor0.to_string() + (c0.equal ? "  equal to [U]" : "  >= [U], strict") +
       (ok_i ? "" : "  VIOLATED") + "\n";
  if (!ok_i) out.note(Status::Fail);
  // (ii)
  Json parts = Json::array();
  int top = tor.max_index();
  bool ok_ii = true;
  for (int m = 0; m <= std::max(top, 0); ++m) {
    auto s = partial_euler_sum(tor, m);
    int sign = m % 2 ? -1 : 1;
    Comparison c = sign > 0 ? compare(s, U, mode, theta) : compare(U, s, mode, theta);
    bool ineq = can_order ? c.holds : dims_order(s, U, sign);
    // Equality iff nothing is left above m; only decidable when hd is certified.
    bool eq_ok = !c.equal || top <= m;
    if (tor.hd.bounded) eq_ok = eq_ok && (c.equal == (top <= m));
    bool ok = ineq && eq_ok;
    ok_ii = ok_ii && ok;
    parts.push_back(Json{{"m", m}, {"sum", s.to_json()}, {"relation", sign > 0 ? ">=" : "<="},
                         {"equal", c.equal}, {"verdict", ok ? "PASS" : "FAIL"}});
    t += "(ii) m=" + std::to_string(m) + ": " + s.to_string() + (c.equal ? " = " : sign > 0 ? " >= " : " <= ") +
         "[U]" + (ok ? "" : "  VIOLATED") + "\n";
  }
  out.data["part_ii"] = parts;
  if (!ok_ii) out.note(Status::Fail);
  // (iii)
  auto forms = closed_forms(theta.labels(), euler_character_series(R, M, theta.eq, D));
  Json cls = Json::array();
  bool ok_iii = true;
  for (std::size_t c = 0; c < forms.size(); ++c) {
    auto& f = forms[c];
    bool ok = f.at_one && !f.at_one->pole && f.at_one->value == U.values[c];
    ok_iii = ok_iii && ok;
    auto j = f.to_json();
    j["expected"] = U.values[c].display();
    j["verdict"] = ok ? "PASS" : "FAIL";
    cls.push_back(j);
    t += "(iii) class " + f.label + ": ";
    if (!f.closed_form) t += "no closed form within degree " + std::to_string(D);
    else if (f.at_one->pole) t += f.closed_form->to_string() + " has a pole at t=1";
    else t += f.closed_form->to_string() + " -> " + f.at_one->value.display();
    t += std::string(ok ? "" : "  MISMATCH") + "\n";
  }
  out.data["part_iii"] = cls;
  if (!ok_iii) out.note(Status::Fail);
  out.csv = tor.csv();
  t += std::string("verdict: ") + status_name(out.status) + " (truncation " + std::to_string(D) + ")\n";
  out.text = t;
  out.data["verdict"] = status_name(out.status);
  return out;
}

namespace detail {

/// Field element for reports: GAP notation in characteristic 0.
template <class E>
std::string show(const E& x) {
  if constexpr (std::is_same_v<E, CyclotomicNumber>) return x.display();
  else return x.to_string();
}

/// Alternating Tor dimensions must vanish in degrees (sum d_i - n, D] for the Euler sum to
/// be complete; returns the first offending degree, or -1.
int euler_window_violation(const TorTable& tor, const std::vector<int>& degrees, int nvars);

inline void hypothesis_text(std::string& t, const std::vector<Hypothesis>& hs) {
  for (auto& h : hs) t += "hypothesis " + h.name + ": " + h.state + (h.detail.empty() ? "" : " (" + h.detail + ")") + "\n";
}

inline Json hypotheses_json(const std::vector<Hypothesis>& hs) {
  Json a = Json::array();
  for (auto& h : hs) a.push_back(h.to_json());
  return a;
}

inline Json class_table(const std::vector<std::string>& labels, const std::vector<long long>& orders,
                        const GrothElement& left, const GrothElement& right) {
  Json a = Json::array();
  for (std::size_t c = 0; c < labels.size(); ++c)
    a.push_back(Json{{"class", labels[c]}, {"order", orders[c]}, {"left", left.values[c].display()},
                     {"right", right.values[c].display()}, {"equal", left.values[c] == right.values[c]}});
  return a;
}

}  // namespace detail

/// Polynomial-invariants identity: sum (-1)^i [Tor_i^R(M,k)] = [U] over Gamma x C, where
/// C = <tau> scales V by omega^{-1} and the target is U with Gamma and rho(c).
/// f must generate k[V]^G through D; gamma acts on U commuting with G.
template <class F>
TaskResult verify_springer(const PolyRing<F>& ring, const Group<F>& G, int c, const typename F::Element& omega,
                           const std::vector<Matrix<F>>& rho_gens, const std::vector<Matrix<F>>& gamma,
                           std::vector<typename GradedAlgebraR<F>::Poly> f, int D, int jobs = 1) {
  TaskResult out;
  out.task = "springer";
  const F& k = ring.field();
  int n = ring.nvars();
  int u = rho_gens.empty() ? 1 : rho_gens.front().rows;
  std::vector<Hypothesis> hyp;
  std::string t;
  auto stop = [&](Status s) {
    detail::hypothesis_text(t, hyp);
    out.note(s);
    out.data["hypotheses"] = detail::hypotheses_json(hyp);
    out.data["verdict"] = status_name(out.status);
    out.text = t + "verdict: " + status_name(out.status) + "\n";
    return out;
  };
  try {
    auto cert = find_regular_certificate(G, c, omega);
    std::string v;
    for (auto& x : cert.vector) v += (v.empty() ? "" : ",") + detail::show(x);
    hyp.push_back({"regular element", "verified",
                   "omega = " + detail::show(omega) + ", v = (" + v + ")" + (cert.by_search ? ", found by sweep" : "")});
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotRegular && e.code() != ErrorCode::Precondition) throw;
    hyp.push_back({"regular element", "failed", e.what()});
    return stop(Status::HypothesisFailure);
  }
  auto rho = extend_representation(G, rho_gens, k, u);
  for (auto& g : gamma)
    for (auto& r : rho_gens)
      require(g * r == r * g, ErrorCode::ActionMismatch, "Gamma does not commute with the G-action on U");
  auto inv = invariants_up_to(ring, G, D, jobs);
  auto R = GradedAlgebraR<F>::polynomial(ring, f, D);
  bool poly = true;
  for (int d = 0; d <= D && poly; ++d) {
    poly = R.dim(d) == inv.dim(d);
    for (auto& b : R.part(d).basis) poly = poly && inv.parts[d].contains(b);
  }
  auto degs = R.normalization_degrees();
  long long prod = 1;
  for (int d : degs) prod *= d;
  if (!poly || static_cast<int>(degs.size()) != n) {
    hyp.push_back({"polynomial invariants", "failed", "k[f] differs from k[V]^G through degree " + std::to_string(D)});
    return stop(Status::HypothesisFailure);
  }
  hyp.push_back({"polynomial invariants", "verified",
                 "k[f] = k[V]^G through degree " + std::to_string(D) +
                     (prod == static_cast<long long>(G.order()) ? "; product of degrees equals |G|" : "")});

  std::vector<ThetaGenerator<F>> gens;
  for (auto& g : gamma) gens.push_back({Matrix<F>::identity(k, n), g, g});
  gens.push_back({Matrix<F>::scalar(k, n, omega.inverse()), Matrix<F>::identity(k, u), rho[c]});
  auto theta = make_theta(k, n, u, u, gens);
  auto M = relative_invariants_up_to(ring, G, rho_gens, D, jobs);
  auto tor = koszul_tor(R, M, D, &theta.eq, jobs);
  int bad = detail::euler_window_violation(tor, degs, n);
  auto left = euler_characteristic(tor);
  auto right = target_character(theta);
  bool equal = left == right;
  out.data["truncation"] = D;
  out.data["lift"] = theta.ctx->fingerprint();
  out.data["hypotheses"] = detail::hypotheses_json(hyp);
  out.data["classes"] = detail::class_table(theta.labels(), theta.eq.class_orders, left, right);
  out.csv = tor.csv();
  detail::hypothesis_text(t, hyp);
  t += tor.hd.text() + "\n";
  t += "sum (-1)^i [Tor_i] = " + left.to_string() + "\n[U]             = " + right.to_string() + "\n";
  if (bad >= 0) {
    t += "alternating sum does not vanish in degree " + std::to_string(bad) + "; truncation too small\n";
    out.note(Status::Error);
  } else if (!equal) {
    out.note(Status::Fail);
  }
  out.data["verdict"] = status_name(out.status);
  out.text = t + "verdict: " + status_name(out.status) + " (truncation " + std::to_string(D) + ")\n";
  return out;
}

/// [(U (x) A(Phi_v))^G] over Theta from the enumerated (reduced) fiber, by invariants of
/// U (x) k^Phi. Theta acts on points through its V-block and on U through its U-block.
template <class F>
GrothElement fiber_character_direct(const Theta<F>& theta, const Group<F>& G, const std::vector<Matrix<F>>& rho,
                                    const FiberDescriptor& fib) {
  const F& k = G.field();
  int u = rho.front().rows;
  auto key_of = [](const Vec<F>& w) {
    std::string s;
    for (auto& x : w) s += x.key() + ",";
    return s;
  };
  std::unordered_map<std::string, int> where;
  for (std::size_t i = 0; i < fib.points.size(); ++i) where.emplace(key_of(fib.points[i]), static_cast<int>(i));
  auto perm = [&](const Matrix<F>& a) {
    std::vector<int> p;
    for (auto& w : fib.points) {
      auto it = where.find(key_of(a.apply(w)));
      require(it != where.end(), ErrorCode::FiberNotCStable, "Theta moves the fiber off itself");
      p.push_back(it->second);
    }
    return permutation_matrix(k, p);
  };
  int dim = u * static_cast<int>(fib.points.size());
  std::vector<Matrix<F>> stack;
  for (std::size_t s = 0; s < G.generators().size(); ++s)
    stack.push_back(kron(rho[G.generator_indices()[s]], perm(G.generators()[s])) - Matrix<F>::identity(k, dim));
  auto fixed = kernel(vstack(k, dim, stack));
  GrothElement out{theta.labels(), {}};
  for (std::size_t c = 0; c < theta.classes(); ++c) {
    int x = theta.eq.class_reps[c];
    auto a = kron(theta.eq.on_u[x], perm(theta.eq.on_v[x]));
    Matrix<F> r;
    require(restrict_to(a, fixed, r), ErrorCode::FiberNotCStable, "Theta does not preserve the G-invariants");
    out.values.push_back(r.rows ? theta.ctx->brauer_character(r, theta.eq.class_orders[c]) : CyclotomicNumber(1));
  }
  return out;
}

/// Same element by transporters: per class, sum over orbits fixed by the V-block of the
/// Brauer character of B_U rho(g^{-1}) where A_V w = g w. nullopt on a class where some
/// such element is not p-regular.
template <class F>
std::vector<std::optional<CyclotomicNumber>> fiber_character_transporters(const Theta<F>& theta, const Group<F>& G,
                                                                          const std::vector<Matrix<F>>& rho,
                                                                          const FiberDescriptor& fib) {
  std::vector<std::optional<CyclotomicNumber>> out;
  for (std::size_t c = 0; c < theta.classes(); ++c) {
    int x = theta.eq.class_reps[c];
    auto tr = fiber_transporters(fib, G, theta.eq.on_v[x]);
    std::optional<CyclotomicNumber> sum = CyclotomicNumber(1);
    for (int g : tr) {
      if (g < 0) continue;
      auto y = theta.eq.on_u[x] * rho[G.inverse(g)];
      long long o = matrix_order(y);
      if (!theta.ctx->p_regular(o)) {
        sum.reset();
        break;
      }
      *sum += theta.ctx->brauer_character(y, o);
    }
    out.push_back(sum);
  }
  return out;
}

/// Fiber Euler identity over a finite field: sum (-1)^i [Tor_i^R(M,k)] for R = k[f] equals
/// [(U (x) A(Phi_v))^G]. The fiber must be reduced, certified by |Phi_v| = prod deg f_i.
/// With require_free (the fiber form of the Springer identity) a non-free fiber or a Theta
/// that does not preserve it is a hypothesis failure.
TaskResult verify_fiber_euler(const PolyRing<FiniteField>& ring, const Group<FiniteField>& G,
                              const std::vector<Matrix<FiniteField>>& rho_gens,
                              std::vector<GradedAlgebraR<FiniteField>::Poly> f, const Vec<FiniteField>& v,
                              const Theta<FiniteField>& theta, int D, bool require_free, int jobs = 1);

}  // namespace invt
