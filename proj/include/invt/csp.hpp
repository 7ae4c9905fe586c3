#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "invt/groth.hpp"
#include "invt/molien.hpp"

namespace invt {

template <class F>
bool non_modular(const Group<F>& G) {
  int p = G.field().characteristic();
  return p == 0 || G.order() % p != 0;
}

/// Degrees of the algebra generators of k[V]^G through D, when they certify a polynomial
/// ring through D: n generators and matching dimensions. Empty otherwise.
template <class F>
std::vector<int> polynomial_degrees(const PolyRing<F>& ring, const GradedSpace<F>& inv) {
  auto R = GradedAlgebraR<F>::by_degrees(ring, inv);
  std::vector<int> degs;
  for (auto& g : R.algebra_generators()) degs.push_back(g.degree);
  if (static_cast<int>(degs.size()) != ring.nvars()) return {};
  auto expect = GradedAlgebraR<F>::expected_polynomial_dims(degs, inv.max_degree());
  for (int d = 0; d <= inv.max_degree(); ++d)
    if (inv.dim(d) != expect[d]) return {};
  return degs;
}

/// The "invariants" task: dims of k[V]^G through D, a fit against supplied degrees and the
/// Molien cross-check in the non-modular case.
template <class F>
TaskResult invariants_report(const PolyRing<F>& ring, const Group<F>& G, const std::vector<int>& degrees, int D,
                             int jobs = 1) {
  TaskResult out;
  out.task = "invariants";
  auto inv = invariants_up_to(ring, G, D, jobs);
  auto dims = inv.dims();
  Json jd = Json::array();
  for (auto d : dims) jd.push_back(d);
  out.data["truncation"] = D;
  out.data["group_order"] = G.order();
  out.data["dims"] = jd;
  std::string t = "|G| = " + std::to_string(G.order()) + "\ndim k[V]^G_d, d = 0.." + std::to_string(D) + ":";
  for (auto d : dims) t += " " + std::to_string(d);
  t += "\n";
  out.csv = "d,dim\n";
  for (int d = 0; d <= D; ++d) out.csv += std::to_string(d) + "," + std::to_string(dims[d]) + "\n";
  auto gens = polynomial_degrees(ring, inv);
  if (!gens.empty()) {
    Json g = Json::array();
    for (int d : gens) g.push_back(d);
    out.data["polynomial_generator_degrees"] = g;
    std::string s;
    for (int d : gens) s += (s.empty() ? "" : ",") + std::to_string(d);
    t += "polynomial through degree " + std::to_string(D) + " with generator degrees (" + s + ")\n";
  }
  if (non_modular(G)) {
    CharacterContext<F> ctx(G.field(), lift_order_for(G));
    auto mol = molien(G, {}, ctx);
    bool ok = TruncatedSeries::from_rational(mol, D) == TruncatedSeries::from_ints(dims, D);
    out.data["molien"] = mol.to_string();
    out.data["molien_agrees"] = ok;
    t += "Molien series " + mol.to_string() + (ok ? " agrees" : " DISAGREES") + " through degree " +
         std::to_string(D) + "\n";
    if (!ok) out.note(Status::Fail);
  }
  if (!degrees.empty()) {
    try {
      auto fit = hilbert_from_dims(dims, degrees);
      out.data["numerator"] = cpoly::to_string(fit.numerator);
      out.data["closed_form"] = fit.closed_form->to_string();
      out.data["stabilization_window"] = Json::array({fit.window_low + 1, D});
      t += "fit: numerator " + cpoly::to_string(fit.numerator) + " over prod(1 - t^d); closed form " +
           fit.closed_form->to_string() + " (numerator checked zero in degrees " + std::to_string(fit.window_low + 1) +
           ".." + std::to_string(D) + ")\n";
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoStabilization) throw;
      out.data["fit_error"] = e.what();
      t += std::string("fit: ") + e.what() + "\n";
      out.note(Status::Fail);
    }
  }
  out.data["verdict"] = status_name(out.status);
  out.text = t + "verdict: " + status_name(out.status) + "\n";
  return out;
}

/// The "molien" task: Molien series of (U (x) k[V])^G against kernel dimensions through D.
template <class F>
TaskResult molien_report(const PolyRing<F>& ring, const Group<F>& G, const std::vector<Matrix<F>>& rho_gens, int D,
                         int jobs = 1) {
  TaskResult out;
  out.task = "molien";
  require(non_modular(G), ErrorCode::Precondition, "Molien series needs a non-modular group");
  CharacterContext<F> ctx(G.field(), lift_order_for(G));
  int u = rho_gens.empty() ? 1 : rho_gens.front().rows;
  std::vector<CyclotomicNumber> chi;
  if (!rho_gens.empty()) {
    auto rho = extend_representation(G, rho_gens, G.field(), u);
    for (auto& c : G.classes()) chi.push_back(ctx.brauer_character(rho[c.representative], c.order));
  }
  auto mol = molien(G, chi, ctx);
  auto M = rho_gens.empty() ? invariants_up_to(ring, G, D, jobs) : relative_invariants_up_to(ring, G, rho_gens, D, jobs);
  auto exp = TruncatedSeries::from_rational(mol, D);
  bool ok = true;
  Json rows = Json::array();
  out.csv = "d,molien,kernel\n";
  for (int d = 0; d <= D; ++d) {
    bool same = exp[d] == CyclotomicNumber(1, Rational(M.dim(d)));
    ok = ok && same;
    rows.push_back(Json{{"d", d}, {"molien", exp[d].display()}, {"kernel", M.dim(d)}});
    out.csv += std::to_string(d) + "," + exp[d].display() + "," + std::to_string(M.dim(d)) + "\n";
  }
  out.data["truncation"] = D;
  out.data["lift"] = ctx.fingerprint();
  out.data["molien"] = mol.to_string();
  out.data["coefficients"] = rows;
  if (!ok) out.note(Status::Fail);
  out.data["verdict"] = status_name(out.status);
  out.text = "Molien series " + mol.to_string() + "\nkernel dimensions " + (ok ? "agree" : "DISAGREE") +
             " through degree " + std::to_string(D) + "\nverdict: " + status_name(out.status) + "\n";
  return out;
}

/// Cyclic sieving check for C = <c> acting on G/H by right multiplication, with
/// X(t) = Hilb(k[V]^H) / Hilb(k[V]^G). H is a list of elements of G closed under products.
template <class F>
TaskResult csp_check(const PolyRing<F>& ring, const Group<F>& G, const std::vector<int>& H, int c,
                     const typename F::Element& omega, int D, int jobs = 1) {
  TaskResult out;
  out.task = "csp";
  const F& k = G.field();
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
  {
    auto closed = G.subgroup_indices(H);
    require(closed.size() == H.size(), ErrorCode::Precondition, "H is not closed under multiplication");
  }
  out.data["truncation"] = D;
  try {
    auto cert = find_regular_certificate(G, c, omega);
    hyp.push_back({"regular element", "verified",
                   "omega = " + detail::show(omega) + (cert.by_search ? ", vector found by sweep" : "")});
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotRegular && e.code() != ErrorCode::Precondition) throw;
    hyp.push_back({"regular element", "failed", e.what()});
    return stop(Status::HypothesisFailure);
  }
  auto invG = invariants_up_to(ring, G, D, jobs);
  auto degs = polynomial_degrees(ring, invG);
  if (degs.empty()) {
    hyp.push_back({"polynomial invariants", "failed", "k[V]^G is not polynomial through degree " + std::to_string(D)});
    return stop(Status::HypothesisFailure);
  }
  long long prod = 1;
  std::string ds;
  for (int d : degs) {
    prod *= d;
    ds += (ds.empty() ? "" : ",") + std::to_string(d);
  }
  bool full = prod == static_cast<long long>(G.order());
  hyp.push_back({"polynomial invariants", "verified",
                 "generator degrees (" + ds + ")" +
                     (full ? ", product equals |G|" : ", certified through degree " + std::to_string(D) + " only")});

  std::vector<Matrix<F>> hmats;
  for (int h : H) hmats.push_back(G.element(h));
  auto Hg = Group<F>::generate(k, G.dim(), hmats);
  auto invH = invariants_up_to(ring, Hg, D, jobs);
  auto fit = hilbert_from_dims(invH.dims(), degs);
  auto X = RationalFunction::polynomial(fit.numerator);
  std::string route = "dimension fit";
  if (non_modular(G)) {
    CharacterContext<F> cg(k, lift_order_for(G)), ch(k, lift_order_for(Hg));
    auto mx = quotient_X(molien(Hg, {}, ch), molien(G, {}, cg));
    require(mx == X, ErrorCode::Internal, "Molien quotient disagrees with the dimension fit");
    route = "Molien quotient, equal to the dimension fit";
  }
  out.data["X"] = X.to_string();
  out.data["route"] = route;
  CosetSpace<F> cosets(G, H);
  long long index = static_cast<long long>(cosets.size());
  bool nonneg = X.is_polynomial();
  if (nonneg)
    for (auto& a : X.num()) nonneg = nonneg && a.is_rational() && a.rational_value() >= 0 && a.rational_value().get_den() == 1;
  bool sum_ok = nonneg && X.evaluate(CyclotomicNumber::one(1)) == CyclotomicNumber(1, Rational(static_cast<long>(index)));
  t += "X(t) = " + X.to_string() + " (" + route + ")\n";
  if (!nonneg || !sum_ok) {
    hyp.push_back({"X(t) polynomial with X(1) = |G/H|", "failed", "X(t) = " + X.to_string()});
    return stop(Status::HypothesisFailure);
  }
  hyp.push_back({"X(t) polynomial with X(1) = |G/H|", "verified", std::to_string(index) + " cosets"});

  CharacterContext<F> ctx(k, lift_order_for(G));
  auto w = ctx.lift(omega);
  long long n = G.element_order(c);
  Json rows = Json::array();
  out.csv = "j,ord_c_j,ord_omega_j,fixed_points,X_at_omega_j,verdict\n";
  t += " j  ord(c^j)  ord(w^j)  fixed  X(w^j)\n";
  long long fixed_sum = 0;
  bool all = true;
  for (long long j = 0; j < n; ++j) {
    long long oc = n / gcd_ll(j, n);
    auto wj = w.pow(j);
    long long ow = element_order(wj);
    auto fp = static_cast<long long>(cosets.fixed_points(c, j));
    auto xv = X.evaluate(wj);
    bool ok = xv == CyclotomicNumber(1, Rational(static_cast<long>(fp)));
    all = all && ok;
    fixed_sum += fp;
    rows.push_back(Json{{"j", j}, {"ord_c_j", oc}, {"ord_omega_j", ow}, {"fixed_points", fp},
                        {"X_at_omega_j", xv.display()}, {"verdict", ok ? "PASS" : "FAIL"}});
    out.csv += std::to_string(j) + "," + std::to_string(oc) + "," + std::to_string(ow) + "," + std::to_string(fp) +
               "," + xv.display() + "," + (ok ? "PASS" : "FAIL") + "\n";
    char line[128];
    std::snprintf(line, sizeof line, "%2lld  %8lld  %8lld  %5lld  ", j, oc, ow, fp);
    t += line + xv.display() + (ok ? "" : "  FAIL") + "\n";
  }
  // Orbits of <c> on cosets, counted directly.
  std::vector<bool> seen(cosets.size(), false);
  long long orbits = 0;
  for (std::size_t s = 0; s < cosets.size(); ++s) {
    if (seen[s]) continue;
    ++orbits;
    for (int x = static_cast<int>(s); !seen[x]; x = cosets.right(x, c)) seen[x] = true;
  }
  bool burnside = fixed_sum == n * orbits;
  out.data["table"] = rows;
  out.data["burnside"] = Json{{"sum_fixed_points", fixed_sum}, {"order_times_orbits", n * orbits}, {"holds", burnside}};
  t += "Burnside recount: sum of fixed points " + std::to_string(fixed_sum) + ", ord(c) x orbits " +
       std::to_string(n * orbits) + (burnside ? "" : "  MISMATCH") + "\n";
  if (!all || !burnside) out.note(Status::Fail);
  detail::hypothesis_text(t, hyp);
  out.data["hypotheses"] = detail::hypotheses_json(hyp);
  out.data["lift"] = ctx.fingerprint();
  out.data["verdict"] = status_name(out.status);
  out.text = t + "verdict: " + status_name(out.status) + " (truncation " + std::to_string(D) + ")\n";
  return out;
}

/// k(H\G) as a (Gamma, G)-bimodule: G acts on the right, Gamma = N_G(H)/H on the left.
/// rho_gens gives the right action as a left module (Hx -> Hx s^{-1}) on G's generators.
template <class F>
struct BimoduleU {
  int dim = 0;
  std::vector<Matrix<F>> rho_gens;
  std::vector<Matrix<F>> gamma_gens;
};

template <class F>
BimoduleU<F> induced_coset_module(const Group<F>& G, const std::vector<int>& H) {
  CosetSpace<F> X(G, H);
  const F& k = G.field();
  BimoduleU<F> out;
  out.dim = static_cast<int>(X.size());
  for (int s : G.generator_indices()) {
    std::vector<int> p;
    for (std::size_t i = 0; i < X.size(); ++i) p.push_back(X.right(static_cast<int>(i), G.inverse(s)));
    out.rho_gens.push_back(permutation_matrix(k, p));
  }
  std::vector<int> have = X.subgroup;
  for (int g = 0; g < static_cast<int>(G.order()); ++g) {
    if (!X.normalizes(g) || std::find(have.begin(), have.end(), g) != have.end()) continue;
    std::vector<int> p;
    for (std::size_t i = 0; i < X.size(); ++i) p.push_back(X.left(g, static_cast<int>(i)));
    out.gamma_gens.push_back(permutation_matrix(k, p));
    std::vector<int> with = have;
    with.push_back(g);
    have = G.subgroup_indices(with);
  }
  return out;
}

/// Brauer character value from Hilbert series: X_{M,k[V]^G}(omega^) for M = (U (x) k[V])^G,
/// with the hypothesis checklist for the normalization R = k[f] of the given degrees.
template <class F>
struct ModcharQuery {
  int g = 0;
  /// Unset: omega^ is the lift of the first eigenvalue of g of full order in the splitting
  /// field, and the eigenspace is not defined over k, so fibers are not searched.
  std::optional<typename F::Element> omega;
  std::vector<Matrix<F>> rho_gens;
  std::vector<int> degrees;                                 // of R; needed in the modular route
  std::vector<typename GradedAlgebraR<F>::Poly> normalization;  // optional; enables fiber checks
};

namespace detail {

/// Searches nonzero vectors of the omega-eigenspace for a reduced rational fiber of k[f]
/// with a free G-action; returns its transporters for the scalar omega or nullopt.
template <class F>
std::optional<std::pair<FiberDescriptor, std::vector<int>>> free_fiber_in_eigenspace(
    const PolyRing<F>& ring, const Group<F>& G, int g, const typename F::Element& omega,
    const std::vector<typename GradedAlgebraR<F>::Poly>& f, std::string& detail) {
  if constexpr (!std::is_same_v<F, FiniteField>) {
    detail = "characteristic 0: fibers are not enumerable";
    return std::nullopt;
  } else {
    const F& k = G.field();
    int n = G.dim();
    auto es = kernel(G.element(g) - Matrix<F>::scalar(k, n, omega));
    long long q = k.order(), total = 1;
    for (int i = 0; i < n; ++i) total *= q;
    if (total > kMaxFiberSpace) {
      detail = "|V| exceeds the enumeration cap";
      return std::nullopt;
    }
    long long prod = 1;
    for (auto& [d, p] : f) prod *= d;
    long long ecount = 1;
    for (int i = 0; i < es.dim(); ++i) ecount *= q;
    long long tried = 0;
    FiberIndex index(ring, f);
    for (long long e = 1; e < ecount; ++e) {
      Vec<F> cf;
      for (long long r = e, i = 0; i < es.dim(); ++i, r /= q) cf.push_back(k.from_index(static_cast<std::uint32_t>(r % q)));
      auto v = es.combine(cf);
      ++tried;
      if (static_cast<long long>(index.size_of(v)) != prod) continue;
      auto fib = index.fiber(G, v);
      if (!fib.free) continue;
      auto tr = fiber_transporters(fib, G, Matrix<F>::scalar(k, n, omega));
      return std::make_pair(std::move(fib), std::move(tr));
    }
    detail = "none of the " + std::to_string(tried) + " eigenvectors over " + k.describe() +
             " has a reduced rational fiber with free G-action";
    return std::nullopt;
  }
}

}  // namespace detail

template <class F>
TaskResult character_from_series(const PolyRing<F>& ring, const Group<F>& G, const ModcharQuery<F>& query, int D,
                                 int jobs = 1) {
  TaskResult out;
  out.task = "modchar";
  const F& k = G.field();
  long long og = G.element_order(query.g);
  CharacterContext<F> ctx(k, lift_order_for(G));
  require(ctx.p_regular(og), ErrorCode::NotPRegular, "element of order " + std::to_string(og) + " is not p-regular");
  std::optional<CyclotomicNumber> lifted;
  if (query.omega) {
    require(element_order(*query.omega) == og, ErrorCode::Precondition, "omega must have the order of g");
    require(!kernel(G.element(query.g) - Matrix<F>::scalar(k, G.dim(), *query.omega)).basis.empty(),
            ErrorCode::Precondition, "omega is not an eigenvalue of g");
    lifted = ctx.lift(*query.omega);
  } else {
    for (auto& e : ctx.eigenvalues(G.element(query.g), og))
      if (element_order(e) == og) {
        lifted = e;
        break;
      }
    require(lifted.has_value(), ErrorCode::Precondition, "g has no eigenvalue of its own order");
  }
  int u = query.rho_gens.empty() ? 1 : query.rho_gens.front().rows;
  std::vector<Matrix<F>> rho_gens = query.rho_gens;
  if (rho_gens.empty()) rho_gens.assign(G.generators().size(), Matrix<F>::identity(k, 1));
  auto rho = extend_representation(G, rho_gens, k, u);
  auto w = *lifted;
  auto expected = ctx.brauer_character(rho[query.g], og);

  std::vector<Hypothesis> hyp;
  std::string t;
  std::optional<RationalFunction> X, XR;
  CPoly den{CyclotomicNumber::one(1)};
  for (int d : query.degrees) den = cpoly::mul(den, cpoly::one_minus_t_pow(d));
  if (non_modular(G)) {
    std::vector<CyclotomicNumber> chi;
    for (auto& c : G.classes()) chi.push_back(ctx.brauer_character(rho[c.representative], c.order));
    auto hinv = molien(G, {}, ctx);
    X = quotient_X(molien(G, chi, ctx), hinv);
    if (!query.degrees.empty()) XR = hinv * RationalFunction::polynomial(den);
    t += "route: Molien series\n";
  } else {
    require(!query.degrees.empty(), ErrorCode::Precondition, "the modular route needs the degrees of R");
    auto inv = invariants_up_to(ring, G, D, jobs);
    auto M = relative_invariants_up_to(ring, G, rho_gens, D, jobs);
    auto fi = hilbert_from_dims(inv.dims(), query.degrees);
    auto fm = hilbert_from_dims(M.dims(), query.degrees);
    X = RationalFunction(fm.numerator, fi.numerator);
    XR = RationalFunction::polynomial(fi.numerator);
    t += "route: dimension fits through degree " + std::to_string(D) + " over prod(1 - t^d)\n";
    out.data["hilbert_invariants_numerator"] = cpoly::to_string(fi.numerator);
    out.data["hilbert_M_numerator"] = cpoly::to_string(fm.numerator);
  }
  // (iii)
  if (XR) {
    auto e = XR->evaluate_checked(w);
    bool ok = !e.pole && !e.value.is_zero();
    hyp.push_back({"(iii) X_{k[V]^G,R}(omega^) != 0", ok ? "verified" : "failed",
                   "X_{k[V]^G,R} = " + XR->to_string() + (e.pole ? ", pole" : ", value " + e.value.display())});
    out.data["X_invariants_over_R"] = XR->to_string();
  } else {
    hyp.push_back({"(iii) X_{k[V]^G,R}(omega^) != 0", "verified", "R = k[V]^G, X = 1"});
  }
  // (i), (ii)
  if (!query.omega) {
    hyp.push_back({"(i) free G-action on the fiber", "not-checkable-at-scale",
                   "the eigenvalue lies outside " + k.describe()});
    hyp.push_back({"(ii) transporters conjugate to g", "not-checkable-at-scale", "no fiber available"});
  } else if (query.normalization.empty()) {
    hyp.push_back({"(i) free G-action on the fiber", "not-checkable-at-scale", "no normalization polynomials given"});
    hyp.push_back({"(ii) transporters conjugate to g", "not-checkable-at-scale", "no fiber available"});
  } else {
    std::string why;
    auto found = detail::free_fiber_in_eigenspace(ring, G, query.g, *query.omega, query.normalization, why);
    if (!found) {
      hyp.push_back({"(i) free G-action on the fiber", "not-checkable-at-scale", why});
      hyp.push_back({"(ii) transporters conjugate to g", "not-checkable-at-scale", "no fiber available"});
    } else {
      hyp.push_back({"(i) free G-action on the fiber", "verified",
                     std::to_string(found->first.points.size()) + " points in " +
                         std::to_string(found->first.orbits.size()) + " free orbits"});
      bool ok = true;
      for (int tr : found->second)
        if (tr >= 0) {
          long long o = G.element_order(tr);
          ok = ok && ctx.p_regular(o) && ctx.brauer_character(rho[tr], o) == expected;
        }
      hyp.push_back({"(ii) transporters conjugate to g", ok ? "verified" : "failed", ""});
    }
  }
  bool any_failed = std::any_of(hyp.begin(), hyp.end(), [](auto& h) { return h.state == "failed"; });
  auto ev = X->evaluate_checked(w);
  out.data["truncation"] = D;
  out.data["lift"] = ctx.fingerprint();
  out.data["element_order"] = og;
  out.data["omega_lift"] = w.display();
  out.data["X"] = X->to_string();
  out.data["brauer_character"] = expected.display();
  t += "X_{M,k[V]^G}(t) = " + X->to_string() + "\n";
  if (ev.pole) {
    out.data["X_at_omega"] = "pole";
    t += "pole at omega^ = " + w.display() + "\n";
    out.note(Status::HypothesisFailure);
  } else {
    out.data["X_at_omega"] = ev.value.display();
    bool eq = ev.value == expected;
    t += "X(omega^) = " + ev.value.display() + ", chi_U(g) = " + expected.display() + (eq ? "" : "  MISMATCH") + "\n";
    if (!eq) out.note(any_failed ? Status::HypothesisFailure : Status::Fail);
  }
  detail::hypothesis_text(t, hyp);
  out.data["hypotheses"] = detail::hypotheses_json(hyp);
  out.data["verdict"] = status_name(out.status);
  out.text = t + "verdict: " + status_name(out.status) + " (truncation " + std::to_string(D) + ")\n";
  return out;
}

}  // namespace invt
