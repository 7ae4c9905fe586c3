#include "invt/groth.hpp"

namespace invt {

namespace {

void check_same(const GrothElement& a, const GrothElement& b) {
  require(a.labels == b.labels, ErrorCode::CharacterLengthMismatch, "Grothendieck elements over different classes");
}

}  // namespace

GrothElement& GrothElement::operator+=(const GrothElement& o) {
  check_same(*this, o);
  for (std::size_t c = 0; c < values.size(); ++c) values[c] += o.values[c];
  return *this;
}

GrothElement& GrothElement::operator-=(const GrothElement& o) {
  check_same(*this, o);
  for (std::size_t c = 0; c < values.size(); ++c) values[c] -= o.values[c];
  return *this;
}

GrothElement operator*(const GrothElement& a, const GrothElement& b) {
  check_same(a, b);
  GrothElement r = a;
  for (std::size_t c = 0; c < r.values.size(); ++c) r.values[c] *= b.values[c];
  return r;
}

bool operator==(const GrothElement& a, const GrothElement& b) { return a.labels == b.labels && a.values == b.values; }

GrothElement GrothElement::zero(const std::vector<std::string>& labels) {
  return {labels, std::vector<CyclotomicNumber>(labels.size(), CyclotomicNumber(1))};
}

std::string GrothElement::to_string() const {
  std::string s;
  for (std::size_t c = 0; c < values.size(); ++c) s += (c ? ", " : "") + labels[c] + ": " + values[c].display();
  return "(" + s + ")";
}

Json GrothElement::to_json() const {
  Json j = Json::object();
  for (std::size_t c = 0; c < values.size(); ++c) j[labels[c]] = values[c].display();
  return j;
}

GrothElement tor_total(const TorTable& tor, int i) {
  require(tor.has_characters(), ErrorCode::Precondition, "Tor table carries no characters");
  auto out = GrothElement::zero(tor.class_labels);
  for (auto& [ij, v] : tor.characters)
    if (ij.first == i)
      for (std::size_t c = 0; c < v.size(); ++c) out.values[c] += v[c];
  return out;
}

GrothElement partial_euler_sum(const TorTable& tor, int m) {
  require(tor.has_characters(), ErrorCode::Precondition, "Tor table carries no characters");
  auto out = GrothElement::zero(tor.class_labels);
  for (auto& [ij, v] : tor.characters)
    if (ij.first <= m)
      for (std::size_t c = 0; c < v.size(); ++c) out.values[c] += ij.first % 2 ? -v[c] : v[c];
  return out;
}

GrothElement euler_characteristic(const TorTable& tor) { return partial_euler_sum(tor, tor.max_index()); }

Json Comparison::to_json() const {
  Json j{{"mode", mode == CompareMode::Equality ? "equality" : "inequality"}, {"equal", equal}, {"holds", holds}};
  if (mode == CompareMode::Inequality) {
    Json m = Json::object();
    for (std::size_t s = 0; s < simples.size(); ++s) m[simples[s]] = invt::to_string(multiplicities[s]);
    j["difference_multiplicities"] = m;
  }
  return j;
}

Json ClassSeries::to_json() const {
  Json j{{"class", label}, {"series", series.to_string()}};
  j["closed_form"] = closed_form ? Json(closed_form->to_string()) : Json(nullptr);
  if (at_one) {
    if (at_one->pole) j["at_t_1"] = "pole of order " + std::to_string(at_one->pole_order);
    else j["at_t_1"] = at_one->value.display();
  } else {
    j["at_t_1"] = nullptr;
  }
  return j;
}

std::vector<ClassSeries> closed_forms(const std::vector<std::string>& labels, const std::vector<TruncatedSeries>& s) {
  std::vector<ClassSeries> out;
  for (std::size_t c = 0; c < s.size(); ++c) {
    ClassSeries cs{labels[c], s[c], rational_reconstruct(s[c]), std::nullopt};
    if (cs.closed_form) cs.at_one = cs.closed_form->evaluate_checked(CyclotomicNumber::one(1));
    out.push_back(std::move(cs));
  }
  return out;
}

namespace detail {

int euler_window_violation(const TorTable& tor, const std::vector<int>& degrees, int nvars) {
  int lo = -nvars;
  for (int d : degrees) lo += d;
  if (lo >= tor.D) return tor.D;
  for (int j = std::max(lo + 1, 0); j <= tor.D; ++j) {
    long long s = 0;
    for (auto& [ij, v] : tor.dims)
      if (ij.second == j) s += ij.first % 2 ? -v : v;
    if (s != 0) return j;
  }
  return -1;
}

}  // namespace detail

TaskResult verify_fiber_euler(const PolyRing<FiniteField>& ring, const Group<FiniteField>& G,
                              const std::vector<Matrix<FiniteField>>& rho_gens,
                              std::vector<GradedAlgebraR<FiniteField>::Poly> f, const Vec<FiniteField>& v,
                              const Theta<FiniteField>& theta, int D, bool require_free, int jobs) {
  using F = FiniteField;
  TaskResult out;
  out.task = require_free ? "springer" : "fiber";
  const F& k = ring.field();
  int n = ring.nvars();
  int u = rho_gens.empty() ? 1 : rho_gens.front().rows;
  require(theta.nv == n && theta.nu == u, ErrorCode::ActionMismatch, "Theta blocks do not match V and U");
  auto rho = extend_representation(G, rho_gens, k, u);
  std::vector<Hypothesis> hyp;
  std::string t;
  auto finish = [&]() {
    detail::hypothesis_text(t, hyp);
    out.data["hypotheses"] = detail::hypotheses_json(hyp);
    out.data["verdict"] = status_name(out.status);
    out.text = t + "verdict: " + status_name(out.status) + " (truncation " + std::to_string(D) + ")\n";
    return out;
  };
  for (auto& g : G.generators())
    for (auto& x : theta.eq.on_v)
      require(g * x == x * g, ErrorCode::ActionMismatch, "Theta does not commute with G on V");

  auto R = GradedAlgebraR<F>::polynomial(ring, f, D);
  auto inv = invariants_up_to(ring, G, D, jobs);
  for (int d = 0; d <= D; ++d)
    for (auto& b : R.part(d).basis)
      require(inv.parts[d].contains(b), ErrorCode::Precondition, "normalization is not G-invariant");
  for (int d = 0; d <= D; ++d)
    for (auto& x : theta.eq.on_v) R.restrict_action(ring.action_matrix(x, d), d);
  auto M = relative_invariants_up_to(ring, G, rho_gens, D, jobs);
  auto tor = koszul_tor(R, M, D, &theta.eq, jobs);
  auto left = euler_characteristic(tor);
  auto degs = R.normalization_degrees();
  out.data["truncation"] = D;
  out.data["lift"] = theta.ctx->fingerprint();
  out.csv = tor.csv();
  int bad = detail::euler_window_violation(tor, degs, n);
  if (bad >= 0) {
    t += "alternating sum does not vanish in degree " + std::to_string(bad) + "; truncation too small\n";
    out.note(Status::Error);
    return finish();
  }

  bool at_origin = true;
  for (auto& [d, p] : f) at_origin = at_origin && ring.evaluate(d, p, v).is_zero();
  if (at_origin) {
    hyp.push_back({"fiber", "verified", "phi(v) = 0: the fiber ring is the graded k, both sides coincide"});
    out.data["classes"] = detail::class_table(theta.labels(), theta.eq.class_orders, left, left);
    t += "sum (-1)^i [Tor_i] = " + left.to_string() + " on both sides\n";
    return finish();
  }
  auto fib = enumerate_fiber(ring, G, f, v);
  long long prod = 1;
  for (int d : degs) prod *= d;
  bool reduced = static_cast<long long>(fib.points.size()) == prod;
  hyp.push_back({"reduced rational fiber", reduced ? "verified" : "failed",
                 std::to_string(fib.points.size()) + " points, product of degrees " + std::to_string(prod)});
  hyp.push_back({"free G-action on the fiber", fib.free ? "verified" : "failed",
                 std::to_string(fib.orbits.size()) + " orbits"});
  if (!reduced || (require_free && !fib.free)) {
    out.note(Status::HypothesisFailure);
    return finish();
  }
  GrothElement right;
  try {
    right = fiber_character_direct(theta, G, rho, fib);
    hyp.push_back({"Theta preserves the fiber", "verified", ""});
  } catch (const Error& e) {
    if (e.code() != ErrorCode::FiberNotCStable) throw;
    hyp.push_back({"Theta preserves the fiber", "failed", e.what()});
    out.note(Status::HypothesisFailure);
    return finish();
  }
  Json cls = detail::class_table(theta.labels(), theta.eq.class_orders, left, right);
  bool agree = true;
  if (fib.free) {
    auto tr = fiber_character_transporters(theta, G, rho, fib);
    for (std::size_t c = 0; c < tr.size(); ++c) {
      cls[c]["transporter_sum"] = tr[c] ? Json(tr[c]->display()) : Json(nullptr);
      if (tr[c] && *tr[c] != right.values[c]) agree = false;
    }
  }
  out.data["classes"] = cls;
  out.data["fiber_points"] = fib.points.size();
  out.data["fiber_orbits"] = fib.orbits.size();
  t += "fiber: " + std::to_string(fib.points.size()) + " points in " + std::to_string(fib.orbits.size()) + " G-orbits\n";
  t += "sum (-1)^i [Tor_i]        = " + left.to_string() + "\n";
  t += "[(U (x) A(Phi_v))^G]      = " + right.to_string() + "\n";
  if (fib.free) t += std::string("transporter character sum ") + (agree ? "agrees" : "DISAGREES") + "\n";
  if (!agree || left != right) out.note(Status::Fail);
  return finish();
}

}  // namespace invt
