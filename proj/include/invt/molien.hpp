#pragma once

#include <vector>

#include "invt/group.hpp"
#include "invt/series.hpp"

namespace invt {

/// Hilbert series of (U (x) k[V])^G as (1/|G|) sum over classes of |C| chi_U(g) / det(1 - g^{-1} t).
/// chi is indexed like G.classes(); empty means the trivial module. Requires |G| invertible in k.
template <class F>
RationalFunction molien(const Group<F>& G, const std::vector<CyclotomicNumber>& chi, const CharacterContext<F>& ctx) {
  auto classes = G.classes();
  require(chi.empty() || chi.size() == classes.size(), ErrorCode::CharacterLengthMismatch,
          "character has " + std::to_string(chi.size()) + " values for " + std::to_string(classes.size()) +
              " classes");
  require(G.field().characteristic() == 0 || G.order() % G.field().characteristic() != 0, ErrorCode::Precondition,
          "Molien series needs a non-modular group");
  RationalFunction sum;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const auto& cl = classes[c];
    CPoly den{CyclotomicNumber::one(1)};
    for (auto& lambda : ctx.eigenvalues(G.element(cl.representative), cl.order))
      den = cpoly::mul(den, CPoly{CyclotomicNumber::one(1), -lambda.inverse()});
    CyclotomicNumber w(1, Rational(static_cast<long>(cl.members.size())));
    if (!chi.empty()) w *= chi[c];
    sum = sum + RationalFunction({w}, den);
  }
  return sum * RationalFunction::polynomial({CyclotomicNumber(1, Rational(1, static_cast<long>(G.order())))});
}

}  // namespace invt
