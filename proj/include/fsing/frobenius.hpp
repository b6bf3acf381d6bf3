#ifndef FSING_FROBENIUS_HPP
#define FSING_FROBENIUS_HPP

#include <map>
#include <utility>
#include <vector>

#include "fsing/ideals.hpp"

namespace fsing {

/// J^{[p^e]}, generated by the p^e-th powers of the generators.
inline Ideal frobenius_power(const Ideal& I, size_t e) {
  if (e == 0) return I;
  std::vector<MvPoly> gens;
  gens.reserve(I.generators().size());
  for (const auto& g : I.generators()) gens.push_back(frobenius_pow(g, e));
  return Ideal(I.ring(), std::move(gens));
}

/// The minimal ideal J with I contained in J^{[p^e]}. Each generator is split
/// over the monomial basis {x^a : 0 <= a_i < p^e} of R over R^{p^e}: the term
/// c*x^u lands in bucket a = u mod p^e with residual exponent u div p^e and
/// unchanged coefficient. The bucket polynomials generate the root; the
/// returned generator list is the reduced Groebner basis of that ideal.
inline Ideal frobenius_root(const Ideal& I, size_t e) {
  if (e == 0) return I;
  const RingPtr& ring = I.ring();
  uint64_t q = checked_pow_u64(ring->prime(), e);

  std::vector<MvPoly> pieces;
  std::vector<Exponents> monomials;
  for (const auto& h : I.generators()) {
    std::map<Exponents, std::vector<Term>> buckets;
    for (const auto& t : h.terms()) {
      Exponents a(t.mono.size()), r(t.mono.size());
      for (size_t i = 0; i < t.mono.size(); ++i) {
        a[i] = t.mono[i] % q;
        r[i] = t.mono[i] / q;
      }
      buckets[std::move(a)].push_back({std::move(r), t.coeff});
    }
    for (auto& [a, terms] : buckets) {
      MvPoly g = MvPoly::from_terms(ring, std::move(terms));
      if (g.is_zero()) continue;
      if (g.num_terms() == 1) monomials.push_back(g.terms()[0].mono);
      else pieces.push_back(std::move(g));
    }
  }

  // the splits of f^m are mostly single monomials; dropping divisibility
  // multiples here keeps the Buchberger pair queue small
  std::sort(monomials.begin(), monomials.end(),
            [](const Exponents& a, const Exponents& b) {
              return compare_exponents(a, b, MonomialOrder::GrLex) < 0;
            });
  monomials.erase(std::unique(monomials.begin(), monomials.end()), monomials.end());
  std::vector<Exponents> minimal;
  for (const auto& m : monomials) {
    bool redundant = false;
    for (const auto& kept : minimal) {
      if (monomial_divides(kept, m)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) minimal.push_back(m);
  }
  for (auto& m : minimal) pieces.push_back(MvPoly::monomial(ring, std::move(m), 1));

  Ideal raw(ring, std::move(pieces));
  MonomialOrder ord = ring->order();
  std::vector<MvPoly> basis = raw.groebner(ord);
  return Ideal::from_reduced_groebner(ring, std::move(basis), ord);
}

}  // namespace fsing

#endif  // FSING_FROBENIUS_HPP
