#ifndef FSING_BSATO_HPP
#define FSING_BSATO_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fsing/report.hpp"
#include "fsing/singular.hpp"

namespace fsing {

/// Root data of the level-e Bernstein-Sato polynomial: the simple roots
/// sum_l i_l/p^{e+1-l} over the digit tuples of Gamma_f^e, and for e = 1 the
/// equivalent F_p-roots of b_f.
struct BSFactorization {
  size_t level = 1;
  uint64_t prime = 2;
  std::set<PPowRational> roots;
  std::set<uint64_t> char_p_roots;  // populated at level 1 only
};

inline BSFactorization bs_poly(const MvPoly& f, size_t e) {
  GammaSet g = gamma_set(f, e);
  BSFactorization b;
  b.level = e;
  b.prime = g.prime;
  for (const auto& t : g.tuples) {
    b.roots.insert(PPowRational(BigInt(t.value_u64()), e, b.prime));
    if (e == 1) b.char_p_roots.insert(t.digits[0] % b.prime);
  }
  return b;
}

/// Cross-check of the main correspondence: the level-e digit tuples must be
/// exactly the truncations (last e digits) of the level-(e+refinement)
/// tuples, and every prefix (first e digits) must land back in the level-e
/// set.
inline VerifyReport verify_main_theorem(const MvPoly& f, size_t e, size_t refinement) {
  if (refinement < 1) throw std::invalid_argument("verify_main_theorem: refinement must be >= 1");
  GammaSet coarse = gamma_set(f, e);
  GammaSet fine = gamma_set(f, e + refinement);

  VerifyReport rep;
  std::set<DigitTuple> truncated;
  for (const auto& t : fine.tuples) {
    DigitTuple last{std::vector<uint64_t>(t.digits.begin() + refinement, t.digits.end()), t.prime};
    DigitTuple first{std::vector<uint64_t>(t.digits.begin(), t.digits.begin() + e), t.prime};
    truncated.insert(last);
    ++rep.checks;
    if (!coarse.tuples.count(last)) {
      rep.fail("truncation " + last.to_string() + " of " + t.to_string() +
               " missing from level-" + std::to_string(e) + " set");
    }
    ++rep.checks;
    if (!coarse.tuples.count(first)) {
      rep.fail("prefix " + first.to_string() + " of " + t.to_string() +
               " missing from level-" + std::to_string(e) + " set");
    }
  }
  for (const auto& t : coarse.tuples) {
    ++rep.checks;
    if (!truncated.count(t)) {
      rep.fail("level-" + std::to_string(e) + " tuple " + t.to_string() +
               " not hit by any level-" + std::to_string(e + refinement) + " truncation");
    }
  }
  return rep;
}

/// For a polynomial whose monomials share weighted degree d mod p (weights w,
/// d a unit mod p) and whose Jacobian ideal has finite colength: every
/// F_p-root of b_f other than p-1 must equal -sum w_i(u_i+1)/d for a monomial
/// x^u of the staircase outside the Jacobian initial ideal.
inline VerifyReport quasihomogeneous_check(const MvPoly& f, const std::vector<int64_t>& weights,
                                           int64_t d) {
  const RingPtr& ring = f.ring();
  const uint64_t p = ring->prime();
  const size_t n = ring->num_vars();
  if (f.is_zero() || f.is_unit()) throw std::domain_error("quasihomogeneous_check: f must be a nonzero nonunit");
  if (weights.size() != n) throw std::domain_error("quasihomogeneous_check: one weight per variable required");

  auto mod_p = [p](int64_t v) {
    int64_t r = v % static_cast<int64_t>(p);
    if (r < 0) r += static_cast<int64_t>(p);
    return static_cast<uint64_t>(r);
  };

  uint64_t d_mod = mod_p(d);
  if (d_mod == 0) throw std::domain_error("quasihomogeneous_check: degree d is divisible by p");

  for (const auto& t : f.terms()) {
    uint64_t wdeg = 0;
    for (size_t i = 0; i < n; ++i) {
      wdeg = fp::add(wdeg, fp::mul(t.mono[i] % p, mod_p(weights[i]), p), p);
    }
    if (wdeg != d_mod) {
      Exponents mono = t.mono;
      throw std::domain_error("quasihomogeneous_check: monomial " +
                              render(MvPoly::monomial(ring, mono, 1)) +
                              " has weighted degree != d mod p");
    }
  }

  std::vector<MvPoly> partials;
  for (size_t i = 0; i < n; ++i) {
    MvPoly di = derivative(f, i);
    if (!di.is_zero()) partials.push_back(std::move(di));
  }
  Ideal jac(ring, std::move(partials));
  const auto& gbasis = jac.groebner();

  // finite colength: each variable must show a pure power among the leading
  // monomials
  std::vector<uint64_t> box(n, 0);
  for (size_t i = 0; i < n; ++i) {
    for (const auto& g : gbasis) {
      const Exponents& lm = g.leading_term().mono;
      bool pure = lm[i] > 0;
      for (size_t j = 0; j < n && pure; ++j) {
        if (j != i && lm[j] > 0) pure = false;
      }
      if (pure && (box[i] == 0 || lm[i] < box[i])) box[i] = lm[i];
    }
    if (box[i] == 0) {
      throw std::domain_error("quasihomogeneous_check: Jacobian ideal has infinite colength (no pure power of " +
                              ring->var_names()[i] + " in its initial ideal)");
    }
  }

  // staircase of the initial ideal, enumerated inside the pure-power box
  std::vector<Exponents> staircase;
  Exponents u(n, 0);
  while (true) {
    bool outside = true;
    for (const auto& g : gbasis) {
      if (monomial_divides(g.leading_term().mono, u)) {
        outside = false;
        break;
      }
    }
    if (outside) staircase.push_back(u);
    size_t i = 0;
    while (i < n) {
      if (++u[i] < box[i]) break;
      u[i] = 0;
      ++i;
    }
    if (i == n) break;
  }

  GammaSet g1 = gamma_set(f, 1);
  uint64_t inv_d = fp::inv(d_mod, p);

  VerifyReport rep;
  for (const auto& t : g1.tuples) {
    uint64_t root = t.digits[0];
    if (root == p - 1) continue;  // the root -1 is not covered by the predictor
    ++rep.checks;
    bool matched = false;
    for (const auto& mono : staircase) {
      uint64_t s = 0;
      for (size_t i = 0; i < n; ++i) {
        s = fp::add(s, fp::mul((mono[i] + 1) % p, mod_p(weights[i]), p), p);
      }
      uint64_t predicted = fp::neg(fp::mul(s, inv_d, p), p);
      if (predicted == root) {
        matched = true;
        rep.witnesses.push_back("root " + std::to_string(root) + " matched by monomial " +
                                render(MvPoly::monomial(ring, mono, 1)));
        break;
      }
    }
    if (!matched) {
      rep.pass = false;
      rep.witnesses.push_back("root " + std::to_string(root) + " has no matching staircase monomial");
    }
  }
  return rep;
}

}  // namespace fsing

#endif  // FSING_BSATO_HPP
