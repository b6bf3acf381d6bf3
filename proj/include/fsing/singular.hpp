#ifndef FSING_SINGULAR_HPP
#define FSING_SINGULAR_HPP

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fsing/frobenius.hpp"

namespace fsing {

/// tau(f^{m/p^e}) = (f^m)^{[1/p^e]}.
inline Ideal test_ideal_padic(const MvPoly& f, const BigInt& m, size_t e) {
  if (f.is_zero()) throw std::domain_error("test_ideal_padic: zero polynomial");
  return frobenius_root(Ideal(f.ring(), {pow(f, m)}), e);
}

inline Ideal test_ideal_padic(const MvPoly& f, uint64_t m, size_t e) {
  return test_ideal_padic(f, BigInt(m), e);
}

struct TestIdealResult {
  Ideal ideal;
  size_t level;  // first e with equality to level e+1, or e_cap when unstabilized
  bool stabilized;
};

/// tau(f^lambda): scans e = e_start, e_start+1, ... and returns the first
/// level whose ideal agrees with the next one. The chain is increasing, so
/// agreement certifies stabilization at that level; running past e_cap yields
/// the last ideal flagged unstabilized.
inline TestIdealResult test_ideal(const MvPoly& f, const BigRational& lambda, size_t e_start = 1,
                                  size_t e_cap = 6) {
  if (f.is_zero()) throw std::domain_error("test_ideal: zero polynomial");
  if (lambda < 0) throw std::domain_error("test_ideal: lambda must be nonnegative");
  if (e_cap < e_start) throw std::invalid_argument("test_ideal: e_cap < e_start");
  const uint64_t p = f.ring()->prime();

  auto level_ideal = [&](size_t e) {
    return frobenius_root(Ideal(f.ring(), {pow(f, ceil_scale_pow(lambda, p, e))}), e);
  };

  Ideal cur = level_ideal(e_start);
  for (size_t e = e_start; e < e_cap; ++e) {
    Ideal next = level_ideal(e + 1);
    if (!contains(next, cur)) throw std::logic_error("test_ideal: chain not increasing");
    if (equal(cur, next)) return {cur, e, true};
    cur = std::move(next);
  }
  return {cur, e_cap, false};
}

namespace detail {

// The full ladder I_m = (h*f^m)^{[1/p^e]}, m = 0..p^e, with monotonicity
// asserted at every step, plus the list of m where it strictly drops.
struct PadicChain {
  std::vector<Ideal> ideals;      // size p^e + 1
  std::vector<uint64_t> drops;    // m with I_m != I_{m+1}
};

inline PadicChain padic_chain(const MvPoly& f, const MvPoly& h, size_t e) {
  if (f.is_zero() || h.is_zero()) throw std::domain_error("padic chain: zero polynomial");
  if (e == 0) throw std::domain_error("padic chain: level must be >= 1");
  const uint64_t q = checked_pow_u64(f.ring()->prime(), e);
  f.check_ring(h);

  PadicChain chain;
  chain.ideals.reserve(q + 1);
  MvPoly cur = h;
  chain.ideals.push_back(frobenius_root(Ideal(f.ring(), {cur}), e));
  for (uint64_t m = 0; m < q; ++m) {
    cur = cur * f;
    Ideal next = frobenius_root(Ideal(f.ring(), {cur}), e);
    const Ideal& prev = chain.ideals.back();
    if (!contains(prev, next)) throw std::logic_error("padic chain: ladder failed to decrease");
    if (!equal(prev, next)) chain.drops.push_back(m);
    chain.ideals.push_back(std::move(next));
  }
  return chain;
}

}  // namespace detail

/// Digit tuples whose simultaneous eigenspace in M_f^e/tM_f^e is nonzero;
/// equivalently the m where the p-adic test-ideal ladder drops.
struct GammaSet {
  size_t level = 1;
  uint64_t prime = 2;
  std::set<DigitTuple> tuples;

  bool operator==(const GammaSet& o) const {
    return level == o.level && prime == o.prime && tuples == o.tuples;
  }
};

inline GammaSet gamma_set_relative(const MvPoly& f, const MvPoly& h, size_t e) {
  if (f.is_unit()) throw std::domain_error("gamma_set: f must not be a unit");
  auto chain = detail::padic_chain(f, h, e);
  GammaSet g;
  g.level = e;
  g.prime = f.ring()->prime();
  for (uint64_t m : chain.drops) g.tuples.insert(p_digits(m, g.prime, e));
  return g;
}

inline GammaSet gamma_set(const MvPoly& f, size_t e) {
  return gamma_set_relative(f, MvPoly::constant(f.ring(), 1), e);
}

struct JumpInterval {
  PPowRational lo;  // open end
  PPowRational hi;  // closed end, certified to contain an F-jumping exponent
};

struct JumpReport {
  size_t level = 1;
  uint64_t prime = 2;
  std::vector<JumpInterval> jumps;
  std::vector<Ideal> chain;  // tau(f^{m/p^e}) for m = 0..p^e
};

inline JumpReport f_jumping_exponents(const MvPoly& f, size_t e) {
  if (f.is_unit()) throw std::domain_error("f_jumping_exponents: f must not be a unit");
  auto chain = detail::padic_chain(f, MvPoly::constant(f.ring(), 1), e);
  JumpReport rep;
  rep.level = e;
  rep.prime = f.ring()->prime();
  for (uint64_t m : chain.drops) {
    rep.jumps.push_back({PPowRational(BigInt(m), e, rep.prime), PPowRational(BigInt(m) + 1, e, rep.prime)});
  }
  rep.chain = std::move(chain.ideals);
  return rep;
}

/// nu^J(p^e): the largest r with f^r not in J^{[p^e]}; 0 when already f in
/// J^{[p^e]}. Requires f in Rad(J) and J proper. Binary search against the
/// bound k*p^e, where k is the least power of f lying in J.
inline uint64_t nu(const MvPoly& f, const Ideal& J, size_t e, uint64_t k_cap = 1024) {
  if (f.is_zero()) throw std::domain_error("nu: zero polynomial");
  if (!same_ring(f.ring(), J.ring())) throw std::invalid_argument("nu: ring mismatch");
  if (is_unit_ideal(J)) throw std::domain_error("nu: J must be a proper ideal");
  if (!radical_member(f, J)) throw std::domain_error("nu: f is not in Rad(J)");

  uint64_t k = 0;
  {
    MvPoly cur = MvPoly::constant(f.ring(), 1);
    for (uint64_t j = 1; j <= k_cap; ++j) {
      cur = cur * f;
      if (member(cur, J)) {
        k = j;
        break;
      }
    }
    if (k == 0) throw resource_cap_error("nu: no power of f up to the cap lies in J");
  }

  Ideal Jq = frobenius_power(J, e);
  auto in_Jq = [&](uint64_t r) { return member(pow(f, r), Jq); };

  uint64_t hi = checked_mul_u64(k, checked_pow_u64(f.ring()->prime(), e));
  // f^hi is guaranteed to lie in J^{[p^e]}; find the first such power
  uint64_t lo = 1;
  if (in_Jq(1)) return 0;
  // invariant: f^lo not in, f^hi in
  while (hi - lo > 1) {
    uint64_t mid = lo + (hi - lo) / 2;
    if (in_Jq(mid)) hi = mid;
    else lo = mid;
  }
  return lo;
}

}  // namespace fsing

#endif  // FSING_SINGULAR_HPP
