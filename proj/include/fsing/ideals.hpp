#ifndef FSING_IDEALS_HPP
#define FSING_IDEALS_HPP

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fsing/poly.hpp"

namespace fsing {

/// Thrown when Buchberger exceeds the configured S-pair budget. The engine
/// never returns an unverified basis.
class resource_cap_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::atomic<uint64_t>& gb_pair_cap() {
  static std::atomic<uint64_t> cap{500000};
  return cap;
}

inline bool monomial_divides(const Exponents& a, const Exponents& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

inline Exponents monomial_quotient(const Exponents& b, const Exponents& a) {
  Exponents q(b.size());
  for (size_t i = 0; i < b.size(); ++i) q[i] = b[i] - a[i];
  return q;
}

inline Exponents monomial_lcm(const Exponents& a, const Exponents& b) {
  Exponents l(a.size());
  for (size_t i = 0; i < a.size(); ++i) l[i] = std::max(a[i], b[i]);
  return l;
}

namespace gb {

// Polynomials inside the engine are term vectors sorted descending under the
// engine's order, which need not be the ring's storage order.
using TermVec = std::vector<Term>;

inline TermVec to_termvec(const MvPoly& f, MonomialOrder ord) {
  TermVec v = f.terms();
  if (ord != f.ring()->order()) {
    std::sort(v.begin(), v.end(), [&](const Term& a, const Term& b) {
      return compare_exponents(a.mono, b.mono, ord) > 0;
    });
  }
  return v;
}

inline MvPoly to_poly(const RingPtr& ring, const TermVec& v) {
  return MvPoly::from_terms(ring, v);
}

// dst -= c * x^shift * src, both sorted descending under ord
inline TermVec axpy_sub(const TermVec& dst, uint64_t c, const Exponents& shift, const TermVec& src,
                        uint64_t p, MonomialOrder ord) {
  TermVec out;
  out.reserve(dst.size() + src.size());
  size_t i = 0, j = 0;
  auto shifted = [&](size_t k) {
    Exponents m(src[k].mono.size());
    for (size_t t = 0; t < m.size(); ++t) m[t] = checked_add_u64(src[k].mono[t], shift[t]);
    return m;
  };
  Exponents cur;
  if (j < src.size()) cur = shifted(j);
  while (i < dst.size() || j < src.size()) {
    int cmp;
    if (i == dst.size()) cmp = -1;
    else if (j == src.size()) cmp = 1;
    else cmp = compare_exponents(dst[i].mono, cur, ord);
    if (cmp > 0) {
      out.push_back(dst[i++]);
    } else if (cmp < 0) {
      uint64_t v = fp::neg(fp::mul(c, src[j].coeff, p), p);
      if (v != 0) out.push_back({cur, v});
      if (++j < src.size()) cur = shifted(j);
    } else {
      uint64_t v = fp::sub(dst[i].coeff, fp::mul(c, src[j].coeff, p), p);
      if (v != 0) out.push_back({dst[i].mono, v});
      ++i;
      if (++j < src.size()) cur = shifted(j);
    }
  }
  return out;
}

struct Reduction {
  TermVec remainder;
  std::vector<std::vector<Term>> quotients;  // aligned with the basis
};

// full multivariate division: every remainder term is divisible by no leading
// monomial of the basis
inline Reduction reduce_full(TermVec w, const std::vector<TermVec>& basis, uint64_t p,
                             MonomialOrder ord, bool track_quotients = false) {
  Reduction res;
  if (track_quotients) res.quotients.resize(basis.size());
  TermVec rem;
  while (!w.empty()) {
    bool reduced = false;
    for (size_t k = 0; k < basis.size(); ++k) {
      if (basis[k].empty()) continue;
      const Term& lt = basis[k].front();
      if (!monomial_divides(lt.mono, w.front().mono)) continue;
      uint64_t c = fp::mul(w.front().coeff, fp::inv(lt.coeff, p), p);
      Exponents shift = monomial_quotient(w.front().mono, lt.mono);
      if (track_quotients) res.quotients[k].push_back({shift, c});
      w = axpy_sub(w, c, shift, basis[k], p, ord);
      reduced = true;
      break;
    }
    if (!reduced) {
      rem.push_back(w.front());
      w.erase(w.begin());
    }
  }
  res.remainder = std::move(rem);
  return res;
}

inline TermVec s_poly(const TermVec& f, const TermVec& g, uint64_t p, MonomialOrder ord) {
  Exponents l = monomial_lcm(f.front().mono, g.front().mono);
  // l/lt(f) * f / lc(f)  -  l/lt(g) * g / lc(g)
  TermVec lhs;
  {
    Exponents shift = monomial_quotient(l, f.front().mono);
    uint64_t c = fp::inv(f.front().coeff, p);
    lhs.reserve(f.size());
    for (const auto& t : f) {
      Exponents m(t.mono.size());
      for (size_t i = 0; i < m.size(); ++i) m[i] = checked_add_u64(t.mono[i], shift[i]);
      lhs.push_back({std::move(m), fp::mul(t.coeff, c, p)});
    }
  }
  Exponents shift = monomial_quotient(l, g.front().mono);
  uint64_t c = fp::inv(g.front().coeff, p);
  return axpy_sub(lhs, c, shift, g, p, ord);
}

// Buchberger with the coprimality and chain criteria, explicit pair budget.
inline std::vector<TermVec> buchberger(std::vector<TermVec> basis, uint64_t p, MonomialOrder ord,
                                       uint64_t pair_cap) {
  basis.erase(std::remove_if(basis.begin(), basis.end(), [](const TermVec& v) { return v.empty(); }),
              basis.end());

  // light interreduction keeps the pair count down
  for (size_t k = 0; k < basis.size(); ++k) {
    std::vector<TermVec> others;
    others.reserve(basis.size() - 1);
    for (size_t j = 0; j < basis.size(); ++j) {
      if (j != k) others.push_back(basis[j]);
    }
    basis[k] = reduce_full(basis[k], others, p, ord).remainder;
  }
  basis.erase(std::remove_if(basis.begin(), basis.end(), [](const TermVec& v) { return v.empty(); }),
              basis.end());

  struct PairKey {
    uint64_t deg;
    Exponents lcm;
    size_t i, j;
  };
  auto pair_less = [ord](const PairKey& a, const PairKey& b) {
    if (a.deg != b.deg) return a.deg < b.deg;
    int c = compare_exponents(a.lcm, b.lcm, ord);
    if (c != 0) return c < 0;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  };
  std::set<PairKey, decltype(pair_less)> queue(pair_less);
  std::set<std::pair<size_t, size_t>> pending;

  auto push_pair = [&](size_t i, size_t j) {
    Exponents l = monomial_lcm(basis[i].front().mono, basis[j].front().mono);
    queue.insert({total_degree(l), std::move(l), i, j});
    pending.insert({i, j});
  };

  for (size_t i = 0; i < basis.size(); ++i) {
    for (size_t j = i + 1; j < basis.size(); ++j) push_pair(i, j);
  }

  uint64_t processed = 0;
  while (!queue.empty()) {
    if (++processed > pair_cap) {
      throw resource_cap_error("groebner: S-pair budget exceeded (" + std::to_string(pair_cap) + ")");
    }
    PairKey pk = *queue.begin();
    queue.erase(queue.begin());
    pending.erase({pk.i, pk.j});

    const Exponents& lmi = basis[pk.i].front().mono;
    const Exponents& lmj = basis[pk.j].front().mono;

    // coprime leading monomials: S-polynomial reduces to zero
    bool coprime = true;
    for (size_t t = 0; t < lmi.size(); ++t) {
      if (std::min(lmi[t], lmj[t]) > 0) {
        coprime = false;
        break;
      }
    }
    if (coprime) continue;

    // chain criterion: some k with lm_k | lcm and both companion pairs settled
    bool skip = false;
    for (size_t k = 0; k < basis.size() && !skip; ++k) {
      if (k == pk.i || k == pk.j) continue;
      if (!monomial_divides(basis[k].front().mono, pk.lcm)) continue;
      auto key1 = std::minmax(pk.i, k);
      auto key2 = std::minmax(pk.j, k);
      if (!pending.count({key1.first, key1.second}) && !pending.count({key2.first, key2.second})) {
        skip = true;
      }
    }
    if (skip) continue;

    TermVec s = s_poly(basis[pk.i], basis[pk.j], p, ord);
    TermVec r = reduce_full(std::move(s), basis, p, ord).remainder;
    if (r.empty()) continue;

    basis.push_back(std::move(r));
    size_t n = basis.size() - 1;
    for (size_t i = 0; i < n; ++i) push_pair(i, n);
  }
  return basis;
}

// unique reduced Groebner basis: minimal, monic, fully tail-reduced, sorted
// ascending by leading monomial
inline std::vector<TermVec> reduce_basis(std::vector<TermVec> basis, uint64_t p, MonomialOrder ord) {
  std::sort(basis.begin(), basis.end(), [&](const TermVec& a, const TermVec& b) {
    return compare_exponents(a.front().mono, b.front().mono, ord) < 0;
  });
  std::vector<TermVec> minimal;
  for (auto& g : basis) {
    bool redundant = false;
    for (const auto& h : minimal) {
      if (monomial_divides(h.front().mono, g.front().mono)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) minimal.push_back(std::move(g));
  }
  std::vector<TermVec> out;
  out.reserve(minimal.size());
  for (size_t k = 0; k < minimal.size(); ++k) {
    std::vector<TermVec> others;
    others.reserve(minimal.size() - 1);
    for (size_t j = 0; j < minimal.size(); ++j) {
      if (j != k) others.push_back(minimal[j]);
    }
    TermVec r = reduce_full(minimal[k], others, p, ord).remainder;
    uint64_t c = fp::inv(r.front().coeff, p);
    for (auto& t : r) t.coeff = fp::mul(t.coeff, c, p);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace gb

/// Finitely generated ideal of a PolyRing with a shared write-once cache of
/// reduced Groebner bases, keyed by monomial order.
class Ideal {
 public:
  explicit Ideal(RingPtr ring) : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {}

  Ideal(RingPtr ring, std::vector<MvPoly> gens)
      : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
    for (auto& g : gens) {
      if (!same_ring(g.ring(), ring_)) throw std::invalid_argument("Ideal: generator from another ring");
      if (!g.is_zero()) gens_.push_back(std::move(g));
    }
  }

  static Ideal zero(RingPtr ring) { return Ideal(std::move(ring)); }

  static Ideal unit(RingPtr ring) {
    auto one = MvPoly::constant(ring, 1);
    return Ideal(std::move(ring), {one});
  }

  /// Wraps a list already known to be the reduced Groebner basis under `ord`,
  /// seeding the cache so it is never recomputed.
  static Ideal from_reduced_groebner(RingPtr ring, std::vector<MvPoly> basis, MonomialOrder ord) {
    Ideal I(std::move(ring), basis);
    I.cache_->gb.emplace(ord, std::move(basis));
    return I;
  }

  const RingPtr& ring() const { return ring_; }
  const std::vector<MvPoly>& generators() const { return gens_; }
  bool has_no_generators() const { return gens_.empty(); }

  /// Reduced Groebner basis under `ord`; computed once per order and cached.
  const std::vector<MvPoly>& groebner(MonomialOrder ord) const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->gb.find(ord);
    if (it != cache_->gb.end()) return it->second;
    std::vector<gb::TermVec> input;
    input.reserve(gens_.size());
    for (const auto& g : gens_) input.push_back(gb::to_termvec(g, ord));
    auto raw = gb::buchberger(std::move(input), ring_->prime(), ord, gb_pair_cap().load());
    std::vector<MvPoly> out;
    if (!raw.empty()) {
      auto reduced = gb::reduce_basis(std::move(raw), ring_->prime(), ord);
      out.reserve(reduced.size());
      for (auto& v : reduced) out.push_back(gb::to_poly(ring_, v));
    }
    return cache_->gb.emplace(ord, std::move(out)).first->second;
  }

  const std::vector<MvPoly>& groebner() const { return groebner(ring_->order()); }

  bool cached(MonomialOrder ord) const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    return cache_->gb.count(ord) > 0;
  }

 private:
  struct Cache {
    std::mutex mu;
    std::map<MonomialOrder, std::vector<MvPoly>> gb;
  };
  RingPtr ring_;
  std::vector<MvPoly> gens_;
  std::shared_ptr<Cache> cache_;
};

inline const std::vector<MvPoly>& groebner(const Ideal& I, MonomialOrder ord) { return I.groebner(ord); }
inline const std::vector<MvPoly>& groebner(const Ideal& I) { return I.groebner(); }

struct DivisionResult {
  MvPoly remainder;
  std::vector<MvPoly> quotients;  // f = sum quotients[k]*basis[k] + remainder
};

inline DivisionResult divide(const MvPoly& f, const std::vector<MvPoly>& basis, MonomialOrder ord) {
  const uint64_t p = f.ring()->prime();
  std::vector<gb::TermVec> b;
  b.reserve(basis.size());
  for (const auto& g : basis) {
    f.check_ring(g);
    b.push_back(gb::to_termvec(g, ord));
  }
  auto red = gb::reduce_full(gb::to_termvec(f, ord), b, p, ord, true);
  DivisionResult out;
  out.remainder = gb::to_poly(f.ring(), red.remainder);
  out.quotients.reserve(basis.size());
  for (auto& q : red.quotients) out.quotients.push_back(MvPoly::from_terms(f.ring(), q));
  return out;
}

inline MvPoly normal_form(const MvPoly& f, const Ideal& I, MonomialOrder ord) {
  const auto& g = I.groebner(ord);
  const uint64_t p = f.ring()->prime();
  std::vector<gb::TermVec> b;
  b.reserve(g.size());
  for (const auto& h : g) b.push_back(gb::to_termvec(h, ord));
  return gb::to_poly(f.ring(), gb::reduce_full(gb::to_termvec(f, ord), b, p, ord).remainder);
}

inline bool member(const MvPoly& f, const Ideal& I) {
  if (!same_ring(f.ring(), I.ring())) throw std::invalid_argument("member: ring mismatch");
  if (f.is_zero()) return true;
  return normal_form(f, I, I.ring()->order()).is_zero();
}

inline bool contains(const Ideal& I, const Ideal& J) {
  if (!same_ring(I.ring(), J.ring())) throw std::invalid_argument("contains: ring mismatch");
  for (const auto& g : J.generators()) {
    if (!member(g, I)) return false;
  }
  return true;
}

inline bool equal(const Ideal& I, const Ideal& J) {
  if (!same_ring(I.ring(), J.ring())) throw std::invalid_argument("equal: ring mismatch");
  MonomialOrder ord = I.ring()->order();
  // reduced Groebner bases are unique, so comparing cached bases decides
  // equality without any divisions
  if (I.cached(ord) && J.cached(ord)) return I.groebner(ord) == J.groebner(ord);
  return contains(I, J) && contains(J, I);
}

inline bool is_unit_ideal(const Ideal& I) {
  const auto& g = I.groebner();
  return g.size() == 1 && g[0].is_unit();
}

/// f in Rad(I), by the Rabinowitsch trick: adjoin one variable z and test
/// whether 1 lies in I + (1 - z*f).
inline bool radical_member(const MvPoly& f, const Ideal& I) {
  if (!same_ring(f.ring(), I.ring())) throw std::invalid_argument("radical_member: ring mismatch");
  if (f.is_zero()) return true;
  const auto& base = *I.ring();
  std::string fresh = "_z";
  while (base.var_index(fresh)) fresh += "_";
  std::vector<std::string> vars = base.var_names();
  vars.push_back(fresh);
  RingPtr ext = make_ring(base.prime(), std::move(vars), base.order());

  auto lift = [&](const MvPoly& g) {
    std::vector<Term> terms;
    terms.reserve(g.num_terms());
    for (const auto& t : g.terms()) {
      Exponents m = t.mono;
      m.push_back(0);
      terms.push_back({std::move(m), t.coeff});
    }
    return MvPoly::from_terms(ext, std::move(terms));
  };

  std::vector<MvPoly> gens;
  gens.reserve(I.generators().size() + 1);
  for (const auto& g : I.generators()) gens.push_back(lift(g));
  MvPoly z = MvPoly::variable(ext, ext->num_vars() - 1);
  gens.push_back(MvPoly::constant(ext, 1) - z * lift(f));
  return is_unit_ideal(Ideal(ext, std::move(gens)));
}

inline std::string render(const Ideal& I) {
  const auto& g = I.groebner();
  std::string out = "(";
  for (size_t i = 0; i < g.size(); ++i) {
    if (i) out += ", ";
    out += render(g[i]);
  }
  if (g.empty()) out += "0";
  return out + ")";
}

}  // namespace fsing

#endif  // FSING_IDEALS_HPP
