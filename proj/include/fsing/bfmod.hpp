#ifndef FSING_BFMOD_HPP
#define FSING_BFMOD_HPP

#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fsing/report.hpp"
#include "fsing/singular.hpp"

namespace fsing {

/// Ambient data for B_f = R[t]_{f-t}/R[t]: the ring, the polynomial f, and a
/// grow-on-demand cache of powers of f.
class BfContext {
 public:
  BfContext(RingPtr ring, MvPoly f) : ring_(std::move(ring)), f_(std::move(f)) {
    if (!same_ring(f_.ring(), ring_)) throw std::invalid_argument("BfContext: f from another ring");
    if (f_.is_zero()) throw std::domain_error("BfContext: f must be nonzero");
  }

  const RingPtr& ring() const { return ring_; }
  const MvPoly& f() const { return f_; }
  uint64_t prime() const { return ring_->prime(); }

  // f^k, cached
  MvPoly f_power(uint64_t k) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (powers_.empty()) powers_.push_back(MvPoly::constant(ring_, 1));
    while (powers_.size() <= k) powers_.push_back(powers_.back() * f_);
    return powers_[k];
  }

  // f^{p^k}, cached
  MvPoly f_frobenius(size_t k) const {
    std::lock_guard<std::mutex> lock(mu_);
    while (frob_.size() <= k) frob_.push_back(frobenius_pow(f_, frob_.size()));
    return frob_[k];
  }

 private:
  RingPtr ring_;
  MvPoly f_;
  mutable std::mutex mu_;
  mutable std::vector<MvPoly> powers_;
  mutable std::vector<MvPoly> frob_;
};

using BfCtxPtr = std::shared_ptr<const BfContext>;

inline BfCtxPtr make_bf_context(RingPtr ring, MvPoly f) {
  return std::make_shared<const BfContext>(std::move(ring), std::move(f));
}

/// Element of B_f in the delta basis: a finite sum  sum_m  a_m * delta_m with
/// a_m in R, where delta_m is the class of 1/(f-t)^{m+1}.
class BfElement {
 public:
  BfElement() = default;
  explicit BfElement(BfCtxPtr ctx) : ctx_(std::move(ctx)) {}

  static BfElement zero(BfCtxPtr ctx) { return BfElement(std::move(ctx)); }

  static BfElement delta(BfCtxPtr ctx, uint64_t m) {
    BfElement w(ctx);
    w.coeffs_.emplace(m, MvPoly::constant(ctx->ring(), 1));
    return w;
  }

  const BfCtxPtr& context() const { return ctx_; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::map<uint64_t, MvPoly>& coeffs() const { return coeffs_; }

  MvPoly coeff(uint64_t m) const {
    auto it = coeffs_.find(m);
    return it == coeffs_.end() ? MvPoly(ctx_->ring()) : it->second;
  }

  void add_term(uint64_t m, const MvPoly& a) {
    if (a.is_zero()) return;
    auto it = coeffs_.find(m);
    if (it == coeffs_.end()) {
      coeffs_.emplace(m, a);
    } else {
      it->second = it->second + a;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }

  BfElement operator+(const BfElement& o) const {
    check(o);
    BfElement r = *this;
    for (const auto& [m, a] : o.coeffs_) r.add_term(m, a);
    return r;
  }

  BfElement operator-(const BfElement& o) const {
    check(o);
    BfElement r = *this;
    for (const auto& [m, a] : o.coeffs_) r.add_term(m, -a);
    return r;
  }

  BfElement operator-() const {
    BfElement r(ctx_);
    for (const auto& [m, a] : coeffs_) r.coeffs_.emplace(m, -a);
    return r;
  }

  BfElement scaled(uint64_t c) const {
    BfElement r(ctx_);
    c %= ctx_->prime();
    if (c == 0) return r;
    for (const auto& [m, a] : coeffs_) {
      MvPoly v = a.scaled(c);
      if (!v.is_zero()) r.coeffs_.emplace(m, std::move(v));
    }
    return r;
  }

  BfElement times(const MvPoly& g) const {
    BfElement r(ctx_);
    if (g.is_zero()) return r;
    for (const auto& [m, a] : coeffs_) {
      MvPoly v = a * g;
      if (!v.is_zero()) r.coeffs_.emplace(m, std::move(v));
    }
    return r;
  }

  bool operator==(const BfElement& o) const { return coeffs_ == o.coeffs_; }
  bool operator!=(const BfElement& o) const { return !(*this == o); }

  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::string s;
    for (const auto& [m, a] : coeffs_) {
      if (!s.empty()) s += " + ";
      s += "(" + render(a) + ")*d" + std::to_string(m);
    }
    return s;
  }

 private:
  void check(const BfElement& o) const {
    if (ctx_ != o.ctx_ && !(ctx_ && o.ctx_ && same_ring(ctx_->ring(), o.ctx_->ring()) && ctx_->f() == o.ctx_->f())) {
      throw std::invalid_argument("BfElement: context mismatch");
    }
  }

  BfCtxPtr ctx_;
  std::map<uint64_t, MvPoly> coeffs_;
};

/// t^{p^k} . delta_m = f^{p^k} delta_m - delta_{m-p^k}   (delta_{<0} = 0)
inline BfElement act_t_power(const BfElement& w, size_t k) {
  const auto& ctx = w.context();
  uint64_t q = checked_pow_u64(ctx->prime(), k);
  MvPoly fq = ctx->f_frobenius(k);
  BfElement r(ctx);
  for (const auto& [m, a] : w.coeffs()) {
    r.add_term(m, a * fq);
    if (m >= q) r.add_term(m - q, -a);
  }
  return r;
}

/// dt^{[p^k]} . delta_m = C(m+p^k, p^k) delta_{m+p^k}
inline BfElement act_dt(const BfElement& w, size_t k) {
  const auto& ctx = w.context();
  const uint64_t p = ctx->prime();
  uint64_t q = checked_pow_u64(p, k);
  BfElement r(ctx);
  for (const auto& [m, a] : w.coeffs()) {
    uint64_t idx = checked_add_u64(m, q);
    uint64_t c = lucas_binom(idx, q, p).value();
    if (c != 0) r.add_term(idx, a.scaled(c));
  }
  return r;
}

/// theta_{p^k} = dt^{[p^k]} t^{p^k}
inline BfElement act_theta(const BfElement& w, size_t k) { return act_dt(act_t_power(w, k), k); }

/// theta_m for arbitrary m >= 1, via the digit factorization
/// theta_m = prod_i (1/a_i!) prod_{j<a_i} (theta_{p^i} + j).
inline BfElement act_theta_general(const BfElement& w, uint64_t m) {
  if (m == 0) throw std::domain_error("act_theta_general: m must be >= 1");
  const uint64_t p = w.context()->prime();
  BfElement cur = w;
  uint64_t scalar = 1;
  uint64_t rest = m;
  size_t level = 0;
  while (rest > 0) {
    uint64_t d = rest % p;
    for (uint64_t j = 0; j < d; ++j) {
      cur = act_theta(cur, level) + cur.scaled(j);
    }
    uint64_t fact = 1;
    for (uint64_t j = 2; j <= d; ++j) fact = fp::mul(fact, j, p);
    scalar = fp::mul(scalar, fp::inv(fact, p), p);
    rest /= p;
    ++level;
  }
  return cur.scaled(scalar);
}

/// Index of a basis eigenvector Q^m_{i_1..i_e}.
struct QIndex {
  size_t level = 1;
  DigitTuple digits;
  uint64_t m = 0;

  bool operator<(const QIndex& o) const {
    if (m != o.m) return m < o.m;
    if (level != o.level) return level < o.level;
    return digits < o.digits;
  }
  bool operator==(const QIndex& o) const {
    return level == o.level && m == o.m && digits == o.digits;
  }

  std::string to_string() const {
    return "Q^" + std::to_string(m) + "_" + digits.to_string();
  }
};

/// The expansion of Q^m_{i_1..i_e} in the delta basis:
///   (-1)^{sum i}  sum_j  prod_l C(i_l+j_l, i_l) f^{sum j_l p^{l-1}}
///                        delta_{m p^e + sum (i_l+j_l) p^{l-1}},
/// the sum over 0 <= j_l <= p-1-i_l.
inline BfElement q_element(const BfCtxPtr& ctx, const QIndex& idx) {
  const uint64_t p = ctx->prime();
  const size_t e = idx.level;
  if (idx.digits.level() != e) throw std::invalid_argument("q_element: digit count != level");
  for (uint64_t d : idx.digits.digits) {
    if (d >= p) throw std::invalid_argument("q_element: digit out of range");
  }
  uint64_t q = checked_pow_u64(p, e);
  uint64_t base = checked_mul_u64(idx.m, q);

  uint64_t digit_sum = 0;
  for (uint64_t d : idx.digits.digits) digit_sum += d;
  uint64_t sign = (digit_sum % 2 == 0) ? 1 : p - 1;

  BfElement out(ctx);
  std::vector<uint64_t> j(e, 0);
  while (true) {
    uint64_t coeff = sign;
    uint64_t fexp = 0, shift = 0, scale = 1;
    for (size_t l = 0; l < e; ++l) {
      uint64_t il = idx.digits.digits[l];
      coeff = fp::mul(coeff, small_binom_mod((il + j[l]) % p, il % p, p), p);
      fexp += j[l] * scale;
      shift += (il + j[l]) * scale;
      scale *= p;
    }
    if (coeff != 0) {
      out.add_term(checked_add_u64(base, shift), ctx->f_power(fexp).scaled(coeff));
    }
    size_t l = 0;
    while (l < e) {
      uint64_t cap = p - 1 - idx.digits.digits[l];
      if (++j[l] <= cap) break;
      j[l] = 0;
      ++l;
    }
    if (l == e) break;
  }
  return out;
}

/// Projector onto the theta_{p^k}-eigencomponent of eigenvalue -i:
/// P_i = -prod_{j != i} (theta + j), normalized by Wilson's theorem.
inline BfElement eigen_project(const BfElement& w, size_t k, uint64_t i) {
  const uint64_t p = w.context()->prime();
  BfElement cur = w;
  for (uint64_t j = 0; j < p; ++j) {
    if (j == i) continue;
    cur = act_theta(cur, k) + cur.scaled(j);
  }
  return cur.scaled(p - 1);
}

/// Simultaneous eigenspace decomposition for theta_1,...,theta_{p^{e-1}};
/// the component at (i_1,...,i_e) is annihilated by every theta_{p^{l-1}} + i_l.
/// Zero components are omitted.
inline std::map<DigitTuple, BfElement> eigen_decompose(const BfElement& w, size_t e) {
  if (e == 0) throw std::domain_error("eigen_decompose: level must be >= 1");
  const uint64_t p = w.context()->prime();
  std::vector<std::pair<std::vector<uint64_t>, BfElement>> parts;
  parts.emplace_back(std::vector<uint64_t>{}, w);
  for (size_t l = 0; l < e; ++l) {
    std::vector<std::pair<std::vector<uint64_t>, BfElement>> next;
    for (const auto& [prefix, u] : parts) {
      for (uint64_t i = 0; i < p; ++i) {
        BfElement v = eigen_project(u, l, i);
        if (v.is_zero()) continue;
        auto digits = prefix;
        digits.push_back(i);
        next.emplace_back(std::move(digits), std::move(v));
      }
    }
    parts = std::move(next);
  }
  std::map<DigitTuple, BfElement> out;
  for (auto& [digits, u] : parts) out.emplace(DigitTuple{std::move(digits), p}, std::move(u));
  return out;
}

/// Coordinates of w in the Q basis at level e, by back-substitution against
/// the triangular delta expansion (the least delta index of Q^m_{i..} is
/// m p^e + sum i_l p^{l-1}, with unit coefficient).
inline std::map<QIndex, MvPoly> q_coordinates(const BfElement& w, size_t e) {
  if (e == 0) throw std::domain_error("q_coordinates: level must be >= 1");
  const auto& ctx = w.context();
  const uint64_t p = ctx->prime();
  uint64_t q = checked_pow_u64(p, e);
  std::map<QIndex, MvPoly> coords;
  BfElement rest = w;
  while (!rest.is_zero()) {
    auto [n, a] = *rest.coeffs().begin();
    QIndex idx;
    idx.level = e;
    idx.m = n / q;
    idx.digits = p_digits(n % q, p, e);
    uint64_t digit_sum = 0;
    for (uint64_t d : idx.digits.digits) digit_sum += d;
    MvPoly c = (digit_sum % 2 == 0) ? a : a.scaled(p - 1);
    rest = rest - q_element(ctx, idx).times(c);
    coords.emplace(std::move(idx), std::move(c));
  }
  return coords;
}

/// Frobenius structure map of the unit F-module B_f:
/// a * delta_m  ->  a^p * delta_{p(m+1)-1}.
inline BfElement frobenius_push(const BfElement& w) {
  const auto& ctx = w.context();
  const uint64_t p = ctx->prime();
  BfElement r(ctx);
  for (const auto& [m, a] : w.coeffs()) {
    uint64_t idx = checked_add_u64(checked_mul_u64(p, m), p - 1);
    r.add_term(idx, frobenius_pow(a, 1));
  }
  return r;
}

namespace detail {

// t^{p^{l-1}} sends the component (i_1..i_e) to the tuple produced by the
// borrow cascade at position l (1-indexed); wraps = true when every digit
// from l on was zero (the f^{p^e}/m-1 case).
inline std::pair<DigitTuple, bool> t_shift_tuple(const DigitTuple& t, size_t l, uint64_t p) {
  DigitTuple out = t;
  size_t e = t.level();
  size_t lp = l;
  while (lp <= e && out.digits[lp - 1] == 0) ++lp;
  if (lp > e) {
    for (size_t k = l; k <= e; ++k) out.digits[k - 1] = p - 1;
    return {out, true};
  }
  for (size_t k = l; k < lp; ++k) out.digits[k - 1] = p - 1;
  out.digits[lp - 1] -= 1;
  return {out, false};
}

}  // namespace detail

/// Checks the action tables on the Q basis: the dt^{[p^{l-1}]} raising law,
/// the t^{p^{l-1}} borrow table (with the f^{p^e} wraparound), the
/// R-linearity of the eigenvalue, and the component shifts under both
/// operators on pseudorandom eigencomponents.
inline VerifyReport verify_basis_actions(const BfCtxPtr& ctx, size_t e, uint64_t m_bound,
                                         uint64_t seed = 20260809) {
  const uint64_t p = ctx->prime();
  VerifyReport rep;

  std::vector<DigitTuple> tuples;
  {
    uint64_t q = checked_pow_u64(p, e);
    for (uint64_t m = 0; m < q; ++m) tuples.push_back(p_digits(m, p, e));
  }

  for (const auto& t : tuples) {
    for (uint64_t m = 0; m <= m_bound; ++m) {
      QIndex idx{e, t, m};
      BfElement Q = q_element(ctx, idx);
      for (size_t l = 1; l <= e; ++l) {
        // i): dt^{[p^{l-1}]} Q = -(i_l+1) Q_{..i_l+1..}, zero at i_l = p-1
        {
          BfElement lhs = act_dt(Q, l - 1);
          BfElement rhs(ctx);
          uint64_t il = t.digits[l - 1];
          if (il != p - 1) {
            QIndex up{e, t, m};
            up.digits.digits[l - 1] = il + 1;
            rhs = q_element(ctx, up).scaled(fp::neg((il + 1) % p, p));
          }
          ++rep.checks;
          if (lhs != rhs) {
            rep.fail("dt law fails at " + idx.to_string() + ", l=" + std::to_string(l));
          }
        }
        // ii): the t^{p^{l-1}} borrow table
        {
          BfElement lhs = act_t_power(Q, l - 1);
          auto [shifted, wraps] = detail::t_shift_tuple(t, l, p);
          BfElement rhs(ctx);
          if (!wraps) {
            rhs = q_element(ctx, QIndex{e, shifted, m});
          } else {
            rhs = q_element(ctx, QIndex{e, shifted, m}).times(ctx->f_frobenius(e));
            if (m > 0) rhs = rhs - q_element(ctx, QIndex{e, shifted, m - 1});
          }
          ++rep.checks;
          if (lhs != rhs) {
            rep.fail("t law fails at " + idx.to_string() + ", l=" + std::to_string(l));
          }
        }
        // iii): R-multiples of Q stay theta-eigenvectors with eigenvalue -i_l
        {
          MvPoly a = ctx->f_power(1) + MvPoly::constant(ctx->ring(), m + 1);
          BfElement aQ = Q.times(a);
          BfElement lhs = act_theta(aQ, l - 1);
          BfElement rhs = aQ.scaled(fp::neg(t.digits[l - 1] % p, p));
          ++rep.checks;
          if (lhs != rhs) {
            rep.fail("eigenvalue law fails at " + idx.to_string() + ", l=" + std::to_string(l));
          }
        }
      }
    }
  }

  // component shifts on pseudorandom eigencomponents
  std::mt19937_64 rng(seed);
  auto random_poly = [&]() {
    std::vector<Term> terms;
    size_t nv = ctx->ring()->num_vars();
    for (int k = 0; k < 3; ++k) {
      Exponents mono(nv);
      for (auto& x : mono) x = rng() % 3;
      terms.push_back({std::move(mono), rng() % p});
    }
    return MvPoly::from_terms(ctx->ring(), std::move(terms));
  };
  for (int trial = 0; trial < 4; ++trial) {
    BfElement w(ctx);
    for (uint64_t m = 0; m <= m_bound; ++m) w.add_term(rng() % (m_bound + 2), random_poly());
    if (w.is_zero()) continue;
    auto comps = eigen_decompose(w, e);
    for (const auto& [t, u] : comps) {
      for (size_t l = 1; l <= e; ++l) {
        {
          auto img = eigen_decompose(act_dt(u, l - 1), e);
          DigitTuple up = t;
          bool top = t.digits[l - 1] == p - 1;
          if (!top) up.digits[l - 1] += 1;
          ++rep.checks;
          for (const auto& [it, iu] : img) {
            if (top || !(it == up)) {
              rep.fail("dt component shift fails at " + t.to_string() + ", l=" + std::to_string(l));
              break;
            }
          }
        }
        {
          auto img = eigen_decompose(act_t_power(u, l - 1), e);
          auto [shifted, wraps] = detail::t_shift_tuple(t, l, p);
          (void)wraps;
          ++rep.checks;
          for (const auto& [it, iu] : img) {
            if (!(it == shifted)) {
              rep.fail("t component shift fails at " + t.to_string() + ", l=" + std::to_string(l));
              break;
            }
          }
        }
      }
    }
  }
  return rep;
}

/// The level change at m = 0:
/// Q^0_{i_1..i_e} = sum_{j<p} (-1)^j C(p-1,j) f^{j p^e} Q^0_{i_1..i_e,j}.
inline VerifyReport verify_level_transformation(const BfCtxPtr& ctx, size_t e) {
  const uint64_t p = ctx->prime();
  VerifyReport rep;
  uint64_t q = checked_pow_u64(p, e);
  for (uint64_t m = 0; m < q; ++m) {
    DigitTuple t = p_digits(m, p, e);
    BfElement lhs = q_element(ctx, QIndex{e, t, 0});
    BfElement rhs(ctx);
    for (uint64_t j = 0; j < p; ++j) {
      DigitTuple ext = t;
      ext.digits.push_back(j);
      uint64_t c = small_binom_mod(p - 1, j, p);
      if (j % 2 == 1) c = fp::neg(c, p);
      BfElement piece = q_element(ctx, QIndex{e + 1, ext, 0});
      rhs = rhs + piece.times(pow(ctx->f(), BigInt(j) * q).scaled(c));
    }
    ++rep.checks;
    if (lhs != rhs) rep.fail("level transformation fails at " + t.to_string());
  }
  return rep;
}

struct MfeComponent {
  Ideal powered;        // (tau(f^{m/p^e}))^{[p^e]} = D^e . f^m
  Ideal powered_next;   // the same at m+1
  bool nonvanishing;    // the quotient W_{i_1..i_e} is nonzero
};

/// The component data of M_f^e: for each digit tuple, the Frobenius-powered
/// test-ideal pair whose quotient is the eigencomponent of M_f^e/tM_f^e.
/// Consistency of the nonvanishing flags with gamma_set is asserted.
inline std::map<DigitTuple, MfeComponent> mfe_component_ideals(const MvPoly& f, size_t e) {
  if (f.is_unit()) throw std::domain_error("mfe_component_ideals: f must not be a unit");
  auto chain = detail::padic_chain(f, MvPoly::constant(f.ring(), 1), e);
  const uint64_t p = f.ring()->prime();
  uint64_t q = checked_pow_u64(p, e);

  std::vector<Ideal> powered;
  powered.reserve(q + 1);
  for (const auto& I : chain.ideals) powered.push_back(frobenius_power(I, e));

  std::set<uint64_t> drops(chain.drops.begin(), chain.drops.end());

  std::map<DigitTuple, MfeComponent> out;
  for (uint64_t m = 0; m < q; ++m) {
    DigitTuple t = p_digits(m, p, e);
    bool flag = !equal(powered[m], powered[m + 1]);
    // the powered pair must flag exactly where the unpowered ladder drops
    if (flag != (drops.count(m) > 0)) {
      throw std::logic_error("mfe_component_ideals: flag disagrees with the test-ideal ladder at " +
                             t.to_string());
    }
    out.emplace(std::move(t), MfeComponent{powered[m], powered[m + 1], flag});
  }
  return out;
}

// ---------------------------------------------------------------------------
// operator identities on the one-variable model F_p[t]
// ---------------------------------------------------------------------------

namespace tmodel {

// polynomial in F_p[t], exponent -> coefficient
using TPoly = std::map<uint64_t, uint64_t>;

inline TPoly monomial(uint64_t n, uint64_t c = 1) { return c ? TPoly{{n, c}} : TPoly{}; }

inline void add_in(TPoly& dst, uint64_t n, uint64_t c, uint64_t p) {
  if (c == 0) return;
  auto [it, inserted] = dst.emplace(n, c);
  if (!inserted) {
    it->second = fp::add(it->second, c, p);
    if (it->second == 0) dst.erase(it);
  }
}

inline TPoly add(const TPoly& a, const TPoly& b, uint64_t p) {
  TPoly r = a;
  for (const auto& [n, c] : b) add_in(r, n, c, p);
  return r;
}

inline TPoly sub(const TPoly& a, const TPoly& b, uint64_t p) {
  TPoly r = a;
  for (const auto& [n, c] : b) add_in(r, n, fp::neg(c, p), p);
  return r;
}

inline TPoly scale(const TPoly& a, uint64_t c, uint64_t p) {
  TPoly r;
  for (const auto& [n, v] : a) add_in(r, n, fp::mul(v, c, p), p);
  return r;
}

// dt^{[q]} . t^n = C(n,q) t^{n-q}
inline TPoly dt(const TPoly& a, uint64_t q, uint64_t p) {
  TPoly r;
  for (const auto& [n, v] : a) {
    if (n < q) continue;
    uint64_t c = fp::mul(v, lucas_binom(n, q, p).value(), p);
    add_in(r, n - q, c, p);
  }
  return r;
}

// t^q . t^n = t^{n+q}
inline TPoly tpow(const TPoly& a, uint64_t q, uint64_t /*p*/) {
  TPoly r;
  for (const auto& [n, v] : a) r.emplace(n + q, v);
  return r;
}

// theta_m . t^n = C(n+m, m) t^n
inline TPoly theta(const TPoly& a, uint64_t m, uint64_t p) {
  TPoly r;
  for (const auto& [n, v] : a) {
    uint64_t c = fp::mul(v, lucas_binom(n + m, m, p).value(), p);
    add_in(r, n, c, p);
  }
  return r;
}

}  // namespace tmodel

/// Pointwise verification, on t^n for n <= bound, of the commutation and
/// factorization identities among t, dt^{[m]} and the Euler operators
/// theta_m, together with the digit eigenvalue law on F_p[t].
inline VerifyReport verify_rt_identities(uint64_t p, uint64_t bound) {
  using namespace tmodel;
  VerifyReport rep;
  if (!is_prime_u64(p)) throw std::invalid_argument("verify_rt_identities: p must be prime");

  auto check = [&](bool ok, const std::string& what) {
    ++rep.checks;
    if (!ok) rep.fail(what);
  };

  // i) [t, theta_m] = -theta_{m-1} t   (theta_0 = 1)
  for (uint64_t m = 1; m <= bound; ++m) {
    for (uint64_t n = 0; n <= bound; ++n) {
      TPoly tn = monomial(n);
      TPoly lhs = sub(tpow(theta(tn, m, p), 1, p), theta(tpow(tn, 1, p), m, p), p);
      TPoly tw = tpow(tn, 1, p);
      TPoly rhs = scale(m >= 2 ? theta(tw, m - 1, p) : tw, p - 1, p);
      check(lhs == rhs, "identity i) fails at m=" + std::to_string(m) + ", n=" + std::to_string(n));
    }
  }

  // ii) [dt^{[p^e]}, t^{p^e}] = 1
  for (uint64_t q = 1; q <= bound; q *= p) {
    for (uint64_t n = 0; n <= bound; ++n) {
      TPoly tn = monomial(n);
      TPoly lhs = sub(dt(tpow(tn, q, p), q, p), tpow(dt(tn, q, p), q, p), p);
      check(lhs == tn, "identity ii) fails at q=" + std::to_string(q) + ", n=" + std::to_string(n));
    }
    if (q > bound / p) break;
  }

  // iii) (dt^{[p^e]})^r (t^{p^e})^r = prod_{j<r} (theta_{p^e} + j)
  for (uint64_t q = 1; q <= bound; q *= p) {
    for (uint64_t r = 0; r * q <= bound; ++r) {
      for (uint64_t n = 0; n <= bound; ++n) {
        TPoly lhs = monomial(n);
        lhs = tpow(lhs, r * q, p);
        for (uint64_t s = 0; s < r; ++s) lhs = dt(lhs, q, p);
        TPoly rhs = monomial(n);
        for (uint64_t j = 0; j < r; ++j) rhs = add(theta(rhs, q, p), scale(rhs, j, p), p);
        check(lhs == rhs, "identity iii) fails at q=" + std::to_string(q) + ", r=" + std::to_string(r) +
                              ", n=" + std::to_string(n));
      }
    }
    if (q > bound / p) break;
  }

  // iv) ((sr)!/(s!)^r) dt^{[sr]} = (dt^{[s]})^r, the multinomial via Lucas
  for (uint64_t s = 1; s <= bound; ++s) {
    for (uint64_t r = 1; s * r <= bound; ++r) {
      uint64_t multinom = 1;
      for (uint64_t k = 2; k <= r; ++k) {
        multinom = fp::mul(multinom, lucas_binom(k * s, s, p).value(), p);
      }
      for (uint64_t n = 0; n <= bound; ++n) {
        TPoly lhs = scale(dt(monomial(n), s * r, p), multinom, p);
        TPoly rhs = monomial(n);
        for (uint64_t k = 0; k < r; ++k) rhs = dt(rhs, s, p);
        check(lhs == rhs, "identity iv) fails at s=" + std::to_string(s) + ", r=" + std::to_string(r) +
                              ", n=" + std::to_string(n));
      }
    }
  }

  // v) C(i+j, i) dt^{[i+j]} = dt^{[i]} dt^{[j]}
  for (uint64_t i = 0; i <= bound; ++i) {
    for (uint64_t j = 0; i + j <= bound; ++j) {
      for (uint64_t n = 0; n <= bound; ++n) {
        TPoly lhs = scale(dt(monomial(n), i + j, p), lucas_binom(i + j, i, p).value(), p);
        TPoly rhs = dt(dt(monomial(n), j, p), i, p);
        check(lhs == rhs, "identity v) fails at i=" + std::to_string(i) + ", j=" + std::to_string(j) +
                              ", n=" + std::to_string(n));
      }
    }
  }

  // vi) [theta_i, theta_j] = 0
  for (uint64_t i = 1; i <= bound; ++i) {
    for (uint64_t j = 1; j <= bound; ++j) {
      for (uint64_t n = 0; n <= bound; ++n) {
        TPoly tn = monomial(n);
        check(theta(theta(tn, j, p), i, p) == theta(theta(tn, i, p), j, p),
              "identity vi) fails at i=" + std::to_string(i) + ", j=" + std::to_string(j) +
                  ", n=" + std::to_string(n));
      }
    }
  }

  // vii) theta_m = prod_i (1/a_i!) prod_{j<a_i} (theta_{p^i} + j)
  for (uint64_t m = 1; m <= bound; ++m) {
    for (uint64_t n = 0; n <= bound; ++n) {
      TPoly lhs = theta(monomial(n), m, p);
      TPoly rhs = monomial(n);
      uint64_t scalar = 1;
      uint64_t rest = m, q = 1;
      while (rest > 0) {
        uint64_t d = rest % p;
        for (uint64_t j = 0; j < d; ++j) rhs = add(theta(rhs, q, p), scale(rhs, j, p), p);
        uint64_t fact = 1;
        for (uint64_t j = 2; j <= d; ++j) fact = fp::mul(fact, j, p);
        scalar = fp::mul(scalar, fp::inv(fact, p), p);
        rest /= p;
        q *= p;
      }
      rhs = scale(rhs, scalar, p);
      check(lhs == rhs, "identity vii) fails at m=" + std::to_string(m) + ", n=" + std::to_string(n));
    }
  }

  // viii) [dt^{[p^i]}, theta_{p^j}] = dt^{[p^i]} if i = j, else 0
  for (uint64_t qi = 1; qi <= bound; qi *= p) {
    for (uint64_t qj = 1; qj <= bound; qj *= p) {
      for (uint64_t n = 0; n <= bound; ++n) {
        TPoly tn = monomial(n);
        TPoly lhs = sub(dt(theta(tn, qj, p), qi, p), theta(dt(tn, qi, p), qj, p), p);
        TPoly rhs = qi == qj ? dt(tn, qi, p) : TPoly{};
        check(lhs == rhs, "identity viii) fails at p^i=" + std::to_string(qi) +
                              ", p^j=" + std::to_string(qj) + ", n=" + std::to_string(n));
      }
      if (qj > bound / p) break;
    }
    if (qi > bound / p) break;
  }

  // eigenvalue law on F_p[t]: theta_{p^j} t^n = (d_j(n) + 1) t^n
  for (uint64_t q = 1, j = 0; q <= bound; q *= p, ++j) {
    for (uint64_t n = 0; n <= bound; ++n) {
      uint64_t digit = (n / q) % p;
      TPoly lhs = theta(monomial(n), q, p);
      TPoly rhs = scale(monomial(n), (digit + 1) % p, p);
      check(lhs == rhs, "digit eigenvalue law fails at q=" + std::to_string(q) + ", n=" + std::to_string(n));
    }
    if (q > bound / p) break;
  }

  return rep;
}

}  // namespace fsing

#endif  // FSING_BFMOD_HPP
