#ifndef FSING_POLY_HPP
#define FSING_POLY_HPP

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fsing/arith.hpp"
#include "fsing/monomial_order.hpp"

namespace fsing {

inline uint64_t checked_add_u64(uint64_t a, uint64_t b) {
  uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("exponent overflow in addition");
  return r;
}

inline uint64_t checked_mul_u64(uint64_t a, uint64_t b) {
  uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("exponent overflow in multiplication");
  return r;
}

inline uint64_t checked_pow_u64(uint64_t base, uint64_t exp) {
  uint64_t r = 1;
  for (uint64_t i = 0; i < exp; ++i) r = checked_mul_u64(r, base);
  return r;
}

inline bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

/// The polynomial ring F_p[x_1,...,x_n] with a fixed monomial order.
class PolyRing {
 public:
  PolyRing(uint64_t prime, std::vector<std::string> var_names,
           MonomialOrder order = MonomialOrder::GrevLex)
      : prime_(prime), vars_(std::move(var_names)), order_(order) {
    if (!is_prime_u64(prime_)) throw std::invalid_argument("PolyRing: modulus is not prime");
    if (vars_.empty()) throw std::invalid_argument("PolyRing: at least one variable required");
    for (const auto& v : vars_) {
      if (!is_identifier(v)) throw std::invalid_argument("PolyRing: invalid variable name '" + v + "'");
    }
    for (size_t i = 0; i < vars_.size(); ++i) {
      for (size_t j = i + 1; j < vars_.size(); ++j) {
        if (vars_[i] == vars_[j]) throw std::invalid_argument("PolyRing: duplicate variable '" + vars_[i] + "'");
      }
    }
  }

  uint64_t prime() const { return prime_; }
  size_t num_vars() const { return vars_.size(); }
  const std::vector<std::string>& var_names() const { return vars_; }
  MonomialOrder order() const { return order_; }

  std::optional<size_t> var_index(const std::string& name) const {
    for (size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i] == name) return i;
    }
    return std::nullopt;
  }

  bool operator==(const PolyRing& o) const {
    return prime_ == o.prime_ && vars_ == o.vars_ && order_ == o.order_;
  }

 private:
  uint64_t prime_;
  std::vector<std::string> vars_;
  MonomialOrder order_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

inline RingPtr make_ring(uint64_t prime, std::vector<std::string> vars,
                         MonomialOrder order = MonomialOrder::GrevLex) {
  return std::make_shared<const PolyRing>(prime, std::move(vars), order);
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
  return a == b || (a && b && *a == *b);
}

struct Term {
  Exponents mono;
  uint64_t coeff = 0;  // in [1, p)

  bool operator==(const Term& o) const { return mono == o.mono && coeff == o.coeff; }
};

/// Sparse multivariate polynomial over F_p. Terms are kept sorted in
/// descending monomial order; no zero coefficients are stored.
class MvPoly {
 public:
  MvPoly() = default;
  explicit MvPoly(RingPtr ring) : ring_(std::move(ring)) {}

  static MvPoly constant(RingPtr ring, uint64_t c) {
    MvPoly f(std::move(ring));
    c %= f.ring_->prime();
    if (c != 0) f.terms_.push_back({Exponents(f.ring_->num_vars(), 0), c});
    return f;
  }

  static MvPoly variable(RingPtr ring, size_t i, uint64_t exp = 1) {
    MvPoly f(std::move(ring));
    if (i >= f.ring_->num_vars()) throw std::out_of_range("MvPoly::variable: index");
    Exponents m(f.ring_->num_vars(), 0);
    m[i] = exp;
    f.terms_.push_back({std::move(m), 1});
    return f;
  }

  static MvPoly monomial(RingPtr ring, Exponents mono, uint64_t c) {
    MvPoly f(std::move(ring));
    if (mono.size() != f.ring_->num_vars()) throw std::invalid_argument("MvPoly::monomial: wrong arity");
    c %= f.ring_->prime();
    if (c != 0) f.terms_.push_back({std::move(mono), c});
    return f;
  }

  static MvPoly from_terms(RingPtr ring, std::vector<Term> terms) {
    MvPoly f(std::move(ring));
    std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) {
      return compare_exponents(a.mono, b.mono, f.ring_->order()) > 0;
    });
    for (auto& t : terms) {
      t.coeff %= f.ring_->prime();
      if (t.coeff == 0) continue;
      if (!f.terms_.empty() && f.terms_.back().mono == t.mono) {
        f.terms_.back().coeff = fp::add(f.terms_.back().coeff, t.coeff, f.ring_->prime());
        if (f.terms_.back().coeff == 0) f.terms_.pop_back();
      } else {
        f.terms_.push_back(std::move(t));
      }
    }
    return f;
  }

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t num_terms() const { return terms_.size(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_[0].mono) == 0);
  }
  bool is_unit() const { return terms_.size() == 1 && total_degree(terms_[0].mono) == 0; }
  bool is_one() const { return is_unit() && terms_[0].coeff == 1; }

  uint64_t degree() const {
    uint64_t d = 0;
    for (const auto& t : terms_) d = std::max(d, total_degree(t.mono));
    return d;
  }

  const Term& leading_term() const {
    if (terms_.empty()) throw std::domain_error("leading_term of zero polynomial");
    return terms_.front();
  }

  uint64_t coeff_of(const Exponents& mono) const {
    for (const auto& t : terms_) {
      if (t.mono == mono) return t.coeff;
    }
    return 0;
  }

  MvPoly operator+(const MvPoly& o) const { return merge(o, false); }
  MvPoly operator-(const MvPoly& o) const { return merge(o, true); }

  MvPoly operator-() const {
    MvPoly r(ring_);
    r.terms_ = terms_;
    for (auto& t : r.terms_) t.coeff = fp::neg(t.coeff, ring_->prime());
    return r;
  }

  MvPoly scaled(uint64_t c) const {
    c %= ring_->prime();
    MvPoly r(ring_);
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      uint64_t v = fp::mul(t.coeff, c, ring_->prime());
      if (v != 0) r.terms_.push_back({t.mono, v});
    }
    return r;
  }

  MvPoly operator*(const MvPoly& o) const {
    check_ring(o);
    const uint64_t p = ring_->prime();
    auto desc = [this](const Exponents& a, const Exponents& b) {
      return compare_exponents(a, b, ring_->order()) > 0;
    };
    std::map<Exponents, uint64_t, decltype(desc)> acc(desc);
    for (const auto& a : terms_) {
      for (const auto& b : o.terms_) {
        Exponents m(a.mono.size());
        for (size_t i = 0; i < m.size(); ++i) m[i] = checked_add_u64(a.mono[i], b.mono[i]);
        uint64_t c = fp::mul(a.coeff, b.coeff, p);
        auto [it, inserted] = acc.emplace(std::move(m), c);
        if (!inserted) it->second = fp::add(it->second, c, p);
      }
    }
    MvPoly r(ring_);
    r.terms_.reserve(acc.size());
    for (auto& [m, c] : acc) {
      if (c != 0) r.terms_.push_back({m, c});
    }
    return r;
  }

  bool operator==(const MvPoly& o) const { return same_ring(ring_, o.ring_) && terms_ == o.terms_; }
  bool operator!=(const MvPoly& o) const { return !(*this == o); }

  void check_ring(const MvPoly& o) const {
    if (!same_ring(ring_, o.ring_)) throw std::invalid_argument("MvPoly: ring mismatch");
  }

 private:
  MvPoly merge(const MvPoly& o, bool subtract) const {
    check_ring(o);
    const uint64_t p = ring_->prime();
    MvPoly r(ring_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      int cmp;
      if (i == terms_.size()) cmp = -1;
      else if (j == o.terms_.size()) cmp = 1;
      else cmp = compare_exponents(terms_[i].mono, o.terms_[j].mono, ring_->order());
      if (cmp > 0) {
        r.terms_.push_back(terms_[i++]);
      } else if (cmp < 0) {
        uint64_t c = o.terms_[j].coeff;
        r.terms_.push_back({o.terms_[j].mono, subtract ? fp::neg(c, p) : c});
        ++j;
      } else {
        uint64_t c = subtract ? fp::sub(terms_[i].coeff, o.terms_[j].coeff, p)
                              : fp::add(terms_[i].coeff, o.terms_[j].coeff, p);
        if (c != 0) r.terms_.push_back({terms_[i].mono, c});
        ++i;
        ++j;
      }
    }
    return r;
  }

  RingPtr ring_;
  std::vector<Term> terms_;
};

inline MvPoly scalar_mul(const FpScalar& c, const MvPoly& f) {
  if (c.prime() != f.ring()->prime()) throw std::invalid_argument("scalar_mul: prime mismatch");
  return f.scaled(c.value());
}

/// f^{p^e}: every exponent vector is scaled by p^e; coefficients are fixed by
/// Frobenius in F_p, so the term count is preserved.
inline MvPoly frobenius_pow(const MvPoly& f, size_t e) {
  if (e == 0) return f;
  uint64_t q = checked_pow_u64(f.ring()->prime(), e);
  std::vector<Term> terms;
  terms.reserve(f.num_terms());
  for (const auto& t : f.terms()) {
    Exponents m(t.mono.size());
    for (size_t i = 0; i < m.size(); ++i) m[i] = checked_mul_u64(t.mono[i], q);
    terms.push_back({std::move(m), t.coeff});
  }
  return MvPoly::from_terms(f.ring(), std::move(terms));
}

namespace detail {
// binary exponentiation, exponent < p
inline MvPoly pow_small(const MvPoly& f, uint64_t m) {
  MvPoly acc = MvPoly::constant(f.ring(), 1);
  MvPoly base = f;
  while (m) {
    if (m & 1) acc = acc * base;
    m >>= 1;
    if (m) base = base * base;
  }
  return acc;
}
}  // namespace detail

/// f^m via the p-adic digit factorization f^m = prod_i (f^{d_i})^{p^i}.
inline MvPoly pow(const MvPoly& f, const BigInt& m) {
  if (m < 0) throw std::domain_error("pow: negative exponent");
  if (m == 0) return MvPoly::constant(f.ring(), 1);
  if (f.is_zero()) return MvPoly(f.ring());
  const uint64_t p = f.ring()->prime();
  MvPoly acc = MvPoly::constant(f.ring(), 1);
  BigInt rest = m;
  size_t level = 0;
  while (rest > 0) {
    uint64_t d = (rest % p).convert_to<uint64_t>();
    if (d != 0) acc = acc * frobenius_pow(detail::pow_small(f, d), level);
    rest /= p;
    ++level;
  }
  return acc;
}

inline MvPoly pow(const MvPoly& f, uint64_t m) { return pow(f, BigInt(m)); }

inline MvPoly derivative(const MvPoly& f, size_t var) {
  if (var >= f.ring()->num_vars()) throw std::out_of_range("derivative: variable index");
  const uint64_t p = f.ring()->prime();
  std::vector<Term> terms;
  for (const auto& t : f.terms()) {
    uint64_t e = t.mono[var];
    if (e == 0) continue;
    uint64_t c = fp::mul(t.coeff, e % p, p);
    if (c == 0) continue;
    Exponents m = t.mono;
    m[var] = e - 1;
    terms.push_back({std::move(m), c});
  }
  return MvPoly::from_terms(f.ring(), std::move(terms));
}

// ---------------------------------------------------------------------------
// text I/O
// ---------------------------------------------------------------------------

class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& msg, size_t position)
      : std::runtime_error(msg + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  size_t position() const { return position_; }

 private:
  size_t position_;
};

namespace detail {

class PolyParser {
 public:
  PolyParser(const std::string& src, RingPtr ring) : src_(src), ring_(std::move(ring)) {}

  MvPoly run() {
    MvPoly f = parse_expr();
    skip_ws();
    if (pos_ != src_.size()) throw parse_error("unexpected trailing input", pos_);
    return f;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  MvPoly parse_expr() {
    bool neg = false;
    skip_ws();
    if (eat('-')) neg = true;
    else eat('+');
    MvPoly acc = parse_term();
    if (neg) acc = -acc;
    while (true) {
      if (eat('+')) acc = acc + parse_term();
      else if (eat('-')) acc = acc - parse_term();
      else break;
    }
    return acc;
  }

  MvPoly parse_term() {
    MvPoly acc = parse_factor();
    while (eat('*')) acc = acc * parse_factor();
    return acc;
  }

  MvPoly parse_factor() {
    MvPoly base = parse_base();
    if (eat('^')) {
      uint64_t e = parse_natural_u64();
      return pow(base, e);
    }
    return base;
  }

  MvPoly parse_base() {
    skip_ws();
    if (pos_ >= src_.size()) throw parse_error("unexpected end of input", pos_);
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      MvPoly inner = parse_expr();
      if (!eat(')')) throw parse_error("expected ')'", pos_);
      return inner;
    }
    if (c == '-') {  // unary minus on a factor
      ++pos_;
      return -parse_base();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      uint64_t v = 0;
      const uint64_t p = ring_->prime();
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        v = fp::add(fp::mul(v, 10 % p, p), static_cast<uint64_t>(src_[pos_] - '0') % p, p);
        ++pos_;
      }
      return MvPoly::constant(ring_, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        ++pos_;
      }
      std::string name = src_.substr(start, pos_ - start);
      auto idx = ring_->var_index(name);
      if (!idx) throw parse_error("unknown variable '" + name + "'", start);
      return MvPoly::variable(ring_, *idx);
    }
    throw parse_error(std::string("unexpected character '") + c + "'", pos_);
  }

  uint64_t parse_natural_u64() {
    skip_ws();
    if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      throw parse_error("expected a natural number", pos_);
    }
    uint64_t v = 0;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      uint64_t d = static_cast<uint64_t>(src_[pos_] - '0');
      if (v > (UINT64_MAX - d) / 10) throw parse_error("exponent too large", pos_);
      v = v * 10 + d;
      ++pos_;
    }
    return v;
  }

  const std::string& src_;
  size_t pos_ = 0;
  RingPtr ring_;
};

}  // namespace detail

inline MvPoly parse(const std::string& src, RingPtr ring) {
  return detail::PolyParser(src, std::move(ring)).run();
}

inline std::string render(const MvPoly& f) {
  if (f.is_zero()) return "0";
  const auto& names = f.ring()->var_names();
  std::string out;
  bool first = true;
  for (const auto& t : f.terms()) {
    if (!first) out += " + ";
    first = false;
    bool has_vars = total_degree(t.mono) > 0;
    std::string body;
    for (size_t i = 0; i < t.mono.size(); ++i) {
      if (t.mono[i] == 0) continue;
      if (!body.empty()) body += "*";
      body += names[i];
      if (t.mono[i] > 1) body += "^" + std::to_string(t.mono[i]);
    }
    if (!has_vars) {
      out += std::to_string(t.coeff);
    } else if (t.coeff == 1) {
      out += body;
    } else {
      out += std::to_string(t.coeff) + "*" + body;
    }
  }
  return out;
}

}  // namespace fsing

#endif  // FSING_POLY_HPP
