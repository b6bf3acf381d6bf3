#ifndef FSING_ARITH_HPP
#define FSING_ARITH_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace fsing {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

namespace fp {

inline uint64_t add(uint64_t a, uint64_t b, uint64_t p) {
  uint64_t s = a + b;
  if (s >= p || s < a) s -= p;
  return s;
}

inline uint64_t sub(uint64_t a, uint64_t b, uint64_t p) {
  return a >= b ? a - b : a + (p - b);
}

inline uint64_t mul(uint64_t a, uint64_t b, uint64_t p) {
  return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % p);
}

inline uint64_t neg(uint64_t a, uint64_t p) { return a == 0 ? 0 : p - a; }

inline uint64_t pow(uint64_t base, uint64_t exp, uint64_t p) {
  uint64_t r = 1 % p;
  base %= p;
  while (exp) {
    if (exp & 1) r = mul(r, base, p);
    base = mul(base, base, p);
    exp >>= 1;
  }
  return r;
}

// p prime, a != 0 mod p
inline uint64_t inv(uint64_t a, uint64_t p) {
  a %= p;
  if (a == 0) throw std::domain_error("fp::inv: division by zero in F_p");
  return pow(a, p - 2, p);
}

inline uint64_t reduce(const BigInt& n, uint64_t p) {
  BigInt r = n % p;
  if (r < 0) r += p;
  return r.convert_to<uint64_t>();
}

}  // namespace fp

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
inline bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = fp::pow(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = fp::mul(x, x, n);
      if (x == n - 1) { witness = false; break; }
    }
    if (witness) return false;
  }
  return true;
}

/// An element of the prime field F_p, carrying its prime.
class FpScalar {
 public:
  FpScalar() : value_(0), prime_(2) {}
  FpScalar(uint64_t value, uint64_t prime) : value_(value % prime), prime_(prime) {}

  uint64_t value() const { return value_; }
  uint64_t prime() const { return prime_; }
  bool is_zero() const { return value_ == 0; }

  FpScalar operator+(const FpScalar& o) const { check(o); return raw(fp::add(value_, o.value_, prime_)); }
  FpScalar operator-(const FpScalar& o) const { check(o); return raw(fp::sub(value_, o.value_, prime_)); }
  FpScalar operator*(const FpScalar& o) const { check(o); return raw(fp::mul(value_, o.value_, prime_)); }
  FpScalar operator-() const { return raw(fp::neg(value_, prime_)); }
  FpScalar inverse() const { return raw(fp::inv(value_, prime_)); }

  bool operator==(const FpScalar& o) const { return value_ == o.value_ && prime_ == o.prime_; }
  bool operator!=(const FpScalar& o) const { return !(*this == o); }

 private:
  FpScalar raw(uint64_t v) const { FpScalar s; s.value_ = v; s.prime_ = prime_; return s; }
  void check(const FpScalar& o) const {
    if (prime_ != o.prime_) throw std::invalid_argument("FpScalar: mixed primes");
  }
  uint64_t value_;
  uint64_t prime_;
};

/// Base-p digit tuple (d_1,...,d_e), least significant digit first.
struct DigitTuple {
  std::vector<uint64_t> digits;
  uint64_t prime = 2;

  size_t level() const { return digits.size(); }

  // m = sum d_l * p^{l-1}
  uint64_t value_u64() const {
    uint64_t m = 0, scale = 1;
    for (size_t l = 0; l < digits.size(); ++l) {
      m += digits[l] * scale;
      if (l + 1 < digits.size()) scale *= prime;
    }
    return m;
  }

  bool operator==(const DigitTuple& o) const { return prime == o.prime && digits == o.digits; }
  // numeric order on the represented integer
  bool operator<(const DigitTuple& o) const {
    if (digits.size() != o.digits.size()) return digits.size() < o.digits.size();
    for (size_t l = digits.size(); l-- > 0;) {
      if (digits[l] != o.digits[l]) return digits[l] < o.digits[l];
    }
    return false;
  }

  std::string to_string() const {
    std::string s = "(";
    for (size_t l = 0; l < digits.size(); ++l) {
      if (l) s += ",";
      s += std::to_string(digits[l]);
    }
    return s + ")";
  }
};

inline BigInt pow_big(uint64_t base, size_t exp) {
  BigInt r = 1;
  for (size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

inline DigitTuple p_digits(const BigInt& m, uint64_t p, size_t e) {
  if (m < 0 || m >= pow_big(p, e)) throw std::out_of_range("p_digits: m not in [0, p^e)");
  DigitTuple t;
  t.prime = p;
  t.digits.resize(e);
  BigInt rest = m;
  for (size_t l = 0; l < e; ++l) {
    t.digits[l] = (rest % p).convert_to<uint64_t>();
    rest /= p;
  }
  return t;
}

inline DigitTuple p_digits(uint64_t m, uint64_t p, size_t e) { return p_digits(BigInt(m), p, e); }

// C(a,b) mod p for 0 <= a,b < p
inline uint64_t small_binom_mod(uint64_t a, uint64_t b, uint64_t p) {
  if (b > a) return 0;
  b = std::min(b, a - b);
  uint64_t num = 1, den = 1;
  for (uint64_t i = 1; i <= b; ++i) {
    num = fp::mul(num, (a - b + i) % p, p);
    den = fp::mul(den, i % p, p);
  }
  return b == 0 ? 1 % p : fp::mul(num, fp::inv(den, p), p);
}

/// C(m,n) mod p by Lucas' theorem, digit by digit.
inline FpScalar lucas_binom(const BigInt& m, const BigInt& n, uint64_t p) {
  if (m < 0 || n < 0) throw std::domain_error("lucas_binom: negative argument");
  if (n > m) return FpScalar(0, p);
  BigInt a = m, b = n;
  uint64_t r = 1 % p;
  while (b > 0) {
    uint64_t ad = (a % p).convert_to<uint64_t>();
    uint64_t bd = (b % p).convert_to<uint64_t>();
    r = fp::mul(r, small_binom_mod(ad, bd, p), p);
    if (r == 0) return FpScalar(0, p);
    a /= p;
    b /= p;
  }
  return FpScalar(r, p);
}

inline FpScalar lucas_binom(uint64_t m, uint64_t n, uint64_t p) {
  if (n > m) return FpScalar(0, p);
  uint64_t r = 1 % p;
  while (n > 0) {
    r = fp::mul(r, small_binom_mod(m % p, n % p, p), p);
    if (r == 0) return FpScalar(0, p);
    m /= p;
    n /= p;
  }
  return FpScalar(r, p);
}

inline BigInt ceil_div(const BigInt& num, const BigInt& den) {
  // den > 0
  if (num <= 0) return -((-num) / den);
  return (num + den - 1) / den;
}

inline BigInt ceil_scale_pow(const BigRational& lambda, uint64_t p, size_t e) {
  BigInt num = boost::multiprecision::numerator(lambda) * pow_big(p, e);
  return ceil_div(num, boost::multiprecision::denominator(lambda));
}

/// The first e digits of the nonterminating base-p expansion of lambda in (0,1]:
/// c_1 = ceil(lambda*p) - 1, c_i = c_{i-1} applied to p*lambda - c_1.
inline DigitTuple c_digits(const BigRational& lambda, uint64_t p, size_t e) {
  if (lambda <= 0 || lambda > 1) throw std::domain_error("c_digits: lambda must lie in (0,1]");
  DigitTuple t;
  t.prime = p;
  t.digits.reserve(e);
  BigRational cur = lambda;
  for (size_t l = 0; l < e; ++l) {
    BigRational scaled = cur * p;
    BigInt c = ceil_div(boost::multiprecision::numerator(scaled),
                        boost::multiprecision::denominator(scaled)) - 1;
    t.digits.push_back(c.convert_to<uint64_t>());
    cur = scaled - BigRational(c);
  }
  return t;
}

/// Exact rational with denominator a power of p, kept canonical (e = 0 or p does not divide num).
class PPowRational {
 public:
  PPowRational() : num_(0), e_(0), prime_(2) {}
  PPowRational(BigInt num, size_t e, uint64_t prime) : num_(std::move(num)), e_(e), prime_(prime) {
    while (e_ > 0 && num_ % prime_ == 0) {
      num_ /= prime_;
      --e_;
    }
    if (num_ == 0) e_ = 0;
  }

  const BigInt& num() const { return num_; }
  size_t den_exp() const { return e_; }
  uint64_t prime() const { return prime_; }
  BigInt den() const { return pow_big(prime_, e_); }

  bool operator==(const PPowRational& o) const {
    return num_ == o.num_ && e_ == o.e_ && prime_ == o.prime_;
  }
  bool operator<(const PPowRational& o) const {
    // compare num/p^e with o.num/p^oe by cross multiplication
    return num_ * o.den() < o.num_ * den();
  }

  std::string to_string() const {
    if (e_ == 0) return num_.str();
    return num_.str() + "/" + den().str();
  }

  double approx() const {
    return num_.convert_to<double>() / den().convert_to<double>();
  }

 private:
  BigInt num_;
  size_t e_;
  uint64_t prime_;
};

}  // namespace fsing

#endif  // FSING_ARITH_HPP
