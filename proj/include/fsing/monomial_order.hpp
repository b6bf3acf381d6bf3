#ifndef FSING_MONOMIAL_ORDER_HPP
#define FSING_MONOMIAL_ORDER_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace fsing {

using Exponents = std::vector<uint64_t>;

enum class MonomialOrder {
  GrevLex,  // degree, ties by reverse lexicographic
  Lex,
  GrLex,
};

inline uint64_t total_degree(const Exponents& a) {
  uint64_t d = 0;
  for (uint64_t e : a) d += e;
  return d;
}

// 1 if a > b, -1 if a < b, 0 if equal
inline int compare_exponents(const Exponents& a, const Exponents& b, MonomialOrder ord) {
  switch (ord) {
    case MonomialOrder::Lex: {
      for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
      }
      return 0;
    }
    case MonomialOrder::GrLex: {
      uint64_t da = total_degree(a), db = total_degree(b);
      if (da != db) return da > db ? 1 : -1;
      return compare_exponents(a, b, MonomialOrder::Lex);
    }
    case MonomialOrder::GrevLex: {
      uint64_t da = total_degree(a), db = total_degree(b);
      if (da != db) return da > db ? 1 : -1;
      for (size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
      }
      return 0;
    }
  }
  return 0;
}

inline std::string order_name(MonomialOrder ord) {
  switch (ord) {
    case MonomialOrder::GrevLex: return "grevlex";
    case MonomialOrder::Lex: return "lex";
    case MonomialOrder::GrLex: return "grlex";
  }
  return "?";
}

}  // namespace fsing

#endif  // FSING_MONOMIAL_ORDER_HPP
