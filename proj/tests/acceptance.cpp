// Acceptance suite: runs every advertised guarantee of the library end to
// end, printing one pass/fail line per criterion. Exit status 0 iff all
// criteria hold. All randomized sweeps use fixed seeds.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fsing/fsing.hpp"

using namespace fsing;

namespace {

struct Criterion {
  int id;
  std::string name;
  bool pass = true;
  uint64_t checks = 0;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      pass = false;
      if (notes.size() < 6) notes.push_back(what);
    }
  }
};

MvPoly cusp(const RingPtr& R) { return parse("x^2 + y^3", R); }

MvPoly quadric(const RingPtr& R) {
  MvPoly f(R);
  for (size_t i = 0; i < R->num_vars(); ++i) {
    MvPoly xi = MvPoly::variable(R, i);
    f = f + xi * xi;
  }
  return f;
}

std::set<std::vector<uint64_t>> digit_sets(const GammaSet& g) {
  std::set<std::vector<uint64_t>> out;
  for (const auto& t : g.tuples) out.insert(t.digits);
  return out;
}

std::set<PPowRational> root_set(std::vector<std::pair<uint64_t, size_t>> pairs, uint64_t p) {
  std::set<PPowRational> out;
  for (auto [num, e] : pairs) out.insert(PPowRational(BigInt(num), e, p));
  return out;
}

MvPoly random_poly(const RingPtr& ring, std::mt19937_64& rng, size_t max_terms = 4,
                   uint64_t max_exp = 4) {
  std::vector<Term> terms;
  size_t n = 1 + rng() % max_terms;
  for (size_t k = 0; k < n; ++k) {
    Exponents mono(ring->num_vars());
    for (auto& e : mono) e = rng() % (max_exp + 1);
    terms.push_back({std::move(mono), rng() % ring->prime()});
  }
  return MvPoly::from_terms(ring, std::move(terms));
}

Ideal random_ideal(const RingPtr& ring, std::mt19937_64& rng, size_t max_gens = 3) {
  std::vector<MvPoly> gens;
  size_t n = 1 + rng() % max_gens;
  for (size_t k = 0; k < n; ++k) gens.push_back(random_poly(ring, rng));
  return Ideal(ring, std::move(gens));
}

// --------------------------------------------------------------------------

void criterion1(Criterion& c) {
  // cusp with p = 1 mod 3: gamma tuples are constant (p-1) and 5(p-1)/6,
  // roots 1 - 1/p^e and (5/6)(1 - 1/p^e)
  for (uint64_t p : {7, 13}) {
    auto R = make_ring(p, {"x", "y"});
    MvPoly f = cusp(R);
    uint64_t other = 5 * (p - 1) / 6;
    size_t e_max = (p == 7) ? 3 : 2;
    for (size_t e = 1; e <= e_max; ++e) {
      GammaSet g = gamma_set(f, e);
      std::set<std::vector<uint64_t>> expect{std::vector<uint64_t>(e, p - 1),
                                             std::vector<uint64_t>(e, other)};
      c.require(digit_sets(g) == expect,
                "gamma mismatch at p=" + std::to_string(p) + ", e=" + std::to_string(e));

      uint64_t q = checked_pow_u64(p, e);
      auto b = bs_poly(f, e);
      auto expect_roots = root_set({{q - 1, e}, {5 * (q - 1) / 6, e}}, p);
      c.require(b.roots == expect_roots,
                "root mismatch at p=" + std::to_string(p) + ", e=" + std::to_string(e));
    }
  }
}

void criterion2(Criterion& c) {
  // cusp with p = 2 mod 3
  for (uint64_t p : {5, 11}) {
    auto R = make_ring(p, {"x", "y"});
    MvPoly f = cusp(R);
    uint64_t low = (5 * p - 7) / 6;

    c.require(digit_sets(gamma_set(f, 1)) == std::set<std::vector<uint64_t>>{{p - 1}, {low}},
              "gamma^1 mismatch at p=" + std::to_string(p));
    c.require(digit_sets(gamma_set(f, 2)) ==
                  std::set<std::vector<uint64_t>>{{p - 1, p - 1}, {p - 1, low}},
              "gamma^2 mismatch at p=" + std::to_string(p));

    for (size_t e = 1; e <= 2; ++e) {
      uint64_t q = checked_pow_u64(p, e);
      // the second root (5p-1)/(6p) - 1/p^e as m/p^e, where the digits of m
      // are (p-1, ..., p-1, (5p-7)/6), least significant first
      uint64_t m = 0, scale = 1;
      for (size_t l = 0; l + 1 < e; ++l) {
        m += (p - 1) * scale;
        scale *= p;
      }
      m += low * scale;
      auto b = bs_poly(f, e);
      c.require(b.roots == root_set({{q - 1, e}, {m, e}}, p),
                "root mismatch at p=" + std::to_string(p) + ", e=" + std::to_string(e));
    }

    // b_f in F_p[s] corresponds to (s+1)(s+7/6)
    auto b1 = bs_poly(f, 1);
    std::set<uint64_t> expect{p - 1, fp::neg(fp::mul(7 % p, fp::inv(6 % p, p), p), p)};
    c.require(b1.char_p_roots == expect, "char-p roots mismatch at p=" + std::to_string(p));
  }
}

void criterion3(Criterion& c) {
  for (auto [nvars, p] : std::vector<std::pair<size_t, uint64_t>>{{2, 3}, {2, 5}, {3, 5}}) {
    std::vector<std::string> names(nvars);
    for (size_t i = 0; i < nvars; ++i) names[i] = "x" + std::to_string(i + 1);
    auto R = make_ring(p, names);
    MvPoly f = quadric(R);
    for (size_t e = 1; e <= 2; ++e) {
      uint64_t q = checked_pow_u64(p, e);
      auto b = bs_poly(f, e);
      c.require(b.roots == root_set({{q - 1, e}}, p),
                "quadric n=" + std::to_string(nvars) + ", p=" + std::to_string(p) +
                    ", e=" + std::to_string(e));
    }
  }
}

void criterion4(Criterion& c) {
  for (uint64_t p : {5, 7}) {
    auto R = make_ring(p, {"x", "y"});
    MvPoly f = cusp(R);
    Ideal m(R, {MvPoly::variable(R, 0), MvPoly::variable(R, 1)});
    // c = 5/6 when p = 1 mod 3, 5/6 - 1/(6p) when p = 2 mod 3; expected
    // nu = ceil(c p^e) - 1 computed in exact arithmetic
    BigRational thresh = (p % 3 == 1) ? BigRational(5, 6)
                                      : BigRational(5, 6) - BigRational(1, 6 * p);
    for (size_t e = 1; e <= 3; ++e) {
      uint64_t expect = (ceil_scale_pow(thresh, p, e) - 1).convert_to<uint64_t>();
      uint64_t got = nu(f, m, e);
      c.require(got == expect, "nu mismatch at p=" + std::to_string(p) + ", e=" +
                                   std::to_string(e) + ": got " + std::to_string(got) +
                                   ", want " + std::to_string(expect));
    }
  }
}

void criterion5(Criterion& c) {
  for (uint64_t p : {5, 7}) {
    auto R = make_ring(p, {"x", "y"});
    MvPoly f = cusp(R);
    Ideal maximal(R, {MvPoly::variable(R, 0), MvPoly::variable(R, 1)});
    Ideal principal(R, {f});
    uint64_t q = p * p;
    // tau jumps from (1) to (x,y) at m = ceil(c p^2), and to (f) at m = p^2
    BigRational thresh = (p % 3 == 1) ? BigRational(5, 6)
                                      : BigRational(5, 6) - BigRational(1, 6 * p);
    uint64_t m_jump = ceil_scale_pow(thresh, p, 2).convert_to<uint64_t>();
    for (uint64_t m = 0; m <= q; ++m) {
      Ideal tau = test_ideal_padic(f, m, 2);
      bool ok;
      if (m < m_jump) ok = is_unit_ideal(tau);
      else if (m < q) ok = equal(tau, maximal);
      else ok = equal(tau, principal);
      c.require(ok, "test-ideal table mismatch at p=" + std::to_string(p) +
                        ", m=" + std::to_string(m));
    }
  }
}

void criterion6(Criterion& c) {
  for (uint64_t p : {2, 3, 5, 7}) {
    auto rep = verify_rt_identities(p, 200);
    c.checks += rep.checks;
    if (!rep.pass) {
      c.pass = false;
      for (const auto& w : rep.witnesses) {
        if (c.notes.size() < 6) c.notes.push_back("p=" + std::to_string(p) + ": " + w);
      }
    }
  }
}

void criterion7(Criterion& c) {
  std::mt19937_64 rng(20260809);
  for (uint64_t p : {2, 3, 5}) {
    std::vector<BfCtxPtr> ctxs;
    {
      auto R = make_ring(p, {"x", "y"});
      ctxs.push_back(make_bf_context(R, cusp(R)));
      auto R1 = make_ring(p, {"x"});
      ctxs.push_back(make_bf_context(R1, MvPoly::variable(R1, 0)));
    }
    for (const auto& ctx : ctxs) {
      for (size_t e = 1; e <= 2; ++e) {
        // action laws on the Q basis, m <= 3
        auto rep = verify_basis_actions(ctx, e, 3);
        c.checks += rep.checks;
        if (!rep.pass) {
          c.pass = false;
          if (c.notes.size() < 6) c.notes.push_back("basis actions: " + rep.witnesses.front());
        }

        // the binomial expansion of delta over the level-e Q elements
        uint64_t q = checked_pow_u64(p, e);
        BfElement sum(ctx);
        for (uint64_t m = 0; m < q; ++m) {
          DigitTuple t = p_digits(m, p, e);
          uint64_t coeff = lucas_binom(q - 1, m, p).value();
          uint64_t digit_sum = 0;
          for (uint64_t d : t.digits) digit_sum += d;
          if (digit_sum % 2 == 1) coeff = fp::neg(coeff, p);
          sum = sum + q_element(ctx, QIndex{e, t, 0}).times(ctx->f_power(m).scaled(coeff));
        }
        c.require(sum == BfElement::delta(ctx, 0),
                  "delta expansion fails at p=" + std::to_string(p) + ", e=" + std::to_string(e));

        // level change of the Q basis
        auto lt = verify_level_transformation(ctx, e);
        c.checks += lt.checks;
        if (!lt.pass) {
          c.pass = false;
          if (c.notes.size() < 6) c.notes.push_back("level change: " + lt.witnesses.front());
        }

        // idempotent decomposition and the theta_m digit scalar law
        for (int trial = 0; trial < 3; ++trial) {
          BfElement w(ctx);
          for (uint64_t m = 0; m <= 3; ++m) w.add_term(rng() % 5, random_poly(ctx->ring(), rng, 3, 2));
          auto comps = eigen_decompose(w, e);
          BfElement total(ctx);
          for (const auto& [t, u] : comps) {
            total = total + u;
            auto again = eigen_decompose(u, e);
            c.require(again.size() == 1 && again.begin()->second == u,
                      "decomposition not idempotent at p=" + std::to_string(p));
            for (uint64_t m = 1; m < q; ++m) {
              DigitTuple b = p_digits(m, p, e);
              uint64_t scalar = 1;
              for (size_t l = 0; l < e; ++l) {
                uint64_t s = lucas_binom(t.digits[l], b.digits[l], p).value();
                if (b.digits[l] % 2 == 1) s = fp::neg(s, p);
                scalar = fp::mul(scalar, s, p);
              }
              c.require(act_theta_general(u, m) == u.scaled(scalar),
                        "theta_m scalar law fails at p=" + std::to_string(p) +
                            ", m=" + std::to_string(m));
            }
          }
          c.require(total == w, "components do not sum back at p=" + std::to_string(p));
        }
      }
    }

    // the one-variable binomial generating identity
    auto R1 = make_ring(p, {"x"});
    MvPoly x = MvPoly::variable(R1, 0);
    MvPoly one_minus_x = MvPoly::constant(R1, 1) - x;
    for (uint64_t i = 0; i < p; ++i) {
      MvPoly lhs(R1);
      for (uint64_t j = 0; j + i < p; ++j) {
        lhs = lhs + MvPoly::monomial(R1, {j}, lucas_binom(i + j, i, p).value());
      }
      c.require(lhs == pow(one_minus_x, p - 1 - i),
                "binomial identity fails at p=" + std::to_string(p) + ", i=" + std::to_string(i));
    }
  }
}

void criterion8(Criterion& c) {
  std::vector<std::string> two_vars{"x",         "y^2",       "x*y",       "x + y",
                                    "x^2 + y^3", "x^2 + y^2", "x^3 + y^4", "x^2 + x*y + y^2",
                                    "x^2*y + x*y^2"};
  std::vector<std::string> three_vars{"x^2 + y^2 + z^2", "x*y*z", "x^3 + y^3 + z^3"};
  for (uint64_t p : {2, 3, 5, 7}) {
    auto R2 = make_ring(p, {"x", "y"});
    auto R3 = make_ring(p, {"x", "y", "z"});
    for (const auto& [ring, polys] :
         std::vector<std::pair<RingPtr, const std::vector<std::string>*>>{{R2, &two_vars},
                                                                          {R3, &three_vars}}) {
      for (const auto& src : *polys) {
        auto rep = verify_main_theorem(parse(src, ring), 1, 1);
        c.checks += rep.checks;
        if (!rep.pass) {
          c.pass = false;
          if (c.notes.size() < 6) {
            c.notes.push_back("p=" + std::to_string(p) + ", f=" + src + ": " +
                              rep.witnesses.front());
          }
        }
      }
    }
  }
}

void criterion9(Criterion& c) {
  for (uint64_t p : {5, 7, 11, 13}) {
    auto R = make_ring(p, {"x", "y"});
    auto rep = quasihomogeneous_check(cusp(R), {3, 2}, 6);
    c.require(rep.pass, "cusp predictor fails at p=" + std::to_string(p));
    c.checks += rep.checks;
  }
  for (uint64_t p : {3, 5}) {
    auto R = make_ring(p, {"x1", "x2"});
    auto rep = quasihomogeneous_check(quadric(R), {1, 1}, 2);
    c.require(rep.pass, "quadric predictor fails at p=" + std::to_string(p));
  }
}

void criterion10(Criterion& c) {
  // randomized property sweeps, fixed seeds; each loop iteration is a case
  std::mt19937_64 rng(0x5eedf00d);

  // frobenius adjunction and round trip
  for (uint64_t p : {2, 3, 5}) {
    auto R = make_ring(p, {"x", "y"});
    for (int trial = 0; trial < 27; ++trial) {
      size_t e = 1 + trial % 2;
      Ideal b = random_ideal(R, rng);
      Ideal J = random_ideal(R, rng);
      c.require(contains(frobenius_power(J, e), b) == contains(J, frobenius_root(b, e)),
                "adjunction fails at p=" + std::to_string(p));
      Ideal I = random_ideal(R, rng);
      c.require(equal(frobenius_root(frobenius_power(I, e), e), I),
                "round trip fails at p=" + std::to_string(p));
      c.require(contains(frobenius_power(frobenius_root(I, e), e), I),
                "minimality witness fails at p=" + std::to_string(p));
    }
  }

  // GB idempotence
  for (uint64_t p : {3, 7}) {
    auto R = make_ring(p, {"x", "y"});
    for (int trial = 0; trial < 50; ++trial) {
      Ideal I = random_ideal(R, rng);
      Ideal J(R, I.groebner());
      c.require(J.groebner() == I.groebner(), "GB idempotence fails at p=" + std::to_string(p));
    }
  }

  // chain monotonicity across full jump reports (asserted internally by the
  // ladder as well; re-checked externally here)
  for (uint64_t p : {2, 3, 5}) {
    auto R = make_ring(p, {"x", "y"});
    for (int trial = 0; trial < 10; ++trial) {
      MvPoly f = random_poly(R, rng, 3, 3);
      if (f.is_zero() || f.is_unit()) {
        c.require(true, "");
        continue;
      }
      auto rep = f_jumping_exponents(f, 1);
      bool mono = true;
      for (size_t m = 0; m + 1 < rep.chain.size(); ++m) {
        if (!contains(rep.chain[m], rep.chain[m + 1])) mono = false;
      }
      c.require(mono, "chain monotonicity fails at p=" + std::to_string(p));
    }
  }

  // gamma containment across levels
  {
    std::vector<std::string> polys{"x^2 + y^3", "x*y", "x + y", "x^2*y", "x^2 + y^2",
                                   "x^3 + y^4", "y^2", "x^2 + x*y + y^2", "x", "x^3 + y^3"};
    for (uint64_t p : {3, 5}) {
      auto R = make_ring(p, {"x", "y"});
      for (const auto& src : polys) {
        MvPoly f = parse(src, R);
        auto g1 = digit_sets(gamma_set(f, 1));
        auto g2 = gamma_set(f, 2);
        std::set<std::vector<uint64_t>> drop_first;
        bool drop_last_ok = true;
        for (const auto& t : g2.tuples) {
          drop_first.insert({t.digits[1]});
          if (!g1.count({t.digits[0]})) drop_last_ok = false;
        }
        c.require(drop_first == g1 && drop_last_ok,
                  "gamma projections fail at p=" + std::to_string(p) + ", f=" + src);
      }
    }
  }

  // Lucas binomials against the Pascal recurrence
  {
    const uint64_t primes[] = {2, 3, 5, 7, 11};
    for (uint64_t p : primes) {
      std::vector<std::vector<uint64_t>> rows(301);
      for (size_t m = 0; m <= 300; ++m) {
        rows[m].assign(m + 1, 1);
        for (size_t n = 1; n < m; ++n) rows[m][n] = fp::add(rows[m - 1][n - 1], rows[m - 1][n], p);
      }
      for (int trial = 0; trial < 40; ++trial) {
        uint64_t m = rng() % 301;
        uint64_t n = rng() % 301;
        uint64_t expect = n <= m ? rows[m][n] : 0;
        c.require(lucas_binom(m, n, p).value() == expect,
                  "Pascal oracle disagrees at p=" + std::to_string(p));
      }
    }
  }
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    void (*fn)(Criterion&);
  };
  const Entry entries[] = {
      {1, "cusp, p = 1 mod 3 (p = 7, 13): gamma sets and Bernstein-Sato roots", criterion1},
      {2, "cusp, p = 2 mod 3 (p = 5, 11): gamma sets, roots, char-p roots", criterion2},
      {3, "quadrics: the single root 1 - 1/p^e", criterion3},
      {4, "F-thresholds nu^{(x,y)}(p^e) for the cusp, e <= 3", criterion4},
      {5, "test-ideal table for the cusp at every m/p^2", criterion5},
      {6, "operator identities on F_p[t], n <= 200, p in {2,3,5,7}", criterion6},
      {7, "B_f structure suite (action laws, expansions, decompositions)", criterion7},
      {8, "gamma truncation consistency on a 12-polynomial corpus", criterion8},
      {9, "quasihomogeneous root predictor (cusp and quadric)", criterion9},
      {10, "randomized property suites, fixed seeds", criterion10},
  };

  bool all_pass = true;
  uint64_t total_checks = 0;
  for (const auto& entry : entries) {
    Criterion c{entry.id, entry.name};
    auto start = std::chrono::steady_clock::now();
    entry.fn(c);
    auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    total_checks += c.checks;
    std::cout << (c.pass ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": " << c.name << " ("
              << c.checks << " checks, " << secs << "s)\n";
    for (const auto& note : c.notes) std::cout << "       " << note << "\n";
    if (!c.pass) all_pass = false;
  }
  std::cout << (all_pass ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED") << " (" << total_checks
            << " checks)\n";
  return all_pass ? 0 : 1;
}
