#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <string>
#include <vector>

#include "fsing/bsato.hpp"

using namespace fsing;

namespace {

std::set<std::string> root_strings(const BSFactorization& b) {
  std::set<std::string> out;
  for (const auto& r : b.roots) out.insert(r.to_string());
  return out;
}

MvPoly quadric(const RingPtr& R) {
  MvPoly f(R);
  for (size_t i = 0; i < R->num_vars(); ++i) {
    MvPoly xi = MvPoly::variable(R, i);
    f = f + xi * xi;
  }
  return f;
}

}  // namespace

TEST_CASE("bs_poly on the cusp, p = 1 mod 3") {
  auto R = make_ring(7, {"x", "y"});
  MvPoly f = parse("x^2 + y^3", R);

  // roots 1 - 1/p^e and (5/6)(1 - 1/p^e)
  REQUIRE(root_strings(bs_poly(f, 1)) == std::set<std::string>{"6/7", "5/7"});
  REQUIRE(root_strings(bs_poly(f, 2)) == std::set<std::string>{"48/49", "40/49"});
  REQUIRE(root_strings(bs_poly(f, 3)) == std::set<std::string>{"342/343", "285/343"});

  // b_f in F_p[s] corresponds to (s+1)(s+5/6): roots -1 and -5/6 mod 7
  auto b1 = bs_poly(f, 1);
  uint64_t minus_one = 6;
  uint64_t minus_five_sixths = fp::neg(fp::mul(5, fp::inv(6, 7), 7), 7);
  REQUIRE(b1.char_p_roots == std::set<uint64_t>{minus_one, minus_five_sixths});
}

TEST_CASE("bs_poly on the cusp, p = 2 mod 3") {
  auto R = make_ring(5, {"x", "y"});
  MvPoly f = parse("x^2 + y^3", R);

  // roots 1 - 1/p^e and (5p-1)/(6p) - 1/p^e
  REQUIRE(root_strings(bs_poly(f, 1)) == std::set<std::string>{"4/5", "3/5"});
  REQUIRE(root_strings(bs_poly(f, 2)) == std::set<std::string>{"24/25", "19/25"});

  // b_f corresponds to (s+1)(s+7/6): roots -1 and -7/6 mod 5
  auto b1 = bs_poly(f, 1);
  uint64_t minus_one = 4;
  uint64_t minus_seven_sixths = fp::neg(fp::mul(7 % 5, fp::inv(6 % 5, 5), 5), 5);
  REQUIRE(b1.char_p_roots == std::set<uint64_t>{minus_one, minus_seven_sixths});
}

TEST_CASE("bs_poly on quadrics: the single root 1 - 1/p^e") {
  for (auto [nvars, p] : std::vector<std::pair<size_t, uint64_t>>{{2, 3}, {2, 5}, {3, 5}}) {
    std::vector<std::string> names(nvars);
    for (size_t i = 0; i < nvars; ++i) names[i] = "x" + std::to_string(i + 1);
    auto R = make_ring(p, names);
    MvPoly f = quadric(R);
    for (size_t e = 1; e <= 2; ++e) {
      auto b = bs_poly(f, e);
      CAPTURE(nvars, p, e);
      REQUIRE(b.roots.size() == 1);
      uint64_t q = checked_pow_u64(p, e);
      REQUIRE(*b.roots.begin() == PPowRational(BigInt(q - 1), e, p));
    }
  }
}

TEST_CASE("bs_poly root invariants") {
  std::vector<std::string> polys{"x^2 + y^3", "x*y", "x + y", "x^2 + y^2", "x^3 + y^2*x"};
  for (uint64_t p : {2, 3, 5}) {
    auto R = make_ring(p, {"x", "y"});
    for (const auto& src : polys) {
      MvPoly f = parse(src, R);
      CAPTURE(p, src);
      size_t prev_count = 0;
      for (size_t e = 1; e <= 2; ++e) {
        auto b = bs_poly(f, e);
        GammaSet g = gamma_set(f, e);
        // bijection tuples <-> roots
        REQUIRE(b.roots.size() == g.tuples.size());
        uint64_t q = checked_pow_u64(p, e);
        for (const auto& r : b.roots) {
          // in [0, 1), denominator divides p^e
          REQUIRE(r.num() >= 0);
          REQUIRE(r.num() < r.den());
          REQUIRE(r.den_exp() <= e);
        }
        // 1 - 1/p^e is always a root
        REQUIRE(b.roots.count(PPowRational(BigInt(q - 1), e, p)) == 1);
        // root count weakly increasing in e
        REQUIRE(b.roots.size() >= prev_count);
        prev_count = b.roots.size();
      }

      // level-1 F_p-roots match the rational roots i/p
      auto b1 = bs_poly(f, 1);
      std::set<uint64_t> from_rational;
      for (const auto& r : b1.roots) {
        from_rational.insert((r.num() * BigInt(r.den_exp() == 0 ? p : 1) % p).convert_to<uint64_t>());
      }
      REQUIRE(b1.char_p_roots == from_rational);
    }
  }
}

TEST_CASE("verify_main_theorem") {
  SECTION("cusp at p = 7 and p = 5") {
    for (uint64_t p : {5, 7}) {
      auto R = make_ring(p, {"x", "y"});
      auto rep = verify_main_theorem(parse("x^2 + y^3", R), 1, 1);
      CAPTURE(p, rep.witnesses);
      REQUIRE(rep.pass);
      REQUIRE(rep.checks > 0);
    }
  }
  SECTION("smooth divisor") {
    auto R = make_ring(3, {"x"});
    auto rep = verify_main_theorem(MvPoly::variable(R, 0), 1, 1);
    REQUIRE(rep.pass);
  }
  SECTION("refinement 2") {
    auto R = make_ring(3, {"x", "y"});
    auto rep = verify_main_theorem(parse("x^2 + y^3", R), 1, 2);
    REQUIRE(rep.pass);
  }
}

TEST_CASE("quasihomogeneous_check") {
  SECTION("cusp with weights (3,2), degree 6") {
    for (uint64_t p : {5, 7, 11, 13}) {
      auto R = make_ring(p, {"x", "y"});
      auto rep = quasihomogeneous_check(parse("x^2 + y^3", R), {3, 2}, 6);
      CAPTURE(p, rep.witnesses);
      REQUIRE(rep.pass);
      REQUIRE(rep.checks == 1);  // exactly one root != -1
      REQUIRE(rep.witnesses.size() == 1);
      REQUIRE(rep.witnesses[0].find("matched") != std::string::npos);
      // p = 1 mod 3 matches the constant monomial, p = 2 mod 3 matches y
      if (p % 3 == 1) REQUIRE(rep.witnesses[0].find("monomial 1") != std::string::npos);
      else REQUIRE(rep.witnesses[0].find("monomial y") != std::string::npos);
    }
  }

  SECTION("quadric x1^2 + x2^2: vacuous pass") {
    auto R = make_ring(5, {"x1", "x2"});
    auto rep = quasihomogeneous_check(quadric(R), {1, 1}, 2);
    REQUIRE(rep.pass);
    REQUIRE(rep.checks == 0);  // only the root -1, nothing to match
  }

  SECTION("degree divisible by p is rejected") {
    auto R = make_ring(3, {"x", "y"});
    REQUIRE_THROWS_AS(quasihomogeneous_check(parse("x^2 + y^3", R), {3, 2}, 6), std::domain_error);
  }

  SECTION("non-quasihomogeneous input is rejected") {
    auto R = make_ring(7, {"x", "y"});
    REQUIRE_THROWS_AS(quasihomogeneous_check(parse("x^2 + y^3", R), {1, 1}, 2), std::domain_error);
  }

  SECTION("infinite colength is rejected") {
    auto R = make_ring(7, {"x", "y"});
    // f = x^2: Jacobian (x), no pure power of y
    REQUIRE_THROWS_AS(quasihomogeneous_check(parse("x^2", R), {1, 0}, 2), std::domain_error);
  }
}
