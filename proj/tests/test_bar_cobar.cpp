#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>

#include "hoch/bar_cobar.hpp"
#include "hoch/errors.hpp"
#include "hoch/registry.hpp"

using namespace hoch;

namespace {

const auto Z = CoefficientRing::integers();
CoefficientRing F(Scalar p) { return CoefficientRing::prime_field(p); }

HomologyGroup free_group(std::size_t r) { return HomologyGroup{r, {}}; }
HomologyGroup torsion_group(Scalar p) { return HomologyGroup{0, {p}}; }

std::vector<DGAlgebra> small_algebras() {
  return {exterior_algebra(F(2), {1}),           exterior_algebra(F(3), {-1}),
          exterior_algebra(F(5), {1, 2}),        exterior_algebra(F(3), {2}),
          truncated_polynomial_algebra(F(2), 2, 3), truncated_polynomial_algebra(F(3), 1, 2),
          koszul_model_Fp_over_Z(2),             koszul_model_Fp_over_Z(3),
          ground_algebra(F(2)),                  ground_algebra(Z)};
}

}  // namespace

TEST_CASE("bar level pieces") {
  auto z = exterior_algebra(F(3), {-1});
  auto tc = normalized_bar(z, 3, Window(-1, 0));
  for (int n = 0; n <= 3; ++n) {
    CHECK(tc.piece_rank(n, 0) == 1);
    CHECK(tc.piece_rank(n, -1) == 1);
  }
  auto g = normalized_bar(ground_algebra(F(2)), 5, Window(-2, 2));
  CHECK(g.piece_rank(0, 0) == 1);
  for (int n = 1; n <= 5; ++n)
    for (int t = -3; t <= 3; ++t) CHECK(g.piece_rank(n, t) == 0);
  auto k = normalized_bar(koszul_model_Fp_over_Z(2), 2, Window(0, 6));
  for (int n = 0; n <= 2; ++n)
    for (int t = -1; t < 2 * n; ++t) CHECK(k.piece_rank(n, t) == 0);
  CHECK(k.piece_rank(2, 4) == 1);
  CHECK(k.piece_rank(2, 5) == 1);
}

TEST_CASE("HH of Lambda(z_-1) grows by one per level") {
  for (Scalar p : {2, 3, 5})
    for (int N = 2; N <= 8; ++N) {
      auto h = hochschild(exterior_algebra(F(p), {-1}), N, Window(-3, 2));
      for (const auto& e : h.entries) {
        if (e.degree == 0 || e.degree == -1) {
          CHECK(e.group == free_group(N + 1));
          CHECK(e.stability == Stability::kUnstable);
          CHECK(e.annotation == "+1/level");
          REQUIRE(e.growth.size() == static_cast<std::size_t>(N + 1));
          for (int n = 0; n <= N; ++n) CHECK(e.growth[n] == free_group(n + 1));
        } else {
          CHECK(e.group.is_zero());
          CHECK(e.stability != Stability::kUnstable);
        }
      }
    }
}

TEST_CASE("HH of Lambda(y_1) over GF(2) is certified rank one") {
  auto h = hochschild(exterior_algebra(F(2), {1}), 8, Window(0, 6));
  for (const auto& e : h.entries) {
    CHECK(e.group == free_group(1));
    CHECK(e.stability == Stability::kCertified);
  }
}

TEST_CASE("HH of the Koszul model over Z") {
  for (Scalar p : {2, 3}) {
    auto h = hochschild(koszul_model_Fp_over_Z(p), 8, Window(0, 5));
    for (const auto& e : h.entries) {
      CHECK(e.stability == Stability::kCertified);
      if (e.degree % 2 == 0)
        CHECK(e.group == torsion_group(p));
      else
        CHECK(e.group.is_zero());
    }
  }
}

TEST_CASE("Moore oracle agrees with the normalized bar everywhere") {
  for (const auto& a : small_algebras())
    for (int N = 0; N <= 4; ++N) {
      Window w(-3, 4);
      auto fast = hochschild(a, N, w);
      auto slow = oracle_unnormalized_bar(a, N, w);
      for (const auto& e : fast.entries) CHECK_MESSAGE(slow.at(e.degree).group == e.group, a.name(), " N=", N, " t=", e.degree);
    }
}

TEST_CASE("raw unnormalized truncation agrees on certified degrees only") {
  for (const auto& a : small_algebras())
    for (int N = 1; N <= 4; ++N) {
      Window w(0, 4);
      auto fast = hochschild(a, N, w);
      auto raw = oracle_unnormalized_bar(a, N, w, OracleMode::kRaw);
      // The raw complex keeps unit slots, so its own level bound is weaker:
      // level n starts at a_lo + n(a_lo + 1), a_lo the lowest degree of A.
      int a_lo = 0;
      for (std::size_t i = 0; i < a.dim(); ++i) a_lo = std::min(a_lo, a.basis().degree(i));
      for (const auto& e : fast.entries)
        if (e.stability == Stability::kCertified && a_lo + 1 > 0 && a_lo + N * (a_lo + 1) > e.degree + 1)
          CHECK(raw.at(e.degree).group == e.group);
    }
  // Lambda(z_-1), N = 1: the raw complex overcounts degree 0.
  auto z = exterior_algebra(F(3), {-1});
  CHECK(oracle_unnormalized_bar(z, 1, Window(-1, 1), OracleMode::kRaw).at(0).group == free_group(3));
  CHECK(hochschild(z, 1, Window(-1, 1)).at(0).group == free_group(2));
}

TEST_CASE("oracle examples and cap") {
  auto y = exterior_algebra(F(2), {1});
  auto o = oracle_unnormalized_bar(y, 4, Window(0, 3));
  for (int t = 0; t <= 3; ++t) CHECK(o.at(t).group == free_group(1));
  CHECK(oracle_unnormalized_bar(ground_algebra(F(2)), 3, Window(0, 0)).at(0).group == free_group(1));
  auto k = oracle_unnormalized_bar(koszul_model_Fp_over_Z(3), 3, Window(0, 2));
  CHECK(k.at(0).group == torsion_group(3));
  CHECK(k.at(1).group.is_zero());
  CHECK(k.at(2).group == torsion_group(3));
  setenv("HOCH_ORACLE_CAP", "10", 1);
  CHECK(oracle_cap() == 10);
  CHECK_THROWS_AS(oracle_unnormalized_bar(exterior_algebra(F(2), {1, 1}), 4, Window(0, 4)), InvalidInput);
  unsetenv("HOCH_ORACLE_CAP");
  CHECK(oracle_cap() == 4096);
}

TEST_CASE("cobar level pieces and coHH") {
  auto g = cohochschild(ground_coalgebra(F(3)), 4, Window(-2, 2));
  for (const auto& e : g.entries) CHECK(e.group == (e.degree == 0 ? free_group(1) : free_group(0)));

  auto y = conormalized_cobar(exterior_coalgebra(F(2), {1}), 3, Window(0, 1));
  for (int n = 0; n <= 3; ++n) {
    CHECK(y.piece_rank(n, 0) == 1);
    CHECK(y.piece_rank(n, 1) == 1);
  }
  auto dk = conormalized_cobar(dual_koszul_coalgebra(2), 4, Window(-9, 2));
  for (int t = 1; t <= 3; ++t)
    for (int n = 0; n <= 4; ++n) CHECK(dk.piece_rank(n, t) == 0);
  for (int n = 0; n <= 4; ++n) CHECK(dk.piece_rank(n, -2 * n) + dk.piece_rank(n, -2 * n - 1) == 2);

  for (Scalar p : {2, 3, 5})
    for (int N = 1; N <= 6; ++N) {
      auto h = cohochschild(exterior_coalgebra(F(p), {1}), N, Window(-2, 3));
      for (const auto& e : h.entries) {
        if (e.degree == 0 || e.degree == 1) {
          CHECK(e.group == free_group(N + 1));
          CHECK(e.annotation == "+1/level");
        } else {
          CHECK(e.group.is_zero());
        }
      }
    }
  for (Scalar p : {2, 3}) {
    auto h = cohochschild(dual_koszul_coalgebra(p), 8, Window(-5, 0));
    for (const auto& e : h.entries) {
      CHECK(e.stability == Stability::kCertified);
      CHECK(e.group == (e.degree % 2 != 0 ? torsion_group(p) : free_group(0)));
    }
  }
}

TEST_CASE("total differentials square to zero on registry and random inputs") {
  // ChainComplex construction asserts d*d = 0; building is the check.
  for (const auto& a : small_algebras()) CHECK_NOTHROW(normalized_bar(a, 4, Window(-6, 6)));
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto a = random_graded_commutative_algebra(F(s % 2 ? 3 : 2), 500 + s);
    CHECK_NOTHROW(normalized_bar(a, 3, Window(-4, 8)));
    CHECK_NOTHROW(conormalized_cobar(dualize_algebra(a), 3, Window(-8, 4)));
  }
  for (const auto& c : {exterior_coalgebra(F(3), {1, 2}), exterior_coalgebra(Z, {1, -1}), dual_koszul_coalgebra(3)})
    CHECK_NOTHROW(conormalized_cobar(c, 4, Window(-8, 8)));
}

TEST_CASE("Tor over exterior algebras") {
  auto y = exterior_algebra(F(3), {1});
  auto bi = tor_bigraded(y, 6);
  for (int k = 0; k <= 5; ++k) CHECK(bi.at({k, k}) == free_group(1));
  CHECK(bi.size() == 6);
  auto tot = tor_one_sided(y, 5, Window(0, 10));
  for (const auto& e : tot.entries) CHECK(e.group == free_group(e.degree % 2 == 0 ? 1 : 0));
  auto g = tor_one_sided(ground_algebra(F(2)), 3, Window(-1, 2));
  for (const auto& e : g.entries) CHECK(e.group == free_group(e.degree == 0 ? 1 : 0));
  CHECK_THROWS_AS(tor_one_sided(koszul_model_Fp_over_Z(2), 2, Window(0, 2)), InvalidInput);
  // k[x]/x^3, |x| = 2: Tor = Lambda(sx) (x) Gamma(phi x), classes at (0,0), (1,2), (2,6), (3,8), ...
  auto t3 = tor_bigraded(truncated_polynomial_algebra(F(2), 2, 3), 5);
  CHECK(t3.at({0, 0}) == free_group(1));
  CHECK(t3.at({1, 2}) == free_group(1));
  CHECK(t3.at({2, 6}) == free_group(1));
  CHECK(t3.at({3, 8}) == free_group(1));
  CHECK(t3.at({4, 12}) == free_group(1));
  CHECK(t3.size() == 5);
}

TEST_CASE("threaded homology is identical") {
  auto a = exterior_algebra(F(3), {1, 2});
  auto serial = hochschild(a, 5, Window(0, 8), 1);
  auto threaded = hochschild(a, 5, Window(0, 8), 4);
  REQUIRE(serial.entries.size() == threaded.entries.size());
  for (std::size_t i = 0; i < serial.entries.size(); ++i) {
    CHECK(serial.entries[i].group == threaded.entries[i].group);
    CHECK(serial.entries[i].annotation == threaded.entries[i].annotation);
    CHECK(serial.entries[i].growth == threaded.entries[i].growth);
  }
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(hochschild(exterior_algebra(F(2), {1}), -1, Window(0, 1)), InvalidInput);
  CHECK_THROWS_AS(cohochschild(laurent_coalgebra(F(2), Window(-2, 2)), 2, Window(0, 1)), InsufficientData);
  auto tc = normalized_bar(exterior_algebra(F(2), {1}), 3, Window(0, 2));
  CHECK_THROWS_AS(tc.homology_at_level(0, 4), InvalidInput);
  CHECK_THROWS_AS(tc.homology_at_level(5, 1), InsufficientData);
}
