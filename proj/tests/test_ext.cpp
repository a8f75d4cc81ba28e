#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hoch/errors.hpp"
#include "hoch/ext.hpp"
#include "hoch/registry.hpp"

using namespace hoch;

namespace {
CoefficientRing F(Scalar p) { return CoefficientRing::prime_field(p); }
}  // namespace

TEST_CASE("periodic resolution resolves the ground ring") {
  for (Scalar p : {2, 3, 5}) {
    auto res = periodic_resolution(exterior_algebra(F(p), {-1}), 7);
    CHECK(resolves_ground_ring(res, Window(-8, 2)));
  }
  auto res = periodic_resolution(exterior_algebra(CoefficientRing::integers(), {1}), 6);
  CHECK(resolves_ground_ring(res, Window(-1, 7)));
  // Dropping a stage breaks exactness.
  auto broken = periodic_resolution(exterior_algebra(F(3), {-1}), 5);
  broken.boundary[2] = Vec{};
  CHECK(!resolves_ground_ring(broken, Window(-5, 1)));
}

TEST_CASE("Ext over Lambda(z_-1) is one-dimensional on the diagonal") {
  for (Scalar p : {2, 3, 5}) {
    auto res = periodic_resolution(exterior_algebra(F(p), {-1}), 7);
    auto t = ext_from_resolution(res, trivial_module(0), 4, Window(-3, 8));
    for (auto& [sj, g] : t.ext) CHECK(g.free_rank == (sj.first == sj.second ? 1u : 0u));
  }
  auto zres = periodic_resolution(exterior_algebra(CoefficientRing::integers(), {-1}), 6);
  auto zt = ext_from_resolution(zres, trivial_module(0), 4, Window(0, 4));
  for (int s = 0; s <= 4; ++s) CHECK(zt.ext.at({s, s}) == HomologyGroup{1, {}});
  // |y| = 1: classes at internal degree -s.
  auto yres = periodic_resolution(exterior_algebra(F(2), {1}), 6);
  auto yt = ext_from_resolution(yres, trivial_module(0), 4, Window(-5, 1));
  for (auto& [sj, g] : yt.ext) CHECK(g.free_rank == (sj.second == -sj.first ? 1u : 0u));
}

TEST_CASE("formality obstruction groups vanish") {
  for (Scalar p : {2, 3, 5}) {
    auto obs = formality_obstructions(exterior_algebra(F(p), {-1}), 4);
    REQUIRE(obs.size() == 4);
    for (const auto& o : obs) {
      CHECK(o.hom_rank == 0);
      CHECK(o.ext.is_zero());
    }
  }
}

TEST_CASE("zero target and malformed resolutions") {
  auto res = periodic_resolution(exterior_algebra(F(3), {-1}), 6);
  auto t = ext_from_resolution(res, ModuleOver{}, 4, Window(-4, 4));
  for (auto& [sj, g] : t.ext) CHECK(g.is_zero());
  CHECK_THROWS_AS(ext_from_resolution(res, trivial_module(0), 5, Window(0, 0)), InsufficientData);

  // x^2 != 0 in k[x]/x^3, so d(g_s) = x.g_{s-1} squares to x^2.
  auto a = truncated_polynomial_algebra(F(3), -2, 3);
  FreeResolution bad{a, {0, -2, -4}, {Vec{}, Vec{{1, 1}}, Vec{{1, 1}}}};
  CHECK_THROWS_AS(check_resolution(bad), InvalidInput);
  FreeResolution wrong_degree{a, {0, -3}, {Vec{}, Vec{{1, 1}}}};
  CHECK_THROWS_AS(check_resolution(wrong_degree), InvalidInput);
}
