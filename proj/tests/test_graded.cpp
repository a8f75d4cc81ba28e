#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hoch/errors.hpp"
#include "hoch/registry.hpp"
#include "support.hpp"

using namespace hoch;

namespace {

const auto Z = CoefficientRing::integers();
CoefficientRing F(Scalar p) { return CoefficientRing::prime_field(p); }

ChainComplex point(CoefficientRing r, int degree) { return ChainComplex(GradedModule(r, {{degree, 1}}), {}); }

ChainComplex koszul_complex(Scalar p) { return koszul_model_Fp_over_Z(p).complex(); }

ChainComplex same_data(const ChainComplex& c) {
  // Drop labels and metadata to compare shapes and differentials only.
  return ChainComplex(GradedModule(c.ring(), c.module().ranks()), c.differentials());
}

}  // namespace

TEST_CASE("window parsing") {
  CHECK(Window::parse("-5:0") == Window(-5, 0));
  CHECK_THROWS_AS(Window::parse("3:1"), InvalidInput);
  CHECK_THROWS_AS(Window::parse("3"), InvalidInput);
  CHECK(Window(-1, 2).reflected() == Window(-2, 1));
}

TEST_CASE("tensor examples") {
  auto y = exterior_algebra(F(2), {1}).complex();
  auto t = tensor(y, y, Window(0, 2));
  CHECK(t.rank(0) == 1);
  CHECK(t.rank(1) == 2);
  CHECK(t.rank(2) == 1);
  CHECK(t.module().labels(1) == std::vector<std::string>{"1|x1", "x1|1"});

  auto u = unit_complex(F(3));
  auto k = exterior_algebra(F(3), {-1, 2}).complex();
  CHECK(same_data(tensor(u, k)) == same_data(k));

  auto kz = koszul_complex(5);
  auto kk = tensor(kz, kz, Window(0, 2));
  CHECK(kk.rank(0) == 1);
  CHECK(kk.rank(1) == 2);
  CHECK(kk.rank(2) == 1);
  CHECK(kk.d(1) == Matrix::from_dense(Z, {{5, 5}}));
  CHECK(kk.d(2) == Matrix::from_dense(Z, {{5}, {-5}}));
  CHECK_THROWS_AS(tensor(y, kz), InvalidInput);
}

TEST_CASE("tensor is associative under the fixed ordering") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    CoefficientRing r = trial % 2 ? Z : F(3);
    auto a = testsupport::random_known_complex(rng, r, -1, 1).complex;
    auto b = testsupport::random_known_complex(rng, r, -1, 1).complex;
    auto c = testsupport::random_known_complex(rng, r, 0, 1).complex;
    auto left = tensor(tensor(a, b), c);
    auto right = tensor(a, tensor(b, c));
    CHECK(left.module().ranks() == right.module().ranks());
    // Reindex: left-nested order (i, j, k) vs right-nested order; compare
    // through d^2 = 0 and homology, then entrywise via explicit permutation.
    for (auto [deg, rk] : left.module().ranks()) CHECK(left.homology_at(deg) == right.homology_at(deg));
  }
}

TEST_CASE("tensor associativity entrywise on labeled complexes") {
  auto a = exterior_algebra(F(5), {1}).complex();
  auto b = exterior_algebra(F(5), {2}).complex();
  auto c = exterior_algebra(F(5), {-1}).complex();
  auto left = tensor(tensor(a, b), c);
  auto right = tensor(a, tensor(b, c));
  for (auto [deg, rk] : left.module().ranks()) {
    auto ll = left.module().labels(deg), rl = right.module().labels(deg);
    std::sort(ll.begin(), ll.end());
    std::sort(rl.begin(), rl.end());
    CHECK(ll == rl);
  }
}

TEST_CASE("dual examples") {
  auto d = dual(point(F(7), 4));
  CHECK(d.rank(-4) == 1);
  CHECK(d.module().ranks().size() == 1);

  auto kd = dual(koszul_complex(3));
  CHECK(kd.rank(0) == 1);
  CHECK(kd.rank(-1) == 1);
  CHECK(kd.d(0) == Matrix::from_dense(Z, {{-3}}));

  auto y = exterior_algebra(F(2), {1}).complex();
  auto yy = dual(dual(y));
  CHECK(yy.module().ranks() == y.module().ranks());
  CHECK(yy.module().labels(1) == y.module().labels(1));

  auto win = laurent_pattern_module(F(2), Window(-2, 2));
  CHECK_THROWS_AS(dual(win, Window(-3, 0)), InsufficientData);
}

TEST_CASE("shift examples") {
  auto s = shift(unit_complex(F(2)), 1);
  CHECK(s.rank(1) == 1);
  auto k = koszul_complex(2);
  CHECK(shift(shift(k, 1), -1) == k);
  auto km = shift(k, -1);
  CHECK(km.rank(-1) == 1);
  CHECK(km.rank(0) == 1);
  CHECK(km.d(0) == Matrix::from_dense(Z, {{-2}}));
}

TEST_CASE("homology examples") {
  auto k = koszul_complex(3);
  auto h = k.homology(Window(0, 1));
  CHECK(h.at(0).group.torsion == std::vector<Scalar>{3});
  CHECK(h.at(1).group.is_zero());
  CHECK(h.at(0).stability == Stability::kExact);

  auto z = ChainComplex(GradedModule(F(5), {{0, 2}, {3, 1}}), {});
  auto hz = z.homology(Window(-1, 4));
  CHECK(hz.at(0).group.free_rank == 2);
  CHECK(hz.at(3).group.free_rank == 1);
  CHECK(hz.at(1).group.is_zero());

  auto dk = dual(koszul_complex(2));
  auto hd = dk.homology(Window(-1, 0));
  CHECK(hd.at(-1).group.torsion == std::vector<Scalar>{2});
  CHECK(hd.at(0).group.is_zero());

  auto lm = laurent_pattern_module(F(2), Window(-2, 2));
  auto hl = lm.homology(Window(-2, 2));
  CHECK(hl.at(-2).stability == Stability::kWindowEdge);
  CHECK(hl.at(0).stability == Stability::kExact);
  CHECK_THROWS_AS(lm.homology(Window(-3, 0)), InsufficientData);
}

TEST_CASE("homology matches the planted answer, serial and threaded") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    CoefficientRing r = trial % 3 == 0 ? Z : F(trial % 3 == 1 ? 2 : 5);
    auto known = testsupport::random_known_complex(rng, r, -2, 2);
    auto serial = known.complex.homology(Window(-3, 3));
    auto threaded = known.complex.homology(Window(-3, 3), 4);
    for (int t = -3; t <= 3; ++t) {
      HomologyGroup expect = known.homology.count(t) ? known.homology.at(t) : HomologyGroup{};
      CHECK(serial.at(t).group == expect);
      CHECK(threaded.at(t).group == expect);
    }
  }
}

TEST_CASE("dual homology: field ranks reflect, integers follow universal coefficients") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    CoefficientRing r = trial % 2 ? Z : F(3);
    auto known = testsupport::random_known_complex(rng, r, -2, 2);
    auto dc = dual(known.complex);
    for (int i = -3; i <= 3; ++i) {
      HomologyGroup h = known.complex.homology_at(i);
      HomologyGroup hd = dc.homology_at(-i);
      CHECK(hd.free_rank == h.free_rank);
      if (!r.is_field()) CHECK(hd.torsion == known.complex.homology_at(i - 1).torsion);
    }
  }
  // The Koszul model directly: H_0 = Z/p, so the dual has Z/p in degree -1.
  auto kd = dual(koszul_complex(5));
  CHECK(kd.homology_at(-1).torsion == std::vector<Scalar>{5});
}

TEST_CASE("evaluation C^v (x) C -> unit is a chain map") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    CoefficientRing r = trial % 2 ? Z : F(7);
    auto c = testsupport::random_known_complex(rng, r, -2, 2).complex;
    auto cv = dual(c);
    auto t = tensor(cv, c);
    // ev in degree 0: f_a (x) x_b -> delta_ab, blocks ordered by |f| ascending.
    Matrix ev(r, 1, t.rank(0));
    auto off = tensor_block_offsets(cv.module(), c.module(), 0);
    for (auto [i, o] : off)
      for (std::size_t a = 0; a < cv.rank(i); ++a) ev.set(0, o + a * c.rank(-i) + a, 1);
    CHECK((ev * t.d(1)).is_zero());
  }
}

TEST_CASE("good truncations") {
  auto k = koszul_complex(3);
  auto t = truncate_coconnective(k, 0);
  CHECK(t.homology_at(0).torsion == std::vector<Scalar>{3});
  CHECK(t.homology_at(1).is_zero());
  CHECK(t.connectivity().coconnective == 0);

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    CoefficientRing r = trial % 2 ? Z : F(2);
    auto known = testsupport::random_known_complex(rng, r, -2, 2);
    for (int n = -2; n <= 2; ++n) {
      auto up = truncate_coconnective(known.complex, n);
      auto down = truncate_connective(known.complex, n);
      auto both = truncate_coconnective(truncate_connective(known.complex, n), n);
      for (int i = -3; i <= 3; ++i) {
        HomologyGroup h = known.complex.homology_at(i);
        CHECK(up.homology_at(i) == (i <= n ? h : HomologyGroup{}));
        CHECK(down.homology_at(i) == (i >= n ? h : HomologyGroup{}));
        CHECK(both.homology_at(i) == (i == n ? h : HomologyGroup{}));
      }
    }
  }
  // Zero differential: truncation is restriction of ranks.
  auto z = ChainComplex(GradedModule(F(2), {{0, 1}, {1, 2}, {2, 3}}), {});
  CHECK(truncate_coconnective(z, 1).module().ranks() == std::map<int, std::size_t>{{0, 1}, {1, 2}});
  CHECK(truncate_connective(z, 1).module().ranks() == std::map<int, std::size_t>{{1, 2}, {2, 3}});
}

TEST_CASE("predict_bounds") {
  auto dual1 = predict_bounds({BoundOp::kDual, Connectivity{1, std::nullopt}, {}, 0});
  CHECK(dual1.coconnective == -1);
  CHECK(!dual1.connective);
  auto ten = predict_bounds({BoundOp::kTensor, Connectivity{1, std::nullopt}, Connectivity{1, std::nullopt}, 0});
  CHECK(ten.connective == 2);
  auto dz = predict_bounds({BoundOp::kDual, Connectivity{std::nullopt, 0}, {}, 1});
  CHECK(dz.connective == -1);
  auto tc = predict_bounds({BoundOp::kTensor, Connectivity{std::nullopt, 0}, Connectivity{std::nullopt, 2}, 1});
  CHECK(tc.coconnective == 3);
  CHECK_THROWS_AS(predict_bounds({BoundOp::kDual, {}, {}, 0}), InvalidInput);
  CHECK_THROWS_AS(predict_bounds({BoundOp::kTensor, Connectivity{0, std::nullopt}, Connectivity{std::nullopt, 0}, 0}),
                  InvalidInput);
}

TEST_CASE("predicted bounds are never violated") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    CoefficientRing r = trial % 2 ? Z : F(3);
    auto a = testsupport::random_known_complex(rng, r, -1, 2).complex;
    auto b = testsupport::random_known_complex(rng, r, -2, 1).complex;
    auto support = [](const ChainComplex& c) {
      Connectivity out;
      auto w = c.data_window();
      for (int t = w->lo; t <= w->hi; ++t)
        if (!c.homology_at(t).is_zero()) {
          if (!out.connective) out.connective = t;
          out.coconnective = t;
        }
      return out;
    };
    Connectivity ca = support(a), cb = support(b);
    if (!ca.connective || !cb.connective) continue;
    auto check_within = [&](const ChainComplex& c, const Connectivity& bound) {
      auto w = c.data_window();
      if (!w) return;
      for (int t = w->lo; t <= w->hi; ++t) {
        if (c.homology_at(t).is_zero()) continue;
        CHECK(t >= *bound.connective);
        CHECK(t <= *bound.coconnective);
      }
    };
    int d = r.global_dimension();
    check_within(tensor(a, b), predict_bounds({BoundOp::kTensor, ca, cb, d}));
    check_within(dual(a), predict_bounds({BoundOp::kDual, ca, {}, d}));
  }
}

TEST_CASE("d squared must vanish") {
  GradedModule m(F(2), {{0, 1}, {1, 1}, {2, 1}});
  std::map<int, Matrix> d;
  d.emplace(1, Matrix::from_dense(F(2), {{1}}));
  d.emplace(2, Matrix::from_dense(F(2), {{1}}));
  CHECK_THROWS_AS(ChainComplex(m, d), AxiomFailure);
  std::map<int, Matrix> bad;
  bad.emplace(1, Matrix::from_dense(F(2), {{1, 1}}));
  CHECK_THROWS_AS(ChainComplex(m, bad), InvalidInput);
}
