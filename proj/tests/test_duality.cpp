#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hoch/duality.hpp"
#include "hoch/errors.hpp"
#include "hoch/registry.hpp"

using namespace hoch;

namespace {

const auto Z = CoefficientRing::integers();
CoefficientRing F(Scalar p) { return CoefficientRing::prime_field(p); }

std::vector<DGCoalgebra> field_coalgebras() {
  return {exterior_coalgebra(F(2), {1}),
          exterior_coalgebra(F(3), {1}),
          exterior_coalgebra(F(5), {1}),
          exterior_coalgebra(F(2), {1, 1}),
          exterior_coalgebra(F(3), {1, 2}),
          exterior_coalgebra(F(3), {-1}),
          dualize_algebra(truncated_polynomial_algebra(F(2), 2, 3)),
          dualize_algebra(truncated_polynomial_algebra(F(3), 1, 2)),
          ground_coalgebra(F(2))};
}

std::vector<ChainComplex> registry_complexes() {
  std::vector<ChainComplex> out;
  for (const auto& a : {exterior_algebra(F(2), {1}), exterior_algebra(F(3), {-1, 2}), koszul_model_Fp_over_Z(2),
                        truncated_polynomial_algebra(F(3), 2, 3), ground_algebra(Z)})
    out.push_back(a.complex());
  for (const auto& c : {exterior_coalgebra(F(2), {1, 1}), dual_koszul_coalgebra(3), exterior_coalgebra(Z, {1})})
    out.push_back(c.complex());
  return out;
}

}  // namespace

TEST_CASE("classify_map and witnesses") {
  CHECK(classify_map(Matrix::identity(F(3), 3)).verdict == MapVerdict::kIso);
  auto ni = Matrix::from_dense(F(3), {{1, 1}, {2, 2}});
  auto v = classify_map(ni);
  REQUIRE(v.verdict == MapVerdict::kNotInjective);
  auto img = ni.apply(v.witness);
  CHECK(std::all_of(img.begin(), img.end(), [](Scalar x) { return x == 0; }));
  CHECK(std::any_of(v.witness.begin(), v.witness.end(), [](Scalar x) { return x != 0; }));

  auto two = Matrix::from_dense(Z, {{2}});
  auto s = classify_map(two);
  REQUIRE(s.verdict == MapVerdict::kNotSurjective);
  CHECK(!in_image(two, s.witness));
  CHECK(classify_map(Matrix::from_dense(F(3), {{2}})).verdict == MapVerdict::kIso);

  auto wide = Matrix::from_dense(Z, {{1, 0}, {0, 1}, {1, 1}});
  auto w = classify_map(wide);
  REQUIRE(w.verdict == MapVerdict::kNotSurjective);
  CHECK(!in_image(wide, w.witness));
  CHECK(in_image(wide, std::vector<Scalar>{2, 3, 5}));
}

TEST_CASE("condition 1") {
  auto y = exterior_algebra(F(2), {1}).complex();
  auto r = condition1_check(y, 2);
  CHECK(r.ok());
  CHECK(r.window == Window(-2, 0));
  for (const auto& x : registry_complexes())
    for (int n = 0; n <= 3; ++n) {
      auto rep = condition1_check(x, n);
      CHECK_MESSAGE(rep.ok(), rep.summary());
    }
  // n = 0 and n = 1 on anything, including a window of an unbounded object
  auto l = laurent_pattern_module(F(2), Window(-2, 2));
  CHECK(condition1_check(l, 0).ok());
  CHECK(condition1_check(l, 1).ok());
  auto l2 = condition1_check(l, 2, Window(-1, 1));
  CHECK(l2.ok());
  bool growth = false;
  for (const auto& n : l2.notes) growth = growth || n.find("grows with the window") != std::string::npos;
  CHECK(growth);
  CHECK_THROWS_AS(condition1_check(tensor(y, y, Window(0, 1)), 2), InsufficientData);
}

TEST_CASE("the comparison map is a signed permutation") {
  auto x = exterior_coalgebra(Z, {1, 2}).complex();
  for (int t = -6; t <= 6; ++t) {
    auto m = condition1_map(x, 2, t);
    CHECK(m.rows() == m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
      CHECK(m.row(i).size() == 1);
      CHECK((m.row(i)[0].value == 1 || m.row(i)[0].value == -1));
    }
  }
  // the sign shows up when two odd factors pass each other
  auto y = exterior_algebra(Z, {1}).complex();
  CHECK(condition1_map(y, 2, -2) == Matrix::from_dense(Z, {{-1}}));
}

TEST_CASE("condition 2") {
  for (const auto& x : registry_complexes()) CHECK(condition2_check(x).ok());
  CHECK(condition2_check(ChainComplex(F(2))).ok());
  auto v = condition2_check(finite_vector_space(F(2), 5));
  CHECK(v.ok());
  CHECK(!v.notes.empty());
}

TEST_CASE("condition 1 for the dual follows from 1 and 2") {
  for (const auto& x : registry_complexes()) {
    bool premise = condition1_check(x, 2).ok() && condition2_check(x).ok() && condition2_check(tensor_power(x, 2)).ok();
    REQUIRE(premise);
    CHECK(condition1_check(dual(x), 2).ok());
  }
}

TEST_CASE("quasi-properness") {
  for (Scalar p : {2, 3, 5}) CHECK(quasi_properness_report(exterior_coalgebra(F(p), {1})).quasi_proper);
  CHECK(quasi_properness_report(dual_koszul_coalgebra(2)).quasi_proper);
  CHECK(quasi_properness_report(ground_coalgebra(F(2))).quasi_proper);
  CHECK(quasi_properness_report(koszul_model_Fp_over_Z(3)).quasi_proper);
  auto l = quasi_properness_report(laurent_coalgebra(F(2), Window(-2, 2)));
  CHECK(!l.quasi_proper);
  CHECK(l.summary().find("declared unbounded") != std::string::npos);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Scalar primes[] = {2, 3, 5};
    auto a = random_graded_commutative_algebra(F(primes[s % 3]), 2000 + s);
    auto rep = quasi_properness_report(a);
    CHECK_MESSAGE(rep.quasi_proper, rep.summary());
  }
}

TEST_CASE("transport_from_table") {
  HomologyTable f(F(3));
  for (int t = 0; t <= 4; ++t) f.entries.push_back({t, HomologyGroup{t % 2 == 0 ? 1u : 0u, {}}, Stability::kExact, "", {}});
  auto d = transport_from_table(f);
  REQUIRE(d.entries.size() == 5);
  for (const auto& e : d.entries) CHECK(e.group.free_rank == (e.degree % 2 == 0 ? 1u : 0u));
  CHECK(d.entries.front().degree == -4);

  HomologyTable z(Z);
  for (int t = 0; t <= 5; ++t)
    z.entries.push_back({t, t % 2 == 0 ? HomologyGroup{0, {2}} : HomologyGroup{}, Stability::kCertified, "", {}});
  auto dz = transport_from_table(z);
  REQUIRE(dz.entries.size() == 5);  // -5..-1
  for (const auto& e : dz.entries) CHECK(e.group == (e.degree % 2 != 0 ? HomologyGroup{0, {2}} : HomologyGroup{}));

  CHECK(transport_from_table(HomologyTable(F(2))).entries.empty());

  HomologyTable sym(F(5));
  for (int t = -3; t <= 3; ++t) sym.entries.push_back({t, HomologyGroup{static_cast<std::size_t>(t + 3), {}}, Stability::kCertified, "x", {}});
  auto back = transport_from_table(transport_from_table(sym));
  REQUIRE(back.entries.size() == sym.entries.size());
  for (std::size_t i = 0; i < back.entries.size(); ++i) {
    CHECK(back.entries[i].degree == sym.entries[i].degree);
    CHECK(back.entries[i].group == sym.entries[i].group);
    CHECK(back.entries[i].stability == sym.entries[i].stability);
  }
}

TEST_CASE("duality transport") {
  for (Scalar p : {2, 3, 5})
    for (int N = 1; N <= 6; ++N) {
      auto r = duality_transport_cohh(exterior_coalgebra(F(p), {1}), N, Window(-2, 3));
      CHECK(!r.forced);
      for (const auto& e : r.table.entries)
        CHECK(e.group.free_rank == ((e.degree == 0 || e.degree == 1) ? static_cast<std::size_t>(N + 1) : 0u));
    }
  for (Scalar p : {2, 3}) {
    auto r = duality_transport_cohh(dual_koszul_coalgebra(p), 8, Window(-5, 0));
    REQUIRE(r.table.entries.size() == 6);
    for (const auto& e : r.table.entries) {
      CHECK(e.stability == Stability::kCertified);
      CHECK(e.group == (e.degree % 2 != 0 ? HomologyGroup{0, {p}} : HomologyGroup{}));
    }
  }
  auto g = duality_transport_cohh(ground_coalgebra(Z), 3, Window(-1, 1));
  for (const auto& e : g.table.entries) CHECK(e.group == (e.degree == 0 ? HomologyGroup{1, {}} : HomologyGroup{}));
}

TEST_CASE("transport and direct coHH agree on certified degrees") {
  auto coalgebras = field_coalgebras();
  coalgebras.push_back(dual_koszul_coalgebra(2));
  coalgebras.push_back(dual_koszul_coalgebra(3));
  coalgebras.push_back(exterior_coalgebra(Z, {1}));
  for (const auto& c : coalgebras) {
    Window w(-4, 4);
    auto direct = cohochschild(c, 5, w);
    auto moved = duality_transport_cohh(c, 5, w).table;
    for (const auto& e : direct.entries) {
      const auto* m = moved.find(e.degree);
      REQUIRE(m);
      if (e.stability == Stability::kCertified) CHECK_MESSAGE(m->group == e.group, c.name(), " t=", e.degree);
      if (c.ring().is_field()) CHECK(m->group == e.group);
    }
  }
}

TEST_CASE("refusal and forced transport") {
  auto l = laurent_coalgebra(F(2), Window(-2, 2));
  CHECK_THROWS_AS(duality_transport_cohh(l, 2, Window(-1, 1)), HypothesisFailure);
  auto r = duality_transport_cohh(l, 2, Window(-1, 1), true);
  CHECK(r.forced);
  bool refused = false, override_seen = false;
  for (const auto& a : r.audit) {
    refused = refused || a.rfind("refused:", 0) == 0;
    override_seen = override_seen || a.rfind("override:", 0) == 0;
  }
  CHECK(refused);
  CHECK(override_seen);
  CHECK(r.table.entries.size() == 3);
}

TEST_CASE("truncated duality") {
  for (const auto& c : field_coalgebras())
    for (int N = 0; N <= 5; ++N) {
      if (c.dim() > 2 && N > 3) continue;
      auto r = truncated_duality_check(c, N, Window(-4, 4));
      CHECK_MESSAGE(r.ok, c.name(), " N=", N);
    }
  for (int N = 0; N <= 3; ++N) CHECK(truncated_duality_check(exterior_coalgebra(F(2), {1, 1}), N, Window(-3, 5)).ok);
  CHECK_THROWS_AS(truncated_duality_check(dual_koszul_coalgebra(2), 2, Window(-2, 0)), InvalidInput);

  auto c3 = exterior_coalgebra(F(3), {1, 1, 1});
  std::vector<Vec2> comult;
  for (std::size_t i = 0; i < c3.dim(); ++i) comult.push_back(c3.coproduct(i));
  for (auto& [ab, v] : comult[7])
    if (ab == std::pair<std::size_t, std::size_t>{1, 6}) v = c3.ring().neg(v);
  DGCoalgebra flipped(c3.ring(), c3.basis(), {}, comult, c3.counit());
  CHECK_THROWS_AS(truncated_duality_check(flipped, 2, Window(0, 2)), AxiomFailure);
}

TEST_CASE("tensor rank bound") {
  for (int m = 1; m <= 6; ++m) {
    auto d = tensor_rank_bound_demo(m, 20000);
    CHECK(d.rank_h == static_cast<std::size_t>(m));
    CHECK(d.separated());
    CHECK(d.exhaustive == (m <= 4));
  }
  auto three = tensor_rank_bound_demo(3);
  CHECK(three.max_rank_seen == 2);
  CHECK(three.sums_checked == 4096);
  auto one = tensor_rank_bound_demo(1);
  CHECK(one.terms == 0);
  CHECK(one.max_rank_seen == 0);
  CHECK_THROWS_AS(tensor_rank_bound_demo(0), InvalidInput);
}
