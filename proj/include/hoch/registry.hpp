#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hoch/dg.hpp"

namespace hoch {

// Lambda(x_1, ..., x_k) with |x_i| = degrees[i]; graded-commutative signs.
DGAlgebra exterior_algebra(CoefficientRing ring, const std::vector<int>& degrees);
// The exterior coalgebra: x_S -> sum over splittings S = A + B of the shuffle sign times x_A | x_B.
DGCoalgebra exterior_coalgebra(CoefficientRing ring, const std::vector<int>& degrees);
// k[x]/(x^n) with |x| = degree.
DGAlgebra truncated_polynomial_algebra(CoefficientRing ring, int degree, int n);
// Z.1 + Z.e with |e| = 1, de = p, e^2 = 0: a strict model of F_p over Z.
DGAlgebra koszul_model_Fp_over_Z(Scalar p);
// Linear dual of the Koszul model: a coalgebra in degrees 0 and -1.
DGCoalgebra dual_koszul_coalgebra(Scalar p);
DGAlgebra ground_algebra(CoefficientRing ring);
DGCoalgebra ground_coalgebra(CoefficientRing ring);

// Rank 1 in every degree of w, zero differential; declared unbounded in both directions.
ChainComplex laurent_pattern_module(CoefficientRing ring, const Window& w);
// Rank 1 in degrees 0, step, 2*step, ... within w; declared unbounded above.
ChainComplex polynomial_pattern_module(CoefficientRing ring, int step, const Window& w);
// Rank m in degree 0; stands for an m-dimensional slice of an infinite-dimensional space.
ChainComplex finite_vector_space(CoefficientRing ring, std::size_t m);
// Square-zero coalgebra on 1 and t^k, k in w \ {0}: declared unbounded, no certificates.
DGCoalgebra laurent_coalgebra(CoefficientRing ring, const Window& w);

// Random finite graded-commutative algebra: odd generators exterior, even
// generators truncated polynomial, optional dx = c.y, then a random
// degree-preserving change of basis fixing the unit. Deterministic in seed.
DGAlgebra random_graded_commutative_algebra(CoefficientRing ring, std::uint64_t seed, int max_generators = 3);

struct RegistryParams {
  std::optional<CoefficientRing> ring;
  std::vector<int> degrees;
  std::optional<Scalar> p;
  std::optional<int> truncation;
  std::optional<Window> window;
  std::optional<std::size_t> m;
  std::uint64_t seed = 1;
};

using RegistryObject = std::variant<DGAlgebra, DGCoalgebra, ChainComplex>;

// Named examples; throws InvalidInput for unknown names or bad parameters.
RegistryObject example_registry(const std::string& name, const RegistryParams& params);
std::vector<std::string> registry_names();

}  // namespace hoch
