#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hoch/matrix.hpp"

namespace hoch {

// Free rank plus torsion invariant factors (each > 1, each dividing the next).
struct HomologyGroup {
  std::size_t free_rank = 0;
  std::vector<Scalar> torsion;

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  // "0", "F^2", "Z + Z/2 + Z/4", ...
  std::string to_string(const CoefficientRing& ring) const;
  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

// Rank over GF(p) by sparse elimination. Throws InvalidInput over Z.
std::size_t rank_field(const Matrix& m);

// Rank over the fraction field (GF(p) or Q).
std::size_t rank(const Matrix& m);

// U * M * V = D with D diagonal, d_1 | d_2 | ... | d_r, all d_i > 0
// (over a field every d_i is 1). U and V are invertible; V_inv = V^{-1}.
struct SmithDecomposition {
  std::vector<Scalar> diagonal;
  Matrix U, V, V_inv;
  std::size_t rank() const { return diagonal.size(); }
};

SmithDecomposition smith_decompose(const Matrix& m);

// Nonzero invariant factors of an integer matrix. Throws over GF(p).
std::vector<Scalar> smith_normal_form(const Matrix& m);

// Columns form a basis of ker M; over Z the basis is saturated.
Matrix kernel_basis(const Matrix& m);

// H = ker(d_out) / im(d_in), where d_in : C_{n+1} -> C_n and d_out : C_n -> C_{n-1}.
// Checks composability and d_out * d_in = 0.
HomologyGroup homology_group(const Matrix& d_in, const Matrix& d_out, const CoefficientRing& ring);

}  // namespace hoch
