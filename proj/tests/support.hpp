#pragma once

// Shared fixtures for the test binaries.

#include <map>
#include <random>
#include <vector>

#include "hoch/graded.hpp"

namespace testsupport {

using namespace hoch;

// Random invertible matrix over the ring, with its inverse, built from
// elementary operations.
inline std::pair<Matrix, Matrix> random_invertible(std::mt19937_64& rng, const CoefficientRing& ring, std::size_t n) {
  Matrix P = Matrix::identity(ring, n), Q = Matrix::identity(ring, n);
  if (n < 2) return {P, Q};
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> coeff(-2, 2);
  for (std::size_t k = 0; k < 3 * n; ++k) {
    std::size_t i = idx(rng), j = idx(rng);
    Scalar c = ring.normalize(coeff(rng));
    if (i == j || c == 0) continue;
    Matrix E = Matrix::identity(ring, n), Einv = Matrix::identity(ring, n);
    E.set(i, j, c);
    Einv.set(i, j, ring.neg(c));
    P = P * E;
    Q = Einv * Q;
  }
  return {P, Q};
}

// A complex with known homology: a direct sum of free summands and of pairs
// C_{n+1} -> C_n given by multiplication by m, hidden by a random change of
// basis in every degree.
struct KnownComplex {
  ChainComplex complex;
  std::map<int, HomologyGroup> homology;
};

inline KnownComplex random_known_complex(std::mt19937_64& rng, const CoefficientRing& ring, int lo, int hi) {
  std::uniform_int_distribution<int> deg(lo, hi), count(0, 2), mult(2, 4);
  std::map<int, std::size_t> ranks;
  std::map<int, std::vector<std::pair<std::size_t, Scalar>>> pairs;  // source col -> (target row, m) for d_n
  std::map<int, std::vector<std::tuple<std::size_t, std::size_t, Scalar>>> entries;
  std::map<int, HomologyGroup> homology;
  int frees = count(rng) + 1;
  for (int k = 0; k < frees; ++k) {
    int n = deg(rng);
    ranks[n]++;
    homology[n].free_rank++;
  }
  int npairs = count(rng) + 1;
  for (int k = 0; k < npairs; ++k) {
    int n = deg(rng);
    if (n + 1 > hi) continue;
    Scalar m = 1;
    if (!ring.is_field() && count(rng) > 0) m = mult(rng);
    std::size_t row = ranks[n]++;
    std::size_t col = ranks[n + 1]++;
    entries[n + 1].emplace_back(row, col, m);
    if (m != 1) homology[n].torsion.push_back(m);
  }
  for (auto& [n, h] : homology) std::sort(h.torsion.begin(), h.torsion.end());
  // Divisibility chain: normalize torsion lists through SNF of a diagonal.
  for (auto& [n, h] : homology) {
    if (h.torsion.empty()) continue;
    Matrix d(ring, h.torsion.size(), h.torsion.size());
    for (std::size_t i = 0; i < h.torsion.size(); ++i) d.set(i, i, h.torsion[i]);
    std::vector<Scalar> f;
    for (Scalar x : smith_normal_form(d))
      if (x > 1) f.push_back(x);
    h.torsion = f;
  }
  std::map<int, std::pair<Matrix, Matrix>> basis;
  for (auto [n, r] : ranks) basis.emplace(n, random_invertible(rng, ring, r));
  std::map<int, Matrix> diffs;
  for (auto& [n, list] : entries) {
    Matrix d(ring, ranks[n - 1], ranks[n]);
    for (auto [r, c, m] : list) d.set(r, c, m);
    // d' = P_{n-1}^{-1} d P_n
    diffs.emplace(n, basis.at(n - 1).second * d * basis.at(n).first);
  }
  std::erase_if(homology, [](const auto& kv) { return kv.second.is_zero(); });
  return {ChainComplex(GradedModule(ring, ranks), diffs), homology};
}

}  // namespace testsupport
