#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hoch/dg.hpp"

namespace hoch {

enum class BarKind {
  kCyclicBar,    // A (x) Abar^n at internal + n
  kCyclicCobar,  // C (x) Cbar^n at internal - n
  kReducedBar,   // Abar^n at internal + n (one-sided, computes Tor_A(k,k))
};

// Chain support of level n: total degrees in [lo0 + n*dlo, hi0 + n*dhi].
// `reduced_empty` means Abar (or Cbar) is zero, so only level 0 exists.
struct LevelSupport {
  int lo0 = 0, hi0 = 0, dlo = 0, dhi = 0;
  bool reduced_empty = false;
  bool empty(int n) const { return n > 0 && reduced_empty; }
  int lo(int n) const { return lo0 + n * dlo; }
  int hi(int n) const { return hi0 + n * dhi; }
};

// Truncated total complex. Basis vectors inside each degree are ordered by
// level, so truncating to levels <= n keeps a prefix of rows and columns
// (a subcomplex for bars, a quotient for the cobar).
struct TotalComplex {
  BarKind kind = BarKind::kCyclicBar;
  int levels = 0;
  Window window;         // degrees where homology is wanted
  ChainComplex complex{CoefficientRing::integers()};  // degrees window.lo-1 .. window.hi+1
  std::map<int, std::vector<int>> level_of;
  LevelSupport support;

  std::size_t piece_rank(int level, int degree) const;
  // Number of basis vectors of level <= n in a degree.
  std::size_t prefix(int degree, int n) const;
  // Homology in degree t of the complex cut at level n <= levels.
  HomologyGroup homology_at_level(int t, int n) const;
};

TotalComplex normalized_bar(const DGAlgebra& a, int levels, const Window& w);
TotalComplex conormalized_cobar(const DGCoalgebra& c, int levels, const Window& w);
// Requires an augmentation: the span of the non-unit basis vectors is a
// subcomplex and an ideal.
TotalComplex reduced_bar(const DGAlgebra& a, int levels, const Window& w);

// Homology per degree of w with growth over levels 0..N and a stability flag:
// certified when no level >= N reaches [t-1, t+1], observed-stable when the
// groups at N-1 and N agree, unstable otherwise.
HomologyTable total_homology(const TotalComplex& tc, unsigned threads = 1);

HomologyTable hochschild(const DGAlgebra& a, int levels, const Window& w, unsigned threads = 1);
HomologyTable cohochschild(const DGCoalgebra& c, int levels, const Window& w, unsigned threads = 1);
HomologyTable tor_one_sided(const DGAlgebra& a, int levels, const Window& w, unsigned threads = 1);

// Tor over an augmented algebra with zero differential, split by
// (homological degree s, internal degree). Valid for s < levels.
std::map<std::pair<int, int>, HomologyGroup> tor_bigraded(const DGAlgebra& a, int levels);

enum class OracleMode {
  kMoore,  // joint kernel of the faces d_0..d_{n-1} inside A^(n+1); equals the normalized answer at every N
  kRaw,    // plain unnormalized complex; agrees with the normalized one only where certified
};

// Brute force from the full A^(x)(n+1). Total basis size per degree is capped
// by HOCH_ORACLE_CAP (default 4096); exceeding it raises InvalidInput.
HomologyTable oracle_unnormalized_bar(const DGAlgebra& a, int levels, const Window& w,
                                      OracleMode mode = OracleMode::kMoore);
std::size_t oracle_cap();

}  // namespace hoch
