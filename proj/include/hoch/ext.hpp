#pragma once

#include <map>
#include <string>
#include <vector>

#include "hoch/dg.hpp"

namespace hoch {

// Left module over an algebra with zero differential: graded basis plus the
// action of non-unit basis elements (the unit acts as the identity).
struct ModuleOver {
  std::vector<std::string> names;
  std::vector<int> degrees;
  std::map<std::pair<std::size_t, std::size_t>, Vec> action;  // (a, m) -> a.m
};

// The ground ring in a single degree, augmentation ideal acting by zero.
ModuleOver trivial_module(int degree, std::string name = "k");
ModuleOver direct_sum(const ModuleOver& a, const ModuleOver& b);

// Complex of rank-one free modules P_s = A.g_s with |g_s| = shifts[s] and
// d(g_s) = sum c * a.g_{s-1} given by boundary[s] (boundary[0] is ignored).
struct FreeResolution {
  DGAlgebra algebra;
  std::vector<int> shifts;
  std::vector<Vec> boundary;
};

// ... -> P_2 -> P_1 -> P_0 -> k over Lambda(z), d(g_s) = z.g_{s-1}, |g_s| = s|z|.
FreeResolution periodic_resolution(const DGAlgebra& exterior, int length);

// Checks degrees and d*d = 0; throws InvalidInput naming the bad stage.
void check_resolution(const FreeResolution& res);
// Exactness of the augmented complex ... -> P_1 -> P_0 -> k in resolution
// degrees 0..length-2 and internal degrees w.
bool resolves_ground_ring(const FreeResolution& res, const Window& w);

struct ExtTable {
  CoefficientRing ring;
  // (s, j): Hom of internal degree j from P_s, and Ext^{s,j}. s < length - 1 only.
  std::map<std::pair<int, int>, std::size_t> hom_rank;
  std::map<std::pair<int, int>, HomologyGroup> ext;
  explicit ExtTable(CoefficientRing r) : ring(r) {}
};

ExtTable ext_from_resolution(const FreeResolution& res, const ModuleOver& target, int smax, const Window& w);

struct ObstructionGroup {
  int s = 0;
  std::size_t hom_rank = 0;  // degree-0 maps P_{s+2} -> Omega^s (k + Omega k)
  HomologyGroup ext;         // Ext^{s+2, 0} into the same target
};

// Groups containing the obstructions to formality of Lambda(z), |z| = e < 0,
// for s = 1..smax.
std::vector<ObstructionGroup> formality_obstructions(const DGAlgebra& exterior, int smax);

}  // namespace hoch
