#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hoch/bar_cobar.hpp"

namespace hoch {

enum class MapVerdict { kIso, kNotInjective, kNotSurjective };
std::string to_string(MapVerdict v);

struct DegreeVerdict {
  MapVerdict verdict = MapVerdict::kIso;
  std::size_t source_rank = 0, target_rank = 0;
  // Not injective: a nonzero kernel vector. Not surjective: a target vector
  // outside the image.
  std::vector<Scalar> witness;
};

// Iso / not-injective / not-surjective for a single matrix, with witness.
DegreeVerdict classify_map(const Matrix& m);
// Whether m x = y has a solution over the ring.
bool in_image(const Matrix& m, std::span<const Scalar> y);

struct ConditionReport {
  int condition = 1;
  int n = 0;  // tensor power (condition 1)
  Window window;
  std::map<int, DegreeVerdict> degrees;
  bool chain_map = true;
  std::vector<std::string> notes;
  bool ok() const;
  std::string summary() const;
};

// phi : (X^v)^(x)n -> (X^(x)n)^v on bases, a signed permutation for free
// finite data. Degrees reported: w, or the whole support when omitted.
// Windowed inputs declared unbounded are checked on the stored data, with a
// note on how the relevant ranks grow with the window.
ConditionReport condition1_check(const ChainComplex& x, int n, std::optional<Window> w = std::nullopt);
// eta : X -> X^vv, same conventions.
ConditionReport condition2_check(const ChainComplex& x, std::optional<Window> w = std::nullopt);
// The comparison map itself in one degree (rows: (X^(x)n)^v_t).
Matrix condition1_map(const ChainComplex& x, int n, int degree);

struct QuasiProperReport {
  std::string object;
  bool quasi_proper = false;
  std::vector<ConditionReport> reports;
  std::vector<std::string> reasons;  // why not, when not
  std::string summary() const;
};

// Algebras: conditions 1 (n = 0..3) and 2 on A. Coalgebras: condition 1 on
// C^v and condition 2 on C. Windowed data never qualifies.
QuasiProperReport quasi_properness_report(const DGAlgebra& a, std::optional<Window> w = std::nullopt);
QuasiProperReport quasi_properness_report(const DGCoalgebra& c, std::optional<Window> w = std::nullopt);

// Degreewise dual of a homology table: over a field t <- -t; over Z the free
// part comes from -t and the torsion from -t-1.
HomologyTable transport_from_table(const HomologyTable& hh);

struct TransportResult {
  HomologyTable table;
  std::vector<std::string> audit;
  bool forced = false;
};

// coHH(C) as the dual of HH(C^v). Refuses (HypothesisFailure) unless C is
// quasi-proper; with force the refusal and override are recorded in `audit`.
TransportResult duality_transport_cohh(const DGCoalgebra& c, int levels, const Window& w, bool force = false,
                                       unsigned threads = 1);

struct DualityCheck {
  bool ok = true;
  std::map<int, std::pair<std::size_t, std::size_t>> ranks;  // t -> (coHH_t, HH_{-t})
  std::vector<int> mismatched;
};

// rank coHH(C, N)_t == rank HH(C^v, N)_{-t} for t in w. Field coefficients only.
DualityCheck truncated_duality_check(const DGCoalgebra& c, int levels, const Window& w, unsigned threads = 1);

struct TensorRankDemo {
  int m = 0;
  std::size_t rank_h = 0;
  int terms = 0;  // r = m - 1
  std::size_t max_rank_seen = 0;
  bool exhaustive = false;
  std::uint64_t sums_checked = 0;
  bool separated() const { return rank_h == static_cast<std::size_t>(m) && max_rank_seen <= static_cast<std::size_t>(terms); }
};

// The identity pairing on V_m (x) V_m over GF(2) has rank m, while every sum
// of m-1 simple tensors has rank <= m-1. Exhaustive for m <= 4, sampled above.
TensorRankDemo tensor_rank_bound_demo(int m, std::uint64_t samples = 200000, std::uint64_t seed = 7);

}  // namespace hoch
