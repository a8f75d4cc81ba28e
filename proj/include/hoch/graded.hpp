#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hoch/linalg.hpp"

namespace hoch {

struct Window {
  int lo = 0, hi = 0;

  Window() = default;
  Window(int lo_, int hi_);
  bool contains(int t) const { return lo <= t && t <= hi; }
  Window reflected() const { return Window(-hi, -lo); }
  // Parses "lo:hi".
  static Window parse(const std::string& text);
  std::string to_string() const;
  friend bool operator==(const Window&, const Window&) = default;
};

// Ranks per degree, finitely supported, with optional basis labels.
class GradedModule {
 public:
  explicit GradedModule(CoefficientRing ring) : ring_(ring) {}
  GradedModule(CoefficientRing ring, const std::map<int, std::size_t>& ranks);

  const CoefficientRing& ring() const { return ring_; }
  std::size_t rank(int degree) const;
  const std::map<int, std::size_t>& ranks() const { return ranks_; }
  bool is_zero() const { return ranks_.empty(); }
  // Support bounds; nullopt for the zero module.
  std::optional<int> min_degree() const;
  std::optional<int> max_degree() const;
  std::size_t total_rank() const;

  void set_labels(int degree, std::vector<std::string> names);
  // Basis names in a degree, or generated "e<deg>_<i>" names when unlabeled.
  std::vector<std::string> labels(int degree) const;
  bool has_labels(int degree) const { return labels_.count(degree) > 0; }

  friend bool operator==(const GradedModule&, const GradedModule&) = default;

 private:
  CoefficientRing ring_;
  std::map<int, std::size_t> ranks_;
  std::map<int, std::vector<std::string>> labels_;
};

// Homology-level (co)connectivity certificates: H_i = 0 for i < connective
// and for i > coconnective.
struct Connectivity {
  std::optional<int> connective;
  std::optional<int> coconnective;
  friend bool operator==(const Connectivity&, const Connectivity&) = default;
};

enum class BoundOp { kDual, kTensor };

struct BoundsQuery {
  BoundOp op = BoundOp::kDual;
  Connectivity first;
  Connectivity second;  // tensor only
  int global_dimension = 0;
};

// Bounds for duals and tensor products. Throws InvalidInput when the inputs
// carry no certificate the rule could use.
Connectivity predict_bounds(const BoundsQuery& query);

enum class Stability { kExact, kCertified, kObservedStable, kUnstable, kWindowEdge };
std::string to_string(Stability s);

struct HomologyEntry {
  int degree = 0;
  HomologyGroup group;
  Stability stability = Stability::kExact;
  // Certificate inequality, growth note or edge explanation.
  std::string annotation;
  // Group at truncation levels 0..N (bar/cobar results only).
  std::vector<HomologyGroup> growth;
};

struct HomologyTable {
  CoefficientRing ring;
  std::vector<HomologyEntry> entries;  // ascending degree

  explicit HomologyTable(CoefficientRing r) : ring(r) {}
  const HomologyEntry* find(int degree) const;
  const HomologyEntry& at(int degree) const;
};

// Where the complex's data comes from. A complete complex carries all of
// its (finite) support; otherwise only degrees inside `known` are real data.
struct DataExtent {
  std::optional<Window> known;
  // The object being modeled is infinite; the stored data is a window of it.
  bool declared_unbounded = false;
  friend bool operator==(const DataExtent&, const DataExtent&) = default;
};

class ChainComplex {
 public:
  explicit ChainComplex(CoefficientRing ring) : module_(ring) {}
  // differentials[n] : C_n -> C_{n-1}; missing entries are zero. Shapes and
  // d*d = 0 are checked.
  ChainComplex(GradedModule module, std::map<int, Matrix> differentials, Connectivity connectivity = {},
               DataExtent extent = {});

  const CoefficientRing& ring() const { return module_.ring(); }
  const GradedModule& module() const { return module_; }
  std::size_t rank(int degree) const { return module_.rank(degree); }
  // d_n : C_n -> C_{n-1}, a zero matrix when not stored.
  Matrix d(int n) const;
  const std::map<int, Matrix>& differentials() const { return d_; }
  const Connectivity& connectivity() const { return conn_; }
  const DataExtent& extent() const { return extent_; }
  bool is_complete() const { return !extent_.known.has_value(); }
  // Degrees holding real data: the known window, or the support hull.
  std::optional<Window> data_window() const;

  ChainComplex with_connectivity(Connectivity c) const;
  ChainComplex with_extent(DataExtent e) const;

  // Homology in every degree of w. Degrees outside the data raise
  // InsufficientData; degrees whose neighbours are unknown are flagged.
  HomologyTable homology(const Window& w, unsigned threads = 1) const;
  HomologyGroup homology_at(int degree) const;

  friend bool operator==(const ChainComplex&, const ChainComplex&) = default;

 private:
  void check_certificates() const;

  GradedModule module_;
  std::map<int, Matrix> d_;
  Connectivity conn_;
  DataExtent extent_;
};

// Offset of the block C_i (x) D_{n-i} inside (C (x) D)_n, blocks ordered by i ascending.
std::map<int, std::size_t> tensor_block_offsets(const GradedModule& c, const GradedModule& d, int n);

// (C (x) D) restricted to w, with d(a(x)b) = da(x)b + (-1)^|a| a(x)db.
ChainComplex tensor(const ChainComplex& c, const ChainComplex& d, const Window& w);
// Full tensor product of complexes with finite data.
ChainComplex tensor(const ChainComplex& c, const ChainComplex& d);
// n-fold tensor power (n = 0 gives the unit complex).
ChainComplex tensor_power(const ChainComplex& c, int n);
ChainComplex unit_complex(CoefficientRing ring);

// (C^v)_i = (C_{-i})^v with (d^v f)(x) = (-1)^{|f|+1} f(dx), restricted to w.
ChainComplex dual(const ChainComplex& c, const Window& w);
ChainComplex dual(const ChainComplex& c);

// Degrees shifted up by k; differential multiplied by (-1)^k.
ChainComplex shift(const ChainComplex& c, int k);

// Good truncation tau_{<=n}: homology kept in degrees <= n, zero above.
ChainComplex truncate_coconnective(const ChainComplex& c, int n);
// Good truncation tau_{>=n}: homology kept in degrees >= n, zero below.
ChainComplex truncate_connective(const ChainComplex& c, int n);

}  // namespace hoch
