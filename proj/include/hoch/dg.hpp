#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hoch/graded.hpp"

namespace hoch {

// Sparse vector over a basis: (index, coefficient), sorted, no zeros.
using Vec = std::vector<std::pair<std::size_t, Scalar>>;
// Sparse element of C (x) C: ((left, right), coefficient), sorted, no zeros.
using Vec2 = std::vector<std::pair<std::pair<std::size_t, std::size_t>, Scalar>>;

// Accumulates into a map then emits a normalized sparse vector.
Vec make_vec(const CoefficientRing& ring, const std::map<std::size_t, Scalar>& acc);
Vec2 make_vec2(const CoefficientRing& ring, const std::map<std::pair<std::size_t, std::size_t>, Scalar>& acc);

// Named, graded basis shared by both structure kinds.
class Basis {
 public:
  Basis() = default;
  Basis(std::vector<std::string> names, std::vector<int> degrees);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  int degree(std::size_t i) const { return degrees_.at(i); }
  // Throws InvalidInput for unknown names.
  std::size_t index(const std::string& name) const;
  bool contains(const std::string& name) const { return lookup_.count(name) > 0; }
  // Position of element i among the basis elements of its degree.
  std::size_t position(std::size_t i) const { return position_.at(i); }
  // Global indices in one degree, ascending.
  const std::vector<std::size_t>& in_degree(int degree) const;
  const std::map<int, std::vector<std::size_t>>& by_degree() const { return by_degree_; }
  GradedModule module(const CoefficientRing& ring) const;

  friend bool operator==(const Basis& a, const Basis& b) { return a.names_ == b.names_ && a.degrees_ == b.degrees_; }

 private:
  std::vector<std::string> names_;
  std::vector<int> degrees_;
  std::map<std::string, std::size_t> lookup_;
  std::vector<std::size_t> position_;
  std::map<int, std::vector<std::size_t>> by_degree_;
};

// Metadata shared by algebras and coalgebras.
struct StructureInfo {
  std::string name;
  // Explicit homology certificates; merged with support bounds for complete data.
  Connectivity certificates;
  DataExtent extent;
};

class DGAlgebra {
 public:
  DGAlgebra(CoefficientRing ring, Basis basis, std::vector<Vec> diff, std::map<std::pair<std::size_t, std::size_t>, Vec> mult,
            std::size_t unit, StructureInfo info = {});

  const CoefficientRing& ring() const { return ring_; }
  const Basis& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }
  std::size_t unit() const { return unit_; }
  const Vec& diff(std::size_t i) const { return diff_.at(i); }
  // Product of two basis elements; empty when not stored.
  const Vec& product(std::size_t a, std::size_t b) const;
  const std::map<std::pair<std::size_t, std::size_t>, Vec>& mult() const { return mult_; }
  const StructureInfo& info() const { return info_; }
  const std::string& name() const { return info_.name; }

  // Underlying complex, with certificates (explicit or from the support).
  ChainComplex complex() const;
  Connectivity connectivity() const;
  // mu restricted to C_i (x) C_j -> C_{i+j}; columns in tensor order a*rank_j + b.
  Matrix mult_matrix(int i, int j) const;

  DGAlgebra renamed(std::string name) const;
  friend bool operator==(const DGAlgebra& a, const DGAlgebra& b);

 private:
  CoefficientRing ring_;
  Basis basis_;
  std::vector<Vec> diff_;
  std::map<std::pair<std::size_t, std::size_t>, Vec> mult_;
  std::size_t unit_;
  StructureInfo info_;
};

class DGCoalgebra {
 public:
  DGCoalgebra(CoefficientRing ring, Basis basis, std::vector<Vec> diff, std::vector<Vec2> comult, Vec counit,
              StructureInfo info = {});

  const CoefficientRing& ring() const { return ring_; }
  const Basis& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }
  const Vec& diff(std::size_t i) const { return diff_.at(i); }
  const Vec2& coproduct(std::size_t i) const { return comult_.at(i); }
  const Vec& counit() const { return counit_; }
  Scalar counit_at(std::size_t i) const;
  // The basis element u with eps = u^*, if the counit is a coordinate functional.
  std::optional<std::size_t> designated_counit() const;
  const StructureInfo& info() const { return info_; }
  const std::string& name() const { return info_.name; }

  ChainComplex complex() const;
  Connectivity connectivity() const;
  // Delta restricted to C_n -> (+)_{i+j=n} C_i (x) C_j, rows in tensor order.
  Matrix comult_matrix(int n) const;

  DGCoalgebra renamed(std::string name) const;
  friend bool operator==(const DGCoalgebra& a, const DGCoalgebra& b);

 private:
  CoefficientRing ring_;
  Basis basis_;
  std::vector<Vec> diff_;
  std::vector<Vec2> comult_;
  Vec counit_;
  StructureInfo info_;
};

struct AxiomViolation {
  std::string axiom;   // grading, differential, unit, counit, associativity, ...
  std::string detail;  // names the offending basis elements
};

struct AxiomReport {
  std::vector<AxiomViolation> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

// Checks relations whose output degree lies in w (all relations when w is omitted).
AxiomReport check_algebra_axioms(const DGAlgebra& a, std::optional<Window> w = std::nullopt);
AxiomReport check_coalgebra_axioms(const DGCoalgebra& c, std::optional<Window> w = std::nullopt);
// Throws AxiomFailure carrying the report summary.
void require_axioms(const DGAlgebra& a);
void require_axioms(const DGCoalgebra& c);

// Linear duals. Require finite data and a (co)connectivity certificate.
DGCoalgebra dualize_algebra(const DGAlgebra& a, std::optional<Window> w = std::nullopt);
DGAlgebra dualize_coalgebra(const DGCoalgebra& c, std::optional<Window> w = std::nullopt);

// New basis given by the columns of P (degree preserving, invertible,
// P_inv its inverse). For algebras P must fix the unit.
DGAlgebra change_basis(const DGAlgebra& a, const Matrix& P, const Matrix& P_inv);
DGCoalgebra change_basis(const DGCoalgebra& c, const Matrix& P, const Matrix& P_inv);
// Isomorphic coalgebra whose counit is the coordinate functional of a
// degree-0 basis element. Throws when no counit coefficient is a unit.
DGCoalgebra normalize_counit(const DGCoalgebra& c);

// The double-dual identification, (-1)^i on degree i; rebases a round-tripped
// structure so it can be compared entrywise with the original.
DGAlgebra transport_along_eta(const DGAlgebra& a);
DGCoalgebra transport_along_eta(const DGCoalgebra& c);

struct DoubleDualReport {
  std::map<int, bool> iso_by_degree;
  bool chain_map = true;
  bool all_iso() const;
};

// eta : X -> X^vv on the basis, checked degree by degree within w.
DoubleDualReport double_dual_unit(const ChainComplex& x, const Window& w);
// eta as a matrix in degree i (rows: X^vv_i, columns: X_i).
Matrix eta_matrix(const ChainComplex& x, int degree);

struct DualizabilityVerdict {
  bool dualizable = false;
  std::string reason;
};

// Finitely generated homology in finitely many degrees. Throws InvalidInput
// for windowed data with no statement about the modeled object.
DualizabilityVerdict is_dualizable(const ChainComplex& x);

}  // namespace hoch
