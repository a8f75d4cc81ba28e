#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hoch/ring.hpp"

namespace hoch {

// Sparse exact matrix over a CoefficientRing.
//
// Row-major storage: each row is a column-sorted list of nonzero entries.
// Zero entries are never stored. Matrices act on column vectors, so the
// differential d_n : C_n -> C_{n-1} has rank(C_{n-1}) rows and rank(C_n)
// columns.
class Matrix {
 public:
  struct Entry {
    std::size_t col;
    Scalar value;
    friend bool operator==(const Entry&, const Entry&) = default;
  };
  using Row = std::vector<Entry>;
  using Dense = std::vector<std::vector<Scalar>>;

  explicit Matrix(CoefficientRing ring, std::size_t rows = 0, std::size_t cols = 0);

  static Matrix identity(CoefficientRing ring, std::size_t n);
  static Matrix from_dense(CoefficientRing ring, const Dense& values);
  // Builds from (row, col, value) triplets; repeated positions are summed.
  struct Triplet {
    std::size_t row, col;
    Scalar value;
  };
  static Matrix from_triplets(CoefficientRing ring, std::size_t rows, std::size_t cols,
                              std::span<const Triplet> triplets);

  const CoefficientRing& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const;
  bool is_zero() const { return nnz() == 0; }

  Scalar at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, Scalar v);
  void add_to(std::size_t r, std::size_t c, Scalar v);
  std::span<const Entry> row(std::size_t r) const { return data_[r]; }

  Matrix transpose() const;
  Matrix scaled(Scalar s) const;
  Matrix operator*(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;
  std::vector<Scalar> apply(std::span<const Scalar> v) const;

  // Submatrix on the given (ordered) row and column index lists.
  Matrix select(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;

  Dense to_dense() const;
  std::string to_string() const;

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  CoefficientRing ring_;
  std::size_t rows_, cols_;
  std::vector<Row> data_;
};

}  // namespace hoch
