#include "hoch/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "hoch/errors.hpp"

namespace hoch {

Matrix::Matrix(CoefficientRing ring, std::size_t rows, std::size_t cols)
    : ring_(ring), rows_(rows), cols_(cols), data_(rows) {}

Matrix Matrix::identity(CoefficientRing ring, std::size_t n) {
  Matrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i].push_back({i, 1});
  return m;
}

Matrix Matrix::from_dense(CoefficientRing ring, const Dense& values) {
  std::size_t rows = values.size();
  std::size_t cols = rows ? values[0].size() : 0;
  Matrix m(ring, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (values[r].size() != cols) throw InvalidInput("matrix: ragged dense input");
    for (std::size_t c = 0; c < cols; ++c) {
      Scalar v = ring.normalize(values[r][c]);
      if (v != 0) m.data_[r].push_back({c, v});
    }
  }
  return m;
}

Matrix Matrix::from_triplets(CoefficientRing ring, std::size_t rows, std::size_t cols,
                             std::span<const Triplet> triplets) {
  std::vector<Triplet> sorted(triplets.begin(), triplets.end());
  std::sort(sorted.begin(), sorted.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  Matrix m(ring, rows, cols);
  for (const auto& t : sorted) {
    if (t.row >= rows || t.col >= cols) throw InvalidInput("matrix: triplet index out of range");
    Row& row = m.data_[t.row];
    if (!row.empty() && row.back().col == t.col) {
      row.back().value = ring.add(row.back().value, t.value);
    } else {
      row.push_back({t.col, ring.normalize(t.value)});
    }
  }
  for (auto& row : m.data_)
    std::erase_if(row, [](const Entry& e) { return e.value == 0; });
  return m;
}

std::size_t Matrix::nnz() const {
  std::size_t n = 0;
  for (const auto& row : data_) n += row.size();
  return n;
}

Scalar Matrix::at(std::size_t r, std::size_t c) const {
  const Row& row = data_.at(r);
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const Entry& e, std::size_t col) { return e.col < col; });
  return (it != row.end() && it->col == c) ? it->value : 0;
}

void Matrix::set(std::size_t r, std::size_t c, Scalar v) {
  if (r >= rows_ || c >= cols_) throw InvalidInput("matrix: index out of range");
  v = ring_.normalize(v);
  Row& row = data_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const Entry& e, std::size_t col) { return e.col < col; });
  if (it != row.end() && it->col == c) {
    if (v == 0)
      row.erase(it);
    else
      it->value = v;
  } else if (v != 0) {
    row.insert(it, {c, v});
  }
}

void Matrix::add_to(std::size_t r, std::size_t c, Scalar v) { set(r, c, ring_.add(at(r, c), v)); }

Matrix Matrix::transpose() const {
  Matrix t(ring_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& e : data_[r]) t.data_[e.col].push_back({r, e.value});
  return t;
}

Matrix Matrix::scaled(Scalar s) const {
  Matrix m(ring_, rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& e : data_[r]) {
      Scalar v = ring_.mul(e.value, s);
      if (v != 0) m.data_[r].push_back({e.col, v});
    }
  return m;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw InvalidInput("matrix: product shape mismatch");
  Matrix m(ring_, rows_, rhs.cols_);
  std::vector<Scalar> acc(rhs.cols_, 0);
  std::vector<std::size_t> touched;
  std::vector<char> mark(rhs.cols_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    touched.clear();
    for (const auto& e : data_[r])
      for (const auto& f : rhs.data_[e.col]) {
        if (!mark[f.col]) {
          mark[f.col] = 1;
          touched.push_back(f.col);
        }
        acc[f.col] = ring_.add(acc[f.col], ring_.mul(e.value, f.value));
      }
    std::sort(touched.begin(), touched.end());
    for (std::size_t c : touched) {
      if (acc[c] != 0) m.data_[r].push_back({c, acc[c]});
      acc[c] = 0;
      mark[c] = 0;
    }
  }
  return m;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw InvalidInput("matrix: sum shape mismatch");
  Matrix m = *this;
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& e : rhs.data_[r]) m.add_to(r, e.col, e.value);
  return m;
}

std::vector<Scalar> Matrix::apply(std::span<const Scalar> v) const {
  if (v.size() != cols_) throw InvalidInput("matrix: vector length mismatch");
  std::vector<Scalar> out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& e : data_[r]) out[r] = ring_.add(out[r], ring_.mul(e.value, v[e.col]));
  return out;
}

Matrix Matrix::select(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
  std::vector<std::size_t> col_map(cols_, SIZE_MAX);
  for (std::size_t j = 0; j < cols.size(); ++j) col_map.at(cols[j]) = j;
  Matrix m(ring_, rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const auto& e : data_.at(rows[i]))
      if (col_map[e.col] != SIZE_MAX) m.data_[i].push_back({col_map[e.col], e.value});
    std::sort(m.data_[i].begin(), m.data_[i].end(),
              [](const Entry& a, const Entry& b) { return a.col < b.col; });
  }
  return m;
}

Matrix::Dense Matrix::to_dense() const {
  Dense d(rows_, std::vector<Scalar>(cols_, 0));
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& e : data_[r]) d[r][e.col] = e.value;
  return d;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? "; " : "");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << at(r, c);
  }
  os << "]";
  return os.str();
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.ring_ == b.ring_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

}  // namespace hoch
