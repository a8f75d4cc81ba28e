#include "hoch/linalg.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include <gmpxx.h>

#include "hoch/errors.hpp"

namespace hoch {

std::string HomologyGroup::to_string(const CoefficientRing& ring) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  const char* base = ring.is_field() ? "F" : "Z";
  bool first = true;
  if (free_rank > 0) {
    os << base;
    if (free_rank > 1) os << "^" << free_rank;
    first = false;
  }
  for (Scalar t : torsion) {
    os << (first ? "" : " + ") << "Z/" << t;
    first = false;
  }
  return os.str();
}

namespace {

using SparseRow = std::vector<Matrix::Entry>;

// row -= factor * other, both sorted by column.
SparseRow axpy(const CoefficientRing& ring, const SparseRow& row, Scalar factor, const SparseRow& other) {
  SparseRow out;
  out.reserve(row.size() + other.size());
  std::size_t i = 0, j = 0;
  while (i < row.size() || j < other.size()) {
    if (j == other.size() || (i < row.size() && row[i].col < other[j].col)) {
      out.push_back(row[i++]);
    } else if (i == row.size() || other[j].col < row[i].col) {
      Scalar v = ring.neg(ring.mul(factor, other[j].value));
      if (v != 0) out.push_back({other[j].col, v});
      ++j;
    } else {
      Scalar v = ring.sub(row[i].value, ring.mul(factor, other[j].value));
      if (v != 0) out.push_back({row[i].col, v});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

std::size_t rank_field(const Matrix& m) {
  const CoefficientRing& ring = m.ring();
  if (!ring.is_field()) throw InvalidInput("rank_field: ring is not a prime field");
  // Echelon rows indexed by pivot column; each stored row has leading entry 1.
  std::vector<std::optional<SparseRow>> pivots(m.cols());
  std::size_t r = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto span = m.row(i);
    SparseRow row(span.begin(), span.end());
    while (!row.empty()) {
      std::size_t c = row.front().col;
      if (!pivots[c]) {
        Scalar inv = ring.inv(row.front().value);
        for (auto& e : row) e.value = ring.mul(e.value, inv);
        pivots[c] = std::move(row);
        ++r;
        break;
      }
      row = axpy(ring, row, row.front().value, *pivots[c]);
    }
  }
  return r;
}

namespace {

// Element arithmetic for the dense Smith worker. Over GF(p) entries stay
// int64; over Z they are GMP integers so intermediate growth cannot wrap.
struct FieldOps {
  using T = Scalar;
  CoefficientRing ring;
  T from(Scalar x) const { return x; }
  Scalar to(const T& x) const { return x; }
  bool zero(const T& x) const { return x == 0; }
  bool is_one(const T& x) const { return x == 1; }
  T sub_mul(const T& a, const T& q, const T& b) const { return ring.sub(a, ring.mul(q, b)); }
  T mul(const T& a, const T& b) const { return ring.mul(a, b); }
  T neg(const T& a) const { return ring.neg(a); }
  T quotient(const T& a, const T& b) const { return ring.mul(a, ring.inv(b)); }
  // Field pivots: first nonzero wins.
  bool better(const T&, const T&) const { return false; }
  bool divides(const T&, const T&) const { return true; }
  // Factor that normalizes a pivot (1 over a field).
  T normalizer(const T& p) const { return ring.inv(p); }
};

struct IntegerOps {
  using T = mpz_class;
  T from(Scalar x) const { return T(static_cast<long>(x)); }
  Scalar to(const T& x) const {
    if (!x.fits_slong_p()) throw OverflowError("smith normal form: entry exceeds the int64 range");
    return x.get_si();
  }
  bool zero(const T& x) const { return sgn(x) == 0; }
  bool is_one(const T& x) const { return abs(x) == 1; }
  T sub_mul(const T& a, const T& q, const T& b) const { return a - q * b; }
  T mul(const T& a, const T& b) const { return a * b; }
  T neg(const T& a) const { return -a; }
  T quotient(const T& a, const T& b) const { return a / b; }  // truncating
  bool better(const T& cand, const T& best) const { return mpz_cmpabs(cand.get_mpz_t(), best.get_mpz_t()) < 0; }
  bool divides(const T& d, const T& x) const { return mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) != 0; }
  T normalizer(const T& p) const { return sgn(p) < 0 ? T(-1) : T(1); }
};

template <class Ops>
class SmithWorker {
  using T = typename Ops::T;
  using DenseT = std::vector<std::vector<T>>;

 public:
  SmithWorker(const Matrix& m, Ops ops, bool transforms)
      : ops_(std::move(ops)), ring_(m.ring()), rows_(m.rows()), cols_(m.cols()), track_(transforms) {
    a_.assign(rows_, std::vector<T>(cols_, ops_.from(0)));
    for (std::size_t r = 0; r < rows_; ++r)
      for (const auto& e : m.row(r)) a_[r][e.col] = ops_.from(e.value);
    if (track_) {
      u_ = identity(rows_);
      v_ = identity(cols_);
      vinv_ = v_;
    }
  }

  SmithDecomposition run() {
    std::vector<Scalar> diag;
    std::size_t t = 0;
    while (t < rows_ && t < cols_) {
      if (!move_pivot(t)) break;
      reduce_cross(t);
      diag.push_back(ops_.to(a_[t][t]));
      ++t;
    }
    SmithDecomposition out{std::move(diag), Matrix(ring_), Matrix(ring_), Matrix(ring_)};
    if (track_) {
      out.U = export_matrix(u_, rows_);
      out.V = export_matrix(v_, cols_);
      out.V_inv = export_matrix(vinv_, cols_);
    }
    return out;
  }

 private:
  DenseT identity(std::size_t n) const {
    DenseT d(n, std::vector<T>(n, ops_.from(0)));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = ops_.from(1);
    return d;
  }

  Matrix export_matrix(const DenseT& d, std::size_t n) const {
    Matrix m(ring_, n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (!ops_.zero(d[r][c])) m.set(r, c, ops_.to(d[r][c]));
    return m;
  }

  // Moves the pivot for step t to (t, t): smallest magnitude over Z, first
  // nonzero in column-major order over a field.
  bool move_pivot(std::size_t t) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t c = t; c < cols_ && !(best && ops_.is_one(a_[best->first][best->second])); ++c)
      for (std::size_t r = t; r < rows_; ++r) {
        if (ops_.zero(a_[r][c])) continue;
        if (!best || ops_.better(a_[r][c], a_[best->first][best->second])) {
          best = {r, c};
          if (ops_.is_one(a_[r][c]) || ring_.is_field()) break;
        }
      }
    if (!best) return false;
    swap_rows(t, best->first);
    swap_cols(t, best->second);
    return true;
  }

  void reduce_cross(std::size_t t) {
    for (;;) {
      bool dirty = false;
      for (std::size_t r = t + 1; r < rows_; ++r) {
        if (ops_.zero(a_[r][t])) continue;
        row_axpy(r, t, ops_.quotient(a_[r][t], a_[t][t]));
        if (!ops_.zero(a_[r][t])) {
          swap_rows(t, r);
          dirty = true;
        }
      }
      // Column ops only touch row t once column t is clean below the pivot.
      if (dirty) continue;
      for (std::size_t c = t + 1; c < cols_; ++c) {
        if (ops_.zero(a_[t][c])) continue;
        col_axpy(c, t, ops_.quotient(a_[t][c], a_[t][t]));
        if (!ops_.zero(a_[t][c])) {
          swap_cols(t, c);
          dirty = true;
        }
      }
      if (dirty) continue;
      // Divisibility: fold a row holding a non-multiple into row t.
      std::optional<std::size_t> bad;
      for (std::size_t r = t + 1; r < rows_ && !bad; ++r)
        for (std::size_t c = t + 1; c < cols_; ++c)
          if (!ops_.divides(a_[t][t], a_[r][c])) {
            bad = r;
            break;
          }
      if (!bad) break;
      row_axpy(t, *bad, ops_.from(-1));
    }
    T s = ops_.normalizer(a_[t][t]);
    if (!(s == ops_.from(1))) row_scale(t, s);
  }

  void axpy(std::vector<T>& dst, const std::vector<T>& src, const T& q) {
    for (std::size_t k = 0; k < dst.size(); ++k)
      if (!ops_.zero(src[k])) dst[k] = ops_.sub_mul(dst[k], q, src[k]);
  }

  // row_r -= q * row_s
  void row_axpy(std::size_t r, std::size_t s, const T& q) {
    axpy(a_[r], a_[s], q);
    if (track_) axpy(u_[r], u_[s], q);
  }

  // col_c -= q * col_s; V takes the same column op, V_inv the inverse row op.
  void col_axpy(std::size_t c, std::size_t s, const T& q) {
    for (std::size_t r = 0; r < rows_; ++r)
      if (!ops_.zero(a_[r][s])) a_[r][c] = ops_.sub_mul(a_[r][c], q, a_[r][s]);
    if (track_) {
      for (std::size_t r = 0; r < cols_; ++r)
        if (!ops_.zero(v_[r][s])) v_[r][c] = ops_.sub_mul(v_[r][c], q, v_[r][s]);
      axpy(vinv_[s], vinv_[c], ops_.neg(q));
    }
  }

  void row_scale(std::size_t r, const T& s) {
    for (auto& x : a_[r]) x = ops_.mul(x, s);
    if (track_)
      for (auto& x : u_[r]) x = ops_.mul(x, s);
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    std::swap(a_[i], a_[j]);
    if (track_) std::swap(u_[i], u_[j]);
  }

  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (auto& row : a_) std::swap(row[i], row[j]);
    if (track_) {
      for (auto& row : v_) std::swap(row[i], row[j]);
      std::swap(vinv_[i], vinv_[j]);
    }
  }

  Ops ops_;
  CoefficientRing ring_;
  std::size_t rows_, cols_;
  bool track_;
  DenseT a_, u_, v_, vinv_;
};

SmithDecomposition run_smith(const Matrix& m, bool transforms) {
  if (m.ring().is_field()) return SmithWorker<FieldOps>(m, FieldOps{m.ring()}, transforms).run();
  return SmithWorker<IntegerOps>(m, IntegerOps{}, transforms).run();
}

}  // namespace

SmithDecomposition smith_decompose(const Matrix& m) { return run_smith(m, true); }

std::vector<Scalar> smith_normal_form(const Matrix& m) {
  if (m.ring().is_field()) throw InvalidInput("smith_normal_form: ring is not the integers");
  return run_smith(m, false).diagonal;
}

std::size_t rank(const Matrix& m) {
  if (m.ring().is_field()) return rank_field(m);
  return run_smith(m, false).diagonal.size();
}

Matrix kernel_basis(const Matrix& m) {
  SmithDecomposition s = smith_decompose(m);
  std::vector<std::size_t> rows(m.cols()), cols;
  for (std::size_t i = 0; i < m.cols(); ++i) rows[i] = i;
  for (std::size_t j = s.rank(); j < m.cols(); ++j) cols.push_back(j);
  return s.V.select(rows, cols);
}

HomologyGroup homology_group(const Matrix& d_in, const Matrix& d_out, const CoefficientRing& ring) {
  if (d_in.ring() != ring || d_out.ring() != ring) throw InvalidInput("homology_group: ring mismatch");
  if (d_in.rows() != d_out.cols())
    throw InvalidInput("homology_group: d_in has " + std::to_string(d_in.rows()) + " rows but d_out has " +
                       std::to_string(d_out.cols()) + " columns");
  if (!(d_out * d_in).is_zero()) throw AxiomFailure("homology_group: d_out * d_in != 0");
  HomologyGroup h;
  std::size_t n = d_out.cols();
  std::size_t r_out = rank(d_out);
  if (ring.is_field()) {
    h.free_rank = n - r_out - rank_field(d_in);
    return h;
  }
  // ker(d_out) is saturated, so the torsion of ker/im equals that of C/im.
  std::vector<Scalar> factors = smith_normal_form(d_in);
  h.free_rank = n - r_out - factors.size();
  for (Scalar f : factors)
    if (f > 1) h.torsion.push_back(f);
  return h;
}

}  // namespace hoch
