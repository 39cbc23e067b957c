#include "surfacecodes/linalg.hpp"

#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace surfacecodes {

Matrix::Matrix(FieldPtr f, size_t rows, size_t cols)
    : f_(std::move(f)), rows_(rows), cols_(cols), a_(rows * cols, 0) {
  if (cols_ == 0) throw std::invalid_argument("matrix needs at least one column");
}

Matrix Matrix::from_rows(FieldPtr f, const std::vector<std::vector<uint16_t>>& rows) {
  if (rows.empty()) throw std::invalid_argument("no rows given");
  Matrix m(std::move(f), rows.size(), rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_)
      throw std::invalid_argument("ragged rows");
    for (size_t j = 0; j < m.cols_; ++j) {
      if (rows[i][j] >= m.f_->order())
        throw std::invalid_argument("element out of field range");
      m.set(i, j, rows[i][j]);
    }
  }
  return m;
}

Matrix Matrix::transpose() const {
  if (rows_ == 0) throw std::invalid_argument("cannot transpose an empty matrix");
  Matrix t(f_, cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) t.set(j, i, at(i, j));
  return t;
}

Matrix Matrix::times(const Matrix& rhs) const {
  if (cols_ != rhs.rows_ || *f_ != *rhs.f_)
    throw std::invalid_argument("shape or field mismatch in matrix product");
  Matrix out(f_, rows_, rhs.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      uint16_t v = at(i, k);
      if (v == 0) continue;
      for (size_t j = 0; j < rhs.cols_; ++j)
        out.set(i, j, f_->add(out.at(i, j), f_->mul(v, rhs.at(k, j))));
    }
  return out;
}

std::vector<uint16_t> Matrix::times(std::span<const uint16_t> v) const {
  if (v.size() != cols_) throw std::invalid_argument("vector length mismatch");
  std::vector<uint16_t> out(rows_, 0);
  for (size_t i = 0; i < rows_; ++i) {
    uint16_t acc = 0;
    for (size_t j = 0; j < cols_; ++j)
      acc = f_->add(acc, f_->mul(at(i, j), v[j]));
    out[i] = acc;
  }
  return out;
}

bool Matrix::is_zero() const noexcept {
  for (uint16_t v : a_)
    if (v) return false;
  return true;
}

bool Matrix::operator==(const Matrix& o) const noexcept {
  return rows_ == o.rows_ && cols_ == o.cols_ && *f_ == *o.f_ && a_ == o.a_;
}

void Matrix::write(std::ostream& os) const {
  os << rows_ << ' ' << cols_ << ' ' << f_->order() << '\n';
  for (size_t i = 0; i < rows_; ++i) {
    for (size_t j = 0; j < cols_; ++j) {
      if (j) os << ' ';
      os << at(i, j);
    }
    os << '\n';
  }
}

Matrix Matrix::read(std::istream& is) {
  size_t rows, cols;
  uint32_t q;
  if (!(is >> rows >> cols >> q))
    throw std::runtime_error("bad matrix header");
  Matrix m(make_field_of_order(q), rows, cols);
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) {
      uint32_t v;
      if (!(is >> v)) throw std::runtime_error("truncated matrix data");
      if (v >= q) throw std::runtime_error("matrix element out of range");
      m.set(i, j, static_cast<uint16_t>(v));
    }
  return m;
}

RrefResult rref_with_column_order(const Matrix& m, const std::vector<size_t>& col_order) {
  if (col_order.size() != m.cols())
    throw std::invalid_argument("column order must cover all columns");
  Matrix r = m;
  const Field& f = r.field();
  const size_t rows = r.rows();
  std::vector<size_t> pivots;
  size_t rank = 0;
  for (size_t c : col_order) {
    if (rank == rows) break;
    size_t pr = rank;
    while (pr < rows && r.at(pr, c) == 0) ++pr;
    if (pr == rows) continue;
    if (pr != rank)
      for (size_t j = 0; j < r.cols(); ++j) {
        uint16_t t = r.at(rank, j);
        r.set(rank, j, r.at(pr, j));
        r.set(pr, j, t);
      }
    uint16_t invp = f.inv(r.at(rank, c));
    if (invp != 1)
      for (size_t j = 0; j < r.cols(); ++j)
        r.set(rank, j, f.mul(invp, r.at(rank, j)));
    for (size_t i = 0; i < rows; ++i) {
      if (i == rank) continue;
      uint16_t v = r.at(i, c);
      if (v == 0) continue;
      uint16_t nv = f.neg(v);
      for (size_t j = 0; j < r.cols(); ++j)
        r.set(i, j, f.add(r.at(i, j), f.mul(nv, r.at(rank, j))));
    }
    pivots.push_back(c);
    ++rank;
  }
  return {std::move(r), rank, std::move(pivots)};
}

RrefResult rref(const Matrix& m) {
  std::vector<size_t> order(m.cols());
  std::iota(order.begin(), order.end(), 0);
  return rref_with_column_order(m, order);
}

Matrix nullspace(const Matrix& m) {
  RrefResult r = rref(m);
  const Field& f = m.field();
  const size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (size_t c : r.pivots) is_pivot[c] = true;
  std::vector<size_t> free_cols;
  for (size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix basis(m.field_ptr(), free_cols.size(), n);
  for (size_t bi = 0; bi < free_cols.size(); ++bi) {
    size_t fc = free_cols[bi];
    basis.set(bi, fc, 1);
    for (size_t pi = 0; pi < r.pivots.size(); ++pi)
      basis.set(bi, r.pivots[pi], f.neg(r.mat.at(pi, fc)));
  }
  return basis;
}

bool row_space_equal(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols() || a.field() != b.field())
    throw std::invalid_argument("shape or field mismatch");
  RrefResult ra = rref(a), rb = rref(b);
  if (ra.rank != rb.rank) return false;
  for (size_t i = 0; i < ra.rank; ++i)
    if (!std::equal(ra.mat.row(i).begin(), ra.mat.row(i).end(),
                    rb.mat.row(i).begin()))
      return false;
  return true;
}

}  // namespace surfacecodes
