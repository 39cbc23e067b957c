#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "surfacecodes/gf.hpp"

namespace surfacecodes {

// Dense row-major matrix over a fixed GF(q). Rows may be zero (nullspace
// bases and duals of full codes are legitimately empty), columns may not.
class Matrix {
 public:
  Matrix(FieldPtr f, size_t rows, size_t cols);
  static Matrix from_rows(FieldPtr f,
                          const std::vector<std::vector<uint16_t>>& rows);

  size_t rows() const noexcept { return rows_; }
  size_t cols() const noexcept { return cols_; }
  const Field& field() const noexcept { return *f_; }
  FieldPtr field_ptr() const noexcept { return f_; }

  uint16_t at(size_t i, size_t j) const { return a_[i * cols_ + j]; }
  void set(size_t i, size_t j, uint16_t v) { a_[i * cols_ + j] = v; }
  std::span<const uint16_t> row(size_t i) const {
    return {a_.data() + i * cols_, cols_};
  }
  std::span<uint16_t> row(size_t i) { return {a_.data() + i * cols_, cols_}; }

  Matrix transpose() const;
  Matrix times(const Matrix& rhs) const;
  std::vector<uint16_t> times(std::span<const uint16_t> v) const;  // M * v^T
  bool is_zero() const noexcept;
  bool operator==(const Matrix& o) const noexcept;

  // Header "rows cols q", then one row of decimal elements per line. Reading
  // rebuilds the field of order q with the default modulus.
  void write(std::ostream& os) const;
  static Matrix read(std::istream& is);

 private:
  FieldPtr f_;
  size_t rows_, cols_;
  std::vector<uint16_t> a_;
};

struct RrefResult {
  Matrix mat;
  size_t rank;
  std::vector<size_t> pivots;
};

// Reduced row echelon form with deterministic leftmost-column, first-nonzero
// pivoting. Canonical: row-equivalent inputs yield identical output.
RrefResult rref(const Matrix& m);

// Like rref but pivoting scans columns in the given order. Pivot columns are
// reported as original indices; the returned matrix keeps original column
// positions. Used to build disjoint information sets.
RrefResult rref_with_column_order(const Matrix& m,
                                  const std::vector<size_t>& col_order);

// Basis of {x : M x^T = 0} as rows, (cols - rank) of them, one per free
// column in ascending column order.
Matrix nullspace(const Matrix& m);

bool row_space_equal(const Matrix& a, const Matrix& b);

}  // namespace surfacecodes
