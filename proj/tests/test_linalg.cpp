#include <doctest.h>

#include <random>
#include <sstream>

#include "surfacecodes/linalg.hpp"

using namespace surfacecodes;

namespace {

Matrix random_matrix(FieldPtr f, size_t rows, size_t cols, std::mt19937_64& rng) {
  Matrix m(f, rows, cols);
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j)
      m.set(i, j, static_cast<uint16_t>(rng() % f->order()));
  return m;
}

// independent rank oracle: largest r admitting an r x r submatrix with
// nonzero determinant, determinant by Laplace expansion
uint16_t det_laplace(const Matrix& m, const std::vector<size_t>& rows,
                     const std::vector<size_t>& cols) {
  const Field& f = m.field();
  if (rows.size() == 1) return m.at(rows[0], cols[0]);
  uint16_t acc = 0;
  std::vector<size_t> sub_rows(rows.begin() + 1, rows.end());
  for (size_t j = 0; j < cols.size(); ++j) {
    uint16_t a = m.at(rows[0], cols[j]);
    if (a == 0) continue;
    std::vector<size_t> sub_cols;
    for (size_t t = 0; t < cols.size(); ++t)
      if (t != j) sub_cols.push_back(cols[t]);
    uint16_t minor = det_laplace(m, sub_rows, sub_cols);
    uint16_t term = f.mul(a, minor);
    if (j % 2 == 1) term = f.neg(term);
    acc = f.add(acc, term);
  }
  return acc;
}

bool has_nonsingular_submatrix(const Matrix& m, size_t r) {
  std::vector<size_t> rows(r), cols(r);
  std::vector<size_t> ri(r), ci(r);
  auto next_subset = [](std::vector<size_t>& s, size_t n) {
    size_t k = s.size();
    size_t i = k;
    while (i-- > 0) {
      if (s[i] + (k - i) <= n) {
        ++s[i];
        for (size_t j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  for (size_t i = 0; i < r; ++i) ri[i] = i + 1;
  do {
    for (size_t i = 0; i < r; ++i) ci[i] = i + 1;
    do {
      for (size_t i = 0; i < r; ++i) {
        rows[i] = ri[i] - 1;
        cols[i] = ci[i] - 1;
      }
      if (det_laplace(m, rows, cols) != 0) return true;
    } while (next_subset(ci, m.cols()));
  } while (next_subset(ri, m.rows()));
  return false;
}

size_t rank_oracle(const Matrix& m) {
  size_t r = std::min(m.rows(), m.cols());
  while (r > 0 && !has_nonsingular_submatrix(m, r)) --r;
  return r;
}

}  // namespace

TEST_CASE("rref of the identity and of the zero matrix") {
  FieldPtr f = make_field(2, 2);
  Matrix id(f, 3, 3);
  for (size_t i = 0; i < 3; ++i) id.set(i, i, 1);
  RrefResult r = rref(id);
  CHECK(r.rank == 3);
  CHECK(r.mat == id);
  Matrix z(f, 2, 4);
  RrefResult rz = rref(z);
  CHECK(rz.rank == 0);
  CHECK(rz.mat == z);
}

TEST_CASE("rref rank agrees with the minor-expansion oracle") {
  FieldPtr f = make_field(2, 3);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 4; ++trial) {
    Matrix m = random_matrix(f, 6, 10, rng);
    CHECK(rref(m).rank == rank_oracle(m));
  }
  FieldPtr f9 = make_field(3, 2);
  for (int trial = 0; trial < 3; ++trial) {
    Matrix m = random_matrix(f9, 5, 7, rng);
    CHECK(rref(m).rank == rank_oracle(m));
  }
}

TEST_CASE("rref is idempotent and canonical under row operations") {
  FieldPtr f = make_field(2, 2);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix m = random_matrix(f, 4, 8, rng);
    RrefResult r1 = rref(m);
    CHECK(rref(r1.mat).mat == r1.mat);
    Matrix mixed = m;
    for (int step = 0; step < 8; ++step) {
      size_t i = rng() % 4, j = rng() % 4;
      uint16_t c = static_cast<uint16_t>(1 + rng() % 3);
      if (i == j) continue;
      for (size_t col = 0; col < 8; ++col)
        mixed.set(i, col, f->add(mixed.at(i, col), f->mul(c, mixed.at(j, col))));
    }
    CHECK(rref(mixed).mat == r1.mat);
  }
}

TEST_CASE("rank of the transpose matches") {
  FieldPtr f = make_field(5, 1);
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix m = random_matrix(f, 5, 9, rng);
    CHECK(rref(m).rank == rref(m.transpose()).rank);
  }
}

TEST_CASE("nullspace basics") {
  FieldPtr f2 = make_field(2, 1);
  Matrix m = Matrix::from_rows(f2, {{1, 1}});
  Matrix ns = nullspace(m);
  REQUIRE(ns.rows() == 1);
  CHECK(ns.at(0, 0) == 1);
  CHECK(ns.at(0, 1) == 1);
}

TEST_CASE("nullspace annihilates and has complementary dimension") {
  FieldPtr f = make_field(3, 2);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    size_t rows = 1 + rng() % 6, cols = 2 + rng() % 8;
    Matrix m = random_matrix(f, rows, cols, rng);
    Matrix ns = nullspace(m);
    RrefResult r = rref(m);
    CHECK(ns.rows() == cols - r.rank);
    if (ns.rows() > 0) {
      Matrix prod = m.times(ns.transpose());
      CHECK(prod.is_zero());
    }
  }
}

TEST_CASE("row space equality under permutation and scaling") {
  FieldPtr f = make_field(2, 2);
  Matrix a = Matrix::from_rows(f, {{1, 2, 3, 0}, {0, 1, 1, 2}});
  Matrix permuted = Matrix::from_rows(f, {{0, 1, 1, 2}, {1, 2, 3, 0}});
  CHECK(row_space_equal(a, permuted));
  Matrix scaled = Matrix::from_rows(f, {{2, f->mul(2, 2), f->mul(2, 3), 0}, {0, 1, 1, 2}});
  CHECK(row_space_equal(a, scaled));
  Matrix other = Matrix::from_rows(f, {{1, 0, 0, 0}, {0, 1, 1, 2}});
  CHECK_FALSE(row_space_equal(a, other));
}

TEST_CASE("matrix serialization round trip") {
  FieldPtr f = make_field(3, 2);
  std::mt19937_64 rng(17);
  Matrix m = random_matrix(f, 3, 5, rng);
  std::stringstream ss;
  m.write(ss);
  Matrix back = Matrix::read(ss);
  CHECK(back == m);
}

TEST_CASE("rref_with_column_order pivots prefer the requested columns") {
  FieldPtr f = make_field(2, 1);
  Matrix m = Matrix::from_rows(f, {{1, 1, 0}, {0, 1, 1}});
  std::vector<size_t> order{2, 1, 0};
  RrefResult r = rref_with_column_order(m, order);
  CHECK(r.rank == 2);
  REQUIRE(r.pivots.size() == 2);
  CHECK(r.pivots[0] == 2);
  CHECK(r.pivots[1] == 1);
}
