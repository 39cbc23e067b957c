#include <doctest.h>

#include <random>

#include "surfacecodes/code.hpp"

using namespace surfacecodes;

namespace {

LinearCode repetition(FieldPtr f, size_t n) {
  Matrix g(f, 1, n);
  for (size_t j = 0; j < n; ++j) g.set(0, j, 1);
  return LinearCode::from_generator(g);
}

LinearCode random_code(FieldPtr f, size_t n, size_t k, std::mt19937_64& rng) {
  for (;;) {
    Matrix g(f, k, n);
    bool nonzero = false;
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j < n; ++j) {
        uint16_t v = static_cast<uint16_t>(rng() % f->order());
        g.set(i, j, v);
        nonzero |= v != 0;
      }
    if (nonzero) return LinearCode::from_generator(g);
  }
}

}  // namespace

TEST_CASE("from_generator canonicalizes and keeps the rank") {
  FieldPtr f = make_field(2, 2);
  LinearCode rep = repetition(f, 7);
  CHECK(rep.length() == 7);
  CHECK(rep.dimension() == 1);

  // rank-deficient input: duplicated and zero rows
  Matrix g = Matrix::from_rows(f, {{1, 2, 0, 0, 1, 3},
                                   {1, 2, 0, 0, 1, 3},
                                   {0, 0, 0, 0, 0, 0},
                                   {0, 1, 1, 0, 2, 0}});
  LinearCode c = LinearCode::from_generator(g);
  CHECK(c.dimension() == 2);

  Matrix z(f, 3, 4);
  CHECK_THROWS_AS(LinearCode::from_generator(z), std::invalid_argument);
}

TEST_CASE("generator and parity check are exactly orthogonal") {
  FieldPtr f = make_field(3, 2);
  std::mt19937_64 rng(41);
  for (int t = 0; t < 10; ++t) {
    LinearCode c = random_code(f, 8 + rng() % 6, 2 + rng() % 4, rng);
    CHECK(c.dimension() + c.parity_check().rows() == c.length());
    CHECK(c.generator().times(c.parity_check().transpose()).is_zero());
  }
}

TEST_CASE("dual of the repetition code is the single-parity-check code") {
  FieldPtr f = make_field(2, 2);
  LinearCode rep = repetition(f, 6);
  LinearCode d = rep.dual();
  CHECK(d.length() == 6);
  CHECK(d.dimension() == 5);
  CHECK(min_distance_exhaustive(d).value == 2);
}

TEST_CASE("dual is an involution") {
  FieldPtr f = make_field(2, 2);
  std::mt19937_64 rng(97);
  for (int t = 0; t < 20; ++t) {
    LinearCode c = random_code(f, 6 + rng() % 8, 1 + rng() % 5, rng);
    LinearCode dd = c.dual().dual();
    CHECK(row_space_equal(c.generator(), dd.generator()));
  }
}

TEST_CASE("dual of the full code is zero-dimensional") {
  FieldPtr f = make_field(2, 1);
  Matrix g = Matrix::from_rows(f, {{1, 0}, {0, 1}});
  LinearCode full = LinearCode::from_generator(g);
  LinearCode zero = full.dual();
  CHECK(zero.dimension() == 0);
  std::vector<uint16_t> w{0, 0};
  CHECK(zero.contains(w));
  w[0] = 1;
  CHECK_FALSE(zero.contains(w));
  CHECK_THROWS_AS(min_distance_exhaustive(zero), std::invalid_argument);
  CHECK_THROWS_AS(min_distance_isd(zero), std::invalid_argument);
}

TEST_CASE("puncturing") {
  FieldPtr f = make_field(2, 2);
  LinearCode rep = repetition(f, 5);
  LinearCode same = rep.puncture({});
  CHECK(same.length() == 5);
  CHECK(row_space_equal(same.generator(), rep.generator()));
  LinearCode shorter = rep.puncture({2});
  CHECK(shorter.length() == 4);
  CHECK(shorter.dimension() == 1);
  CHECK(min_distance_exhaustive(shorter).value == 4);
  CHECK_THROWS_AS(rep.puncture({0, 1, 2, 3, 4}), std::invalid_argument);
  CHECK_THROWS_AS(rep.puncture({7}), std::invalid_argument);
}

TEST_CASE("exhaustive engine: repetition code and budget guard") {
  FieldPtr f = make_field(2, 3);
  LinearCode rep = repetition(f, 9);
  DistanceResult r = min_distance_exhaustive(rep);
  CHECK(r.certainty == Certainty::Exact);
  CHECK(r.value == 9);
  CHECK(r.enumerated == 1);  // one projective message
  REQUIRE(r.witness.has_value());
  CHECK(hamming_weight(*r.witness) == 9);

  EngineOptions tiny;
  tiny.budget = 4;
  FieldPtr f4 = make_field(2, 2);
  std::mt19937_64 rng(1);
  LinearCode c = random_code(f4, 8, 4, rng);
  CHECK_THROWS_AS(min_distance_exhaustive(c, tiny), std::invalid_argument);
}

TEST_CASE("exhaustive engine counts every projective message") {
  FieldPtr f = make_field(2, 2);
  std::mt19937_64 rng(2024);
  LinearCode c = random_code(f, 10, 4, rng);
  DistanceResult r = min_distance_exhaustive(c);
  CHECK(r.enumerated == (256 - 1) / 3 * 1u);  // (q^k-1)/(q-1)
}

TEST_CASE("isd agrees with exhaustive enumeration on random codes") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 30; ++t) {
    uint32_t q = 4;
    FieldPtr f = make_field_of_order(q);
    size_t n = 8 + rng() % 13;  // up to 20
    size_t k = 1 + rng() % std::min<size_t>(10, n - 1);
    LinearCode c = random_code(f, n, k, rng);
    DistanceResult ex = min_distance_exhaustive(c);
    DistanceResult isd = min_distance_isd(c);
    REQUIRE(isd.certainty == Certainty::Exact);
    CHECK(isd.value == ex.value);
    // Singleton bound on every exact result
    CHECK(ex.value <= static_cast<int>(c.length() - c.dimension() + 1));
    REQUIRE(isd.witness.has_value());
    CHECK(hamming_weight(*isd.witness) == isd.value);
    CHECK(c.contains(*isd.witness));
  }
}

TEST_CASE("engines agree over GF(9) as well") {
  FieldPtr f = make_field(3, 2);
  std::mt19937_64 rng(55);
  for (int t = 0; t < 5; ++t) {
    LinearCode c = random_code(f, 12, 5, rng);
    DistanceResult ex = min_distance_exhaustive(c);
    DistanceResult isd = min_distance_isd(c);
    REQUIRE(isd.certainty == Certainty::Exact);
    CHECK(isd.value == ex.value);
  }
}

TEST_CASE("engines reject fields beyond their byte representation") {
  FieldPtr f = make_field(2, 9);  // GF(512)
  Matrix g(f, 1, 4);
  for (size_t j = 0; j < 4; ++j) g.set(0, j, 300);
  LinearCode c = LinearCode::from_generator(g);
  CHECK_THROWS_AS(min_distance_exhaustive(c), std::invalid_argument);
  CHECK_THROWS_AS(min_distance_isd(c), std::invalid_argument);
}

TEST_CASE("isd respects an early target") {
  FieldPtr f = make_field(2, 2);
  std::mt19937_64 rng(99);
  LinearCode c = random_code(f, 16, 8, rng);
  DistanceResult ex = min_distance_exhaustive(c);
  EngineOptions opt;
  opt.target = ex.value;
  DistanceResult t = min_distance_isd(c, opt);
  CHECK((t.certainty == Certainty::UpperBoundOnly || t.certainty == Certainty::Exact));
  CHECK(t.hi == ex.value);
  REQUIRE(t.witness.has_value());
  CHECK(hamming_weight(*t.witness) == t.hi);
  CHECK(c.contains(*t.witness));
}

TEST_CASE("isd returns honest intervals when the budget is tight") {
  FieldPtr f = make_field(2, 3);
  std::mt19937_64 rng(5);
  LinearCode c = random_code(f, 24, 12, rng);
  DistanceResult full = min_distance_isd(c);
  REQUIRE(full.certainty == Certainty::Exact);
  EngineOptions opt;
  opt.budget = 300;  // a couple of rounds at most
  DistanceResult r = min_distance_isd(c, opt);
  CHECK((r.certainty == Certainty::Interval || r.certainty == Certainty::LowerBoundOnly ||
         r.certainty == Certainty::Exact));
  if (r.certainty != Certainty::Exact) {
    CHECK(r.lo <= full.value);
    if (r.certainty == Certainty::Interval) CHECK(full.value <= r.hi);
  }
}

TEST_CASE("random engine: repetition, oracle floor, budget monotonicity") {
  FieldPtr f = make_field(2, 2);
  LinearCode rep = repetition(f, 8);
  DistanceResult r = min_weight_random(rep, {});
  CHECK(r.certainty == Certainty::UpperBoundOnly);
  CHECK(r.value == 8);

  std::mt19937_64 rng(13);
  for (int t = 0; t < 10; ++t) {
    LinearCode c = random_code(f, 10 + rng() % 6, 2 + rng() % 5, rng);
    DistanceResult ex = min_distance_exhaustive(c);
    EngineOptions small, big;
    small.budget = 2000;
    big.budget = 40000;
    small.seed = big.seed = 77;
    DistanceResult rs = min_weight_random(c, small);
    DistanceResult rb = min_weight_random(c, big);
    CHECK(rs.value >= ex.value);  // never below the true distance
    CHECK(rb.value <= rs.value);  // monotone in the budget for a fixed seed
  }
}

TEST_CASE("engines are worker-count invariant") {
  FieldPtr f = make_field(2, 2);
  std::mt19937_64 rng(31);
  LinearCode c = random_code(f, 18, 7, rng);
  EngineOptions w1, w4;
  w1.workers = 1;
  w4.workers = 4;
  DistanceResult e1 = min_distance_exhaustive(c, w1);
  DistanceResult e4 = min_distance_exhaustive(c, w4);
  CHECK(e1.value == e4.value);
  CHECK(e1.enumerated == e4.enumerated);
  CHECK(*e1.witness == *e4.witness);
  DistanceResult i1 = min_distance_isd(c, w1);
  DistanceResult i4 = min_distance_isd(c, w4);
  CHECK(i1.value == i4.value);
  CHECK(i1.enumerated == i4.enumerated);
  CHECK(*i1.witness == *i4.witness);
  EngineOptions r1 = w1, r4 = w4;
  r1.budget = r4.budget = 30000;
  DistanceResult m1 = min_weight_random(c, r1);
  DistanceResult m4 = min_weight_random(c, r4);
  CHECK(m1.value == m4.value);
  CHECK(m1.enumerated == m4.enumerated);
}

TEST_CASE("distance results serialize to json") {
  FieldPtr f = make_field(2, 1);
  LinearCode rep = repetition(f, 3);
  DistanceResult r = min_distance_exhaustive(rep);
  std::string j = r.to_json();
  CHECK(j.find("\"certainty\":\"exact\"") != std::string::npos);
  CHECK(j.find("\"value\":3") != std::string::npos);
  CHECK(j.find("millis") == std::string::npos);
  CHECK(r.to_json(true).find("millis") != std::string::npos);
}
