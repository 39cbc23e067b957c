#pragma once

#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "surfacecodes/linalg.hpp"

namespace surfacecodes {

enum class Certainty { Exact, LowerBoundOnly, UpperBoundOnly, Interval };

std::string to_string(Certainty c);

struct DistanceResult {
  int value = 0;  // Exact: d; LowerBoundOnly: lo; UpperBoundOnly/Interval: see lo/hi
  Certainty certainty = Certainty::Exact;
  int lo = 0;
  int hi = 0;
  std::optional<std::vector<uint16_t>> witness;  // codeword of weight hi
  uint64_t enumerated = 0;
  uint64_t millis = 0;

  std::string to_json(bool include_timing = false) const;
};

// [n,k] linear code held as a canonical rref generator matrix. Immutable and
// shareable; the parity-check matrix is derived lazily.
class LinearCode {
 public:
  // Rank-deficient input is fine (k = rank); the all-zero matrix is not.
  static LinearCode from_generator(const Matrix& g);

  size_t length() const noexcept { return n_; }
  size_t dimension() const noexcept { return k_; }
  const Field& field() const noexcept { return gen_.field(); }
  FieldPtr field_ptr() const noexcept { return gen_.field_ptr(); }
  const Matrix& generator() const noexcept { return gen_; }
  const Matrix& parity_check() const;

  LinearCode dual() const;
  LinearCode puncture(const std::vector<size_t>& positions) const;
  bool contains(std::span<const uint16_t> word) const;
  std::vector<uint16_t> encode(std::span<const uint16_t> message) const;

 private:
  explicit LinearCode(Matrix gen);
  struct ParityCache {
    std::once_flag once;
    std::optional<Matrix> h;
  };
  Matrix gen_;
  size_t n_ = 0, k_ = 0;
  std::shared_ptr<ParityCache> parity_;  // shared across copies; derived data
};

struct EngineOptions {
  uint64_t budget = uint64_t(1) << 26;  // exhaustive: message cap; isd/random: candidate cap
  uint64_t seed = 0x5eed;
  int workers = 1;
  std::optional<int> target;  // isd: stop as soon as the upper bound reaches it
};

// Full enumeration over the (q^k-1)/(q-1) projective messages. Exact, with a
// minimum-weight witness. Throws when q^k exceeds the budget.
DistanceResult min_distance_exhaustive(const LinearCode& c, const EngineOptions& = {});

// Brouwer-Zimmermann search: enumerate weight-w information patterns across a
// family of near-disjoint information sets, raising the lower bound each
// completed round until it meets the best upper bound. Exact when the bounds
// meet within budget, Interval/LowerBoundOnly otherwise, UpperBoundOnly when
// an early target is hit. With a target set, seeded random information sets
// are probed first. Output is independent of the worker count.
DistanceResult min_distance_isd(const LinearCode& c, const EngineOptions& = {});

// Seeded random information-set sampling; UpperBoundOnly, monotone
// nonincreasing in the budget for a fixed seed.
DistanceResult min_weight_random(const LinearCode& c, const EngineOptions& = {});

int hamming_weight(std::span<const uint16_t> v) noexcept;

}  // namespace surfacecodes
