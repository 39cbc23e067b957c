#include "surfacecodes/code.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <numeric>
#include <random>
#include <thread>

#include <json.hpp>

namespace surfacecodes {

std::string to_string(Certainty c) {
  switch (c) {
    case Certainty::Exact: return "exact";
    case Certainty::LowerBoundOnly: return "lower_bound";
    case Certainty::UpperBoundOnly: return "upper_bound";
    case Certainty::Interval: return "interval";
  }
  return "interval";
}

std::string DistanceResult::to_json(bool include_timing) const {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["value"] = value;
  j["certainty"] = surfacecodes::to_string(certainty);
  j["lo"] = lo;
  j["hi"] = hi;
  if (witness) j["witness"] = *witness;
  j["enumerated"] = enumerated;
  if (include_timing) j["millis"] = millis;
  return j.dump();
}

int hamming_weight(std::span<const uint16_t> v) noexcept {
  int w = 0;
  for (uint16_t x : v) w += (x != 0);
  return w;
}

LinearCode::LinearCode(Matrix gen)
    : gen_(std::move(gen)),
      n_(gen_.cols()),
      k_(gen_.rows()),
      parity_(std::make_shared<ParityCache>()) {}

LinearCode LinearCode::from_generator(const Matrix& g) {
  RrefResult r = rref(g);
  if (r.rank == 0) throw std::invalid_argument("zero generator matrix");
  Matrix gen(g.field_ptr(), r.rank, g.cols());
  for (size_t i = 0; i < r.rank; ++i)
    for (size_t j = 0; j < g.cols(); ++j) gen.set(i, j, r.mat.at(i, j));
  return LinearCode(std::move(gen));
}

const Matrix& LinearCode::parity_check() const {
  std::call_once(parity_->once, [this] {
    RrefResult r = rref(nullspace(gen_));
    Matrix h(gen_.field_ptr(), r.rank, n_);
    for (size_t i = 0; i < r.rank; ++i)
      for (size_t j = 0; j < n_; ++j) h.set(i, j, r.mat.at(i, j));
    parity_->h = std::move(h);
  });
  return *parity_->h;
}

LinearCode LinearCode::dual() const {
  RrefResult r = rref(nullspace(gen_));
  Matrix gen(gen_.field_ptr(), r.rank, n_);
  for (size_t i = 0; i < r.rank; ++i)
    for (size_t j = 0; j < n_; ++j) gen.set(i, j, r.mat.at(i, j));
  return LinearCode(std::move(gen));
}

LinearCode LinearCode::puncture(const std::vector<size_t>& positions) const {
  std::vector<bool> drop(n_, false);
  for (size_t p : positions) {
    if (p >= n_) throw std::invalid_argument("puncture position out of range");
    drop[p] = true;
  }
  size_t kept = 0;
  for (size_t j = 0; j < n_; ++j) kept += !drop[j];
  if (kept == 0) throw std::invalid_argument("cannot puncture every coordinate");
  Matrix g(gen_.field_ptr(), k_ == 0 ? 0 : k_, kept);
  for (size_t i = 0; i < k_; ++i) {
    size_t jj = 0;
    for (size_t j = 0; j < n_; ++j)
      if (!drop[j]) g.set(i, jj++, gen_.at(i, j));
  }
  if (k_ == 0 || g.is_zero())
    throw std::invalid_argument("puncturing produced the zero code");
  return from_generator(g);
}

bool LinearCode::contains(std::span<const uint16_t> word) const {
  if (word.size() != n_) throw std::invalid_argument("word length mismatch");
  if (k_ == 0) return hamming_weight(word) == 0;
  std::vector<uint16_t> s = parity_check().times(word);
  return hamming_weight(s) == 0;
}

std::vector<uint16_t> LinearCode::encode(std::span<const uint16_t> message) const {
  if (message.size() != k_) throw std::invalid_argument("message length mismatch");
  const Field& f = field();
  std::vector<uint16_t> out(n_, 0);
  for (size_t i = 0; i < k_; ++i) {
    if (message[i] == 0) continue;
    for (size_t j = 0; j < n_; ++j)
      out[j] = f.add(out[j], f.mul(message[i], gen_.at(i, j)));
  }
  return out;
}

namespace {

// ---------------------------------------------------------------------------
// Engine workspace: generator rows as uint8 with all scalar multiples
// precomputed, so the inner loops are pure table walks (XOR in char 2).
// ---------------------------------------------------------------------------

struct Rows {
  size_t n = 0, np = 0, k = 0;
  uint32_t q = 0;
  bool char2 = false;
  std::vector<uint8_t> add;     // q*q, unused in char 2
  std::vector<uint8_t> scaled;  // (k*q + c)*np layout

  const uint8_t* row(size_t r, uint32_t c) const {
    return scaled.data() + (r * q + c) * np;
  }
};

Rows prepare(const Matrix& g) {
  const Field& f = g.field();
  if (f.order() > 256)
    throw std::invalid_argument("distance engines support q <= 256");
  Rows R;
  R.n = g.cols();
  R.np = (R.n + 7) & ~size_t(7);
  R.k = g.rows();
  R.q = f.order();
  R.char2 = f.characteristic() == 2;
  if (!R.char2) {
    R.add.resize(static_cast<size_t>(R.q) * R.q);
    for (uint32_t a = 0; a < R.q; ++a)
      for (uint32_t b = 0; b < R.q; ++b)
        R.add[a * R.q + b] = static_cast<uint8_t>(
            f.add(static_cast<uint16_t>(a), static_cast<uint16_t>(b)));
  }
  R.scaled.assign(R.k * R.q * R.np, 0);
  for (size_t r = 0; r < R.k; ++r)
    for (uint32_t c = 0; c < R.q; ++c) {
      uint8_t* dst = R.scaled.data() + (r * R.q + c) * R.np;
      for (size_t j = 0; j < R.n; ++j)
        dst[j] = static_cast<uint8_t>(f.mul(static_cast<uint16_t>(c), g.at(r, j)));
    }
  return R;
}

inline void add_rows(const Rows& R, const uint8_t* a, const uint8_t* b, uint8_t* dst) {
  if (R.char2) {
    for (size_t j = 0; j < R.np; j += 8) {
      uint64_t x, y;
      std::memcpy(&x, a + j, 8);
      std::memcpy(&y, b + j, 8);
      x ^= y;
      std::memcpy(dst + j, &x, 8);
    }
  } else {
    const uint8_t* tab = R.add.data();
    const uint32_t q = R.q;
    for (size_t j = 0; j < R.n; ++j)
      dst[j] = tab[static_cast<size_t>(a[j]) * q + b[j]];
  }
}

inline int row_weight(const uint8_t* v, size_t n) {
  int w = 0;
  for (size_t j = 0; j < n; ++j) w += (v[j] != 0);
  return w;
}

struct TaskResult {
  int best = INT32_MAX;
  std::vector<uint8_t> witness;
  uint64_t count = 0;
};

void run_tasks(int workers, size_t ntasks,
               const std::function<void(size_t)>& fn) {
  workers = std::max(1, workers);
  if (workers == 1 || ntasks <= 1) {
    for (size_t t = 0; t < ntasks; ++t) fn(t);
    return;
  }
  std::atomic<size_t> next{0};
  auto loop = [&] {
    for (;;) {
      size_t t = next.fetch_add(1);
      if (t >= ntasks) return;
      fn(t);
    }
  };
  std::vector<std::thread> pool;
  int nw = std::min<int>(workers, static_cast<int>(ntasks));
  pool.reserve(nw);
  for (int i = 0; i < nw; ++i) pool.emplace_back(loop);
  for (auto& th : pool) th.join();
}

uint64_t saturating_mul(uint64_t a, uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > UINT64_MAX / b) return UINT64_MAX;
  return a * b;
}

uint64_t saturating_add(uint64_t a, uint64_t b) {
  return (a > UINT64_MAX - b) ? UINT64_MAX : a + b;
}

uint64_t binomial_sat(uint64_t n, uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  uint64_t out = 1;
  for (uint64_t i = 1; i <= r; ++i) {
    out = saturating_mul(out, n - r + i);
    if (out == UINT64_MAX) return out;
    out /= i;
  }
  return out;
}

// combinations of exactly w rows, coefficient of the first chosen row fixed
// to 1, remaining coefficients over F_q^*; first row index is fixed by the
// caller for task partitioning
template <class Visit>
void enumerate_combos_first(const Rows& R, int w, size_t first, Visit&& visit) {
  std::vector<std::vector<uint8_t>> bufs(static_cast<size_t>(w) + 1,
                                         std::vector<uint8_t>(R.np));
  std::memcpy(bufs[0].data(), R.row(first, 1), R.np);
  if (w == 1) {
    visit(bufs[0].data());
    return;
  }
  auto dfs = [&](auto&& self, int depth, size_t last, const uint8_t* cur) -> void {
    const size_t remaining = static_cast<size_t>(w - depth);
    for (size_t idx = last + 1; idx + remaining - 1 < R.k; ++idx) {
      for (uint32_t c = 1; c < R.q; ++c) {
        add_rows(R, cur, R.row(idx, c), bufs[depth].data());
        if (depth + 1 == w)
          visit(bufs[depth].data());
        else
          self(self, depth + 1, idx, bufs[depth].data());
      }
    }
  };
  dfs(dfs, 1, first, bufs[0].data());
}

std::vector<uint16_t> widen(const std::vector<uint8_t>& v, size_t n) {
  std::vector<uint16_t> out(n);
  for (size_t j = 0; j < n; ++j) out[j] = v[j];
  return out;
}

uint64_t mix_seed(uint64_t seed, uint64_t idx) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ull * (idx + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

struct SysFamily {
  std::vector<Rows> mats;
  std::vector<size_t> sigma;
};

// Near-disjoint information sets: repeat rref with uncovered columns first;
// sigma_i counts how many pivots of matrix i were already covered.
SysFamily build_family(const Matrix& gen) {
  SysFamily fam;
  const size_t n = gen.cols();
  const size_t k = gen.rows();
  std::vector<bool> covered(n, false);
  for (;;) {
    std::vector<size_t> order;
    order.reserve(n);
    for (size_t j = 0; j < n; ++j)
      if (!covered[j]) order.push_back(j);
    size_t uncovered = order.size();
    for (size_t j = 0; j < n; ++j)
      if (covered[j]) order.push_back(j);
    if (uncovered == 0) break;
    RrefResult rr = rref_with_column_order(gen, order);
    size_t fresh = 0;
    for (size_t c : rr.pivots)
      if (!covered[c]) ++fresh;
    if (fresh == 0) break;
    fam.mats.push_back(prepare(rr.mat));
    fam.sigma.push_back(k - fresh);
    for (size_t c : rr.pivots) covered[c] = true;
  }
  return fam;
}

uint64_t family_lb(const SysFamily& fam, uint64_t w_completed) {
  uint64_t lb = 0;
  for (size_t s : fam.sigma)
    lb += (w_completed + 1 > s) ? (w_completed + 1 - s) : 0;
  return std::max<uint64_t>(lb, 1);
}

// Weight sweep shared by every engine inner loop. Candidate counts and the
// running best stay in locals so parallel tasks do not share cache lines.
struct BestTracker {
  int best = INT32_MAX;
  uint64_t count = 0;
  std::vector<uint8_t> witness;
  size_t n;

  explicit BestTracker(size_t n_) : n(n_) {}
  void visit(const uint8_t* v) {
    ++count;
    int wt = row_weight(v, n);
    if (wt < best) {
      best = wt;
      witness.assign(v, v + n);
    }
  }
  void store(TaskResult& out) const {
    out.best = best;
    out.count = count;
    out.witness = witness;
  }
};

// One seeded random-information-set iteration: permute columns, re-echelon,
// enumerate patterns of weight <= w_max. Deterministic per (seed, index).
void random_iteration(const Matrix& gen, uint64_t seed, uint64_t index, int w_max,
                      TaskResult& out) {
  const size_t n = gen.cols();
  std::mt19937_64 rng(mix_seed(seed, index));
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (size_t i = n - 1; i > 0; --i)
    std::swap(order[i], order[rng() % (i + 1)]);
  RrefResult rr = rref_with_column_order(gen, order);
  Rows R = prepare(rr.mat);
  BestTracker acc(R.n);
  for (int w = 1; w <= w_max; ++w) {
    for (size_t first = 0; first + w <= R.k; ++first)
      enumerate_combos_first(R, w, first, [&](const uint8_t* v) { acc.visit(v); });
  }
  acc.store(out);
}

uint64_t per_iteration_cost(size_t k, uint32_t q, int w_max) {
  uint64_t total = 0;
  for (int w = 1; w <= w_max; ++w) {
    uint64_t c = binomial_sat(k, static_cast<uint64_t>(w));
    for (int i = 0; i + 1 < w; ++i) c = saturating_mul(c, q - 1);
    total = saturating_add(total, c);
  }
  return total;
}

}  // namespace

DistanceResult min_distance_exhaustive(const LinearCode& code, const EngineOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  if (code.dimension() == 0)
    throw std::invalid_argument("zero-dimensional code has no minimum distance");
  const size_t k = code.dimension();
  const size_t n = code.length();
  const uint32_t q = code.field().order();
  long double total = powl(static_cast<long double>(q), static_cast<long double>(k));
  if (total > static_cast<long double>(opt.budget))
    throw std::invalid_argument("q^k exceeds the exhaustive enumeration budget");
  Rows R = prepare(code.generator());

  struct Task {
    size_t lead;
    int digit;  // value of position lead+1, or -1 when absent
  };
  std::vector<Task> tasks;
  for (size_t lead = 0; lead < k; ++lead) {
    if (lead + 1 == k) {
      tasks.push_back({lead, -1});
    } else {
      for (uint32_t c = 0; c < q; ++c) tasks.push_back({lead, static_cast<int>(c)});
    }
  }
  std::vector<TaskResult> results(tasks.size());

  run_tasks(opt.workers, tasks.size(), [&](size_t ti) {
    const Task& t = tasks[ti];
    std::vector<std::vector<uint8_t>> bufs(k + 1, std::vector<uint8_t>(R.np));
    BestTracker acc(R.n);
    // digit-DFS over the remaining message positions
    auto dfs = [&](auto&& self, size_t pos, const uint8_t* cur) -> void {
      if (pos == k) {
        acc.visit(cur);
        return;
      }
      self(self, pos + 1, cur);  // digit 0
      for (uint32_t c = 1; c < q; ++c) {
        add_rows(R, cur, R.row(pos, c), bufs[pos].data());
        self(self, pos + 1, bufs[pos].data());
      }
    };
    const uint8_t* base = R.row(t.lead, 1);
    if (t.digit < 0) {
      acc.visit(base);
    } else if (t.digit == 0) {
      // position lead+1 stays zero; recurse beyond it
      dfs(dfs, t.lead + 2, base);
    } else {
      add_rows(R, base, R.row(t.lead + 1, static_cast<uint32_t>(t.digit)),
               bufs[t.lead].data());
      dfs(dfs, t.lead + 2, bufs[t.lead].data());
    }
    acc.store(results[ti]);
  });

  DistanceResult res;
  res.certainty = Certainty::Exact;
  int best = INT32_MAX;
  for (const TaskResult& r : results) {
    res.enumerated += r.count;
    if (r.best < best) {
      best = r.best;
      res.witness = widen(r.witness, n);
    }
  }
  res.value = best;
  res.lo = res.hi = best;
  res.millis = static_cast<uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now() - t0)
          .count());
  return res;
}

DistanceResult min_distance_isd(const LinearCode& code, const EngineOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  if (code.dimension() == 0)
    throw std::invalid_argument("zero-dimensional code has no minimum distance");
  const size_t k = code.dimension();
  const size_t n = code.length();
  const uint32_t q = code.field().order();
  const Matrix& gen = code.generator();

  int ub = INT32_MAX;
  std::vector<uint16_t> witness;
  uint64_t enumerated = 0;

  auto finish = [&](Certainty cert, int lo, int hi) {
    DistanceResult res;
    res.certainty = cert;
    res.lo = lo;
    res.hi = hi;
    res.value = (cert == Certainty::UpperBoundOnly) ? hi : lo;
    if (!witness.empty()) res.witness = witness;
    res.enumerated = enumerated;
    res.millis = static_cast<uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - t0)
            .count());
    return res;
  };

  // Target mode: probe seeded random information sets before the systematic
  // rounds; cheap way to surface a known-weight codeword.
  if (opt.target) {
    uint64_t probe_budget = opt.budget / 2;
    int w_max = 1;
    while (w_max < 5 &&
           per_iteration_cost(k, q, w_max + 1) <= std::max<uint64_t>(probe_budget / 16, 1))
      ++w_max;
    uint64_t per_iter = per_iteration_cost(k, q, w_max);
    uint64_t iters = per_iter == 0 ? 0 : probe_budget / per_iter;
    // fixed-size batches keep the outcome independent of the worker count
    const uint64_t batch = 16;
    for (uint64_t start = 0; start < iters; start += batch) {
      uint64_t count = std::min(batch, iters - start);
      std::vector<TaskResult> results(count);
      run_tasks(opt.workers, count, [&](size_t it) {
        random_iteration(gen, opt.seed, start + it, w_max, results[it]);
      });
      bool hit = false;
      for (const TaskResult& r : results) {
        enumerated += r.count;
        if (r.best < ub) {
          ub = r.best;
          witness = widen(r.witness, n);
        }
        if (ub <= *opt.target) {
          hit = true;
          break;
        }
      }
      if (hit) return finish(Certainty::UpperBoundOnly, 1, ub);
    }
  }

  SysFamily fam = build_family(gen);
  uint64_t completed = 0;
  for (uint64_t w = 1; w <= k; ++w) {
    uint64_t lb_now = family_lb(fam, completed);
    if (ub != INT32_MAX && lb_now >= static_cast<uint64_t>(ub))
      return finish(Certainty::Exact, ub, ub);
    uint64_t combos = binomial_sat(k, w);
    for (uint64_t i = 0; i + 1 < w; ++i) combos = saturating_mul(combos, q - 1);
    uint64_t round_cost = saturating_mul(combos, fam.mats.size());
    if (saturating_add(enumerated, round_cost) > opt.budget) break;

    struct RoundTask {
      size_t mat, first;
    };
    std::vector<RoundTask> tasks;
    for (size_t m = 0; m < fam.mats.size(); ++m)
      for (size_t first = 0; first + w <= k; ++first) tasks.push_back({m, first});
    std::vector<TaskResult> results(tasks.size());
    run_tasks(opt.workers, tasks.size(), [&](size_t ti) {
      const Rows& R = fam.mats[tasks[ti].mat];
      BestTracker acc(R.n);
      enumerate_combos_first(R, static_cast<int>(w), tasks[ti].first,
                             [&](const uint8_t* v) { acc.visit(v); });
      acc.store(results[ti]);
    });
    for (const TaskResult& r : results) {
      enumerated += r.count;
      if (r.best < ub) {
        ub = r.best;
        witness = widen(r.witness, n);
      }
    }
    completed = w;
    if (opt.target && ub <= *opt.target)
      return finish(Certainty::UpperBoundOnly, static_cast<int>(family_lb(fam, completed)), ub);
    uint64_t lb = family_lb(fam, completed);
    if (ub != INT32_MAX && lb >= static_cast<uint64_t>(ub))
      return finish(Certainty::Exact, ub, ub);
    if (completed == k)  // full enumeration of the first information set
      return finish(Certainty::Exact, ub, ub);
  }

  uint64_t lb = family_lb(fam, completed);
  int lo = static_cast<int>(std::min<uint64_t>(lb, n));
  if (ub == INT32_MAX) return finish(Certainty::LowerBoundOnly, lo, static_cast<int>(n));
  if (lb >= static_cast<uint64_t>(ub)) return finish(Certainty::Exact, ub, ub);
  return finish(Certainty::Interval, lo, ub);
}

DistanceResult min_weight_random(const LinearCode& code, const EngineOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  if (code.dimension() == 0)
    throw std::invalid_argument("zero-dimensional code has no minimum distance");
  const size_t k = code.dimension();
  const size_t n = code.length();
  const uint32_t q = code.field().order();
  int w_max = (per_iteration_cost(k, q, 2) <= std::max<uint64_t>(opt.budget / 4, 1))
                  ? std::min<int>(2, static_cast<int>(k))
                  : 1;
  uint64_t per_iter = per_iteration_cost(k, q, w_max);
  uint64_t iters = std::max<uint64_t>(per_iter == 0 ? 1 : opt.budget / per_iter, 1);
  iters = std::min<uint64_t>(iters, 2048);  // re-echelon cost dominates tiny codes
  std::vector<TaskResult> results(iters);
  run_tasks(opt.workers, iters, [&](size_t it) {
    random_iteration(code.generator(), opt.seed, it, w_max, results[it]);
  });
  DistanceResult res;
  res.certainty = Certainty::UpperBoundOnly;
  int best = INT32_MAX;
  for (const TaskResult& r : results) {
    res.enumerated += r.count;
    if (r.best < best) {
      best = r.best;
      res.witness = widen(r.witness, n);
    }
  }
  res.hi = best;
  res.value = best;
  res.lo = 1;
  res.millis = static_cast<uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now() - t0)
          .count());
  return res;
}

}  // namespace surfacecodes
