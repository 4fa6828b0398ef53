#pragma once

// Monte Carlo harness: seeded sampling, order-type census, first-collision
// times, Rayleigh fit, and empirical checks of the bit-count bounds.

#include <absl/container/flat_hash_map.h>
#include <absl/container/flat_hash_set.h>

#include <atomic>
#include <cstdint>
#include <cstring>
#include <exception>
#include <iosfwd>
#include <mutex>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "otlab/greedy.hpp"
#include "otlab/randgeom.hpp"
#include "otlab/signature.hpp"

namespace otlab {

// --- Random streams --------------------------------------------------------

inline constexpr const char* kGeneratorFamily = "mt19937_64/splitmix64";

std::uint64_t splitmix64(std::uint64_t x);

/// Independent generator for stream `index` of `seed`.
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index);
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

struct RngConfig {
  std::uint64_t seed = 0;
  int precision = kDefaultPrecision;
};

/// Overwrites every point of `out` with uniform mantissas (the top bits of
/// one raw draw per coordinate).
void draw_points(std::mt19937_64& rng, PointSet& out);

/// n uniform points with no collinear triple; collinear draws are discarded
/// whole and counted in `rejections`.
PointSet sample_point_set(int n, std::mt19937_64& rng, int precision = kDefaultPrecision,
                          long* rejections = nullptr);

/// Order types of a stream of random point sets of one size.
class OrderTypeSampler {
 public:
  OrderTypeSampler(int n, int precision, std::mt19937_64 rng);

  /// Draws the next generic point set.
  void next();
  const PointSet& points() const { return points_; }
  /// Serialized signature of the current set or of its mirror image.
  const std::vector<std::uint8_t>& serialized(bool mirrored = false) { return builder_.serialized(mirrored); }
  long rejections() const { return rejections_; }

 private:
  PointSet points_;
  std::mt19937_64 rng_;
  SignatureBuilder builder_;
  long rejections_ = 0;
};

// --- Parallel loops ----------------------------------------------------------

/// OTLAB_THREADS if set, else the hardware concurrency.
int worker_count();

/// Runs body(i) for i in [0, count) on worker_count() threads. Callers write
/// results into slot i, so the outcome does not depend on scheduling.
template <class Body>
void parallel_for(long count, Body&& body) {
  const int workers = static_cast<int>(std::min<long>(worker_count(), count));
  if (workers <= 1) {
    for (long i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<long> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    try {
      for (long i = next++; i < count; i = next++) body(i);
    } catch (...) {
      const std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = count;
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

// --- Census ----------------------------------------------------------------

struct FingerprintHash {
  std::size_t operator()(const Fingerprint& f) const {
    std::uint64_t v;
    std::memcpy(&v, f.data(), sizeof v);
    return static_cast<std::size_t>(v);
  }
};

using CountMap = absl::flat_hash_map<Fingerprint, long, FingerprintHash>;

struct CensusOptions {
  int n = 10;
  long samples = 0;
  long window = 1'000'000;
  std::uint64_t seed = 0;
  int precision = kDefaultPrecision;
  /// Keep reduced signatures and check that no fingerprint is shared.
  bool audit = false;
  /// Stop once this many distinct types are stored (0: no cap).
  std::size_t max_types = 0;
};

struct CensusCheckpoint {
  long samples = 0;
  long distinct = 0;
  long new_in_window = 0;
};

struct CensusState {
  int n = 0;
  long samples = 0;
  long rejections = 0;
  /// Orientation-preserving classes.
  CountMap counts;
  /// Classes up to reflection, keyed by the smaller of a signature and its mirror.
  CountMap merged_counts;
  std::vector<CensusCheckpoint> checkpoints;
  bool budget_exceeded = false;

  bool audit = false;
  absl::flat_hash_map<Fingerprint, std::vector<std::uint8_t>, FingerprintHash> audit_signatures;
  /// Fingerprints that turned up for two different signatures.
  long audit_collisions = 0;

  long distinct() const { return static_cast<long>(counts.size()); }
  /// Counts sorted in decreasing order, at most `limit` of them.
  std::vector<long> rank_counts(std::size_t limit, bool merged = false) const;
  double top_frequency(bool merged = false) const;

  void write_windows_csv(std::ostream& out) const;
  void write_rank_csv(std::ostream& out, std::size_t limit = 1000, bool merged = false) const;
};

/// Sample s belongs to block s / kCensusBlock, which draws from its own
/// substream; blocks are merged in order, so results do not depend on the
/// number of workers.
inline constexpr long kCensusBlock = 8192;

CensusState run_census(const CensusOptions& options);

// --- First collisions --------------------------------------------------------

/// Number of draws up to and including the first repeated key.
template <class Key, class Hash = absl::Hash<Key>, class Draw>
long first_collision(Draw&& draw) {
  absl::flat_hash_set<Key, Hash> seen;
  for (long c = 1;; ++c) {
    if (!seen.insert(draw()).second) return c;
  }
}

struct CollisionOptions {
  int n = 10;
  long trials = 1;
  std::uint64_t seed = 0;
  int precision = kDefaultPrecision;
};

struct CollisionRun {
  int n = 0;
  std::vector<long> times;
  long rejections = 0;

  double mean() const;
  double median() const;
  void write_csv(std::ostream& out) const;
};

/// Trial t streams from substream(seed, t).
CollisionRun run_collision(const CollisionOptions& options);
/// First-collision time of one trial, as run_collision computes it.
long collision_trial(int n, std::uint64_t seed, long trial, int precision = kDefaultPrecision,
                     long* rejections = nullptr);

/// Reads the `C` column of a collisions CSV (trial,C).
std::vector<double> read_collision_csv(std::istream& in);

// --- Rayleigh fit ------------------------------------------------------------

struct RayleighFit {
  double sigma = 0;
  double ks_statistic = 0;
  /// Asymptotic Kolmogorov p-value. The scale is fitted on the same data,
  /// which makes the value conservative.
  double p_value = 0;
  std::size_t samples = 0;
};

/// P(K > lambda) for the Kolmogorov distribution.
double kolmogorov_survival(double lambda);

/// Throws TooFewSamples below 30 values.
RayleighFit rayleigh_fit_ks(std::span<const double> values);

struct ScaleEstimate {
  double estimate = 0;
  double stderr_ = 0;
  std::size_t samples = 0;
};

/// sqrt(2/pi) * mean, with its standard error.
ScaleEstimate collision_scale_estimate(std::span<const double> values);

// --- Bound checks ------------------------------------------------------------

/// One greedy run with its per-point statistics.
struct GreedyAudit {
  int n = 0;
  long total_bits = 0;
  /// sum of L(i) - 1 and of U(i).
  long sum_L_minus_1 = 0;
  long sum_U = 0;
  bool U_infinite = false;
  int max_k = 0;
  bool correct = false;
  /// L(i) - 1 <= k_i <= U(i) for every i.
  bool sandwich = false;
};

GreedyAudit audit_greedy(const PointSet& points, const GreedyOptions& options = {});

enum class BoundSuite : std::uint8_t { U, L, Greedy };

struct BoundRow {
  int n = 0;
  /// Level for tail rows, or the name of a scalar statistic.
  std::string k;
  double estimate = 0;
  double stderr_ = 0;
  double bound = 0;
  bool pass = false;
};

struct BoundReport {
  BoundSuite suite = BoundSuite::U;
  long trials = 0;
  long rejections = 0;
  /// Samples where U reached the precision cap.
  long precision_exhausted = 0;
  std::vector<BoundRow> rows;

  bool all_pass() const;
  const BoundRow* find(int n, const std::string& k) const;
  void write_csv(std::ostream& out) const;
};

/// L(1) threshold 2 log2 n - 1.5 log2 log2 n.
double L_threshold(int n);

/// Trial t of size n samples from substream(seed, n, t).
BoundReport verify_bounds(BoundSuite suite, std::span<const int> ns, long trials, std::uint64_t seed,
                          int precision = kDefaultPrecision);

// --- Geometry checks ---------------------------------------------------------

struct GeometryCheck {
  std::string suite;
  long trials = 0;
  /// Individual assertions evaluated (several per trial).
  long checks = 0;
  long violations = 0;
  /// One JSON object per violation.
  std::vector<std::string> counterexamples;

  bool pass() const { return violations == 0; }
};

/// Random p, q and level 4..9 (a quarter of the trials with q in a cell next
/// to p, a quarter with p on the square's border): area bound, plus
/// `probes` random r that must be members whenever their cell is
/// transversal with those of p and q.
GeometryCheck verify_butterfly(long trials, std::uint64_t seed, long probes = 1000,
                               int precision = kDefaultPrecision);

/// Random s in [10, 64], apex, i, b in B_i and r in R_{i+1}: the line (b r)
/// passes below the apex within pi/(2s), with slope at least tan(pi/8).
GeometryCheck verify_cross(long trials, std::uint64_t seed, int precision = kDefaultPrecision);

/// Frames with s = 2^(k+1), k in [3, 6], and points placed in B_i, R_{i+1},
/// B_i', R_i'-1 plus up to 16 uniform points: the witness is found and
/// L of the apex is at least k.
GeometryCheck verify_anniv(long trials, std::uint64_t seed, int precision = kDefaultPrecision);

}  // namespace otlab
