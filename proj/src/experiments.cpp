#include "otlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <istream>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "otlab/error.hpp"

namespace otlab {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ index));
}

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return std::mt19937_64(splitmix64(splitmix64(splitmix64(seed) ^ a) ^ b));
}

void draw_points(std::mt19937_64& rng, PointSet& out) {
  const int shift = 64 - out.precision;
  for (auto& p : out.points) {
    p.x = rng() >> shift;
    p.y = rng() >> shift;
  }
}

namespace {

bool has_collinear_triple(const PointSet& points) {
  const auto n = points.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        if (orient(points[a], points[b], points[c]) == Sign::Zero) return true;
      }
    }
  }
  return false;
}

}  // namespace

PointSet sample_point_set(int n, std::mt19937_64& rng, int precision, long* rejections) {
  if (n < 1) throw Error("sample_point_set needs n >= 1");
  PointSet out{precision, std::vector<ExactPoint>(static_cast<std::size_t>(n))};
  out.validate();
  for (;;) {
    draw_points(rng, out);
    if (!has_collinear_triple(out)) return out;
    if (rejections) ++*rejections;
  }
}

OrderTypeSampler::OrderTypeSampler(int n, int precision, std::mt19937_64 rng)
    : points_{precision, std::vector<ExactPoint>(static_cast<std::size_t>(n))}, rng_(std::move(rng)) {
  if (n < 3) throw Error("order types need at least 3 points");
  points_.validate();
}

void OrderTypeSampler::next() {
  for (;;) {
    draw_points(rng_, points_);
    if (builder_.assign(points_)) return;
    ++rejections_;
  }
}

int worker_count() {
  if (const char* env = std::getenv("OTLAB_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// --- Census ----------------------------------------------------------------

std::vector<long> CensusState::rank_counts(std::size_t limit, bool merged) const {
  const auto& map = merged ? merged_counts : counts;
  std::vector<long> out;
  out.reserve(map.size());
  for (const auto& [key, count] : map) out.push_back(count);
  const auto keep = std::min(limit, out.size());
  std::partial_sort(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(keep), out.end(), std::greater<>());
  out.resize(keep);
  return out;
}

double CensusState::top_frequency(bool merged) const {
  if (samples == 0) return 0;
  const auto top = rank_counts(1, merged);
  return top.empty() ? 0.0 : static_cast<double>(top[0]) / static_cast<double>(samples);
}

void CensusState::write_windows_csv(std::ostream& out) const {
  out << "samples,distinct,new_in_window\n";
  for (const auto& c : checkpoints) out << c.samples << ',' << c.distinct << ',' << c.new_in_window << '\n';
}

void CensusState::write_rank_csv(std::ostream& out, std::size_t limit, bool merged) const {
  out << "rank,count\n";
  const auto ranks = rank_counts(limit, merged);
  for (std::size_t r = 0; r < ranks.size(); ++r) out << r + 1 << ',' << ranks[r] << '\n';
}

namespace {

struct CensusBlock {
  std::vector<std::array<Fingerprint, 2>> keys;
  std::vector<std::vector<std::uint8_t>> reduced;
  long rejections = 0;
};

CensusBlock census_block(const CensusOptions& o, long index, long count) {
  CensusBlock block;
  block.keys.reserve(static_cast<std::size_t>(count));
  OrderTypeSampler sampler(o.n, o.precision, substream(o.seed, static_cast<std::uint64_t>(index)));
  std::vector<std::uint8_t> raw;
  for (long s = 0; s < count; ++s) {
    sampler.next();
    raw = sampler.serialized(false);
    const auto& mirror = sampler.serialized(true);
    const auto& smaller = std::lexicographical_compare(mirror.begin(), mirror.end(), raw.begin(), raw.end())
                              ? mirror
                              : raw;
    block.keys.push_back({fingerprint(raw), fingerprint(smaller)});
    if (o.audit) {
      const Signature sig{o.n, {raw.begin() + 1, raw.end()}};
      block.reduced.push_back(reduce(sig).bytes());
    }
  }
  block.rejections = sampler.rejections();
  return block;
}

}  // namespace

CensusState run_census(const CensusOptions& o) {
  if (o.n < 3 || o.n > 255) throw Error("census size must lie in [3, 255]");
  if (o.samples < 1) throw Error("census needs at least one sample");
  if (o.window < 1 || o.window > o.samples) throw Error("census window must lie in [1, samples]");

  CensusState state;
  state.n = o.n;
  state.audit = o.audit;
  const long blocks = (o.samples + kCensusBlock - 1) / kCensusBlock;
  const long batch = 4L * worker_count();
  long fresh = 0;

  for (long first = 0; first < blocks; first += batch) {
    const long count = std::min(batch, blocks - first);
    std::vector<CensusBlock> results(static_cast<std::size_t>(count));
    parallel_for(count, [&](long b) {
      const long index = first + b;
      const long size = std::min(kCensusBlock, o.samples - index * kCensusBlock);
      results[static_cast<std::size_t>(b)] = census_block(o, index, size);
    });

    for (auto& block : results) {
      state.rejections += block.rejections;
      for (std::size_t s = 0; s < block.keys.size(); ++s) {
        const auto& [raw, merged] = block.keys[s];
        ++state.samples;
        if (++state.counts[raw] == 1) ++fresh;
        ++state.merged_counts[merged];
        if (o.audit) {
          const auto [it, inserted] = state.audit_signatures.try_emplace(raw, std::move(block.reduced[s]));
          if (!inserted && it->second != block.reduced[s]) ++state.audit_collisions;
        }
        const bool over = o.max_types != 0 && state.counts.size() > o.max_types;
        if (state.samples % o.window == 0 || over) {
          state.checkpoints.push_back({state.samples, state.distinct(), fresh});
          fresh = 0;
        }
        if (over) {
          state.budget_exceeded = true;
          return state;
        }
      }
    }
  }
  if (state.samples % o.window != 0) state.checkpoints.push_back({state.samples, state.distinct(), fresh});
  return state;
}

// --- First collisions --------------------------------------------------------

double CollisionRun::mean() const {
  if (times.empty()) return 0;
  return std::accumulate(times.begin(), times.end(), 0.0) / static_cast<double>(times.size());
}

double CollisionRun::median() const {
  if (times.empty()) return 0;
  auto sorted = times;
  std::sort(sorted.begin(), sorted.end());
  const auto mid = sorted.size() / 2;
  if (sorted.size() % 2 == 1) return static_cast<double>(sorted[mid]);
  return 0.5 * static_cast<double>(sorted[mid - 1] + sorted[mid]);
}

void CollisionRun::write_csv(std::ostream& out) const {
  out << "trial,C\n";
  for (std::size_t t = 0; t < times.size(); ++t) out << t << ',' << times[t] << '\n';
}

long collision_trial(int n, std::uint64_t seed, long trial, int precision, long* rejections) {
  OrderTypeSampler sampler(n, precision, substream(seed, static_cast<std::uint64_t>(trial)));
  const long c = first_collision<Fingerprint, FingerprintHash>([&] {
    sampler.next();
    return fingerprint(sampler.serialized());
  });
  if (rejections) *rejections = sampler.rejections();
  return c;
}

CollisionRun run_collision(const CollisionOptions& o) {
  if (o.trials < 1) throw Error("collision run needs at least one trial");
  CollisionRun run;
  run.n = o.n;
  run.times.resize(static_cast<std::size_t>(o.trials));
  std::vector<long> rejected(static_cast<std::size_t>(o.trials), 0);
  parallel_for(o.trials, [&](long t) {
    const auto slot = static_cast<std::size_t>(t);
    run.times[slot] = collision_trial(o.n, o.seed, t, o.precision, &rejected[slot]);
  });
  run.rejections = std::accumulate(rejected.begin(), rejected.end(), 0L);
  return run;
}

std::vector<double> read_collision_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("collisions CSV is empty");
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  const auto col = std::find(header.begin(), header.end(), "C");
  if (col == header.end()) throw FormatError("collisions CSV has no C column");
  const auto index = static_cast<std::size_t>(col - header.begin());

  std::vector<double> out;
  long row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::size_t i = 0;
    bool found = false;
    while (std::getline(ss, cell, ',')) {
      if (i++ != index) continue;
      try {
        std::size_t used = 0;
        out.push_back(std::stod(cell, &used));
        found = used == cell.size();
      } catch (const std::exception&) {
      }
    }
    if (!found) throw FormatError("collisions CSV row " + std::to_string(row) + " has no numeric C");
  }
  return out;
}

// --- Rayleigh fit ------------------------------------------------------------

double kolmogorov_survival(double lambda) {
  if (lambda <= 0) return 1.0;
  constexpr double pi = std::numbers::pi;
  if (lambda < 1.18) {
    // Theta-function form of the distribution function, fast for small lambda.
    double cdf = 0;
    for (int j = 1; j <= 20; ++j) {
      const double odd = 2.0 * j - 1.0;
      cdf += std::exp(-odd * odd * pi * pi / (8 * lambda * lambda));
    }
    cdf *= std::sqrt(2 * pi) / lambda;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double q = 0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    q += (j % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-18) break;
  }
  return std::clamp(q, 0.0, 1.0);
}

RayleighFit rayleigh_fit_ks(std::span<const double> values) {
  if (values.size() < 30) throw TooFewSamples("Rayleigh fit needs at least 30 values");
  std::vector<double> x(values.begin(), values.end());
  std::sort(x.begin(), x.end());
  const auto n = static_cast<double>(x.size());
  double sum_sq = 0;
  for (const double v : x) sum_sq += v * v;
  const double sigma2 = sum_sq / (2 * n);

  double d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = 1.0 - std::exp(-x[i] * x[i] / (2 * sigma2));
    const double above = static_cast<double>(i + 1) / n - f;
    const double below = f - static_cast<double>(i) / n;
    d = std::max({d, above, below});
  }
  const double root = std::sqrt(n);
  return {std::sqrt(sigma2), d, kolmogorov_survival((root + 0.12 + 0.11 / root) * d), x.size()};
}

ScaleEstimate collision_scale_estimate(std::span<const double> values) {
  if (values.empty()) throw TooFewSamples("scale estimate needs at least one value");
  const auto n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0;
  for (const double v : values) ss += (v - mean) * (v - mean);
  const double sd = values.size() > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
  const double c = std::sqrt(2.0 / std::numbers::pi);
  return {c * mean, c * sd / std::sqrt(n), values.size()};
}

// --- Bound checks ------------------------------------------------------------

GreedyAudit audit_greedy(const PointSet& points, const GreedyOptions& options) {
  GreedyAudit a;
  a.n = static_cast<int>(points.size());
  const auto result = greedy_chirotope(points, options);
  a.total_bits = result.total_bits();
  a.correct = result.chirotope == chirotope_of(points);
  const auto U = stat_U_all(points);
  const auto L = stat_L_all(points);
  a.sandwich = true;
  for (int i = 0; i < a.n; ++i) {
    const auto slot = static_cast<std::size_t>(i);
    const int k = result.bits[slot];
    a.max_k = std::max(a.max_k, k);
    a.sum_L_minus_1 += L[slot] - 1;
    if (U[slot].infinite()) {
      a.U_infinite = true;
    } else {
      a.sum_U += U[slot].value;
    }
    if (L[slot] - 1 > k || (!U[slot].infinite() && k > U[slot].value)) a.sandwich = false;
  }
  return a;
}

bool BoundReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const BoundRow& r) { return r.pass; });
}

const BoundRow* BoundReport::find(int n, const std::string& k) const {
  for (const auto& r : rows) {
    if (r.n == n && r.k == k) return &r;
  }
  return nullptr;
}

void BoundReport::write_csv(std::ostream& out) const {
  out << "n,k,estimate,stderr,bound,pass\n";
  out.precision(10);
  for (const auto& r : rows) {
    out << r.n << ',' << r.k << ',' << r.estimate << ',' << r.stderr_ << ',' << r.bound << ','
        << (r.pass ? "true" : "false") << '\n';
  }
}

double L_threshold(int n) {
  const double lg = std::log2(static_cast<double>(n));
  return 2 * lg - 1.5 * std::log2(lg);
}

namespace {

struct Moments {
  double mean = 0;
  double stderr_ = 0;
};

template <class T>
Moments moments(const std::vector<T>& v) {
  const auto n = static_cast<double>(v.size());
  double sum = 0;
  for (const auto x : v) sum += static_cast<double>(x);
  const double mean = sum / n;
  double ss = 0;
  for (const auto x : v) ss += (static_cast<double>(x) - mean) * (static_cast<double>(x) - mean);
  return {mean, v.size() > 1 ? std::sqrt(ss / (n - 1) / n) : 0.0};
}

double binomial_stderr(double p, double n) { return std::sqrt(p * (1 - p) / n); }

template <class Stat>
std::vector<Stat> run_trials(int n, long trials, std::uint64_t seed, int precision, long& rejections,
                             const std::function<Stat(const PointSet&)>& stat) {
  std::vector<Stat> out(static_cast<std::size_t>(trials));
  std::vector<long> rejected(static_cast<std::size_t>(trials), 0);
  parallel_for(trials, [&](long t) {
    const auto slot = static_cast<std::size_t>(t);
    auto rng = substream(seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(t));
    out[slot] = stat(sample_point_set(n, rng, precision, &rejected[slot]));
  });
  rejections += std::accumulate(rejected.begin(), rejected.end(), 0L);
  return out;
}

}  // namespace

BoundReport verify_bounds(BoundSuite suite, std::span<const int> ns, long trials, std::uint64_t seed,
                          int precision) {
  if (trials < 100) throw Error("bound checks need at least 100 trials");
  BoundReport report;
  report.suite = suite;
  report.trials = trials;
  const double N = static_cast<double>(trials);
  double previous_tail = -1;

  for (const int n : ns) {
    if (n < 3) throw Error("bound checks need n >= 3");
    const double lg = std::log2(static_cast<double>(n));
    switch (suite) {
      case BoundSuite::U: {
        const auto stats = run_trials<UStat>(n, trials, seed, precision, report.rejections,
                                             [](const PointSet& p) { return stat_U(p, 0); });
        std::vector<int> values;
        values.reserve(stats.size());
        for (const auto& s : stats) {
          if (s.precision_exhausted) ++report.precision_exhausted;
          values.push_back(s.infinite() ? precision : s.value);
        }
        const auto m = moments(values);
        const double bound = 2 * lg + 8;
        report.rows.push_back({n, "mean_U", m.mean, m.stderr_, bound, m.mean <= bound});
        const int top = *std::max_element(values.begin(), values.end());
        for (int k = 0; k <= top; ++k) {
          const double p = static_cast<double>(std::count_if(values.begin(), values.end(),
                                                             [k](int u) { return u > k; })) / N;
          const double se = binomial_stderr(p, N);
          const double tail_bound = std::min(1.0, 57.0 * n * n * std::ldexp(1.0, -k));
          report.rows.push_back({n, std::to_string(k), p, se, tail_bound, p <= tail_bound + 4 * se});
        }
        break;
      }
      case BoundSuite::L: {
        const auto values = run_trials<int>(n, trials, seed, precision, report.rejections,
                                            [](const PointSet& p) { return stat_L(p, 0); });
        const auto need = static_cast<int>(std::ceil(L_threshold(n)));
        const double p = static_cast<double>(std::count_if(values.begin(), values.end(),
                                                           [need](int l) { return l >= need; })) / N;
        const double se = binomial_stderr(p, N);
        // The first size is held to 0.95; every later one to its predecessor.
        const double bound = previous_tail < 0 ? 0.95 : previous_tail;
        report.rows.push_back({n, "L>=" + std::to_string(need), p, se, bound, p >= bound - 4 * se});
        previous_tail = p;
        break;
      }
      case BoundSuite::Greedy: {
        const auto audits = run_trials<GreedyAudit>(n, trials, seed, precision, report.rejections,
                                                    [](const PointSet& p) { return audit_greedy(p); });
        std::vector<long> total, lower, upper;
        long broken = 0, wrong = 0;
        for (const auto& a : audits) {
          total.push_back(a.total_bits);
          lower.push_back(2 * a.sum_L_minus_1);
          upper.push_back(2 * a.sum_U);
          if (a.U_infinite) ++report.precision_exhausted;
          if (!a.sandwich) ++broken;
          if (!a.correct) ++wrong;
        }
        const auto t = moments(total), lo = moments(lower), up = moments(upper);
        const double bound = 4 * n * lg + 16.0 * n;
        report.rows.push_back({n, "mean_total", t.mean, t.stderr_, bound, t.mean <= bound + 4 * t.stderr_});
        report.rows.push_back({n, "mean_lower", lo.mean, lo.stderr_, t.mean, lo.mean <= t.mean});
        report.rows.push_back({n, "mean_upper", up.mean, up.stderr_, t.mean, up.mean >= t.mean});
        report.rows.push_back({n, "sandwich_violations", static_cast<double>(broken), 0, 0, broken == 0});
        report.rows.push_back({n, "incorrect", static_cast<double>(wrong), 0, 0, wrong == 0});
        break;
      }
    }
  }
  return report;
}

}  // namespace otlab

// --- Geometry checks ---------------------------------------------------------

namespace otlab {

namespace {

nlohmann::json point_json(const ExactPoint& p) { return {{"x", p.x}, {"y", p.y}}; }

ExactPoint uniform_point(std::mt19937_64& rng, int precision) {
  const int shift = 64 - precision;
  const std::uint64_t x = rng() >> shift;
  return {x, rng() >> shift};
}

}  // namespace

GeometryCheck verify_butterfly(long trials, std::uint64_t seed, long probes, int precision) {
  GeometryCheck check{"butterfly"};
  check.trials = trials;
  const std::uint64_t top = std::uint64_t{1} << precision;
  for (long t = 0; t < trials; ++t) {
    auto rng = substream(seed, 0xb0, static_cast<std::uint64_t>(t));
    const int level = std::uniform_int_distribution<int>(4, 9)(rng);
    const int shift = precision - level;
    const std::uint64_t m = std::uint64_t{1} << level;
    ExactPoint p = uniform_point(rng, precision);
    ExactPoint q = uniform_point(rng, precision);
    switch (t % 4) {
      case 1: {  // q in one of the eight neighbouring cells
        const auto ci = static_cast<std::int64_t>(p.x >> shift), cj = static_cast<std::int64_t>(p.y >> shift);
        std::int64_t ni, nj;
        do {
          ni = ci + std::uniform_int_distribution<int>(-1, 1)(rng);
          nj = cj + std::uniform_int_distribution<int>(-1, 1)(rng);
        } while ((ni == ci && nj == cj) || ni < 0 || nj < 0 || ni >= static_cast<std::int64_t>(m) ||
                 nj >= static_cast<std::int64_t>(m));
        const std::uint64_t mask = (std::uint64_t{1} << shift) - 1;
        q = {(static_cast<std::uint64_t>(ni) << shift) | (rng() & mask),
             (static_cast<std::uint64_t>(nj) << shift) | (rng() & mask)};
        break;
      }
      case 2:  // p in a border cell
        if (rng() & 1) {
          p.x = (rng() & 1) ? p.x >> level : top - 1 - (p.x >> level);
        } else {
          p.y = (rng() & 1) ? p.y >> level : top - 1 - (p.y >> level);
        }
        break;
      default:
        break;
    }
    const auto bf = butterfly_cells(p, q, level, precision);
    const double delta = cell_center_distance(bf.source_p, bf.source_q);
    const double bound = butterfly_area_bound(level, delta);
    ++check.checks;
    if (!(bf.area() <= bound)) {
      ++check.violations;
      check.counterexamples.push_back(nlohmann::json{{"suite", "butterfly"},
                                                     {"kind", "area"},
                                                     {"trial", t},
                                                     {"level", level},
                                                     {"p", point_json(p)},
                                                     {"q", point_json(q)},
                                                     {"area", bf.area()},
                                                     {"bound", bound}}
                                          .dump());
    }
    // Spread the completeness probes evenly over the trials.
    const long mine = probes / trials + (t < probes % trials ? 1 : 0);
    for (long r = 0; r < mine; ++r) {
      const ExactPoint x = uniform_point(rng, precision);
      const Cell c = cell_of(x, level, precision);
      ++check.checks;
      if (box_transversal(bf.source_p.grid_box(), bf.source_q.grid_box(), c.grid_box()) && !bf.contains(c)) {
        ++check.violations;
        check.counterexamples.push_back(nlohmann::json{{"suite", "butterfly"},
                                                       {"kind", "completeness"},
                                                       {"trial", t},
                                                       {"level", level},
                                                       {"p", point_json(p)},
                                                       {"q", point_json(q)},
                                                       {"r", point_json(x)}}
                                            .dump());
      }
    }
  }
  return check;
}

GeometryCheck verify_cross(long trials, std::uint64_t seed, int precision) {
  GeometryCheck check{"cross"};
  check.trials = trials;
  for (long t = 0; t < trials; ++t) {
    auto rng = substream(seed, 0xc0, static_cast<std::uint64_t>(t));
    const int s = std::uniform_int_distribution<int>(10, 64)(rng);
    const SectorFrame frame(uniform_point(rng, precision), precision, s);
    const int i = std::uniform_int_distribution<int>(1, s - 1)(rng);
    const auto b = frame.sample_in({Color::Blue, i}, rng);
    const auto r = frame.sample_in({Color::Red, i + 1}, rng);
    const auto gap = cross_gap(frame, b, r);
    const double limit = std::numbers::pi / (2.0 * s);
    const bool meets = gap && gap->num >= 0 && gap->value < limit;
    const bool steep = slope_at_least_tan_pi_8(frame, b, r);
    check.checks += 2;
    if (!meets || !steep) {
      check.violations += (!meets) + (!steep);
      check.counterexamples.push_back(nlohmann::json{{"suite", "cross"},
                                                     {"trial", t},
                                                     {"s", s},
                                                     {"i", i},
                                                     {"apex", point_json(frame.apex())},
                                                     {"b", point_json(b)},
                                                     {"r", point_json(r)},
                                                     {"h", gap ? gap->value : std::nan("")},
                                                     {"limit", limit},
                                                     {"slope_ok", steep}}
                                          .dump());
    }
  }
  return check;
}

GeometryCheck verify_anniv(long trials, std::uint64_t seed, int precision) {
  GeometryCheck check{"anniv"};
  check.trials = trials;
  for (long t = 0; t < trials; ++t) {
    auto rng = substream(seed, 0xa0, static_cast<std::uint64_t>(t));
    const int k = std::uniform_int_distribution<int>(3, 6)(rng);
    const int s = 1 << (k + 1);
    const SectorFrame frame(uniform_point(rng, precision), precision, s);
    const int i = std::uniform_int_distribution<int>(1, s - 1)(rng);
    const int i2 = std::uniform_int_distribution<int>(2, s)(rng);
    const int extra = std::uniform_int_distribution<int>(0, 16)(rng);

    PointSet points{precision, {}};
    for (;;) {
      points.points = {frame.apex(),
                       frame.sample_in({Color::Blue, i}, rng),
                       frame.sample_in({Color::Red, i + 1}, rng),
                       frame.sample_in({Color::Blue, i2}, rng),
                       frame.sample_in({Color::Red, i2 - 1}, rng)};
      for (int e = 0; e < extra; ++e) points.points.push_back(uniform_point(rng, precision));
      if (!has_collinear_triple(points)) break;
    }
    const auto witness = anniv_witness(frame, points.points);
    const int L = stat_L(points, 0);
    check.checks += 2;
    if (!witness || L < k) {
      check.violations += (!witness) + (L < k);
      nlohmann::json pts = nlohmann::json::array();
      for (const auto& p : points.points) pts.push_back(point_json(p));
      check.counterexamples.push_back(nlohmann::json{{"suite", "anniv"},
                                                     {"trial", t},
                                                     {"k", k},
                                                     {"s", s},
                                                     {"i", i},
                                                     {"i_prime", i2},
                                                     {"witness", witness.has_value()},
                                                     {"L", L},
                                                     {"points", pts}}
                                          .dump());
    }
  }
  return check;
}

}  // namespace otlab
