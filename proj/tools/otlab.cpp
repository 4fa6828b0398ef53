// otlab: command-line front end for the order-type experiments.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "otlab/error.hpp"
#include "otlab/experiments.hpp"

namespace {

using namespace otlab;
using nlohmann::json;

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  return out;
}

PointSet load_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  return read_point_set(in);
}

TieBreak parse_tie_break(const std::string& s) {
  if (s == "first") return TieBreak::FirstFound;
  if (s == "random") return TieBreak::Random;
  if (s == "max-degree") return TieBreak::MaxDegree;
  throw Error("unknown tie-break: " + s);
}

std::string sibling_path(const std::string& path, const std::string& suffix) {
  const auto dot = path.rfind('.');
  const auto slash = path.rfind('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + suffix;
  return path.substr(0, dot) + suffix;
}

int cmd_signature(const std::string& points_path, bool reduced) {
  const auto points = load_points(points_path);
  const auto form = canonical_form(points);
  const auto bytes = form.signature.bytes();
  json out{{"n", form.signature.n},
           {"signature", form.signature.word},
           {"fingerprint", to_hex(fingerprint(bytes))},
           {"order", form.order},
           {"mirror_fingerprint", to_hex(fingerprint(signature(points.mirrored())))}};
  if (reduced) out["reduced"] = reduce(form.signature).entries;
  std::cout << out.dump() << '\n';
  return 0;
}

int cmd_greedy(int n, long trials, std::uint64_t seed, const std::string& tie, int precision,
               const std::string& out_path) {
  GreedyOptions options;
  options.tie_break = parse_tie_break(tie);
  std::vector<GreedyAudit> audits(static_cast<std::size_t>(trials));
  parallel_for(trials, [&](long t) {
    auto rng = substream(seed, static_cast<std::uint64_t>(t));
    auto opts = options;
    opts.seed = splitmix64(seed ^ static_cast<std::uint64_t>(t));
    audits[static_cast<std::size_t>(t)] = audit_greedy(sample_point_set(n, rng, precision), opts);
  });
  auto out = open_out(out_path);
  out << "n,total_bits,sum_L_minus_1,sum_U,max_k\n";
  long failures = 0;
  for (const auto& a : audits) {
    out << a.n << ',' << a.total_bits << ',' << a.sum_L_minus_1 << ',';
    if (a.U_infinite) {
      out << "inf";
    } else {
      out << a.sum_U;
    }
    out << ',' << a.max_k << '\n';
    if (!a.correct || !a.sandwich) ++failures;
  }
  std::cout << json{{"trials", trials}, {"failures", failures}}.dump() << '\n';
  return failures == 0 ? 0 : 1;
}

int cmd_stats(const std::string& points_path, const std::string& out_path) {
  const auto points = load_points(points_path);
  const auto U = stat_U_all(points);
  const auto L = stat_L_all(points);
  auto out = open_out(out_path);
  out << "i,L,U\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    out << i << ',' << L[i] << ',';
    if (U[i].infinite()) {
      out << (U[i].precision_exhausted ? "inf_precision" : "inf");
    } else {
      out << U[i].value;
    }
    out << '\n';
  }
  return 0;
}

int cmd_census(const CensusOptions& options, const std::string& out_path, std::string ranks_path,
               bool merged) {
  const auto state = run_census(options);
  {
    auto out = open_out(out_path);
    state.write_windows_csv(out);
  }
  if (ranks_path.empty()) ranks_path = sibling_path(out_path, "_ranks.csv");
  {
    auto out = open_out(ranks_path);
    state.write_rank_csv(out, 1000, merged);
  }
  json summary{{"n", state.n},
               {"samples", state.samples},
               {"distinct", state.distinct()},
               {"distinct_mirror_merged", state.merged_counts.size()},
               {"top_frequency", state.top_frequency()},
               {"top_frequency_mirror_merged", state.top_frequency(true)},
               {"rejections", state.rejections},
               {"generator", kGeneratorFamily},
               {"seed", options.seed},
               {"budget_exceeded", state.budget_exceeded}};
  if (state.audit) summary["audit_collisions"] = state.audit_collisions;
  std::cout << summary.dump() << '\n';
  if (state.budget_exceeded) {
    throw MemoryBudgetExceeded("census stopped after " + std::to_string(state.samples) +
                               " samples: more than " + std::to_string(options.max_types) + " types");
  }
  return state.audit && state.audit_collisions != 0 ? 1 : 0;
}

int cmd_collide(const CollisionOptions& options, const std::string& out_path) {
  const auto run = run_collision(options);
  auto out = open_out(out_path);
  run.write_csv(out);
  std::cout << json{{"n", run.n},
                    {"trials", run.times.size()},
                    {"mean", run.mean()},
                    {"median", run.median()},
                    {"rejections", run.rejections},
                    {"generator", kGeneratorFamily},
                    {"seed", options.seed}}
                   .dump()
            << '\n';
  return 0;
}

int cmd_verify(const std::string& suite, std::vector<int> ns, long trials, std::uint64_t seed,
               const std::string& out_path, std::string dump_path) {
  if (suite == "U" || suite == "L" || suite == "greedy") {
    const auto kind = suite == "U" ? BoundSuite::U : suite == "L" ? BoundSuite::L : BoundSuite::Greedy;
    if (ns.empty()) ns = kind == BoundSuite::L ? std::vector<int>{64, 128} : std::vector<int>{16, 64, 256};
    const auto report = verify_bounds(kind, ns, trials, seed);
    auto out = open_out(out_path);
    report.write_csv(out);
    for (const auto& r : report.rows) {
      std::cout << (r.pass ? "PASS" : "FAIL") << ' ' << suite << " n=" << r.n << " k=" << r.k
                << " estimate=" << r.estimate << " stderr=" << r.stderr_ << " bound=" << r.bound << '\n';
    }
    if (report.rejections || report.precision_exhausted) {
      std::cout << "rejections=" << report.rejections << " precision_exhausted=" << report.precision_exhausted
                << '\n';
    }
    return report.all_pass() ? 0 : 1;
  }

  GeometryCheck check;
  if (suite == "butterfly") {
    check = verify_butterfly(trials, seed);
  } else if (suite == "cross") {
    check = verify_cross(trials, seed);
  } else if (suite == "anniv") {
    check = verify_anniv(trials, seed);
  } else {
    throw Error("unknown suite: " + suite);
  }
  {
    auto out = open_out(out_path);
    out << "suite,trials,checks,violations,pass\n"
        << check.suite << ',' << check.trials << ',' << check.checks << ',' << check.violations << ','
        << (check.pass() ? "true" : "false") << '\n';
  }
  if (dump_path.empty()) dump_path = sibling_path(out_path, "_counterexamples.jsonl");
  {
    auto dump = open_out(dump_path);
    for (const auto& line : check.counterexamples) dump << line << '\n';
  }
  std::cout << (check.pass() ? "PASS" : "FAIL") << ' ' << check.suite << " trials=" << check.trials
            << " checks=" << check.checks << " violations=" << check.violations << '\n';
  return check.pass() ? 0 : 1;
}

int cmd_rayleigh(const std::string& in_path, const std::string& out_path) {
  std::ifstream in(in_path);
  if (!in) throw Error("cannot read " + in_path);
  const auto times = read_collision_csv(in);
  const auto fit = rayleigh_fit_ks(times);
  const auto scale = collision_scale_estimate(times);
  const json out{{"samples", fit.samples},
                 {"sigma", fit.sigma},
                 {"ks_statistic", fit.ks_statistic},
                 {"p_value", fit.p_value},
                 {"p_value_note", "asymptotic Kolmogorov distribution; sigma fitted on the same data, so conservative"},
                 {"collision_scale_estimate", scale.estimate},
                 {"collision_scale_stderr", scale.stderr_}};
  auto file = open_out(out_path);
  file << out.dump(2) << '\n';
  std::cout << out.dump() << '\n';
  return 0;
}

int cmd_sample(int n, std::uint64_t seed, int precision, const std::string& out_path) {
  auto rng = substream(seed, 0);
  long rejections = 0;
  const auto points = sample_point_set(n, rng, precision, &rejections);
  auto out = open_out(out_path);
  write_point_set(out, points);
  if (rejections) std::cerr << "rejected " << rejections << " collinear draws\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random order types: exact geometry, greedy bit reading, census and collision experiments"};
  app.require_subcommand(1);

  std::string points_path, out_path, in_path, ranks_path, dump_path, tie = "first", suite;
  int n = 10, precision = kDefaultPrecision;
  long trials = 1, samples = 0, window = 1'000'000;
  std::uint64_t seed = 0;
  std::size_t max_types = 0;
  bool reduced = false, audit = false, merged = false;
  std::vector<int> ns;

  auto* sig = app.add_subcommand("signature", "Canonical signature of a point set");
  sig->add_option("--points", points_path, "Point set (JSON Lines)")->required();
  sig->add_flag("--reduced", reduced, "Also print the reduced signature");

  auto* greedy = app.add_subcommand("greedy", "Greedy bit reading on random point sets");
  greedy->add_option("--n", n)->required()->check(CLI::Range(3, 100000));
  greedy->add_option("--trials", trials)->required()->check(CLI::PositiveNumber);
  greedy->add_option("--seed", seed);
  greedy->add_option("--tie-break", tie)->check(CLI::IsMember({"first", "random", "max-degree"}));
  greedy->add_option("--precision", precision)->check(CLI::Range(1, kMaxPrecision));
  greedy->add_option("--out", out_path)->required();

  auto* stats = app.add_subcommand("stats", "U and L of every point of a set");
  stats->add_option("--points", points_path)->required();
  stats->add_option("--out", out_path)->required();

  auto* census = app.add_subcommand("census", "Order-type frequencies over random samples");
  census->add_option("--n", n)->required()->check(CLI::Range(3, 255));
  census->add_option("--samples", samples)->required()->check(CLI::PositiveNumber);
  auto* window_opt = census->add_option("--window", window)->check(CLI::PositiveNumber);
  census->add_option("--seed", seed);
  census->add_option("--precision", precision)->check(CLI::Range(1, kMaxPrecision));
  census->add_flag("--audit", audit, "Keep reduced signatures and check fingerprints");
  census->add_option("--max-types", max_types, "Stop after this many distinct types");
  census->add_option("--out", out_path, "Window CSV")->required();
  census->add_option("--ranks", ranks_path, "Rank table CSV (default: <out>_ranks.csv)");
  census->add_flag("--merged", merged, "Rank classes up to reflection");

  auto* collide = app.add_subcommand("collide", "First-collision times of order types");
  collide->add_option("--n", n)->required()->check(CLI::Range(3, 255));
  collide->add_option("--trials", trials)->required()->check(CLI::PositiveNumber);
  collide->add_option("--seed", seed);
  collide->add_option("--precision", precision)->check(CLI::Range(1, kMaxPrecision));
  collide->add_option("--out", out_path)->required();

  auto* verify = app.add_subcommand("verify", "Empirical checks of the probabilistic bounds");
  verify->add_option("--suite", suite)->required()->check(
      CLI::IsMember({"U", "L", "greedy", "butterfly", "cross", "anniv"}));
  verify->add_option("--trials", trials)->required()->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed);
  verify->add_option("--n", ns, "Point counts (U, L, greedy)");
  verify->add_option("--out", out_path)->required();
  verify->add_option("--dump", dump_path, "Counterexamples (default: <out>_counterexamples.jsonl)");

  auto* rayleigh = app.add_subcommand("rayleigh", "Rayleigh fit and KS test of collision times");
  rayleigh->add_option("--in", in_path)->required();
  rayleigh->add_option("--out", out_path)->required();

  auto* sample = app.add_subcommand("sample", "Write a random point set");
  sample->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  sample->add_option("--seed", seed);
  sample->add_option("--precision", precision)->check(CLI::Range(1, kMaxPrecision));
  sample->add_option("--out", out_path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sig) return cmd_signature(points_path, reduced);
    if (*greedy) return cmd_greedy(n, trials, seed, tie, precision, out_path);
    if (*stats) return cmd_stats(points_path, out_path);
    if (*census && window_opt->count() == 0) window = std::min(window, samples);
    if (*census) return cmd_census({n, samples, window, seed, precision, audit, max_types}, out_path, ranks_path, merged);
    if (*collide) return cmd_collide({n, trials, seed, precision}, out_path);
    if (*verify) return cmd_verify(suite, ns, trials, seed, out_path, dump_path);
    if (*rayleigh) return cmd_rayleigh(in_path, out_path);
    if (*sample) return cmd_sample(n, seed, precision, out_path);
  } catch (const MemoryBudgetExceeded& e) {
    std::cerr << "otlab: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "otlab: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
