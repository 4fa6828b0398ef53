#include "otlab/greedy.hpp"

#include <algorithm>
#include <random>

#include "otlab/error.hpp"

namespace otlab {

GreedyResult greedy_chirotope(const PointSet& points, const GreedyOptions& options) {
  points.validate();
  const int n = static_cast<int>(points.size());
  if (n < 3) throw Error("greedy_chirotope needs at least 3 points");
  const int precision = points.precision;

  GreedyResult result{Chirotope(n), PrecisionState(points), std::vector<int>(n, 0), {}};
  auto& state = result.precision;
  auto& bits = result.bits;
  std::vector<Box> boxes;
  boxes.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) boxes.push_back(state.known_cell(i));

  std::vector<long> pending;
  if (options.tie_break == TieBreak::MaxDegree) {
    pending.assign(static_cast<std::size_t>(n), static_cast<long>(n - 1) * (n - 2) / 2);
  }
  std::mt19937_64 rng(options.seed);
  long step = 0;

  // Triples are visited once in lexicographic order and refined until
  // determined. Refinement only shrinks cells, so a determined triple never
  // needs to be revisited.
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int c = b + 1; c < n; ++c) {
        for (;;) {
          const auto range = box_orientation(boxes[a], boxes[b], boxes[c]);
          if (range != BoxOrientation::Undetermined) {
            result.chirotope.set(a, b, c, static_cast<Sign>(range));
            if (!pending.empty()) --pending[a], --pending[b], --pending[c];
            break;
          }
          const int coarsest = std::min({bits[a], bits[b], bits[c]});
          if (coarsest == precision) throw NonGeneric(a, b, c);

          std::array<int, 3> ties{};
          int count = 0;
          for (const int p : {a, b, c}) {
            if (bits[p] == coarsest) ties[count++] = p;
          }
          int pick = ties[0];
          switch (options.tie_break) {
            case TieBreak::FirstFound:
              break;
            case TieBreak::Random:
              pick = ties[std::uniform_int_distribution<int>(0, count - 1)(rng)];
              break;
            case TieBreak::MaxDegree:
              for (int t = 1; t < count; ++t) {
                if (pending[ties[t]] > pending[pick]) pick = ties[t];
              }
              break;
          }

          state.refine(pick);
          ++bits[pick];
          boxes[pick] = state.known_cell(pick);
          if (options.record_trace) result.trace.push_back({step, pick, {a, b, c}});
          ++step;
        }
      }
    }
  }
  return result;
}

namespace {

bool cells_transversal(const PointSet& points, int level, int i, int a, int b) {
  const int precision = points.precision;
  const Box ci = cell_of(points[i], level, precision).grid_box();
  const Box ca = cell_of(points[a], level, precision).grid_box();
  const Box cb = cell_of(points[b], level, precision).grid_box();
  const auto range = level < 30 ? box_orientation_small(ci, ca, cb) : box_orientation(ci, ca, cb);
  return range == BoxOrientation::Undetermined;
}

}  // namespace

UStat stat_U(const PointSet& points, int i) {
  const int n = static_cast<int>(points.size());
  if (n < 3) throw Error("stat_U needs at least 3 points");
  const int precision = points.precision;

  for (int a = 0; a < n; ++a) {
    if (a == i) continue;
    for (int b = a + 1; b < n; ++b) {
      if (b == i) continue;
      if (orient(points[i], points[a], points[b]) == Sign::Zero) return {};
    }
  }

  // Non-transversality is monotone in the level, so U(i) is the maximum over
  // pairs of the first level separating that pair.
  int level = 0;
  for (int a = 0; a < n; ++a) {
    if (a == i) continue;
    for (int b = a + 1; b < n; ++b) {
      if (b == i) continue;
      while (cells_transversal(points, level, i, a, b)) {
        if (level == precision) return {kInfiniteLevel, true};
        ++level;
      }
    }
  }
  return {level, false};
}

std::vector<UStat> stat_U_all(const PointSet& points) {
  std::vector<UStat> out;
  out.reserve(points.size());
  for (int i = 0; i < static_cast<int>(points.size()); ++i) out.push_back(stat_U(points, i));
  return out;
}

int stat_L(const PointSet& points, int i) {
  const int n = static_cast<int>(points.size());
  if (n < 3) throw Error("stat_L needs at least 3 points");
  const int precision = points.precision;
  const auto& origin = points[i];

  int best = kInfiniteLevel;
  for (const auto dir : kRayDirections) {
    int level = 0;
    for (int a = 0; a < n; ++a) {
      if (a == i) continue;
      for (int b = a + 1; b < n; ++b) {
        if (b == i) continue;
        std::optional<RayParameter> t;
        try {
          t = ray_clearance(origin, dir, points[a], points[b]);
        } catch (const OriginOnLine&) {
          throw NonGeneric(i, a, b);
        }
        if (t && !t->exceeds_pow2(level, precision)) level = t->clearance_level(precision);
      }
    }
    best = std::min(best, level);
  }
  return best;
}

std::vector<int> stat_L_all(const PointSet& points) {
  std::vector<int> out;
  out.reserve(points.size());
  for (int i = 0; i < static_cast<int>(points.size()); ++i) out.push_back(stat_L(points, i));
  return out;
}

}  // namespace otlab
