#pragma once

// Greedy bit reading for chirotopes, and the statistics U and L that bound
// the number of coordinate bits any such reading needs.

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "otlab/bitcoords.hpp"
#include "otlab/chirotope.hpp"

namespace otlab {

enum class TieBreak : std::uint8_t {
  /// Lowest index among the coarsest points of the triple.
  FirstFound,
  /// Uniform among the coarsest points, from a seeded generator.
  Random,
  /// The coarsest point involved in the most unresolved triples.
  MaxDegree,
};

struct GreedyStep {
  long step = 0;
  int refined = 0;
  std::array<int, 3> triple{};
};

struct GreedyResult {
  Chirotope chirotope;
  PrecisionState precision;
  /// Bits read from each coordinate of point i.
  std::vector<int> bits;
  std::vector<GreedyStep> trace;

  /// Total coordinate bits read, 2 * sum(bits).
  long total_bits() const { return precision.total_bits(); }
};

struct GreedyOptions {
  TieBreak tie_break = TieBreak::FirstFound;
  std::uint64_t seed = 0;
  bool record_trace = false;
};

/// Refines points until every triple's orientation is fixed by the known
/// cells. Throws NonGeneric when a triple stays undetermined after all bits
/// of its points are known.
GreedyResult greedy_chirotope(const PointSet& points, const GreedyOptions& options = {});

inline constexpr int kInfiniteLevel = std::numeric_limits<int>::max();

struct UStat {
  /// kInfiniteLevel when p_i is collinear with two other points or when some
  /// triple still admits a transversal at level B.
  int value = kInfiniteLevel;
  /// Set when the search hit level B without resolving every pair.
  bool precision_exhausted = false;

  bool infinite() const { return value == kInfiniteLevel; }
};

/// Smallest k such that no pair a, b != i has cells at level k that a line
/// can cross together with the cell of p_i.
UStat stat_U(const PointSet& points, int i);
std::vector<UStat> stat_U_all(const PointSet& points);

/// Smallest k such that a closed axis-parallel segment of length 2^-k from
/// p_i misses every line through two other points. Throws NonGeneric.
int stat_L(const PointSet& points, int i);
std::vector<int> stat_L_all(const PointSet& points);

}  // namespace otlab
