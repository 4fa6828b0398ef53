#pragma once

// Regions used in the probabilistic analysis of U and L: butterflies of two
// grid cells, and the frame of blue and red sectors around a point.

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "otlab/bitcoords.hpp"

namespace otlab {

/// All cells of level k that some line crosses together with the cells of p
/// and q.
struct Butterfly {
  int level = 0;
  Cell source_p;
  Cell source_q;
  /// Sorted by (i, j).
  std::vector<Cell> cells;

  std::size_t size() const { return cells.size(); }
  /// |cells| / 4^level.
  double area() const;
  bool contains(const Cell& c) const;
};

Butterfly butterfly_cells(const ExactPoint& p, const ExactPoint& q, int level, int precision);

/// Distance between the centers of two cells of the same level, in unit-square units.
double cell_center_distance(const Cell& a, const Cell& b);
/// 6/m + 4/(m * delta), infinite when delta = 0.
double butterfly_area_bound(int level, double center_distance);

// ---------------------------------------------------------------------------

inline constexpr double kBlueRadius = 0.2;
inline constexpr double kRedInnerRadius = 0.3;
inline constexpr double kRedOuterRadius = 0.4;

enum class Color : std::uint8_t { Blue, Red };

struct Region {
  Color color = Color::Blue;
  /// 1-based, counterclockwise.
  int index = 1;

  friend bool operator==(const Region&, const Region&) = default;
};

/// s blue sectors (disk of radius 0.2 around the apex) and s red sectors
/// (annulus 0.3 to 0.4) tiling the cone of half-angle pi/8 around the
/// diagonal direction with the most room inside the unit square.
///
/// Queries work in a local frame rotated by whole quarter turns so that the
/// diagonal is (1, 1); rotation is exact on mantissas.
class SectorFrame {
 public:
  /// Fixed-point scale of the boundary ray directions.
  static constexpr int kDirectionBits = 50;

  SectorFrame(const ExactPoint& apex, int precision, int sectors);

  const ExactPoint& apex() const { return apex_; }
  int precision() const { return precision_; }
  int sectors() const { return sectors_; }
  /// Number of counterclockwise quarter turns taking (1, 1) to the diagonal.
  int quarter_turns() const { return quarter_turns_; }
  std::array<int, 2> diagonal() const;

  /// Offset p - apex rotated into the local frame, in mantissa units.
  std::array<std::int64_t, 2> to_local(const ExactPoint& p) const;
  /// Inverse of to_local; nullopt if the result leaves [0, 2^B)^2.
  std::optional<ExactPoint> from_local(std::int64_t x, std::int64_t y) const;

  /// Boundary ray j (0..s), local frame, scaled by 2^kDirectionBits.
  const std::array<std::int64_t, 2>& boundary(int j) const { return boundaries_[static_cast<std::size_t>(j)]; }
  double boundary_angle(int j) const;

  /// Membership for points other than the apex. Sectors are half-open: a
  /// point on the ray shared by sectors i and i+1 belongs to i+1. Radial
  /// bounds are closed inside and open outside.
  std::optional<Region> region_of(const ExactPoint& p) const;

  /// Area of sector region i computed from its boundary rays.
  double region_area(Region r) const;
  static double blue_area_constant() { return 3.14159265358979323846 / 200.0; }
  static double red_area_constant() { return 7.0 * 3.14159265358979323846 / 800.0; }

  /// True if the whole outer cone (radius 0.4) lies in the unit square.
  bool inside_unit_square() const;

  /// A uniformly placed point of the region (rejection on exact membership).
  ExactPoint sample_in(Region r, std::mt19937_64& rng) const;

 private:
  ExactPoint apex_;
  int precision_;
  int sectors_;
  int quarter_turns_ = 0;
  std::vector<std::array<std::int64_t, 2>> boundaries_;
};

inline SectorFrame sector_frame(const ExactPoint& apex, int precision, int sectors) {
  return SectorFrame(apex, precision, sectors);
}

/// Indices (i, i') with B_i, R_{i+1}, B_{i'}, R_{i'-1} all occupied by points
/// other than the apex, the smallest such i and then i'.
std::optional<std::array<int, 2>> anniv_witness(const SectorFrame& frame,
                                                std::span<const ExactPoint> points);

/// Signed distance from the apex down to the line (b r) along the local
/// downward vertical (positive: the line passes below the apex), as an exact
/// fraction in mantissa units. nullopt if the line is parallel to that ray.
struct CrossGap {
  Wide num = 0;
  Wide den = 1;
  double value = 0;  // unit-square units
};
std::optional<CrossGap> cross_gap(const SectorFrame& frame, const ExactPoint& b, const ExactPoint& r);

/// Exact test that the line (b r) has local slope >= tan(pi/8) = sqrt(2) - 1.
bool slope_at_least_tan_pi_8(const SectorFrame& frame, const ExactPoint& b, const ExactPoint& r);

}  // namespace otlab
