#pragma once

// Exact planar predicates on dyadic points.
//
// A point stores two integer mantissas; its coordinates are mantissa / 2^B
// for the precision B of the point set it belongs to. Every predicate works
// on the mantissas directly and is exact: orientation determinants are
// evaluated in 128-bit integers, which holds for any B <= kMaxPrecision.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace otlab {

using Wide = __int128;

inline constexpr int kDefaultPrecision = 52;
inline constexpr int kMaxPrecision = 60;

struct ExactPoint {
  std::uint64_t x = 0;
  std::uint64_t y = 0;

  friend bool operator==(const ExactPoint&, const ExactPoint&) = default;
};

/// A sequence of points sharing one precision B.
struct PointSet {
  int precision = kDefaultPrecision;
  std::vector<ExactPoint> points;

  std::size_t size() const { return points.size(); }
  const ExactPoint& operator[](std::size_t i) const { return points[i]; }

  /// Throws otlab::Error if B is out of range or a mantissa is >= 2^B.
  void validate() const;
  /// Mirror image across the horizontal midline (y -> 1 - 2^-B - y).
  PointSet mirrored() const;
};

enum class Sign : std::int8_t { Negative = -1, Zero = 0, Positive = 1 };

constexpr int to_int(Sign s) { return static_cast<int>(s); }
constexpr Sign negate(Sign s) { return static_cast<Sign>(-static_cast<int>(s)); }
template <class T>
constexpr Sign sign_of(T v) {
  return static_cast<Sign>(static_cast<int>(v > 0) - static_cast<int>(v < 0));
}

/// Twice the signed area of (a, b, c), in mantissa units.
inline Wide orientation_det(const ExactPoint& a, const ExactPoint& b, const ExactPoint& c) {
  // Mantissas are below 2^60, so differences fit in 64 bits and each
  // product is a single widening multiply.
  const auto abx = static_cast<std::int64_t>(b.x) - static_cast<std::int64_t>(a.x);
  const auto aby = static_cast<std::int64_t>(b.y) - static_cast<std::int64_t>(a.y);
  const auto acx = static_cast<std::int64_t>(c.x) - static_cast<std::int64_t>(a.x);
  const auto acy = static_cast<std::int64_t>(c.y) - static_cast<std::int64_t>(a.y);
  return static_cast<Wide>(abx) * acy - static_cast<Wide>(aby) * acx;
}

/// +1 if (a, b, c) turns counterclockwise, -1 if clockwise, 0 if flat.
inline Sign orient(const ExactPoint& a, const ExactPoint& b, const ExactPoint& c) {
  return sign_of(orientation_det(a, b, c));
}

/// Closed axis-aligned box with integer corners. The unit is chosen by the
/// caller (2^-B for point-set boxes, 2^-k for cells of level k); all boxes
/// passed to one predicate must share it.
struct Box {
  std::int64_t x_lo = 0, x_hi = 0, y_lo = 0, y_hi = 0;

  static Box point(const ExactPoint& p) {
    const auto x = static_cast<std::int64_t>(p.x);
    const auto y = static_cast<std::int64_t>(p.y);
    return {x, x, y, y};
  }
  bool contains(const ExactPoint& p) const {
    const auto x = static_cast<std::int64_t>(p.x);
    const auto y = static_cast<std::int64_t>(p.y);
    return x_lo <= x && x <= x_hi && y_lo <= y && y <= y_hi;
  }
  bool contains(const Box& o) const {
    return x_lo <= o.x_lo && o.x_hi <= x_hi && y_lo <= o.y_lo && o.y_hi <= y_hi;
  }
  bool valid() const { return x_lo <= x_hi && y_lo <= y_hi; }
  bool degenerate() const { return x_lo == x_hi && y_lo == y_hi; }

  friend bool operator==(const Box&, const Box&) = default;
};

/// Range of the orientation determinant over all placements of one point in
/// each box.
enum class BoxOrientation : std::int8_t { Negative = -1, Undetermined = 0, Positive = 1 };

namespace detail {

// The determinant ax(by - cy) + bx(cy - ay) + cx(ay - by) is affine in every
// coordinate, so its extremes over the box product sit at corners. For each
// of the 8 choices of y-corners the x-terms separate, leaving 8 exact
// evaluations of the minimum and maximum.
template <class T>
BoxOrientation orientation_range(const Box& a, const Box& b, const Box& c) {
  const T ax[2] = {a.x_lo, a.x_hi};
  const T bx[2] = {b.x_lo, b.x_hi};
  const T cx[2] = {c.x_lo, c.x_hi};
  const T ay[2] = {a.y_lo, a.y_hi};
  const T by[2] = {b.y_lo, b.y_hi};
  const T cy[2] = {c.y_lo, c.y_hi};
  bool seen_nonpos = false;
  bool seen_nonneg = false;
  for (int m = 0; m < 8; ++m) {
    const T ya = ay[m & 1];
    const T yb = by[(m >> 1) & 1];
    const T yc = cy[(m >> 2) & 1];
    const T k0 = yb - yc;
    const T k1 = yc - ya;
    const T k2 = ya - yb;
    const T lo = (k0 >= 0 ? k0 * ax[0] : k0 * ax[1]) + (k1 >= 0 ? k1 * bx[0] : k1 * bx[1]) +
                 (k2 >= 0 ? k2 * cx[0] : k2 * cx[1]);
    const T hi = (k0 >= 0 ? k0 * ax[1] : k0 * ax[0]) + (k1 >= 0 ? k1 * bx[1] : k1 * bx[0]) +
                 (k2 >= 0 ? k2 * cx[1] : k2 * cx[0]);
    seen_nonpos = seen_nonpos || lo <= 0;
    seen_nonneg = seen_nonneg || hi >= 0;
    if (seen_nonpos && seen_nonneg) return BoxOrientation::Undetermined;
  }
  return seen_nonneg ? BoxOrientation::Positive : BoxOrientation::Negative;
}

}  // namespace detail

/// Coordinates up to 2^61 in magnitude.
inline BoxOrientation box_orientation(const Box& a, const Box& b, const Box& c) {
  return detail::orientation_range<Wide>(a, b, c);
}

/// Same as box_orientation, restricted to coordinates of magnitude < 2^30.
inline BoxOrientation box_orientation_small(const Box& a, const Box& b, const Box& c) {
  return detail::orientation_range<std::int64_t>(a, b, c);
}

/// True iff a single straight line meets all three closed boxes.
inline bool box_transversal(const Box& a, const Box& b, const Box& c) {
  return box_orientation(a, b, c) == BoxOrientation::Undetermined;
}

enum class RayDirection : std::uint8_t { PosX, NegX, PosY, NegY };
inline constexpr std::array<RayDirection, 4> kRayDirections = {
    RayDirection::PosX, RayDirection::NegX, RayDirection::PosY, RayDirection::NegY};

/// Positive ray parameter t = num / den in mantissa units, i.e. the real
/// distance is num / (den * 2^B).
struct RayParameter {
  Wide num = 0;
  Wide den = 1;

  double to_double(int precision) const;
  /// true iff 2^-k < t (real units).
  bool exceeds_pow2(int k, int precision) const;
  /// Smallest k >= 0 with 2^-k < t.
  int clearance_level(int precision) const;
};

/// Where origin + t * dir crosses the line through p and q, for t > 0.
/// nullopt means the ray never meets the line. Throws OriginOnLine.
std::optional<RayParameter> ray_clearance(const ExactPoint& origin, RayDirection dir,
                                          const ExactPoint& p, const ExactPoint& q);

}  // namespace otlab
