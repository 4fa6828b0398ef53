#include "otlab/exactgeom.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "otlab/error.hpp"

namespace otlab {

NonGeneric::NonGeneric(int a_, int b_, int c_)
    : Error("collinear triple (" + std::to_string(a_) + ", " + std::to_string(b_) + ", " +
            std::to_string(c_) + ")"),
      a(a_),
      b(b_),
      c(c_) {}

void PointSet::validate() const {
  if (precision < 1 || precision > kMaxPrecision) {
    throw Error("precision must lie in [1, " + std::to_string(kMaxPrecision) + "], got " +
                std::to_string(precision));
  }
  const std::uint64_t limit = std::uint64_t{1} << precision;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].x >= limit || points[i].y >= limit) {
      throw Error("point " + std::to_string(i) + " has a mantissa outside [0, 2^B)");
    }
  }
}

PointSet PointSet::mirrored() const {
  PointSet out{precision, points};
  const std::uint64_t top = (std::uint64_t{1} << precision) - 1;
  for (auto& p : out.points) p.y = top - p.y;
  return out;
}

namespace {

int bit_width(Wide v) {
  const auto u = static_cast<unsigned __int128>(v);
  const auto hi = static_cast<std::uint64_t>(u >> 64);
  if (hi != 0) return 64 + std::bit_width(hi);
  return std::bit_width(static_cast<std::uint64_t>(u));
}

}  // namespace

double RayParameter::to_double(int precision) const {
  return static_cast<double>(num) / static_cast<double>(den) / std::ldexp(1.0, precision);
}

bool RayParameter::exceeds_pow2(int k, int precision) const {
  // 2^-k < num / (den 2^B)  <=>  den 2^(B-k) < num
  if (k <= precision) return (den << (precision - k)) < num;
  const int e = k - precision;
  if (e >= 127) return true;
  return num > (den >> e);
}

int RayParameter::clearance_level(int precision) const {
  // t lies within a factor 4 of 2^(width(num) - width(den) - B).
  int k = precision + bit_width(den) - bit_width(num) - 2;
  if (k < 0) k = 0;
  while (k > 0 && exceeds_pow2(k - 1, precision)) --k;
  while (!exceeds_pow2(k, precision)) ++k;
  return k;
}

std::optional<RayParameter> ray_clearance(const ExactPoint& origin, RayDirection dir,
                                          const ExactPoint& p, const ExactPoint& q) {
  const Wide f0 = orientation_det(p, q, origin);
  if (f0 == 0) throw OriginOnLine();
  const Wide dx = static_cast<Wide>(q.x) - static_cast<Wide>(p.x);
  const Wide dy = static_cast<Wide>(q.y) - static_cast<Wide>(p.y);
  // d/dt det(q - p, origin + t e - p) = dx e_y - dy e_x
  Wide slope = 0;
  switch (dir) {
    case RayDirection::PosX: slope = -dy; break;
    case RayDirection::NegX: slope = dy; break;
    case RayDirection::PosY: slope = dx; break;
    case RayDirection::NegY: slope = -dx; break;
  }
  if (slope == 0) return std::nullopt;
  // f0 + t slope = 0 has a positive root iff the signs differ.
  if ((f0 > 0) == (slope > 0)) return std::nullopt;
  return RayParameter{f0 > 0 ? f0 : -f0, slope > 0 ? slope : -slope};
}

}  // namespace otlab
