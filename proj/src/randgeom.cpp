#include "otlab/randgeom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "otlab/error.hpp"

namespace otlab {

namespace {

std::int64_t floor_div(std::int64_t num, std::int64_t den) {
  if (den < 0) num = -num, den = -den;
  const std::int64_t q = num / den;
  return (num % den != 0 && num < 0) ? q - 1 : q;
}

class MemberTest {
 public:
  MemberTest(const Cell& p, const Cell& q)
      : bp_(p.grid_box()), bq_(q.grid_box()), small_(p.level < 29) {}

  bool operator()(std::int64_t i, std::int64_t j) const {
    const Box c{i, i + 1, j, j + 1};
    const auto range = small_ ? box_orientation_small(bp_, bq_, c) : box_orientation(bp_, bq_, c);
    return range == BoxOrientation::Undetermined;
  }

 private:
  Box bp_, bq_;
  bool small_;
};

}  // namespace

double Butterfly::area() const {
  return std::ldexp(static_cast<double>(cells.size()), -2 * level);
}

bool Butterfly::contains(const Cell& c) const {
  const auto key = [](const Cell& x) { return std::pair(x.i, x.j); };
  return std::binary_search(cells.begin(), cells.end(), c,
                            [&](const Cell& a, const Cell& b) { return key(a) < key(b); });
}

// For a fixed column, the rows a line through both source cells can reach
// form an interval, and the line through the two cell centers hits it. So
// each column is scanned outward from that seed until the test fails. When
// the cells are further apart vertically than horizontally the roles of rows
// and columns swap.
Butterfly butterfly_cells(const ExactPoint& p, const ExactPoint& q, int level, int precision) {
  if (level < 0 || level > precision) throw Error("butterfly level out of range");
  Butterfly out;
  out.level = level;
  out.source_p = cell_of(p, level, precision);
  out.source_q = cell_of(q, level, precision);
  const MemberTest member(out.source_p, out.source_q);

  const std::int64_t m = std::int64_t{1} << level;
  const auto pi = static_cast<std::int64_t>(out.source_p.i), pj = static_cast<std::int64_t>(out.source_p.j);
  const auto qi = static_cast<std::int64_t>(out.source_q.i), qj = static_cast<std::int64_t>(out.source_q.j);
  const bool by_column = std::abs(qi - pi) >= std::abs(qj - pj);
  // Primary coordinate u scans all lines; v is found per line.
  const std::int64_t du = by_column ? qi - pi : qj - pj;
  const std::int64_t dv = by_column ? qj - pj : qi - pi;
  const std::int64_t u0 = by_column ? pi : pj;
  const std::int64_t v0 = by_column ? pj : pi;
  const auto test = [&](std::int64_t u, std::int64_t v) { return by_column ? member(u, v) : member(v, u); };
  const auto emit = [&](std::int64_t u, std::int64_t v) {
    const auto i = static_cast<std::uint64_t>(by_column ? u : v);
    const auto j = static_cast<std::uint64_t>(by_column ? v : u);
    out.cells.push_back({level, i, j});
  };

  for (std::int64_t u = 0; u < m; ++u) {
    // Row of the center line at the center of column u.
    std::int64_t seed = v0;
    if (du != 0) seed = v0 + floor_div(2 * (u - u0) * dv + du, 2 * du);
    std::int64_t lo, hi;
    if (seed < 0 || seed >= m) {
      const std::int64_t start = seed < 0 ? 0 : m - 1;
      const std::int64_t step = seed < 0 ? 1 : -1;
      if (!test(u, start)) continue;
      std::int64_t end = start;
      while (end + step >= 0 && end + step < m && test(u, end + step)) end += step;
      lo = std::min(start, end), hi = std::max(start, end);
    } else {
      lo = hi = seed;
      while (lo > 0 && test(u, lo - 1)) --lo;
      while (hi + 1 < m && test(u, hi + 1)) ++hi;
    }
    for (std::int64_t v = lo; v <= hi; ++v) emit(u, v);
  }
  std::sort(out.cells.begin(), out.cells.end(),
            [](const Cell& a, const Cell& b) { return std::pair(a.i, a.j) < std::pair(b.i, b.j); });
  return out;
}

double cell_center_distance(const Cell& a, const Cell& b) {
  const double dx = static_cast<double>(a.i) - static_cast<double>(b.i);
  const double dy = static_cast<double>(a.j) - static_cast<double>(b.j);
  return std::ldexp(std::hypot(dx, dy), -a.level);
}

double butterfly_area_bound(int level, double center_distance) {
  const double m = std::ldexp(1.0, level);
  if (center_distance == 0) return std::numeric_limits<double>::infinity();
  return 6.0 / m + 4.0 / (m * center_distance);
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::array<std::array<int, 2>, 4> kDiagonals = {{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}};

std::array<std::int64_t, 2> rotate_cw(std::array<std::int64_t, 2> v, int turns) {
  for (int t = 0; t < turns; ++t) v = {v[1], -v[0]};
  return v;
}

std::array<std::int64_t, 2> rotate_ccw(std::array<std::int64_t, 2> v, int turns) {
  for (int t = 0; t < turns; ++t) v = {-v[1], v[0]};
  return v;
}

Wide cross(const std::array<std::int64_t, 2>& d, const std::array<std::int64_t, 2>& v) {
  return static_cast<Wide>(d[0]) * v[1] - static_cast<Wide>(d[1]) * v[0];
}

}  // namespace

SectorFrame::SectorFrame(const ExactPoint& apex, int precision, int sectors)
    : apex_(apex), precision_(precision), sectors_(sectors) {
  if (sectors < 1) throw Error("sector count must be positive");
  if (precision < 1 || precision > kMaxPrecision) throw Error("precision out of range");
  const auto one = std::int64_t{1} << precision;
  const auto x = static_cast<std::int64_t>(apex.x), y = static_cast<std::int64_t>(apex.y);
  std::int64_t best = -1;
  for (int q = 0; q < 4; ++q) {
    const auto& d = kDiagonals[static_cast<std::size_t>(q)];
    const std::int64_t room = std::min(d[0] > 0 ? one - x : x, d[1] > 0 ? one - y : y);
    if (room > best) best = room, quarter_turns_ = q;
  }

  boundaries_.reserve(static_cast<std::size_t>(sectors) + 1);
  const double scale = std::ldexp(1.0, kDirectionBits);
  for (int j = 0; j <= sectors; ++j) {
    const double phi = std::numbers::pi / 8 + j * std::numbers::pi / (4.0 * sectors);
    boundaries_.push_back({std::llround(std::cos(phi) * scale), std::llround(std::sin(phi) * scale)});
  }
}

std::array<int, 2> SectorFrame::diagonal() const {
  return kDiagonals[static_cast<std::size_t>(quarter_turns_)];
}

std::array<std::int64_t, 2> SectorFrame::to_local(const ExactPoint& p) const {
  const std::array<std::int64_t, 2> v{static_cast<std::int64_t>(p.x) - static_cast<std::int64_t>(apex_.x),
                                      static_cast<std::int64_t>(p.y) - static_cast<std::int64_t>(apex_.y)};
  return rotate_cw(v, quarter_turns_);
}

std::optional<ExactPoint> SectorFrame::from_local(std::int64_t x, std::int64_t y) const {
  const auto v = rotate_ccw({x, y}, quarter_turns_);
  const auto one = std::int64_t{1} << precision_;
  const std::int64_t gx = static_cast<std::int64_t>(apex_.x) + v[0];
  const std::int64_t gy = static_cast<std::int64_t>(apex_.y) + v[1];
  if (gx < 0 || gy < 0 || gx >= one || gy >= one) return std::nullopt;
  return ExactPoint{static_cast<std::uint64_t>(gx), static_cast<std::uint64_t>(gy)};
}

double SectorFrame::boundary_angle(int j) const {
  const auto& d = boundary(j);
  return std::atan2(static_cast<double>(d[1]), static_cast<double>(d[0]));
}

std::optional<Region> SectorFrame::region_of(const ExactPoint& p) const {
  const auto v = to_local(p);
  if (v[0] == 0 && v[1] == 0) return std::nullopt;
  const std::int64_t half = std::int64_t{1} << (precision_ - 1);
  if (std::abs(v[0]) > half || std::abs(v[1]) > half) return std::nullopt;

  const Wide r2 = static_cast<Wide>(v[0]) * v[0] + static_cast<Wide>(v[1]) * v[1];
  const Wide unit2 = Wide{1} << (2 * precision_);
  Color color;
  if (25 * r2 < unit2) {
    color = Color::Blue;
  } else if (100 * r2 >= 9 * unit2 && 100 * r2 < 16 * unit2) {
    color = Color::Red;
  } else {
    return std::nullopt;
  }

  if (cross(boundaries_.front(), v) < 0 || cross(boundaries_.back(), v) >= 0) return std::nullopt;
  // Largest j < s with v on or counterclockwise of ray j.
  int lo = 0, hi = sectors_ - 1;
  while (lo < hi) {
    const int mid = (lo + hi + 1) / 2;
    if (cross(boundaries_[static_cast<std::size_t>(mid)], v) >= 0) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return Region{color, lo + 1};
}

double SectorFrame::region_area(Region r) const {
  const double width = boundary_angle(r.index) - boundary_angle(r.index - 1);
  if (r.color == Color::Blue) return 0.5 * kBlueRadius * kBlueRadius * width;
  return 0.5 * (kRedOuterRadius * kRedOuterRadius - kRedInnerRadius * kRedInnerRadius) * width;
}

bool SectorFrame::inside_unit_square() const {
  const double extent = kRedOuterRadius * std::cos(std::numbers::pi / 8);
  const auto one = std::int64_t{1} << precision_;
  const auto x = static_cast<std::int64_t>(apex_.x), y = static_cast<std::int64_t>(apex_.y);
  const auto d = diagonal();
  const double room_x = std::ldexp(static_cast<double>(d[0] > 0 ? one - 1 - x : x), -precision_);
  const double room_y = std::ldexp(static_cast<double>(d[1] > 0 ? one - 1 - y : y), -precision_);
  return std::min(room_x, room_y) >= extent;
}

ExactPoint SectorFrame::sample_in(Region r, std::mt19937_64& rng) const {
  if (r.index < 1 || r.index > sectors_) throw Error("region index out of range");
  const double r_lo = r.color == Color::Blue ? 0.0 : kRedInnerRadius;
  const double r_hi = r.color == Color::Blue ? kBlueRadius : kRedOuterRadius;
  const double a_lo = boundary_angle(r.index - 1), a_hi = boundary_angle(r.index);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int attempt = 0; attempt < 1'000'000; ++attempt) {
    const double rad = std::sqrt(r_lo * r_lo + unit(rng) * (r_hi * r_hi - r_lo * r_lo));
    const double ang = a_lo + unit(rng) * (a_hi - a_lo);
    const auto x = std::llround(std::ldexp(rad * std::cos(ang), precision_));
    const auto y = std::llround(std::ldexp(rad * std::sin(ang), precision_));
    const auto p = from_local(x, y);
    if (p && region_of(*p) == r) return *p;
  }
  throw Error("could not place a point in the requested region");
}

std::optional<std::array<int, 2>> anniv_witness(const SectorFrame& frame,
                                                std::span<const ExactPoint> points) {
  const auto s = static_cast<std::size_t>(frame.sectors());
  std::vector<char> blue(s + 2, 0), red(s + 2, 0);
  for (const auto& p : points) {
    const auto region = frame.region_of(p);
    if (!region) continue;
    (region->color == Color::Blue ? blue : red)[static_cast<std::size_t>(region->index)] = 1;
  }
  int below = 0, above = 0;
  for (std::size_t i = 1; i < s && below == 0; ++i) {
    if (blue[i] && red[i + 1]) below = static_cast<int>(i);
  }
  for (std::size_t i = 2; i <= s && above == 0; ++i) {
    if (blue[i] && red[i - 1]) above = static_cast<int>(i);
  }
  if (below == 0 || above == 0) return std::nullopt;
  return std::array<int, 2>{below, above};
}

std::optional<CrossGap> cross_gap(const SectorFrame& frame, const ExactPoint& b, const ExactPoint& r) {
  const auto lb = frame.to_local(b), lr = frame.to_local(r);
  Wide den = static_cast<Wide>(lr[0]) - lb[0];
  if (den == 0) return std::nullopt;
  Wide num = cross(lb, lr);
  if (den < 0) num = -num, den = -den;
  const long double value = std::ldexp(static_cast<long double>(num) / static_cast<long double>(den),
                                       -frame.precision());
  return CrossGap{num, den, static_cast<double>(value)};
}

bool slope_at_least_tan_pi_8(const SectorFrame& frame, const ExactPoint& b, const ExactPoint& r) {
  const auto lb = frame.to_local(b), lr = frame.to_local(r);
  Wide dx = static_cast<Wide>(lr[0]) - lb[0];
  Wide dy = static_cast<Wide>(lr[1]) - lb[1];
  if (dx == 0) return true;
  if (dx < 0) dx = -dx, dy = -dy;
  // dy / dx >= sqrt(2) - 1  <=>  dy + dx >= sqrt(2) dx.
  const Wide t = dy + dx;
  return t >= 0 && t * t >= 2 * dx * dx;
}

}  // namespace otlab
