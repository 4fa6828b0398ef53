#pragma once

// Coordinates as bit streams read most-significant first.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "otlab/exactgeom.hpp"

namespace otlab {

enum class Axis : std::uint8_t { X, Y };

/// Cell (i, j) of the 2^level x 2^level grid of the unit square.
struct Cell {
  int level = 0;
  std::uint64_t i = 0;
  std::uint64_t j = 0;

  /// Closed box in units of 2^-precision.
  Box box(int precision) const;
  /// Closed box in units of 2^-level, i.e. [i, i+1] x [j, j+1].
  Box grid_box() const {
    const auto x = static_cast<std::int64_t>(i);
    const auto y = static_cast<std::int64_t>(j);
    return {x, x + 1, y, y + 1};
  }

  friend bool operator==(const Cell&, const Cell&) = default;
};

/// The cell of level k whose half-open box contains p (k <= precision).
inline Cell cell_of(const ExactPoint& p, int level, int precision) {
  const int shift = precision - level;
  return {level, p.x >> shift, p.y >> shift};
}

/// A mantissa of `precision` bits of which the top `revealed` are known.
class BitCoordinate {
 public:
  BitCoordinate() = default;
  BitCoordinate(std::uint64_t mantissa, int precision) : mantissa_(mantissa), precision_(precision) {}

  int revealed() const { return revealed_; }
  bool exhausted() const { return revealed_ == precision_; }
  /// Known top bits as an integer of `revealed()` bits.
  std::uint64_t prefix() const {
    return revealed_ == 0 ? 0 : mantissa_ >> (precision_ - revealed_);
  }
  /// Reads the next bit. Past the last bit returns 0 without advancing when
  /// zero extension is allowed; otherwise throws PrecisionExhausted.
  int next_bit(bool zero_extension = false);
  /// Closed interval of mantissas consistent with the prefix. Once every bit
  /// is known it degenerates to the mantissa itself.
  std::int64_t lo() const;
  std::int64_t hi() const;

 private:
  std::uint64_t mantissa_ = 0;
  int precision_ = kDefaultPrecision;
  int revealed_ = 0;
};

/// Per-point record of how many bits of each coordinate have been read.
class PrecisionState {
 public:
  explicit PrecisionState(const PointSet& points, bool zero_extension = false);

  std::size_t size() const { return xs_.size(); }
  int precision() const { return precision_; }

  int reveal_bit(std::size_t i, Axis axis);
  /// One more bit of both coordinates.
  void refine(std::size_t i) {
    reveal_bit(i, Axis::X);
    reveal_bit(i, Axis::Y);
  }

  int bits(std::size_t i, Axis axis) const {
    return axis == Axis::X ? xs_[i].revealed() : ys_[i].revealed();
  }
  long total_bits() const { return total_bits_; }
  bool exhausted(std::size_t i) const { return xs_[i].exhausted() && ys_[i].exhausted(); }

  /// All positions of point i consistent with the bits read so far, in units
  /// of 2^-precision. A square cell when both axes are equally refined.
  Box known_cell(std::size_t i) const {
    return {xs_[i].lo(), xs_[i].hi(), ys_[i].lo(), ys_[i].hi()};
  }

 private:
  std::vector<BitCoordinate> xs_;
  std::vector<BitCoordinate> ys_;
  int precision_;
  bool zero_extension_;
  long total_bits_ = 0;
};

/// Reads the JSON Lines point format: a header {"B": precision, "n": count}
/// followed by one {"x": mantissa, "y": mantissa} object per line.
PointSet read_point_set(std::istream& in);
void write_point_set(std::ostream& out, const PointSet& points);

}  // namespace otlab
