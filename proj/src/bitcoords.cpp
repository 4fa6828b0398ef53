#include "otlab/bitcoords.hpp"

#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "otlab/error.hpp"

namespace otlab {

Box Cell::box(int precision) const {
  const int shift = precision - level;
  const auto x = static_cast<std::int64_t>(i << shift);
  const auto y = static_cast<std::int64_t>(j << shift);
  const auto side = std::int64_t{1} << shift;
  return {x, x + side, y, y + side};
}

int BitCoordinate::next_bit(bool zero_extension) {
  if (revealed_ == precision_) {
    if (zero_extension) return 0;
    throw PrecisionExhausted();
  }
  ++revealed_;
  return static_cast<int>((mantissa_ >> (precision_ - revealed_)) & 1U);
}

std::int64_t BitCoordinate::lo() const {
  if (revealed_ == precision_) return static_cast<std::int64_t>(mantissa_);
  return static_cast<std::int64_t>(prefix() << (precision_ - revealed_));
}

std::int64_t BitCoordinate::hi() const {
  if (revealed_ == precision_) return static_cast<std::int64_t>(mantissa_);
  return static_cast<std::int64_t>((prefix() + 1) << (precision_ - revealed_));
}

PrecisionState::PrecisionState(const PointSet& points, bool zero_extension)
    : precision_(points.precision), zero_extension_(zero_extension) {
  xs_.reserve(points.size());
  ys_.reserve(points.size());
  for (const auto& p : points.points) {
    xs_.emplace_back(p.x, precision_);
    ys_.emplace_back(p.y, precision_);
  }
}

int PrecisionState::reveal_bit(std::size_t i, Axis axis) {
  auto& c = axis == Axis::X ? xs_[i] : ys_[i];
  const int before = c.revealed();
  const int bit = c.next_bit(zero_extension_);
  total_bits_ += c.revealed() - before;
  return bit;
}

PointSet read_point_set(std::istream& in) {
  using nlohmann::json;
  std::string line;
  auto next_object = [&](const char* what) {
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        return json::parse(line);
      } catch (const json::parse_error& e) {
        throw FormatError(std::string("bad JSON in ") + what + ": " + e.what());
      }
    }
    throw FormatError(std::string("unexpected end of input reading ") + what);
  };

  const json header = next_object("header");
  if (!header.is_object() || !header.contains("B") || !header.contains("n")) {
    throw FormatError("header must be {\"B\": <precision>, \"n\": <count>}");
  }
  PointSet out;
  out.precision = header.at("B").get<int>();
  const auto n = header.at("n").get<std::size_t>();
  out.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const json obj = next_object("point");
    if (!obj.is_object() || !obj.contains("x") || !obj.contains("y") ||
        !obj.at("x").is_number_unsigned() || !obj.at("y").is_number_unsigned()) {
      throw FormatError("point " + std::to_string(i) + " must be {\"x\": <uint>, \"y\": <uint>}");
    }
    out.points.push_back({obj.at("x").get<std::uint64_t>(), obj.at("y").get<std::uint64_t>()});
  }
  try {
    out.validate();
  } catch (const Error& e) {
    throw FormatError(e.what());
  }
  return out;
}

void write_point_set(std::ostream& out, const PointSet& points) {
  using nlohmann::json;
  out << json{{"B", points.precision}, {"n", points.size()}}.dump() << '\n';
  for (const auto& p : points.points) out << json{{"x", p.x}, {"y", p.y}}.dump() << '\n';
}

}  // namespace otlab
