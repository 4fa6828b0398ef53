#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "otlab/bitcoords.hpp"
#include "otlab/error.hpp"

using namespace otlab;

namespace {

constexpr int B = kDefaultPrecision;

// Interval of mantissas whose top r bits equal those of m, by string prefixes.
std::array<std::int64_t, 2> prefix_interval(std::uint64_t m, int r, int precision) {
  std::string bits;
  for (int k = precision - 1; k >= 0; --k) bits.push_back(((m >> k) & 1U) ? '1' : '0');
  const std::string lo = bits.substr(0, static_cast<std::size_t>(r)) + std::string(static_cast<std::size_t>(precision - r), '0');
  const std::uint64_t lo_v = std::stoull(lo, nullptr, 2);
  return {static_cast<std::int64_t>(lo_v), static_cast<std::int64_t>(lo_v + (std::uint64_t{1} << (precision - r)))};
}

}  // namespace

TEST_CASE("next_bit reads most significant first") {
  const std::uint64_t m = std::uint64_t{0b1010} << (B - 4);
  BitCoordinate c(m, B);
  CHECK(c.next_bit() == 1);
  CHECK(c.revealed() == 1);
  CHECK(c.next_bit() == 0);
  CHECK(c.next_bit() == 1);
  CHECK(c.next_bit() == 0);
  CHECK(c.prefix() == 0b1010);

  BitCoordinate zero(0, B);
  for (int k = 0; k < B; ++k) CHECK(zero.next_bit() == 0);
}

TEST_CASE("a full reveal reconstructs the mantissa") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 1000; ++t) {
    const int precision = 1 + static_cast<int>(rng() % kMaxPrecision);
    const std::uint64_t m = rng() >> (64 - precision);
    BitCoordinate c(m, precision);
    std::uint64_t v = 0;
    for (int k = 0; k < precision; ++k) v = 2 * v + static_cast<std::uint64_t>(c.next_bit());
    CHECK(v == m);
    CHECK(c.exhausted());
    CHECK(c.lo() == static_cast<std::int64_t>(m));
    CHECK(c.hi() == static_cast<std::int64_t>(m));
    CHECK(c.next_bit(true) == 0);
    CHECK(c.revealed() == precision);
    CHECK_THROWS_AS(c.next_bit(), PrecisionExhausted);
  }
}

TEST_CASE("known_cell examples") {
  const std::uint64_t half = std::uint64_t{1} << (B - 1);
  const PointSet ps{B, {{half + 5, half + 7}}};
  PrecisionState st(ps);
  CHECK(st.known_cell(0) == Box{0, std::int64_t{1} << B, 0, std::int64_t{1} << B});
  st.refine(0);
  CHECK(st.known_cell(0) == (Cell{1, 1, 1}.box(B)));

  // Two bits of x and one of y: a 1/4 x 1/2 box.
  const ExactPoint p{0x9'0000'0000'0000ULL, 0x3'0000'0000'0000ULL};
  const PointSet qs{B, {p}};
  PrecisionState s2(qs);
  s2.reveal_bit(0, Axis::X);
  s2.reveal_bit(0, Axis::X);
  s2.reveal_bit(0, Axis::Y);
  const auto bx = prefix_interval(p.x, 2, B);
  const auto by = prefix_interval(p.y, 1, B);
  CHECK(s2.known_cell(0) == Box{bx[0], bx[1], by[0], by[1]});
  CHECK(s2.known_cell(0).x_hi - s2.known_cell(0).x_lo == std::int64_t{1} << (B - 2));
  CHECK(s2.known_cell(0).y_hi - s2.known_cell(0).y_lo == std::int64_t{1} << (B - 1));
  CHECK(s2.total_bits() == 3);
}

TEST_CASE("known_cell contains the point and halves per bit") {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 300; ++t) {
    const int precision = 8 + static_cast<int>(rng() % (kMaxPrecision - 7));
    const PointSet ps = oracle::random_set(rng, 2, precision);
    PrecisionState st(ps);
    long expected_total = 0;
    while (!st.exhausted(0)) {
      const Axis axis = (rng() & 1U) && st.bits(0, Axis::X) < precision ? Axis::X
                        : st.bits(0, Axis::Y) < precision                 ? Axis::Y
                                                                          : Axis::X;
      const Box before = st.known_cell(0);
      st.reveal_bit(0, axis);
      ++expected_total;
      const Box after = st.known_cell(0);
      CHECK(after.contains(ps[0]));
      CHECK(before.contains(after));
      const int r = st.bits(0, axis);
      const std::int64_t w0 = axis == Axis::X ? before.x_hi - before.x_lo : before.y_hi - before.y_lo;
      const std::int64_t w1 = axis == Axis::X ? after.x_hi - after.x_lo : after.y_hi - after.y_lo;
      // The last bit pins the coordinate itself.
      CHECK(w1 == (r == precision ? 0 : w0 / 2));
      const auto ref = prefix_interval(axis == Axis::X ? ps[0].x : ps[0].y, r, precision);
      if (r < precision) {
        CHECK((axis == Axis::X ? after.x_lo : after.y_lo) == ref[0]);
        CHECK((axis == Axis::X ? after.x_hi : after.y_hi) == ref[1]);
      }
      CHECK(st.total_bits() == expected_total);
      CHECK(st.total_bits() == st.bits(0, Axis::X) + st.bits(0, Axis::Y));
    }
  }
}

TEST_CASE("cell_of equals the known cell after k bits of both axes") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 2000; ++t) {
    const int precision = 10 + static_cast<int>(rng() % (kMaxPrecision - 9));
    const PointSet ps = oracle::random_set(rng, 1, precision);
    const int k = static_cast<int>(rng() % static_cast<std::uint64_t>(precision));
    PrecisionState st(ps);
    for (int s = 0; s < k; ++s) st.refine(0);
    const Cell c = cell_of(ps[0], k, precision);
    CHECK(st.known_cell(0) == c.box(precision));
    // Half-open membership: the point lies in [lo, hi).
    const Box b = c.box(precision);
    CHECK(static_cast<std::int64_t>(ps[0].x) < b.x_hi);
    CHECK(static_cast<std::int64_t>(ps[0].y) < b.y_hi);
    CHECK(b.contains(ps[0]));
  }
  // A point on a grid line goes to the upper cell.
  const std::uint64_t half = std::uint64_t{1} << (kDefaultPrecision - 1);
  CHECK(cell_of({half, half}, 1, kDefaultPrecision) == Cell{1, 1, 1});
  CHECK(cell_of({half - 1, half}, 1, kDefaultPrecision) == Cell{1, 0, 1});
}

TEST_CASE("zero extension") {
  const PointSet ps{4, {{0b1011, 0b0001}}};
  PrecisionState strict(ps);
  PrecisionState lenient(ps, true);
  for (int k = 0; k < 4; ++k) {
    strict.refine(0);
    lenient.refine(0);
  }
  CHECK_THROWS_AS(strict.reveal_bit(0, Axis::X), PrecisionExhausted);
  CHECK(lenient.reveal_bit(0, Axis::X) == 0);
  CHECK(lenient.total_bits() == 8);
}

TEST_CASE("point sets round-trip through JSON Lines") {
  std::mt19937_64 rng(24);
  for (int t = 0; t < 50; ++t) {
    const int precision = 1 + static_cast<int>(rng() % kMaxPrecision);
    const PointSet ps = oracle::random_set(rng, static_cast<int>(rng() % 20), precision);
    std::stringstream ss;
    write_point_set(ss, ps);
    const PointSet back = read_point_set(ss);
    CHECK(back.precision == ps.precision);
    CHECK(back.points == ps.points);
  }
}

TEST_CASE("malformed point files are rejected") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_point_set(in);
  };
  CHECK_THROWS_AS(parse(""), FormatError);
  CHECK_THROWS_AS(parse("{\"B\": 4}\n"), FormatError);
  CHECK_THROWS_AS(parse("{\"B\": 4, \"n\": 2}\n{\"x\": 1, \"y\": 2}\n"), FormatError);
  CHECK_THROWS_AS(parse("{\"B\": 4, \"n\": 1}\n{\"x\": 16, \"y\": 2}\n"), FormatError);
  CHECK_THROWS_AS(parse("{\"B\": 4, \"n\": 1}\n{\"x\": -1, \"y\": 2}\n"), FormatError);
  CHECK_THROWS_AS(parse("{\"B\": 4, \"n\": 1}\nnot json\n"), FormatError);
  CHECK_THROWS_AS(parse("{\"B\": 99, \"n\": 0}\n"), FormatError);
  const PointSet ok = parse("{\"B\": 4, \"n\": 1}\n\n{\"x\": 15, \"y\": 0}\n");
  CHECK(ok.points == std::vector<ExactPoint>{{15, 0}});
}
