#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "otlab/error.hpp"
#include "otlab/exactgeom.hpp"

using namespace otlab;

namespace {

constexpr int B = kDefaultPrecision;
constexpr std::uint64_t kQuarter = std::uint64_t{1} << (B - 2);

// A cell of level <= 6 as a box in units of 2^-6.
Box cell_box(std::mt19937_64& rng) {
  const int level = static_cast<int>(rng() % 7);
  const std::int64_t side = std::int64_t{1} << (6 - level);
  const std::int64_t cells = std::int64_t{1} << level;
  const auto i = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(cells));
  const auto j = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(cells));
  return {i * side, (i + 1) * side, j * side, (j + 1) * side};
}

Box random_sub_box(const Box& b, std::mt19937_64& rng) {
  auto pick = [&](std::int64_t lo, std::int64_t hi) {
    std::int64_t u = lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    std::int64_t v = lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    if (u > v) std::swap(u, v);
    return std::array<std::int64_t, 2>{u, v};
  };
  const auto x = pick(b.x_lo, b.x_hi);
  const auto y = pick(b.y_lo, b.y_hi);
  return {x[0], x[1], y[0], y[1]};
}

Box random_box(std::mt19937_64& rng, std::int64_t range) {
  return random_sub_box({0, range, 0, range}, rng);
}

}  // namespace

TEST_CASE("orient on canonical triangles") {
  const ExactPoint o{0, 0}, ex{kQuarter, 0}, ey{0, kQuarter};
  CHECK(orient(o, ex, ey) == Sign::Positive);
  CHECK(orient(o, ey, ex) == Sign::Negative);
  CHECK(orient(o, {kQuarter, kQuarter}, {2 * kQuarter, 2 * kQuarter}) == Sign::Zero);
  // Extreme mantissas at the maximal precision.
  const std::uint64_t top = (std::uint64_t{1} << kMaxPrecision) - 1;
  CHECK(orient({0, 0}, {top, 0}, {top, top}) == Sign::Positive);
  CHECK(orient({top, top}, {0, 0}, {1, 0}) == Sign::Positive);
}

TEST_CASE("orient matches big-integer arithmetic and is antisymmetric") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 10000; ++t) {
    const int precision = t % 2 == 0 ? B : kMaxPrecision;
    const auto a = oracle::random_point(rng, precision);
    const auto b = oracle::random_point(rng, precision);
    const auto c = oracle::random_point(rng, precision);
    const int s = to_int(orient(a, b, c));
    REQUIRE(s == oracle::orient(oracle::big(a), oracle::big(b), oracle::big(c)));
    CHECK(to_int(orient(b, a, c)) == -s);
    CHECK(to_int(orient(a, c, b)) == -s);
    CHECK(to_int(orient(c, b, a)) == -s);
    CHECK(to_int(orient(b, c, a)) == s);
    CHECK(to_int(orient(c, a, b)) == s);
  }
}

TEST_CASE("orient survives translation and rescaling") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 10000; ++t) {
    // Points in [0, 2^50) leave room for a translation and one doubling.
    auto a = oracle::random_point(rng, 50);
    auto b = oracle::random_point(rng, 50);
    auto c = oracle::random_point(rng, 50);
    if (t % 7 == 0) c = {(a.x + b.x) / 2, (a.y + b.y) / 2};  // nearly or exactly flat
    const Sign s = orient(a, b, c);
    const ExactPoint shift = oracle::random_point(rng, 50);
    auto move = [&](ExactPoint p) { return ExactPoint{p.x + shift.x, p.y + shift.y}; };
    CHECK(orient(move(a), move(b), move(c)) == s);
    auto twice = [](ExactPoint p) { return ExactPoint{2 * p.x, 2 * p.y}; };
    CHECK(orient(twice(a), twice(b), twice(c)) == s);
  }
}

TEST_CASE("box_transversal on points") {
  const Box a = Box::point({0, 0}), b = Box::point({kQuarter, 0}), c = Box::point({0, kQuarter});
  CHECK_FALSE(box_transversal(a, b, c));
  CHECK(box_transversal(a, Box::point({kQuarter, kQuarter}), Box::point({3 * kQuarter, 3 * kQuarter})));
  std::mt19937_64 rng(13);
  for (int t = 0; t < 10000; ++t) {
    // Small coordinates make flat triples frequent.
    const ExactPoint p{rng() % 16, rng() % 16}, q{rng() % 16, rng() % 16}, r{rng() % 16, rng() % 16};
    CHECK(box_transversal(Box::point(p), Box::point(q), Box::point(r)) == (orient(p, q, r) == Sign::Zero));
  }
}

TEST_CASE("box_transversal on three cells of G_4") {
  const Box a{0, 1, 0, 1}, b{1, 2, 2, 3}, c{3, 4, 1, 2};
  const bool dense = oracle::dense_line_family(a, b, c, 0.25);
  const bool witness = oracle::witness_line(a, b, c).has_value();
  CHECK_FALSE(dense);
  CHECK_FALSE(witness);
  CHECK(box_transversal(a, b, c) == witness);
  CHECK_FALSE(box_transversal(a, b, c));
}

TEST_CASE("box_transversal agrees with line-family oracles on random cells") {
  std::mt19937_64 rng(14);
  int oracle_hits = 0, witnessed = 0;
  for (int t = 0; t < 2000; ++t) {
    const Box a = cell_box(rng), b = cell_box(rng), c = cell_box(rng);
    const bool op = box_transversal(a, b, c);
    const bool dense = oracle::dense_line_family(a, b, c, 1.0 / 64);
    if (dense) {
      ++oracle_hits;
      CHECK(op);
    }
    if (op && !dense) {
      ++witnessed;
      CHECK(oracle::witness_line(a, b, c).has_value());
    }
    if (!op) CHECK_FALSE(oracle::witness_line(a, b, c).has_value());
  }
  // Both outcomes occur often enough for the comparison to mean something.
  CHECK(oracle_hits > 200);
  CHECK(2000 - oracle_hits - witnessed > 200);
}

TEST_CASE("box_transversal is monotone under shrinking") {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 5000; ++t) {
    const Box a = random_box(rng, 64), b = random_box(rng, 64), c = random_box(rng, 64);
    const Box a2 = random_sub_box(a, rng), b2 = random_sub_box(b, rng), c2 = random_sub_box(c, rng);
    if (!box_transversal(a, b, c)) CHECK_FALSE(box_transversal(a2, b2, c2));
    CHECK(box_transversal(a, b, c) == oracle::witness_line(a, b, c).has_value());
  }
}

TEST_CASE("box_orientation_small agrees with the wide version") {
  std::mt19937_64 rng(16);
  for (int t = 0; t < 10000; ++t) {
    const std::int64_t range = std::int64_t{1} << (1 + t % 29);
    const Box a = random_box(rng, range), b = random_box(rng, range), c = random_box(rng, range);
    CHECK(box_orientation_small(a, b, c) == box_orientation(a, b, c));
  }
}

TEST_CASE("box_orientation sign when determined") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 2000; ++t) {
    const Box a = random_box(rng, 1 << 20), b = random_box(rng, 1 << 20), c = random_box(rng, 1 << 20);
    const auto r = box_orientation(a, b, c);
    if (r == BoxOrientation::Undetermined) continue;
    const ExactPoint pa{static_cast<std::uint64_t>(a.x_lo), static_cast<std::uint64_t>(a.y_hi)};
    const ExactPoint pb{static_cast<std::uint64_t>(b.x_hi), static_cast<std::uint64_t>(b.y_lo)};
    const ExactPoint pc{static_cast<std::uint64_t>(c.x_hi), static_cast<std::uint64_t>(c.y_hi)};
    CHECK(to_int(orient(pa, pb, pc)) == static_cast<int>(r));
  }
}

TEST_CASE("ray_clearance on simple lines") {
  // origin (0,0) and the vertical line x = 1, shifted by (2,2) and scaled by 1/8.
  const std::uint64_t e = std::uint64_t{1} << (B - 3);
  const ExactPoint o{2 * e, 2 * e};
  const auto t = ray_clearance(o, RayDirection::PosX, {3 * e, e}, {3 * e, 3 * e});
  REQUIRE(t);
  CHECK(t->num == t->den * static_cast<Wide>(e));
  CHECK(t->to_double(B) == doctest::Approx(0.125));
  CHECK_FALSE(ray_clearance(o, RayDirection::NegX, {3 * e, e}, {3 * e, 3 * e}));
  // Parallel horizontal line.
  CHECK_FALSE(ray_clearance(o, RayDirection::PosX, {3 * e, 3 * e}, {4 * e, 3 * e}));
  CHECK_THROWS_AS(ray_clearance(o, RayDirection::PosY, {e, e}, {3 * e, 3 * e}), OriginOnLine);
}

TEST_CASE("ray_clearance below a shallow line") {
  // origin (1/4, 1/4), downwards, line through (0,0) and (1, 1/4 + 2^-20).
  const ExactPoint o{kQuarter, kQuarter};
  const ExactPoint p{0, 0}, q{std::uint64_t{1} << B, kQuarter + (std::uint64_t{1} << (B - 20))};
  const auto t = ray_clearance(o, RayDirection::NegY, p, q);
  const auto ref = oracle::ray_parameter(o, RayDirection::NegY, p, q);
  REQUIRE(t);
  REQUIRE(ref);
  CHECK(oracle::Rational(oracle::BigInt(t->num), oracle::BigInt(t->den)) == *ref);
  // 1/4 - (1/4)(1/4 + 2^-20) = 3/16 - 2^-22
  const oracle::Rational expected = (oracle::Rational(3, 16) - oracle::Rational(1, 1 << 22)) *
                                    oracle::Rational(oracle::BigInt(1) << B);
  CHECK(*ref == expected);
}

TEST_CASE("ray_clearance matches a rational solver") {
  std::mt19937_64 rng(18);
  long checked = 0;
  for (int t = 0; t < 20000; ++t) {
    const int precision = t % 3 == 0 ? 20 : B;
    const auto o = oracle::random_point(rng, precision);
    const auto p = oracle::random_point(rng, precision);
    const auto q = oracle::random_point(rng, precision);
    if (p == q || orient(o, p, q) == Sign::Zero) continue;
    for (const auto dir : kRayDirections) {
      const auto got = ray_clearance(o, dir, p, q);
      const auto swapped = ray_clearance(o, dir, q, p);
      const auto ref = oracle::ray_parameter(o, dir, p, q);
      REQUIRE(got.has_value() == ref.has_value());
      REQUIRE(swapped.has_value() == ref.has_value());
      if (!ref) continue;
      ++checked;
      const oracle::Rational mine(oracle::BigInt(got->num), oracle::BigInt(got->den));
      const oracle::Rational other(oracle::BigInt(swapped->num), oracle::BigInt(swapped->den));
      CHECK(mine == *ref);
      CHECK(other == *ref);
      const int k = got->clearance_level(precision);
      CHECK(k == oracle::clearance_level(*ref, precision));
      for (int j = 0; j < 3 && k + j < 100; ++j) {
        const bool exceeds = oracle::Rational(1, 1) / oracle::Rational(oracle::BigInt(1) << (k + j)) <
                             *ref / oracle::Rational(oracle::BigInt(1) << precision);
        CHECK(got->exceeds_pow2(k + j, precision) == exceeds);
      }
    }
  }
  CHECK(checked > 20000);
}
