#include "otlab/chirotope.hpp"

#include <algorithm>
#include <utility>

#include "otlab/error.hpp"

namespace otlab {

Chirotope::Chirotope(int n) : n_(n) {
  const auto un = static_cast<std::size_t>(n);
  signs_.assign(n < 3 ? 0 : un * (un - 1) * (un - 2) / 6, Sign::Zero);
}

Sign Chirotope::operator()(int a, int b, int c) const {
  // Sort to a < b < c counting transpositions.
  bool flip = false;
  if (a > b) std::swap(a, b), flip = !flip;
  if (b > c) std::swap(b, c), flip = !flip;
  if (a > b) std::swap(a, b), flip = !flip;
  const Sign s = signs_[slot(a, b, c)];
  return flip ? negate(s) : s;
}

void Chirotope::set(int a, int b, int c, Sign s) {
  bool flip = false;
  if (a > b) std::swap(a, b), flip = !flip;
  if (b > c) std::swap(b, c), flip = !flip;
  if (a > b) std::swap(a, b), flip = !flip;
  signs_[slot(a, b, c)] = flip ? negate(s) : s;
}

bool Chirotope::simple() const {
  return std::none_of(signs_.begin(), signs_.end(), [](Sign s) { return s == Sign::Zero; });
}

Chirotope Chirotope::negated() const {
  Chirotope out = *this;
  for (auto& s : out.signs_) s = negate(s);
  return out;
}

Chirotope chirotope_of(const PointSet& points, bool allow_flat) {
  const int n = static_cast<int>(points.size());
  Chirotope chi(n);
  for (int c = 2; c < n; ++c) {
    for (int b = 1; b < c; ++b) {
      for (int a = 0; a < b; ++a) {
        const Sign s = orient(points[a], points[b], points[c]);
        if (s == Sign::Zero && !allow_flat) throw NonGeneric(a, b, c);
        chi.set(a, b, c, s);
      }
    }
  }
  return chi;
}

namespace {

// Sorts the other indices counterclockwise around `center` starting at
// `start`. Insertion sort keeps the result well defined even when the
// orientation oracle is not realizable.
template <class Orient>
std::vector<int> sort_around(int n, int center, int start, Orient&& orient_of) {
  std::vector<int> upper, lower;
  for (int j = 0; j < n; ++j) {
    if (j == center || j == start) continue;
    (orient_of(center, start, j) > 0 ? upper : lower).push_back(j);
  }
  auto sort_half = [&](std::vector<int>& half) {
    for (std::size_t i = 1; i < half.size(); ++i) {
      const int v = half[i];
      std::size_t k = i;
      while (k > 0 && orient_of(center, v, half[k - 1]) > 0) {
        half[k] = half[k - 1];
        --k;
      }
      half[k] = v;
    }
  };
  sort_half(upper);
  sort_half(lower);
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(n - 1));
  out.push_back(start);
  out.insert(out.end(), upper.begin(), upper.end());
  out.insert(out.end(), lower.begin(), lower.end());
  return out;
}

}  // namespace

CircularOrders circular_orders(const PointSet& points) {
  return circular_orders(chirotope_of(points));
}

CircularOrders circular_orders(const Chirotope& chi) {
  const int n = chi.size();
  CircularOrders out;
  out.reserve(static_cast<std::size_t>(n));
  auto o = [&](int a, int b, int c) { return to_int(chi(a, b, c)); };
  for (int i = 0; i < n; ++i) {
    out.push_back(sort_around(n, i, i == 0 ? 1 : 0, o));
  }
  return out;
}

bool DenseOrientation::assign(const PointSet& points) {
  n_ = static_cast<int>(points.size());
  const auto un = static_cast<std::size_t>(n_);
  // Entries with a repeated index must read 0.
  table_.assign(un * un * un, 0);
  for (int a = 0; a < n_; ++a) {
    for (int b = a + 1; b < n_; ++b) {
      for (int c = b + 1; c < n_; ++c) {
        const auto s = static_cast<std::int8_t>(to_int(orient(points[a], points[b], points[c])));
        if (s == 0) return false;
        const auto t = static_cast<std::int8_t>(-s);
        auto at = [&](int i, int j, int k) -> std::int8_t& {
          return table_[(static_cast<std::size_t>(i) * un + j) * un + k];
        };
        at(a, b, c) = s;
        at(b, c, a) = s;
        at(c, a, b) = s;
        at(b, a, c) = t;
        at(a, c, b) = t;
        at(c, b, a) = t;
      }
    }
  }
  return true;
}

void DenseOrientation::assign(const Chirotope& chi) {
  n_ = chi.size();
  const auto un = static_cast<std::size_t>(n_);
  table_.assign(un * un * un, 0);
  for (int a = 0; a < n_; ++a) {
    for (int b = 0; b < n_; ++b) {
      for (int c = 0; c < n_; ++c) {
        if (a == b || b == c || a == c) continue;
        table_[(static_cast<std::size_t>(a) * un + b) * un + c] =
            static_cast<std::int8_t>(to_int(chi(a, b, c)));
      }
    }
  }
}

}  // namespace otlab
