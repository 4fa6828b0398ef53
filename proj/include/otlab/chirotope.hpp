#pragma once

#include <cstdint>
#include <vector>

#include "otlab/exactgeom.hpp"

namespace otlab {

/// Orientation of every triple of a labeled point sequence. Signs are stored
/// once per increasing triple; other orderings follow by antisymmetry.
class Chirotope {
 public:
  Chirotope() = default;
  explicit Chirotope(int n);

  int size() const { return n_; }

  /// Indices must be pairwise distinct.
  Sign operator()(int a, int b, int c) const;
  void set(int a, int b, int c, Sign s);

  bool simple() const;
  Chirotope negated() const;

  friend bool operator==(const Chirotope&, const Chirotope&) = default;

 private:
  static std::size_t slot(int a, int b, int c) {
    const auto ua = static_cast<std::size_t>(a);
    const auto ub = static_cast<std::size_t>(b);
    const auto uc = static_cast<std::size_t>(c);
    return uc * (uc - 1) * (uc - 2) / 6 + ub * (ub - 1) / 2 + ua;
  }

  int n_ = 0;
  std::vector<Sign> signs_;
};

/// Throws NonGeneric on the first collinear triple unless allow_flat is set.
Chirotope chirotope_of(const PointSet& points, bool allow_flat = false);

/// order[i] lists the other indices counterclockwise around point i,
/// starting at index 1 for i = 0 and at index 0 otherwise.
using CircularOrders = std::vector<std::vector<int>>;

CircularOrders circular_orders(const PointSet& points);
/// Same, recovered from the orientations alone.
CircularOrders circular_orders(const Chirotope& chi);

/// Full orientation table a*n*n + b*n + c for a small point set; the hot
/// path of canonical labeling works on this instead of the packed form.
class DenseOrientation {
 public:
  DenseOrientation() = default;
  /// Returns false (leaving the table partially filled) on a collinear triple.
  bool assign(const PointSet& points);
  void assign(const Chirotope& chi);

  int size() const { return n_; }
  std::int8_t operator()(int a, int b, int c) const {
    return table_[(static_cast<std::size_t>(a) * n_ + b) * n_ + c];
  }

 private:
  int n_ = 0;
  std::vector<std::int8_t> table_;
};

}  // namespace otlab
