#pragma once

// Canonical words identifying an order type.
//
// For a labeling of the points by 1..n, the word is the concatenation of the
// counterclockwise sequences of labels around each point: around point 1
// starting at point 2, around every other point starting at point 1. The
// signature is the lexicographically smallest such word over all labelings
// in which points 1 and 2 are consecutive counterclockwise hull vertices.
// Once that hull edge is fixed, the smallest word labels the remaining points
// 3..n in their counterclockwise order around point 1, so there is exactly
// one candidate per hull edge.

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "otlab/chirotope.hpp"

namespace otlab {

/// Symbols are labels 1..n. Serialized as n followed by one byte per symbol.
struct Signature {
  int n = 0;
  std::vector<std::uint8_t> word;

  std::vector<std::uint8_t> bytes() const;
  /// Throws MalformedSignature.
  static Signature from_bytes(std::span<const std::uint8_t> bytes);
  /// Throws MalformedSignature unless the word has the block structure of a
  /// signature (every block a permutation of the expected labels).
  void validate() const;
  /// The counterclockwise sequence around `label` (1-based), leading symbol
  /// included.
  std::span<const std::uint8_t> block(int label) const;

  friend bool operator==(const Signature&, const Signature&) = default;
  friend auto operator<=>(const Signature& a, const Signature& b) {
    return a.bytes() <=> b.bytes();
  }
};

/// The signature with the entries that orientation recovery does not need
/// dropped: around label 1 the labels 3..n, around each label a in 2..n-2
/// the labels greater than a, in the order they occur.
struct ReducedSignature {
  int n = 0;
  std::vector<std::uint8_t> entries;

  std::vector<std::uint8_t> bytes() const;
  static ReducedSignature from_bytes(std::span<const std::uint8_t> bytes);

  /// (smallest allowed label, block length) for every block, e.g. for n = 10
  /// {3,8} {3,8} {4,7} {5,6} ... {9,2}.
  static std::vector<std::array<int, 2>> shape(int n);

  friend bool operator==(const ReducedSignature&, const ReducedSignature&) = default;
};

struct CanonicalForm {
  Signature signature;
  /// order[label - 1] is the input index that receives that label.
  std::vector<int> order;
};

/// Throws NonGeneric.
CanonicalForm canonical_form(const PointSet& points);
CanonicalForm canonical_form(const Chirotope& chi);
Signature signature(const PointSet& points);
Signature signature(const Chirotope& chi);

/// Throws MalformedSignature.
ReducedSignature reduce(const Signature& sig);
Signature expand(const ReducedSignature& reduced);

/// Orientation of the canonically labeled triple (a, b, c), 0-based,
/// a < b < c: positive iff b precedes c around a.
Sign orient_from_signature(const Signature& sig, int a, int b, int c);
Chirotope chirotope_from_signature(const Signature& sig);

/// Applies a canonical order to a point sequence.
PointSet relabel(const PointSet& points, std::span<const int> order);

using Fingerprint = std::array<std::uint8_t, 16>;

/// 128-bit BLAKE2b digest of a serialized signature.
Fingerprint fingerprint(std::span<const std::uint8_t> serialized);
inline Fingerprint fingerprint(const Signature& sig) { return fingerprint(sig.bytes()); }
std::string to_hex(std::span<const std::uint8_t> bytes);

/// Reusable buffers for computing many signatures of small point sets.
class SignatureBuilder {
 public:
  /// Returns false if the point set has a collinear triple.
  bool assign(const PointSet& points);
  void assign(const Chirotope& chi);

  /// Serialized signature (n byte then word) of the assigned set or of its
  /// mirror image. The reference stays valid until the next call.
  const std::vector<std::uint8_t>& serialized(bool mirrored = false);
  /// Canonical order of the last serialized() call.
  const std::vector<int>& order() const { return best_order_; }

 private:
  void build_orders();
  template <int Orientation>
  void canonicalize();

  DenseOrientation table_;
  int hull_start_ = -1;
  std::vector<int> hull_;
  std::vector<int> perm_, label_;
  std::vector<std::uint8_t> best_, scratch_;
  std::vector<int> best_order_;
  std::vector<int> upper_, lower_;
  std::vector<int> circ_, at_;
};

}  // namespace otlab
