#include "otlab/signature.hpp"

#include <sodium.h>

#include <algorithm>
#include <cstring>

#include "otlab/error.hpp"

namespace otlab {

namespace {

std::size_t word_length(int n) { return static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1); }

void check_permutation(std::span<const std::uint8_t> block, int lo, int hi, int skip,
                       const char* what) {
  std::vector<bool> seen(static_cast<std::size_t>(hi) + 1, false);
  for (const auto s : block) {
    if (s < lo || s > hi || s == skip || seen[s]) {
      throw MalformedSignature(std::string(what) + ": block is not a permutation of its labels");
    }
    seen[s] = true;
  }
}

}  // namespace

std::vector<std::uint8_t> Signature::bytes() const {
  std::vector<std::uint8_t> out;
  out.reserve(word.size() + 1);
  out.push_back(static_cast<std::uint8_t>(n));
  out.insert(out.end(), word.begin(), word.end());
  return out;
}

Signature Signature::from_bytes(std::span<const std::uint8_t> bytes) {
  if (bytes.empty()) throw MalformedSignature("empty signature");
  Signature sig{bytes[0], {bytes.begin() + 1, bytes.end()}};
  sig.validate();
  return sig;
}

void Signature::validate() const {
  if (n < 3 || n > 255) throw MalformedSignature("signature size must lie in [3, 255]");
  if (word.size() != word_length(n)) throw MalformedSignature("signature length is not n(n-1)");
  const auto first = block(1);
  if (first[0] != 2) throw MalformedSignature("signature must begin with 2");
  check_permutation(first, 2, n, 0, "signature");
  for (int label = 2; label <= n; ++label) {
    const auto b = block(label);
    if (b[0] != 1) throw MalformedSignature("blocks after the first must begin with 1");
    check_permutation(b, 1, n, label, "signature");
  }
}

std::span<const std::uint8_t> Signature::block(int label) const {
  const auto len = static_cast<std::size_t>(n - 1);
  return std::span<const std::uint8_t>(word).subspan(static_cast<std::size_t>(label - 1) * len, len);
}

std::vector<std::array<int, 2>> ReducedSignature::shape(int n) {
  std::vector<std::array<int, 2>> out;
  if (n < 3) return out;
  out.push_back({3, n - 2});
  for (int a = 2; a <= n - 2; ++a) out.push_back({a + 1, n - a});
  return out;
}

std::vector<std::uint8_t> ReducedSignature::bytes() const {
  std::vector<std::uint8_t> out;
  out.reserve(entries.size() + 1);
  out.push_back(static_cast<std::uint8_t>(n));
  out.insert(out.end(), entries.begin(), entries.end());
  return out;
}

ReducedSignature ReducedSignature::from_bytes(std::span<const std::uint8_t> bytes) {
  if (bytes.empty()) throw MalformedSignature("empty reduced signature");
  ReducedSignature r{bytes[0], {bytes.begin() + 1, bytes.end()}};
  if (r.n < 3) throw MalformedSignature("reduced signature size must be at least 3");
  std::size_t expected = 0;
  for (const auto& [lo, len] : shape(r.n)) expected += static_cast<std::size_t>(len);
  if (r.entries.size() != expected) throw MalformedSignature("reduced signature has the wrong length");
  return r;
}

// ---------------------------------------------------------------------------

bool SignatureBuilder::assign(const PointSet& points) {
  if (points.size() < 3) throw Error("a signature needs at least 3 points");
  if (!table_.assign(points)) return false;
  // The lowest point (then leftmost) is a hull vertex of the set and of its
  // mirror image.
  hull_start_ = 0;
  for (int i = 1; i < static_cast<int>(points.size()); ++i) {
    const auto& p = points[i];
    const auto& q = points[hull_start_];
    if (p.y < q.y || (p.y == q.y && p.x < q.x)) hull_start_ = i;
  }
  build_orders();
  return true;
}

void SignatureBuilder::assign(const Chirotope& chi) {
  if (chi.size() < 3) throw Error("a signature needs at least 3 points");
  if (!chi.simple()) throw NonGeneric("chirotope has a zero entry");
  table_.assign(chi);
  hull_start_ = -1;
  build_orders();
}

// Counterclockwise order of the other points around each point, from an
// arbitrary reference, stored twice in a row so that rotations need no
// wraparound. Every candidate labeling and the mirror image reuse these,
// rotated to start at label 1 (walked backwards for the mirror).
void SignatureBuilder::build_orders() {
  const int n = table_.size();
  const auto un = static_cast<std::size_t>(n);
  const std::size_t m = un - 1;
  circ_.resize(un * 2 * m);
  at_.resize(un * un);
  upper_.resize(un);
  lower_.resize(un);
  for (int c = 0; c < n; ++c) {
    const int ref = c == 0 ? 1 : 0;
    // half: 0 for [ref, ref + pi), 1 for the rest; rank by counting.
    auto& half = upper_;
    auto& rank = lower_;
    for (int k = 0; k < n; ++k) {
      half[static_cast<std::size_t>(k)] = table_(c, ref, k) > 0 ? 0 : 1;
      rank[static_cast<std::size_t>(k)] = 0;
    }
    half[static_cast<std::size_t>(ref)] = -1;
    for (int j = 0; j < n; ++j) {
      if (j == c) continue;
      const int hj = half[static_cast<std::size_t>(j)];
      for (int k = 0; k < n; ++k) {
        const int hk = half[static_cast<std::size_t>(k)];
        rank[static_cast<std::size_t>(k)] += (hj < hk) | ((hj == hk) & (table_(c, j, k) > 0));
      }
    }
    int* row = circ_.data() + static_cast<std::size_t>(c) * 2 * m;
    for (int k = 0; k < n; ++k) {
      if (k == c) continue;
      const auto r = static_cast<std::size_t>(rank[static_cast<std::size_t>(k)]);
      row[r] = k;
      row[r + m] = k;
      at_[static_cast<std::size_t>(c) * un + static_cast<std::size_t>(k)] = static_cast<int>(r);
    }
  }
}

const std::vector<std::uint8_t>& SignatureBuilder::serialized(bool mirrored) {
  if (mirrored) {
    canonicalize<-1>();
  } else {
    canonicalize<1>();
  }
  return best_;
}

template <int Orientation>
void SignatureBuilder::canonicalize() {
  const int n = table_.size();
  const auto un = static_cast<std::size_t>(n);
  auto o = [this](int a, int b, int c) { return Orientation * table_(a, b, c); };

  int start = hull_start_;
  if (start < 0) {
    for (int u = 0; u < n && start < 0; ++u) {
      for (int v = 0; v < n && start < 0; ++v) {
        if (v == u) continue;
        bool edge = true;
        for (int k = 0; k < n && edge; ++k) {
          if (k != u && k != v && o(u, v, k) < 0) edge = false;
        }
        if (edge) start = u;
      }
    }
  }

  hull_.clear();
  int u = start;
  do {
    hull_.push_back(u);
    int v = u == 0 ? 1 : 0;
    for (int k = 0; k < n; ++k) {
      if (k != u && k != v && o(u, v, k) < 0) v = k;
    }
    u = v;
  } while (u != start && static_cast<int>(hull_.size()) <= n);

  const std::size_t len = word_length(n) + 1;
  const int m = n - 1;
  scratch_.resize(len);
  perm_.resize(un);
  label_.resize(un);
  scratch_[0] = static_cast<std::uint8_t>(n);
  bool have_best = false;

  // The point `step` places counterclockwise after `from` around c.
  auto around = [&](int c, int from, int step) {
    const auto base = static_cast<std::size_t>(c) * 2 * static_cast<std::size_t>(m);
    const int idx = at_[static_cast<std::size_t>(c) * un + static_cast<std::size_t>(from)];
    return circ_[base + static_cast<std::size_t>(Orientation > 0 ? idx + step : idx + m - step)];
  };

  const auto block_len = static_cast<std::size_t>(m);
  const auto h = hull_.size();
  for (std::size_t e = 0; e < h; ++e) {
    const int p1 = hull_[e];
    const int p2 = hull_[(e + 1) % h];
    perm_[0] = p1;
    for (int t = 0; t < m; ++t) perm_[static_cast<std::size_t>(t) + 1] = around(p1, p2, t);
    for (int l = 0; l < n; ++l) label_[static_cast<std::size_t>(perm_[static_cast<std::size_t>(l)])] = l + 1;

    // Block of label 1 is 2, 3, ..., n for every candidate.
    std::uint8_t* w = scratch_.data() + 1;
    for (int l = 1; l < n; ++l) w[l - 1] = static_cast<std::uint8_t>(l + 1);

    int cmp = have_best ? 0 : -1;
    bool rejected = false;
    for (int a = 1; a < n && !rejected; ++a) {
      const int center = perm_[static_cast<std::size_t>(a)];
      std::uint8_t* out = w + static_cast<std::size_t>(a) * block_len;
      for (int t = 0; t < m; ++t) {
        out[t] = static_cast<std::uint8_t>(label_[static_cast<std::size_t>(around(center, p1, t))]);
      }
      if (cmp == 0) {
        const std::size_t off = 1 + static_cast<std::size_t>(a) * block_len;
        const int c = std::memcmp(scratch_.data() + off, best_.data() + off, block_len);
        if (c > 0) rejected = true;
        if (c < 0) cmp = -1;
      }
    }
    if (!rejected && cmp < 0) {
      best_.swap(scratch_);
      scratch_.resize(len);
      scratch_[0] = static_cast<std::uint8_t>(n);
      best_order_.assign(perm_.begin(), perm_.end());
      have_best = true;
    }
  }
}

template void SignatureBuilder::canonicalize<1>();
template void SignatureBuilder::canonicalize<-1>();

// ---------------------------------------------------------------------------

CanonicalForm canonical_form(const PointSet& points) {
  SignatureBuilder builder;
  if (!builder.assign(points)) {
    chirotope_of(points);  // throws NonGeneric with the offending triple
    throw NonGeneric("collinear triple");
  }
  const auto& bytes = builder.serialized();
  return {Signature{bytes[0], {bytes.begin() + 1, bytes.end()}}, builder.order()};
}

CanonicalForm canonical_form(const Chirotope& chi) {
  SignatureBuilder builder;
  builder.assign(chi);
  const auto& bytes = builder.serialized();
  return {Signature{bytes[0], {bytes.begin() + 1, bytes.end()}}, builder.order()};
}

Signature signature(const PointSet& points) { return canonical_form(points).signature; }
Signature signature(const Chirotope& chi) { return canonical_form(chi).signature; }

ReducedSignature reduce(const Signature& sig) {
  sig.validate();
  ReducedSignature out{sig.n, {}};
  const auto first = sig.block(1);
  out.entries.insert(out.entries.end(), first.begin() + 1, first.end());
  for (int a = 2; a <= sig.n - 2; ++a) {
    for (const auto s : sig.block(a)) {
      if (s > a) out.entries.push_back(s);
    }
  }
  return out;
}

Signature expand(const ReducedSignature& reduced) {
  const int n = reduced.n;
  if (n < 3 || n > 255) throw MalformedSignature("reduced signature size must lie in [3, 255]");
  const auto shape = ReducedSignature::shape(n);
  std::size_t expected = 0;
  for (const auto& [lo, len] : shape) expected += static_cast<std::size_t>(len);
  if (reduced.entries.size() != expected) {
    throw MalformedSignature("reduced signature has the wrong length");
  }

  // pos[a][label] = rank of label among the recorded labels around a.
  Chirotope chi(n);
  std::vector<int> rank(static_cast<std::size_t>(n) + 1);
  std::size_t offset = 0;
  for (std::size_t blk = 0; blk < shape.size(); ++blk) {
    const auto [lo, len] = shape[blk];
    const auto entries =
        std::span<const std::uint8_t>(reduced.entries).subspan(offset, static_cast<std::size_t>(len));
    offset += static_cast<std::size_t>(len);
    check_permutation(entries, lo, n, 0, "reduced signature");
    for (int r = 0; r < len; ++r) rank[entries[static_cast<std::size_t>(r)]] = r;
    const int a = static_cast<int>(blk) + 1;  // 1-based center label
    for (int b = lo; b <= n; ++b) {
      for (int c = b + 1; c <= n; ++c) {
        chi.set(a - 1, b - 1, c - 1, rank[b] < rank[c] ? Sign::Positive : Sign::Negative);
      }
    }
    if (a == 1) {
      // Label 2 starts the order around label 1.
      for (int c = 3; c <= n; ++c) chi.set(0, 1, c - 1, Sign::Positive);
    }
  }

  const auto orders = circular_orders(chi);
  Signature sig{n, {}};
  sig.word.reserve(word_length(n));
  for (const auto& order : orders) {
    for (const int j : order) sig.word.push_back(static_cast<std::uint8_t>(j + 1));
  }
  return sig;
}

Sign orient_from_signature(const Signature& sig, int a, int b, int c) {
  sig.validate();
  if (!(0 <= a && a < b && b < c && c < sig.n)) {
    throw MalformedSignature("orient_from_signature needs 0 <= a < b < c < n");
  }
  const auto block = sig.block(a + 1);
  const auto pos_b = std::find(block.begin(), block.end(), b + 1);
  const auto pos_c = std::find(block.begin(), block.end(), c + 1);
  return pos_b < pos_c ? Sign::Positive : Sign::Negative;
}

Chirotope chirotope_from_signature(const Signature& sig) {
  sig.validate();
  const int n = sig.n;
  Chirotope chi(n);
  std::vector<int> pos(static_cast<std::size_t>(n) + 1);
  for (int a = 0; a < n; ++a) {
    const auto block = sig.block(a + 1);
    for (std::size_t r = 0; r < block.size(); ++r) pos[block[r]] = static_cast<int>(r);
    for (int b = a + 1; b < n; ++b) {
      for (int c = b + 1; c < n; ++c) {
        chi.set(a, b, c, pos[b + 1] < pos[c + 1] ? Sign::Positive : Sign::Negative);
      }
    }
  }
  return chi;
}

PointSet relabel(const PointSet& points, std::span<const int> order) {
  PointSet out{points.precision, {}};
  out.points.reserve(order.size());
  for (const int i : order) out.points.push_back(points[static_cast<std::size_t>(i)]);
  return out;
}

Fingerprint fingerprint(std::span<const std::uint8_t> serialized) {
  static const bool ready = sodium_init() >= 0;
  if (!ready) throw Error("libsodium failed to initialize");
  Fingerprint out{};
  crypto_generichash(out.data(), out.size(), serialized.data(), serialized.size(), nullptr, 0);
  return out;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (const auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 15]);
  }
  return out;
}

}  // namespace otlab
