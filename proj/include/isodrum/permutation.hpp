#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace isodrum {

using Point = std::uint32_t;

/**
 * A permutation of the points {0, ..., degree-1}, stored as its image table.
 *
 * Products apply the left factor first: (p * q)(x) = q(p(x)). Equivalently,
 * permutations act on the right and x^(pq) = (x^p)^q.
 */
class Permutation {
public:
  Permutation() = default;

  /// Identity of the given degree.
  explicit Permutation(std::size_t degree);

  /// Throws InvalidInput unless `images` is a bijection of {0..n-1}.
  explicit Permutation(std::vector<Point> images);

  static Permutation identity(std::size_t degree) { return Permutation(degree); }

  /// Skips the bijection check; for tables produced by internal arithmetic.
  static Permutation from_images_unchecked(std::vector<Point> images) {
    Permutation p;
    p.images_ = std::move(images);
    return p;
  }

  /// Parses cycle notation such as "(1 2)(3 4 5)". Points are 1-based in the
  /// text when `one_based` is set. "()" and "" denote the identity.
  static Permutation from_cycles(std::string_view text, std::size_t degree,
                                 bool one_based = true);

  /// Builds a permutation from explicit 0-based cycles.
  static Permutation from_cycle_list(const std::vector<std::vector<Point>>& cycles,
                                     std::size_t degree);

  std::size_t degree() const { return images_.size(); }
  Point operator()(Point x) const { return images_[x]; }
  Point operator[](Point x) const { return images_[x]; }
  std::span<const Point> images() const { return images_; }

  Permutation inverse() const;
  bool is_identity() const;
  std::size_t order() const;

  /// Number of points x with x^p = x.
  std::size_t fixed_point_count() const;

  /// Sorted multiset of cycle lengths (including 1-cycles).
  std::vector<std::size_t> cycle_type() const;

  /// Disjoint cycles of length >= 2, each starting at its least point,
  /// ordered by that point.
  std::vector<std::vector<Point>> cycles() const;

  /// Cycle notation, 1-based by default; identity prints as "()".
  std::string to_cycle_string(bool one_based = true) const;

  /// Extends the permutation to a larger degree by fixing the new points.
  Permutation extended(std::size_t degree) const;

  /// Moves every point by `offset` inside a permutation of `degree` points.
  Permutation shifted(std::size_t offset, std::size_t degree) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

private:
  std::vector<Point> images_;
};

/// Left factor applied first: compose(p, q)(x) = q(p(x)).
Permutation compose(const Permutation& p, const Permutation& q);

inline Permutation operator*(const Permutation& p, const Permutation& q) {
  return compose(p, q);
}

/// a^g = g^-1 * a * g.
Permutation conjugate(const Permutation& a, const Permutation& g);

/// Power with integer exponent (negative powers use the inverse).
Permutation power(const Permutation& p, long long e);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

}  // namespace isodrum
