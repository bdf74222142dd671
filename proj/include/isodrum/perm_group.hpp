#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "isodrum/permutation.hpp"

namespace isodrum {

/// Limits on exhaustive work. The CLI lets GF_BOUND override `enumeration`.
struct Bounds {
  std::uint64_t enumeration = 1'000'000;  // max elements enumerated
  std::uint64_t index = 10'000;           // max coset count for maximality tests
  std::uint64_t involution_sets = 10'000'000;
};

/**
 * Base and strong generating set built by deterministic Schreier-Sims.
 *
 * Level l describes G^(l), the pointwise stabilizer of base[0..l-1]. Each
 * level stores the basic orbit of base[l] under G^(l) together with an
 * explicit transversal: transversal[k] maps base[l] to orbit[k].
 */
class StabilizerChain {
public:
  struct Level {
    Point base = 0;
    std::vector<Permutation> generators;
    std::vector<Point> orbit;
    std::vector<std::int32_t> orbit_index;  // per point, -1 when outside the orbit
    std::vector<Permutation> transversal;
    std::vector<Permutation> transversal_inverse;

    bool in_orbit(Point x) const { return orbit_index[x] >= 0; }
    const Permutation& rep(Point x) const { return transversal[orbit_index[x]]; }
    const Permutation& rep_inverse(Point x) const {
      return transversal_inverse[orbit_index[x]];
    }
  };

  StabilizerChain() = default;

  /// Runs Schreier-Sims. The base starts with `base_prefix`; further points
  /// are appended as needed. With `known_order` set, the run stops as soon as
  /// the chain reaches that order.
  StabilizerChain(std::size_t degree, std::span<const Permutation> generators,
                  std::span<const Point> base_prefix = {},
                  std::optional<std::uint64_t> known_order = std::nullopt);

  std::size_t degree() const { return degree_; }
  std::uint64_t order() const;
  const std::vector<Level>& levels() const { return levels_; }
  std::vector<Point> base() const;

  /// Sifts g starting at `level`; returns the residue and the level where
  /// sifting stopped (levels().size() when it passed every level).
  std::pair<Permutation, std::size_t> strip(Permutation g, std::size_t level = 0) const;

  bool contains(const Permutation& g) const;

  /// The unique element with the given images of base()[0..k-1], if any.
  std::optional<Permutation> element_from_base_images(std::span<const Point> images) const;

  /// Strong generators (union over all levels, deduplicated).
  std::vector<Permutation> strong_generators() const;

private:
  void extend_orbit(std::size_t level, std::size_t first_new_generator);
  void add_generator(std::size_t from_level, std::size_t to_level, const Permutation& h);
  bool process_level(std::size_t level);
  std::size_t new_level_for(const Permutation& h);

  std::size_t degree_ = 0;
  std::vector<Level> levels_;
  // tested_[l][k] = number of level-l generators already paired with orbit[k].
  std::vector<std::vector<std::size_t>> tested_;
  std::optional<std::uint64_t> known_order_;
  bool complete_ = false;
};

/**
 * Finitely generated permutation group. Immutable; the stabilizer chain is
 * computed at construction and shared between copies.
 */
class PermGroup {
public:
  PermGroup() = default;
  PermGroup(std::size_t degree, std::vector<Permutation> generators);

  static PermGroup trivial(std::size_t degree);
  static PermGroup symmetric(std::size_t n);
  static PermGroup alternating(std::size_t n);
  static PermGroup cyclic(std::size_t n);

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  const StabilizerChain& chain() const { return *chain_; }

  std::uint64_t order() const { return chain_->order(); }
  bool is_trivial() const { return order() == 1; }
  bool contains(const Permutation& g) const;

  /// Every generator of `sub` lies in this group.
  bool contains_group(const PermGroup& sub) const;
  bool same_subgroup(const PermGroup& other) const;

  std::vector<Point> orbit(Point x) const;
  PermGroup stabilizer(Point x) const;
  bool is_transitive() const;

  /// Chain for this group with the given base prefix.
  StabilizerChain chain_with_base(std::span<const Point> prefix) const;

  /// All elements, in chain order. Throws BoundExceeded above `bound`.
  std::vector<Permutation> elements(std::uint64_t bound) const;

  Permutation random_element(std::mt19937_64& rng) const;

  /// Group generated by this group's generators plus `extra`.
  PermGroup with_generators(std::span<const Permutation> extra) const;

private:
  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::shared_ptr<const StabilizerChain> chain_;
};

/// Smallest normal subgroup of G containing `elements`.
PermGroup normal_closure(const PermGroup& G, std::span<const Permutation> elements);

/// Image of H under conjugation by g (generators conjugated).
PermGroup conjugate_group(const PermGroup& H, const Permutation& g);

}  // namespace isodrum
