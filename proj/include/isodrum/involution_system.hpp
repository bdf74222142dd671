#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "isodrum/perm_group.hpp"
#include "isodrum/permutation.hpp"

namespace isodrum {

/**
 * Gluing data of a tiled drum: for every side color mu an involution on the
 * tiles. Tiles i != j swapped by side mu are glued along that side; a tile
 * fixed by side mu has that side on the boundary. As 0/1 matrices these are
 * the symmetric permutation matrices M^(mu), boundary sides on the diagonal.
 */
class InvolutionSystem {
public:
  InvolutionSystem() = default;

  /// Throws InvalidInput unless every side is an involution on `tiles`
  /// points and together they act transitively.
  InvolutionSystem(std::size_t tiles, std::vector<Permutation> sides);

  std::size_t tiles() const { return tiles_; }
  std::size_t sides() const { return sides_.size(); }
  const Permutation& side(std::size_t mu) const { return sides_[mu]; }
  const std::vector<Permutation>& side_permutations() const { return sides_; }

  /// Dense 0/1 matrix of one side.
  std::vector<std::vector<int>> matrix(std::size_t mu) const;

  /// Number of boundary sides of color mu (trace of M^(mu)).
  std::size_t trace(std::size_t mu) const { return sides_[mu].fixed_point_count(); }

  /// Tile relabeling: tile t becomes p(t).
  InvolutionSystem relabeled(const Permutation& p) const;

  /// Text form: "tiles: N", "sides: r", then one line per side
  /// "side mu: (i j) (k l) ; boundary: a b c", all indices 1-based.
  std::string to_text() const;
  static InvolutionSystem from_text(std::string_view text);

  friend bool operator==(const InvolutionSystem&, const InvolutionSystem&) = default;

private:
  std::size_t tiles_ = 0;
  std::vector<Permutation> sides_;
};

/// Schreier coset graph of a transitive action: one side per generator.
/// Throws InvalidInput for non-involutions or an intransitive system.
InvolutionSystem schreier_system(const PermGroup& G, std::span<const Permutation> generators);

/// Colored graph (tiles, off-diagonal pairs of all colors) is connected and acyclic.
bool is_tree(const InvolutionSystem& sys);

/// (r - 2) * tiles == sum of traces - 2.
bool fixeq_check(const InvolutionSystem& sys);

/// Sum of the traces of all sides.
std::size_t total_boundary_sides(const InvolutionSystem& sys);

}  // namespace isodrum
