#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "isodrum/perm_group.hpp"

namespace isodrum {

/**
 * The cosets gH = {g o h : h in H} of H in G (function composition, so in the
 * left-first product these are the sets {h * g}). G permutes them by
 * gH -> (x o g)H; the coset H itself has index 0.
 *
 * Each coset is keyed by the image table of its lexicographically least
 * element, found by descending H's stabilizer chain over the complete base
 * 0, 1, ..., degree-1.
 */
class CosetTable {
public:
  CosetTable(const PermGroup& G, const PermGroup& H, std::uint64_t bound = 1'000'000);

  const PermGroup& parent() const { return parent_; }
  const PermGroup& subgroup() const { return subgroup_; }
  std::size_t size() const { return representatives_.size(); }
  const std::vector<Permutation>& representatives() const { return representatives_; }

  /// Canonical (lexicographically least) element of the coset of g.
  Permutation canonical(const Permutation& g) const;

  /// Index of the coset containing g.
  std::size_t index_of(const Permutation& g) const;

  /// The permutation of the cosets induced by g.
  Permutation action_of(const Permutation& g) const;

private:
  PermGroup parent_;
  PermGroup subgroup_;
  StabilizerChain subgroup_chain_;
  std::vector<Permutation> representatives_;
  std::unordered_map<Permutation, std::size_t, PermutationHash> index_;
};

struct CosetAction {
  CosetTable table;
  PermGroup image;                           // degree [G:H]
  std::vector<Permutation> generator_images;  // aligned with G.generators()
};

/// Transitive action of G on the cosets of H. Throws InvalidInput unless H <= G.
CosetAction coset_action(const PermGroup& G, const PermGroup& H,
                         std::uint64_t bound = 1'000'000);

/// Largest normal subgroup of G inside H, computed as the subgroup of H that
/// fixes every coset of H.
PermGroup core(const PermGroup& G, const PermGroup& H, std::uint64_t bound = 1'000'000);

struct MaximalityResult {
  bool maximal = false;
  std::optional<PermGroup> intermediate;  // a proper overgroup of H when not maximal
};

/// H maximal in G iff <H, g> = G for one g from each nontrivial H-orbit on
/// the cosets. H = G counts as not maximal. Throws BoundExceeded when
/// [G:H] > index_bound.
MaximalityResult is_maximal(const PermGroup& G, const PermGroup& H,
                            std::uint64_t index_bound = 10'000);

}  // namespace isodrum
