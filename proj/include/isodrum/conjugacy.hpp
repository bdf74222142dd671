#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "isodrum/perm_group.hpp"

namespace isodrum {

/// A g in G with g^-1 * a * g = b, or nullopt. Cycle-type filter, then a
/// backtrack over G's stabilizer chain that propagates the forced images
/// g(a^j(x)) = b^j(g(x)). The witness returned is the first in chain order.
/// Throws InvalidInput when a or b is not in G.
std::optional<Permutation> is_conjugate(const PermGroup& G, const Permutation& a,
                                        const Permutation& b);

/**
 * Conjugacy classes of an enumerable group. Classes are ordered by element
 * order, then by representative; the representative of a class is its
 * lexicographically least member.
 */
class ConjugacyClasses {
public:
  struct Class {
    Permutation representative;
    std::uint64_t size = 0;
    std::size_t element_order = 1;
  };

  /// Throws BoundExceeded when |G| > bound.
  ConjugacyClasses(const PermGroup& G, std::uint64_t bound = 1'000'000);

  const std::vector<Class>& classes() const { return classes_; }
  std::size_t count() const { return classes_.size(); }

  /// Class index of g; throws InvalidInput when g is not in the group.
  std::size_t class_of(const Permutation& g) const;

  /// Members of one class (scan of the element table).
  std::vector<Permutation> members(std::size_t cls) const;

private:
  std::vector<Class> classes_;
  std::unordered_map<Permutation, std::uint32_t, PermutationHash> class_id_;
};

}  // namespace isodrum
