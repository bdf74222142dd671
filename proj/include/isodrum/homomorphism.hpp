#pragma once

#include <vector>

#include "isodrum/perm_group.hpp"

namespace isodrum {

/**
 * A map G -> Sym(m) given by images of G's generators.
 *
 * The assignment extends to a homomorphism exactly when the graph group
 * <(s_i, t_i)> on d + m points has order |G|; the check is exact and needs no
 * presentation. Evaluation reads the second component off the graph-group
 * element whose first component is the argument.
 */
class Homomorphism {
public:
  /// Throws InvalidInput when the images do not define a homomorphism.
  Homomorphism(const PermGroup& source, std::vector<Permutation> images,
               std::size_t target_degree);

  const PermGroup& source() const { return source_; }
  const std::vector<Permutation>& generator_images() const { return images_; }

  Permutation operator()(const Permutation& g) const;

  PermGroup image() const;
  bool is_injective() const { return image().order() == source_.order(); }

  /// Bijective endomorphism of `source` (images generate source, same order).
  bool is_automorphism() const;

private:
  PermGroup source_;
  std::vector<Permutation> images_;
  std::size_t target_degree_ = 0;
  StabilizerChain graph_chain_;
};

}  // namespace isodrum
