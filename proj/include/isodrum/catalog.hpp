#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "isodrum/triples.hpp"

namespace isodrum {

/// F_2, F_3 and F_4 by lookup tables. F_4 = F_2[x]/(x^2 + x + 1) with
/// element 2 = x and 3 = x + 1.
class SmallField {
public:
  /// Throws InvalidInput unless q is 2, 3 or 4.
  explicit SmallField(unsigned q);

  unsigned order() const { return q_; }
  unsigned add(unsigned a, unsigned b) const { return add_[a][b]; }
  unsigned mul(unsigned a, unsigned b) const { return mul_[a][b]; }
  unsigned neg(unsigned a) const;
  /// Throws InvalidInput for zero.
  unsigned inv(unsigned a) const;

private:
  unsigned q_;
  std::array<std::array<unsigned, 4>, 4> add_{};
  std::array<std::array<unsigned, 4>, 4> mul_{};
};

using FieldVector = std::vector<unsigned>;
using FieldMatrix = std::vector<FieldVector>;  // rows

/// PG(n-1, q): points are nonzero column vectors up to scalars, hyperplanes
/// nonzero row vectors up to scalars, incident when u . x = 0. Both are
/// listed in lexicographic order of their representative, whose first
/// nonzero coordinate is 1.
struct ProjectiveSpace {
  std::size_t n = 0;
  SmallField field{2};
  std::vector<FieldVector> points;
  std::vector<FieldVector> hyperplanes;

  ProjectiveSpace(std::size_t n, unsigned q);

  std::size_t size() const { return points.size(); }
  bool incident(std::size_t point, std::size_t hyperplane) const;
  /// Index of the point spanned by a nonzero vector.
  std::size_t point_index(const FieldVector& v) const;
  std::size_t hyperplane_index(const FieldVector& u) const;
  /// Scales the first nonzero coordinate to 1. Throws InvalidInput for zero.
  FieldVector normalize(FieldVector v) const;

  /// g on points (x -> g x) followed by hyperplanes (u -> u g^{-1}), the
  /// latter shifted by size(). Throws InvalidInput for a singular g.
  Permutation action(const FieldMatrix& g) const;
};

/// Elementary transvections I + c e_ij (i != j, c over an additive basis of
/// F_q); they generate SL_n(q).
std::vector<FieldMatrix> sl_generators(std::size_t n, const SmallField& field);

/// G = image of SL_n(q) on points and hyperplanes, H = stabilizer of the
/// first point, K = stabilizer of the first hyperplane. Throws InvalidInput
/// for n < 2 or an unsupported q.
Triple psl_triple(std::size_t n, unsigned q);

/// Point i <-> hyperplane i with the same representative vector.
Permutation duality_permutation(std::size_t n, unsigned q);

/// Images of psl_triple(n, q).G's generators under conjugation by the
/// duality, i.e. the inverse-transpose automorphism; ready for check_pair.
std::vector<Permutation> duality_automorphism(std::size_t n, unsigned q);

/// The least point y with a(y) = b(y), for a and b in psl_triple(n, q).G
/// stabilizing a common hyperplane. Throws InvalidInput when they do not
/// and std::logic_error when no such point exists.
std::size_t model_fixed_coset(std::size_t n, unsigned q, const Permutation& a,
                              const Permutation& b);

struct CatalogEntry {
  std::size_t n;
  unsigned q;
  std::size_t index;       // points of PG(n-1, q)
  std::uint64_t order;     // |PSL_n(q)|
  std::string label;       // "psl(n,q)"
};

/// The four supported pairs (3,2), (3,3), (4,2), (3,4).
std::vector<CatalogEntry> catalog_entries();

}  // namespace isodrum
