#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include <gmpxx.h>

namespace isodrum {

using Rational = mpq_class;
using RationalMatrix = std::vector<std::vector<Rational>>;

RationalMatrix zero_matrix(std::size_t rows, std::size_t cols);
RationalMatrix identity_matrix(std::size_t n);
RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b);

/// Exact determinant: rows are scaled to integers, then fraction-free
/// (Bareiss) elimination over mpz.
Rational determinant(const RationalMatrix& m);

/**
 * Homogeneous linear system with sparse rows, solved exactly. Rows are
 * reduced on arrival against the current echelon form, so systems whose rows
 * have two nonzeros stay cheap.
 */
class SparseSystem {
public:
  using Row = std::map<std::size_t, Rational>;

  explicit SparseSystem(std::size_t unknowns) : unknowns_(unknowns) {}

  std::size_t unknowns() const { return unknowns_; }
  std::size_t rank() const { return pivots_.size(); }

  void add_equation(Row row);

  /// Basis of the solution space, one vector per free unknown: the free
  /// unknown set to 1, the others free ones to 0.
  std::vector<std::vector<Rational>> nullspace() const;

private:
  std::size_t unknowns_;
  std::map<std::size_t, Row> pivots_;  // leading column -> row with leading coefficient 1
};

}  // namespace isodrum
