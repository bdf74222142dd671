#pragma once

#include <cstdint>
#include <vector>

#include "isodrum/geometry.hpp"
#include "isodrum/rational.hpp"

namespace isodrum {

/**
 * Grid nodes (i h, j h) lying strictly inside a polygon. Nodes on the
 * boundary are excluded: they carry the Dirichlet condition.
 */
struct GridMask {
  Rational h;
  long i0 = 0, j0 = 0;       // index of the lower-left node of the bounding grid
  std::size_t nx = 0, ny = 0;
  std::vector<char> inside;  // row-major, ny rows of nx nodes

  bool at(std::size_t x, std::size_t y) const { return inside[y * nx + x] != 0; }
  std::size_t count() const;
  /// count() * h^2
  double area() const;
};

/// Exact point-in-polygon on every grid node. Throws InvalidInput for fewer
/// than three vertices, zero area or h <= 0.
GridMask rasterize(const std::vector<Vec2>& poly, const Rational& h);

/// Interior nodes of a closed rectangle [0, w] x [0, ht].
GridMask rasterize_rectangle(const Rational& w, const Rational& ht, const Rational& h);

struct SpectrumResult {
  std::vector<double> eigenvalues;  // ascending
  std::size_t k = 0;
  double h = 0;
};

struct EigenOptions {
  std::uint64_t seed = 0;
  std::size_t block = 4;          // block size; at least the largest multiplicity sought
  double tolerance = 1e-11;       // relative residual of the inverse operator
  std::size_t max_dimension = 2000;
};

/**
 * The k smallest eigenvalues of the negative 5-point Laplacian on the mask
 * with zero values off the mask, scaled by 1/h^2. Block Lanczos on the
 * inverse operator (sparse LDL^T factorization) with full
 * reorthogonalization, started from a seeded random block. Throws
 * InvalidInput when k exceeds the node count and NonConvergence when the
 * Krylov space reaches max_dimension first.
 */
SpectrumResult dirichlet_eigenvalues(const GridMask& mask, std::size_t k,
                                     const EigenOptions& options = {});

struct SpectrumComparison {
  std::vector<double> relative_gaps;  // |a_i - b_i| / max(a_i, b_i)
  double max_gap = 0;
  bool within(double tolerance) const { return max_gap <= tolerance; }
};

/// Symmetric in its arguments. Throws InvalidInput on different lengths.
SpectrumComparison compare_spectra(const SpectrumResult& a, const SpectrumResult& b);

/// Eigenvalues predicted below E: (area E - perimeter sqrt(E)) / (4 pi).
/// A perimeter of zero leaves the leading term alone.
double weyl_count(double area, double perimeter, double E);

}  // namespace isodrum
