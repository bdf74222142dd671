#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "isodrum/geometry.hpp"
#include "isodrum/involution_system.hpp"

namespace isodrum {

/// A triangle whose side mu is the side opposite vertex mu.
struct BaseTile {
  Triangle vertices;

  /// Throws InvalidInput for a degenerate triangle.
  explicit BaseTile(Triangle v);

  /// (0,0), (1,0), (0,1): the right angle sits at vertex 0.
  static BaseTile half_square();
  /// (0,0), (1,0), (1/2, sqrt(3)/2).
  static BaseTile equilateral();
  /// "half-square" or "equilateral".
  static BaseTile named(const std::string& name);
};

struct PlacedTile {
  Triangle vertices;  // vertex k is the image of base vertex k
  int orientation = 1;  // sign of the signed area
  int parent = -1;      // tile it was reflected from
  int via_side = -1;    // side of the parent it was reflected across
};

struct TileEdge {
  std::size_t a = 0, b = 0, side = 0;
  friend bool operator==(const TileEdge&, const TileEdge&) = default;
};

struct TiledDomain {
  std::vector<PlacedTile> tiles;
  std::vector<TileEdge> adjacency;
  /// Boundary sides (tile, side) as marked by the involution system.
  std::vector<std::pair<std::size_t, std::size_t>> boundary_sides;
  bool overlap = false;

  Surd area() const;
};

/// Breadth-first reflection along the tree edges, starting from the base
/// tile as tile 0. Throws InvalidInput for a non-tree system or a system
/// whose side count differs from 3.
TiledDomain unfold(const InvolutionSystem& sys, const BaseTile& base);

/// Endpoints of side mu of a placed tile, in counterclockwise order around it.
std::pair<Vec2, Vec2> tile_side(const PlacedTile& t, std::size_t mu);

/// Closed counterclockwise boundary walk with collinear runs merged.
/// Throws InvalidInput for overlapping domains or a boundary that is not a
/// single closed curve.
std::vector<Vec2> boundary_polygon(const TiledDomain& d);

Surd polygon_area(const std::vector<Vec2>& poly);

/// Equal up to a rigid motion, reflections included: the cyclic sequences
/// of side lengths and corner turns agree, compared exactly.
bool congruent(const std::vector<Vec2>& p, const std::vector<Vec2>& q);

/// Sides recolored: side mu of the result is side order[mu] of sys.
InvolutionSystem recolored(const InvolutionSystem& sys, const std::vector<std::size_t>& order);

/// Multiset of squared side lengths of the unmerged boundary; equal
/// multisets give equal perimeters.
std::map<std::string, std::size_t> perimeter_terms(const TiledDomain& d);
double perimeter(const std::vector<Vec2>& poly);

std::string to_svg(const TiledDomain& d);
std::string to_json(const TiledDomain& d);
/// Reads the output of to_json back. Throws ParseError.
TiledDomain domain_from_json(const std::string& text);
/// Reads only the boundary polygon of a to_json document.
std::vector<Vec2> boundary_from_json(const std::string& text);

void export_svg(const TiledDomain& d, const std::string& path);
void export_json(const TiledDomain& d, const std::string& path);

}  // namespace isodrum
