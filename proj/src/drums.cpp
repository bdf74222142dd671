#include "isodrum/drums.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "isodrum/errors.hpp"
#include "isodrum/io.hpp"

namespace isodrum {

using nlohmann::json;

BaseTile::BaseTile(Triangle v) : vertices(std::move(v)) {
  if (doubled_signed_area(vertices).sign() == 0) throw InvalidInput("degenerate base tile");
}

BaseTile BaseTile::half_square() { return BaseTile({Vec2{0, 0}, Vec2{1, 0}, Vec2{0, 1}}); }

BaseTile BaseTile::equilateral() {
  Surd h(Rational(0), Rational(1, 2), 3);
  return BaseTile({Vec2{0, 0}, Vec2{1, 0}, Vec2{Rational(1, 2), h}});
}

BaseTile BaseTile::named(const std::string& name) {
  if (name == "half-square") return half_square();
  if (name == "equilateral") return equilateral();
  throw InvalidInput("unknown base tile: " + name);
}

Surd TiledDomain::area() const {
  Surd twice = 0;
  for (const auto& t : tiles) {
    Surd a = doubled_signed_area(t.vertices);
    twice = twice + (a.sign() < 0 ? -a : a);
  }
  return twice / Surd(2);
}

TiledDomain unfold(const InvolutionSystem& sys, const BaseTile& base) {
  if (sys.sides() != 3) throw InvalidInput("unfold: triangle tiles need exactly three sides");
  if (!is_tree(sys)) throw InvalidInput("unfold: the involution graph is not a tree");
  const std::size_t n = sys.tiles();
  TiledDomain d;
  d.tiles.resize(n);
  std::vector<bool> placed(n, false);
  d.tiles[0].vertices = base.vertices;
  d.tiles[0].orientation = doubled_signed_area(base.vertices).sign();
  placed[0] = true;
  std::vector<std::size_t> queue{0};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    std::size_t i = queue[q];
    for (std::size_t mu = 0; mu < 3; ++mu) {
      std::size_t j = sys.side(mu)(static_cast<Point>(i));
      if (j == i) continue;
      if (placed[j]) continue;
      const Triangle& v = d.tiles[i].vertices;
      const Vec2& p = v[(mu + 1) % 3];
      const Vec2& r = v[(mu + 2) % 3];
      PlacedTile t;
      for (int k = 0; k < 3; ++k) t.vertices[k] = reflect(v[k], p, r);
      t.orientation = -d.tiles[i].orientation;
      t.parent = static_cast<int>(i);
      t.via_side = static_cast<int>(mu);
      d.tiles[j] = std::move(t);
      placed[j] = true;
      d.adjacency.push_back({i, j, mu});
      queue.push_back(j);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t mu = 0; mu < 3; ++mu)
      if (sys.side(mu)(static_cast<Point>(i)) == i) d.boundary_sides.emplace_back(i, mu);
  for (std::size_t i = 0; i < n && !d.overlap; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (interiors_overlap(d.tiles[i].vertices, d.tiles[j].vertices)) {
        d.overlap = true;
        break;
      }
  return d;
}

std::pair<Vec2, Vec2> tile_side(const PlacedTile& t, std::size_t mu) {
  const Vec2& p = t.vertices[(mu + 1) % 3];
  const Vec2& q = t.vertices[(mu + 2) % 3];
  if (t.orientation > 0) return {p, q};
  return {q, p};
}

std::vector<Vec2> boundary_polygon(const TiledDomain& d) {
  if (d.overlap) throw InvalidInput("boundary_polygon: tiles overlap");
  if (d.boundary_sides.empty()) throw InvalidInput("boundary_polygon: no boundary sides");
  std::map<Vec2, Vec2> next;
  for (auto [tile, mu] : d.boundary_sides) {
    auto [p, q] = tile_side(d.tiles[tile], mu);
    if (!next.emplace(p, q).second) {
      throw InvalidInput("boundary_polygon: boundary is not a simple closed curve");
    }
  }
  std::vector<Vec2> walk;
  Vec2 start = next.begin()->first, cur = start;
  do {
    walk.push_back(cur);
    auto it = next.find(cur);
    if (it == next.end()) throw InvalidInput("boundary_polygon: open boundary");
    cur = it->second;
    if (walk.size() > next.size()) throw InvalidInput("boundary_polygon: boundary does not close");
  } while (!(cur == start));
  if (walk.size() != next.size()) {
    throw InvalidInput("boundary_polygon: boundary has several components");
  }
  std::vector<Vec2> merged;
  const std::size_t m = walk.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2& prev = walk[(i + m - 1) % m];
    const Vec2& next_v = walk[(i + 1) % m];
    if (orientation(prev, walk[i], next_v) != 0) merged.push_back(walk[i]);
  }
  // Start at the least vertex for a deterministic listing.
  auto least = std::min_element(merged.begin(), merged.end());
  std::rotate(merged.begin(), least, merged.end());
  return merged;
}

Surd polygon_area(const std::vector<Vec2>& poly) {
  Surd twice = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) twice = twice + cross(poly[i], poly[(i + 1) % poly.size()]);
  return twice / Surd(2);
}

namespace {

// Per corner: length^2 of the incoming side, dot and cross with the outgoing one.
std::vector<std::array<Surd, 3>> corner_signature(const std::vector<Vec2>& pts) {
  std::size_t n = pts.size();
  std::vector<std::array<Surd, 3>> out;
  for (std::size_t i = 0; i < n; ++i) {
    Vec2 in = pts[i] - pts[(i + n - 1) % n];
    Vec2 next = pts[(i + 1) % n] - pts[i];
    out.push_back({dot(in, in), dot(in, next), cross(in, next)});
  }
  return out;
}

}  // namespace

bool congruent(const std::vector<Vec2>& p, const std::vector<Vec2>& q) {
  if (p.size() != q.size()) return false;
  if (p.empty()) return true;
  auto sp = corner_signature(p);
  std::vector<Vec2> mirror;
  for (const auto& v : q) mirror.push_back({-v.x, v.y});
  std::vector<std::vector<Vec2>> candidates{q, mirror};
  for (std::size_t c = 0; c < 2; ++c) {
    candidates.push_back(candidates[c]);
    std::reverse(candidates.back().begin(), candidates.back().end());
  }
  std::size_t n = sp.size();
  for (const auto& cand : candidates) {
    auto sq = corner_signature(cand);
    for (std::size_t shift = 0; shift < n; ++shift) {
      bool all = true;
      for (std::size_t i = 0; i < n && all; ++i) all = sp[i] == sq[(i + shift) % n];
      if (all) return true;
    }
  }
  return false;
}

InvolutionSystem recolored(const InvolutionSystem& sys, const std::vector<std::size_t>& order) {
  if (order.size() != sys.sides()) throw InvalidInput("recolored: order has the wrong length");
  std::vector<bool> seen(order.size(), false);
  std::vector<Permutation> sides;
  for (auto mu : order) {
    if (mu >= order.size() || seen[mu]) throw InvalidInput("recolored: order is not a permutation");
    seen[mu] = true;
    sides.push_back(sys.side(mu));
  }
  return InvolutionSystem(sys.tiles(), std::move(sides));
}

std::map<std::string, std::size_t> perimeter_terms(const TiledDomain& d) {
  std::map<std::string, std::size_t> out;
  for (auto [tile, mu] : d.boundary_sides) {
    auto [p, q] = tile_side(d.tiles[tile], mu);
    ++out[dot(q - p, q - p).to_string()];
  }
  return out;
}

double perimeter(const std::vector<Vec2>& poly) {
  double total = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % poly.size()];
    total += std::hypot((q.x - p.x).to_double(), (q.y - p.y).to_double());
  }
  return total;
}

namespace {

json rational_json(const Rational& r) {
  if (!r.get_num().fits_slong_p() || !r.get_den().fits_slong_p()) {
    return json::array({r.get_num().get_str(), r.get_den().get_str()});
  }
  return json::array({r.get_num().get_si(), r.get_den().get_si()});
}

Rational rational_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("expected a [numerator, denominator] pair");
  auto part = [](const json& v) {
    if (v.is_number_integer()) return mpz_class(v.get<long>());
    if (v.is_string()) return mpz_class(v.get<std::string>());
    throw ParseError("rational part must be an integer");
  };
  mpz_class den = part(j[1]);
  if (den == 0) throw ParseError("zero denominator");
  Rational r(part(j[0]), den);
  r.canonicalize();
  return r;
}

json surd_json(const Surd& s) {
  if (s.is_rational()) return rational_json(s.rational_part());
  return {{"a", rational_json(s.rational_part())},
          {"b", rational_json(s.surd_part())},
          {"d", s.radicand()}};
}

Surd surd_from(const json& j) {
  if (j.is_array()) return Surd(rational_from(j));
  if (!j.is_object()) throw ParseError("bad coordinate");
  return Surd(rational_from(j.at("a")), rational_from(j.at("b")), j.at("d").get<long>());
}

json point_json(const Vec2& p) { return json::array({surd_json(p.x), surd_json(p.y)}); }

Vec2 point_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("a point needs two coordinates");
  return {surd_from(j[0]), surd_from(j[1])};
}

}  // namespace

std::string to_json(const TiledDomain& d) {
  json doc;
  doc["tiles"] = json::array();
  for (const auto& t : d.tiles) {
    json tile;
    tile["vertices"] = json::array();
    for (const auto& v : t.vertices) tile["vertices"].push_back(point_json(v));
    tile["orientation"] = t.orientation;
    tile["parent"] = t.parent;
    tile["via_side"] = t.via_side;
    doc["tiles"].push_back(tile);
  }
  doc["adjacency"] = json::array();
  for (const auto& e : d.adjacency) doc["adjacency"].push_back({e.a, e.b, e.side});
  doc["boundary_sides"] = json::array();
  for (auto [t, s] : d.boundary_sides) doc["boundary_sides"].push_back({t, s});
  doc["overlap"] = d.overlap;
  doc["boundary"] = nullptr;
  if (!d.overlap) {
    try {
      json b = json::array();
      for (const auto& v : boundary_polygon(d)) b.push_back(point_json(v));
      doc["boundary"] = b;
    } catch (const InvalidInput&) {
    }
  }
  return doc.dump(1);
}

TiledDomain domain_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("domain json: ") + e.what());
  }
  try {
    TiledDomain d;
    for (const auto& t : doc.at("tiles")) {
      PlacedTile p;
      const auto& vs = t.at("vertices");
      if (vs.size() != 3) throw ParseError("a tile needs three vertices");
      for (int k = 0; k < 3; ++k) p.vertices[k] = point_from(vs[k]);
      p.orientation = t.at("orientation").get<int>();
      p.parent = t.at("parent").get<int>();
      p.via_side = t.at("via_side").get<int>();
      d.tiles.push_back(std::move(p));
    }
    for (const auto& e : doc.at("adjacency"))
      d.adjacency.push_back({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>(),
                             e.at(2).get<std::size_t>()});
    for (const auto& b : doc.at("boundary_sides"))
      d.boundary_sides.emplace_back(b.at(0).get<std::size_t>(), b.at(1).get<std::size_t>());
    d.overlap = doc.at("overlap").get<bool>();
    return d;
  } catch (const json::exception& e) {
    throw ParseError(std::string("domain json: ") + e.what());
  }
}

std::vector<Vec2> boundary_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("domain json: ") + e.what());
  }
  if (!doc.contains("boundary") || doc["boundary"].is_null()) {
    throw ParseError("domain json has no boundary polygon");
  }
  std::vector<Vec2> out;
  for (const auto& v : doc["boundary"]) out.push_back(point_from(v));
  return out;
}

std::string to_svg(const TiledDomain& d) {
  double lo_x = std::numeric_limits<double>::max(), lo_y = lo_x;
  double hi_x = std::numeric_limits<double>::lowest(), hi_y = hi_x;
  for (const auto& t : d.tiles)
    for (const auto& v : t.vertices) {
      lo_x = std::min(lo_x, v.x.to_double());
      hi_x = std::max(hi_x, v.x.to_double());
      lo_y = std::min(lo_y, v.y.to_double());
      hi_y = std::max(hi_y, v.y.to_double());
    }
  const double pad = 0.1, scale = 100;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
     << (hi_x - lo_x + 2 * pad) * scale << "\" height=\"" << (hi_y - lo_y + 2 * pad) * scale
     << "\" viewBox=\"" << lo_x - pad << ' ' << -(hi_y + pad) << ' ' << hi_x - lo_x + 2 * pad << ' '
     << hi_y - lo_y + 2 * pad << "\">\n";
  os << "<g transform=\"scale(1,-1)\" stroke-linejoin=\"round\">\n";
  for (std::size_t i = 0; i < d.tiles.size(); ++i) {
    const auto& v = d.tiles[i].vertices;
    os << "<path id=\"tile" << i << "\" d=\"M " << v[0].x.to_double() << ' ' << v[0].y.to_double()
       << " L " << v[1].x.to_double() << ' ' << v[1].y.to_double() << " L " << v[2].x.to_double()
       << ' ' << v[2].y.to_double()
       << " Z\" fill=\"#dde6f0\" stroke=\"#7a8ca0\" stroke-width=\"0.01\"/>\n";
  }
  if (!d.overlap) {
    try {
      auto poly = boundary_polygon(d);
      os << "<path id=\"boundary\" d=\"";
      for (std::size_t i = 0; i < poly.size(); ++i)
        os << (i ? " L " : "M ") << poly[i].x.to_double() << ' ' << poly[i].y.to_double();
      os << " Z\" fill=\"none\" stroke=\"#1a1a1a\" stroke-width=\"0.03\"/>\n";
    } catch (const InvalidInput&) {
    }
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

void export_svg(const TiledDomain& d, const std::string& path) { write_file(path, to_svg(d)); }
void export_json(const TiledDomain& d, const std::string& path) { write_file(path, to_json(d)); }

}  // namespace isodrum
