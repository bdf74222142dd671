#include "isodrum/involution_system.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "isodrum/errors.hpp"

namespace isodrum {

namespace {

bool generates_transitive(std::size_t n, const std::vector<Permutation>& perms) {
  if (n <= 1) return true;
  std::vector<bool> seen(n, false);
  std::vector<Point> queue{0};
  seen[0] = true;
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (const auto& p : perms) {
      Point y = p(queue[k]);
      if (!seen[y]) {
        seen[y] = true;
        queue.push_back(y);
      }
    }
  return queue.size() == n;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::size_t parse_count(std::string_view line, std::string_view key) {
  line = trim(line);
  if (line.substr(0, key.size()) != key) {
    throw ParseError("expected '" + std::string(key) + "' line, got: " + std::string(line));
  }
  std::string rest(trim(line.substr(key.size())));
  if (rest.empty() || !std::all_of(rest.begin(), rest.end(), ::isdigit)) {
    throw ParseError("expected a non-negative integer after " + std::string(key));
  }
  return std::stoul(rest);
}

}  // namespace

InvolutionSystem::InvolutionSystem(std::size_t tiles, std::vector<Permutation> sides)
    : tiles_(tiles), sides_(std::move(sides)) {
  if (tiles_ == 0) throw InvalidInput("involution system needs at least one tile");
  for (const auto& s : sides_) {
    if (s.degree() != tiles_) throw InvalidInput("side permutation has the wrong degree");
    if (!(s * s).is_identity()) throw InvalidInput("side permutation is not an involution");
  }
  if (!generates_transitive(tiles_, sides_)) {
    throw InvalidInput("side involutions do not act transitively on the tiles");
  }
}

std::vector<std::vector<int>> InvolutionSystem::matrix(std::size_t mu) const {
  std::vector<std::vector<int>> m(tiles_, std::vector<int>(tiles_, 0));
  for (Point i = 0; i < tiles_; ++i) m[i][sides_[mu](i)] = 1;
  return m;
}

InvolutionSystem InvolutionSystem::relabeled(const Permutation& p) const {
  std::vector<Permutation> out;
  for (const auto& s : sides_) out.push_back(conjugate(s, p));
  return InvolutionSystem(tiles_, std::move(out));
}

std::string InvolutionSystem::to_text() const {
  std::ostringstream os;
  os << "tiles: " << tiles_ << "\n";
  os << "sides: " << sides_.size() << "\n";
  for (std::size_t mu = 0; mu < sides_.size(); ++mu) {
    const auto& s = sides_[mu];
    os << "side " << (mu + 1) << ":";
    for (Point i = 0; i < tiles_; ++i)
      if (s(i) > i) os << " (" << (i + 1) << ' ' << (s(i) + 1) << ')';
    os << " ; boundary:";
    for (Point i = 0; i < tiles_; ++i)
      if (s(i) == i) os << ' ' << (i + 1);
    os << "\n";
  }
  return os.str();
}

InvolutionSystem InvolutionSystem::from_text(std::string_view text) {
  std::vector<std::string> lines;
  {
    std::string buf(text);
    std::istringstream is(buf);
    std::string line;
    while (std::getline(is, line)) {
      auto t = trim(line);
      if (t.empty() || t.front() == '#') continue;
      lines.emplace_back(t);
    }
  }
  if (lines.size() < 2) throw ParseError("involution system: missing header lines");
  std::size_t tiles = parse_count(lines[0], "tiles:");
  std::size_t r = parse_count(lines[1], "sides:");
  if (tiles == 0) throw ParseError("involution system: tile count must be positive");
  if (lines.size() != 2 + r) throw ParseError("involution system: side count mismatch");
  std::vector<Permutation> sides;
  for (std::size_t mu = 0; mu < r; ++mu) {
    std::string_view line = lines[2 + mu];
    std::string head = "side " + std::to_string(mu + 1) + ":";
    if (line.substr(0, head.size()) != head) {
      throw ParseError("expected '" + head + "', got: " + std::string(line));
    }
    line.remove_prefix(head.size());
    auto semi = line.find(';');
    if (semi == std::string_view::npos) throw ParseError("side line lacks '; boundary:'");
    std::string_view pairs = trim(line.substr(0, semi));
    std::string_view bnd = trim(line.substr(semi + 1));
    if (bnd.substr(0, 9) != "boundary:") throw ParseError("side line lacks 'boundary:'");
    bnd.remove_prefix(9);

    std::vector<Point> img(tiles);
    std::vector<bool> covered(tiles, false);
    auto cover = [&](unsigned long v) -> Point {
      if (v == 0 || v > tiles) throw ParseError("tile index out of range");
      if (covered[v - 1]) throw ParseError("tile listed twice in one side");
      covered[v - 1] = true;
      return static_cast<Point>(v - 1);
    };
    std::size_t i = 0;
    while (i < pairs.size()) {
      if (std::isspace(static_cast<unsigned char>(pairs[i]))) {
        ++i;
        continue;
      }
      if (pairs[i] != '(') throw ParseError("expected '(' in side pairs");
      auto close = pairs.find(')', i);
      if (close == std::string_view::npos) throw ParseError("unterminated pair");
      std::istringstream ps{std::string(pairs.substr(i + 1, close - i - 1))};
      unsigned long a = 0, b = 0;
      std::string extra;
      if (!(ps >> a >> b) || (ps >> extra)) throw ParseError("a glued pair needs two tiles");
      Point x = cover(a), y = cover(b);
      img[x] = y;
      img[y] = x;
      i = close + 1;
    }
    std::istringstream bs{std::string(bnd)};
    std::string tok;
    while (bs >> tok) {
      if (!std::all_of(tok.begin(), tok.end(), ::isdigit)) throw ParseError("bad boundary tile");
      Point x = cover(std::stoul(tok));
      img[x] = x;
    }
    if (!std::all_of(covered.begin(), covered.end(), [](bool c) { return c; })) {
      throw ParseError("side " + std::to_string(mu + 1) + " does not cover every tile");
    }
    sides.push_back(Permutation::from_images_unchecked(std::move(img)));
  }
  try {
    return InvolutionSystem(tiles, std::move(sides));
  } catch (const InvalidInput& e) {
    throw ParseError(std::string("involution system: ") + e.what());
  }
}

InvolutionSystem schreier_system(const PermGroup& G, std::span<const Permutation> generators) {
  std::vector<Permutation> sides;
  for (const auto& g : generators) {
    if (g.degree() != G.degree()) throw InvalidInput("schreier_system: degree mismatch");
    if (!G.contains(g)) throw InvalidInput("schreier_system: generator not in group");
    if (!(g * g).is_identity()) throw InvalidInput("schreier_system: generator is not an involution");
    sides.push_back(g);
  }
  return InvolutionSystem(G.degree(), std::move(sides));
}

bool is_tree(const InvolutionSystem& sys) {
  const std::size_t n = sys.tiles();
  std::vector<Point> parent(n);
  std::iota(parent.begin(), parent.end(), Point{0});
  auto find = [&](Point x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t edges = 0;
  for (const auto& s : sys.side_permutations())
    for (Point i = 0; i < n; ++i) {
      if (s(i) <= i) continue;
      ++edges;
      Point a = find(i), b = find(s(i));
      if (a == b) return false;
      parent[a] = b;
    }
  return edges + 1 == n;
}

std::size_t total_boundary_sides(const InvolutionSystem& sys) {
  std::size_t total = 0;
  for (std::size_t mu = 0; mu < sys.sides(); ++mu) total += sys.trace(mu);
  return total;
}

bool fixeq_check(const InvolutionSystem& sys) {
  auto lhs = (static_cast<long long>(sys.sides()) - 2) * static_cast<long long>(sys.tiles());
  auto rhs = static_cast<long long>(total_boundary_sides(sys)) - 2;
  return lhs == rhs;
}

}  // namespace isodrum
