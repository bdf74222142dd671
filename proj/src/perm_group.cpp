#include "isodrum/perm_group.hpp"

#include <algorithm>
#include <set>

#include "isodrum/errors.hpp"

namespace isodrum {

namespace {

std::optional<Point> first_moved_point(const Permutation& g) {
  for (Point x = 0; x < g.degree(); ++x)
    if (g(x) != x) return x;
  return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------------------
// StabilizerChain

StabilizerChain::StabilizerChain(std::size_t degree, std::span<const Permutation> generators,
                                 std::span<const Point> base_prefix,
                                 std::optional<std::uint64_t> known_order)
    : degree_(degree), known_order_(known_order) {
  std::vector<Permutation> gens;
  for (const auto& g : generators) {
    if (g.degree() != degree) throw InvalidInput("generator degree mismatch");
    if (!g.is_identity()) gens.push_back(g);
  }
  std::vector<Point> base(base_prefix.begin(), base_prefix.end());
  for (Point b : base)
    if (b >= degree) throw InvalidInput("base point out of range");
  for (const auto& g : gens) {
    bool fixes_all = std::all_of(base.begin(), base.end(), [&](Point b) { return g(b) == b; });
    if (fixes_all) base.push_back(*first_moved_point(g));
  }
  levels_.resize(base.size());
  tested_.resize(base.size());
  for (std::size_t l = 0; l < base.size(); ++l) {
    Level& lev = levels_[l];
    lev.base = base[l];
    lev.orbit = {base[l]};
    lev.orbit_index.assign(degree, -1);
    lev.orbit_index[base[l]] = 0;
    lev.transversal = {Permutation(degree)};
    lev.transversal_inverse = {Permutation(degree)};
    tested_[l] = {0};
  }
  for (std::size_t l = 0; l < base.size(); ++l) {
    for (const auto& g : gens) {
      bool fixes_prefix = true;
      for (std::size_t m = 0; m < l && fixes_prefix; ++m)
        fixes_prefix = g(base[m]) == base[m];
      if (fixes_prefix) levels_[l].generators.push_back(g);
    }
    extend_orbit(l, 0);
  }
  if (known_order_ && order() == *known_order_) {
    complete_ = true;
    return;
  }
  for (std::size_t l = levels_.size(); l-- > 0;) {
    if (process_level(l)) break;
  }
}

void StabilizerChain::extend_orbit(std::size_t level, std::size_t first_new_generator) {
  Level& lev = levels_[level];
  std::size_t old_size = lev.orbit.size();
  for (std::size_t k = 0; k < lev.orbit.size(); ++k) {
    std::size_t g0 = k < old_size ? first_new_generator : 0;
    for (std::size_t gi = g0; gi < lev.generators.size(); ++gi) {
      const Permutation& s = lev.generators[gi];
      Point img = s(lev.orbit[k]);
      if (lev.orbit_index[img] >= 0) continue;
      lev.orbit_index[img] = static_cast<std::int32_t>(lev.orbit.size());
      lev.orbit.push_back(img);
      Permutation rep = lev.transversal[k] * s;
      lev.transversal_inverse.push_back(rep.inverse());
      lev.transversal.push_back(std::move(rep));
    }
  }
  tested_[level].resize(lev.orbit.size(), 0);
}

std::size_t StabilizerChain::new_level_for(const Permutation& h) {
  Level lev;
  lev.base = *first_moved_point(h);
  lev.orbit = {lev.base};
  lev.orbit_index.assign(degree_, -1);
  lev.orbit_index[lev.base] = 0;
  lev.transversal = {Permutation(degree_)};
  lev.transversal_inverse = {Permutation(degree_)};
  levels_.push_back(std::move(lev));
  tested_.push_back({0});
  return levels_.size() - 1;
}

void StabilizerChain::add_generator(std::size_t from_level, std::size_t to_level,
                                    const Permutation& h) {
  for (std::size_t l = from_level; l <= to_level; ++l) {
    if (l == levels_.size()) new_level_for(h);
    std::size_t first_new = levels_[l].generators.size();
    levels_[l].generators.push_back(h);
    extend_orbit(l, first_new);
  }
}

// Returns true once the chain is known to be complete (known order reached).
bool StabilizerChain::process_level(std::size_t level) {
  for (std::size_t k = 0; k < levels_[level].orbit.size(); ++k) {
    while (tested_[level][k] < levels_[level].generators.size()) {
      std::size_t gi = tested_[level][k]++;
      const Level& lev = levels_[level];
      const Permutation& s = lev.generators[gi];
      Point delta = lev.orbit[k];
      Point image = s(delta);
      Permutation schreier = lev.transversal[k] * s * lev.rep_inverse(image);
      if (schreier.is_identity()) continue;
      auto [residue, stop] = strip(std::move(schreier), level + 1);
      if (stop == levels_.size() && residue.is_identity()) continue;
      add_generator(level + 1, stop, residue);
      if (known_order_ && order() == *known_order_) {
        complete_ = true;
        return true;
      }
      for (std::size_t m = stop + 1; m-- > level + 1;) {
        if (process_level(m)) return true;
      }
    }
  }
  return false;
}

std::uint64_t StabilizerChain::order() const {
  unsigned __int128 n = 1;
  for (const auto& lev : levels_) {
    n *= lev.orbit.size();
    if (n > static_cast<unsigned __int128>(UINT64_MAX)) {
      throw BoundExceeded("group order exceeds 64-bit range");
    }
  }
  return static_cast<std::uint64_t>(n);
}

std::vector<Point> StabilizerChain::base() const {
  std::vector<Point> b;
  for (const auto& lev : levels_) b.push_back(lev.base);
  return b;
}

std::pair<Permutation, std::size_t> StabilizerChain::strip(Permutation g,
                                                           std::size_t level) const {
  for (std::size_t l = level; l < levels_.size(); ++l) {
    const Level& lev = levels_[l];
    Point delta = g(lev.base);
    if (!lev.in_orbit(delta)) return {std::move(g), l};
    if (delta != lev.base) g = g * lev.rep_inverse(delta);
  }
  return {std::move(g), levels_.size()};
}

bool StabilizerChain::contains(const Permutation& g) const {
  if (g.degree() != degree_) return false;
  auto [residue, stop] = strip(g);
  return stop == levels_.size() && residue.is_identity();
}

std::optional<Permutation> StabilizerChain::element_from_base_images(
    std::span<const Point> images) const {
  // g = g' * u_0 with g' in G^(1); peel off transversal elements level by level.
  std::vector<Point> target(images.begin(), images.end());
  Permutation result(degree_);
  std::vector<const Permutation*> factors;
  for (std::size_t l = 0; l < levels_.size() && l < target.size(); ++l) {
    const Level& lev = levels_[l];
    if (!lev.in_orbit(target[l])) return std::nullopt;
    const Permutation& u = lev.rep(target[l]);
    factors.push_back(&u);
    const Permutation& uinv = lev.rep_inverse(target[l]);
    for (std::size_t m = l + 1; m < target.size(); ++m) target[m] = uinv(target[m]);
  }
  for (std::size_t i = factors.size(); i-- > 0;) result = result * *factors[i];
  return result;
}

std::vector<Permutation> StabilizerChain::strong_generators() const {
  std::set<Permutation> seen;
  std::vector<Permutation> out;
  for (const auto& lev : levels_)
    for (const auto& g : lev.generators)
      if (seen.insert(g).second) out.push_back(g);
  return out;
}

// ---------------------------------------------------------------------------
// PermGroup

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> generators)
    : degree_(degree) {
  for (auto& g : generators) {
    if (g.degree() != degree) throw InvalidInput("generator degree does not match group degree");
    if (!g.is_identity()) generators_.push_back(std::move(g));
  }
  chain_ = std::make_shared<const StabilizerChain>(degree_, generators_);
}

PermGroup PermGroup::trivial(std::size_t degree) { return PermGroup(degree, {}); }

PermGroup PermGroup::symmetric(std::size_t n) {
  if (n < 2) return trivial(n);
  std::vector<Point> cyc(n);
  for (std::size_t i = 0; i < n; ++i) cyc[i] = static_cast<Point>(i);
  return PermGroup(n, {Permutation::from_cycle_list({{0, 1}}, n),
                       Permutation::from_cycle_list({cyc}, n)});
}

PermGroup PermGroup::alternating(std::size_t n) {
  if (n < 3) return trivial(n);
  std::vector<Permutation> gens;
  for (Point k = 2; k < n; ++k) gens.push_back(Permutation::from_cycle_list({{0, 1, k}}, n));
  return PermGroup(n, std::move(gens));
}

PermGroup PermGroup::cyclic(std::size_t n) {
  if (n < 2) return trivial(n);
  std::vector<Point> cyc(n);
  for (std::size_t i = 0; i < n; ++i) cyc[i] = static_cast<Point>(i);
  return PermGroup(n, {Permutation::from_cycle_list({cyc}, n)});
}

bool PermGroup::contains(const Permutation& g) const { return chain_->contains(g); }

bool PermGroup::contains_group(const PermGroup& sub) const {
  if (sub.degree() != degree_) return false;
  return std::all_of(sub.generators().begin(), sub.generators().end(),
                     [&](const Permutation& g) { return contains(g); });
}

bool PermGroup::same_subgroup(const PermGroup& other) const {
  return order() == other.order() && contains_group(other);
}

std::vector<Point> PermGroup::orbit(Point x) const {
  if (x >= degree_) throw InvalidInput("point out of range");
  std::vector<Point> orb{x};
  std::vector<bool> seen(degree_, false);
  seen[x] = true;
  for (std::size_t k = 0; k < orb.size(); ++k)
    for (const auto& g : generators_) {
      Point y = g(orb[k]);
      if (!seen[y]) {
        seen[y] = true;
        orb.push_back(y);
      }
    }
  std::sort(orb.begin(), orb.end());
  return orb;
}

PermGroup PermGroup::stabilizer(Point x) const {
  if (x >= degree_) throw InvalidInput("point out of range");
  const Point prefix[] = {x};
  StabilizerChain c = chain_with_base(prefix);
  if (c.levels().size() <= 1) return trivial(degree_);
  return PermGroup(degree_, c.levels()[1].generators);
}

bool PermGroup::is_transitive() const {
  return degree_ <= 1 || orbit(0).size() == degree_;
}

StabilizerChain PermGroup::chain_with_base(std::span<const Point> prefix) const {
  return StabilizerChain(degree_, chain_->strong_generators(), prefix, order());
}

std::vector<Permutation> PermGroup::elements(std::uint64_t bound) const {
  std::uint64_t n = order();
  if (n > bound) {
    throw BoundExceeded("group of order " + std::to_string(n) + " exceeds enumeration bound " +
                        std::to_string(bound));
  }
  std::vector<Permutation> out{Permutation(degree_)};
  out.reserve(n);
  // g = t_{k-1} * ... * t_0; extend by one level at a time from the bottom.
  const auto& levels = chain_->levels();
  for (std::size_t l = levels.size(); l-- > 0;) {
    std::vector<Permutation> next;
    next.reserve(out.size() * levels[l].transversal.size());
    for (const auto& g : out)
      for (const auto& t : levels[l].transversal) next.push_back(g * t);
    out = std::move(next);
  }
  return out;
}

Permutation PermGroup::random_element(std::mt19937_64& rng) const {
  Permutation g(degree_);
  for (const auto& lev : chain_->levels()) {
    std::uniform_int_distribution<std::size_t> pick(0, lev.transversal.size() - 1);
    g = lev.transversal[pick(rng)] * g;
  }
  return g;
}

PermGroup PermGroup::with_generators(std::span<const Permutation> extra) const {
  std::vector<Permutation> gens = generators_;
  gens.insert(gens.end(), extra.begin(), extra.end());
  return PermGroup(degree_, std::move(gens));
}

PermGroup normal_closure(const PermGroup& G, std::span<const Permutation> elements) {
  for (const auto& s : elements)
    if (!G.contains(s)) throw InvalidInput("normal_closure: element not in group");
  PermGroup N(G.degree(), std::vector<Permutation>(elements.begin(), elements.end()));
  std::vector<Permutation> gens = N.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (const auto& g : G.generators()) {
      Permutation c = conjugate(gens[i], g);
      if (!N.contains(c)) {
        gens.push_back(c);
        N = PermGroup(G.degree(), gens);
      }
    }
  }
  return N;
}

PermGroup conjugate_group(const PermGroup& H, const Permutation& g) {
  std::vector<Permutation> gens;
  for (const auto& h : H.generators()) gens.push_back(conjugate(h, g));
  return PermGroup(H.degree(), std::move(gens));
}

}  // namespace isodrum
