#include "isodrum/cosets.hpp"

#include <algorithm>
#include <numeric>

#include "isodrum/errors.hpp"

namespace isodrum {

namespace {

std::vector<Point> complete_base(std::size_t degree) {
  std::vector<Point> base(degree);
  std::iota(base.begin(), base.end(), Point{0});
  return base;
}

// Subgroup of `group` generated by Schreier generators, stopping once the
// expected order is reached.
PermGroup subgroup_from_candidates(std::size_t degree, std::uint64_t target_order,
                                   const std::vector<Permutation>& candidates) {
  PermGroup sub = PermGroup::trivial(degree);
  std::vector<Permutation> gens;
  for (const auto& c : candidates) {
    if (sub.order() == target_order) break;
    if (c.is_identity() || sub.contains(c)) continue;
    gens.push_back(c);
    sub = PermGroup(degree, gens);
  }
  return sub;
}

}  // namespace

CosetTable::CosetTable(const PermGroup& G, const PermGroup& H, std::uint64_t bound)
    : parent_(G), subgroup_(H) {
  if (G.degree() != H.degree() || !G.contains_group(H)) {
    throw InvalidInput("coset table: subgroup is not contained in the parent group");
  }
  std::uint64_t index = G.order() / H.order();
  if (index > bound) {
    throw BoundExceeded("index " + std::to_string(index) + " exceeds bound " +
                        std::to_string(bound));
  }
  std::vector<Point> base = complete_base(G.degree());
  subgroup_chain_ = H.chain_with_base(base);

  representatives_.push_back(Permutation(G.degree()));
  index_.emplace(representatives_[0], 0);
  for (std::size_t c = 0; c < representatives_.size(); ++c) {
    for (const auto& s : G.generators()) {
      Permutation rep = canonical(representatives_[c] * s);
      if (index_.count(rep)) continue;
      index_.emplace(rep, representatives_.size());
      representatives_.push_back(std::move(rep));
    }
  }
  if (representatives_.size() != index) {
    throw std::logic_error("coset enumeration produced an unexpected coset count");
  }
}

Permutation CosetTable::canonical(const Permutation& g) const {
  // Lexicographically least element of {h * g : h in H}. At level l choose
  // the point d of the basic orbit minimising g(d), then replace g by u_d * g.
  Permutation cur = g;
  for (const auto& lev : subgroup_chain_.levels()) {
    if (lev.orbit.size() == 1) continue;
    Point best = lev.orbit[0];
    for (Point d : lev.orbit)
      if (cur(d) < cur(best)) best = d;
    if (best != lev.base) cur = lev.rep(best) * cur;
  }
  return cur;
}

std::size_t CosetTable::index_of(const Permutation& g) const {
  auto it = index_.find(canonical(g));
  if (it == index_.end()) throw InvalidInput("element is not in the parent group");
  return it->second;
}

Permutation CosetTable::action_of(const Permutation& g) const {
  std::vector<Point> img(representatives_.size());
  for (std::size_t c = 0; c < representatives_.size(); ++c)
    img[c] = static_cast<Point>(index_of(representatives_[c] * g));
  return Permutation::from_images_unchecked(std::move(img));
}

CosetAction coset_action(const PermGroup& G, const PermGroup& H, std::uint64_t bound) {
  CosetTable table(G, H, bound);
  std::vector<Permutation> images;
  for (const auto& s : G.generators()) images.push_back(table.action_of(s));
  PermGroup image(table.size(), images);
  return CosetAction{std::move(table), std::move(image), std::move(images)};
}

PermGroup core(const PermGroup& G, const PermGroup& H, std::uint64_t bound) {
  CosetTable table(G, H, bound);
  PermGroup C = H;
  const std::size_t m = table.size();
  for (std::size_t c = 0; c < m && !C.is_trivial(); ++c) {
    std::vector<Permutation> actions;
    bool all_fix = true;
    for (const auto& s : C.generators()) {
      actions.push_back(table.action_of(s));
      if (actions.back()(static_cast<Point>(c)) != c) all_fix = false;
    }
    if (all_fix) continue;
    // Orbit of coset c under C with transversal elements of C.
    std::vector<std::int64_t> where(m, -1);
    std::vector<Point> orbit{static_cast<Point>(c)};
    std::vector<Permutation> trans{Permutation(G.degree())};
    where[c] = 0;
    for (std::size_t k = 0; k < orbit.size(); ++k) {
      for (std::size_t i = 0; i < actions.size(); ++i) {
        Point img = actions[i](orbit[k]);
        if (where[img] >= 0) continue;
        where[img] = static_cast<std::int64_t>(orbit.size());
        orbit.push_back(img);
        trans.push_back(trans[k] * C.generators()[i]);
      }
    }
    std::vector<Permutation> schreier;
    for (std::size_t k = 0; k < orbit.size(); ++k)
      for (std::size_t i = 0; i < actions.size(); ++i) {
        Point img = actions[i](orbit[k]);
        schreier.push_back(trans[k] * C.generators()[i] * trans[where[img]].inverse());
      }
    C = subgroup_from_candidates(G.degree(), C.order() / orbit.size(), schreier);
  }
  return C;
}

MaximalityResult is_maximal(const PermGroup& G, const PermGroup& H, std::uint64_t index_bound) {
  if (G.degree() != H.degree() || !G.contains_group(H)) {
    throw InvalidInput("is_maximal: H is not a subgroup of G");
  }
  if (H.order() == G.order()) return {false, std::nullopt};
  CosetTable table(G, H, index_bound);
  const std::size_t m = table.size();
  std::vector<Permutation> actions;
  for (const auto& h : H.generators()) actions.push_back(table.action_of(h));
  std::vector<bool> seen(m, false);
  seen[0] = true;
  for (std::size_t c = 1; c < m; ++c) {
    if (seen[c]) continue;
    // New H-orbit on the cosets; c is its least member.
    std::vector<Point> orb{static_cast<Point>(c)};
    seen[c] = true;
    for (std::size_t k = 0; k < orb.size(); ++k)
      for (const auto& a : actions) {
        Point y = a(orb[k]);
        if (!seen[y]) {
          seen[y] = true;
          orb.push_back(y);
        }
      }
    const Permutation extra[] = {table.representatives()[c]};
    PermGroup M = H.with_generators(extra);
    if (M.order() != G.order()) return {false, M};
  }
  return {true, std::nullopt};
}

}  // namespace isodrum
