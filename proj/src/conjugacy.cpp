#include "isodrum/conjugacy.hpp"

#include <algorithm>
#include <numeric>

#include "isodrum/errors.hpp"

namespace isodrum {

namespace {

constexpr std::int64_t kUnset = -1;

class ConjugatorSearch {
public:
  ConjugatorSearch(const StabilizerChain& chain, const Permutation& a, const Permutation& b)
      : chain_(chain), a_(a), b_(b), image_(a.degree(), kUnset), used_(a.degree(), false) {
    cycle_len_a_ = cycle_lengths(a);
    cycle_len_b_ = cycle_lengths(b);
  }

  std::optional<Permutation> run() {
    Permutation prefix(a_.degree());
    return search(0, prefix);
  }

private:
  static std::vector<std::size_t> cycle_lengths(const Permutation& p) {
    std::vector<std::size_t> len(p.degree(), 0);
    for (Point x = 0; x < p.degree(); ++x) {
      if (len[x]) continue;
      std::vector<Point> cyc;
      for (Point y = x; len[y] == 0 && (cyc.empty() || y != x); y = p(y)) {
        cyc.push_back(y);
        len[y] = 1;  // mark
      }
      for (Point y : cyc) len[y] = cyc.size();
    }
    return len;
  }

  // Maps the a-cycle through x onto the b-cycle through y; records changes.
  bool assign(Point x, Point y, std::vector<Point>& undo) {
    if (cycle_len_a_[x] != cycle_len_b_[y]) return false;
    Point xs = x, ys = y;
    for (std::size_t j = 0; j < cycle_len_a_[x]; ++j) {
      if (image_[xs] == kUnset) {
        if (used_[ys]) return false;
        image_[xs] = ys;
        used_[ys] = true;
        undo.push_back(xs);
      } else if (image_[xs] != static_cast<std::int64_t>(ys)) {
        return false;
      }
      xs = a_(xs);
      ys = b_(ys);
    }
    return true;
  }

  void rollback(const std::vector<Point>& undo) {
    for (Point x : undo) {
      used_[static_cast<Point>(image_[x])] = false;
      image_[x] = kUnset;
    }
  }

  std::optional<Permutation> search(std::size_t level, const Permutation& prefix) {
    const auto& levels = chain_.levels();
    if (level == levels.size()) {
      if (conjugate(a_, prefix) == b_) return prefix;
      return std::nullopt;
    }
    const auto& lev = levels[level];
    std::vector<std::pair<Point, Point>> candidates;  // (image of base, orbit point)
    for (Point d : lev.orbit) candidates.emplace_back(prefix(d), d);
    std::sort(candidates.begin(), candidates.end());
    for (auto [gamma, d] : candidates) {
      std::vector<Point> undo;
      if (assign(lev.base, gamma, undo)) {
        Permutation next = lev.rep(d) * prefix;
        if (auto found = search(level + 1, next)) return found;
      }
      rollback(undo);
    }
    return std::nullopt;
  }

  const StabilizerChain& chain_;
  const Permutation& a_;
  const Permutation& b_;
  std::vector<std::int64_t> image_;
  std::vector<bool> used_;
  std::vector<std::size_t> cycle_len_a_;
  std::vector<std::size_t> cycle_len_b_;
};

}  // namespace

std::optional<Permutation> is_conjugate(const PermGroup& G, const Permutation& a,
                                        const Permutation& b) {
  if (!G.contains(a) || !G.contains(b)) {
    throw InvalidInput("is_conjugate: element not in group");
  }
  if (a.cycle_type() != b.cycle_type()) return std::nullopt;
  if (a == b) return Permutation(G.degree());
  return ConjugatorSearch(G.chain(), a, b).run();
}

ConjugacyClasses::ConjugacyClasses(const PermGroup& G, std::uint64_t bound) {
  std::vector<Permutation> elems = G.elements(bound);
  constexpr std::uint32_t kNone = UINT32_MAX;
  class_id_.reserve(elems.size());
  for (const auto& e : elems) class_id_.emplace(e, kNone);

  std::vector<Class> raw;
  for (const auto& e : elems) {
    if (class_id_[e] != kNone) continue;
    auto id = static_cast<std::uint32_t>(raw.size());
    std::vector<Permutation> members{e};
    class_id_[e] = id;
    for (std::size_t k = 0; k < members.size(); ++k)
      for (const auto& s : G.generators()) {
        Permutation c = conjugate(members[k], s);
        auto& slot = class_id_[c];
        if (slot == kNone) {
          slot = id;
          members.push_back(std::move(c));
        }
      }
    Class cls;
    cls.representative = *std::min_element(members.begin(), members.end());
    cls.size = members.size();
    cls.element_order = e.order();
    raw.push_back(std::move(cls));
  }
  std::vector<std::uint32_t> perm(raw.size());
  std::iota(perm.begin(), perm.end(), 0u);
  std::sort(perm.begin(), perm.end(), [&](std::uint32_t x, std::uint32_t y) {
    if (raw[x].element_order != raw[y].element_order)
      return raw[x].element_order < raw[y].element_order;
    return raw[x].representative < raw[y].representative;
  });
  std::vector<std::uint32_t> renumber(raw.size());
  for (std::uint32_t i = 0; i < perm.size(); ++i) {
    renumber[perm[i]] = i;
    classes_.push_back(std::move(raw[perm[i]]));
  }
  for (auto& [elem, id] : class_id_) id = renumber[id];
}

std::size_t ConjugacyClasses::class_of(const Permutation& g) const {
  auto it = class_id_.find(g);
  if (it == class_id_.end()) throw InvalidInput("element not in group");
  return it->second;
}

std::vector<Permutation> ConjugacyClasses::members(std::size_t cls) const {
  std::vector<Permutation> out;
  for (const auto& [elem, id] : class_id_)
    if (id == cls) out.push_back(elem);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace isodrum
