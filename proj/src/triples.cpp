#include "isodrum/triples.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "isodrum/conjugacy.hpp"
#include "isodrum/cosets.hpp"
#include "isodrum/errors.hpp"
#include "isodrum/homomorphism.hpp"

namespace isodrum {

Triple::Triple(PermGroup g, PermGroup h, PermGroup k, std::string name)
    : G(std::move(g)), H(std::move(h)), K(std::move(k)), label(std::move(name)) {
  if (H.degree() != G.degree() || K.degree() != G.degree()) {
    throw InvalidInput("triple: subgroup degree differs from the parent degree");
  }
  if (!G.contains_group(H)) throw InvalidInput("triple: H is not a subgroup of G");
  if (!G.contains_group(K)) throw InvalidInput("triple: K is not a subgroup of G");
}

namespace {

// Fuses elements into G-classes by cycle type and explicit conjugacy tests.
class ClassFuser {
public:
  explicit ClassFuser(const PermGroup& G) : G_(G) {}

  std::size_t class_of(const Permutation& g) {
    auto& bucket = buckets_[g.cycle_type()];
    for (std::size_t idx : bucket)
      if (reps_[idx] == g || is_conjugate(G_, g, reps_[idx])) return idx;
    reps_.push_back(g);
    bucket.push_back(reps_.size() - 1);
    return reps_.size() - 1;
  }
  const std::vector<Permutation>& representatives() const { return reps_; }

private:
  const PermGroup& G_;
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> buckets_;
  std::vector<Permutation> reps_;
};

std::string group_summary(const PermGroup& P) {
  std::ostringstream os;
  os << "order " << P.order() << ", generators [";
  for (std::size_t i = 0; i < P.generators().size(); ++i)
    os << (i ? ", " : "") << P.generators()[i].to_cycle_string();
  os << "]";
  return os.str();
}

}  // namespace

std::vector<ClassCount> ac_class_counts(const Triple& t, const Bounds& bounds) {
  std::vector<Permutation> h_elems = t.H.elements(bounds.enumeration);
  std::vector<Permutation> k_elems = t.K.elements(bounds.enumeration);
  std::vector<ClassCount> out;
  if (t.G.order() <= bounds.enumeration) {
    ConjugacyClasses cc(t.G, bounds.enumeration);
    std::vector<ClassCount> all(cc.count());
    for (std::size_t i = 0; i < cc.count(); ++i) {
      all[i].representative = cc.classes()[i].representative;
      all[i].class_size = cc.classes()[i].size;
    }
    for (const auto& h : h_elems) ++all[cc.class_of(h)].in_h;
    for (const auto& k : k_elems) ++all[cc.class_of(k)].in_k;
    for (auto& c : all)
      if (c.in_h || c.in_k) out.push_back(std::move(c));
    return out;
  }
  ClassFuser fuser(t.G);
  std::vector<std::uint64_t> in_h, in_k;
  auto bump = [](std::vector<std::uint64_t>& v, std::size_t idx) {
    if (v.size() <= idx) v.resize(idx + 1, 0);
    ++v[idx];
  };
  for (const auto& h : h_elems) bump(in_h, fuser.class_of(h));
  for (const auto& k : k_elems) bump(in_k, fuser.class_of(k));
  const auto& reps = fuser.representatives();
  in_h.resize(reps.size(), 0);
  in_k.resize(reps.size(), 0);
  for (std::size_t i = 0; i < reps.size(); ++i) out.push_back({reps[i], 0, in_h[i], in_k[i]});
  return out;
}

bool is_ac(const Triple& t, const Bounds& bounds) {
  if (t.H.order() != t.K.order()) return false;
  if (t.H.same_subgroup(t.K)) return true;
  auto counts = ac_class_counts(t, bounds);
  return std::all_of(counts.begin(), counts.end(),
                     [](const ClassCount& c) { return c.in_h == c.in_k; });
}

EcResult check_ec(const Triple& t, const Bounds& bounds) {
  if (t.H.same_subgroup(t.K)) return {true, std::nullopt, 0};
  ConjugacyClasses h_classes(t.H, bounds.enumeration);
  ConjugacyClasses k_classes(t.K, bounds.enumeration);
  std::vector<Permutation> h_reps, k_reps;
  for (const auto& c : h_classes.classes()) h_reps.push_back(c.representative);
  for (const auto& c : k_classes.classes()) k_reps.push_back(c.representative);

  std::vector<bool> h_ok(h_reps.size(), false), k_ok(k_reps.size(), false);
  if (t.G.order() <= bounds.enumeration) {
    ConjugacyClasses g_classes(t.G, bounds.enumeration);
    std::vector<bool> hit_h(g_classes.count(), false), hit_k(g_classes.count(), false);
    std::vector<std::size_t> h_cls, k_cls;
    for (const auto& h : h_reps) hit_h[h_cls.emplace_back(g_classes.class_of(h))] = true;
    for (const auto& k : k_reps) hit_k[k_cls.emplace_back(g_classes.class_of(k))] = true;
    for (std::size_t i = 0; i < h_reps.size(); ++i) h_ok[i] = hit_k[h_cls[i]];
    for (std::size_t i = 0; i < k_reps.size(); ++i) k_ok[i] = hit_h[k_cls[i]];
  } else {
    ClassFuser fuser(t.G);
    std::vector<std::size_t> h_cls, k_cls;
    for (const auto& h : h_reps) h_cls.push_back(fuser.class_of(h));
    for (const auto& k : k_reps) k_cls.push_back(fuser.class_of(k));
    for (std::size_t i = 0; i < h_reps.size(); ++i)
      h_ok[i] = std::find(k_cls.begin(), k_cls.end(), h_cls[i]) != k_cls.end();
    for (std::size_t i = 0; i < k_reps.size(); ++i)
      k_ok[i] = std::find(h_cls.begin(), h_cls.end(), k_cls[i]) != h_cls.end();
  }

  EcResult res{true, std::nullopt, 0};
  for (std::size_t i = 0; i < h_reps.size(); ++i)
    if (!h_ok[i] && (!res.witness || h_reps[i] < *res.witness)) {
      res = {false, h_reps[i], 'H'};
    }
  if (res.holds)
    for (std::size_t i = 0; i < k_reps.size(); ++i)
      if (!k_ok[i] && (!res.witness || k_reps[i] < *res.witness)) {
        res = {false, k_reps[i], 'K'};
      }
  return res;
}

std::vector<CharacterValue> permutation_character(const PermGroup& G, const PermGroup& H,
                                                  const Bounds& bounds) {
  ConjugacyClasses cc(G, bounds.enumeration);
  CosetTable table(G, H, bounds.enumeration);
  std::vector<CharacterValue> out;
  for (const auto& c : cc.classes()) {
    out.push_back({c.representative, table.action_of(c.representative).fixed_point_count()});
  }
  return out;
}

FfResult check_ff(const Triple& t, const Bounds& bounds) {
  PermGroup ch = core(t.G, t.H, bounds.enumeration);
  if (!ch.is_trivial()) return {false, ch, 'H'};
  PermGroup ck = core(t.G, t.K, bounds.enumeration);
  if (!ck.is_trivial()) return {false, ck, 'K'};
  return {true, std::nullopt, 0};
}

MaxResult check_max(const Triple& t, const Bounds& bounds) {
  auto mh = is_maximal(t.G, t.H, bounds.index);
  if (!mh.maximal) return {false, mh.intermediate, 'H'};
  auto mk = is_maximal(t.G, t.K, bounds.index);
  if (!mk.maximal) return {false, mk.intermediate, 'K'};
  return {true, std::nullopt, 0};
}

std::string to_string(PairStatus s) {
  switch (s) {
    case PairStatus::Confirmed: return "confirmed";
    case PairStatus::WeakEvidence: return "weak-evidence";
    case PairStatus::Failed: return "failed";
  }
  return "failed";
}

PairResult check_pair(const Triple& t, const std::optional<std::vector<Permutation>>& candidate,
                      const Bounds& bounds) {
  if (t.H.order() != t.K.order()) return {PairStatus::Failed, "|H| != |K|", std::nullopt};
  if (!candidate) {
    if (t.H.same_subgroup(t.K)) {
      return {PairStatus::Confirmed, "H = K; identity automorphism", Permutation(t.G.degree())};
    }
    return {PairStatus::WeakEvidence, "|H| = |K|; no automorphism supplied", std::nullopt};
  }
  Homomorphism sigma(t.G, *candidate, t.G.degree());
  if (!sigma.is_automorphism()) throw InvalidInput("pair candidate is not an automorphism of G");

  std::vector<Permutation> h_images;
  for (const auto& h : t.H.generators()) h_images.push_back(sigma(h));
  PermGroup h_sigma(t.G.degree(), h_images);
  if (!h_sigma.same_subgroup(t.K)) {
    return {PairStatus::WeakEvidence, "candidate does not map H onto K", std::nullopt};
  }
  std::vector<Permutation> sq;
  bool sq_trivial = true;
  for (const auto& h : t.H.generators()) {
    sq.push_back(sigma(sigma(h)));
    sq_trivial = sq_trivial && sq.back() == h;
  }
  if (sq_trivial) return {PairStatus::Confirmed, "sigma^2 is the identity on H", Permutation(t.G.degree())};
  for (const auto& x : t.H.elements(bounds.enumeration)) {
    bool ok = true;
    for (std::size_t i = 0; i < sq.size() && ok; ++i)
      ok = conjugate(t.H.generators()[i], x) == sq[i];
    if (ok) return {PairStatus::Confirmed, "sigma^2 is inner on H", x};
  }
  return {PairStatus::WeakEvidence, "sigma maps H onto K but sigma^2 is not inner on H",
          std::nullopt};
}

namespace {

struct InvCandidate {
  Permutation element;
  Permutation image;
  std::size_t fixed = 0;
};

class InvolutionSearch {
public:
  InvolutionSearch(const std::vector<InvCandidate>& cands, std::size_t r, std::size_t tiles,
                   bool tree, std::uint64_t limit)
      : cands_(cands), r_(r), tiles_(tiles), tree_(tree), limit_(limit) {
    target_ = static_cast<long long>((r - 2) * tiles + 2);
  }

  std::optional<std::vector<std::size_t>> run() {
    chosen_.clear();
    if (cands_.size() < r_) return std::nullopt;
    if (recurse(0, 0)) return chosen_;
    return std::nullopt;
  }

private:
  bool recurse(std::size_t start, long long sum) {
    std::size_t need = r_ - chosen_.size();
    if (need == 0) {
      if (++examined_ > limit_) throw BoundExceeded("involution search exceeded its subset bound");
      return sum == target_ && accept();
    }
    for (std::size_t i = start; i + need <= cands_.size(); ++i) {
      // Descending order: the next `need` values from i are the largest still available.
      long long best = sum;
      for (std::size_t j = i; j < i + need; ++j) best += static_cast<long long>(cands_[j].fixed);
      if (best < target_) break;
      long long least = sum + static_cast<long long>(cands_[i].fixed);
      for (std::size_t j = cands_.size() - (need - 1); j < cands_.size(); ++j)
        least += static_cast<long long>(cands_[j].fixed);
      if (least > target_) continue;
      chosen_.push_back(i);
      if (recurse(i + 1, sum + static_cast<long long>(cands_[i].fixed))) return true;
      chosen_.pop_back();
    }
    return false;
  }

  bool accept() const {
    std::vector<Permutation> sides;
    for (std::size_t i : chosen_) sides.push_back(cands_[i].image);
    std::vector<Point> parent(tiles_);
    std::iota(parent.begin(), parent.end(), Point{0});
    auto find = [&](Point x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::size_t components = tiles_;
    for (const auto& s : sides)
      for (Point x = 0; x < tiles_; ++x) {
        Point a = find(x), b = find(s(x));
        if (a != b) {
          parent[a] = b;
          --components;
        }
      }
    if (components != 1) return false;
    return !tree_ || is_tree(InvolutionSystem(tiles_, sides));
  }

  const std::vector<InvCandidate>& cands_;
  std::size_t r_, tiles_;
  bool tree_;
  std::uint64_t limit_;
  long long target_ = 0;
  std::uint64_t examined_ = 0;
  std::vector<std::size_t> chosen_;
};

}  // namespace

std::optional<InvolutionWitness> check_inv(const Triple& t, std::size_t r, bool tree_required,
                                           const Bounds& bounds) {
  if (r < 3) throw InvalidInput("check_inv: need at least three sides");
  CosetTable table(t.G, t.H, bounds.enumeration);
  const std::size_t tiles = table.size();
  PermGroup kernel = core(t.G, t.H, bounds.enumeration);

  std::unordered_map<Permutation, std::size_t, PermutationHash> by_image;
  std::vector<InvCandidate> cands;
  for (auto& g : t.G.elements(bounds.enumeration)) {
    if (!kernel.contains(g * g) || kernel.contains(g)) continue;
    Permutation img = table.action_of(g);
    auto [it, fresh] = by_image.try_emplace(img, cands.size());
    if (fresh) {
      std::size_t fix = img.fixed_point_count();
      cands.push_back({std::move(g), std::move(img), fix});
    } else if (g < cands[it->second].element) {
      cands[it->second].element = std::move(g);
    }
  }
  std::sort(cands.begin(), cands.end(), [](const InvCandidate& a, const InvCandidate& b) {
    if (a.fixed != b.fixed) return a.fixed > b.fixed;
    return a.image < b.image;
  });

  InvolutionSearch search(cands, r, tiles, tree_required, bounds.involution_sets);
  auto picked = search.run();
  if (!picked) return std::nullopt;

  InvolutionWitness w;
  std::vector<Permutation> h_sides;
  for (std::size_t i : *picked) {
    w.elements.push_back(cands[i].element);
    w.fixed_points.push_back(cands[i].fixed);
    h_sides.push_back(cands[i].image);
  }
  w.h_system = InvolutionSystem(tiles, std::move(h_sides));
  CosetTable k_table(t.G, t.K, bounds.enumeration);
  std::vector<Permutation> k_sides;
  bool involutive = true;
  for (const auto& g : w.elements) {
    k_sides.push_back(k_table.action_of(g));
    involutive = involutive && (k_sides.back() * k_sides.back()).is_identity();
  }
  if (involutive) {
    try {
      w.k_system = InvolutionSystem(k_table.size(), std::move(k_sides));
    } catch (const InvalidInput&) {
    }
  }
  return w;
}

bool fixes_third(const InvolutionSystem& sys) {
  for (std::size_t mu = 0; mu < sys.sides(); ++mu)
    if (3 * sys.trace(mu) < sys.tiles()) return false;
  return true;
}

PropertyReport verify(const Triple& t, const VerifyOptions& opt) {
  PropertyReport rep;
  rep.label = t.label;
  rep.order_g = t.G.order();
  rep.order_h = t.H.order();
  rep.order_k = t.K.order();
  rep.ac = is_ac(t, opt.bounds);
  auto ec = check_ec(t, opt.bounds);
  rep.ec = ec.holds;
  if (ec.witness) {
    rep.witnesses["ec"] = std::string(1, ec.witness_side) + " element " +
                          ec.witness->to_cycle_string() + " not conjugate into the other subgroup";
  }
  auto ff = check_ff(t, opt.bounds);
  rep.ff = ff.holds;
  if (ff.witness) {
    rep.witnesses["ff"] = std::string("core of ") + ff.witness_side + ": " +
                          group_summary(*ff.witness);
  }
  try {
    auto mx = check_max(t, opt.bounds);
    rep.max = mx.holds;
    if (mx.witness) {
      rep.witnesses["max"] = std::string("overgroup of ") + mx.witness_side + ": " +
                             group_summary(*mx.witness);
    }
  } catch (const BoundExceeded& e) {
    rep.max = false;
    rep.notes["max"] = std::string("bound exceeded: ") + e.what();
  }
  auto pr = check_pair(t, opt.pair_candidate, opt.bounds);
  rep.pair = pr.status;
  rep.notes["pair"] = pr.note;
  if (!opt.run_inv) {
    rep.inv_status = "skipped";
  } else {
    try {
      rep.inv = check_inv(t, opt.inv_r, opt.inv_tree, opt.bounds);
      rep.inv_status = rep.inv ? "found" : "none";
    } catch (const BoundExceeded& e) {
      rep.inv_status = "bound exceeded";
      rep.notes["inv"] = e.what();
    }
  }
  return rep;
}

std::string PropertyReport::to_text() const {
  std::ostringstream os;
  auto mark = [](bool b) { return b ? "✓" : "✗"; };
  if (!label.empty()) os << "triple: " << label << "\n";
  os << "orders: |G| = " << order_g << ", |H| = " << order_h << ", |K| = " << order_k << "\n";
  os << "AC: " << mark(ac) << "\n";
  os << "EC: " << mark(ec) << "\n";
  os << "FF: " << mark(ff) << "\n";
  os << "MAX: " << mark(max) << "\n";
  os << "PAIR: " << to_string(pair) << "\n";
  os << "INV: " << inv_status;
  if (inv) {
    os << " (fixed points";
    for (auto f : inv->fixed_points) os << ' ' << f;
    os << ")";
  }
  os << "\n";
  for (const auto& [k, v] : witnesses) os << "witness " << k << ": " << v << "\n";
  for (const auto& [k, v] : notes)
    if (!v.empty()) os << "note " << k << ": " << v << "\n";
  return os.str();
}

std::string PropertyReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["label"] = label;
  j["orders"] = {{"G", order_g}, {"H", order_h}, {"K", order_k}};
  j["ac"] = ac;
  j["ec"] = ec;
  j["ff"] = ff;
  j["max"] = max;
  j["pair"] = to_string(pair);
  j["inv"]["status"] = inv_status;
  if (inv) {
    std::vector<std::string> elems;
    for (const auto& g : inv->elements) elems.push_back(g.to_cycle_string());
    j["inv"]["elements"] = elems;
    j["inv"]["fixed_points"] = inv->fixed_points;
    j["inv"]["h_system"] = inv->h_system.to_text();
    if (inv->k_system) j["inv"]["k_system"] = inv->k_system->to_text();
  }
  j["witnesses"] = witnesses;
  j["notes"] = notes;
  return j.dump(2);
}

}  // namespace isodrum
