#include "isodrum/transplant.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

#include "isodrum/cosets.hpp"
#include "isodrum/errors.hpp"

namespace isodrum {

RationalMatrix permutation_matrix(const Permutation& p) {
  auto m = zero_matrix(p.degree(), p.degree());
  for (Point j = 0; j < p.degree(); ++j) m[p(j)][j] = 1;
  return m;
}

std::vector<RationalMatrix> intertwiner_basis(std::span<const Permutation> a,
                                              std::span<const Permutation> b) {
  if (a.size() != b.size()) throw InvalidInput("intertwiner: generator counts differ");
  if (a.empty()) throw InvalidInput("intertwiner: no generators");
  const std::size_t na = a[0].degree(), nb = b[0].degree();
  for (const auto& p : a)
    if (p.degree() != na) throw InvalidInput("intertwiner: mixed degrees");
  for (const auto& p : b)
    if (p.degree() != nb) throw InvalidInput("intertwiner: mixed degrees");

  // (T P(a))_{ij} = T_{i, a(j)} and (P(b) T)_{ij} = T_{b^-1(i), j}.
  SparseSystem sys(na * nb);
  for (std::size_t mu = 0; mu < a.size(); ++mu) {
    Permutation binv = b[mu].inverse();
    for (Point i = 0; i < nb; ++i)
      for (Point j = 0; j < na; ++j) {
        std::size_t lhs = i * na + a[mu](j), rhs = binv(i) * na + j;
        if (lhs == rhs) continue;
        SparseSystem::Row row;
        row[lhs] = 1;
        row[rhs] = -1;
        sys.add_equation(std::move(row));
      }
  }
  std::vector<RationalMatrix> basis;
  for (const auto& v : sys.nullspace()) {
    auto m = zero_matrix(nb, na);
    for (std::size_t i = 0; i < nb; ++i)
      for (std::size_t j = 0; j < na; ++j) m[i][j] = v[i * na + j];
    basis.push_back(std::move(m));
  }
  return basis;
}

std::string to_string(Invertibility v) {
  switch (v) {
    case Invertibility::Invertible: return "invertible";
    case Invertibility::ProvedSingular: return "proved singular (inequivalent representations)";
    case Invertibility::SearchExhausted: return "search exhausted";
  }
  return "unknown";
}

namespace {

// p with p(a_mu(j)) = b_mu(p(j)) for every mu and j; propagates forced images
// and branches on the least unassigned point.
class PermutationIntertwinerSearch {
public:
  PermutationIntertwinerSearch(std::span<const Permutation> a, std::span<const Permutation> b)
      : a_(a), b_(b), n_(a[0].degree()), img_(n_, kUnset), used_(n_, false) {}

  std::optional<Permutation> run() {
    if (recurse()) return Permutation(std::vector<Point>(img_.begin(), img_.end()));
    return std::nullopt;
  }

private:
  static constexpr Point kUnset = ~Point{0};

  bool assign(Point x, Point y, std::vector<Point>& trail) {
    std::vector<std::pair<Point, Point>> stack{{x, y}};
    while (!stack.empty()) {
      auto [u, v] = stack.back();
      stack.pop_back();
      if (img_[u] != kUnset) {
        if (img_[u] != v) return false;
        continue;
      }
      if (used_[v]) return false;
      img_[u] = v;
      used_[v] = true;
      trail.push_back(u);
      for (std::size_t mu = 0; mu < a_.size(); ++mu) {
        stack.push_back({a_[mu](u), b_[mu](v)});
        stack.push_back({a_[mu].inverse()(u), b_[mu].inverse()(v)});
      }
    }
    return true;
  }

  void undo(const std::vector<Point>& trail) {
    for (Point u : trail) {
      used_[img_[u]] = false;
      img_[u] = kUnset;
    }
  }

  bool recurse() {
    Point x = 0;
    while (x < n_ && img_[x] != kUnset) ++x;
    if (x == n_) return true;
    for (Point y = 0; y < n_; ++y) {
      if (used_[y]) continue;
      std::vector<Point> trail;
      if (assign(x, y, trail) && recurse()) return true;
      undo(trail);
    }
    return false;
  }

  std::span<const Permutation> a_, b_;
  std::size_t n_;
  std::vector<Point> img_;
  std::vector<bool> used_;
};

std::optional<Permutation> permutation_intertwiner(std::span<const Permutation> a,
                                                   std::span<const Permutation> b) {
  if (a.empty() || a[0].degree() != b[0].degree()) return std::nullopt;
  return PermutationIntertwinerSearch(a, b).run();
}

RationalMatrix combine(const std::vector<RationalMatrix>& basis, const std::vector<int>& coeff) {
  auto m = zero_matrix(basis[0].size(), basis[0][0].size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (coeff[k] == 0) continue;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m[i].size(); ++j)
        if (sgn(basis[k][i][j]) != 0) m[i][j] += coeff[k] * basis[k][i][j];
  }
  return m;
}

constexpr std::size_t kCombinationLimit = 200'000;

}  // namespace

std::optional<TransplantationSolution> find_intertwiner(std::span<const Permutation> a,
                                                        std::span<const Permutation> b) {
  auto basis = intertwiner_basis(a, b);
  if (basis.empty()) return std::nullopt;

  TransplantationSolution sol;
  sol.solution_basis = basis;
  sol.T = basis[0];
  sol.dim_ab = basis.size();
  sol.dim_aa = intertwiner_basis(a, a).size();
  sol.dim_bb = intertwiner_basis(b, b).size();
  const bool square = a[0].degree() == b[0].degree();
  // Equal characters iff <chi_a - chi_b, chi_a - chi_b> = 0.
  const bool equivalent = square && sol.dim_aa + sol.dim_bb == 2 * sol.dim_ab;
  if (square) sol.permutation_solution = permutation_intertwiner(a, b);

  if (!equivalent) {
    sol.status = Invertibility::ProvedSingular;
    return sol;
  }
  if (sol.permutation_solution) {
    sol.T = permutation_matrix(*sol.permutation_solution);
    sol.determinant = determinant(sol.T);
    sol.invertible = true;
    sol.status = Invertibility::Invertible;
    return sol;
  }
  for (const auto& m : basis) {
    Rational d = determinant(m);
    if (sgn(d) != 0) {
      sol.T = m;
      sol.determinant = d;
      sol.invertible = true;
      sol.status = Invertibility::Invertible;
      return sol;
    }
  }
  // Coefficient vectors over -3..3, odometer order, zero vector skipped.
  std::vector<int> coeff(basis.size(), -3);
  for (std::size_t tried = 0; tried < kCombinationLimit; ++tried) {
    if (std::any_of(coeff.begin(), coeff.end(), [](int c) { return c != 0; })) {
      auto m = combine(basis, coeff);
      Rational d = determinant(m);
      if (sgn(d) != 0) {
        sol.T = std::move(m);
        sol.determinant = d;
        sol.invertible = true;
        sol.status = Invertibility::Invertible;
        return sol;
      }
    }
    std::size_t k = 0;
    while (k < coeff.size() && coeff[k] == 3) coeff[k++] = -3;
    if (k == coeff.size()) break;
    ++coeff[k];
  }
  sol.status = Invertibility::SearchExhausted;
  return sol;
}

std::optional<TransplantationSolution> find_transplantation(const InvolutionSystem& A,
                                                            const InvolutionSystem& B) {
  if (A.tiles() != B.tiles() || A.sides() != B.sides()) {
    throw InvalidInput("find_transplantation: tile or side counts differ");
  }
  if (A.sides() == 0) throw InvalidInput("find_transplantation: no sides");
  return find_intertwiner(A.side_permutations(), B.side_permutations());
}

bool verify_transplantation(const RationalMatrix& T, const InvolutionSystem& A,
                            const InvolutionSystem& B) {
  for (std::size_t mu = 0; mu < A.sides(); ++mu) {
    if (multiply(T, permutation_matrix(A.side(mu))) != multiply(permutation_matrix(B.side(mu)), T)) {
      return false;
    }
  }
  return true;
}

std::optional<Permutation> detect_isometry(const InvolutionSystem& A, const InvolutionSystem& B) {
  if (A.tiles() != B.tiles() || A.sides() != B.sides()) return std::nullopt;
  if (A.sides() == 0) return Permutation(A.tiles());
  return permutation_intertwiner(A.side_permutations(), B.side_permutations());
}

std::string canonical_form(const InvolutionSystem& sys) {
  const std::size_t n = sys.tiles();
  std::string best;
  for (Point root = 0; root < n; ++root) {
    std::vector<Point> label(n, ~Point{0});
    std::vector<Point> queue{root};
    label[root] = 0;
    Point next = 1;
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (const auto& s : sys.side_permutations()) {
        Point w = s(queue[q]);
        if (label[w] == ~Point{0}) {
          label[w] = next++;
          queue.push_back(w);
        }
      }
    std::string text = sys.relabeled(Permutation(label)).to_text();
    if (root == 0 || text < best) best = std::move(text);
  }
  return best;
}

std::vector<SystemPair> okada_shudo_scan(const Triple& t, std::size_t n_max, std::size_t r,
                                         const Bounds& bounds) {
  if (n_max > 13) throw InvalidInput("okada_shudo_scan: tile bound is at most 13");
  if (r < 2) throw InvalidInput("okada_shudo_scan: need at least two sides");
  CosetTable th(t.G, t.H, bounds.enumeration);
  CosetTable tk(t.G, t.K, bounds.enumeration);
  if (th.size() != tk.size()) return {};
  if (th.size() > n_max) throw BoundExceeded("okada_shudo_scan: index exceeds the tile bound");
  const std::size_t tiles = th.size();

  struct Cand {
    Permutation g, a, b;
  };
  std::vector<Cand> cands;
  {
    std::map<std::pair<Permutation, Permutation>, std::size_t> seen;
    for (auto& g : t.G.elements(bounds.enumeration)) {
      Permutation a = th.action_of(g);
      if (a.is_identity() || !(a * a).is_identity()) continue;
      Permutation b = tk.action_of(g);
      if (b.is_identity() || !(b * b).is_identity()) continue;
      auto [it, fresh] = seen.try_emplace({a, b}, cands.size());
      if (fresh) {
        cands.push_back({std::move(g), std::move(a), std::move(b)});
      } else if (g < cands[it->second].g) {
        cands[it->second].g = std::move(g);
      }
    }
  }
  std::sort(cands.begin(), cands.end(),
            [](const Cand& x, const Cand& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });

  const std::size_t target = (r - 2) * tiles + 2;
  std::map<std::string, SystemPair> found;
  std::set<std::string> rejected;
  std::uint64_t examined = 0;
  std::vector<std::size_t> pick;
  std::vector<bool> in_use(cands.size(), false);

  auto consider = [&]() {
    std::vector<Permutation> sa, sb, gs;
    std::size_t fix = 0;
    for (std::size_t i : pick) {
      sa.push_back(cands[i].a);
      sb.push_back(cands[i].b);
      gs.push_back(cands[i].g);
      fix += cands[i].a.fixed_point_count();
    }
    if (fix != target) return;
    InvolutionSystem A, B;
    try {
      A = InvolutionSystem(tiles, sa);
      B = InvolutionSystem(tiles, sb);
    } catch (const InvalidInput&) {
      return;  // intransitive
    }
    if (!is_tree(A) || !is_tree(B)) return;
    std::string key = canonical_form(A) + "|" + canonical_form(B);
    if (found.count(key) || rejected.count(key)) return;
    auto sol = find_transplantation(A, B);
    if (sol && sol->invertible && !sol->permutation_solution) {
      found.emplace(key, SystemPair{gs, A, B});
    } else {
      rejected.insert(key);
    }
  };

  std::function<void()> recurse = [&]() {
    if (pick.size() == r) {
      if (++examined > bounds.involution_sets) {
        throw BoundExceeded("okada_shudo_scan: tuple bound exceeded");
      }
      consider();
      return;
    }
    for (std::size_t i = 0; i < cands.size(); ++i) {
      if (in_use[i]) continue;
      in_use[i] = true;
      pick.push_back(i);
      recurse();
      pick.pop_back();
      in_use[i] = false;
    }
  };
  recurse();

  std::vector<SystemPair> out;
  for (auto& [key, pair] : found) out.push_back(std::move(pair));
  return out;
}

}  // namespace isodrum
