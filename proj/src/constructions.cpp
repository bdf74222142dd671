#include "isodrum/constructions.hpp"

#include <algorithm>

#include "isodrum/conjugacy.hpp"
#include "isodrum/cosets.hpp"
#include "isodrum/errors.hpp"
#include "isodrum/homomorphism.hpp"

namespace isodrum {

WreathElement operator*(const WreathElement& x, const WreathElement& y) {
  if (x.base.size() != y.base.size()) throw InvalidInput("wreath elements of different length");
  WreathElement out;
  out.top = x.top * y.top;
  out.base.reserve(x.base.size());
  for (std::size_t i = 0; i < x.base.size(); ++i) out.base.push_back(x.base[i] * y.base[x.top(i)]);
  return out;
}

WreathElement identity_wreath(std::size_t n, std::size_t base_degree) {
  return {std::vector<Permutation>(n, Permutation(base_degree)), Permutation(n)};
}

WreathElement inverse(const WreathElement& x) {
  // (a, t)^-1 = (c, t^-1) with c_i = (a_{t^-1(i)})^-1.
  Permutation tinv = x.top.inverse();
  WreathElement out;
  out.top = tinv;
  for (std::size_t i = 0; i < x.base.size(); ++i) out.base.push_back(x.base[tinv(i)].inverse());
  return out;
}

WreathGroup::WreathGroup(PermGroup S, PermGroup T) : S_(std::move(S)), T_(std::move(T)) {
  const std::size_t n = T_.degree();
  if (n == 0) throw InvalidInput("wreath product needs at least one copy");
  std::vector<Permutation> gens;
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& s : S_.generators()) {
      std::vector<Permutation> coords(n, Permutation(S_.degree()));
      coords[i] = s;
      gens.push_back(base_element(coords));
    }
  for (const auto& t : T_.generators()) gens.push_back(top_element(t));
  realized_ = PermGroup(n * S_.degree(), std::move(gens));
}

Permutation WreathGroup::realize(const WreathElement& x) const {
  const std::size_t d = S_.degree(), n = copies();
  if (x.base.size() != n || x.top.degree() != n) throw InvalidInput("wreath element has wrong shape");
  std::vector<Point> img(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    if (x.base[i].degree() != d) throw InvalidInput("wreath coordinate has wrong degree");
    for (Point p = 0; p < d; ++p) img[i * d + p] = static_cast<Point>(x.top(i) * d + x.base[i](p));
  }
  return Permutation::from_images_unchecked(std::move(img));
}

WreathElement WreathGroup::decompose(const Permutation& p) const {
  const std::size_t d = S_.degree(), n = copies();
  if (p.degree() != n * d) throw InvalidInput("decompose: degree mismatch");
  std::vector<Point> top(n);
  WreathElement out;
  for (std::size_t i = 0; i < n; ++i) {
    top[i] = static_cast<Point>(p(i * d) / d);
    std::vector<Point> img(d);
    for (Point x = 0; x < d; ++x) {
      Point y = p(i * d + x);
      if (y / d != top[i]) throw InvalidInput("decompose: permutation does not respect the blocks");
      img[x] = static_cast<Point>(y % d);
    }
    out.base.push_back(Permutation::from_images_unchecked(std::move(img)));
  }
  out.top = Permutation(std::move(top));
  return out;
}

Permutation WreathGroup::base_element(const std::vector<Permutation>& coords) const {
  return realize({coords, Permutation(copies())});
}

Permutation WreathGroup::top_element(const Permutation& t) const {
  return realize({std::vector<Permutation>(copies(), Permutation(S_.degree())), t});
}

PermGroup WreathGroup::wreath_subgroup(const PermGroup& L) const {
  const std::size_t n = copies();
  std::vector<Permutation> gens;
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& s : L.generators()) {
      std::vector<Permutation> coords(n, Permutation(S_.degree()));
      coords[i] = s;
      gens.push_back(base_element(coords));
    }
  for (const auto& t : T_.generators()) gens.push_back(top_element(t));
  return PermGroup(realized_.degree(), std::move(gens));
}

namespace {

PermGroup direct_product(const PermGroup& A, const PermGroup& B) {
  const std::size_t d = A.degree() + B.degree();
  std::vector<Permutation> gens;
  for (const auto& a : A.generators()) gens.push_back(a.extended(d));
  for (const auto& b : B.generators()) gens.push_back(b.shifted(A.degree(), d));
  return PermGroup(d, std::move(gens));
}

PermGroup power_group(const PermGroup& A, std::size_t k) {
  const std::size_t d = A.degree() * k;
  std::vector<Permutation> gens;
  for (std::size_t i = 0; i < k; ++i)
    for (const auto& a : A.generators()) gens.push_back(a.shifted(i * A.degree(), d));
  return PermGroup(d, std::move(gens));
}

// Images of S's generators under each coordinate map; identity when empty.
std::vector<std::vector<Permutation>> coordinate_maps(const PermGroup& S, const DiagonalSpec& spec,
                                                      std::size_t m) {
  if (spec.maps.size() != m) {
    throw InvalidInput("diagonal needs " + std::to_string(m) + " coordinate maps");
  }
  std::vector<std::vector<Permutation>> out;
  for (const auto& images : spec.maps) {
    if (images.empty()) {
      out.push_back(S.generators());
      continue;
    }
    Homomorphism phi(S, images, S.degree());
    if (!phi.is_automorphism()) throw InvalidInput("diagonal coordinate map is not an automorphism");
    out.push_back(images);
  }
  return out;
}

// Diagonal generators placed on coordinates [offset, offset + maps.size()).
std::vector<Permutation> diagonal_generators(const WreathGroup& W,
                                             const std::vector<std::vector<Permutation>>& maps,
                                             std::size_t offset) {
  const PermGroup& S = W.base_group();
  std::vector<Permutation> gens;
  for (std::size_t g = 0; g < S.generators().size(); ++g) {
    std::vector<Permutation> coords(W.copies(), Permutation(S.degree()));
    for (std::size_t j = 0; j < maps.size(); ++j) coords[offset + j] = maps[j][g];
    gens.push_back(W.base_element(coords));
  }
  return gens;
}

void require_stable(const WreathGroup& W, const PermGroup& D) {
  for (const auto& t : W.top_group().generators()) {
    Permutation tt = W.top_element(t);
    for (const auto& x : D.generators())
      if (!D.contains(conjugate(x, tt))) {
        throw InvalidInput("diagonal subgroup is not stabilized by T");
      }
  }
}

}  // namespace

Triple add_kernel(const Triple& t, const PermGroup& E, const Bounds& bounds) {
  if (!is_ec(t, bounds)) throw InvalidInput("add_kernel: base triple is not EC");
  return Triple(direct_product(t.G, E), direct_product(t.H, E), direct_product(t.K, E),
                t.label.empty() ? std::string() : t.label + " x kernel");
}

Triple direct_power(const Triple& t, std::size_t k, bool require_ff, const Bounds& bounds) {
  if (k == 0) throw InvalidInput("direct_power: k must be positive");
  if (k == 1) return t;
  if (!is_ec(t, bounds)) throw InvalidInput("direct_power: base triple is not EC");
  if (require_ff && !check_ff(t, bounds).holds) {
    throw InvalidInput("direct_power: base triple is not FF");
  }
  return Triple(power_group(t.G, k), power_group(t.H, k), power_group(t.K, k),
                t.label.empty() ? std::string() : t.label + "^" + std::to_string(k));
}

bool is_simple(const PermGroup& S, const Bounds& bounds) {
  if (S.order() == 1) return false;
  ConjugacyClasses cc(S, bounds.enumeration);
  for (const auto& c : cc.classes()) {
    if (c.representative.is_identity()) continue;
    std::vector<Permutation> one{c.representative};
    if (normal_closure(S, one).order() != S.order()) return false;
  }
  return true;
}

Triple type1(const ConstructionData& d, const Bounds& bounds) {
  if (d.T.degree() != d.n) throw InvalidInput("type I: T must have degree n");
  if (!d.T.is_transitive()) throw InvalidInput("type I: T is not transitive");
  if (!is_ec(d.base, bounds)) throw InvalidInput("type I: base triple is not EC");
  if (d.require_ff && !check_ff(d.base, bounds).holds) {
    throw InvalidInput("type I: base triple is not FF");
  }
  if (d.n == 1 && d.T.is_trivial()) return d.base;
  WreathGroup W(d.base.G, d.T);
  return Triple(W.realized(), W.wreath_subgroup(d.base.H), W.wreath_subgroup(d.base.K),
                d.base.label.empty() ? std::string() : d.base.label + " wr T");
}

Triple type2(const ConstructionData& d, const Bounds& bounds) {
  const PermGroup& S = d.base.G;
  if (d.n < 2) throw InvalidInput("type II: n must be at least 2");
  if (d.T.degree() != d.n) throw InvalidInput("type II: T must have degree n");
  if (!d.T.is_transitive()) throw InvalidInput("type II: T is not transitive");
  if (!is_simple(S, bounds)) throw InvalidInput("type II: S is not simple");
  WreathGroup W(S, d.T);
  auto build = [&](const DiagonalSpec& spec) {
    PermGroup D(W.realized().degree(), diagonal_generators(W, coordinate_maps(S, spec, d.n), 0));
    require_stable(W, D);
    std::vector<Permutation> tops;
    for (const auto& t : d.T.generators()) tops.push_back(W.top_element(t));
    PermGroup out = D.with_generators(tops);
    if (out.order() != S.order() * d.T.order()) throw std::logic_error("type II: size law violated");
    return out;
  };
  return Triple(W.realized(), build(d.diag_h), build(d.diag_k),
                d.base.label.empty() ? std::string() : d.base.label + " type II");
}

Triple type3(const ConstructionData& d, const Bounds& bounds) {
  const PermGroup& S = d.base.G;
  if (d.l < 2 || d.k < 2) throw InvalidInput("type III: l and k must both differ from 1");
  const std::size_t n = d.l * d.k;
  if (d.T.degree() != n) throw InvalidInput("type III: T must have degree l*k");
  if (!d.T.is_transitive()) throw InvalidInput("type III: T is not transitive");
  for (const auto& t : d.T.generators())
    for (std::size_t b = 0; b < d.l; ++b) {
      std::size_t target = t(b * d.k) / d.k;
      for (std::size_t j = 1; j < d.k; ++j)
        if (t(b * d.k + j) / d.k != target) {
          throw InvalidInput("type III: T does not preserve the consecutive blocks of size k");
        }
    }
  if (!is_simple(S, bounds)) throw InvalidInput("type III: S is not simple");
  WreathGroup W(S, d.T);
  auto build = [&](const DiagonalSpec& spec) {
    auto maps = coordinate_maps(S, spec, d.k);
    std::vector<Permutation> gens;
    for (std::size_t b = 0; b < d.l; ++b) {
      auto part = diagonal_generators(W, maps, b * d.k);
      gens.insert(gens.end(), part.begin(), part.end());
    }
    PermGroup D(W.realized().degree(), std::move(gens));
    require_stable(W, D);
    std::vector<Permutation> tops;
    for (const auto& t : d.T.generators()) tops.push_back(W.top_element(t));
    PermGroup out = D.with_generators(tops);
    std::uint64_t expect = d.T.order();
    for (std::size_t b = 0; b < d.l; ++b) expect *= S.order();
    if (out.order() != expect) throw std::logic_error("type III: size law violated");
    return out;
  };
  return Triple(W.realized(), build(d.diag_h), build(d.diag_k),
                d.base.label.empty() ? std::string() : d.base.label + " type III");
}

Triple construct(const ConstructionData& d, const Bounds& bounds) {
  switch (d.variant) {
    case Variant::TypeI: return type1(d, bounds);
    case Variant::TypeII: return type2(d, bounds);
    case Variant::TypeIII: return type3(d, bounds);
  }
  throw InvalidInput("unknown construction variant");
}

std::vector<Permutation> ec_witness(const Triple& base, const Permutation& gamma,
                                    const std::vector<Permutation>& a, const Bounds& bounds) {
  const std::size_t n = gamma.degree();
  if (a.size() != n) throw InvalidInput("ec_witness: need one element per coordinate");
  for (const auto& x : a)
    if (!base.K.contains(x)) throw InvalidInput("ec_witness: coordinate not in L'");

  // Cosets of L; L is the stabilizer of coset 0 and rep(c) carries 0 to c.
  CosetTable table(base.G, base.H, bounds.enumeration);
  const auto& reps = table.representatives();
  auto act = [&](std::size_t c, const Permutation& g) { return table.index_of(reps[c] * g); };

  std::vector<std::size_t> y(n, 0);
  std::vector<bool> done(n, false);
  for (std::size_t start = 0; start < n; ++start) {
    if (done[start]) continue;
    Permutation prod(base.G.degree());
    std::size_t w = start;
    do {
      prod = prod * a[w];
      w = gamma(w);
    } while (w != start);
    std::size_t fixed = table.size();
    for (std::size_t c = 0; c < table.size() && fixed == table.size(); ++c)
      if (act(c, prod) == c) fixed = c;
    if (fixed == table.size()) {
      throw InvalidInput("ec_witness: cycle product fixes no coset of L, so L' is not EC into L");
    }
    w = start;
    std::size_t cur = fixed;
    do {
      y[w] = cur;
      done[w] = true;
      cur = act(cur, a[w]);
      w = gamma(w);
    } while (w != start);
  }

  std::vector<Permutation> l;
  for (std::size_t w = 0; w < n; ++w) l.push_back(reps[y[w]].inverse());
  for (std::size_t w = 0; w < n; ++w) {
    Permutation c = l[w].inverse() * a[w] * l[gamma(w)];
    if (!base.H.contains(c)) throw std::logic_error("ec_witness: conjugate left L");
  }
  return l;
}

}  // namespace isodrum
