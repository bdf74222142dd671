#pragma once

// Shared groups and brute-force oracles for the unit tests. The oracles only
// use Permutation arithmetic, never the stabilizer chain.

#include <algorithm>
#include <set>
#include <vector>

#include "isodrum/perm_group.hpp"
#include "isodrum/permutation.hpp"
#include "isodrum/triples.hpp"

namespace fixtures {

using isodrum::Permutation;
using isodrum::PermGroup;
using isodrum::Point;
using isodrum::Triple;

inline Permutation cyc(const char* text, std::size_t degree, bool one_based = false) {
  return Permutation::from_cycles(text, degree, one_based);
}

/// All elements by closure under right multiplication with the generators.
inline std::set<Permutation> closure(std::size_t degree, const std::vector<Permutation>& gens) {
  std::set<Permutation> seen{Permutation(degree)};
  std::vector<Permutation> queue{Permutation(degree)};
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (const auto& s : gens) {
      Permutation p = queue[k] * s;
      if (seen.insert(p).second) queue.push_back(p);
    }
  return seen;
}

inline std::set<Permutation> closure(const PermGroup& G) {
  return closure(G.degree(), G.generators());
}

/// Brute-force conjugator search over an explicit element list.
inline bool brute_conjugate(const std::set<Permutation>& elems, const Permutation& a,
                            const Permutation& b) {
  return std::any_of(elems.begin(), elems.end(),
                     [&](const Permutation& g) { return isodrum::conjugate(a, g) == b; });
}

/// Action of a 3x3 matrix over F_2 (columns as bitmasks) on the 7 nonzero
/// vectors of F_2^3; point p (0-based) is the vector with bits p+1.
inline Permutation fano_matrix(const unsigned cols[3]) {
  std::vector<Point> img(7);
  for (unsigned v = 1; v <= 7; ++v) {
    unsigned w = 0;
    for (unsigned i = 0; i < 3; ++i)
      if (v & (1u << i)) w ^= cols[i];
    img[v - 1] = w - 1;
  }
  return Permutation(img);
}

/// PSL(3,2) on the 7 points of the Fano plane, generated by transvections.
inline PermGroup psl32_points() {
  const unsigned e12[3] = {1, 2 | 1, 4};  // x1 += x2
  const unsigned e23[3] = {1, 2, 4 | 2};  // x2 += x3
  const unsigned e31[3] = {1 | 4, 2, 4};  // x3 += x1
  return PermGroup(7, {fano_matrix(e12), fano_matrix(e23), fano_matrix(e31)});
}

inline PermGroup a4() { return PermGroup::alternating(4); }
inline PermGroup s3() { return PermGroup::symmetric(3); }
inline PermGroup s4() { return PermGroup::symmetric(4); }

inline PermGroup klein4() {
  return PermGroup(4, {cyc("(0 1)(2 3)", 4), cyc("(0 2)(1 3)", 4)});
}

/// PSL(3,2) on the 7 points and 7 lines of the Fano plane (degree 14). Line
/// 7 + (a - 1) is the set of points v with a.v = 0 over F_2.
inline isodrum::Permutation fano_points_lines(const unsigned cols[3]) {
  Permutation pts = fano_matrix(cols);
  auto on_line = [](unsigned a, unsigned v) { return __builtin_popcount(a & v) % 2 == 0; };
  std::vector<Point> img(14);
  for (unsigned x = 0; x < 7; ++x) img[x] = pts(x);
  for (unsigned a = 1; a <= 7; ++a) {
    unsigned mapped = 0;
    for (unsigned b = 1; b <= 7 && !mapped; ++b) {
      bool all = true;
      for (unsigned v = 1; v <= 7; ++v)
        if (on_line(a, v) && !on_line(b, pts(v - 1) + 1)) all = false;
      if (all) mapped = b;
    }
    img[7 + a - 1] = 7 + mapped - 1;
  }
  return Permutation(img);
}

struct FanoTriple {
  PermGroup G, H, K;
};

/// (G, stabilizer of point 0, stabilizer of line 7) by brute-force scans.
inline FanoTriple psl32_triple() {
  const unsigned e12[3] = {1, 2 | 1, 4};
  const unsigned e23[3] = {1, 2, 4 | 2};
  const unsigned e31[3] = {1 | 4, 2, 4};
  std::vector<Permutation> gens{fano_points_lines(e12), fano_points_lines(e23),
                                fano_points_lines(e31)};
  PermGroup G(14, gens);
  std::vector<Permutation> hs, ks;
  for (const auto& g : closure(14, gens)) {
    if (g(0) == 0) hs.push_back(g);
    if (g(7) == 7) ks.push_back(g);
  }
  return {G, PermGroup(14, hs), PermGroup(14, ks)};
}

inline Triple fano_triple() {
  auto f = psl32_triple();
  return Triple(f.G, f.H, f.K, "psl(3,2)");
}

inline Triple a4_triple() {
  PermGroup G = PermGroup::alternating(4);
  return Triple(G, PermGroup(4, {cyc("(0 1)(2 3)", 4)}), klein4(), "a4");
}

// Small triples covering AC, EC-only and neither.
inline std::vector<Triple> corpus() {
  std::vector<Triple> out;
  out.push_back(fano_triple());
  out.push_back(a4_triple());
  PermGroup S4 = PermGroup::symmetric(4);
  out.emplace_back(S4, PermGroup(4, {cyc("(0 1)", 4)}), PermGroup(4, {cyc("(0 1)(2 3)", 4)}));
  out.emplace_back(S4, klein4(),
                   PermGroup(4, {cyc("(0 1)", 4), cyc("(2 3)", 4)}));
  out.emplace_back(S4, PermGroup(4, {cyc("(0 1 2 3)", 4)}), klein4());
  out.emplace_back(S4, PermGroup(4, {cyc("(0 1 2)", 4)}), PermGroup(4, {cyc("(1 2 3)", 4)}));
  PermGroup S5 = PermGroup::symmetric(5);
  out.emplace_back(S5, PermGroup(5, {cyc("(0 1)(2 3)", 5)}), PermGroup(5, {cyc("(0 1)", 5)}));
  out.emplace_back(S5, PermGroup(5, {cyc("(0 1 2 3 4)", 5)}),
                   PermGroup(5, {cyc("(0 2 4 1 3)", 5)}));
  PermGroup A5 = PermGroup::alternating(5);
  out.emplace_back(A5, PermGroup(5, {cyc("(0 1)(2 3)", 5), cyc("(0 2)(1 3)", 5)}),
                   PermGroup(5, {cyc("(0 1)(2 3)", 5), cyc("(0 1)(3 4)", 5)}));
  // Regular Z8 with subgroups of orders 2 and 4.
  PermGroup Z8 = PermGroup::cyclic(8);
  out.emplace_back(Z8, PermGroup(8, {isodrum::power(Z8.generators()[0], 4)}),
                   PermGroup(8, {isodrum::power(Z8.generators()[0], 2)}));
  return out;
}

/// Every element of each subgroup, and G's classes, by brute force.
struct BruteTriple {
  std::set<Permutation> G, H, K;
};

inline BruteTriple brute(const PermGroup& G, const PermGroup& H, const PermGroup& K) {
  return {closure(G), closure(H), closure(K)};
}

inline std::set<Permutation> brute_class(const std::set<Permutation>& G, const Permutation& a) {
  std::set<Permutation> out;
  for (const auto& g : G) out.insert(isodrum::conjugate(a, g));
  return out;
}

inline bool brute_ac(const BruteTriple& b) {
  std::set<Permutation> done;
  for (const auto& g : b.G) {
    if (done.count(g)) continue;
    auto cls = brute_class(b.G, g);
    done.insert(cls.begin(), cls.end());
    std::size_t nh = 0, nk = 0;
    for (const auto& x : cls) nh += b.H.count(x), nk += b.K.count(x);
    if (nh != nk) return false;
  }
  return true;
}

inline bool brute_ec(const BruteTriple& b) {
  auto into = [&](const std::set<Permutation>& A, const std::set<Permutation>& B) {
    for (const auto& a : A) {
      bool found = false;
      for (const auto& g : b.G)
        if (B.count(isodrum::conjugate(a, g))) {
          found = true;
          break;
        }
      if (!found) return false;
    }
    return true;
  };
  return into(b.H, b.K) && into(b.K, b.H);
}

}  // namespace fixtures
