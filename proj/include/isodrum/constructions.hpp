#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "isodrum/perm_group.hpp"
#include "isodrum/triples.hpp"

namespace isodrum {

/// Element (a_1..a_n ; t) of S wr T. The product is
/// (a, b)(a', b') = (a . b(a'), b b') with b(a')_i = a'_{b(i)}, which is the
/// composition law of the imprimitive action (i, x) -> (t(i), a_i(x)).
struct WreathElement {
  std::vector<Permutation> base;
  Permutation top;

  friend bool operator==(const WreathElement&, const WreathElement&) = default;
};

WreathElement operator*(const WreathElement& x, const WreathElement& y);
WreathElement identity_wreath(std::size_t n, std::size_t base_degree);
WreathElement inverse(const WreathElement& x);

/**
 * S wr T realized on n * deg(S) points: point i * deg(S) + x is x in block i.
 */
class WreathGroup {
public:
  /// Throws InvalidInput unless T has degree n.
  WreathGroup(PermGroup S, PermGroup T);

  const PermGroup& base_group() const { return S_; }
  const PermGroup& top_group() const { return T_; }
  std::size_t copies() const { return T_.degree(); }
  const PermGroup& realized() const { return realized_; }

  Permutation realize(const WreathElement& x) const;
  /// Inverse of realize; throws InvalidInput when p does not respect the blocks.
  WreathElement decompose(const Permutation& p) const;

  /// Base element with coordinates `coords` (each of degree deg(S)).
  Permutation base_element(const std::vector<Permutation>& coords) const;
  Permutation top_element(const Permutation& t) const;

  /// L wr T for a subgroup L of S.
  PermGroup wreath_subgroup(const PermGroup& L) const;

private:
  PermGroup S_;
  PermGroup T_;
  PermGroup realized_;
};

/// (G x E, H x E, K x E) on deg(G) + deg(E) points. Throws InvalidInput
/// when t is not EC.
Triple add_kernel(const Triple& t, const PermGroup& E, const Bounds& bounds = {});

/// (G^k, H^k, K^k) on k * deg(G) points. Requires EC, and FF unless
/// `require_ff` is false.
Triple direct_power(const Triple& t, std::size_t k, bool require_ff = true,
                    const Bounds& bounds = {});

/// Twisted diagonal {(phi_1(s), ..., phi_m(s))} of S^m. Each map lists the
/// images of S's generators; an empty map is the identity.
struct DiagonalSpec {
  std::vector<std::vector<Permutation>> maps;

  static DiagonalSpec plain(std::size_t m) { return {std::vector<std::vector<Permutation>>(m)}; }
};

enum class Variant { TypeI, TypeII, TypeIII };

struct ConstructionData {
  Variant variant = Variant::TypeI;
  /// Type I uses (S, L, L'); Types II and III use only S = base.G.
  Triple base;
  std::size_t n = 1;
  std::size_t l = 1, k = 1;
  PermGroup T;
  DiagonalSpec diag_h, diag_k;
  bool require_ff = true;  // Type I: demand FF of the base triple
};

/// (S wr T, L wr T, L' wr T).
Triple type1(const ConstructionData& d, const Bounds& bounds = {});
/// (S wr T, L x| T, L' x| T) with L, L' twisted diagonals of S^n.
Triple type2(const ConstructionData& d, const Bounds& bounds = {});
/// (S wr T, L^l x| T, L'^l x| T) with L, L' twisted diagonals of S^k and
/// T preserving the blocks {0..k-1}, {k..2k-1}, ...
Triple type3(const ConstructionData& d, const Bounds& bounds = {});
Triple construct(const ConstructionData& d, const Bounds& bounds = {});

/// |S| > 1 and every nonidentity class has normal closure S.
bool is_simple(const PermGroup& S, const Bounds& bounds = {});

/// For a = (a_1..a_n) in L' and gamma in S_n, returns l in S^n such that
/// (l, 1)^-1 (a, gamma) (l, 1) has every base coordinate in L. Each gamma
/// cycle needs a coset of L fixed by the cycle product of the a_i; throws
/// InvalidInput when none exists (so L' is not EC into L).
std::vector<Permutation> ec_witness(const Triple& base, const Permutation& gamma,
                                    const std::vector<Permutation>& a,
                                    const Bounds& bounds = {});

}  // namespace isodrum
