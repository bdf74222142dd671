#include <doctest.h>

#include <numeric>

#include "fixtures.hpp"
#include "isodrum/cosets.hpp"
#include "isodrum/errors.hpp"
#include "isodrum/transplant.hpp"

using namespace isodrum;
using fixtures::cyc;

namespace {

const char* kSystemA =
    "tiles: 7\n"
    "sides: 3\n"
    "side 1: (3 4) (5 7) ; boundary: 1 2 6\n"
    "side 2: (2 3) (4 6) ; boundary: 1 5 7\n"
    "side 3: (1 2) (4 7) ; boundary: 3 5 6\n";

const char* kSystemB =
    "tiles: 7\n"
    "sides: 3\n"
    "side 1: (1 2) (3 4) ; boundary: 5 6 7\n"
    "side 2: (2 3) (5 7) ; boundary: 1 4 6\n"
    "side 3: (3 6) (4 5) ; boundary: 1 2 7\n";

// Orbits of (i, j) -> (b(i), a(j)) on row/column pairs: the dimension of
// the intertwiner space, counted without any linear algebra.
std::size_t orbit_count(std::span<const Permutation> a, std::span<const Permutation> b) {
  std::size_t na = a[0].degree(), nb = b[0].degree();
  std::vector<std::size_t> parent(na * nb);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t mu = 0; mu < a.size(); ++mu)
    for (std::size_t i = 0; i < nb; ++i)
      for (std::size_t j = 0; j < na; ++j)
        parent[find(i * na + j)] = find(b[mu](i) * na + a[mu](j));
  std::size_t n = 0;
  for (std::size_t x = 0; x < parent.size(); ++x) n += find(x) == x;
  return n;
}

InvolutionSystem sys(std::size_t n, std::vector<const char*> sides) {
  std::vector<Permutation> p;
  for (const char* s : sides) p.push_back(cyc(s, n, true));
  return InvolutionSystem(n, p);
}

}  // namespace

TEST_CASE("involution system text round trip") {
  auto A = InvolutionSystem::from_text(kSystemA);
  CHECK(A.tiles() == 7);
  CHECK(A.sides() == 3);
  CHECK(A.to_text() == kSystemA);
  CHECK(InvolutionSystem::from_text(A.to_text()) == A);
  CHECK(A.trace(0) == 3);
  CHECK(A.matrix(0)[2][3] == 1);
  CHECK(A.matrix(0)[0][0] == 1);

  CHECK_THROWS_AS(InvolutionSystem::from_text("tiles: 2\nsides: 1\nside 1: (1 3) ; boundary:\n"),
                  ParseError);
  CHECK_THROWS_AS(InvolutionSystem::from_text("tiles: 2\nsides: 1\nside 1: (1 2)\n"), ParseError);
  // Intransitive: tile 3 is never reached.
  CHECK_THROWS_AS(InvolutionSystem::from_text(
                      "tiles: 3\nsides: 1\nside 1: (1 2) ; boundary: 3\n"),
                  ParseError);
  CHECK_THROWS_AS(InvolutionSystem(3, {cyc("(0 1 2)", 3)}), InvalidInput);
}

TEST_CASE("schreier systems, trees and the fixed-point identity") {
  // S3 on three points, generated by two transpositions: a path.
  PermGroup S3 = PermGroup::symmetric(3);
  std::vector<Permutation> gens{cyc("(0 1)", 3), cyc("(1 2)", 3)};
  auto path = schreier_system(S3, gens);
  CHECK(is_tree(path));
  // r = 2: 0 * 3 == 1 + 1 - 2.
  CHECK(fixeq_check(path));

  // Three tiles glued in a cycle: 3 != 1 + 1 + 1 - 2.
  auto loop = sys(3, {"(1 2)", "(2 3)", "(1 3)"});
  CHECK_FALSE(is_tree(loop));
  CHECK_FALSE(fixeq_check(loop));
  CHECK(total_boundary_sides(loop) == 3);

  auto A = InvolutionSystem::from_text(kSystemA);
  auto B = InvolutionSystem::from_text(kSystemB);
  CHECK(is_tree(A));
  CHECK(is_tree(B));
  CHECK(total_boundary_sides(A) == 9);
  CHECK(fixeq_check(A));
  CHECK(fixeq_check(B));

  CHECK_THROWS_AS(schreier_system(S3, std::vector<Permutation>{cyc("(0 1 2)", 3)}), InvalidInput);
  PermGroup Z2(3, {cyc("(0 1)", 3)});
  CHECK_THROWS_AS(schreier_system(Z2, std::vector<Permutation>{cyc("(0 1)", 3)}), InvalidInput);
}

TEST_CASE("the seven-tile pair is transplantable but not isometric") {
  auto A = InvolutionSystem::from_text(kSystemA);
  auto B = InvolutionSystem::from_text(kSystemB);
  auto sol = find_transplantation(A, B);
  REQUIRE(sol.has_value());
  CHECK(sol->invertible);
  CHECK(sol->status == Invertibility::Invertible);
  CHECK(sgn(sol->determinant) != 0);
  CHECK_FALSE(sol->permutation_solution.has_value());
  CHECK(verify_transplantation(sol->T, A, B));
  for (const auto& T : sol->solution_basis) CHECK(verify_transplantation(T, A, B));
  CHECK(sol->dim_ab == orbit_count(A.side_permutations(), B.side_permutations()));
  CHECK(sol->dim_aa == orbit_count(A.side_permutations(), A.side_permutations()));
  CHECK_FALSE(detect_isometry(A, B).has_value());
  CHECK(canonical_form(A) != canonical_form(B));
}

TEST_CASE("transplantation of a system with itself and with a relabeling") {
  auto A = InvolutionSystem::from_text(kSystemA);
  Permutation p = cyc("(0 3 5)(1 6)", 7);
  auto C = A.relabeled(p);
  auto iso = detect_isometry(A, C);
  REQUIRE(iso.has_value());
  for (std::size_t mu = 0; mu < 3; ++mu)
    for (Point i = 0; i < 7; ++i) CHECK((*iso)(A.side(mu)(i)) == C.side(mu)((*iso)(i)));
  CHECK(canonical_form(A) == canonical_form(C));

  auto sol = find_transplantation(A, C);
  REQUIRE(sol.has_value());
  CHECK(sol->invertible);
  REQUIRE(sol->permutation_solution.has_value());
  CHECK(verify_transplantation(permutation_matrix(*sol->permutation_solution), A, C));
}

TEST_CASE("singular intertwiners and mismatched systems") {
  auto P = sys(2, {"(1 2)"});
  auto Q = sys(2, {"(1 2)"});
  auto R = InvolutionSystem(2, {Permutation::identity(2), cyc("(0 1)", 2)});
  auto S = InvolutionSystem(2, {cyc("(0 1)", 2), cyc("(0 1)", 2)});
  CHECK(find_transplantation(P, Q).has_value());
  auto rs = find_transplantation(R, S);
  // Both contain the trivial representation; the sign parts differ.
  REQUIRE(rs.has_value());
  CHECK_FALSE(rs->invertible);
  CHECK(rs->status == Invertibility::ProvedSingular);
  CHECK(rs->dim_ab == orbit_count(R.side_permutations(), S.side_permutations()));

  CHECK_THROWS_AS(find_transplantation(P, InvolutionSystem::from_text(kSystemA)), InvalidInput);
  CHECK_THROWS_AS(find_transplantation(R, P), InvalidInput);
}

TEST_CASE("intertwiner dimension matches the orbit count") {
  for (const auto& t : fixtures::corpus()) {
    CAPTURE(t.label);
    auto ah = coset_action(t.G, t.H).generator_images;
    auto ak = coset_action(t.G, t.K).generator_images;
    auto sol = find_intertwiner(ah, ak);
    std::size_t dim = orbit_count(ah, ak);
    REQUIRE(sol.has_value());
    CHECK(sol->dim_ab == dim);
    CHECK(sol->solution_basis.size() == dim);
  }
}

TEST_CASE("AC holds exactly when an invertible intertwiner exists") {
  std::size_t ac_count = 0;
  for (const auto& t : fixtures::corpus()) {
    CAPTURE(t.label);
    auto ah = coset_action(t.G, t.H).generator_images;
    auto ak = coset_action(t.G, t.K).generator_images;
    auto sol = find_intertwiner(ah, ak);
    bool invertible = sol && sol->invertible;
    CHECK(invertible == is_ac(t));
    ac_count += invertible;
  }
  CHECK(ac_count >= 2);
}

TEST_CASE("bounded scan over the Fano triple") {
  Triple t = fixtures::fano_triple();
  auto pairs = okada_shudo_scan(t, 7, 3);
  REQUIRE_FALSE(pairs.empty());
  std::set<std::string> keys;
  for (const auto& p : pairs) {
    CHECK(is_tree(p.a));
    CHECK(is_tree(p.b));
    CHECK(fixeq_check(p.a));
    CHECK_FALSE(detect_isometry(p.a, p.b).has_value());
    auto sol = find_transplantation(p.a, p.b);
    REQUIRE(sol.has_value());
    CHECK(sol->invertible);
    CHECK(keys.insert(canonical_form(p.a) + "|" + canonical_form(p.b)).second);
  }
  std::string seven = canonical_form(InvolutionSystem::from_text(kSystemA)) + "|" +
                      canonical_form(InvolutionSystem::from_text(kSystemB));
  CHECK(keys.count(seven) == 1);

  CHECK_THROWS_AS(okada_shudo_scan(t, 6, 3), BoundExceeded);
  CHECK_THROWS_AS(okada_shudo_scan(t, 14, 3), InvalidInput);
  CHECK_THROWS_AS(okada_shudo_scan(t, 7, 1), InvalidInput);
}

TEST_CASE("scans with no transplantable pairs") {
  // Index 2: both coset spaces carry the same action.
  PermGroup S3 = PermGroup::symmetric(3);
  PermGroup A3(3, {cyc("(0 1 2)", 3)});
  CHECK(okada_shudo_scan(Triple(S3, A3, A3), 13, 2).empty());
  // Abelian G: conjugate subgroups coincide, every pair is isometric.
  PermGroup Z8 = PermGroup::cyclic(8);
  PermGroup Z2(8, {power(Z8.generators()[0], 4)});
  CHECK(okada_shudo_scan(Triple(Z8, Z2, Z2), 13, 3).empty());
}
