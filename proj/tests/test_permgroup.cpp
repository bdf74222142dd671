#include <map>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "isodrum/conjugacy.hpp"
#include "isodrum/cosets.hpp"
#include "isodrum/errors.hpp"

using namespace isodrum;
using fixtures::cyc;

TEST_CASE("compose applies the left factor first") {
  auto t = cyc("(0 1)", 3);
  CHECK((t * t).is_identity());
  auto c = cyc("(0 1 2)", 3);
  CHECK(c * c == cyc("(0 2 1)", 3));

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Point> a(7), b(7);
    std::iota(a.begin(), a.end(), 0u);
    std::iota(b.begin(), b.end(), 0u);
    std::shuffle(a.begin(), a.end(), rng);
    std::shuffle(b.begin(), b.end(), rng);
    Permutation p(a), q(b);
    Permutation pq = compose(p, q);
    for (Point x = 0; x < 7; ++x) CHECK(pq(x) == b[a[x]]);
    CHECK((p * p.inverse()).is_identity());
  }
  CHECK_THROWS_AS(compose(Permutation(3), Permutation(4)), InvalidInput);
}

TEST_CASE("cycle strings parse 1-based and reject bad input") {
  auto p = Permutation::from_cycles("(1 2)(3 4)", 4);
  CHECK(p == cyc("(0 1)(2 3)", 4));
  CHECK(p.to_cycle_string() == "(1 2)(3 4)");
  CHECK(Permutation::from_cycles("()", 3).is_identity());
  CHECK(Permutation::from_cycles("(1 2)(1 3)", 3) == cyc("(0 1)", 3) * cyc("(0 2)", 3));
  CHECK_THROWS_AS(Permutation::from_cycles("(1 2", 3), ParseError);
  CHECK_THROWS_AS(Permutation::from_cycles("(1 4)", 3), ParseError);
  CHECK_THROWS_AS(Permutation::from_cycles("(1 x)", 3), ParseError);
  CHECK_THROWS_AS(Permutation::from_cycles("(1 2 1)", 3), ParseError);
}

TEST_CASE("chain orders agree with closure enumeration") {
  CHECK(fixtures::s3().order() == 6);
  CHECK(PermGroup(3, {cyc("(0 1)", 3), cyc("(0 1 2)", 3)}).order() == 6);
  CHECK(fixtures::a4().order() == fixtures::closure(fixtures::a4()).size());
  CHECK(fixtures::a4().order() == 12);
  CHECK(fixtures::psl32_points().order() == 168);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 3 + trial % 5;
    std::vector<Permutation> gens;
    for (int k = 0; k < 2; ++k) {
      std::vector<Point> img(n);
      std::iota(img.begin(), img.end(), 0u);
      std::shuffle(img.begin(), img.end(), rng);
      gens.emplace_back(img);
    }
    PermGroup G(n, gens);
    auto elems = fixtures::closure(n, gens);
    CHECK(G.order() == elems.size());
    for (const auto& e : elems) CHECK(G.contains(e));
    auto listed = G.elements(10000);
    CHECK(std::set<Permutation>(listed.begin(), listed.end()) == elems);
  }
}

TEST_CASE("membership rejects non-elements") {
  auto A4 = fixtures::a4();
  CHECK_FALSE(A4.contains(cyc("(0 1)", 4)));
  CHECK(A4.contains(cyc("(0 1 2)", 4)));
  CHECK_FALSE(A4.contains(Permutation(5)));
}

TEST_CASE("orbit-stabilizer") {
  auto G = fixtures::psl32_points();
  CHECK(G.orbit(0).size() == 7);
  auto st = G.stabilizer(0);
  CHECK(st.order() == 24);
  // brute force
  auto elems = fixtures::closure(G);
  std::size_t fix0 = std::count_if(elems.begin(), elems.end(),
                                   [](const Permutation& g) { return g(0) == 0; });
  CHECK(fix0 == 24);

  auto T = PermGroup::trivial(5);
  CHECK(T.orbit(3) == std::vector<Point>{3});
  CHECK(T.stabilizer(3).order() == 1);
  CHECK(fixtures::s3().stabilizer(2).order() == 2);
  CHECK_THROWS_AS(T.orbit(7), InvalidInput);

  auto S4 = fixtures::s4();
  for (Point x = 0; x < 4; ++x) CHECK(S4.orbit(x).size() * S4.stabilizer(x).order() == 24);
}

TEST_CASE("is_conjugate") {
  auto S4 = fixtures::s4();
  auto A4 = fixtures::a4();
  CHECK(is_conjugate(S4, Permutation(4), Permutation(4)) == Permutation(4));
  CHECK_FALSE(is_conjugate(S4, cyc("(0 1)", 4), cyc("(0 1)(2 3)", 4)));
  auto a = cyc("(0 1)(2 3)", 4), b = cyc("(0 2)(1 3)", 4);
  auto g = is_conjugate(A4, a, b);
  REQUIRE(g);
  CHECK(A4.contains(*g));
  CHECK(conjugate(a, *g) == b);
  CHECK(g->cycle_type() == std::vector<std::size_t>{1, 3});
  CHECK_THROWS_AS(is_conjugate(A4, cyc("(0 1)", 4), a), InvalidInput);

  // (0 1 2) and (0 2 1) are conjugate in S4 but not in A4.
  CHECK(is_conjugate(S4, cyc("(0 1 2)", 4), cyc("(0 2 1)", 4)));
  CHECK_FALSE(is_conjugate(A4, cyc("(0 1 2)", 4), cyc("(0 2 1)", 4)));
}

TEST_CASE("is_conjugate agrees with exhaustive scan") {
  std::vector<PermGroup> groups = {fixtures::a4(), fixtures::s4(), fixtures::psl32_points(),
                                   PermGroup::alternating(5)};
  std::mt19937_64 rng(3);
  for (const auto& G : groups) {
    auto elems = fixtures::closure(G);
    for (int trial = 0; trial < 40; ++trial) {
      auto a = G.random_element(rng), b = G.random_element(rng);
      auto g = is_conjugate(G, a, b);
      CHECK(bool(g) == fixtures::brute_conjugate(elems, a, b));
      if (g) {
        CHECK(conjugate(a, *g) == b);
        CHECK(G.contains(*g));
      }
    }
  }
}

TEST_CASE("conjugacy classes") {
  auto sizes = [](const PermGroup& G) {
    ConjugacyClasses cc(G);
    std::multiset<std::uint64_t> s;
    std::uint64_t total = 0;
    for (const auto& c : cc.classes()) {
      s.insert(c.size);
      total += c.size;
      CHECK(G.order() % c.size == 0);
    }
    CHECK(total == G.order());
    return s;
  };
  CHECK(sizes(fixtures::s3()) == std::multiset<std::uint64_t>{1, 3, 2});
  CHECK(sizes(fixtures::a4()) == std::multiset<std::uint64_t>{1, 3, 4, 4});
  CHECK(sizes(fixtures::psl32_points()) == std::multiset<std::uint64_t>{1, 21, 42, 56, 24, 24});

  ConjugacyClasses cc(fixtures::s3());
  CHECK(cc.classes()[0].size == 1);
  CHECK(cc.classes()[1].size == 3);
  CHECK(cc.classes()[2].size == 2);
  for (std::size_t k = 0; k < cc.count(); ++k)
    for (const auto& m : cc.members(k))
      CHECK(m.cycle_type() == cc.classes()[k].representative.cycle_type());

  CHECK_THROWS_AS(ConjugacyClasses(fixtures::psl32_points(), 100), BoundExceeded);
}

TEST_CASE("coset action and core") {
  auto S3 = fixtures::s3();
  auto act = coset_action(S3, PermGroup(3, {cyc("(0 1)", 3)}));
  CHECK(act.image.degree() == 3);
  CHECK(act.image.is_transitive());
  CHECK(act.image.order() == 6);
  CHECK(act.table.representatives()[0].is_identity());

  auto G = fixtures::psl32_points();
  auto H = G.stabilizer(0);
  auto a2 = coset_action(G, H);
  CHECK(a2.image.degree() == 7);
  CHECK(a2.image.order() == 168);
  CHECK(core(G, H).is_trivial());
  CHECK(core(G, G).order() == G.order());

  // S3 x S2 on 5 points with H = S3 x 1: degree-2 image, kernel of order 6.
  PermGroup P(5, {cyc("(0 1)", 5), cyc("(0 1 2)", 5), cyc("(3 4)", 5)});
  PermGroup Hs(5, {cyc("(0 1)", 5), cyc("(0 1 2)", 5)});
  auto a3 = coset_action(P, Hs);
  CHECK(a3.image.degree() == 2);
  CHECK(P.order() / a3.image.order() == 6);
  CHECK(core(P, Hs).order() == 6);

  CHECK_THROWS_AS(coset_action(fixtures::a4(), PermGroup(4, {cyc("(0 1)", 4)})), InvalidInput);
}

TEST_CASE("core equals the kernel of the coset action") {
  std::mt19937_64 rng(5);
  std::vector<PermGroup> parents = {fixtures::s4(), fixtures::a4(), PermGroup::symmetric(5),
                                    fixtures::psl32_points()};
  for (const auto& G : parents) {
    auto elems = fixtures::closure(G);
    for (int trial = 0; trial < 8; ++trial) {
      PermGroup H(G.degree(), {G.random_element(rng), G.random_element(rng)});
      if (trial % 3 == 0) H = PermGroup(G.degree(), {G.random_element(rng)});
      auto act = coset_action(G, H);
      auto C = core(G, H);
      CHECK(C.order() * act.image.order() == G.order());
      for (const auto& c : C.generators()) CHECK(act.table.action_of(c).is_identity());
      // brute-force kernel
      std::size_t kernel = 0;
      for (const auto& g : elems) {
        bool fixes = true;
        for (const auto& r : act.table.representatives())
          if (!H.contains(r * g * r.inverse())) fixes = false;
        if (fixes) ++kernel;
      }
      CHECK(kernel == C.order());
    }
  }
}

TEST_CASE("is_maximal") {
  auto G = fixtures::psl32_points();
  CHECK(is_maximal(G, G.stabilizer(0)).maximal);
  auto A4 = fixtures::a4();
  auto r = is_maximal(A4, PermGroup(4, {cyc("(0 1)(2 3)", 4)}));
  CHECK_FALSE(r.maximal);
  REQUIRE(r.intermediate);
  CHECK(r.intermediate->order() == 4);
  CHECK(is_maximal(A4, fixtures::klein4()).maximal);
  CHECK_FALSE(is_maximal(A4, A4).maximal);
  CHECK_THROWS_AS(is_maximal(G, G.stabilizer(0), 5), BoundExceeded);

  // L x L inside S x S is not maximal.
  PermGroup S3xS3(6, {cyc("(0 1)", 6), cyc("(0 1 2)", 6), cyc("(3 4)", 6), cyc("(3 4 5)", 6)});
  PermGroup LxL(6, {cyc("(0 1)", 6), cyc("(3 4)", 6)});
  CHECK(is_maximal(fixtures::s3(), PermGroup(3, {cyc("(0 1)", 3)})).maximal);
  CHECK_FALSE(is_maximal(S3xS3, LxL).maximal);
}

namespace {

// All subgroups of a small group, as element sets, by closing pairs of cyclic
// subgroups repeatedly.
std::set<std::set<Permutation>> all_subgroups(const std::set<Permutation>& elems,
                                              std::size_t degree) {
  std::set<std::set<Permutation>> subs;
  for (const auto& g : elems) subs.insert(fixtures::closure(degree, {g}));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::set<Permutation>> cur(subs.begin(), subs.end());
    for (const auto& A : cur)
      for (const auto& g : elems) {
        if (A.count(g)) continue;
        std::vector<Permutation> gens(A.begin(), A.end());
        gens.push_back(g);
        if (subs.insert(fixtures::closure(degree, gens)).second) grew = true;
      }
  }
  return subs;
}

}  // namespace

TEST_CASE("is_maximal agrees with subgroup-lattice oracle") {
  std::vector<PermGroup> groups = {fixtures::s4(), fixtures::a4(), fixtures::s3()};
  for (const auto& G : groups) {
    auto elems = fixtures::closure(G);
    auto subs = all_subgroups(elems, G.degree());
    for (const auto& H : subs) {
      if (H.size() == elems.size()) continue;
      bool oracle = true;
      for (const auto& M : subs)
        if (M.size() > H.size() && M.size() < elems.size() &&
            std::includes(M.begin(), M.end(), H.begin(), H.end()))
          oracle = false;
      PermGroup Hg(G.degree(), std::vector<Permutation>(H.begin(), H.end()));
      CHECK(is_maximal(G, Hg).maximal == oracle);
    }
  }
}

TEST_CASE("normal closure") {
  auto A4 = fixtures::a4();
  CHECK(normal_closure(A4, std::vector<Permutation>{Permutation(4)}).order() == 1);
  CHECK(normal_closure(A4, std::vector<Permutation>{cyc("(0 1 2)", 4)}).order() == 12);
  CHECK(normal_closure(A4, std::vector<Permutation>{cyc("(0 1)(2 3)", 4)}).order() == 4);
  CHECK_THROWS_AS(normal_closure(A4, std::vector<Permutation>{cyc("(0 1)", 4)}), InvalidInput);
}
