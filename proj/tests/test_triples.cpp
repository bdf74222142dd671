#include <doctest.h>

#include <json.hpp>

#include "fixtures.hpp"
#include "isodrum/conjugacy.hpp"
#include "isodrum/errors.hpp"
#include "isodrum/triples.hpp"

using namespace isodrum;
using fixtures::cyc;

namespace {

std::vector<Permutation> duality_images(const PermGroup& G) {
  std::vector<std::vector<Point>> cycles;
  for (Point i = 0; i < 7; ++i) cycles.push_back({i, static_cast<Point>(7 + i)});
  Permutation delta = Permutation::from_cycle_list(cycles, 14);
  std::vector<Permutation> out;
  for (const auto& g : G.generators()) out.push_back(delta * g * delta);
  return out;
}

Triple fano() { return fixtures::fano_triple(); }
using fixtures::a4_triple;
using fixtures::corpus;

}  // namespace

TEST_CASE("triple construction validates subgroups") {
  PermGroup A4 = PermGroup::alternating(4);
  CHECK_THROWS_AS(Triple(A4, PermGroup(4, {cyc("(0 1)", 4)}), A4), InvalidInput);
  CHECK_NOTHROW(a4_triple());
}

TEST_CASE("AC examples") {
  CHECK(is_ac(fano()));
  CHECK_FALSE(is_ac(a4_triple()));
  PermGroup S3 = PermGroup::symmetric(3);
  CHECK(is_ac(Triple(S3, PermGroup(3, {cyc("(0 1)", 3)}), PermGroup(3, {cyc("(0 1)", 3)}))));
  // H and K non-conjugate in G.
  Triple t = fano();
  CHECK_FALSE(t.G.orbit(0) == t.G.orbit(7));
}

TEST_CASE("EC examples and witnesses") {
  CHECK(is_ec(fano()));
  CHECK(is_ec(a4_triple()));
  PermGroup S4 = PermGroup::symmetric(4);
  auto r = check_ec(Triple(S4, PermGroup(4, {cyc("(0 1)", 4)}),
                           PermGroup(4, {cyc("(0 1)(2 3)", 4)})));
  CHECK_FALSE(r.holds);
  REQUIRE(r.witness);
  CHECK(*r.witness == cyc("(0 1)", 4));
  CHECK(r.witness_side == 'H');
}

TEST_CASE("AC and EC agree with brute-force oracles on the corpus") {
  for (const auto& t : corpus()) {
    auto b = fixtures::brute(t.G, t.H, t.K);
    bool ac = is_ac(t);
    bool ec = is_ec(t);
    CHECK(ac == fixtures::brute_ac(b));
    CHECK(ec == fixtures::brute_ec(b));
    if (ac) CHECK(ec);
    if (ac) CHECK(t.H.order() == t.K.order());
  }
}

TEST_CASE("conjugacy-fusion path matches the class-table path") {
  Bounds small;
  small.enumeration = 100;  // below |PSL(3,2)| = 168, above |H| = 24
  for (const auto& t : corpus()) {
    if (t.G.order() <= small.enumeration) continue;
    CHECK(is_ac(t, small) == is_ac(t));
    CHECK(is_ec(t, small) == is_ec(t));
  }
}

TEST_CASE("permutation characters") {
  Triple t = fano();
  auto ch = permutation_character(t.G, t.H);
  auto ck = permutation_character(t.G, t.K);
  REQUIRE(ch.size() == ck.size());
  CHECK(ch.front().representative.is_identity());
  CHECK(ch.front().fixed == 7);
  for (const auto& v : ch)
    if (v.representative.order() == 2) CHECK(v.fixed == 3);
  for (std::size_t i = 0; i < ch.size(); ++i) CHECK(ch[i].fixed == ck[i].fixed);

  // AC iff equal characters, on every corpus triple.
  for (const auto& c : corpus()) {
    auto a = permutation_character(c.G, c.H);
    auto b = permutation_character(c.G, c.K);
    bool same = true;
    for (std::size_t i = 0; i < a.size(); ++i) same = same && a[i].fixed == b[i].fixed;
    CHECK(same == is_ac(c));
  }
}

TEST_CASE("FF and MAX") {
  Triple t = fano();
  CHECK(check_ff(t).holds);
  CHECK(check_max(t).holds);
  PermGroup A4 = PermGroup::alternating(4);
  auto ff = check_ff(Triple(A4, A4, A4));
  CHECK_FALSE(ff.holds);
  REQUIRE(ff.witness);
  CHECK(ff.witness->order() == 12);
  auto mx = check_max(a4_triple());
  CHECK_FALSE(mx.holds);
  REQUIRE(mx.witness);
  CHECK(mx.witness->order() == 4);
  // V4 is normal in A4, so the A4 triple is not FF either.
  CHECK_FALSE(check_ff(a4_triple()).holds);
}

TEST_CASE("PAIR") {
  Triple t = fano();
  CHECK(check_pair(t).status == PairStatus::WeakEvidence);
  auto pr = check_pair(t, duality_images(t.G));
  CHECK(pr.status == PairStatus::Confirmed);
  CHECK(check_pair(a4_triple()).status == PairStatus::Failed);
  PermGroup S3 = PermGroup::symmetric(3);
  Triple same(S3, PermGroup(3, {cyc("(0 1)", 3)}), PermGroup(3, {cyc("(0 1)", 3)}));
  CHECK(check_pair(same, S3.generators()).status == PairStatus::Confirmed);
  CHECK(check_pair(same).status == PairStatus::Confirmed);

  std::vector<Permutation> trivial(t.G.generators().size(), Permutation(14));
  CHECK_THROWS_AS(check_pair(t, trivial), InvalidInput);
  std::vector<Permutation> junk(t.G.generators().size(), cyc("(0 1)", 14));
  CHECK_THROWS_AS(check_pair(t, junk), InvalidInput);
}

TEST_CASE("PAIR: inner automorphism keeps H but sigma^2 inner") {
  // Conjugation by a point-stabilizer element g: H^sigma = H, so with K = H
  // the candidate confirms with x = g^2 or any element inducing it.
  Triple t = fano();
  Triple hh(t.G, t.H, t.H);
  Permutation g = t.H.generators()[0];
  std::vector<Permutation> imgs;
  for (const auto& s : t.G.generators()) imgs.push_back(conjugate(s, g));
  auto pr = check_pair(hh, imgs);
  CHECK(pr.status == PairStatus::Confirmed);
  REQUIRE(pr.inner_element);
  for (const auto& h : t.H.generators()) {
    Permutation twice = conjugate(conjugate(h, g), g);
    CHECK(conjugate(h, *pr.inner_element) == twice);
  }
}

TEST_CASE("INV on the Fano triple") {
  Triple t = fano();
  auto w = check_inv(t, 3, true);
  REQUIRE(w);
  CHECK(w->fixed_points == std::vector<std::size_t>{3, 3, 3});
  CHECK(fixeq_check(w->h_system));
  CHECK(is_tree(w->h_system));
  CHECK(total_boundary_sides(w->h_system) == 9);
  REQUIRE(w->k_system);
  CHECK(is_tree(*w->k_system));
  CHECK(fixeq_check(*w->k_system));
  CHECK(fixes_third(w->h_system));
  for (const auto& g : w->elements) {
    CHECK(t.G.contains(g));
    CHECK((g * g).is_identity());
  }
  // Deterministic.
  auto again = check_inv(t, 3, true);
  CHECK(again->elements == w->elements);
}

TEST_CASE("INV negatives and bounds") {
  PermGroup A4 = PermGroup::alternating(4);
  CHECK_FALSE(check_inv(Triple(A4, A4, A4), 3, true));
  PermGroup C5 = PermGroup::cyclic(5);
  CHECK_FALSE(check_inv(Triple(C5, PermGroup::trivial(5), PermGroup::trivial(5)), 3, true));
  Bounds tight;
  tight.involution_sets = 0;
  CHECK_THROWS_AS(check_inv(fano(), 3, true, tight), BoundExceeded);
  CHECK_THROWS_AS(check_inv(fano(), 2, true), InvalidInput);
}

TEST_CASE("verify report") {
  Triple t = fano();
  VerifyOptions opt;
  opt.pair_candidate = duality_images(t.G);
  auto rep = verify(t, opt);
  CHECK(rep.ac);
  CHECK(rep.ec);
  CHECK(rep.ff);
  CHECK(rep.max);
  CHECK(rep.pair == PairStatus::Confirmed);
  CHECK(rep.inv_status == "found");
  auto j = nlohmann::json::parse(rep.to_json());
  CHECK(j["schema"] == 1);
  CHECK(j["ac"] == true);
  CHECK(j["pair"] == "confirmed");
  CHECK(rep.to_text().find("AC: ✓") != std::string::npos);

  auto bad = verify(a4_triple());
  CHECK_FALSE(bad.ac);
  CHECK(bad.ec);
  CHECK(bad.witnesses.count("ff"));
  CHECK(bad.witnesses.count("max"));
}
