// The oracles are checked against facts computed by hand, so that the
// library tests built on them do not inherit a silent oracle bug.
#include <doctest.h>

#include "oracles.hpp"

using oracle::Word;

namespace {
const oracle::Inverse kF2 = oracle::paired_inverse(4);  // a a^ b b^
}

TEST_CASE("oracle free reduction") {
  CHECK(oracle::free_reduce(kF2, {0, 1}).empty());
  CHECK(oracle::free_reduce(kF2, {0, 2, 3, 0}) == Word{0, 0});
  CHECK(oracle::free_reduce(kF2, {0, 2, 1, 0, 3, 1}).empty());
  CHECK(oracle::invert(kF2, {0, 2}) == Word{3, 1});
}

TEST_CASE("oracle word counts") {
  // 1 + 4 + 16 + 64 words, and 1 + 4 + 12 + 36 reduced ones
  CHECK(oracle::all_words(4, 3).size() == 85);
  CHECK(oracle::reduced_words(kF2, 3).size() == 53);
  CHECK(oracle::all_words(2, 2) == std::vector<Word>{{}, {0}, {1}, {0, 0}, {0, 1}, {1, 0}, {1, 1}});
}

TEST_CASE("stallings folding") {
  oracle::Stallings a2b(kF2, {{0, 0}, {2}});
  CHECK(a2b.vertices() == 2);
  CHECK(a2b.contains({}));
  CHECK(a2b.contains({0, 0, 2, 1, 1}));
  CHECK_FALSE(a2b.contains({0}));
  CHECK_FALSE(a2b.contains({0, 2, 1}));

  // <a b a^, b>: folding the two loops at the base gives a graph on 2 vertices
  oracle::Stallings conj(kF2, {{0, 2, 1}, {2}});
  CHECK(conj.vertices() == 2);
  CHECK(conj.contains({0, 2, 2, 1, 2}));
  CHECK_FALSE(conj.contains({0}));

  // generators that fold into a smaller graph: <a b, a b b> = <a b, b>
  oracle::Stallings folded(kF2, {{0, 2}, {0, 2, 2}});
  CHECK(folded.contains({2}));
  CHECK(folded.contains({0}));
  CHECK(folded.vertices() == 1);
}

TEST_CASE("stallings schreier ball") {
  oracle::Stallings a(kF2, {{0}});
  auto b0 = a.schreier_ball(0);
  REQUIRE(b0.size() == 1);
  CHECK(b0[0] == std::vector<int>{0, 0, -1, -1});
  auto b1 = a.schreier_ball(1);
  REQUIRE(b1.size() == 3);  // base, b, b^
  CHECK(b1[0] == std::vector<int>{0, 0, 1, 2});
  CHECK(b1[1][3] == 0);
  CHECK(b1[2][2] == 0);
}

TEST_CASE("z2 oracle") {
  CHECK(oracle::z2_exponents({0, 2, 1, 3}) == std::pair<long, long>{0, 0});
  CHECK(oracle::z2_normal_form(-2, 1) == Word{1, 1, 2});
}

TEST_CASE("permutation models") {
  auto z3 = oracle::z3_model();
  CHECK(z3.elements().size() == 3);
  CHECK(z3.eval({0, 0, 0}) == z3.identity());
  CHECK(z3.eval({0, 0}) == z3.eval({1}));
  auto s3 = oracle::s3_model();
  CHECK(s3.elements().size() == 6);
  CHECK(s3.eval({0, 1, 0, 1, 0, 1}) == s3.identity());
  CHECK(s3.generated({{0}}).size() == 2);
  CHECK(s3.generated({{0, 1}}).size() == 3);
  auto nf = s3.normal_forms();
  CHECK(nf.at(s3.eval({1, 0, 1})) == Word{0, 1, 0});
}

TEST_CASE("normal closure oracle") {
  oracle::NormalClosure comm(kF2, {{0, 2, 1, 3}}, {}, 6);
  CHECK(comm.contains({2, 0, 3, 1}));
  CHECK(comm.contains({0, 0, 2, 1, 1, 3}));
  CHECK_FALSE(comm.contains({0}));
  oracle::NormalClosure diag(kF2, {{0, 2, 1, 3}}, {{0, 2}}, 6);
  CHECK(diag.contains({2, 0}));
  CHECK(diag.contains({0, 0, 2, 2}));
  CHECK_FALSE(diag.contains({0, 0, 2}));
}

TEST_CASE("pair scan lambda") {
  // a a^ a: the pair around the backtrack gives 3/2, the two length-2
  // pairs with d = 0 give 2
  auto l = oracle::free_min_lambda(kF2, {{0}}, {{0, 1, 0}});
  CHECK(l.num == 2);
  CHECK(l.den == 1);
  auto geo = oracle::free_min_lambda(kF2, {{}, {0}, {0, 2}}, {{0, 0}, {1, 1}, {2, 2}, {3, 3}});
  CHECK(geo.num == 1);
  CHECK(geo.den == 1);
}

TEST_CASE("free subgroup balls") {
  std::vector<Word> v{{0, 0}, {2, 2}, {1, 1}, {3, 3}};
  CHECK(oracle::free_h_ball(kF2, v, 1).size() == 5);
  CHECK(oracle::free_h_ball(kF2, v, 2).size() == 17);
  CHECK(oracle::free_geodesic_v_words(kF2, v, 1).size() == 5);
  CHECK(oracle::free_geodesic_v_words(kF2, v, 2).size() == 17);
}

TEST_CASE("nfa simulation") {
  oracle::Nfa m;
  m.states = 2;
  m.initial = {0};
  m.accepting = {false, true};
  m.out = {{{0, 0}, {1, 0}, {0, 1}}, {}};
  CHECK(m.accepts({1, 0}));
  CHECK_FALSE(m.accepts({0, 1}));
  CHECK_FALSE(m.accepts({}));
}
