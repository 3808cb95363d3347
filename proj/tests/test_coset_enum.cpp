#include <doctest.h>

#include "oracles.hpp"
#include "qcd/coset_enum.hpp"
#include "qcd/error.hpp"
#include "qcd/fixtures.hpp"

using namespace qcd;

namespace {

const oracle::Inverse kF2 = oracle::paired_inverse(4);

CosetGraphApprox run_to_end(const Presentation& p, const std::vector<Word>& gens, std::size_t max_stage = 100) {
  CosetEnumerator e(p, SubgroupSpec::make(p.alphabet, gens));
  std::optional<CosetGraphApprox> last;
  for (std::size_t i = 0; i < max_stage; ++i) {
    auto x = e.next();
    if (!x) break;
    last = std::move(x);
  }
  REQUIRE(last);
  return *last;
}

std::vector<std::vector<int>> edges_of(const CosetGraphApprox& x) {
  std::vector<std::vector<int>> out;
  for (const auto& row : x.edges) out.emplace_back(row.begin(), row.end());
  return out;
}

}  // namespace

TEST_CASE("subgroup spec") {
  auto a = Alphabet::from_generators({"a", "b"});
  auto h = SubgroupSpec::make(a, {parse_word(a, "a b"), {}, parse_word(a, "b b b")});
  CHECK(h.words.size() == 2);
  CHECK(h.K == 3);
  REQUIRE(h.symmetrized.size() == 4);
  CHECK(h.symmetrized[2] == parse_word(a, "b^ a^"));
  CHECK(SubgroupSpec::make(a, {}).K == 0);
  CHECK(SubgroupSpec::make(a, {{}}).words.empty());
}

TEST_CASE("finite enumerations complete") {
  auto s3 = s3_presentation();
  auto x = run_to_end(s3, {{0}});
  CHECK(x.complete);
  CHECK(x.num_vertices() == 3);

  auto z3 = cyclic_presentation(3);
  auto y = run_to_end(z3, {});
  CHECK(y.complete);
  CHECK(y.num_vertices() == 3);

  CosetEnumerator e(s3, SubgroupSpec::make(s3.alphabet, {}));
  std::optional<CosetGraphApprox> snap;
  std::size_t stages = 0;
  while (auto n = e.next()) {
    ++stages;
    snap = std::move(n);
    CHECK(snap->stage == stages);
  }
  REQUIRE(snap);
  CHECK(snap->complete);
  CHECK(snap->num_vertices() == 6);
  CHECK_FALSE(e.next());
}

TEST_CASE("free group enumeration never completes and balls stabilize") {
  auto f2 = free_presentation(2);
  CosetEnumerator e(f2, SubgroupSpec::make(f2.alphabet, {{0}}));
  oracle::Stallings truth(kF2, {{0}});
  for (std::size_t i = 1; i <= 8; ++i) {
    auto x = e.next();
    REQUIRE(x);
    CHECK_FALSE(x->complete);
    check_coset_graph(*x);
    if (i >= 3) CHECK(edges_of(ball(*x, 2)) == truth.schreier_ball(2));
  }
}

TEST_CASE("local convergence for <a^2, b>") {
  auto f2 = free_presentation(2);
  const std::vector<Word> gens{{0, 0}, {2}};
  oracle::Stallings truth(kF2, gens);
  CosetEnumerator e(f2, SubgroupSpec::make(f2.alphabet, gens));
  std::vector<CosetGraphApprox> snaps;
  for (std::size_t i = 0; i < 8; ++i) snaps.push_back(*e.next());
  for (std::size_t k = 0; k <= 3; ++k) {
    CAPTURE(k);
    CHECK(edges_of(ball(snaps.back(), k)) == truth.schreier_ball(k));
    CHECK(ball(snaps[snaps.size() - 2], k) .edges == ball(snaps.back(), k).edges);
  }
}

TEST_CASE("graph_to_fsa") {
  auto a = Alphabet::from_generators({"a", "b"});
  CosetGraphApprox loop{a, {{0, 0, -1, -1}}, 0, 1, false};
  auto m = graph_to_fsa(loop);
  CHECK(accepts(m, {0, 1, 1, 0}));
  CHECK_FALSE(accepts(m, {2}));
  CosetGraphApprox bare{a, {{-1, -1, -1, -1}}, 0, 0, false};
  CHECK(enumerate_upto(graph_to_fsa(bare), 4) == std::vector<Word>{{}});

  auto s3 = s3_presentation();
  auto x = run_to_end(s3, {{0}});
  auto ms = graph_to_fsa(x);
  CHECK(accepts(ms, {0}));
  CHECK_FALSE(accepts(ms, {1}));
  CHECK(accepts(ms, {1, 0, 1, 0, 1}));  // b a b a b = a
}

TEST_CASE("ball") {
  auto s3 = s3_presentation();
  auto x = run_to_end(s3, {{0}});
  auto b0 = ball(x, 0);
  CHECK(b0.num_vertices() == 1);
  CHECK(b0.num_edges() <= 2);
  auto b2 = ball(x, 2);
  CHECK(b2.num_vertices() == 3);
  CHECK(b2.complete);
  CHECK(ball(b2, 2) == b2);
  auto f2 = free_presentation(2);
  CosetEnumerator e(f2, SubgroupSpec::make(f2.alphabet, {{0, 2}}));
  e.next();
  auto y = *e.next();
  for (std::size_t k = 0; k < 4; ++k) CHECK(ball(ball(y, k), k) == ball(y, k));
}

TEST_CASE("snapshots are sound") {
  struct Case {
    Presentation p;
    oracle::Inverse inv;
    std::vector<oracle::Word> relators;
    std::vector<Word> gens;
  };
  std::vector<Case> cases{
      {free_presentation(2), kF2, {}, {{0, 0}, {2}}},
      {free_presentation(2), kF2, {}, {{0, 2, 1}, {2, 2}}},
      {free_abelian_presentation(), kF2, {{0, 2, 1, 3}}, {{0, 2}}},
      {s3_presentation(), {0, 1}, {{0, 1, 0, 1, 0, 1}}, {{0, 1}}},
  };
  for (const auto& c : cases) {
    oracle::NormalClosure closure(c.inv, c.relators, c.gens, 10);
    CosetEnumerator e(c.p, SubgroupSpec::make(c.p.alphabet, c.gens));
    for (std::size_t i = 0; i < 5; ++i) {
      auto x = e.next();
      if (!x) break;
      check_coset_graph(*x);
      for (const auto& w : enumerate_upto(graph_to_fsa(*x), 6)) {
        CAPTURE(w);
        CHECK(closure.contains(w));
      }
    }
  }
}

TEST_CASE("finite index matches the permutation model") {
  auto model = oracle::s3_model();
  const auto p = s3_presentation();
  const std::vector<std::vector<Word>> subgroups{{}, {{0}}, {{1}}, {{0, 1}}, {{0}, {1}}, {{1, 0, 1}}};
  for (const auto& gens : subgroups) {
    auto x = run_to_end(p, gens);
    REQUIRE(x.complete);
    CHECK(x.num_vertices() == 6 / model.generated(gens).size());
  }
}

TEST_CASE("coset cap") {
  auto f2 = free_presentation(2);
  CosetEnumerator e(f2, SubgroupSpec::make(f2.alphabet, {{0}}), CosetCaps{50});
  bool hit = false;
  for (int i = 0; i < 20 && !hit; ++i) {
    try {
      e.next();
    } catch (const CosetCapExceeded& ex) {
      hit = true;
      REQUIRE(ex.last_snapshot);
      CHECK(ex.last_snapshot->num_vertices() <= 50);
    }
  }
  CHECK(hit);
}

TEST_CASE("coset graph text format") {
  auto x = run_to_end(s3_presentation(), {{0}});
  const std::string text = write_coset_graph(x);
  CHECK(text.rfind("coset-graph ", 0) == 0);
  CHECK(text.find("complete") != std::string::npos);
  auto back = read_coset_graph(text);
  CHECK(back == x);
  CHECK(write_coset_graph(back) == text);
  CHECK_THROWS_AS(read_coset_graph("coset-graph 1 1\nalphabet a a^\nbase 0\nedge 0 a 0\n"), Error);
}
