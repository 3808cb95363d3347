#include <doctest.h>

#include "oracles.hpp"
#include "qcd/automatic_structure.hpp"
#include "qcd/error.hpp"
#include "qcd/fixtures.hpp"
#include "qcd/rational_detector.hpp"

using namespace qcd;

namespace {

const oracle::Inverse kF2 = oracle::paired_inverse(4);

DetectionOutcome detect(const Fixture& f, const std::vector<std::string>& gens, DetectionBudget b = {}) {
  std::vector<Word> words;
  for (const auto& g : gens) words.push_back(parse_word(f.structure.alphabet, g));
  return detect_rational(f.structure, f.presentation, SubgroupSpec::make(f.structure.alphabet, words), b);
}

}  // namespace

TEST_CASE("free group, H = <a>") {
  auto f = make_fixture("free:2");
  auto o = detect(f, {"a"});
  REQUIRE(o.found());
  CHECK(o.m_h.num_states() == 4);  // 3 live states and a sink
  CHECK(accepts(o.m_h, {}));
  std::vector<Word> expect{{}, {0}, {1}, {0, 0}, {1, 1}, {0, 0, 0}, {1, 1, 1}};
  CHECK(enumerate_upto(o.m_h, 3) == expect);
  CHECK(o.stats.back().stable_count == 2);
  CHECK_FALSE(o.last_witness);

  CHECK(member(f.structure, o.m_h, {}));
  CHECK_FALSE(member(f.structure, o.m_h, parse_word(f.structure.alphabet, "b a b^")));
  CHECK(member(f.structure, o.m_h, parse_word(f.structure.alphabet, "b a b^ b a^ b^ a")));
  auto g = generates(f.structure, o.m_h);
  CHECK_FALSE(g.generates);
  CHECK(g.witness == parse_word(f.structure.alphabet, "b"));
}

TEST_CASE("free group, H = <a^2, b> against the Stallings oracle") {
  auto f = make_fixture("free:2");
  auto o = detect(f, {"a a", "b"});
  REQUIRE(o.found());
  oracle::Stallings truth(kF2, {{0, 0}, {2}});
  for (const auto& w : oracle::reduced_words(kF2, 8)) CHECK(accepts(o.m_h, w) == truth.contains(w));
  CHECK(member(f.structure, o.m_h, parse_word(f.structure.alphabet, "a a b a^ a^")));
  CHECK_FALSE(member(f.structure, o.m_h, parse_word(f.structure.alphabet, "a b a^")));
}

TEST_CASE("H = G and the trivial subgroup") {
  auto f = make_fixture("free:2");
  auto all = detect(f, {"a", "b"});
  REQUIRE(all.found());
  CHECK(generates(f.structure, all.m_h).generates);

  auto trivial = detect(f, {});
  REQUIRE(trivial.found());
  CHECK(enumerate_upto(trivial.m_h, 6) == std::vector<Word>{{}});
  CHECK(detect(f, {"1", "a a^"}).m_h == trivial.m_h);

  auto z3 = make_fixture("cyclic:3");
  auto o = detect(z3, {"a"});
  REQUIRE(o.found());
  CHECK(generates(z3.structure, o.m_h).generates);
}

TEST_CASE("Z^2, H = <x y> runs out of stages") {
  auto f = make_fixture("zz");
  DetectionBudget b;
  b.max_stage = 20;
  auto o = detect(f, {"x y"}, b);
  CHECK_FALSE(o.found());
  CHECK(o.stage == 20);
  CHECK(o.stats.size() == 20);
  CHECK(o.reason == "max stage reached");
  CHECK(o.last_li_states > 0);
  REQUIRE(o.last_witness);
}

TEST_CASE("budget reasons") {
  auto f = make_fixture("zz");
  DetectionBudget cosets;
  cosets.max_cosets = 30;
  CHECK(detect(f, {"x y"}, cosets).reason == "coset cap reached");
  DetectionBudget states;
  states.max_states = 5;
  CHECK(detect(f, {"x y"}, states).reason == "state cap reached");
  DetectionBudget clock;
  clock.wall_clock = std::chrono::milliseconds(0);
  CHECK(detect(f, {"x y"}, clock).reason == "timeout");
  DetectionBudget zero;
  zero.max_stage = 0;
  CHECK_THROWS_AS(detect(f, {"x y"}, zero), Error);
}

TEST_CASE("finite groups use the complete graph") {
  auto s3 = make_fixture("s3");
  for (const auto& gens : std::vector<std::vector<std::string>>{{"a"}, {"b"}, {"a b"}, {}, {"a", "b"}}) {
    auto o = detect(s3, gens);
    REQUIRE(o.found());
    std::vector<Word> words;
    for (const auto& g : gens) words.push_back(parse_word(s3.structure.alphabet, g));
    CHECK(language_size(o.m_h) == oracle::s3_model().generated(words).size());
  }
}

TEST_CASE("stability_check") {
  auto f = shortlex_free(2);
  const Fsa eps = from_words(f.alphabet.symbols(), {Word{}});
  auto r = stability_check(eps, diagonal(f.alphabet, f.acceptor));
  CHECK(r.stable);
  auto a = stability_check(eps, f.multiplier(0));
  CHECK_FALSE(a.stable);
  CHECK(a.witness == Word{});
}

TEST_CASE("identity not represented by the empty word") {
  auto f = make_fixture("free:2");
  auto patched = relabel_word(f.structure, {}, parse_word(f.structure.alphabet, "b b^"));
  auto o = detect_rational(patched, f.presentation, SubgroupSpec::make(f.structure.alphabet, {{0}}), {});
  REQUIRE(o.found());
  CHECK(accepts(o.m_h, {}));
  CHECK(member(patched, o.m_h, parse_word(f.structure.alphabet, "a b b^")));
  CHECK(member(patched, o.m_h, {}));
  CHECK_FALSE(member(patched, o.m_h, {2}));
  auto g = generates(patched, o.m_h);
  CHECK_FALSE(g.generates);
  CHECK(g.witness == Word{2});
}

TEST_CASE("observer sees sound and eventually monotone languages") {
  auto f = make_fixture("free:2");
  const std::vector<Word> gens{{0, 2, 1}, {2, 2}};
  oracle::NormalClosure closure(kF2, {}, gens, 10);
  std::vector<std::pair<CosetGraphApprox, Fsa>> seen;
  auto o = detect_rational(f.structure, f.presentation, SubgroupSpec::make(f.structure.alphabet, gens), {},
                           [&](std::size_t, const CosetGraphApprox& x, const Fsa& l) { seen.emplace_back(x, l); });
  REQUIRE(o.found());
  CHECK(seen.size() == o.stats.size());
  for (const auto& [x, l] : seen) {
    CHECK(accepts(l, {}));
    for (const auto& w : enumerate_upto(l, 8)) CHECK(closure.contains(w));
  }
  for (std::size_t i = 1; i < seen.size(); ++i) {
    if (ball(seen[i].first, 4).edges != ball(seen[i - 1].first, 4).edges) continue;
    auto now = enumerate_upto(seen[i].second, 4);
    auto before = enumerate_upto(seen[i - 1].second, 4);
    CHECK(std::includes(before.begin(), before.end(), now.begin(), now.end(), shortlex_less));
  }
}

TEST_CASE("reports are deterministic") {
  auto f = make_fixture("free:2");
  auto a = detect(f, {"a b", "b a^"});
  auto b = detect(f, {"a b", "b a^"});
  CHECK(a.m_h == b.m_h);
  CHECK(detection_report_json(f.structure.alphabet, a) == detection_report_json(f.structure.alphabet, b));
  const auto json = detection_report_json(f.structure.alphabet, a);
  CHECK(json.find("\"outcome\": \"found\"") != std::string::npos);
  CHECK(json.find("\"stages\"") != std::string::npos);
  const auto text = detection_report_text(f.structure.alphabet, a);
  CHECK(text.rfind("outcome found\n", 0) == 0);

  auto z = make_fixture("zz");
  DetectionBudget b5;
  b5.max_stage = 5;
  auto e = detect(z, {"x y"}, b5);
  const auto ej = detection_report_json(z.structure.alphabet, e);
  CHECK(ej.find("\"reason\": \"max stage reached\"") != std::string::npos);
  CHECK(ej.find("\"witness\"") != std::string::npos);
}

TEST_CASE("alphabet mismatch") {
  auto f = make_fixture("free:2");
  CHECK_THROWS_AS(detect_rational(f.structure, free_presentation(3), SubgroupSpec::make(f.structure.alphabet, {}), {}),
                  AlphabetMismatch);
}
