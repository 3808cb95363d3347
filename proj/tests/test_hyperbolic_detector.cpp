#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "qcd/error.hpp"
#include "qcd/fixtures.hpp"
#include "qcd/hyperbolic_detector.hpp"

using namespace qcd;

namespace {

const oracle::Inverse kF2 = oracle::paired_inverse(4);

struct Setup {
  Fixture f;
  HyperbolicContext ctx;
  SubgroupSpec h;
};

Setup setup(const char* fixture, const std::vector<std::string>& gens, Rational delta = Rational(0)) {
  auto f = make_fixture(fixture);
  std::vector<Word> words;
  for (const auto& g : gens) words.push_back(parse_word(f.structure.alphabet, g));
  HyperbolicContext ctx(f.structure, f.presentation, delta);
  auto h = SubgroupSpec::make(f.structure.alphabet, words);
  return {std::move(f), std::move(ctx), std::move(h)};
}

}  // namespace

TEST_CASE("rationals") {
  CHECK(format_rational(Rational(3, 2)) == "3/2");
  CHECK(format_rational(Rational(4)) == "4");
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("7") == Rational(7));
  CHECK_THROWS_AS(parse_rational("x"), Error);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
}

TEST_CASE("context") {
  auto s = setup("free:2", {"a"});
  CHECK(s.ctx.reduce(parse_word(s.f.structure.alphabet, "a b b^")) == Word{0});
  CHECK(s.ctx.distance(parse_word(s.f.structure.alphabet, "a b a^ a")) == 2);
  auto f = make_fixture("free:2");
  CHECK_THROWS_AS(HyperbolicContext(f.structure, f.presentation, Rational(-1)), Error);
  auto long_a = relabel_word(f.structure, {0}, parse_word(f.structure.alphabet, "a a^ a"));
  CHECK_THROWS_AS(HyperbolicContext(long_a, f.presentation, Rational(0)), Error);
}

TEST_CASE("h_ball examples") {
  auto s = setup("free:2", {"a a", "b b"});
  CHECK(h_ball(s.ctx, s.h, 0).elements.size() == 1);
  auto b1 = h_ball(s.ctx, s.h, 1);
  CHECK(b1.elements.size() == 5);
  CHECK(b1.at(parse_word(s.f.structure.alphabet, "b^ b^")).distance == 1);
  auto z = setup("zz", {"x y"});
  auto bz = h_ball(z.ctx, z.h, 2);
  CHECK(bz.elements.size() == 5);
  CHECK(bz.at(parse_word(z.f.structure.alphabet, "x^ x^ y^ y^")).distance == 2);
  CHECK_THROWS_AS(h_ball(s.ctx, s.h, 3, 10), ResourceError);
}

TEST_CASE("h_ball distances match hash-set BFS") {
  for (const auto& gens : std::vector<std::vector<oracle::Word>>{
           {{0}}, {{0, 0}, {2, 2}}, {{0, 2, 1}, {2}}, {{0, 2}, {2, 0}}, {{0, 0, 2}}}) {
    auto f = make_fixture("free:2");
    HyperbolicContext ctx(f.structure, f.presentation, Rational(0));
    auto h = SubgroupSpec::make(f.structure.alphabet, gens);
    auto ball = h_ball(ctx, h, 3);
    auto truth = oracle::free_h_ball(kF2, h.symmetrized, 3);
    REQUIRE(ball.elements.size() == truth.size());
    for (const auto& e : ball.elements) CHECK(truth.at(e.normal_form) == e.distance);
    for (const auto& e : ball.elements) {
      if (e.parent < 0) continue;
      CHECK(ball.elements[static_cast<std::size_t>(e.parent)].distance + 1 == e.distance);
    }
  }
}

TEST_CASE("v_geodesic_words") {
  auto s = setup("free:2", {"a a", "b b"});
  auto ball = h_ball(s.ctx, s.h, 2);
  CHECK(v_geodesic_words(s.ctx, s.h, ball, 0) == std::vector<Word>{{}});
  auto one = v_geodesic_words(s.ctx, s.h, ball, 1);
  CHECK(one.size() == 5);
  auto z = setup("zz", {"x y"});
  auto bz = h_ball(z.ctx, z.h, 2);
  auto two = v_geodesic_words(z.ctx, z.h, bz, 2);
  CHECK(std::set<Word>(two.begin(), two.end()) == std::set<Word>{{}, {0}, {1}, {0, 0}, {1, 1}});

  auto c = setup("free:2", {"a b a^", "b"});
  auto bc = h_ball(c.ctx, c.h, 3);
  auto words = v_geodesic_words(c.ctx, c.h, bc, 3);
  auto truth = oracle::free_geodesic_v_words(kF2, c.h.symmetrized, 3);
  CHECK(std::set<Word>(words.begin(), words.end()) == std::set<Word>(truth.begin(), truth.end()));
  CHECK(words.size() == truth.size());
}

TEST_CASE("min_lambda examples") {
  auto s = setup("free:2", {"a a", "b b"});
  CHECK(min_lambda(s.ctx, {{}}, s.h.symmetrized) == Rational(1));
  auto ball = h_ball(s.ctx, s.h, 2);
  CHECK(min_lambda(s.ctx, v_geodesic_words(s.ctx, s.h, ball, 2), s.h.symmetrized) == Rational(1));

  auto c = setup("free:2", {"a b a^", "b"});
  CHECK(min_lambda(c.ctx, {{0, 3}}, c.h.symmetrized) == Rational(1));
  // V1 V1 walks a b a^ a b a^, whose middle a^ a backtracks
  CHECK(min_lambda(c.ctx, {{0, 0}}, c.h.symmetrized) == Rational(2));

  const Word back = parse_word(s.f.structure.alphabet, "a a^ a");
  CHECK(pair_ratio(s.ctx, back, 0, 3) == Rational(3, 2));
  CHECK(pair_ratio(s.ctx, back, 0, 2) == Rational(2));
  CHECK(min_lambda(s.ctx, {{0}}, {back}) == Rational(2));
}

TEST_CASE("min_lambda matches the pair scan on random word sets") {
  auto f = make_fixture("free:2");
  HyperbolicContext ctx(f.structure, f.presentation, Rational(0));
  std::mt19937 rng(17);
  for (int n = 0; n < 40; ++n) {
    std::vector<Word> images;
    for (int j = 0; j < 2; ++j) {
      Word w(1 + rng() % 4);
      for (auto& x : w) x = static_cast<Letter>(rng() % 4);
      images.push_back(w);
    }
    images.push_back(formal_inverse(f.structure.alphabet, images[0]));
    images.push_back(formal_inverse(f.structure.alphabet, images[1]));
    std::vector<Word> vw;
    for (int i = 0; i < 6; ++i) {
      Word w(rng() % 4);
      for (auto& x : w) x = static_cast<Letter>(rng() % 4);
      vw.push_back(w);
    }
    const auto truth = oracle::free_min_lambda(kF2, vw, images);
    CHECK(min_lambda(ctx, vw, images) == Rational(truth.num, truth.den));
  }
}

TEST_CASE("epsilon_from") {
  CHECK(epsilon_from(Rational(1), Rational(3)).value == Rational(3000));
  CHECK(epsilon_from(Rational(2), Rational(1)).value == Rational(2000));
  CHECK(epsilon_from(Rational(2), Rational(1)).exact);
  CHECK(epsilon_from(Rational(2), Rational(0)).value == Rational(0));
  CHECK(epsilon_from(Rational(8), Rational(1, 2)).value == Rational(2000));
  // least n with 2^n >= 3^1024 is 1624
  auto e3 = epsilon_from(Rational(3), Rational(1));
  CHECK(e3.value == Rational(41375, 16));
  CHECK_FALSE(e3.exact);
  // least n with 2^n 2^1024 >= 5^1024 is 1354
  CHECK(epsilon_from(Rational(5, 2), Rational(1, 3)).value == Rational(148625, 192));
  CHECK_THROWS_AS(epsilon_from(Rational(1, 2), Rational(1)), Error);
}

TEST_CASE("tree case halts at stage 1") {
  for (const auto& gens : std::vector<std::vector<std::string>>{{"a a", "b b"}, {"a"}}) {
    auto s = setup("free:2", gens);
    auto o = detect_quasiconvex(s.ctx, s.h, {});
    REQUIRE(o.halted());
    const auto& r = *o.report;
    CHECK(r.stage == 1);
    CHECK(r.lambda == Rational(1));
    CHECK(r.C == Rational(2));
    CHECK(r.epsilon.value == Rational(0));
    CHECK(r.J == 0);
    CHECK(r.step3_vacuous);
    CHECK(r.delta_zero);
  }
  auto c = setup("free:2", {"a b a^", "b"});
  auto o = detect_quasiconvex(c.ctx, c.h, {});
  REQUIRE(o.halted());
  CHECK(o.report->stage == 1);
  CHECK(o.report->lambda == Rational(2));
  CHECK(o.report->C == Rational(4));
  CHECK(o.report->epsilon.value == Rational(0));
}

TEST_CASE("positive delta runs Step 3") {
  auto s = setup("free:2", {"a"}, Rational(1, 1000));
  auto o = detect_quasiconvex(s.ctx, s.h, {});
  REQUIRE(o.halted());
  const auto& r = *o.report;
  CHECK(r.stage == 1);
  CHECK(r.K == 1);
  CHECK(r.J == 1);  // floor(1000 * 1 * 1 * 1/1000 * 1)
  CHECK(r.step3_vacuous);
  CHECK(r.epsilon.value == Rational(2));

  auto t = setup("free:2", {"a"}, Rational(1, 200));
  auto o2 = detect_quasiconvex(t.ctx, t.h, {});
  REQUIRE(o2.halted());
  CHECK(o2.report->J == 5);
  CHECK_FALSE(o2.report->step3_vacuous);
  REQUIRE(o2.report->words_per_j.size() == 4);
  CHECK(o2.report->words_per_j.front() == std::pair<std::size_t, std::size_t>{2, 9});
}

TEST_CASE("Z^2 is only ever reported conditionally") {
  auto z = setup("zz", {"x y"}, Rational(1, 100));
  DetectionBudget b;
  b.max_stage = 3;
  b.max_states = 5000;
  auto o = detect_quasiconvex(z.ctx, z.h, b);
  if (o.halted()) {
    CHECK(o.report->C == Rational(2) * o.report->lambda);
  } else {
    CHECK_FALSE(o.reason.empty());
  }
}

TEST_CASE("reports") {
  auto s = setup("free:2", {"a a", "b b"});
  auto o = detect_quasiconvex(s.ctx, s.h, {});
  const auto json = qc_report_json(o);
  CHECK(json == qc_report_json(detect_quasiconvex(s.ctx, s.h, {})));
  CHECK(json.find("\"lambda\": \"1\"") != std::string::npos);
  CHECK(json.find("\"delta_zero\": true") != std::string::npos);
  CHECK(qc_report_text(o).find("lambda 1") != std::string::npos);
}
