#include "qcd/hyperbolic_detector.hpp"

#include <chrono>
#include <cmath>
#include <functional>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

namespace qcd {

std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(std::string_view text) {
  const std::string t(text);
  auto bad = [&]() { return Error("bad rational '" + t + "'"); };
  auto parse_int = [&](const std::string& s) -> std::int64_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 17) throw bad();
    return std::stoll(s);
  };
  if (auto slash = t.find('/'); slash != std::string::npos) {
    const auto q = parse_int(t.substr(slash + 1));
    if (q == 0) throw bad();
    return Rational(parse_int(t.substr(0, slash)), q);
  }
  if (auto dot = t.find('.'); dot != std::string::npos) {
    const std::string frac = t.substr(dot + 1);
    if (frac.empty() || frac.size() > 9) throw bad();
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const std::string whole = t.substr(0, dot).empty() ? "0" : t.substr(0, dot);
    return Rational(parse_int(whole) * den + parse_int(frac), den);
  }
  return Rational(parse_int(t));
}

HyperbolicContext::HyperbolicContext(const AutomaticStructure& s, Presentation p, Rational delta,
                                     std::size_t sample_depth)
    : structure_(normalize_identity(s)), presentation_(std::move(p)), delta_(delta) {
  if (delta_ < Rational(0)) throw Error("delta must be non-negative");
  if (!(presentation_.alphabet == structure_.alphabet)) throw AlphabetMismatch();
  const std::size_t k = structure_.alphabet.size();
  Word prefix;
  std::function<void(const Word&)> walk = [&](const Word& nf) {
    if (nf.size() > prefix.size()) {
      throw Error("structure is not geodesic: " + format_word(structure_.alphabet, prefix) + " reduces to the longer " +
                  format_word(structure_.alphabet, nf));
    }
    if (prefix.size() == sample_depth) return;
    for (std::size_t x = 0; x < k; ++x) {
      prefix.push_back(static_cast<Letter>(x));
      walk(step(nf, static_cast<Letter>(x)));
      prefix.pop_back();
    }
  };
  walk(Word{});
}

const Word& HyperbolicContext::step(const Word& g, Letter x) const {
  auto key = std::make_pair(g, x);
  auto it = step_cache_.find(key);
  if (it == step_cache_.end()) {
    it = step_cache_.emplace(std::move(key), singleton_image(structure_.multiplier(x), g)).first;
  }
  return it->second;
}

Word HyperbolicContext::reduce(const Word& v) const {
  Word g;
  for (Letter x : v) g = step(g, x);
  return g;
}

Alphabet subgroup_alphabet(const SubgroupSpec& h) {
  std::vector<std::string> names;
  for (std::size_t j = 0; j < h.words.size(); ++j) names.push_back("V" + std::to_string(j + 1));
  std::vector<std::string> symbols = names;
  for (const auto& n : names) symbols.push_back(n + "^");
  // from_symbols pairs x with x^, giving the inversion j <-> j + t.
  return Alphabet::from_symbols(symbols);
}

HBall h_ball(const HyperbolicContext& ctx, const SubgroupSpec& h, std::size_t radius, std::size_t max_elements) {
  HBall b;
  b.radius = radius;
  const std::size_t nv = h.symmetrized.size();
  b.elements.push_back({Word{}, 0, -1, -1});
  b.index.emplace(Word{}, 0);
  for (std::size_t qi = 0; qi < b.elements.size(); ++qi) {
    b.next.emplace_back(nv, -1);
    if (b.elements[qi].distance == radius) continue;
    for (std::size_t j = 0; j < nv; ++j) {
      Word g = b.elements[qi].normal_form;
      for (Letter x : h.symmetrized[j]) g = ctx.step(g, x);
      auto [it, fresh] = b.index.emplace(g, static_cast<std::int32_t>(b.elements.size()));
      if (fresh) {
        if (b.elements.size() >= max_elements) throw ResourceError("subgroup ball exceeds " + std::to_string(max_elements) + " elements");
        b.elements.push_back({std::move(g), b.elements[qi].distance + 1, static_cast<std::int32_t>(qi), static_cast<Letter>(j)});
      }
      b.next[qi][j] = it->second;
    }
  }
  return b;
}

std::vector<Word> v_geodesic_words(const HyperbolicContext&, const SubgroupSpec& h, const HBall& ball,
                                   std::size_t len, std::size_t max_words) {
  if (len > ball.radius) throw Error("ball radius smaller than the word-length bound");
  const std::size_t nv = h.symmetrized.size();
  std::vector<Word> out{Word{}};
  std::vector<std::int32_t> ends{0};
  std::size_t level_begin = 0;
  for (std::size_t l = 0; l < len; ++l) {
    const std::size_t level_end = out.size();
    for (std::size_t wi = level_begin; wi < level_end; ++wi) {
      const auto e = static_cast<std::size_t>(ends[wi]);
      for (std::size_t j = 0; j < nv; ++j) {
        const std::int32_t t = ball.next[e][j];
        if (t < 0 || ball.elements[static_cast<std::size_t>(t)].distance != l + 1) continue;
        if (out.size() >= max_words) throw ResourceError("geodesic word list exceeds " + std::to_string(max_words) + " words");
        Word w = out[wi];
        w.push_back(static_cast<Letter>(j));
        out.push_back(std::move(w));
        ends.push_back(t);
      }
    }
    level_begin = level_end;
  }
  return out;
}

Rational pair_ratio(const HyperbolicContext& ctx, const Word& path, std::size_t a, std::size_t b) {
  const Word sub(path.begin() + static_cast<std::ptrdiff_t>(a), path.begin() + static_cast<std::ptrdiff_t>(b));
  return Rational(static_cast<std::int64_t>(b - a), static_cast<std::int64_t>(ctx.distance(sub) + 1));
}

Rational min_lambda(const HyperbolicContext& ctx, const std::vector<Word>& words, const std::vector<Word>& images) {
  Rational lambda(1);
  for (const auto& vw : words) {
    Word path;
    for (Letter j : vw) {
      const auto& img = images.at(static_cast<std::size_t>(j));
      path.insert(path.end(), img.begin(), img.end());
    }
    for (std::size_t a = 0; a < path.size(); ++a) {
      Word g;
      for (std::size_t b = a + 1; b <= path.size(); ++b) {
        g = ctx.step(g, path[b - 1]);
        const Rational r(static_cast<std::int64_t>(b - a), static_cast<std::int64_t>(g.size() + 1));
        if (r > lambda) lambda = r;
      }
    }
  }
  return lambda;
}

EpsilonValue epsilon_from(const Rational& c, const Rational& delta) {
  if (c < Rational(1)) throw Error("distortion constant must be at least 1");
  if (delta < Rational(0)) throw Error("delta must be non-negative");
  using boost::multiprecision::cpp_int;
  // Least n with 2^(n/1024) >= C, i.e. 2^n * q^1024 >= p^1024.
  const cpp_int p = c.numerator();
  const cpp_int q = c.denominator();
  const cpp_int p1024 = boost::multiprecision::pow(p, 1024);
  const cpp_int q1024 = boost::multiprecision::pow(q, 1024);
  auto holds = [&](std::int64_t n) { return (q1024 << static_cast<unsigned>(n)) >= p1024; };
  const double est = 1024.0 * (std::log2(static_cast<double>(c.numerator())) - std::log2(static_cast<double>(c.denominator())));
  std::int64_t n = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor(est)));
  while (!holds(n)) ++n;
  while (n > 0 && holds(n - 1)) --n;
  EpsilonValue e;
  e.exact = (q1024 << static_cast<unsigned>(n)) == p1024;
  e.value = Rational(1000) * delta * (Rational(1) + Rational(n, 1024));
  return e;
}

QcOutcome detect_quasiconvex(const HyperbolicContext& ctx, const SubgroupSpec& h, const DetectionBudget& b) {
  if (b.max_stage == 0 || b.max_states == 0) throw Error("detection budget must be positive");
  const auto started = std::chrono::steady_clock::now();
  QcOutcome out;
  auto timed_out = [&] { return b.wall_clock && std::chrono::steady_clock::now() - started > *b.wall_clock; };
  try {
    for (std::size_t i = 1; i <= b.max_stage; ++i) {
      if (timed_out()) {
        out.reason = "timeout";
        return out;
      }
      out.stage = i;
      HBall ball = h_ball(ctx, h, 2 * i, b.max_states);
      const auto words = v_geodesic_words(ctx, h, ball, 2 * i, b.max_states);
      const Rational lambda = min_lambda(ctx, words, h.symmetrized);
      out.lambda_trace.emplace_back(i, lambda);

      const Rational bound = Rational(1000) * Rational(static_cast<std::int64_t>(h.K)) *
                             Rational(static_cast<std::int64_t>(i)) * ctx.delta() * lambda;
      const std::int64_t J = boost::rational_cast<std::int64_t>(bound);  // floor: bound >= 0
      QcReport rep;
      rep.stage = i;
      rep.K = h.K;
      rep.delta = ctx.delta();
      rep.lambda = lambda;
      rep.C = Rational(2) * lambda;
      rep.J = J;
      rep.step3_vacuous = J <= static_cast<std::int64_t>(i);
      rep.delta_zero = ctx.delta() == Rational(0);
      rep.words_at_stage = words.size();
      bool passed = true;
      for (std::int64_t j = static_cast<std::int64_t>(i) + 1; j <= J; ++j) {
        if (timed_out()) {
          out.reason = "timeout";
          return out;
        }
        const auto uj = static_cast<std::size_t>(j);
        if (ball.radius < 2 * uj) ball = h_ball(ctx, h, 2 * uj, b.max_states);
        const auto wj = v_geodesic_words(ctx, h, ball, 2 * uj, b.max_states);
        rep.words_per_j.emplace_back(uj, wj.size());
        if (min_lambda(ctx, wj, h.symmetrized) > lambda) {
          passed = false;
          break;
        }
      }
      if (passed) {
        rep.epsilon = epsilon_from(rep.C, rep.delta);
        out.report = rep;
        return out;
      }
    }
    out.reason = "max stage reached";
  } catch (const ResourceError& e) {
    out.reason = "state cap reached";
  }
  return out;
}

std::string qc_report_json(const QcOutcome& o) {
  nlohmann::ordered_json j;
  j["outcome"] = o.halted() ? "halted" : "exhausted";
  j["stage"] = o.stage;
  if (o.report) {
    const auto& r = *o.report;
    j["lambda"] = format_rational(r.lambda);
    j["C"] = format_rational(r.C);
    j["epsilon"] = format_rational(r.epsilon.value);
    j["epsilon_exact"] = r.epsilon.exact;
    j["K"] = r.K;
    j["delta"] = format_rational(r.delta);
    j["delta_zero"] = r.delta_zero;
    j["J"] = r.J;
    j["step3_vacuous"] = r.step3_vacuous;
    j["words_at_stage"] = r.words_at_stage;
    auto& per = j["words_per_j"] = nlohmann::ordered_json::array();
    for (const auto& [jj, n] : r.words_per_j) per.push_back({{"j", jj}, {"words", n}});
  } else {
    j["reason"] = o.reason;
  }
  auto& trace = j["lambda_trace"] = nlohmann::ordered_json::array();
  for (const auto& [i, l] : o.lambda_trace) trace.push_back({{"i", i}, {"lambda", format_rational(l)}});
  return j.dump(2) + "\n";
}

std::string qc_report_text(const QcOutcome& o) {
  std::string out = std::string("outcome ") + (o.halted() ? "halted" : "exhausted") + "\nstage " + std::to_string(o.stage) + "\n";
  if (o.report) {
    const auto& r = *o.report;
    out += "lambda " + format_rational(r.lambda) + "\nC " + format_rational(r.C) + "\nepsilon " +
           format_rational(r.epsilon.value) + (r.epsilon.exact ? "" : " (upper bound)") + "\nK " + std::to_string(r.K) +
           "\ndelta " + format_rational(r.delta) + (r.delta_zero ? " (zero: epsilon degenerates)" : "") + "\nJ " +
           std::to_string(r.J) + "\nstep3_vacuous " + (r.step3_vacuous ? "1" : "0") + "\nwords_at_stage " +
           std::to_string(r.words_at_stage) + "\n";
    for (const auto& [j, n] : r.words_per_j) out += "step3 " + std::to_string(j) + " " + std::to_string(n) + "\n";
  } else {
    out += "reason " + o.reason + "\n";
  }
  for (const auto& [i, l] : o.lambda_trace) out += "lambda_trace " + std::to_string(i) + " " + format_rational(l) + "\n";
  return out;
}

}  // namespace qcd
