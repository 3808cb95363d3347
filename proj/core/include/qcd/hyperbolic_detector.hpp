#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "qcd/automatic_structure.hpp"
#include "qcd/coset_enum.hpp"
#include "qcd/presentation.hpp"
#include "qcd/rational_detector.hpp"

namespace qcd {

using Rational = boost::rational<std::int64_t>;

std::string format_rational(const Rational& r);
// Accepts "p", "p/q" and finite decimals such as "0.25".
Rational parse_rational(std::string_view text);

// Geodesic automatic structure of a hyperbolic group with thinness
// constant delta. Word lengths of normal forms are taken as distances.
class HyperbolicContext {
 public:
  // Normalizes the structure and samples geodesity: every word of length
  // <= sample_depth must reduce to a normal form that is no longer.
  HyperbolicContext(const AutomaticStructure& s, Presentation p, Rational delta, std::size_t sample_depth = 4);

  const AutomaticStructure& structure() const noexcept { return structure_; }
  const Presentation& presentation() const noexcept { return presentation_; }
  const Rational& delta() const noexcept { return delta_; }

  // nf(g * x) for a normal form g, memoized.
  const Word& step(const Word& g, Letter x) const;
  Word reduce(const Word& v) const;
  std::size_t distance(const Word& v) const { return reduce(v).size(); }

 private:
  AutomaticStructure structure_;
  Presentation presentation_;
  Rational delta_;
  mutable std::map<std::pair<Word, Letter>, Word> step_cache_;
};

// Words over the symmetrized generators use letter j for entry j of
// SubgroupSpec::symmetrized; j and j + t are mutually inverse.
Alphabet subgroup_alphabet(const SubgroupSpec& h);

// Ball of radius i in the Cayley graph of H with respect to V, elements
// keyed by normal form.
struct HBall {
  struct Element {
    Word normal_form;
    std::size_t distance;
    std::int32_t parent;  // -1 for the identity
    Letter via;           // V-letter from the parent
  };
  std::size_t radius = 0;
  std::vector<Element> elements;              // breadth-first order
  std::map<Word, std::int32_t> index;         // normal form -> element
  std::vector<std::vector<std::int32_t>> next;  // element x V-letter, -1 outside the ball

  const Element& at(const Word& nf) const { return elements.at(static_cast<std::size_t>(index.at(nf))); }
};

// Throws ResourceError when the ball would exceed max_elements.
HBall h_ball(const HyperbolicContext& ctx, const SubgroupSpec& h, std::size_t radius,
             std::size_t max_elements = 1'000'000);

// All d_V-geodesic words over V of length <= len, ShortLex ordered.
std::vector<Word> v_geodesic_words(const HyperbolicContext& ctx, const SubgroupSpec& h, const HBall& ball,
                                   std::size_t len, std::size_t max_words = 1'000'000);

// Least lambda >= 1 with s <= lambda * d_A(x, y) + lambda for all vertex
// pairs on each substituted path, vertices taken after every letter.
Rational min_lambda(const HyperbolicContext& ctx, const std::vector<Word>& words, const std::vector<Word>& images);

// Per-pair ratio s / (d_A + 1) of the path between vertices a <= b.
Rational pair_ratio(const HyperbolicContext& ctx, const Word& path, std::size_t a, std::size_t b);

struct EpsilonValue {
  Rational value;
  bool exact = true;  // false when log2 C was replaced by a dyadic upper bound
};

// 1000 * delta * (1 + log2 C); log2 C exact for powers of two, otherwise
// rounded up to a multiple of 1/1024.
EpsilonValue epsilon_from(const Rational& c, const Rational& delta);

struct QcReport {
  std::size_t stage = 0;
  std::size_t K = 0;
  Rational delta;
  Rational lambda;
  Rational C;
  EpsilonValue epsilon;
  std::int64_t J = 0;
  bool step3_vacuous = false;
  bool delta_zero = false;
  std::size_t words_at_stage = 0;
  std::vector<std::pair<std::size_t, std::size_t>> words_per_j;  // (j, words checked)
};

struct QcOutcome {
  std::optional<QcReport> report;  // set when the loop halted
  std::size_t stage = 0;           // last stage attempted
  std::string reason;              // when exhausted
  std::vector<std::pair<std::size_t, Rational>> lambda_trace;  // (i, lambda_i)

  bool halted() const noexcept { return report.has_value(); }
};

// Stage loop: lambda_i over geodesic words of length <= 2i, then every
// j = i+1 .. floor(1000 K i delta lambda_i) must keep lambda <= lambda_i
// over words of length <= 2j. max_states bounds ball and word-list sizes.
QcOutcome detect_quasiconvex(const HyperbolicContext& ctx, const SubgroupSpec& h, const DetectionBudget& b);

std::string qc_report_json(const QcOutcome& o);
std::string qc_report_text(const QcOutcome& o);

}  // namespace qcd
