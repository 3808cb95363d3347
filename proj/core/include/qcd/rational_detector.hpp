#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qcd/automatic_structure.hpp"
#include "qcd/coset_enum.hpp"
#include "qcd/presentation.hpp"

namespace qcd {

struct DetectionBudget {
  std::size_t max_stage = 50;
  std::size_t max_states = 1'000'000;
  std::size_t max_cosets = 100'000;
  std::optional<std::chrono::milliseconds> wall_clock;
};

struct StageStats {
  std::size_t stage = 0;
  std::size_t graph_vertices = 0;
  std::size_t li_states = 0;
  std::size_t stable_count = 0;  // checks passed before the first failure
  bool complete = false;
};

struct DetectionOutcome {
  enum class Kind { found, exhausted };
  Kind kind = Kind::exhausted;
  std::size_t stage = 0;
  std::vector<StageStats> stats;
  Fsa m_h;                           // found: canonical minimal DFA for L_H
  std::string reason;                // exhausted
  std::size_t last_li_states = 0;    // exhausted
  std::optional<Word> last_witness;  // last stability failure, if any

  bool found() const noexcept { return kind == Kind::found; }
};

struct StabilityResult {
  bool stable = false;
  std::optional<Word> witness;  // ShortLex-least word of N_i xor L_i
};

// Called once per consumed snapshot with X_i and L_i.
using StageObserver = std::function<void(std::size_t, const CosetGraphApprox&, const Fsa&)>;

// N_i = words w of L_i whose image w*u is again in L_i; stable iff N_i = L_i.
StabilityResult stability_check(const Fsa& l_i, const PairFsa& m_u);

// Runs the stage loop: L_i = L cut down to the basepoint cycles of the
// i-th coset-graph snapshot, halting once L_i is stable under every
// u in (v1..vt, v1^-1..vt^-1), checked in that order. The structure is
// normalized first so the identity is represented by the empty word.
// The presentation supplies the relators for the coset enumeration and
// must be over the structure's alphabet.
DetectionOutcome detect_rational(const AutomaticStructure& s, const Presentation& p, const SubgroupSpec& h,
                                 const DetectionBudget& b, const StageObserver& observer = {});

// Acceptor of the normalized language: the identity's word replaced by the
// empty word.
Fsa normalized_acceptor(const AutomaticStructure& s);

// Generalized word problem: is v in H, given m_h from detect_rational.
bool member(const AutomaticStructure& s, const Fsa& m_h, const Word& v);

struct GenerationResult {
  bool generates = false;
  std::optional<Word> witness;  // normal form of an element outside H
};

// H = G iff L - L_H is empty.
GenerationResult generates(const AutomaticStructure& s, const Fsa& m_h);

std::string detection_report_json(const Alphabet& a, const DetectionOutcome& o);
std::string detection_report_text(const Alphabet& a, const DetectionOutcome& o);

}  // namespace qcd
