#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qcd/alphabet.hpp"
#include "qcd/error.hpp"
#include "qcd/fsa.hpp"
#include "qcd/fsa_io.hpp"

namespace qcd {

// Padded pair alphabet over a base alphabet of size k: every (x, y) with
// x, y in base + {pad} except (pad, pad). Label index is x * (k + 1) + y
// with pad = k, so there are (k + 1)^2 - 1 labels. Symbols print as
// "x:y", the pad as "_".
class PairAlphabet {
 public:
  PairAlphabet() = default;
  explicit PairAlphabet(Alphabet base);

  const Alphabet& base() const noexcept { return base_; }
  Letter pad() const noexcept { return static_cast<Letter>(base_.size()); }
  std::size_t size() const noexcept { return symbols_.size(); }
  const std::vector<std::string>& symbols() const noexcept { return symbols_; }

  Letter label(Letter x, Letter y) const {
    return x * (static_cast<Letter>(base_.size()) + 1) + y;
  }
  std::pair<Letter, Letter> decode(Letter label) const {
    const auto k1 = static_cast<Letter>(base_.size()) + 1;
    return {label / k1, label % k1};
  }

  bool operator==(const PairAlphabet& o) const { return base_ == o.base_; }

 private:
  Alphabet base_;
  std::vector<std::string> symbols_;
};

inline constexpr const char* kPadSymbol = "_";

enum class Tape { first, second };

// Synchronous two-tape automaton. Construction checks that the automaton
// is over the padded pair alphabet and well padded: along every accepting
// path, once a tape shows the pad it shows nothing else.
class PairFsa {
 public:
  PairFsa() = default;
  PairFsa(Alphabet base, Fsa fsa);

  const PairAlphabet& alphabet() const noexcept { return alphabet_; }
  const Alphabet& base() const noexcept { return alphabet_.base(); }
  const Fsa& fsa() const noexcept { return fsa_; }
  std::size_t num_states() const noexcept { return fsa_.num_states(); }

  bool operator==(const PairFsa&) const = default;

 private:
  PairAlphabet alphabet_;
  Fsa fsa_;
};

class NoImage : public Error {
 public:
  using Error::Error;
};

class NotUnique : public Error {
 public:
  NotUnique(Word a, Word b) : Error("relation is not functional at this word"), first(std::move(a)), second(std::move(b)) {}
  Word first, second;
};

// Structural well-padding test on the trimmed automaton.
bool well_padded(const PairAlphabet& alphabet, const Fsa& m);
// DFA for all well-padded label sequences.
Fsa well_padded_language(const PairAlphabet& alphabet);

std::vector<Letter> pad(const PairAlphabet& alphabet, const Word& w, const Word& u);
// Throws Error on sequences that are not well padded.
std::pair<Word, Word> unpad(const PairAlphabet& alphabet, std::span<const Letter> seq);

bool accepts_pair(const PairFsa& r, const Word& w, const Word& u);

PairFsa diagonal(const Alphabet& base, const Fsa& l);
// {(w, u) : w in L1, u in L2}.
PairFsa cross(const Alphabet& base, const Fsa& l1, const Fsa& l2);
PairFsa from_pairs(const Alphabet& base, const std::vector<std::pair<Word, Word>>& pairs);
PairFsa transpose(const PairFsa& r);
PairFsa pair_union(const PairFsa& a, const PairFsa& b);
PairFsa minimize(const PairFsa& r);

// Relational composite {(w, u) : (w, v) in R1 and (v, u) in R2 for some v}.
// Minimized.
PairFsa compose(const PairFsa& r1, const PairFsa& r2);

// Words appearing on one tape of R. Minimized.
Fsa project(const PairFsa& r, Tape tape);

// Pairs of R whose chosen tape lies in L(l). Trimmed, not minimized.
PairFsa restrict(const PairFsa& r, Tape tape, const Fsa& l);

// The unique u with (w, u) in R and |u| <= |w| + slack. Slack defaults to
// the state count of R. Throws NoImage or NotUnique.
Word singleton_image(const PairFsa& r, const Word& w, std::optional<std::size_t> slack = std::nullopt);

bool equivalent(const PairFsa& a, const PairFsa& b);
std::optional<std::pair<Word, Word>> distinguishing_pair(const PairFsa& a, const PairFsa& b);

// Accepted pairs with padded length <= max_length, in ShortLex order of
// their label sequences.
std::vector<std::pair<Word, Word>> enumerate_pairs(const PairFsa& r, std::size_t max_length);

std::string write_pair_fsa(const PairFsa& r);
PairFsa read_pair_fsa(const Alphabet& base, std::span<const SourceLine> lines);
PairFsa read_pair_fsa(const Alphabet& base, std::string_view text);

}  // namespace qcd
