#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcd/alphabet.hpp"
#include "qcd/fsa.hpp"
#include "qcd/pair_fsa.hpp"

namespace qcd {

// Automatic structure with uniqueness: a word acceptor L over a symmetric
// generating alphabet, the equality recognizer and one multiplier per
// letter x relating (w, u) in L x L with w x = u in the group.
struct AutomaticStructure {
  Alphabet alphabet;
  Fsa acceptor;
  PairFsa equality;
  std::vector<PairFsa> multipliers;  // indexed by letter

  const PairFsa& multiplier(Letter x) const { return multipliers.at(static_cast<std::size_t>(x)); }
};

struct Counterexample {
  std::string check;
  Word first;
  std::optional<Word> second;
};

struct ValidationReport {
  bool uniqueness_ok = true;
  std::vector<bool> projection_ok;   // per letter
  std::vector<bool> consistency_ok;  // per letter
  bool sampled_surjectivity_ok = true;
  std::size_t sample_depth = 0;
  std::vector<Counterexample> counterexamples;

  bool ok() const noexcept { return counterexamples.empty(); }
};

// Three exact checks (equality is the diagonal of L; both projections of
// every multiplier lie in L; M_x composed with M_{x^-1} is the diagonal)
// plus a sampled check that all words up to sample_depth reduce. Whether
// L maps onto the whole group cannot be decided from the automata alone;
// the sample is the only evidence.
ValidationReport validate(const AutomaticStructure& s, std::size_t sample_depth);

// The accepted word representing the identity.
Word identity_word(const AutomaticStructure& s);

// Moves the representative `from` (in L) to `to` (not in L) and transports
// the equality and multiplier relations along that bijection, by splitting
// each relation into blocks on whether a coordinate equals `from`.
AutomaticStructure relabel_word(const AutomaticStructure& s, const Word& from, const Word& to);

// Makes the empty word the representative of the identity.
AutomaticStructure normalize_identity(const AutomaticStructure& s);

// Normal form of v, obtained by pushing the identity's representative
// through the letter multipliers of v in order.
Word reduce(const AutomaticStructure& s, const Word& v);
// Normal form of start * v for start in L.
Word reduce_from(const AutomaticStructure& s, const Word& start, const Word& v);

bool word_problem(const AutomaticStructure& s, const Word& v);

// M_v as the composite of the letter multipliers; diagonal(L) for v empty.
PairFsa multiplier_for_word(const AutomaticStructure& s, const Word& v);

std::string format_counterexample(const Alphabet& alphabet, const Counterexample& c);

}  // namespace qcd
