#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qcd/alphabet.hpp"

namespace qcd {

using State = std::int32_t;

struct Transition {
  Letter label;
  State to;
  auto operator<=>(const Transition&) const = default;
};

// Finite-state acceptor over an ordered symbol list. Labels are indices
// into symbols(). There are no epsilon transitions: the empty word is
// accepted iff some initial state is accepting.
//
// Transitions are kept sorted per state and duplicate-free, so two
// automata compare equal exactly when their tables coincide.
class Fsa {
 public:
  Fsa() = default;
  explicit Fsa(std::vector<std::string> symbols, std::size_t states = 0);

  State add_state();
  void add_initial(State s);
  void set_accepting(State s, bool accepting = true);
  void add_transition(State from, Letter label, State to);

  const std::vector<std::string>& symbols() const noexcept { return symbols_; }
  std::size_t alphabet_size() const noexcept { return symbols_.size(); }
  std::size_t num_states() const noexcept { return out_.size(); }
  std::size_t num_transitions() const noexcept;
  const std::vector<State>& initial() const noexcept { return initial_; }
  bool accepting(State s) const { return accepting_.at(static_cast<std::size_t>(s)) != 0; }
  std::span<const Transition> out(State s) const { return out_.at(static_cast<std::size_t>(s)); }

  // Target of the first transition on `label`, if any.
  std::optional<State> next(State s, Letter label) const;

  // One initial state and at most one transition per (state, label).
  bool deterministic() const;
  // Deterministic with a transition for every (state, label).
  bool complete() const;

  bool operator==(const Fsa&) const = default;

 private:
  std::vector<std::string> symbols_;
  std::vector<State> initial_;
  std::vector<char> accepting_;
  std::vector<std::vector<Transition>> out_;
};

// Process-wide cap on the number of states any single construction may
// materialize; exceeding it raises ResourceError. Default 1'000'000.
std::size_t state_cap() noexcept;
void set_state_cap(std::size_t cap) noexcept;

class ScopedStateCap {
 public:
  explicit ScopedStateCap(std::size_t cap) : saved_(state_cap()) { set_state_cap(cap); }
  ~ScopedStateCap() { set_state_cap(saved_); }
  ScopedStateCap(const ScopedStateCap&) = delete;
  ScopedStateCap& operator=(const ScopedStateCap&) = delete;

 private:
  std::size_t saved_;
};

// Throws ResourceError when `states` exceeds the cap.
void check_state_cap(std::size_t states, const char* what);

enum class BoolOp { intersection, union_, difference };

Fsa all_words(const std::vector<std::string>& symbols);
Fsa empty_language(const std::vector<std::string>& symbols);
// Trie acceptor for a finite set of words.
Fsa from_words(const std::vector<std::string>& symbols, const std::vector<Word>& words);

bool accepts(const Fsa& m, const Word& w);

// Subset construction restricted to reachable subsets; the result is
// complete, a sink appears only when some subset is empty.
Fsa determinize(const Fsa& m);

// Minimal complete DFA, states numbered in breadth-first order from the
// initial state following the symbol order. Language-equal inputs give
// identical outputs.
Fsa minimize(const Fsa& m);

// Product of the completed operands; deterministic and complete.
Fsa combine(const Fsa& a, const Fsa& b, BoolOp op);

// Removes states that are unreachable or cannot reach an accepting state.
Fsa trim(const Fsa& m);
std::vector<bool> coreachable(const Fsa& m);

bool is_empty(const Fsa& m);
bool equivalent(const Fsa& a, const Fsa& b);
// ShortLex-least word accepted by exactly one of the operands.
std::optional<Word> distinguishing_word(const Fsa& a, const Fsa& b);

// Accepted words of length <= max_length in ShortLex order, at most `limit`.
std::vector<Word> enumerate_upto(const Fsa& m, std::size_t max_length,
                                 std::size_t limit = std::numeric_limits<std::size_t>::max());

std::optional<Word> shortest_accepted(const Fsa& m);

// Size of a finite language, or nullopt if infinite.
std::optional<std::size_t> language_size(const Fsa& m);

}  // namespace qcd
