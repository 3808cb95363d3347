#pragma once

// Helpers shared by the unit and acceptance tests.

#include <random>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qcd/fsa.hpp"
#include "qcd/pair_fsa.hpp"

namespace testing_support {

inline std::vector<std::string> symbols(int k) {
  std::vector<std::string> out;
  for (int i = 0; i < k; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
  return out;
}

// A random nondeterministic automaton together with the same automaton as a
// plain oracle NFA.
struct RandomNfa {
  qcd::Fsa fsa;
  oracle::Nfa nfa;
};

inline RandomNfa random_nfa(std::mt19937& rng, const std::vector<std::string>& syms, int max_states) {
  const int letters = static_cast<int>(syms.size());
  const int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_states));
  RandomNfa r{qcd::Fsa(syms, static_cast<std::size_t>(n)), {}};
  r.nfa.states = n;
  r.nfa.accepting.assign(static_cast<std::size_t>(n), false);
  r.nfa.out.resize(static_cast<std::size_t>(n));
  const int initial = 1 + static_cast<int>(rng() % 2);
  for (int i = 0; i < initial; ++i) {
    const int s = static_cast<int>(rng() % static_cast<unsigned>(n));
    r.fsa.add_initial(s);
    r.nfa.initial.push_back(s);
  }
  for (int s = 0; s < n; ++s) {
    if (rng() % 3 == 0) {
      r.fsa.set_accepting(s);
      r.nfa.accepting[static_cast<std::size_t>(s)] = true;
    }
    for (int x = 0; x < letters; ++x) {
      const unsigned fan = rng() % 4;  // 0 or 1 mostly, sometimes 2
      const int edges = fan == 0 ? 0 : fan == 3 ? 2 : 1;
      for (int e = 0; e < edges; ++e) {
        const int t = static_cast<int>(rng() % static_cast<unsigned>(n));
        r.fsa.add_transition(s, x, t);
        r.nfa.out[static_cast<std::size_t>(s)].emplace_back(x, t);
      }
    }
  }
  return r;
}

inline RandomNfa random_nfa(std::mt19937& rng, int letters, int max_states) {
  return random_nfa(rng, symbols(letters), max_states);
}

// A random synchronous relation: a random automaton over the pair alphabet
// cut down to its well-padded sequences. Draws are repeated until the
// minimal DFA has at most max_states states and a nonempty language.
inline qcd::PairFsa random_relation(std::mt19937& rng, const qcd::Alphabet& base, int max_states) {
  const qcd::PairAlphabet pa(base);
  const auto padded = qcd::well_padded_language(pa);
  for (;;) {
    auto raw = random_nfa(rng, pa.symbols(), max_states);
    auto m = qcd::minimize(qcd::combine(raw.fsa, padded, qcd::BoolOp::intersection));
    if (m.num_states() <= static_cast<std::size_t>(max_states) && !qcd::is_empty(m)) return qcd::PairFsa(base, std::move(m));
  }
}

inline std::vector<oracle::Word> random_words(std::mt19937& rng, int letters, std::size_t count, std::size_t max_len) {
  std::vector<oracle::Word> out;
  for (std::size_t i = 0; i < count; ++i) {
    oracle::Word w(rng() % (max_len + 1));
    for (auto& x : w) x = static_cast<int>(rng() % static_cast<unsigned>(letters));
    out.push_back(std::move(w));
  }
  return out;
}

inline std::set<oracle::Word> language_upto(const oracle::Nfa& m, int letters, std::size_t n) {
  std::set<oracle::Word> out;
  for (auto& w : oracle::all_words(letters, n)) {
    if (m.accepts(w)) out.insert(std::move(w));
  }
  return out;
}

}  // namespace testing_support
