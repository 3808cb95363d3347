#include "qcd/automatic_structure.hpp"

#include <functional>

namespace qcd {

namespace {

void check_shape(const AutomaticStructure& s) {
  if (s.acceptor.symbols() != s.alphabet.symbols()) throw AlphabetMismatch();
  if (!(s.equality.base() == s.alphabet)) throw AlphabetMismatch();
  if (s.multipliers.size() != s.alphabet.size()) throw Error("structure needs one multiplier per letter");
  for (const auto& m : s.multipliers) {
    if (!(m.base() == s.alphabet)) throw AlphabetMismatch();
  }
}

PairFsa transport(const PairFsa& r, const Alphabet& base, const Fsa& rest, const Fsa& from_lang,
                  const Word& from, const Word& to) {
  const Fsa to_lang = from_words(base.symbols(), {to});
  PairFsa out = restrict(restrict(r, Tape::first, rest), Tape::second, rest);
  const Fsa from_rest_images = project(restrict(restrict(r, Tape::first, from_lang), Tape::second, rest), Tape::second);
  const Fsa rest_from_sources = project(restrict(restrict(r, Tape::first, rest), Tape::second, from_lang), Tape::first);
  out = pair_union(out, cross(base, to_lang, from_rest_images));
  out = pair_union(out, cross(base, rest_from_sources, to_lang));
  if (accepts_pair(r, from, from)) out = pair_union(out, from_pairs(base, {{to, to}}));
  return minimize(out);
}

}  // namespace

std::string format_counterexample(const Alphabet& alphabet, const Counterexample& c) {
  std::string out = c.check + ": " + format_word(alphabet, c.first);
  if (c.second) out += " , " + format_word(alphabet, *c.second);
  return out;
}

ValidationReport validate(const AutomaticStructure& s, std::size_t sample_depth) {
  check_shape(s);
  ValidationReport rep;
  rep.sample_depth = sample_depth;
  const std::size_t k = s.alphabet.size();
  const PairFsa diag = diagonal(s.alphabet, s.acceptor);

  if (auto w = distinguishing_pair(s.equality, diag)) {
    rep.uniqueness_ok = false;
    rep.counterexamples.push_back({"uniqueness", w->first, w->second});
  }
  rep.projection_ok.assign(k, true);
  rep.consistency_ok.assign(k, true);
  for (std::size_t i = 0; i < k; ++i) {
    const auto x = static_cast<Letter>(i);
    const std::string name = s.alphabet.name(x);
    for (Tape t : {Tape::first, Tape::second}) {
      const Fsa outside = combine(project(s.multiplier(x), t), s.acceptor, BoolOp::difference);
      if (auto w = shortest_accepted(outside)) {
        rep.projection_ok[i] = false;
        rep.counterexamples.push_back({"projection " + name, *w, std::nullopt});
      }
    }
    const PairFsa round_trip = compose(s.multiplier(x), s.multiplier(s.alphabet.inverse(x)));
    if (auto w = distinguishing_pair(round_trip, diag)) {
      rep.consistency_ok[i] = false;
      rep.counterexamples.push_back({"consistency " + name, w->first, w->second});
    }
  }

  // Sampled: every word up to sample_depth reduces to a unique normal form.
  std::optional<Word> start;
  try {
    start = identity_word(s);
  } catch (const Error&) {
    rep.sampled_surjectivity_ok = false;
    rep.counterexamples.push_back({"identity", Word{}, std::nullopt});
  }
  if (start) {
    Word prefix;
    std::function<void(const Word&)> walk = [&](const Word& nf) {
      if (prefix.size() == sample_depth || !rep.sampled_surjectivity_ok) return;
      for (std::size_t i = 0; i < k; ++i) {
        const auto x = static_cast<Letter>(i);
        prefix.push_back(x);
        try {
          walk(singleton_image(s.multiplier(x), nf));
        } catch (const Error&) {
          rep.sampled_surjectivity_ok = false;
          rep.counterexamples.push_back({"reduction", prefix, std::nullopt});
        }
        prefix.pop_back();
        if (!rep.sampled_surjectivity_ok) return;
      }
    };
    walk(*start);
  }
  return rep;
}

Word identity_word(const AutomaticStructure& s) {
  if (accepts(s.acceptor, Word{})) return Word{};
  auto w0 = shortest_accepted(s.acceptor);
  if (!w0) throw Error("word acceptor has empty language");
  // nf(w0 * w0^-1) is the identity's representative.
  return reduce_from(s, *w0, formal_inverse(s.alphabet, *w0));
}

AutomaticStructure relabel_word(const AutomaticStructure& s, const Word& from, const Word& to) {
  check_shape(s);
  if (!accepts(s.acceptor, from)) throw Error("word to relabel is not in the language");
  if (from == to) return s;
  if (accepts(s.acceptor, to)) throw Error("target word is already in the language");
  const auto& syms = s.alphabet.symbols();
  const Fsa from_lang = from_words(syms, {from});
  const Fsa rest = minimize(combine(s.acceptor, from_lang, BoolOp::difference));

  AutomaticStructure out;
  out.alphabet = s.alphabet;
  out.acceptor = minimize(combine(rest, from_words(syms, {to}), BoolOp::union_));
  out.equality = transport(s.equality, s.alphabet, rest, from_lang, from, to);
  for (const auto& m : s.multipliers) out.multipliers.push_back(transport(m, s.alphabet, rest, from_lang, from, to));
  return out;
}

AutomaticStructure normalize_identity(const AutomaticStructure& s) {
  const auto rep = validate(s, 0);
  if (!rep.ok()) {
    throw Error("invalid automatic structure (" + format_counterexample(s.alphabet, rep.counterexamples.front()) + ")");
  }
  const Word w = identity_word(s);
  if (w.empty()) return s;
  return relabel_word(s, w, Word{});
}

Word reduce_from(const AutomaticStructure& s, const Word& start, const Word& v) {
  Word cur = start;
  for (Letter x : v) {
    if (!s.alphabet.contains(x)) throw Error("letter outside alphabet");
    cur = singleton_image(s.multiplier(x), cur);
  }
  return cur;
}

Word reduce(const AutomaticStructure& s, const Word& v) { return reduce_from(s, identity_word(s), v); }

bool word_problem(const AutomaticStructure& s, const Word& v) { return reduce(s, v) == identity_word(s); }

PairFsa multiplier_for_word(const AutomaticStructure& s, const Word& v) {
  if (v.empty()) return minimize(diagonal(s.alphabet, s.acceptor));
  PairFsa m = s.multiplier(v.front());
  for (std::size_t i = 1; i < v.size(); ++i) m = compose(m, s.multiplier(v[i]));
  return minimize(m);
}

}  // namespace qcd
