#include "qcd/pair_fsa.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <unordered_map>

namespace qcd {

namespace {

constexpr unsigned kFirstEnded = 1;
constexpr unsigned kMiddleEnded = 2;
constexpr unsigned kLastEnded = 4;

void require_same_base(const PairFsa& a, const PairFsa& b) {
  if (!(a.alphabet() == b.alphabet())) throw AlphabetMismatch();
}

void require_base(const Alphabet& base, const Fsa& l) {
  if (l.symbols() != base.symbols()) throw AlphabetMismatch();
}

// Interns product states keyed by a 64-bit packing.
template <class Tuple>
class StateIndex {
 public:
  explicit StateIndex(const char* what) : what_(what) {}

  std::pair<State, bool> intern(std::uint64_t key, const Tuple& t) {
    auto [it, fresh] = index_.emplace(key, static_cast<State>(items_.size()));
    if (fresh) {
      check_state_cap(items_.size() + 1, what_);
      items_.push_back(t);
    }
    return {it->second, fresh};
  }
  const Tuple& operator[](std::size_t i) const { return items_[i]; }
  std::size_t size() const { return items_.size(); }

 private:
  const char* what_;
  std::unordered_map<std::uint64_t, State> index_;
  std::vector<Tuple> items_;
};

std::uint64_t pack(State a, State b, unsigned flags = 0) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 34) |
         (static_cast<std::uint64_t>(static_cast<std::uint32_t>(b)) << 3) | flags;
}

// States from which an accepting state is reachable using only transitions
// whose label satisfies `pred`.
template <class Pred>
std::vector<bool> accepting_by_tail(const Fsa& m, Pred pred) {
  const std::size_t n = m.num_states();
  std::vector<std::vector<State>> rev(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (const auto& t : m.out(static_cast<State>(s))) {
      if (pred(t.label)) rev[static_cast<std::size_t>(t.to)].push_back(static_cast<State>(s));
    }
  }
  std::vector<bool> ok(n, false);
  std::vector<State> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (m.accepting(static_cast<State>(s))) {
      ok[s] = true;
      stack.push_back(static_cast<State>(s));
    }
  }
  while (!stack.empty()) {
    const State s = stack.back();
    stack.pop_back();
    for (State p : rev[static_cast<std::size_t>(s)]) {
      if (!ok[static_cast<std::size_t>(p)]) {
        ok[static_cast<std::size_t>(p)] = true;
        stack.push_back(p);
      }
    }
  }
  return ok;
}

}  // namespace

PairAlphabet::PairAlphabet(Alphabet base) : base_(std::move(base)) {
  const std::size_t k = base_.size();
  auto name = [&](std::size_t x) { return x == k ? std::string(kPadSymbol) : base_.name(static_cast<Letter>(x)); };
  for (std::size_t x = 0; x <= k; ++x) {
    for (std::size_t y = 0; y <= k; ++y) {
      if (x == k && y == k) continue;
      symbols_.push_back(name(x) + ":" + name(y));
    }
  }
}

PairFsa::PairFsa(Alphabet base, Fsa fsa) : alphabet_(std::move(base)), fsa_(std::move(fsa)) {
  if (fsa_.symbols() != alphabet_.symbols()) throw AlphabetMismatch();
  if (!well_padded(alphabet_, fsa_)) throw Error("pair automaton is not well padded");
}

bool well_padded(const PairAlphabet& alphabet, const Fsa& m) {
  const Fsa t = trim(m);
  const Letter p = alphabet.pad();
  // Monitor: 0 nothing padded, 1 first tape padded, 2 second tape padded.
  std::vector<std::array<bool, 3>> seen(t.num_states(), {false, false, false});
  std::vector<std::pair<State, int>> stack;
  for (State s : t.initial()) {
    seen[static_cast<std::size_t>(s)][0] = true;
    stack.emplace_back(s, 0);
  }
  while (!stack.empty()) {
    const auto [s, mon] = stack.back();
    stack.pop_back();
    for (const auto& tr : t.out(s)) {
      const auto [x, y] = alphabet.decode(tr.label);
      int next = 0;
      if (x == p) {
        if (mon == 2) return false;
        next = 1;
      } else if (y == p) {
        if (mon == 1) return false;
        next = 2;
      } else if (mon != 0) {
        return false;
      }
      auto& flag = seen[static_cast<std::size_t>(tr.to)][static_cast<std::size_t>(next)];
      if (!flag) {
        flag = true;
        stack.emplace_back(tr.to, next);
      }
    }
  }
  return true;
}

Fsa well_padded_language(const PairAlphabet& alphabet) {
  Fsa m(alphabet.symbols(), 3);
  m.add_initial(0);
  const Letter p = alphabet.pad();
  for (State s = 0; s < 3; ++s) m.set_accepting(s);
  for (std::size_t l = 0; l < alphabet.size(); ++l) {
    const auto [x, y] = alphabet.decode(static_cast<Letter>(l));
    const auto label = static_cast<Letter>(l);
    if (x == p) {
      m.add_transition(0, label, 1);
      m.add_transition(1, label, 1);
    } else if (y == p) {
      m.add_transition(0, label, 2);
      m.add_transition(2, label, 2);
    } else {
      m.add_transition(0, label, 0);
    }
  }
  return m;
}

std::vector<Letter> pad(const PairAlphabet& alphabet, const Word& w, const Word& u) {
  const std::size_t n = std::max(w.size(), u.size());
  std::vector<Letter> seq(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Letter x = i < w.size() ? w[i] : alphabet.pad();
    const Letter y = i < u.size() ? u[i] : alphabet.pad();
    seq[i] = alphabet.label(x, y);
  }
  return seq;
}

std::pair<Word, Word> unpad(const PairAlphabet& alphabet, std::span<const Letter> seq) {
  Word w, u;
  bool w_ended = false;
  bool u_ended = false;
  for (Letter l : seq) {
    if (l < 0 || static_cast<std::size_t>(l) >= alphabet.size()) throw Error("label outside pair alphabet");
    const auto [x, y] = alphabet.decode(l);
    if (x == alphabet.pad()) {
      w_ended = true;
    } else {
      if (w_ended) throw Error("ill-padded sequence");
      w.push_back(x);
    }
    if (y == alphabet.pad()) {
      u_ended = true;
    } else {
      if (u_ended) throw Error("ill-padded sequence");
      u.push_back(y);
    }
  }
  return {std::move(w), std::move(u)};
}

bool accepts_pair(const PairFsa& r, const Word& w, const Word& u) {
  for (Letter x : w) if (!r.base().contains(x)) return false;
  for (Letter y : u) if (!r.base().contains(y)) return false;
  return accepts(r.fsa(), pad(r.alphabet(), w, u));
}

PairFsa diagonal(const Alphabet& base, const Fsa& l) {
  require_base(base, l);
  PairAlphabet pa(base);
  Fsa m(pa.symbols(), l.num_states());
  for (State s : l.initial()) m.add_initial(s);
  for (std::size_t s = 0; s < l.num_states(); ++s) {
    m.set_accepting(static_cast<State>(s), l.accepting(static_cast<State>(s)));
    for (const auto& t : l.out(static_cast<State>(s))) {
      m.add_transition(static_cast<State>(s), pa.label(t.label, t.label), t.to);
    }
  }
  return PairFsa(base, std::move(m));
}

PairFsa cross(const Alphabet& base, const Fsa& l1, const Fsa& l2) {
  require_base(base, l1);
  require_base(base, l2);
  PairAlphabet pa(base);
  const Letter p = pa.pad();
  struct Node {
    State a, b;
    unsigned flags;
  };
  StateIndex<Node> index("pair cross product");
  Fsa m(pa.symbols());
  auto intern = [&](State a, State b, unsigned f) {
    auto [id, fresh] = index.intern(pack(a, b, f), Node{a, b, f});
    if (fresh) {
      m.add_state();
      m.set_accepting(id, l1.accepting(a) && l2.accepting(b));
    }
    return id;
  };
  for (State a : l1.initial()) {
    for (State b : l2.initial()) m.add_initial(intern(a, b, 0));
  }
  for (std::size_t i = 0; i < index.size(); ++i) {
    const Node n = index[i];
    // Options for each tape: a real letter step, or the pad (state kept).
    std::vector<std::pair<Letter, State>> left, right;
    if (!(n.flags & kFirstEnded)) {
      for (const auto& t : l1.out(n.a)) left.emplace_back(t.label, t.to);
    }
    left.emplace_back(p, n.a);
    if (!(n.flags & kLastEnded)) {
      for (const auto& t : l2.out(n.b)) right.emplace_back(t.label, t.to);
    }
    right.emplace_back(p, n.b);
    for (const auto& [x, na] : left) {
      for (const auto& [y, nb] : right) {
        if (x == p && y == p) continue;
        unsigned f = n.flags;
        if (x == p) f |= kFirstEnded;
        if (y == p) f |= kLastEnded;
        const State to = intern(na, nb, f);
        m.add_transition(static_cast<State>(i), pa.label(x, y), to);
      }
    }
  }
  return minimize(PairFsa(base, std::move(m)));
}

PairFsa from_pairs(const Alphabet& base, const std::vector<std::pair<Word, Word>>& pairs) {
  PairAlphabet pa(base);
  std::vector<Word> seqs;
  seqs.reserve(pairs.size());
  for (const auto& [w, u] : pairs) seqs.push_back(pad(pa, w, u));
  return PairFsa(base, from_words(pa.symbols(), seqs));
}

PairFsa transpose(const PairFsa& r) {
  const PairAlphabet& pa = r.alphabet();
  const Fsa& f = r.fsa();
  Fsa m(pa.symbols(), f.num_states());
  for (State s : f.initial()) m.add_initial(s);
  for (std::size_t s = 0; s < f.num_states(); ++s) {
    m.set_accepting(static_cast<State>(s), f.accepting(static_cast<State>(s)));
    for (const auto& t : f.out(static_cast<State>(s))) {
      const auto [x, y] = pa.decode(t.label);
      m.add_transition(static_cast<State>(s), pa.label(y, x), t.to);
    }
  }
  return PairFsa(r.base(), std::move(m));
}

PairFsa pair_union(const PairFsa& a, const PairFsa& b) {
  require_same_base(a, b);
  return PairFsa(a.base(), minimize(combine(a.fsa(), b.fsa(), BoolOp::union_)));
}

PairFsa minimize(const PairFsa& r) { return PairFsa(r.base(), minimize(r.fsa())); }

PairFsa compose(const PairFsa& r1, const PairFsa& r2) {
  require_same_base(r1, r2);
  const PairAlphabet& pa = r1.alphabet();
  const Letter p = pa.pad();
  const Fsa f1 = trim(r1.fsa());
  const Fsa f2 = trim(r2.fsa());

  struct Node {
    State a, b;
    unsigned flags;
  };
  StateIndex<Node> index("composition");
  Fsa m(pa.symbols());
  auto intern = [&](State a, State b, unsigned f) {
    auto [id, fresh] = index.intern(pack(a, b, f), Node{a, b, f});
    if (fresh) m.add_state();
    return id;
  };
  for (State a : f1.initial()) {
    for (State b : f2.initial()) m.add_initial(intern(a, b, 0));
  }

  // Three tapes (w, v, u) are read in lockstep; the output shows (w, u).
  // Steps where only v is still running happen after the output is
  // exhausted and are folded into acceptance below.
  for (std::size_t i = 0; i < index.size(); ++i) {
    const Node n = index[i];
    auto emit = [&](Letter x, Letter y, Letter z, State na, State nb) {
      if (x == p && z == p) return;
      if ((n.flags & kFirstEnded) && x != p) return;
      if ((n.flags & kMiddleEnded) && y != p) return;
      if ((n.flags & kLastEnded) && z != p) return;
      unsigned f = n.flags;
      if (x == p) f |= kFirstEnded;
      if (y == p) f |= kMiddleEnded;
      if (z == p) f |= kLastEnded;
      const State to = intern(na, nb, f);
      m.add_transition(static_cast<State>(i), pa.label(x, z), to);
    };
    // y is a real letter: both relations move.
    for (const auto& t1 : f1.out(n.a)) {
      const auto [x, y] = pa.decode(t1.label);
      if (y == p) {
        // (x, pad): the first relation moves, the second idles or reads (pad, z).
        emit(x, p, p, t1.to, n.b);
        for (const auto& t2 : f2.out(n.b)) {
          const auto [y2, z] = pa.decode(t2.label);
          if (y2 == p) emit(x, p, z, t1.to, t2.to);
        }
        continue;
      }
      for (const auto& t2 : f2.out(n.b)) {
        const auto [y2, z] = pa.decode(t2.label);
        if (y2 == y) emit(x, y, z, t1.to, t2.to);
      }
    }
    // x and y padded: the first relation idles.
    for (const auto& t2 : f2.out(n.b)) {
      const auto [y2, z] = pa.decode(t2.label);
      if (y2 == p) emit(p, p, z, n.a, t2.to);
    }
  }

  // Tail: pairs (a, b) that reach accepting states by reading (pad, y) and
  // (y, pad) with a common middle letter y.
  StateIndex<std::pair<State, State>> tail("composition tail");
  std::vector<std::vector<std::size_t>> tail_rev;
  auto tail_intern = [&](State a, State b) {
    auto [id, fresh] = tail.intern(pack(a, b), {a, b});
    if (fresh) tail_rev.emplace_back();
    return static_cast<std::size_t>(id);
  };
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (!(index[i].flags & kMiddleEnded)) tail_intern(index[i].a, index[i].b);
  }
  for (std::size_t i = 0; i < tail.size(); ++i) {
    const auto [a, b] = tail[i];
    for (const auto& t1 : f1.out(a)) {
      const auto [x, y] = pa.decode(t1.label);
      if (x != p) continue;
      for (const auto& t2 : f2.out(b)) {
        const auto [y2, z] = pa.decode(t2.label);
        if (z != p || y2 != y) continue;
        const std::size_t j = tail_intern(t1.to, t2.to);
        tail_rev[j].push_back(i);
      }
    }
  }
  std::vector<bool> tail_ok(tail.size(), false);
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < tail.size(); ++i) {
    if (f1.accepting(tail[i].first) && f2.accepting(tail[i].second)) {
      tail_ok[i] = true;
      stack.push_back(i);
    }
  }
  while (!stack.empty()) {
    const std::size_t j = stack.back();
    stack.pop_back();
    for (std::size_t i : tail_rev[j]) {
      if (!tail_ok[i]) {
        tail_ok[i] = true;
        stack.push_back(i);
      }
    }
  }
  for (std::size_t i = 0; i < index.size(); ++i) {
    const Node n = index[i];
    bool acc = f1.accepting(n.a) && f2.accepting(n.b);
    if (!acc && !(n.flags & kMiddleEnded)) acc = tail_ok[tail_intern(n.a, n.b)];
    m.set_accepting(static_cast<State>(i), acc);
  }
  return PairFsa(r1.base(), minimize(m));
}

Fsa project(const PairFsa& r, Tape tape) {
  const PairAlphabet& pa = r.alphabet();
  const Letter p = pa.pad();
  const Fsa& f = r.fsa();
  auto pick = [&](Letter label) {
    const auto [x, y] = pa.decode(label);
    return tape == Tape::first ? x : y;
  };
  const auto ok = accepting_by_tail(f, [&](Letter label) { return pick(label) == p; });
  Fsa m(r.base().symbols(), f.num_states());
  for (State s : f.initial()) m.add_initial(s);
  for (std::size_t s = 0; s < f.num_states(); ++s) {
    m.set_accepting(static_cast<State>(s), ok[s]);
    for (const auto& t : f.out(static_cast<State>(s))) {
      const Letter c = pick(t.label);
      if (c != p) m.add_transition(static_cast<State>(s), c, t.to);
    }
  }
  return minimize(m);
}

PairFsa restrict(const PairFsa& r, Tape tape, const Fsa& l) {
  require_base(r.base(), l);
  const PairAlphabet& pa = r.alphabet();
  const Letter p = pa.pad();
  const Fsa& f = r.fsa();
  const Fsa d = determinize(l);
  StateIndex<std::pair<State, State>> index("restriction");
  Fsa m(pa.symbols());
  auto intern = [&](State a, State b) {
    auto [id, fresh] = index.intern(pack(a, b), {a, b});
    if (fresh) {
      m.add_state();
      m.set_accepting(id, f.accepting(a) && d.accepting(b));
    }
    return id;
  };
  const State start = d.initial().front();
  for (State a : f.initial()) m.add_initial(intern(a, start));
  for (std::size_t i = 0; i < index.size(); ++i) {
    const auto [a, b] = index[i];
    for (const auto& t : f.out(a)) {
      const auto [x, y] = pa.decode(t.label);
      const Letter c = tape == Tape::first ? x : y;
      const State nb = c == p ? b : *d.next(b, c);
      m.add_transition(static_cast<State>(i), t.label, intern(t.to, nb));
    }
  }
  return PairFsa(r.base(), trim(m));
}

Word singleton_image(const PairFsa& r, const Word& w, std::optional<std::size_t> slack) {
  const PairAlphabet& pa = r.alphabet();
  const Letter p = pa.pad();
  const Fsa& f = r.fsa();
  const std::size_t n = w.size();
  for (Letter x : w) {
    if (!r.base().contains(x)) throw Error("letter outside alphabet");
  }
  // Product with the positions of w; the output is the second tape.
  StateIndex<std::pair<State, State>> index("image search");
  Fsa m(r.base().symbols());
  auto intern = [&](State q, std::size_t pos) {
    auto [id, fresh] = index.intern(pack(q, static_cast<State>(pos)), {q, static_cast<State>(pos)});
    if (fresh) m.add_state();
    return id;
  };
  for (State q : f.initial()) m.add_initial(intern(q, 0));
  std::vector<std::pair<State, State>> pad_moves;
  for (std::size_t i = 0; i < index.size(); ++i) {
    const auto [q, pos] = index[i];
    const auto upos = static_cast<std::size_t>(pos);
    for (const auto& t : f.out(q)) {
      const auto [x, y] = pa.decode(t.label);
      const Letter expect = upos < n ? w[upos] : p;
      if (x != expect) continue;
      const std::size_t npos = upos < n ? upos + 1 : upos;
      const State to = intern(t.to, npos);
      if (y == p) {
        pad_moves.emplace_back(static_cast<State>(i), to);
      } else {
        m.add_transition(static_cast<State>(i), y, to);
      }
    }
  }
  // Accepting: w fully read and accepting, possibly after pad-output moves.
  std::vector<std::vector<State>> rev(index.size());
  for (const auto& [a, b] : pad_moves) rev[static_cast<std::size_t>(b)].push_back(a);
  std::vector<bool> ok(index.size(), false);
  std::vector<State> stack;
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (f.accepting(index[i].first) && static_cast<std::size_t>(index[i].second) == n) {
      ok[i] = true;
      stack.push_back(static_cast<State>(i));
    }
  }
  while (!stack.empty()) {
    const State s = stack.back();
    stack.pop_back();
    for (State a : rev[static_cast<std::size_t>(s)]) {
      if (!ok[static_cast<std::size_t>(a)]) {
        ok[static_cast<std::size_t>(a)] = true;
        stack.push_back(a);
      }
    }
  }
  for (std::size_t i = 0; i < index.size(); ++i) m.set_accepting(static_cast<State>(i), ok[i]);

  const std::size_t bound = n + slack.value_or(r.num_states());
  auto images = enumerate_upto(m, bound, 2);
  if (images.empty()) throw NoImage("no image within length bound " + std::to_string(bound));
  if (images.size() > 1) throw NotUnique(images[0], images[1]);
  return images[0];
}

std::optional<std::pair<Word, Word>> distinguishing_pair(const PairFsa& a, const PairFsa& b) {
  require_same_base(a, b);
  auto seq = distinguishing_word(a.fsa(), b.fsa());
  if (!seq) return std::nullopt;
  return unpad(a.alphabet(), *seq);
}

bool equivalent(const PairFsa& a, const PairFsa& b) { return !distinguishing_pair(a, b).has_value(); }

std::vector<std::pair<Word, Word>> enumerate_pairs(const PairFsa& r, std::size_t max_length) {
  std::vector<std::pair<Word, Word>> out;
  for (const auto& seq : enumerate_upto(r.fsa(), max_length)) out.push_back(unpad(r.alphabet(), seq));
  return out;
}

std::string write_pair_fsa(const PairFsa& r) { return write_fsa(r.fsa()); }

PairFsa read_pair_fsa(const Alphabet& base, std::span<const SourceLine> lines) {
  Fsa f = read_fsa(lines);
  PairAlphabet pa(base);
  if (f.symbols() != pa.symbols()) {
    throw ParseError(lines.empty() ? 0 : lines[0].number, "pair automaton alphabet does not match the base alphabet");
  }
  try {
    return PairFsa(base, std::move(f));
  } catch (const AlphabetMismatch&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(lines.empty() ? 0 : lines[0].number, e.what());
  }
}

PairFsa read_pair_fsa(const Alphabet& base, std::string_view text) {
  const auto lines = split_lines(text);
  return read_pair_fsa(base, std::span<const SourceLine>(lines));
}

}  // namespace qcd
