#include "qcd/fsa.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <map>
#include <numeric>
#include <unordered_map>

#include <boost/container_hash/hash.hpp>

#include "qcd/error.hpp"

namespace qcd {

namespace {

std::atomic<std::size_t> g_state_cap{1'000'000};

using Subset = std::vector<State>;

struct SubsetHash {
  std::size_t operator()(const Subset& s) const noexcept { return boost::hash_range(s.begin(), s.end()); }
};

// Dense transition table of a complete DFA.
struct Table {
  std::size_t k = 0;
  std::size_t n = 0;
  State start = 0;
  std::vector<State> delta;
  std::vector<char> accept;

  State at(State s, Letter x) const { return delta[static_cast<std::size_t>(s) * k + static_cast<std::size_t>(x)]; }
};

Table to_table(const Fsa& d) {
  Table t;
  t.k = d.alphabet_size();
  t.n = d.num_states();
  t.start = d.initial().front();
  t.delta.assign(t.n * t.k, -1);
  t.accept.resize(t.n);
  for (std::size_t s = 0; s < t.n; ++s) {
    t.accept[s] = d.accepting(static_cast<State>(s));
    for (const auto& tr : d.out(static_cast<State>(s))) {
      t.delta[s * t.k + static_cast<std::size_t>(tr.label)] = tr.to;
    }
  }
  return t;
}

Fsa from_table(const std::vector<std::string>& symbols, const Table& t) {
  Fsa out(symbols, t.n);
  out.add_initial(t.start);
  for (std::size_t s = 0; s < t.n; ++s) {
    out.set_accepting(static_cast<State>(s), t.accept[s] != 0);
    for (std::size_t x = 0; x < t.k; ++x) {
      out.add_transition(static_cast<State>(s), static_cast<Letter>(x), t.delta[s * t.k + x]);
    }
  }
  return out;
}

Table complete_table(const Fsa& m) { return to_table(determinize(m)); }

void require_same_alphabet(const Fsa& a, const Fsa& b) {
  if (a.symbols() != b.symbols()) throw AlphabetMismatch();
}

// Refinable partition used by the minimizer (Valmari & Lehtinen).
struct Partition {
  std::size_t sets = 0;
  std::vector<std::size_t> elems, loc, set_of, first, past, marked, touched;
  std::size_t touched_count = 0;

  explicit Partition(std::size_t n)
      : elems(n), loc(n), set_of(n, 0), first(n + 1), past(n + 1), marked(n + 1, 0), touched(n + 1) {
    sets = n > 0 ? 1 : 0;
    std::iota(elems.begin(), elems.end(), std::size_t{0});
    std::iota(loc.begin(), loc.end(), std::size_t{0});
    first[0] = 0;
    past[0] = n;
  }

  void mark(std::size_t e) {
    const std::size_t s = set_of[e];
    const std::size_t i = loc[e];
    const std::size_t j = first[s] + marked[s];
    if (i < j) return;
    elems[i] = elems[j];
    loc[elems[i]] = i;
    elems[j] = e;
    loc[e] = j;
    if (marked[s]++ == 0) touched[touched_count++] = s;
  }

  void split() {
    while (touched_count > 0) {
      const std::size_t s = touched[--touched_count];
      const std::size_t j = first[s] + marked[s];
      if (j == past[s]) {
        marked[s] = 0;
        continue;
      }
      if (marked[s] <= past[s] - j) {
        first[sets] = first[s];
        past[sets] = first[s] = j;
      } else {
        past[sets] = past[s];
        first[sets] = past[s] = j;
      }
      for (std::size_t i = first[sets]; i < past[sets]; ++i) set_of[elems[i]] = sets;
      marked[s] = marked[sets] = 0;
      ++sets;
    }
  }
};

// Class index of each state of a complete, reachable DFA.
std::vector<std::size_t> minimal_classes(const Table& t) {
  const std::size_t n = t.n;
  const std::size_t m = n * t.k;
  Partition blocks(n);
  for (std::size_t s = 0; s < n; ++s) {
    if (t.accept[s]) blocks.mark(s);
  }
  blocks.split();

  std::vector<std::size_t> tail(m), head(m), label(m);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t x = 0; x < t.k; ++x) {
      const std::size_t e = s * t.k + x;
      tail[e] = s;
      label[e] = x;
      head[e] = static_cast<std::size_t>(t.delta[e]);
    }
  }
  Partition cords(m);
  if (m > 0) {
    std::sort(cords.elems.begin(), cords.elems.end(),
              [&](std::size_t a, std::size_t b) { return label[a] < label[b] || (label[a] == label[b] && a < b); });
    cords.sets = 0;
    std::size_t cur = label[cords.elems[0]];
    cords.first[0] = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t e = cords.elems[i];
      if (label[e] != cur) {
        cur = label[e];
        cords.past[cords.sets++] = i;
        cords.first[cords.sets] = i;
      }
      cords.set_of[e] = cords.sets;
      cords.loc[e] = i;
    }
    cords.past[cords.sets++] = m;
  }

  // Incoming transitions per state.
  std::vector<std::size_t> in_begin(n + 1, 0), in_list(m);
  for (std::size_t e = 0; e < m; ++e) ++in_begin[head[e] + 1];
  for (std::size_t s = 0; s < n; ++s) in_begin[s + 1] += in_begin[s];
  {
    std::vector<std::size_t> fill(in_begin.begin(), in_begin.end() - 1);
    for (std::size_t e = 0; e < m; ++e) in_list[fill[head[e]]++] = e;
  }

  std::size_t b = 1;
  std::size_t c = 0;
  while (c < cords.sets) {
    for (std::size_t i = cords.first[c]; i < cords.past[c]; ++i) blocks.mark(tail[cords.elems[i]]);
    blocks.split();
    ++c;
    while (b < blocks.sets) {
      for (std::size_t i = blocks.first[b]; i < blocks.past[b]; ++i) {
        const std::size_t s = blocks.elems[i];
        for (std::size_t j = in_begin[s]; j < in_begin[s + 1]; ++j) cords.mark(in_list[j]);
      }
      cords.split();
      ++b;
    }
  }
  return std::vector<std::size_t>(blocks.set_of.begin(), blocks.set_of.end());
}

}  // namespace

Fsa::Fsa(std::vector<std::string> symbols, std::size_t states)
    : symbols_(std::move(symbols)), accepting_(states, 0), out_(states) {}

State Fsa::add_state() {
  check_state_cap(out_.size() + 1, "automaton");
  out_.emplace_back();
  accepting_.push_back(0);
  return static_cast<State>(out_.size() - 1);
}

void Fsa::add_initial(State s) {
  if (s < 0 || static_cast<std::size_t>(s) >= out_.size()) throw Error("initial state out of range");
  auto it = std::lower_bound(initial_.begin(), initial_.end(), s);
  if (it == initial_.end() || *it != s) initial_.insert(it, s);
}

void Fsa::set_accepting(State s, bool accepting) {
  accepting_.at(static_cast<std::size_t>(s)) = accepting ? 1 : 0;
}

void Fsa::add_transition(State from, Letter label, State to) {
  if (from < 0 || to < 0 || static_cast<std::size_t>(from) >= out_.size() ||
      static_cast<std::size_t>(to) >= out_.size()) {
    throw Error("transition endpoint out of range");
  }
  if (label < 0 || static_cast<std::size_t>(label) >= symbols_.size()) throw Error("transition label out of range");
  auto& edges = out_[static_cast<std::size_t>(from)];
  const Transition t{label, to};
  auto it = std::lower_bound(edges.begin(), edges.end(), t);
  if (it == edges.end() || *it != t) edges.insert(it, t);
}

std::size_t Fsa::num_transitions() const noexcept {
  std::size_t n = 0;
  for (const auto& e : out_) n += e.size();
  return n;
}

std::optional<State> Fsa::next(State s, Letter label) const {
  const auto& edges = out_.at(static_cast<std::size_t>(s));
  auto it = std::lower_bound(edges.begin(), edges.end(), Transition{label, std::numeric_limits<State>::min()});
  if (it != edges.end() && it->label == label) return it->to;
  return std::nullopt;
}

bool Fsa::deterministic() const {
  if (initial_.size() != 1) return false;
  for (const auto& edges : out_) {
    for (std::size_t i = 1; i < edges.size(); ++i) {
      if (edges[i].label == edges[i - 1].label) return false;
    }
  }
  return true;
}

bool Fsa::complete() const {
  if (!deterministic()) return false;
  return std::all_of(out_.begin(), out_.end(), [&](const auto& e) { return e.size() == symbols_.size(); });
}

std::size_t state_cap() noexcept { return g_state_cap.load(std::memory_order_relaxed); }
void set_state_cap(std::size_t cap) noexcept { g_state_cap.store(cap, std::memory_order_relaxed); }

void check_state_cap(std::size_t states, const char* what) {
  if (states > state_cap()) {
    throw ResourceError(std::string(what) + " exceeds the state cap of " + std::to_string(state_cap()));
  }
}

Fsa all_words(const std::vector<std::string>& symbols) {
  Fsa m(symbols, 1);
  m.add_initial(0);
  m.set_accepting(0);
  for (std::size_t x = 0; x < symbols.size(); ++x) m.add_transition(0, static_cast<Letter>(x), 0);
  return m;
}

Fsa empty_language(const std::vector<std::string>& symbols) {
  Fsa m(symbols, 1);
  m.add_initial(0);
  for (std::size_t x = 0; x < symbols.size(); ++x) m.add_transition(0, static_cast<Letter>(x), 0);
  return m;
}

Fsa from_words(const std::vector<std::string>& symbols, const std::vector<Word>& words) {
  Fsa m(symbols, 1);
  m.add_initial(0);
  for (const auto& w : words) {
    State s = 0;
    for (Letter x : w) {
      if (x < 0 || static_cast<std::size_t>(x) >= symbols.size()) throw Error("letter outside alphabet");
      auto nx = m.next(s, x);
      if (!nx) {
        nx = m.add_state();
        m.add_transition(s, x, *nx);
      }
      s = *nx;
    }
    m.set_accepting(s);
  }
  return m;
}

bool accepts(const Fsa& m, const Word& w) {
  std::vector<char> cur(m.num_states(), 0);
  for (State s : m.initial()) cur[static_cast<std::size_t>(s)] = 1;
  std::vector<char> nxt(m.num_states());
  for (Letter x : w) {
    if (x < 0 || static_cast<std::size_t>(x) >= m.alphabet_size()) throw Error("letter outside alphabet");
    std::fill(nxt.begin(), nxt.end(), 0);
    bool any = false;
    for (std::size_t s = 0; s < cur.size(); ++s) {
      if (!cur[s]) continue;
      for (const auto& t : m.out(static_cast<State>(s))) {
        if (t.label == x) {
          nxt[static_cast<std::size_t>(t.to)] = 1;
          any = true;
        }
      }
    }
    if (!any) return false;
    cur.swap(nxt);
  }
  for (std::size_t s = 0; s < cur.size(); ++s) {
    if (cur[s] && m.accepting(static_cast<State>(s))) return true;
  }
  return false;
}

Fsa determinize(const Fsa& m) {
  const std::size_t k = m.alphabet_size();
  // States that cannot reach acceptance are dropped from every subset.
  const auto live = coreachable(m);
  std::unordered_map<Subset, State, SubsetHash> index;
  std::vector<Subset> subsets;
  Table t;
  t.k = k;

  auto intern = [&](Subset s) -> State {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    check_state_cap(subsets.size() + 1, "determinization");
    const auto id = static_cast<State>(subsets.size());
    bool acc = false;
    for (State q : s) acc = acc || m.accepting(q);
    t.accept.push_back(acc ? 1 : 0);
    t.delta.resize(t.delta.size() + k, -1);
    index.emplace(s, id);
    subsets.push_back(std::move(s));
    return id;
  };

  Subset start;
  for (State q : m.initial()) {
    if (live[static_cast<std::size_t>(q)]) start.push_back(q);
  }
  std::sort(start.begin(), start.end());
  start.erase(std::unique(start.begin(), start.end()), start.end());
  t.start = intern(std::move(start));
  std::vector<Subset> buckets(k);
  for (std::size_t cur = 0; cur < subsets.size(); ++cur) {
    for (auto& b : buckets) b.clear();
    for (State q : subsets[cur]) {
      for (const auto& tr : m.out(q)) {
        if (live[static_cast<std::size_t>(tr.to)]) buckets[static_cast<std::size_t>(tr.label)].push_back(tr.to);
      }
    }
    for (std::size_t x = 0; x < k; ++x) {
      Subset& b = buckets[x];
      std::sort(b.begin(), b.end());
      b.erase(std::unique(b.begin(), b.end()), b.end());
      const State target = intern(b);
      t.delta[cur * k + x] = target;
    }
  }
  t.n = subsets.size();
  return from_table(m.symbols(), t);
}

Fsa minimize(const Fsa& m) {
  const Table t = complete_table(m);
  const auto cls = minimal_classes(t);
  std::size_t nclasses = 0;
  for (auto c : cls) nclasses = std::max(nclasses, c + 1);

  // Canonical numbering: breadth-first from the start class, symbols in order.
  std::vector<State> rep(nclasses, -1);
  std::vector<State> number(nclasses, -1);
  for (std::size_t s = 0; s < t.n; ++s) {
    if (rep[cls[s]] < 0) rep[cls[s]] = static_cast<State>(s);
  }
  std::vector<std::size_t> order;
  order.push_back(cls[static_cast<std::size_t>(t.start)]);
  number[order[0]] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const State s = rep[order[i]];
    for (std::size_t x = 0; x < t.k; ++x) {
      const std::size_t c = cls[static_cast<std::size_t>(t.at(s, static_cast<Letter>(x)))];
      if (number[c] < 0) {
        number[c] = static_cast<State>(order.size());
        order.push_back(c);
      }
    }
  }
  Table out;
  out.k = t.k;
  out.n = order.size();
  out.start = 0;
  out.delta.resize(out.n * out.k);
  out.accept.resize(out.n);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const State s = rep[order[i]];
    out.accept[i] = t.accept[static_cast<std::size_t>(s)];
    for (std::size_t x = 0; x < t.k; ++x) {
      out.delta[i * t.k + x] = number[cls[static_cast<std::size_t>(t.at(s, static_cast<Letter>(x)))]];
    }
  }
  return from_table(m.symbols(), out);
}

Fsa combine(const Fsa& a, const Fsa& b, BoolOp op) {
  require_same_alphabet(a, b);
  const Table ta = complete_table(a);
  const Table tb = complete_table(b);
  const std::size_t k = ta.k;
  std::unordered_map<std::uint64_t, State> index;
  std::vector<std::pair<State, State>> pairs;
  Table t;
  t.k = k;
  auto intern = [&](State p, State q) -> State {
    const std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(p)) << 32) |
                              static_cast<std::uint32_t>(q);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    check_state_cap(pairs.size() + 1, "product automaton");
    const auto id = static_cast<State>(pairs.size());
    const bool pa = ta.accept[static_cast<std::size_t>(p)] != 0;
    const bool pb = tb.accept[static_cast<std::size_t>(q)] != 0;
    bool acc = false;
    switch (op) {
      case BoolOp::intersection: acc = pa && pb; break;
      case BoolOp::union_: acc = pa || pb; break;
      case BoolOp::difference: acc = pa && !pb; break;
    }
    t.accept.push_back(acc ? 1 : 0);
    t.delta.resize(t.delta.size() + k, -1);
    index.emplace(key, id);
    pairs.emplace_back(p, q);
    return id;
  };
  t.start = intern(ta.start, tb.start);
  for (std::size_t cur = 0; cur < pairs.size(); ++cur) {
    for (std::size_t x = 0; x < k; ++x) {
      const auto [p, q] = pairs[cur];
      const State target = intern(ta.at(p, static_cast<Letter>(x)), tb.at(q, static_cast<Letter>(x)));
      t.delta[cur * k + x] = target;
    }
  }
  t.n = pairs.size();
  return from_table(a.symbols(), t);
}

std::vector<bool> coreachable(const Fsa& m) {
  const std::size_t n = m.num_states();
  std::vector<std::vector<State>> rev(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (const auto& t : m.out(static_cast<State>(s))) rev[static_cast<std::size_t>(t.to)].push_back(static_cast<State>(s));
  }
  std::vector<bool> live(n, false);
  std::vector<State> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (m.accepting(static_cast<State>(s))) {
      live[s] = true;
      stack.push_back(static_cast<State>(s));
    }
  }
  while (!stack.empty()) {
    const State s = stack.back();
    stack.pop_back();
    for (State p : rev[static_cast<std::size_t>(s)]) {
      if (!live[static_cast<std::size_t>(p)]) {
        live[static_cast<std::size_t>(p)] = true;
        stack.push_back(p);
      }
    }
  }
  return live;
}

Fsa trim(const Fsa& m) {
  const std::size_t n = m.num_states();
  const auto live = coreachable(m);
  std::vector<bool> reach(n, false);
  std::vector<State> stack;
  for (State s : m.initial()) {
    if (!reach[static_cast<std::size_t>(s)]) {
      reach[static_cast<std::size_t>(s)] = true;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    const State s = stack.back();
    stack.pop_back();
    for (const auto& t : m.out(s)) {
      if (!reach[static_cast<std::size_t>(t.to)]) {
        reach[static_cast<std::size_t>(t.to)] = true;
        stack.push_back(t.to);
      }
    }
  }
  std::vector<State> number(n, -1);
  std::size_t kept = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (reach[s] && live[s]) number[s] = static_cast<State>(kept++);
  }
  Fsa out(m.symbols(), kept);
  for (std::size_t s = 0; s < n; ++s) {
    if (number[s] < 0) continue;
    out.set_accepting(number[s], m.accepting(static_cast<State>(s)));
    for (const auto& t : m.out(static_cast<State>(s))) {
      if (number[static_cast<std::size_t>(t.to)] >= 0) out.add_transition(number[s], t.label, number[static_cast<std::size_t>(t.to)]);
    }
  }
  for (State s : m.initial()) {
    if (number[static_cast<std::size_t>(s)] >= 0) out.add_initial(number[static_cast<std::size_t>(s)]);
  }
  return out;
}

bool is_empty(const Fsa& m) {
  std::vector<bool> seen(m.num_states(), false);
  std::vector<State> stack(m.initial().begin(), m.initial().end());
  for (State s : stack) seen[static_cast<std::size_t>(s)] = true;
  while (!stack.empty()) {
    const State s = stack.back();
    stack.pop_back();
    if (m.accepting(s)) return false;
    for (const auto& t : m.out(s)) {
      if (!seen[static_cast<std::size_t>(t.to)]) {
        seen[static_cast<std::size_t>(t.to)] = true;
        stack.push_back(t.to);
      }
    }
  }
  return true;
}

std::optional<Word> distinguishing_word(const Fsa& a, const Fsa& b) {
  require_same_alphabet(a, b);
  const Table ta = complete_table(a);
  const Table tb = complete_table(b);
  const std::size_t k = ta.k;
  std::unordered_map<std::uint64_t, std::size_t> index;
  struct Node {
    State p, q;
    std::size_t parent;
    Letter via;
  };
  std::vector<Node> nodes;
  auto key = [](State p, State q) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(p)) << 32) | static_cast<std::uint32_t>(q);
  };
  auto word_of = [&](std::size_t i) {
    Word w;
    while (i != 0) {
      w.push_back(nodes[i].via);
      i = nodes[i].parent;
    }
    std::reverse(w.begin(), w.end());
    return w;
  };
  nodes.push_back({ta.start, tb.start, 0, -1});
  index.emplace(key(ta.start, tb.start), 0);
  for (std::size_t cur = 0; cur < nodes.size(); ++cur) {
    const auto [p, q, parent, via] = nodes[cur];
    if (ta.accept[static_cast<std::size_t>(p)] != tb.accept[static_cast<std::size_t>(q)]) return word_of(cur);
    for (std::size_t x = 0; x < k; ++x) {
      const State np = ta.at(p, static_cast<Letter>(x));
      const State nq = tb.at(q, static_cast<Letter>(x));
      if (index.emplace(key(np, nq), nodes.size()).second) {
        check_state_cap(nodes.size() + 1, "equivalence check");
        nodes.push_back({np, nq, cur, static_cast<Letter>(x)});
      }
    }
  }
  return std::nullopt;
}

bool equivalent(const Fsa& a, const Fsa& b) { return !distinguishing_word(a, b).has_value(); }

std::vector<Word> enumerate_upto(const Fsa& m, std::size_t max_length, std::size_t limit) {
  std::vector<Word> out;
  if (limit == 0) return out;
  const Fsa d = determinize(m);
  const auto live = coreachable(d);
  const State start = d.initial().front();
  if (!live[static_cast<std::size_t>(start)]) return out;
  std::vector<std::pair<Word, State>> frontier{{Word{}, start}};
  for (std::size_t len = 0; len <= max_length && !frontier.empty(); ++len) {
    for (const auto& [w, s] : frontier) {
      if (d.accepting(s)) {
        out.push_back(w);
        if (out.size() >= limit) return out;
      }
    }
    if (len == max_length) break;
    std::vector<std::pair<Word, State>> next;
    for (const auto& [w, s] : frontier) {
      for (const auto& t : d.out(s)) {
        if (!live[static_cast<std::size_t>(t.to)]) continue;
        Word nw = w;
        nw.push_back(t.label);
        next.emplace_back(std::move(nw), t.to);
      }
    }
    frontier = std::move(next);
  }
  return out;
}

std::optional<Word> shortest_accepted(const Fsa& m) {
  const Fsa d = determinize(m);
  const std::size_t n = d.num_states();
  std::vector<std::size_t> parent(n, n);
  std::vector<Letter> via(n, -1);
  std::vector<bool> seen(n, false);
  const State start = d.initial().front();
  std::deque<State> queue{start};
  seen[static_cast<std::size_t>(start)] = true;
  while (!queue.empty()) {
    const State s = queue.front();
    queue.pop_front();
    if (d.accepting(s)) {
      Word w;
      for (State c = s; c != start; c = static_cast<State>(parent[static_cast<std::size_t>(c)])) {
        w.push_back(via[static_cast<std::size_t>(c)]);
      }
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (const auto& t : d.out(s)) {
      if (!seen[static_cast<std::size_t>(t.to)]) {
        seen[static_cast<std::size_t>(t.to)] = true;
        parent[static_cast<std::size_t>(t.to)] = static_cast<std::size_t>(s);
        via[static_cast<std::size_t>(t.to)] = t.label;
        queue.push_back(t.to);
      }
    }
  }
  return std::nullopt;
}

std::optional<std::size_t> language_size(const Fsa& m) {
  const Fsa d = trim(determinize(m));
  const std::size_t n = d.num_states();
  if (n == 0) return 0;
  // Depth-first search for a cycle while accumulating path counts.
  std::vector<int> color(n, 0);
  std::vector<std::size_t> count(n, 0);
  std::vector<std::pair<State, std::size_t>> stack;
  const State start = d.initial().front();
  stack.emplace_back(start, 0);
  color[static_cast<std::size_t>(start)] = 1;
  while (!stack.empty()) {
    auto& [s, i] = stack.back();
    auto edges = d.out(s);
    if (i < edges.size()) {
      const State t = edges[i++].to;
      if (color[static_cast<std::size_t>(t)] == 1) return std::nullopt;
      if (color[static_cast<std::size_t>(t)] == 0) {
        color[static_cast<std::size_t>(t)] = 1;
        stack.emplace_back(t, 0);
      }
      continue;
    }
    std::size_t c = d.accepting(s) ? 1 : 0;
    for (const auto& e : edges) c += count[static_cast<std::size_t>(e.to)];
    count[static_cast<std::size_t>(s)] = c;
    color[static_cast<std::size_t>(s)] = 2;
    stack.pop_back();
  }
  return count[static_cast<std::size_t>(start)];
}

}  // namespace qcd
