#include "qcd/coset_enum.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "qcd/fsa_io.hpp"

namespace qcd {

SubgroupSpec SubgroupSpec::make(const Alphabet& alphabet, const std::vector<Word>& generators) {
  SubgroupSpec h;
  for (const auto& w : generators) {
    for (Letter x : w) {
      if (!alphabet.contains(x)) throw Error("subgroup generator uses a letter outside the alphabet");
    }
    if (!w.empty()) h.words.push_back(w);
  }
  h.symmetrized = h.words;
  for (const auto& w : h.words) h.symmetrized.push_back(formal_inverse(alphabet, w));
  for (const auto& w : h.words) h.K = std::max(h.K, w.size());
  return h;
}

std::size_t CosetGraphApprox::num_edges() const {
  std::size_t n = 0;
  for (const auto& row : edges) n += static_cast<std::size_t>(std::count_if(row.begin(), row.end(), [](auto t) { return t >= 0; }));
  return n;
}

CosetEnumerator::CosetEnumerator(const Presentation& p, const SubgroupSpec& h, CosetCaps caps)
    : alphabet_(p.alphabet), k_(p.alphabet.size()), relators_by_first_(k_), subgroup_(h.words), caps_(caps) {
  if (k_ == 0) throw Error("presentation has no generators");
  std::set<Word> conjugates;
  for (const auto& r : p.relators) {
    for (const Word& base : {r, formal_inverse(alphabet_, r)}) {
      for (std::size_t i = 0; i < base.size(); ++i) {
        Word c(base.begin() + static_cast<std::ptrdiff_t>(i), base.end());
        c.insert(c.end(), base.begin(), base.begin() + static_cast<std::ptrdiff_t>(i));
        conjugates.insert(std::move(c));
      }
    }
  }
  for (const auto& c : conjugates) relators_by_first_[static_cast<std::size_t>(c.front())].push_back(c);

  table_.assign(k_, -1);
  parent_.push_back(0);
  live_ = 1;
  for (const auto& w : subgroup_) {
    scan_and_fill(rep(0), w);
    process_deductions();
  }
}

std::int32_t CosetEnumerator::rep(std::int32_t c) {
  std::int32_t r = c;
  while (parent_[static_cast<std::size_t>(r)] != r) r = parent_[static_cast<std::size_t>(r)];
  while (parent_[static_cast<std::size_t>(c)] != r) {
    const std::int32_t n = parent_[static_cast<std::size_t>(c)];
    parent_[static_cast<std::size_t>(c)] = r;
    c = n;
  }
  return r;
}

std::int32_t CosetEnumerator::define(std::int32_t c, Letter x) {
  if (live_ + 1 > caps_.max_cosets) throw CosetCapExceeded(caps_.max_cosets, last_);
  const auto d = static_cast<std::int32_t>(parent_.size());
  parent_.push_back(d);
  table_.resize(table_.size() + k_, -1);
  ++live_;
  assign(c, x, d);
  return d;
}

void CosetEnumerator::assign(std::int32_t c, Letter x, std::int32_t d) {
  entry(c, x) = d;
  entry(d, alphabet_.inverse(x)) = c;
  deductions_.emplace_back(c, x);
}

void CosetEnumerator::merge(std::int32_t a, std::int32_t b, std::vector<std::int32_t>& queue) {
  a = rep(a);
  b = rep(b);
  if (a == b) return;
  if (b < a) std::swap(a, b);
  parent_[static_cast<std::size_t>(b)] = a;
  --live_;
  queue.push_back(b);
}

void CosetEnumerator::coincidence(std::int32_t a, std::int32_t b) {
  std::vector<std::int32_t> queue;
  merge(a, b, queue);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const std::int32_t g = queue[qi];
    for (std::size_t xi = 0; xi < k_; ++xi) {
      const auto x = static_cast<Letter>(xi);
      const std::int32_t d = entry(g, x);
      if (d < 0) continue;
      const Letter xinv = alphabet_.inverse(x);
      if (entry(d, xinv) == g) entry(d, xinv) = -1;
      const std::int32_t mu = rep(g);
      const std::int32_t nu = rep(d);
      if (entry(mu, x) >= 0) {
        merge(nu, entry(mu, x), queue);
      } else if (entry(nu, xinv) >= 0) {
        merge(mu, entry(nu, xinv), queue);
      } else {
        assign(mu, x, nu);
      }
    }
  }
}

// Deduction-only scan of w at coset c. Returns true if anything changed.
bool CosetEnumerator::scan(std::int32_t c, const Word& w) {
  std::int32_t f = c;
  std::int32_t b = c;
  std::ptrdiff_t i = 0;
  std::ptrdiff_t j = static_cast<std::ptrdiff_t>(w.size()) - 1;
  while (i <= j && entry(f, w[static_cast<std::size_t>(i)]) >= 0) f = entry(f, w[static_cast<std::size_t>(i++)]);
  if (i > j) {
    if (f != c) {
      coincidence(f, c);
      return true;
    }
    return false;
  }
  while (j >= i && entry(b, alphabet_.inverse(w[static_cast<std::size_t>(j)])) >= 0) {
    b = entry(b, alphabet_.inverse(w[static_cast<std::size_t>(j--)]));
  }
  if (j < i) {
    coincidence(f, b);
    return true;
  }
  if (i == j) {
    assign(f, w[static_cast<std::size_t>(i)], b);
    return true;
  }
  return false;
}

void CosetEnumerator::scan_and_fill(std::int32_t c, const Word& w) {
  for (;;) {
    std::int32_t f = c;
    std::int32_t b = c;
    std::ptrdiff_t i = 0;
    std::ptrdiff_t j = static_cast<std::ptrdiff_t>(w.size()) - 1;
    while (i <= j && entry(f, w[static_cast<std::size_t>(i)]) >= 0) f = entry(f, w[static_cast<std::size_t>(i++)]);
    if (i > j) {
      if (f != c) coincidence(f, c);
      return;
    }
    while (j >= i && entry(b, alphabet_.inverse(w[static_cast<std::size_t>(j)])) >= 0) {
      b = entry(b, alphabet_.inverse(w[static_cast<std::size_t>(j--)]));
    }
    if (j < i) {
      coincidence(f, b);
      return;
    }
    if (i == j) {
      assign(f, w[static_cast<std::size_t>(i)], b);
      return;
    }
    define(f, w[static_cast<std::size_t>(i)]);
  }
}

void CosetEnumerator::process_deductions() {
  while (!deductions_.empty()) {
    const auto [c, x] = deductions_.back();
    deductions_.pop_back();
    if (!alive(c)) continue;
    for (const auto& r : relators_by_first_[static_cast<std::size_t>(x)]) {
      if (!alive(c)) break;
      scan(c, r);
    }
    if (!alive(c)) continue;
    const std::int32_t d = entry(c, x);
    if (d < 0 || !alive(d)) continue;
    for (const auto& r : relators_by_first_[static_cast<std::size_t>(alphabet_.inverse(x))]) {
      if (!alive(d)) break;
      scan(d, r);
    }
  }
  for (const auto& w : subgroup_) {
    if (scan(rep(0), w)) process_deductions();
  }
}

bool CosetEnumerator::table_total() {
  for (std::size_t c = 0; c < parent_.size(); ++c) {
    if (!alive(static_cast<std::int32_t>(c))) continue;
    for (std::size_t x = 0; x < k_; ++x) {
      if (table_[c * k_ + x] < 0) return false;
    }
  }
  return true;
}

// Full scan of every relator at every coset; returns true if the table
// was already closed.
bool CosetEnumerator::verify_all() {
  bool closed = true;
  for (std::size_t c = 0; c < parent_.size(); ++c) {
    for (const auto& bucket : relators_by_first_) {
      for (const auto& r : bucket) {
        if (!alive(static_cast<std::int32_t>(c))) break;
        if (scan(static_cast<std::int32_t>(c), r)) {
          closed = false;
          process_deductions();
        }
      }
    }
  }
  for (const auto& w : subgroup_) {
    if (scan(rep(0), w)) {
      closed = false;
      process_deductions();
    }
  }
  return closed;
}

CosetGraphApprox CosetEnumerator::snapshot(bool complete) const {
  CosetGraphApprox g;
  g.alphabet = alphabet_;
  g.stage = stage_;
  g.complete = complete;
  std::vector<std::int32_t> index(parent_.size(), -1);
  std::int32_t n = 0;
  for (std::size_t c = 0; c < parent_.size(); ++c) {
    if (parent_[c] == static_cast<std::int32_t>(c)) index[c] = n++;
  }
  g.edges.assign(static_cast<std::size_t>(n), std::vector<std::int32_t>(k_, -1));
  for (std::size_t c = 0; c < parent_.size(); ++c) {
    if (index[c] < 0) continue;
    for (std::size_t x = 0; x < k_; ++x) {
      const std::int32_t t = table_[c * k_ + x];
      if (t >= 0) g.edges[static_cast<std::size_t>(index[c])][x] = index[static_cast<std::size_t>(t)];
    }
  }
  return g;
}

std::optional<CosetGraphApprox> CosetEnumerator::next() {
  if (finished_) return std::nullopt;
  ++stage_;
  if (!table_total()) {
    const auto existing = static_cast<std::int32_t>(parent_.size());
    for (std::int32_t c = 0; c < existing; ++c) {
      for (std::size_t xi = 0; xi < k_; ++xi) {
        if (!alive(c)) break;
        if (entry(c, static_cast<Letter>(xi)) >= 0) continue;
        define(c, static_cast<Letter>(xi));
        process_deductions();
      }
    }
  }
  bool complete = false;
  if (table_total()) {
    while (!verify_all()) {
    }
    complete = table_total();
  }
  finished_ = complete;
  last_ = snapshot(complete);
  return last_;
}

Fsa graph_to_fsa(const CosetGraphApprox& x) {
  Fsa m(x.alphabet.symbols(), x.num_vertices());
  if (x.num_vertices() == 0) throw Error("coset graph has no vertices");
  m.add_initial(x.basepoint);
  m.set_accepting(x.basepoint);
  for (std::size_t v = 0; v < x.edges.size(); ++v) {
    for (std::size_t a = 0; a < x.edges[v].size(); ++a) {
      if (x.edges[v][a] >= 0) m.add_transition(static_cast<State>(v), static_cast<Letter>(a), x.edges[v][a]);
    }
  }
  return m;
}

CosetGraphApprox ball(const CosetGraphApprox& x, std::size_t k) {
  const std::size_t n = x.num_vertices();
  std::vector<std::int32_t> index(n, -1);
  std::vector<std::size_t> dist(n, 0);
  std::vector<std::int32_t> order{x.basepoint};
  index[static_cast<std::size_t>(x.basepoint)] = 0;
  for (std::size_t qi = 0; qi < order.size(); ++qi) {
    const auto v = static_cast<std::size_t>(order[qi]);
    if (dist[v] == k) continue;
    for (std::int32_t t : x.edges[v]) {
      if (t < 0 || index[static_cast<std::size_t>(t)] >= 0) continue;
      index[static_cast<std::size_t>(t)] = static_cast<std::int32_t>(order.size());
      dist[static_cast<std::size_t>(t)] = dist[v] + 1;
      order.push_back(t);
    }
  }
  CosetGraphApprox out;
  out.alphabet = x.alphabet;
  out.stage = x.stage;
  out.complete = x.complete && order.size() == n;
  out.edges.assign(order.size(), std::vector<std::int32_t>(x.alphabet.size(), -1));
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& row = x.edges[static_cast<std::size_t>(order[i])];
    for (std::size_t a = 0; a < row.size(); ++a) {
      if (row[a] >= 0 && index[static_cast<std::size_t>(row[a])] >= 0) out.edges[i][a] = index[static_cast<std::size_t>(row[a])];
    }
  }
  return out;
}

void check_coset_graph(const CosetGraphApprox& x) {
  const auto n = static_cast<std::int32_t>(x.num_vertices());
  if (x.basepoint < 0 || x.basepoint >= n) throw Error("coset graph basepoint out of range");
  for (std::int32_t v = 0; v < n; ++v) {
    const auto& row = x.edges[static_cast<std::size_t>(v)];
    if (row.size() != x.alphabet.size()) throw Error("coset graph row has wrong width");
    for (std::size_t a = 0; a < row.size(); ++a) {
      const std::int32_t t = row[a];
      if (t < 0) continue;
      if (t >= n) throw Error("coset graph edge target out of range");
      const Letter inv = x.alphabet.inverse(static_cast<Letter>(a));
      if (x.edges[static_cast<std::size_t>(t)][static_cast<std::size_t>(inv)] != v) {
        throw Error("coset graph violates the edge involution at vertex " + std::to_string(v));
      }
    }
  }
}

std::string write_coset_graph(const CosetGraphApprox& x) {
  std::ostringstream out;
  out << "coset-graph " << x.stage << ' ' << x.num_vertices() << '\n';
  out << "alphabet";
  for (const auto& s : x.alphabet.symbols()) out << ' ' << s;
  out << "\nbase " << x.basepoint << '\n';
  if (x.complete) out << "complete\n";
  for (std::size_t v = 0; v < x.edges.size(); ++v) {
    for (std::size_t a = 0; a < x.edges[v].size(); ++a) {
      if (x.edges[v][a] >= 0) out << "edge " << v << ' ' << x.alphabet.symbols()[a] << ' ' << x.edges[v][a] << '\n';
    }
  }
  return out.str();
}

namespace {

std::int64_t parse_count(const SourceLine& line, const std::string& token) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(token, &used);
    if (used != token.size() || v < 0) throw ParseError(line.number, "bad number '" + token + "'");
    return v;
  } catch (const std::logic_error&) {
    throw ParseError(line.number, "bad number '" + token + "'");
  }
}

}  // namespace

CosetGraphApprox read_coset_graph(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw ParseError(0, "empty coset graph");
  CosetGraphApprox g;
  std::size_t n = 0;
  bool have_alphabet = false;
  bool have_base = false;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const auto& line = lines[li];
    std::istringstream in(line.text);
    std::vector<std::string> tok;
    for (std::string t; in >> t;) tok.push_back(t);
    if (li == 0) {
      if (tok.size() != 3 || tok[0] != "coset-graph") throw ParseError(line.number, "expected 'coset-graph <stage> <n>'");
      g.stage = static_cast<std::size_t>(parse_count(line, tok[1]));
      n = static_cast<std::size_t>(parse_count(line, tok[2]));
      continue;
    }
    if (tok[0] == "alphabet") {
      if (have_alphabet) throw ParseError(line.number, "duplicate alphabet");
      g.alphabet = Alphabet::from_symbols({tok.begin() + 1, tok.end()});
      g.edges.assign(n, std::vector<std::int32_t>(g.alphabet.size(), -1));
      have_alphabet = true;
    } else if (tok[0] == "base" && tok.size() == 2) {
      g.basepoint = static_cast<std::int32_t>(parse_count(line, tok[1]));
      have_base = true;
    } else if (tok[0] == "complete" && tok.size() == 1) {
      g.complete = true;
    } else if (tok[0] == "edge" && tok.size() == 4) {
      if (!have_alphabet) throw ParseError(line.number, "edge before alphabet");
      const auto from = static_cast<std::size_t>(parse_count(line, tok[1]));
      const auto to = parse_count(line, tok[3]);
      if (from >= n || static_cast<std::size_t>(to) >= n) throw ParseError(line.number, "vertex out of range");
      const auto a = g.alphabet.find(tok[2]);
      if (!a) throw ParseError(line.number, "unknown symbol '" + tok[2] + "'");
      auto& slot = g.edges[from][static_cast<std::size_t>(*a)];
      if (slot >= 0 && slot != to) throw ParseError(line.number, "conflicting edge");
      slot = static_cast<std::int32_t>(to);
    } else {
      throw ParseError(line.number, "unrecognized line '" + line.text + "'");
    }
  }
  if (!have_alphabet || !have_base) throw ParseError(0, "coset graph needs alphabet and base lines");
  check_coset_graph(g);
  if (g.complete && g.num_edges() != n * g.alphabet.size()) throw ParseError(0, "graph marked complete has undefined edges");
  return g;
}

}  // namespace qcd
