#include "qcd/fixtures.hpp"

#include <charconv>
#include <map>

namespace qcd {

namespace {

std::vector<std::string> free_generator_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(n <= 26 ? std::string(1, static_cast<char>('a' + i)) : "g" + std::to_string(i + 1));
  }
  return names;
}

Fsa free_acceptor(const Alphabet& a) {
  // State 0: nothing read; state 1 + l: last letter l.
  const std::size_t k = a.size();
  Fsa m(a.symbols(), k + 1);
  m.add_initial(0);
  for (std::size_t s = 0; s <= k; ++s) {
    m.set_accepting(static_cast<State>(s));
    for (std::size_t x = 0; x < k; ++x) {
      if (s > 0 && a.inverse(static_cast<Letter>(s - 1)) == static_cast<Letter>(x)) continue;
      m.add_transition(static_cast<State>(s), static_cast<Letter>(x), static_cast<State>(x + 1));
    }
  }
  return m;
}

// M_x for the free group: copy w while tracking its last letter, then
// either append x (w does not end in x^-1) or drop a final x^-1.
PairFsa free_multiplier(const Alphabet& a, const Fsa& acceptor, Letter x) {
  const PairAlphabet pa(a);
  const Letter p = pa.pad();
  const std::size_t k = a.size();
  const auto done = static_cast<State>(k + 1);
  Fsa m(pa.symbols(), k + 2);
  m.add_initial(0);
  m.set_accepting(done);
  const Letter xinv = a.inverse(x);
  for (std::size_t s = 0; s <= k; ++s) {
    const auto st = static_cast<State>(s);
    for (const auto& t : acceptor.out(st)) m.add_transition(st, pa.label(t.label, t.label), t.to);
    const bool ends_in_xinv = s > 0 && static_cast<Letter>(s - 1) == xinv;
    if (!ends_in_xinv) m.add_transition(st, pa.label(p, x), done);
    if (acceptor.next(st, xinv)) m.add_transition(st, pa.label(xinv, p), done);
  }
  return minimize(PairFsa(a, std::move(m)));
}

}  // namespace

AutomaticStructure shortlex_free(std::size_t n) {
  if (n == 0) throw Error("free group needs at least one generator");
  AutomaticStructure s;
  s.alphabet = Alphabet::from_generators(free_generator_names(n));
  const Fsa raw = free_acceptor(s.alphabet);
  s.acceptor = minimize(raw);
  s.equality = minimize(diagonal(s.alphabet, s.acceptor));
  for (std::size_t x = 0; x < s.alphabet.size(); ++x) {
    s.multipliers.push_back(free_multiplier(s.alphabet, raw, static_cast<Letter>(x)));
  }
  return s;
}

AutomaticStructure shortlex_free_abelian() {
  AutomaticStructure s;
  s.alphabet = Alphabet::from_generators({"x", "y"});
  const Letter x = 0, X = 1, y = 2, Y = 3;
  enum : State { S, XP, XN, YP, YN };
  Fsa acc(s.alphabet.symbols(), 5);
  acc.add_initial(S);
  for (State q = S; q <= YN; ++q) acc.set_accepting(q);
  acc.add_transition(S, x, XP);
  acc.add_transition(S, X, XN);
  acc.add_transition(XP, x, XP);
  acc.add_transition(XN, X, XN);
  for (State q : {S, XP, XN}) {
    acc.add_transition(q, y, YP);
    acc.add_transition(q, Y, YN);
  }
  acc.add_transition(YP, y, YP);
  acc.add_transition(YN, Y, YN);
  s.acceptor = minimize(acc);
  s.equality = minimize(diagonal(s.alphabet, s.acceptor));

  const PairAlphabet pa(s.alphabet);
  const Letter p = pa.pad();

  // M_x on x^a y^b. a >= 0: (x,x)^a then (_,x), or (t,x)(t,t)*(_,t) for
  // the y-letter t. a < 0: (X,X)^(|a|-1) then (X,_), or (X,t)(t,t)*(t,_).
  PairFsa mx;
  {
    enum : State { Start, Pos, Neg, Qy, QY, Ry, RY, Acc };
    Fsa m(pa.symbols(), 8);
    m.add_initial(Start);
    m.set_accepting(Acc);
    for (State q : {Start, Pos}) {
      m.add_transition(q, pa.label(x, x), Pos);
      m.add_transition(q, pa.label(p, x), Acc);
      m.add_transition(q, pa.label(y, x), Qy);
      m.add_transition(q, pa.label(Y, x), QY);
    }
    for (State q : {Start, Neg}) {
      m.add_transition(q, pa.label(X, X), Neg);
      m.add_transition(q, pa.label(X, p), Acc);
      m.add_transition(q, pa.label(X, y), Ry);
      m.add_transition(q, pa.label(X, Y), RY);
    }
    m.add_transition(Qy, pa.label(y, y), Qy);
    m.add_transition(Qy, pa.label(p, y), Acc);
    m.add_transition(QY, pa.label(Y, Y), QY);
    m.add_transition(QY, pa.label(p, Y), Acc);
    m.add_transition(Ry, pa.label(y, y), Ry);
    m.add_transition(Ry, pa.label(y, p), Acc);
    m.add_transition(RY, pa.label(Y, Y), RY);
    m.add_transition(RY, pa.label(Y, p), Acc);
    mx = minimize(PairFsa(s.alphabet, std::move(m)));
  }

  // M_y: copy the x-block, then (y,y)^b (_,y) for b >= 0 or
  // (Y,Y)^(|b|-1) (Y,_) for b < 0.
  PairFsa my;
  {
    enum : State { D0, DP, DN, Bp, Bn, Acc };
    Fsa m(pa.symbols(), 6);
    m.add_initial(D0);
    m.set_accepting(Acc);
    m.add_transition(D0, pa.label(x, x), DP);
    m.add_transition(DP, pa.label(x, x), DP);
    m.add_transition(D0, pa.label(X, X), DN);
    m.add_transition(DN, pa.label(X, X), DN);
    for (State q : {D0, DP, DN, Bp}) {
      m.add_transition(q, pa.label(y, y), Bp);
      m.add_transition(q, pa.label(p, y), Acc);
    }
    for (State q : {D0, DP, DN}) {
      m.add_transition(q, pa.label(Y, Y), Bn);
      m.add_transition(q, pa.label(Y, p), Acc);
    }
    m.add_transition(Bn, pa.label(Y, Y), Bn);
    m.add_transition(Bn, pa.label(Y, p), Acc);
    my = minimize(PairFsa(s.alphabet, std::move(m)));
  }

  s.multipliers = {mx, minimize(transpose(mx)), my, minimize(transpose(my))};
  return s;
}

CosetGraphApprox cayley_graph(const Presentation& p, CosetCaps caps) {
  CosetEnumerator e(p, SubgroupSpec::make(p.alphabet, {}), caps);
  while (auto g = e.next()) {
    if (g->complete) return *g;
  }
  throw Error("coset enumeration ended without completing");
}

AutomaticStructure from_cayley(const Presentation& p, const CosetGraphApprox& g) {
  if (!g.complete) throw Error("from_cayley needs a complete Cayley graph");
  if (!(g.alphabet == p.alphabet)) throw AlphabetMismatch();
  check_coset_graph(g);
  const std::size_t n = g.num_vertices();
  const std::size_t k = p.alphabet.size();
  // Breadth-first search in letter order reaches each vertex first along
  // its ShortLex-least word.
  std::vector<std::optional<Word>> nf(n);
  std::vector<std::int32_t> queue{g.basepoint};
  nf[static_cast<std::size_t>(g.basepoint)] = Word{};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const auto v = static_cast<std::size_t>(queue[qi]);
    for (std::size_t x = 0; x < k; ++x) {
      const auto t = static_cast<std::size_t>(g.edges[v][x]);
      if (nf[t]) continue;
      Word w = *nf[v];
      w.push_back(static_cast<Letter>(x));
      nf[t] = std::move(w);
      queue.push_back(static_cast<std::int32_t>(t));
    }
  }
  std::vector<Word> words;
  for (const auto& w : nf) {
    if (!w) throw Error("Cayley graph is not connected");
    words.push_back(*w);
  }
  AutomaticStructure s;
  s.alphabet = p.alphabet;
  s.acceptor = minimize(from_words(p.alphabet.symbols(), words));
  s.equality = minimize(diagonal(s.alphabet, s.acceptor));
  for (std::size_t x = 0; x < k; ++x) {
    std::vector<std::pair<Word, Word>> pairs;
    for (std::size_t v = 0; v < n; ++v) pairs.emplace_back(*nf[v], *nf[static_cast<std::size_t>(g.edges[v][x])]);
    s.multipliers.push_back(minimize(from_pairs(s.alphabet, pairs)));
  }
  return s;
}

Presentation free_presentation(std::size_t n) {
  if (n == 0) throw Error("free group needs at least one generator");
  return Presentation{Alphabet::from_generators(free_generator_names(n)), {}};
}

Presentation free_abelian_presentation() { return parse_presentation("gens x y\nrel x y x^ y^\n"); }

Presentation cyclic_presentation(std::size_t n) {
  if (n == 0) throw Error("cyclic group order must be positive");
  Presentation p{Alphabet::from_generators({"a"}), {}};
  p.relators.push_back(Word(n, 0));
  return p;
}

Presentation s3_presentation() { return parse_presentation("gens a b\nselfinv a b\nrel a b a b a b\n"); }

Fixture make_fixture(std::string_view selector) {
  auto count_after = [&](std::string_view prefix) -> std::optional<std::size_t> {
    if (selector.substr(0, prefix.size()) != prefix) return std::nullopt;
    const auto rest = selector.substr(prefix.size());
    std::size_t n = 0;
    const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), n);
    if (ec != std::errc() || ptr != rest.data() + rest.size() || n == 0) {
      throw Error("bad fixture selector '" + std::string(selector) + "'");
    }
    return n;
  };
  Fixture f;
  f.name = std::string(selector);
  if (auto n = count_after("free:")) {
    f.presentation = free_presentation(*n);
    f.structure = shortlex_free(*n);
  } else if (auto m = count_after("cyclic:")) {
    f.presentation = cyclic_presentation(*m);
    f.structure = from_cayley(f.presentation, cayley_graph(f.presentation));
  } else if (selector == "zz") {
    f.presentation = free_abelian_presentation();
    f.structure = shortlex_free_abelian();
  } else if (selector == "s3") {
    f.presentation = s3_presentation();
    f.structure = from_cayley(f.presentation, cayley_graph(f.presentation));
  } else {
    throw Error("unknown fixture '" + std::string(selector) + "' (expected free:n, zz, cyclic:n or s3)");
  }
  return f;
}

}  // namespace qcd
