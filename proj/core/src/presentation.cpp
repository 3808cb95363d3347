#include "qcd/presentation.hpp"

#include <algorithm>
#include <sstream>

#include "qcd/error.hpp"

namespace qcd {

namespace {

struct Statement {
  std::size_t line;
  std::vector<std::string> tokens;
};

std::vector<Statement> split_statements(std::string_view text) {
  std::vector<Statement> out;
  std::size_t line = 1;
  Statement cur{1, {}};
  std::string tok;
  auto flush_token = [&] {
    if (!tok.empty()) cur.tokens.push_back(std::move(tok));
    tok.clear();
  };
  auto flush_statement = [&] {
    flush_token();
    if (!cur.tokens.empty()) out.push_back(std::move(cur));
    cur = Statement{line, {}};
  };
  bool comment = false;
  for (char c : text) {
    if (c == '\n') {
      comment = false;
      flush_statement();
      ++line;
      cur.line = line;
      continue;
    }
    if (comment) continue;
    if (c == '#') {
      comment = true;
    } else if (c == ';') {
      flush_statement();
    } else if (c == ' ' || c == '\t' || c == '\r') {
      flush_token();
    } else {
      if (cur.tokens.empty() && tok.empty()) cur.line = line;
      tok += c;
    }
  }
  flush_statement();
  return out;
}

}  // namespace

Word cyclic_reduce(const Alphabet& alphabet, const Word& w) {
  Word r = free_reduce(alphabet, w);
  std::size_t lo = 0;
  std::size_t hi = r.size();
  while (hi - lo >= 2 && r[lo] == alphabet.inverse(r[hi - 1])) {
    ++lo;
    --hi;
  }
  return Word(r.begin() + static_cast<std::ptrdiff_t>(lo), r.begin() + static_cast<std::ptrdiff_t>(hi));
}

Presentation parse_presentation(std::string_view text) {
  const auto statements = split_statements(text);
  std::vector<std::string> gens;
  std::vector<bool> selfinv;
  for (const auto& st : statements) {
    const std::string& kw = st.tokens.front();
    if (kw == "gens") {
      for (std::size_t i = 1; i < st.tokens.size(); ++i) {
        const std::string& g = st.tokens[i];
        if (!valid_generator_name(g)) throw ParseError(st.line, "invalid generator name '" + g + "'");
        if (std::find(gens.begin(), gens.end(), g) != gens.end()) {
          throw ParseError(st.line, "duplicate generator '" + g + "'");
        }
        gens.push_back(g);
        selfinv.push_back(false);
      }
    } else if (kw == "selfinv") {
      for (std::size_t i = 1; i < st.tokens.size(); ++i) {
        auto it = std::find(gens.begin(), gens.end(), st.tokens[i]);
        if (it == gens.end()) throw ParseError(st.line, "unknown generator '" + st.tokens[i] + "'");
        selfinv[static_cast<std::size_t>(it - gens.begin())] = true;
      }
    } else if (kw != "rel") {
      throw ParseError(st.line, "unknown statement '" + kw + "'");
    }
  }
  if (gens.empty()) throw ParseError(0, "no generators declared");

  Presentation p;
  p.alphabet = Alphabet::from_generators(gens, selfinv);
  for (const auto& st : statements) {
    if (st.tokens.front() != "rel") continue;
    Word r;
    for (std::size_t i = 1; i < st.tokens.size(); ++i) {
      auto x = p.alphabet.find(st.tokens[i]);
      if (!x) throw ParseError(st.line, "unknown generator '" + st.tokens[i] + "'");
      r.push_back(*x);
    }
    r = cyclic_reduce(p.alphabet, r);
    if (r.empty()) throw ParseError(st.line, "empty relator");
    p.relators.push_back(std::move(r));
  }
  return p;
}

std::string format_presentation(const Presentation& p) {
  std::ostringstream out;
  std::vector<std::string> selfinv;
  out << "gens";
  for (std::size_t x = 0; x < p.alphabet.size(); ++x) {
    const auto& name = p.alphabet.name(static_cast<Letter>(x));
    if (name.back() == '^') continue;
    out << ' ' << name;
    if (p.alphabet.inverse(static_cast<Letter>(x)) == static_cast<Letter>(x)) selfinv.push_back(name);
  }
  out << '\n';
  if (!selfinv.empty()) {
    out << "selfinv";
    for (const auto& s : selfinv) out << ' ' << s;
    out << '\n';
  }
  for (const auto& r : p.relators) out << "rel " << format_word(p.alphabet, r) << '\n';
  return out.str();
}

Word substitute(const Word& w, const std::map<Letter, Word>& images) {
  Word out;
  for (Letter v : w) {
    auto it = images.find(v);
    if (it == images.end()) throw Error("no image for letter " + std::to_string(v));
    out.insert(out.end(), it->second.begin(), it->second.end());
  }
  return out;
}

}  // namespace qcd
