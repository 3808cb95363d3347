#include "qcd/fsa_io.hpp"

#include <charconv>
#include <map>
#include <sstream>

#include "qcd/error.hpp"

namespace qcd {

namespace {

std::vector<std::string> tokenize(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

std::size_t parse_count(const std::string& tok, std::size_t line) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size()) throw ParseError(line, "expected a number, got '" + tok + "'");
  return v;
}

State parse_state(const std::string& tok, std::size_t line, std::size_t nstates) {
  const std::size_t v = parse_count(tok, line);
  if (v >= nstates) throw ParseError(line, "state " + tok + " out of range");
  return static_cast<State>(v);
}

}  // namespace

std::vector<SourceLine> split_lines(std::string_view text) {
  std::vector<SourceLine> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    ++number;
    std::string line(text.substr(pos, end - pos));
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) out.push_back({number, std::move(line)});
    pos = end + 1;
  }
  return out;
}

std::string write_fsa(const Fsa& m) {
  std::ostringstream out;
  out << "fsa " << m.num_states() << ' ' << m.alphabet_size() << '\n';
  out << "alphabet";
  for (const auto& s : m.symbols()) out << ' ' << s;
  out << '\n';
  if (m.deterministic()) out << "det\n";
  out << "initial";
  for (State s : m.initial()) out << ' ' << s;
  out << '\n';
  out << "accepting";
  for (std::size_t s = 0; s < m.num_states(); ++s) {
    if (m.accepting(static_cast<State>(s))) out << ' ' << s;
  }
  out << '\n';
  for (std::size_t s = 0; s < m.num_states(); ++s) {
    for (const auto& t : m.out(static_cast<State>(s))) {
      out << "trans " << s << ' ' << m.symbols()[static_cast<std::size_t>(t.label)] << ' ' << t.to << '\n';
    }
  }
  return out.str();
}

Fsa read_fsa(std::string_view text) {
  const auto lines = split_lines(text);
  return read_fsa(std::span<const SourceLine>(lines));
}

Fsa read_fsa(std::span<const SourceLine> lines) {
  if (lines.empty()) throw ParseError(0, "empty automaton");
  auto head = tokenize(lines[0].text);
  if (head.size() != 3 || head[0] != "fsa") throw ParseError(lines[0].number, "expected 'fsa <nstates> <alphabet-size>'");
  const std::size_t nstates = parse_count(head[1], lines[0].number);
  const std::size_t nsyms = parse_count(head[2], lines[0].number);
  check_state_cap(nstates, "automaton file");

  if (lines.size() < 2) throw ParseError(lines[0].number, "missing alphabet line");
  auto alpha = tokenize(lines[1].text);
  if (alpha.empty() || alpha[0] != "alphabet") throw ParseError(lines[1].number, "expected 'alphabet'");
  std::vector<std::string> symbols(alpha.begin() + 1, alpha.end());
  if (symbols.size() != nsyms) throw ParseError(lines[1].number, "alphabet size does not match header");
  std::map<std::string, Letter> index;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (!index.emplace(symbols[i], static_cast<Letter>(i)).second) {
      throw ParseError(lines[1].number, "duplicate symbol '" + symbols[i] + "'");
    }
  }

  Fsa m(symbols, nstates);
  bool det_flag = false;
  std::size_t det_line = 0;
  for (std::size_t i = 2; i < lines.size(); ++i) {
    const auto tok = tokenize(lines[i].text);
    const std::size_t ln = lines[i].number;
    if (tok[0] == "det") {
      if (tok.size() != 1) throw ParseError(ln, "'det' takes no arguments");
      det_flag = true;
      det_line = ln;
    } else if (tok[0] == "initial") {
      for (std::size_t j = 1; j < tok.size(); ++j) m.add_initial(parse_state(tok[j], ln, nstates));
    } else if (tok[0] == "accepting") {
      for (std::size_t j = 1; j < tok.size(); ++j) m.set_accepting(parse_state(tok[j], ln, nstates));
    } else if (tok[0] == "trans") {
      if (tok.size() != 4) throw ParseError(ln, "expected 'trans <from> <sym> <to>'");
      auto it = index.find(tok[2]);
      if (it == index.end()) throw ParseError(ln, "unknown symbol '" + tok[2] + "'");
      m.add_transition(parse_state(tok[1], ln, nstates), it->second, parse_state(tok[3], ln, nstates));
    } else {
      throw ParseError(ln, "unexpected '" + tok[0] + "'");
    }
  }
  if (det_flag && !m.deterministic()) throw ParseError(det_line, "automaton marked 'det' is not deterministic");
  return m;
}

}  // namespace qcd
