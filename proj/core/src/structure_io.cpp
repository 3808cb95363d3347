#include "qcd/structure_io.hpp"

#include <sstream>

#include "qcd/fsa_io.hpp"

namespace qcd {

std::string write_structure(const AutomaticStructure& s) {
  std::string out = "alphabet";
  for (const auto& sym : s.alphabet.symbols()) out += " " + sym;
  out += "\nacceptor\n" + write_fsa(s.acceptor);
  out += "equality\n" + write_pair_fsa(s.equality);
  for (std::size_t x = 0; x < s.multipliers.size(); ++x) {
    out += "mult " + s.alphabet.symbols()[x] + "\n" + write_pair_fsa(s.multipliers[x]);
  }
  return out;
}

AutomaticStructure read_structure(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw ParseError(0, "empty structure file");

  std::istringstream head(lines.front().text);
  std::string kw;
  head >> kw;
  if (kw != "alphabet") throw ParseError(lines.front().number, "structure must start with an alphabet line");
  std::vector<std::string> symbols;
  for (std::string t; head >> t;) symbols.push_back(t);
  if (symbols.empty()) throw ParseError(lines.front().number, "empty alphabet");

  struct Section {
    std::string name;
    std::size_t line;
    std::size_t begin, end;
  };
  std::vector<Section> sections;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string& t = lines[i].text;
    std::istringstream in(t);
    std::string first, arg, extra;
    in >> first;
    if (first == "acceptor" || first == "equality" || first == "mult") {
      if (first == "mult") {
        if (!(in >> arg) || (in >> extra)) throw ParseError(lines[i].number, "expected 'mult <symbol>'");
        first += " " + arg;
      } else if (in >> extra) {
        throw ParseError(lines[i].number, "unexpected text after section name");
      }
      if (!sections.empty()) sections.back().end = i;
      sections.push_back({first, lines[i].number, i + 1, lines.size()});
    } else if (sections.empty()) {
      throw ParseError(lines[i].number, "expected a section header");
    }
  }

  AutomaticStructure s;
  s.alphabet = Alphabet::from_symbols(symbols);
  std::vector<std::string> expected{"acceptor", "equality"};
  for (const auto& sym : symbols) expected.push_back("mult " + sym);
  if (sections.size() != expected.size()) {
    throw ParseError(0, "structure needs sections acceptor, equality and one mult per symbol, in order");
  }
  const std::span<const SourceLine> all(lines);
  for (std::size_t i = 0; i < sections.size(); ++i) {
    const Section& sec = sections[i];
    if (sec.name != expected[i]) {
      throw ParseError(sec.line, "expected section '" + expected[i] + "', found '" + sec.name + "'");
    }
    const auto body = all.subspan(sec.begin, sec.end - sec.begin);
    if (i == 0) {
      s.acceptor = read_fsa(body);
      if (s.acceptor.symbols() != s.alphabet.symbols()) throw ParseError(sec.line, "acceptor alphabet differs");
    } else if (i == 1) {
      s.equality = read_pair_fsa(s.alphabet, body);
    } else {
      s.multipliers.push_back(read_pair_fsa(s.alphabet, body));
    }
  }
  return s;
}

}  // namespace qcd
