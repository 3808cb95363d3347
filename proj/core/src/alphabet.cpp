#include "qcd/alphabet.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "qcd/error.hpp"

namespace qcd {

Alphabet Alphabet::from_generators(const std::vector<std::string>& generators,
                                   const std::vector<bool>& selfinv) {
  Alphabet a;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const std::string& g = generators[i];
    if (!valid_generator_name(g)) {
      throw ParseError(0, "invalid generator name '" + g + "'");
    }
    if (std::find(a.names_.begin(), a.names_.end(), g) != a.names_.end()) {
      throw ParseError(0, "duplicate generator '" + g + "'");
    }
    const auto x = static_cast<Letter>(a.names_.size());
    if (i < selfinv.size() && selfinv[i]) {
      a.names_.push_back(g);
      a.inverse_.push_back(x);
    } else {
      a.names_.push_back(g);
      a.names_.push_back(g + "^");
      a.inverse_.push_back(x + 1);
      a.inverse_.push_back(x);
    }
  }
  return a;
}

Alphabet Alphabet::from_symbols(const std::vector<std::string>& symbols) {
  Alphabet a;
  a.names_ = symbols;
  a.inverse_.assign(symbols.size(), -1);
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    const std::string& s = symbols[i];
    const bool inv = !s.empty() && s.back() == '^';
    const std::string base = inv ? s.substr(0, s.size() - 1) : s;
    if (!valid_generator_name(base)) {
      throw ParseError(0, "invalid symbol '" + s + "'");
    }
    const std::string partner = inv ? base : base + "^";
    auto it = std::find(symbols.begin(), symbols.end(), partner);
    if (std::count(symbols.begin(), symbols.end(), s) != 1) {
      throw ParseError(0, "duplicate symbol '" + s + "'");
    }
    if (it == symbols.end()) {
      if (inv) throw ParseError(0, "symbol '" + s + "' has no base generator");
      a.inverse_[i] = static_cast<Letter>(i);
    } else {
      a.inverse_[i] = static_cast<Letter>(it - symbols.begin());
    }
  }
  return a;
}

std::optional<Letter> Alphabet::find(std::string_view symbol) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == symbol) return static_cast<Letter>(i);
  }
  return std::nullopt;
}

Letter Alphabet::letter(std::string_view symbol) const {
  if (auto x = find(symbol)) return *x;
  throw ParseError(0, "unknown generator '" + std::string(symbol) + "'");
}

bool valid_generator_name(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  return std::all_of(name.begin(), name.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; });
}

Word free_reduce(const Alphabet& alphabet, const Word& w) {
  Word out;
  out.reserve(w.size());
  for (Letter x : w) {
    if (!out.empty() && out.back() == alphabet.inverse(x)) {
      out.pop_back();
    } else {
      out.push_back(x);
    }
  }
  return out;
}

Word formal_inverse(const Alphabet& alphabet, const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (Letter& x : out) x = alphabet.inverse(x);
  return out;
}

Word concat(const Word& u, const Word& v) {
  Word out = u;
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

Word parse_word(const Alphabet& alphabet, std::string_view text) {
  std::istringstream in{std::string(text)};
  Word w;
  std::string tok;
  std::vector<std::string> tokens;
  while (in >> tok) tokens.push_back(tok);
  if (tokens.size() == 1 && tokens[0] == "1") return w;
  for (const auto& t : tokens) w.push_back(alphabet.letter(t));
  return w;
}

std::string format_word(const Alphabet& alphabet, const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += alphabet.name(w[i]);
  }
  return out;
}

bool shortlex_less(const Word& u, const Word& v) {
  if (u.size() != v.size()) return u.size() < v.size();
  return u < v;
}

}  // namespace qcd
