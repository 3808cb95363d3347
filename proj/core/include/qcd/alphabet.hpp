#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qcd {

using Letter = std::int32_t;

// A word is a plain letter sequence. Nothing reduces it implicitly.
using Word = std::vector<Letter>;

// Ordered generator alphabet closed under a formal inversion.
//
// Symbols are kept in a fixed total order which doubles as the ShortLex
// order. A generator `x` contributes `x` then `x^`; a self-inverse
// generator contributes one symbol fixed by the inversion.
class Alphabet {
 public:
  Alphabet() = default;

  // `selfinv[i]` marks generator i as an involution.
  static Alphabet from_generators(const std::vector<std::string>& generators,
                                  const std::vector<bool>& selfinv = {});

  // Rebuilds an alphabet from a symbol list, pairing `x` with `x^`;
  // unpaired symbols are self-inverse.
  static Alphabet from_symbols(const std::vector<std::string>& symbols);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& symbols() const noexcept { return names_; }
  const std::string& name(Letter x) const { return names_.at(static_cast<std::size_t>(x)); }
  Letter inverse(Letter x) const { return inverse_.at(static_cast<std::size_t>(x)); }
  bool contains(Letter x) const noexcept { return x >= 0 && static_cast<std::size_t>(x) < names_.size(); }

  std::optional<Letter> find(std::string_view symbol) const;
  // Throws ParseError for unknown symbols.
  Letter letter(std::string_view symbol) const;

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<std::string> names_;
  std::vector<Letter> inverse_;
};

// True for names usable as generators: [A-Za-z][A-Za-z0-9]*.
bool valid_generator_name(std::string_view name);

Word free_reduce(const Alphabet& alphabet, const Word& w);
Word formal_inverse(const Alphabet& alphabet, const Word& w);
Word concat(const Word& u, const Word& v);

// Whitespace separated symbols; "1" or blank text is the empty word.
Word parse_word(const Alphabet& alphabet, std::string_view text);
// Space separated symbols; the empty word prints as "1".
std::string format_word(const Alphabet& alphabet, const Word& w);

// Length first, then lexicographic by letter index.
bool shortlex_less(const Word& u, const Word& v);

}  // namespace qcd
