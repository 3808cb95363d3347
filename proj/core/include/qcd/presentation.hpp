#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qcd/alphabet.hpp"

namespace qcd {

// Finite presentation. Relators are stored freely and cyclically reduced.
struct Presentation {
  Alphabet alphabet;
  std::vector<Word> relators;
};

// Parses the presentation text format:
//
//   gens a b          # inverse of x is written x^
//   selfinv b         # b = b^ (b must be listed in gens)
//   rel a b a^ b^     # one relator per statement
//
// Statements end at a newline or ';'; '#' starts a comment.
Presentation parse_presentation(std::string_view text);

std::string format_presentation(const Presentation& p);

Word cyclic_reduce(const Alphabet& alphabet, const Word& w);

// Replaces every letter of `w` by its image, without reduction: the result
// is the path traced in the Cayley graph, not just its endpoint.
Word substitute(const Word& w, const std::map<Letter, Word>& images);

}  // namespace qcd
