#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qcd/fsa.hpp"

namespace qcd {

struct SourceLine {
  std::size_t number;
  std::string text;
};

// Non-blank lines with comments ('#') stripped.
std::vector<SourceLine> split_lines(std::string_view text);

// Text format:
//
//   fsa <nstates> <alphabet-size>
//   alphabet <sym> ...
//   det                       (optional; writer emits it for DFAs)
//   initial <id> ...
//   accepting <id> ...
//   trans <from> <sym> <to>   (one per transition)
//
// write_fsa emits transitions sorted by (from, symbol index, to), so
// write_fsa(read_fsa(write_fsa(m))) == write_fsa(m).
std::string write_fsa(const Fsa& m);
Fsa read_fsa(std::string_view text);
Fsa read_fsa(std::span<const SourceLine> lines);

}  // namespace qcd
