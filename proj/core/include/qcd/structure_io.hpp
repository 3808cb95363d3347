#pragma once

#include <string>
#include <string_view>

#include "qcd/automatic_structure.hpp"

namespace qcd {

// Structure file:
//
//   alphabet <sym> ...
//   acceptor
//   <fsa over the alphabet>
//   equality
//   <fsa over the padded pair alphabet>
//   mult <sym>
//   <fsa over the padded pair alphabet>
//   ...                       (one mult section per symbol, alphabet order)
std::string write_structure(const AutomaticStructure& s);
AutomaticStructure read_structure(std::string_view text);

}  // namespace qcd
