#pragma once

#include <string>
#include <string_view>

#include "qcd/automatic_structure.hpp"
#include "qcd/coset_enum.hpp"
#include "qcd/presentation.hpp"

namespace qcd {

// ShortLex structure of the free group on n generators (a, b, c, ...; g1,
// g2, ... beyond 26). L is the set of freely reduced words.
AutomaticStructure shortlex_free(std::size_t n);

// ShortLex structure of Z^2 = <x, y | [x, y]> for the order
// x < x^ < y < y^: L = x-block then y-block, each block using one sign.
AutomaticStructure shortlex_free_abelian();

// Finite structure read off a complete Cayley graph (coset graph of the
// trivial subgroup): L holds the ShortLex-least word of each element.
AutomaticStructure from_cayley(const Presentation& p, const CosetGraphApprox& complete_graph);

// Completes the enumeration of the trivial subgroup; throws if the cap is hit.
CosetGraphApprox cayley_graph(const Presentation& p, CosetCaps caps = {});

Presentation free_presentation(std::size_t n);
Presentation free_abelian_presentation();
Presentation cyclic_presentation(std::size_t n);  // <a | a^n>
Presentation s3_presentation();                   // <a, b | a^2, b^2, (ab)^3>, a and b self-inverse

struct Fixture {
  std::string name;
  Presentation presentation;
  AutomaticStructure structure;  // identity represented by the empty word
};

// Selectors: free:<n>, zz, cyclic:<n>, s3.
Fixture make_fixture(std::string_view selector);

}  // namespace qcd
