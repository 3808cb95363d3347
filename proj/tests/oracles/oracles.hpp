#pragma once

// Brute-force reference implementations used only by the tests. They share
// no algorithmic code with the library: words are plain int vectors and
// every answer is computed from first principles.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

namespace oracle {

using Word = std::vector<int>;
// inv[x] is the inverse letter of x.
using Inverse = std::vector<int>;

Inverse paired_inverse(int letters);  // 2i <-> 2i+1

Word free_reduce(const Inverse& inv, const Word& w);
Word invert(const Inverse& inv, const Word& w);
// All words (or freely reduced words) of length <= n in ShortLex order.
std::vector<Word> all_words(int letters, std::size_t n);
std::vector<Word> reduced_words(const Inverse& inv, std::size_t n);

// Folded subgroup graph of a finitely generated subgroup of a free group.
class Stallings {
 public:
  Stallings(const Inverse& inv, const std::vector<Word>& generators);
  bool contains(const Word& w) const;  // w freely reduced or not
  std::size_t vertices() const { return edges_.size(); }
  // Ball of radius k of the full Schreier graph (core plus hanging trees),
  // vertices numbered breadth-first in letter order, -1 for no edge.
  std::vector<std::vector<int>> schreier_ball(std::size_t k) const;

 private:
  Inverse inv_;
  std::vector<std::vector<int>> edges_;
};

// Z^2 with letters x, x^, y, y^ = 0..3.
std::pair<long, long> z2_exponents(const Word& w);
Word z2_normal_form(long a, long b);

// Finite permutation model: letter x acts by perm[x]; words act left to right.
class PermModel {
 public:
  explicit PermModel(std::vector<std::vector<int>> perms);
  using Elem = std::vector<int>;
  Elem identity() const;
  Elem eval(const Word& w) const;
  std::vector<Elem> elements() const;
  std::set<Elem> generated(const std::vector<Word>& gens) const;
  // ShortLex-least word of every element.
  std::map<Elem, Word> normal_forms() const;

 private:
  std::vector<std::vector<int>> perms_;
};
PermModel z3_model();  // letters a, a^
PermModel s3_model();  // letters a, b, both involutions

// Words of length <= bound reachable from the empty word by right
// multiplication with subgroup generators or their inverses and by
// inserting a cyclic conjugate of a relator or its inverse anywhere,
// followed by free reduction. Everything found represents an element of H.
class NormalClosure {
 public:
  NormalClosure(const Inverse& inv, const std::vector<Word>& relators, const std::vector<Word>& generators,
                std::size_t bound);
  bool contains(const Word& w) const;
  std::size_t size() const { return seen_.size(); }

 private:
  Inverse inv_;
  std::unordered_set<std::string> seen_;
};

// Exhaustive vertex-pair scan of lambda over the paths of the given
// V-words in a free group, with distances from free reduction.
struct Fraction {
  std::int64_t num, den;
};
Fraction free_min_lambda(const Inverse& inv, const std::vector<Word>& v_words, const std::vector<Word>& images);
// d_V-geodesic words of length <= n over V (letter j = images[j]) in a free
// group, from a hash-set BFS of the subgroup.
std::vector<Word> free_geodesic_v_words(const Inverse& inv, const std::vector<Word>& images, std::size_t n);
// d_V ball: free-reduced element -> distance.
std::map<Word, std::size_t> free_h_ball(const Inverse& inv, const std::vector<Word>& images, std::size_t radius);

// Plain NFA simulation over int labels.
struct Nfa {
  int states = 0;
  std::vector<int> initial;
  std::vector<bool> accepting;
  std::vector<std::vector<std::pair<int, int>>> out;  // (label, to)
  bool accepts(const Word& w) const;
};

}  // namespace oracle
