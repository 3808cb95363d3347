#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcd/alphabet.hpp"
#include "qcd/error.hpp"
#include "qcd/fsa.hpp"
#include "qcd/presentation.hpp"

namespace qcd {

struct SubgroupSpec {
  std::vector<Word> words;        // generators, empty words dropped
  std::vector<Word> symmetrized;  // v1..vt then v1^-1..vt^-1
  std::size_t K = 0;              // longest generator; 0 for the trivial subgroup

  static SubgroupSpec make(const Alphabet& alphabet, const std::vector<Word>& generators);
};

// Partial Schreier graph. Vertex 0 is the basepoint. edges[v][x] is the
// target of v under letter x, or -1 when undefined.
struct CosetGraphApprox {
  Alphabet alphabet;
  std::vector<std::vector<std::int32_t>> edges;
  std::int32_t basepoint = 0;
  std::size_t stage = 0;
  bool complete = false;

  std::size_t num_vertices() const noexcept { return edges.size(); }
  std::size_t num_edges() const;
  bool operator==(const CosetGraphApprox&) const = default;
};

struct CosetCaps {
  std::size_t max_cosets = 100'000;
};

class CosetCapExceeded : public ResourceError {
 public:
  CosetCapExceeded(std::size_t cap, std::optional<CosetGraphApprox> last)
      : ResourceError("coset cap of " + std::to_string(cap) + " exceeded"), last_snapshot(std::move(last)) {}
  std::optional<CosetGraphApprox> last_snapshot;
};

// Felsch-style Todd-Coxeter enumeration of the cosets of H in G.
//
// Subgroup generators are traced (defining cosets as needed) at the
// basepoint before the first wave. Each wave then defines a new coset for
// every undefined entry of the cosets that exist when the wave starts,
// in coset order then letter order. After every definition all pending
// deductions and coincidences are processed. next() returns the graph
// after each wave; once a complete graph has been returned it returns
// nullopt.
class CosetEnumerator {
 public:
  CosetEnumerator(const Presentation& p, const SubgroupSpec& h, CosetCaps caps = {});

  std::optional<CosetGraphApprox> next();
  std::size_t stage() const noexcept { return stage_; }
  std::size_t live_cosets() const noexcept { return live_; }

 private:
  std::int32_t rep(std::int32_t c);
  bool alive(std::int32_t c) const { return parent_[static_cast<std::size_t>(c)] == c; }
  std::int32_t& entry(std::int32_t c, Letter x) {
    return table_[static_cast<std::size_t>(c) * k_ + static_cast<std::size_t>(x)];
  }
  std::int32_t define(std::int32_t c, Letter x);
  void assign(std::int32_t c, Letter x, std::int32_t d);
  void merge(std::int32_t a, std::int32_t b, std::vector<std::int32_t>& queue);
  void coincidence(std::int32_t a, std::int32_t b);
  bool scan(std::int32_t c, const Word& w);
  void scan_and_fill(std::int32_t c, const Word& w);
  void process_deductions();
  bool table_total();
  bool verify_all();
  CosetGraphApprox snapshot(bool complete) const;

  Alphabet alphabet_;
  std::size_t k_;
  std::vector<std::vector<Word>> relators_by_first_;  // cyclic conjugates of r and r^-1
  std::vector<Word> subgroup_;
  CosetCaps caps_;

  std::vector<std::int32_t> table_;
  std::vector<std::int32_t> parent_;
  std::vector<std::pair<std::int32_t, Letter>> deductions_;
  std::size_t live_ = 0;
  std::size_t stage_ = 0;
  bool finished_ = false;
  std::optional<CosetGraphApprox> last_;
};

// Acceptor whose states are the vertices, with the basepoint as the only
// initial and accepting state.
Fsa graph_to_fsa(const CosetGraphApprox& x);

// Subgraph induced by the vertices within distance k of the basepoint,
// renumbered breadth-first in letter order. Isomorphic balls compare equal.
CosetGraphApprox ball(const CosetGraphApprox& x, std::size_t k);

// Text format: `coset-graph <stage> <n>`, `alphabet <sym>...`, `base <id>`,
// optional `complete`, then `edge <from> <sym> <to>` for every defined entry.
std::string write_coset_graph(const CosetGraphApprox& x);
CosetGraphApprox read_coset_graph(std::string_view text);

// Checks determinism and the edge involution; throws Error on violation.
void check_coset_graph(const CosetGraphApprox& x);

}  // namespace qcd
