#include "qcd/rational_detector.hpp"

#include <json.hpp>

namespace qcd {

StabilityResult stability_check(const Fsa& l_i, const PairFsa& m_u) {
  if (l_i.symbols() != m_u.base().symbols()) throw AlphabetMismatch();
  const Fsa n_i = project(restrict(restrict(m_u, Tape::first, l_i), Tape::second, l_i), Tape::first);
  StabilityResult r;
  r.witness = distinguishing_word(n_i, l_i);
  r.stable = !r.witness;
  return r;
}

DetectionOutcome detect_rational(const AutomaticStructure& s_in, const Presentation& p, const SubgroupSpec& h,
                                 const DetectionBudget& b, const StageObserver& observer) {
  if (!(p.alphabet == s_in.alphabet)) throw AlphabetMismatch();
  if (b.max_stage == 0 || b.max_states == 0 || b.max_cosets == 0) throw Error("detection budget must be positive");
  const auto started = std::chrono::steady_clock::now();
  ScopedStateCap cap(b.max_states);

  DetectionOutcome out;
  auto exhausted = [&](std::string reason) {
    out.kind = DetectionOutcome::Kind::exhausted;
    out.reason = std::move(reason);
    out.last_li_states = out.stats.empty() ? 0 : out.stats.back().li_states;
    return out;
  };

  try {
    const AutomaticStructure s = normalize_identity(s_in);
    std::vector<PairFsa> m_v;
    for (const auto& u : h.symmetrized) m_v.push_back(multiplier_for_word(s, u));

    CosetEnumerator enumerator(p, h, CosetCaps{b.max_cosets});
    while (out.stats.size() < b.max_stage) {
      if (b.wall_clock && std::chrono::steady_clock::now() - started > *b.wall_clock) return exhausted("timeout");
      auto x = enumerator.next();
      if (!x) break;
      const Fsa l_i = minimize(combine(s.acceptor, graph_to_fsa(*x), BoolOp::intersection));
      if (observer) observer(x->stage, *x, l_i);
      StageStats st{x->stage, x->num_vertices(), l_i.num_states(), 0, x->complete};
      bool stable = true;
      for (const auto& m : m_v) {
        auto r = stability_check(l_i, m);
        if (!r.stable) {
          stable = false;
          out.last_witness = std::move(r.witness);
          break;
        }
        ++st.stable_count;
      }
      out.stats.push_back(st);
      out.stage = st.stage;
      if (stable) {
        out.kind = DetectionOutcome::Kind::found;
        out.m_h = l_i;
        out.last_witness.reset();
        return out;
      }
      if (x->complete) throw Error("complete coset graph gave an unstable language; the structure is inconsistent");
    }
    return exhausted("max stage reached");
  } catch (const CosetCapExceeded&) {
    return exhausted("coset cap reached");
  } catch (const ResourceError&) {
    return exhausted("state cap reached");
  }
}

Fsa normalized_acceptor(const AutomaticStructure& s) {
  const Word w = identity_word(s);
  if (w.empty()) return s.acceptor;
  const auto& syms = s.alphabet.symbols();
  const Fsa rest = combine(s.acceptor, from_words(syms, {w}), BoolOp::difference);
  return minimize(combine(rest, from_words(syms, {Word{}}), BoolOp::union_));
}

bool member(const AutomaticStructure& s, const Fsa& m_h, const Word& v) {
  const Word w = reduce(s, v);
  // The detector's language represents the identity by the empty word.
  if (w == identity_word(s)) return true;
  return accepts(m_h, w);
}

GenerationResult generates(const AutomaticStructure& s, const Fsa& m_h) {
  GenerationResult g;
  g.witness = shortest_accepted(combine(normalized_acceptor(s), m_h, BoolOp::difference));
  g.generates = !g.witness;
  return g;
}

std::string detection_report_json(const Alphabet& a, const DetectionOutcome& o) {
  nlohmann::ordered_json j;
  j["outcome"] = o.found() ? "found" : "exhausted";
  j["stage"] = o.stage;
  if (o.found()) {
    j["m_h_states"] = o.m_h.num_states();
    const auto size = language_size(o.m_h);
    if (size) {
      j["m_h_words"] = *size;
    } else {
      j["m_h_words"] = "infinite";
    }
  } else {
    j["reason"] = o.reason;
    j["last_li_states"] = o.last_li_states;
  }
  if (o.last_witness) j["witness"] = format_word(a, *o.last_witness);
  auto& stages = j["stages"] = nlohmann::ordered_json::array();
  for (const auto& st : o.stats) {
    stages.push_back({{"i", st.stage},
                      {"graph_vertices", st.graph_vertices},
                      {"li_states", st.li_states},
                      {"stable_count", st.stable_count},
                      {"complete", st.complete}});
  }
  return j.dump(2) + "\n";
}

std::string detection_report_text(const Alphabet& a, const DetectionOutcome& o) {
  std::string out = std::string("outcome ") + (o.found() ? "found" : "exhausted") + "\nstage " + std::to_string(o.stage) + "\n";
  if (o.found()) {
    out += "m_h_states " + std::to_string(o.m_h.num_states()) + "\n";
    const auto size = language_size(o.m_h);
    out += "m_h_words " + (size ? std::to_string(*size) : std::string("infinite")) + "\n";
  } else {
    out += "reason " + o.reason + "\nlast_li_states " + std::to_string(o.last_li_states) + "\n";
  }
  if (o.last_witness) out += "witness " + format_word(a, *o.last_witness) + "\n";
  out += "# i graph_vertices li_states stable_count complete\n";
  for (const auto& st : o.stats) {
    out += "stage " + std::to_string(st.stage) + " " + std::to_string(st.graph_vertices) + " " +
           std::to_string(st.li_states) + " " + std::to_string(st.stable_count) + " " + (st.complete ? "1" : "0") + "\n";
  }
  return out;
}

}  // namespace qcd
