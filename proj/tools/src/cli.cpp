#include "qcd_cli/cli.hpp"

#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcd/fixtures.hpp"
#include "qcd/fsa_io.hpp"
#include "qcd/hyperbolic_detector.hpp"
#include "qcd/rational_detector.hpp"
#include "qcd/structure_io.hpp"

namespace qcd::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

struct Options {
  std::string fixture;
  std::string structure_path;
  std::string presentation_path;
  std::vector<std::string> subgroup;
  std::string word;
  std::size_t max_stage = 50;
  std::size_t max_states = 1'000'000;
  std::size_t max_cosets = 100'000;
  double timeout = 0;
  std::string output;
  std::string emit = "text";
  std::string mh_path;
  std::string mh_out;
  std::string delta = "0";
  std::size_t depth = 4;
  std::string fsa_op;
  std::vector<std::string> fsa_files;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path + "'");
  f << text;
}

struct Context {
  AutomaticStructure structure;
  std::optional<Presentation> presentation;
};

Context load(const Options& o, bool need_structure, bool need_presentation) {
  Context c;
  if (!o.fixture.empty() && !o.structure_path.empty()) throw Error("give either --fixture or --structure, not both");
  if (!o.fixture.empty()) {
    if (!o.presentation_path.empty()) throw Error("--presentation cannot be combined with --fixture");
    auto f = make_fixture(o.fixture);
    c.structure = std::move(f.structure);
    c.presentation = std::move(f.presentation);
    return c;
  }
  if (!o.presentation_path.empty()) c.presentation = parse_presentation(read_file(o.presentation_path));
  if (need_structure) {
    if (o.structure_path.empty()) throw Error("a structure is required: give --fixture or --structure");
    c.structure = read_structure(read_file(o.structure_path));
  }
  if (need_presentation && !c.presentation) throw Error("a presentation is required: give --fixture or --presentation");
  return c;
}

SubgroupSpec subgroup(const Alphabet& a, const Options& o) {
  std::vector<Word> gens;
  for (const auto& arg : o.subgroup) {
    std::size_t start = 0;
    for (;;) {
      const auto comma = arg.find(',', start);
      gens.push_back(parse_word(a, arg.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  return SubgroupSpec::make(a, gens);
}

DetectionBudget budget(const Options& o) {
  DetectionBudget b;
  b.max_stage = o.max_stage;
  b.max_states = o.max_states;
  b.max_cosets = o.max_cosets;
  if (o.timeout > 0) b.wall_clock = std::chrono::milliseconds(static_cast<long long>(o.timeout * 1000));
  return b;
}

bool json(const Options& o) { return o.emit == "json"; }

class Emitter {
 public:
  Emitter(const Options& o, std::ostream& out) : o_(o), out_(out) {}
  void operator()(const std::string& text) {
    if (o_.output.empty()) {
      out_ << text;
    } else {
      write_file(o_.output, text);
    }
  }

 private:
  const Options& o_;
  std::ostream& out_;
};

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

int cmd_reduce(const Options& o, Emitter& emit) {
  const Context c = load(o, true, false);
  const Word v = parse_word(c.structure.alphabet, o.word);
  const Word nf = reduce(c.structure, v);
  const auto& a = c.structure.alphabet;
  if (json(o)) {
    emit(dump({{"command", "reduce"}, {"word", format_word(a, v)}, {"normal_form", format_word(a, nf)}}));
  } else {
    emit("normal_form " + format_word(a, nf) + "\n");
  }
  return kPositive;
}

int cmd_wp(const Options& o, Emitter& emit) {
  const Context c = load(o, true, false);
  const Word v = parse_word(c.structure.alphabet, o.word);
  const bool trivial = word_problem(c.structure, v);
  const auto& a = c.structure.alphabet;
  if (json(o)) {
    emit(dump({{"command", "wp"}, {"word", format_word(a, v)}, {"trivial", trivial}}));
  } else {
    emit(std::string(trivial ? "trivial" : "nontrivial") + "\n");
  }
  return trivial ? kPositive : kNegative;
}

int cmd_detect_rational(const Options& o, Emitter& emit) {
  const Context c = load(o, true, true);
  const auto& a = c.structure.alphabet;
  const auto out = detect_rational(c.structure, *c.presentation, subgroup(a, o), budget(o));
  if (out.found() && !o.mh_out.empty()) write_file(o.mh_out, write_fsa(out.m_h));
  if (json(o)) {
    auto j = ordered_json::parse(detection_report_json(a, out));
    if (out.found()) j["m_h"] = write_fsa(out.m_h);
    emit(dump(j));
  } else {
    std::string text = detection_report_text(a, out);
    if (out.found()) text += "m_h\n" + write_fsa(out.m_h);
    emit(text);
  }
  return out.found() ? kPositive : kExhausted;
}

// m_h from --mh, or from a fresh detector run.
std::optional<Fsa> obtain_mh(const Options& o, const Context& c, DetectionOutcome* run) {
  if (!o.mh_path.empty()) {
    Fsa m = read_fsa(read_file(o.mh_path));
    if (m.symbols() != c.structure.alphabet.symbols()) throw Error("m_h alphabet does not match the structure");
    return m;
  }
  if (!c.presentation) throw Error("give --mh, or a presentation so the subgroup automaton can be computed");
  *run = detect_rational(c.structure, *c.presentation, subgroup(c.structure.alphabet, o), budget(o));
  if (!run->found()) return std::nullopt;
  return run->m_h;
}

int cmd_member(const Options& o, Emitter& emit) {
  const Context c = load(o, true, false);
  const auto& a = c.structure.alphabet;
  DetectionOutcome run;
  const auto mh = obtain_mh(o, c, &run);
  if (!mh) {
    emit(json(o) ? detection_report_json(a, run) : detection_report_text(a, run));
    return kExhausted;
  }
  const Word v = parse_word(a, o.word);
  const bool in = member(c.structure, *mh, v);
  if (json(o)) {
    emit(dump({{"command", "member"}, {"word", format_word(a, v)}, {"member", in}}));
  } else {
    emit(std::string(in ? "member" : "not a member") + "\n");
  }
  return in ? kPositive : kNegative;
}

int cmd_generates(const Options& o, Emitter& emit) {
  const Context c = load(o, true, false);
  const auto& a = c.structure.alphabet;
  DetectionOutcome run;
  const auto mh = obtain_mh(o, c, &run);
  if (!mh) {
    emit(json(o) ? detection_report_json(a, run) : detection_report_text(a, run));
    return kExhausted;
  }
  const auto g = generates(c.structure, *mh);
  if (json(o)) {
    ordered_json j{{"command", "generates"}, {"generates", g.generates}};
    if (g.witness) j["witness"] = format_word(a, *g.witness);
    emit(dump(j));
  } else {
    std::string text = g.generates ? "generates\n" : "does not generate\n";
    if (g.witness) text += "witness " + format_word(a, *g.witness) + "\n";
    emit(text);
  }
  return g.generates ? kPositive : kNegative;
}

int cmd_detect_qc(const Options& o, Emitter& emit) {
  const Context c = load(o, true, true);
  const HyperbolicContext ctx(c.structure, *c.presentation, parse_rational(o.delta), o.depth);
  const auto out = detect_quasiconvex(ctx, subgroup(c.structure.alphabet, o), budget(o));
  emit(json(o) ? qc_report_json(out) : qc_report_text(out));
  return out.halted() ? kPositive : kExhausted;
}

int cmd_tc(const Options& o, Emitter& emit) {
  const Context c = load(o, false, true);
  CosetEnumerator e(*c.presentation, subgroup(c.presentation->alphabet, o), CosetCaps{o.max_cosets});
  std::string text;
  bool complete = false;
  std::string reason;
  try {
    while (e.stage() < o.max_stage) {
      auto g = e.next();
      if (!g) break;
      text += write_coset_graph(*g);
      complete = g->complete;
      if (complete) break;
    }
    if (!complete) reason = "max stage reached";
  } catch (const CosetCapExceeded&) {
    reason = "coset cap reached";
  }
  if (json(o)) {
    ordered_json j{{"command", "tc"}, {"complete", complete}, {"stage", e.stage()}, {"cosets", e.live_cosets()}};
    if (!complete) j["reason"] = reason;
    j["snapshots"] = text;
    emit(dump(j));
  } else {
    text += complete ? "# complete\n" : "# incomplete: " + reason + "\n";
    emit(text);
  }
  return complete ? kPositive : kExhausted;
}

int cmd_fsa(const Options& o, Emitter& emit) {
  const std::string& op = o.fsa_op;
  const bool binary = op == "union" || op == "intersect" || op == "difference" || op == "equiv";
  const bool unary = op == "minimize" || op == "determinize" || op == "empty";
  if (!binary && !unary) throw Error("unknown fsa operation '" + op + "'");
  const std::size_t want = binary ? 2 : 1;
  if (o.fsa_files.size() != want) throw Error("fsa " + op + " takes " + std::to_string(want) + " file(s)");
  const Fsa a = read_fsa(read_file(o.fsa_files[0]));
  auto witness_text = [&](const std::optional<Word>& w) {
    if (w->empty()) return std::string("1");
    std::string s;
    for (Letter x : *w) s += (s.empty() ? "" : " ") + a.symbols()[static_cast<std::size_t>(x)];
    return s;
  };
  if (op == "minimize") {
    emit(write_fsa(minimize(a)));
    return kPositive;
  }
  if (op == "determinize") {
    emit(write_fsa(determinize(a)));
    return kPositive;
  }
  if (op == "empty") {
    const auto w = shortest_accepted(a);
    emit(w ? "nonempty\nwitness " + witness_text(w) + "\n" : std::string("empty\n"));
    return w ? kNegative : kPositive;
  }
  const Fsa b = read_fsa(read_file(o.fsa_files[1]));
  if (a.symbols() != b.symbols()) throw AlphabetMismatch();
  if (op == "equiv") {
    const auto w = distinguishing_word(a, b);
    emit(w ? "different\nwitness " + witness_text(w) + "\n" : std::string("equivalent\n"));
    return w ? kNegative : kPositive;
  }
  const BoolOp bop = op == "union" ? BoolOp::union_ : op == "intersect" ? BoolOp::intersection : BoolOp::difference;
  emit(write_fsa(minimize(combine(a, b, bop))));
  return kPositive;
}

int cmd_validate(const Options& o, Emitter& emit) {
  const Context c = load(o, true, false);
  const auto& a = c.structure.alphabet;
  const auto r = validate(c.structure, o.depth);
  auto flags = [&](const std::vector<bool>& v) {
    ordered_json j = ordered_json::object();
    for (std::size_t i = 0; i < v.size(); ++i) j[a.symbols()[i]] = static_cast<bool>(v[i]);
    return j;
  };
  if (json(o)) {
    ordered_json j{{"command", "validate"},
                   {"ok", r.ok()},
                   {"uniqueness_ok", r.uniqueness_ok},
                   {"projection_ok", flags(r.projection_ok)},
                   {"consistency_ok", flags(r.consistency_ok)},
                   {"sampled_surjectivity_ok", r.sampled_surjectivity_ok},
                   {"sample_depth", r.sample_depth}};
    auto& ce = j["counterexamples"] = ordered_json::array();
    for (const auto& x : r.counterexamples) ce.push_back(format_counterexample(a, x));
    emit(dump(j));
  } else {
    std::string text = std::string(r.ok() ? "valid" : "invalid") + "\n";
    text += "uniqueness " + std::string(r.uniqueness_ok ? "ok" : "FAIL") + "\n";
    for (std::size_t i = 0; i < a.size(); ++i) {
      text += "projection " + a.symbols()[i] + " " + (r.projection_ok[i] ? "ok" : "FAIL") + "\n";
      text += "consistency " + a.symbols()[i] + " " + (r.consistency_ok[i] ? "ok" : "FAIL") + "\n";
    }
    text += "sampled_surjectivity depth " + std::to_string(r.sample_depth) + " " +
            (r.sampled_surjectivity_ok ? "ok" : "FAIL") + "\n";
    for (const auto& x : r.counterexamples) text += "counterexample " + format_counterexample(a, x) + "\n";
    emit(text);
  }
  return r.ok() ? kPositive : kNegative;
}

void add_source(CLI::App* app, Options& o, bool presentation) {
  app->add_option("--fixture", o.fixture, "built-in fixture: free:N, zz, cyclic:N or s3");
  app->add_option("--structure", o.structure_path, "automatic structure file");
  if (presentation) app->add_option("--presentation", o.presentation_path, "presentation file");
}

void add_budget(CLI::App* app, Options& o) {
  app->add_option("--max-stage", o.max_stage, "stage budget")->check(CLI::PositiveNumber);
  app->add_option("--max-states", o.max_states, "automaton state cap")->check(CLI::PositiveNumber);
  app->add_option("--max-cosets", o.max_cosets, "coset cap")->check(CLI::PositiveNumber);
  app->add_option("--timeout", o.timeout, "wall-clock limit in seconds (0 = none)")->check(CLI::NonNegativeNumber);
}

void add_output(CLI::App* app, Options& o) {
  app->add_option("--output", o.output, "write the report to this file instead of stdout");
  app->add_option("--emit", o.emit, "report format")->check(CLI::IsMember({"json", "text"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Subgroup rationality and quasiconvexity detection", "qcd"};
  app.require_subcommand(1);

  auto* reduce_cmd = app.add_subcommand("reduce", "normal form of a word");
  add_source(reduce_cmd, o, false);
  reduce_cmd->add_option("--word", o.word, "word, e.g. \"a b^ a\"")->required();
  add_output(reduce_cmd, o);

  auto* wp_cmd = app.add_subcommand("wp", "word problem: exit 0 if the word is trivial, 3 if not");
  add_source(wp_cmd, o, false);
  wp_cmd->add_option("--word", o.word, "word")->required();
  add_output(wp_cmd, o);

  auto* dr_cmd = app.add_subcommand("detect-rational", "build the subgroup language automaton (exit 2 on budget)");
  add_source(dr_cmd, o, true);
  dr_cmd->add_option("--subgroup", o.subgroup, "generator words; commas separate words")->required();
  dr_cmd->add_option("--mh-out", o.mh_out, "write the subgroup automaton to this file");
  add_budget(dr_cmd, o);
  add_output(dr_cmd, o);

  auto* member_cmd = app.add_subcommand("member", "generalized word problem: exit 0 member, 3 not");
  add_source(member_cmd, o, true);
  member_cmd->add_option("--subgroup", o.subgroup, "generator words");
  member_cmd->add_option("--mh", o.mh_path, "subgroup automaton from detect-rational");
  member_cmd->add_option("--word", o.word, "word")->required();
  add_budget(member_cmd, o);
  add_output(member_cmd, o);

  auto* gen_cmd = app.add_subcommand("generates", "does the subgroup equal the group: exit 0 yes, 3 no");
  add_source(gen_cmd, o, true);
  gen_cmd->add_option("--subgroup", o.subgroup, "generator words");
  gen_cmd->add_option("--mh", o.mh_path, "subgroup automaton from detect-rational");
  add_budget(gen_cmd, o);
  add_output(gen_cmd, o);

  auto* qc_cmd = app.add_subcommand("detect-qc", "quasiconvexity prober for hyperbolic groups (exit 2 on budget)");
  add_source(qc_cmd, o, true);
  qc_cmd->add_option("--subgroup", o.subgroup, "generator words")->required();
  qc_cmd->add_option("--delta", o.delta, "thinness constant, e.g. 0, 1/2, 0.25");
  qc_cmd->add_option("--depth", o.depth, "geodesity sample depth");
  add_budget(qc_cmd, o);
  add_output(qc_cmd, o);

  auto* tc_cmd = app.add_subcommand("tc", "coset enumeration; prints a snapshot per wave");
  add_source(tc_cmd, o, true);
  tc_cmd->add_option("--subgroup", o.subgroup, "generator words");
  add_budget(tc_cmd, o);
  add_output(tc_cmd, o);

  auto* fsa_cmd = app.add_subcommand("fsa", "automaton operations on fsa files");
  fsa_cmd->add_option("op", o.fsa_op, "minimize | determinize | union | intersect | difference | equiv | empty")
      ->required();
  fsa_cmd->add_option("files", o.fsa_files, "input automata")->required();
  fsa_cmd->add_option("--output", o.output, "write the result to this file instead of stdout");

  auto* val_cmd = app.add_subcommand("validate", "structure checks: exit 0 valid, 3 invalid");
  add_source(val_cmd, o, false);
  val_cmd->add_option("--depth", o.depth, "sample depth for the reduction check");
  add_output(val_cmd, o);

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPositive : kUsage;
  }

  Emitter emit(o, out);
  try {
    if (*reduce_cmd) return cmd_reduce(o, emit);
    if (*wp_cmd) return cmd_wp(o, emit);
    if (*dr_cmd) return cmd_detect_rational(o, emit);
    if (*member_cmd) return cmd_member(o, emit);
    if (*gen_cmd) return cmd_generates(o, emit);
    if (*qc_cmd) return cmd_detect_qc(o, emit);
    if (*tc_cmd) return cmd_tc(o, emit);
    if (*fsa_cmd) return cmd_fsa(o, emit);
    if (*val_cmd) return cmd_validate(o, emit);
  } catch (const std::exception& e) {
    err << "qcd: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace qcd::cli
