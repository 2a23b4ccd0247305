#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"

#include "ltlpct/fo2.hpp"
#include "ltlpct/fragment.hpp"
#include "ltlpct/io.hpp"
#include "ltlpct/kripke.hpp"
#include "ltlpct/library.hpp"
#include "ltlpct/minsky.hpp"
#include "ltlpct/parser.hpp"
#include "ltlpct/semantics.hpp"
#include "ltlpct/solver.hpp"

namespace ltlpct::cli {

namespace {

struct Usage : Error {
  using Error::Error;
};

/// Outcome of one decision command.
struct Verdict {
  std::string status;
  std::optional<Word> witness;
  std::vector<std::string> diagnostics;
  Json extra = Json::object();
};

int exit_code(const std::string& status) {
  if (status == "sat" || status == "holds") return kPositive;
  if (status == "unsat" || status == "fails") return kNegative;
  return kInconclusive;
}

Json verdict_json(const Verdict& v) {
  Json j = {{"status", v.status},
            {"witness", v.witness ? word_to_json(*v.witness) : Json(nullptr)},
            {"diagnostics", v.diagnostics}};
  for (auto it = v.extra.begin(); it != v.extra.end(); ++it) j[it.key()] = it.value();
  return j;
}

void print_verdict(std::ostream& out, const Verdict& v) {
  out << v.status << "\n";
  if (v.witness) out << "witness: " << format_word(*v.witness) << "\n";
  if (v.extra.contains("path")) {
    out << "path:";
    for (const auto& s : v.extra["path"]) out << " " << s.get<std::string>();
    out << "\n";
  }
  for (const auto& d : v.diagnostics) out << "note: " << d << "\n";
}

// ---- argument readers -------------------------------------------------------

struct Text {
  std::string body;
  std::string source;
};

/// Inline text, or the contents of `file` for `@file`.
Text text_arg(const std::string& arg, const char* inline_name) {
  if (!arg.empty() && arg[0] == '@') return {read_text(arg.substr(1)), arg.substr(1)};
  return {arg, inline_name};
}

[[noreturn]] void rethrow_parse(const ParseError& e, const std::string& source) {
  throw InputError(source + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()), e.detail());
}

std::vector<Formula> formulas_arg(const std::string& arg, bool lines) {
  const Text t = text_arg(arg, "<formula>");
  try {
    if (lines) return parse_formula_lines(t.body);
    return {parse_formula(t.body)};
  } catch (const ParseError& e) {
    rethrow_parse(e, t.source);
  }
}

Formula formula_arg(const std::string& arg) { return formulas_arg(arg, false).front(); }

FoFormula fo_arg(const std::string& arg) {
  const Text t = text_arg(arg, "<fo-formula>");
  try {
    return parse_fo(t.body);
  } catch (const ParseError& e) {
    rethrow_parse(e, t.source);
  }
}

/// A file path, or inline JSON when the argument starts with [ or {.
Json json_arg(const std::string& arg, const char* inline_name) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '[' || arg[first] == '{')) return parse_json(arg, inline_name);
  if (!std::filesystem::exists(arg)) throw InputError(arg, "no such file");
  return load_json(arg);
}

std::string source_of(const std::string& arg, const char* inline_name) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '[' || arg[first] == '{')) return inline_name;
  return arg;
}

Word word_arg(const std::string& arg) { return word_from_json(json_arg(arg, "<word>"), source_of(arg, "<word>")); }

std::vector<Prop> split_props(const std::string& list) {
  std::vector<Prop> out;
  std::stringstream ss(list);
  std::string p;
  while (std::getline(ss, p, ',')) {
    p.erase(0, p.find_first_not_of(' '));
    p.erase(p.find_last_not_of(' ') + 1);
    if (p.empty()) continue;
    if (!is_valid_prop_name(p)) throw Usage("invalid proposition name '" + p + "'");
    out.push_back(p);
  }
  return out;
}

/// props_of(f), then the props of `words`, then `extra`; sorted by name.
Alphabet context(const Formula& f, const std::vector<Word>& words, const std::vector<Prop>& extra) {
  std::set<Prop> s = props_of(f);
  for (const auto& w : words) {
    const auto ps = w.props();
    s.insert(ps.begin(), ps.end());
  }
  s.insert(extra.begin(), extra.end());
  return Alphabet::of(s);
}

// ---- commands -------------------------------------------------------------

struct Globals {
  bool json = false;
  std::uint64_t seed = 1;
  bool lines = false;
  std::string ctx;
};

Verdict cmd_eval(const Formula& f, const Word& w, std::size_t pos, const Globals& g) {
  const Alphabet ctx = context(f, {w}, split_props(g.ctx));
  if (pos >= w.size())
    throw Usage("--pos " + std::to_string(pos) + " is outside a word of length " + std::to_string(w.size()));
  Verdict v;
  const bool h = eval_at(w, pos, f, ctx);
  v.status = h ? "holds" : "fails";
  if (h) v.witness = w;
  if (pos) v.diagnostics.push_back("evaluated at position " + std::to_string(pos));
  return v;
}

Verdict cmd_sat_bounded(const Formula& f, std::size_t max_len, const Globals& g) {
  const Alphabet ctx = context(f, {}, split_props(g.ctx));
  Verdict v;
  v.witness = bounded_sat(f, ctx, max_len);
  v.status = v.witness ? "sat" : "inconclusive";
  if (!v.witness) v.diagnostics.push_back("no model of length <= " + std::to_string(max_len));
  return v;
}

Verdict cmd_sat_x(const Formula& f, const Globals& g) {
  const Alphabet ctx = context(f, {}, split_props(g.ctx));
  Verdict v;
  v.witness = prefix_sat_x_fragment(f, ctx);
  v.status = v.witness ? "sat" : "unsat";
  v.diagnostics.push_back("models searched up to length " + std::to_string(temporal_depth(f) + 2));
  return v;
}

Verdict from_solve(const SolveResult& r) {
  Verdict v;
  v.status = to_string(r.verdict);
  v.witness = r.witness;
  Json reports = Json::array();
  for (std::size_t i = 0; i < r.reports.size(); ++i) {
    const auto& c = r.reports[i];
    const char* pv = c.verdict == ParikhVerdict::NonEmpty ? "nonempty"
                     : c.verdict == ParikhVerdict::Empty  ? "empty"
                                                          : "inconclusive";
    reports.push_back({{"nfa_states", c.nfa_states},
                       {"nfa_edges", c.nfa_edges},
                       {"dfa_states", c.dfa_states},
                       {"dfa_edges", c.dfa_edges},
                       {"nodes", c.nodes},
                       {"verdict", pv}});
    v.diagnostics.push_back("conjunct " + std::to_string(i) + ": " + pv + ", " + std::to_string(c.nfa_states) +
                            " NFA states, " + std::to_string(c.dfa_edges) + " projected edges, " +
                            std::to_string(c.nodes) + " search nodes");
  }
  v.extra["conjuncts"] = reports;
  return v;
}

Verdict cmd_sat_percent(const Formula& f, std::size_t nodes_per_edge, const std::string& emit) {
  const LtlPercentFormula lf = validate_percent_fragment(f);
  if (!emit.empty()) {
    Json all = Json::array();
    for (const auto& c : to_dnf(lf)) {
      const Decorated d = decorate(c);
      Json a = automaton_to_json(conjunct_automaton(d));
      a["formula"] = print_formula(d.formula);
      all.push_back(a);
    }
    std::ofstream os(emit);
    if (!os) throw InputError(emit, "cannot write file");
    os << all.dump(2) << "\n";
  }
  SolveOptions opt;
  opt.parikh.nodes_per_edge = nodes_per_edge;
  return from_solve(solve(lf, opt));
}

Verdict cmd_mc(const KripkeStructure& k, const Formula& f, std::optional<std::size_t> bounded,
               std::size_t nodes_per_edge) {
  Verdict v;
  for (const auto& w : validate_kripke(k).warnings) v.diagnostics.push_back(w);
  if (bounded) {
    v.witness = model_check_bounded(k, f, *bounded);
    v.status = v.witness ? "sat" : "inconclusive";
    if (!v.witness) v.diagnostics.push_back("no trace of length <= " + std::to_string(*bounded) + " satisfies the formula");
    return v;
  }
  SolveOptions opt;
  opt.parikh.nodes_per_edge = nodes_per_edge;
  const ModelCheckResult r = model_check_percent(k, validate_percent_fragment(f), opt);
  Verdict s = from_solve(r.solver);
  s.diagnostics.insert(s.diagnostics.begin(), v.diagnostics.begin(), v.diagnostics.end());
  s.status = to_string(r.verdict);
  s.witness.reset();
  if (r.path) {
    s.witness = r.path->trace;
    s.extra["path"] = r.path->states;
  }
  return s;
}

Json cmd_encode_minsky(const MinskyMachine& m, const std::string& target, bool mfl, const std::string& guard) {
  MinskyOptions opt;
  if (guard == "subsets") opt.guard = GuardForm::Subsets;
  else if (guard == "exactly-one") opt.guard = GuardForm::ExactlyOne;
  const MinskyFormula mf = mfl ? psi_minsky_mfl_q(m, target, opt)
                           : target.empty() ? psi_minsky(m, opt)
                                            : psi_minsky_q(m, target, opt);
  Json defs = Json::array();
  for (const auto& [p, l] : mf.definitions) defs.push_back({{"prop", p}, {"formula", print_formula(l)}});
  return {{"formula", print_formula(mf.formula)},
          {"sigma", sigma_minsky(m)},
          {"tildes", tildemap_to_json(minsky_tildes(m))},
          {"ctx", alphabet_to_json(mf.ctx)},
          {"guard", mf.subset_guard ? "subsets" : "exactly-one"},
          {"definitions", defs}};
}

Json cmd_gen(const std::string& kind, std::size_t pairs, std::size_t count, const std::vector<Prop>& props,
             const std::string& tildes, std::uint64_t seed) {
  Rng rng(seed);
  TildeMap tm;
  if (kind == "truly") {
    tm = tildes.empty() ? TildeMap::suffixed({props.begin(), props.end()})
                        : tildemap_from_json(json_arg(tildes, "<tildes>"), source_of(tildes, "<tildes>"));
    for (const auto& p : props)
      if (!tm.contains(p)) throw InputError(tildes, "no tilde for '" + p + "'");
  }
  Json out = Json::array();
  for (std::size_t i = 0; i < count; ++i) {
    if (kind == "shadowy") out.push_back(word_to_json(random_shadowy(rng, pairs, props)));
    else if (kind == "truly") out.push_back(word_to_json(random_truly_shadowy(rng, pairs, {props.begin(), props.end()}, tm)));
    else out.push_back(word_to_json(random_strongly_shadowy(rng, pairs, props)));
  }
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-trace LTL with percentage operators", "ltlpct"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_option("--seed", g.seed, "Seed for randomized commands");

  std::string formula, word, kripke, machine, target, guard = "auto", emit, kind, props, tildes;
  std::size_t pos = 0, max_len = 8, steps = 8, pairs = 2, count = 1, nodes_per_edge = 64;
  std::optional<std::size_t> bounded;
  bool mfl = false, percent = false, free_var = false;
  std::optional<std::size_t> fx, fy;

  auto add_ctx = [&](CLI::App* s) {
    s->add_option("--ctx", g.ctx, "Extra props for the evaluation context, comma separated");
  };
  auto add_lines = [&](CLI::App* s) {
    s->add_flag("--lines", g.lines, "With @file: one formula per non-blank line");
  };

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a formula on a word");
  eval_cmd->add_option("formula", formula, "Formula or @file")->required();
  eval_cmd->add_option("word", word, "Word file or inline JSON")->required();
  eval_cmd->add_option("--pos", pos, "Position (default 0)");
  add_ctx(eval_cmd);
  add_lines(eval_cmd);

  auto* sb_cmd = app.add_subcommand("sat-bounded", "Search all words up to a length");
  sb_cmd->add_option("formula", formula, "Formula or @file")->required();
  sb_cmd->add_option("--max-len", max_len, "Longest word tried")->required();
  add_ctx(sb_cmd);
  add_lines(sb_cmd);

  auto* sx_cmd = app.add_subcommand("sat-x", "Decide formulas without F, G and U");
  sx_cmd->add_option("formula", formula, "Formula or @file")->required();
  add_ctx(sx_cmd);
  add_lines(sx_cmd);

  auto* sp_cmd = app.add_subcommand("sat-percent", "Decide percentage-fragment formulas");
  sp_cmd->add_option("formula", formula, "Formula or @file")->required();
  sp_cmd->add_option("--emit-automaton", emit, "Write the automata and constraints as JSON to this file");
  sp_cmd->add_option("--nodes-per-edge", nodes_per_edge, "Search budget per projected edge");
  add_lines(sp_cmd);

  auto* mc_cmd = app.add_subcommand("mc", "Is there a trace of a Kripke structure satisfying a formula");
  mc_cmd->add_option("kripke", kripke, "Kripke file or inline JSON")->required();
  mc_cmd->add_option("formula", formula, "Formula or @file")->required();
  auto* b_opt = mc_cmd->add_option("--bounded", bounded, "Enumerate traces up to this length");
  auto* p_opt = mc_cmd->add_flag("--percent", percent, "Use the percentage solver (default)");
  b_opt->excludes(p_opt);
  mc_cmd->add_option("--nodes-per-edge", nodes_per_edge, "Search budget per projected edge");

  auto* em_cmd = app.add_subcommand("encode-minsky", "Print the formula encoding a machine");
  em_cmd->add_option("machine", machine, "Machine file or inline JSON")->required();
  em_cmd->add_option("--target", target, "Require reaching this state");
  em_cmd->add_flag("--mfl", mfl, "Half-free variant (needs --target)");
  em_cmd->add_option("--guard", guard, "auto, subsets or exactly-one")
      ->check(CLI::IsMember({"auto", "subsets", "exactly-one"}));

  auto* sm_cmd = app.add_subcommand("simulate-minsky", "Run a machine and encode the run");
  sm_cmd->add_option("machine", machine, "Machine file or inline JSON")->required();
  sm_cmd->add_option("--steps", steps, "Maximal number of steps")->required();

  auto* tr_cmd = app.add_subcommand("translate-fo2", "Translate a PM formula into FO2 with majority");
  tr_cmd->add_option("formula", formula, "Formula or @file")->required();
  tr_cmd->add_flag("--free", free_var, "Print tr_x with x free instead of the closed sentence");

  auto* fe_cmd = app.add_subcommand("fo-eval", "Evaluate a first-order formula on a word");
  fe_cmd->add_option("formula", formula, "FO formula or @file")->required();
  fe_cmd->add_option("word", word, "Word file or inline JSON")->required();
  fe_cmd->add_option("--x", fx, "Position assigned to x");
  fe_cmd->add_option("--y", fy, "Position assigned to y");

  auto* gen_cmd = app.add_subcommand("gen", "Generate random shadowy words");
  gen_cmd->add_option("kind", kind, "shadowy, truly or strongly")
      ->required()
      ->check(CLI::IsMember({"shadowy", "truly", "strongly"}));
  gen_cmd->add_option("--pairs", pairs, "White/shadow pairs per word");
  gen_cmd->add_option("--count", count, "Number of words");
  gen_cmd->add_option("--props", props, "Extra props (truly: the set sigma), comma separated");
  gen_cmd->add_option("--tildes", tildes, "Tilde map file or inline JSON (truly only)");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  auto emit_json = [&](const Json& j) { out << j.dump(2) << "\n"; };

  try {
    // Commands answering with one verdict per formula.
    auto verdicts = [&](auto&& decide) {
      std::vector<Verdict> vs;
      for (const auto& f : formulas_arg(formula, g.lines)) vs.push_back(decide(f));
      int code = kPositive;
      for (const auto& v : vs) {
        const int c = exit_code(v.status);
        if (c == kNegative || (c == kInconclusive && code == kPositive)) code = c;
      }
      if (g.json) {
        if (g.lines) {
          Json all = Json::array();
          for (const auto& v : vs) all.push_back(verdict_json(v));
          emit_json(all);
        } else {
          emit_json(verdict_json(vs.front()));
        }
      } else {
        for (const auto& v : vs) print_verdict(out, v);
      }
      return code;
    };

    if (*eval_cmd) {
      const Word w = word_arg(word);
      return verdicts([&](const Formula& f) { return cmd_eval(f, w, pos, g); });
    }
    if (*sb_cmd) return verdicts([&](const Formula& f) { return cmd_sat_bounded(f, max_len, g); });
    if (*sx_cmd) return verdicts([&](const Formula& f) { return cmd_sat_x(f, g); });
    if (*sp_cmd) {
      if (g.lines && !emit.empty()) throw Usage("--emit-automaton takes a single formula");
      return verdicts([&](const Formula& f) { return cmd_sat_percent(f, nodes_per_edge, emit); });
    }
    if (*mc_cmd) {
      const KripkeStructure k = kripke_from_json(json_arg(kripke, "<kripke>"), source_of(kripke, "<kripke>"));
      return verdicts([&](const Formula& f) { return cmd_mc(k, f, bounded, nodes_per_edge); });
    }
    if (*em_cmd) {
      if (mfl && target.empty()) throw Usage("--mfl needs --target");
      const MinskyMachine m = machine_from_json(json_arg(machine, "<machine>"), source_of(machine, "<machine>"));
      const Json j = cmd_encode_minsky(m, target, mfl, guard);
      if (g.json) emit_json(j);
      else out << j["formula"].get<std::string>() << "\n";
      return 0;
    }
    if (*sm_cmd) {
      const MinskyMachine m = machine_from_json(json_arg(machine, "<machine>"), source_of(machine, "<machine>"));
      const auto runs = simulate(m, steps);
      Json j = {{"steps", 0}, {"run", Json::array()}, {"word", nullptr}};
      if (!runs.empty()) {
        j["steps"] = runs.back().size();
        j["run"] = run_to_json(runs.back());
        j["word"] = word_to_json(encode_word(runs.back()));
      }
      if (g.json) {
        emit_json(j);
      } else if (runs.empty()) {
        out << "no transition applies to the initial configuration\n";
      } else {
        out << format_run(runs.back()) << "\n" << format_word(encode_word(runs.back())) << "\n";
      }
      return 0;
    }
    if (*tr_cmd) {
      const Formula f = formula_arg(formula);
      const FoFormula t = free_var ? translate(Var::X, f) : translate_closed(f);
      if (g.json) emit_json({{"formula", print_fo(t)}});
      else out << print_fo(t) << "\n";
      return 0;
    }
    if (*fe_cmd) {
      const FoFormula f = fo_arg(formula);
      const Word w = word_arg(word);
      Verdict v;
      const bool h = fo_eval(w, f, Assignment{fx, fy});
      v.status = h ? "holds" : "fails";
      if (h) v.witness = w;
      if (g.json) emit_json(verdict_json(v));
      else print_verdict(out, v);
      return exit_code(v.status);
    }
    if (*gen_cmd) {
      const Json words = cmd_gen(kind, pairs, count, split_props(props), tildes, g.seed);
      if (g.json) {
        emit_json(words);
      } else {
        for (const auto& w : words) out << format_word(word_from_json(w)) << "\n";
      }
      return 0;
    }
  } catch (const Usage& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  }
  return kUsage;
}

}  // namespace ltlpct::cli
