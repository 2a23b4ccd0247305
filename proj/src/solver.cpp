#include "ltlpct/solver.hpp"

#include "ltlpct/library.hpp"
#include "ltlpct/semantics.hpp"

namespace ltlpct {

namespace {

Formula A(const Prop& p) { return Formula::atom(p); }
Formula G(Formula f) { return Formula::always(std::move(f)); }
Formula Fe(Formula f) { return Formula::eventually(std::move(f)); }

}  // namespace

std::set<Prop> Decorated::decoration_props() const {
  std::set<Prop> out;
  for (const auto& d : props) out.insert({d.w, d.b, d.s});
  return out;
}

Decorated decorate(const Conjunct& c, const std::set<Prop>& avoid) {
  std::set<Prop> taken = avoid;
  const auto own = props_of(c.to_formula());
  taken.insert(own.begin(), own.end());
  FreshProps fw(taken, "w$"), fb(taken, "b$"), fs(taken, "s$");

  Decorated out;
  std::vector<Formula> parts;
  if (c.base.op() != Op::True || c.blocks.empty()) parts.push_back(c.base);
  for (const auto& blk : c.blocks) {
    DecorationProps d{fw.next(), fb.next(), fs.next()};
    const Formula w = A(d.w), b = A(d.b), s = A(d.s);
    parts.push_back(Fe(w));
    parts.push_back(G(Formula::implies(w, Formula::neg(Formula::next(Fe(w))))));
    parts.push_back(G(Formula::iff(b, Formula::conj(Formula::neg(w), Fe(w)))));
    parts.push_back(G(Formula::iff(s, Formula::conj(b, blk.body))));
    if (blk.pre.op() != Op::True) parts.push_back(G(Formula::implies(w, blk.pre)));
    out.constraints.push_back({{{d.s, 100}}, blk.cmp, {{d.b, blk.k}}});
    out.props.push_back(std::move(d));
  }
  out.formula = conj_all(parts);
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Sat: return "sat";
    case Verdict::Unsat: return "unsat";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

ParikhAutomaton conjunct_automaton(const Decorated& d) {
  return {ltl_to_nfa(d.formula, Alphabet::of(props_of(d.formula))), d.constraints};
}

SolveResult solve(const LtlPercentFormula& f, const SolveOptions& opt) {
  SolveResult out;
  bool inconclusive = false;
  const auto conjuncts = to_dnf(f);
  for (std::size_t i = 0; i < conjuncts.size(); ++i) {
    const Decorated d = decorate(conjuncts[i]);
    const ParikhAutomaton pa = conjunct_automaton(d);
    const ParikhResult r = parikh_emptiness(pa, opt.parikh);
    out.reports.push_back({d.formula, pa.nfa.num_states, pa.nfa.edges.size(), r.dfa_states, r.dfa_edges,
                           r.nodes, r.verdict});
    if (r.verdict == ParikhVerdict::Inconclusive) inconclusive = true;
    if (r.verdict != ParikhVerdict::NonEmpty) continue;
    Word w = r.word->without(d.decoration_props());
    const Alphabet ctx = Alphabet::of(props_of(f.formula())).extended(w.props());
    if (!eval(w, f.formula(), ctx))
      throw Error("internal: witness " + format_word(w) + " does not satisfy the formula");
    out.verdict = Verdict::Sat;
    out.witness = std::move(w);
    out.conjunct = i;
    return out;
  }
  out.verdict = inconclusive ? Verdict::Inconclusive : Verdict::Unsat;
  return out;
}

}  // namespace ltlpct
