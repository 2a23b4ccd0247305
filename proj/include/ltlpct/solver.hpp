#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ltlpct/fragment.hpp"
#include "ltlpct/parikh.hpp"

namespace ltlpct {

/// Props added for one percentage block: w marks the block's witness
/// position, b the positions before it, s those of them where the body holds.
struct DecorationProps {
  Prop w, b, s;
};

struct Decorated {
  /// Pure LTL.
  Formula formula;
  /// One constraint per block: 100 * #s  cmp  k * #b.
  std::vector<LinearConstraint> constraints;
  std::vector<DecorationProps> props;

  std::set<Prop> decoration_props() const;
};

/// Rewrites base & F(pre_1 & P[..] body_1) & ... into the pure formula
///   base & /\_i F w_i & G(w_i -> !X F w_i) & G(b_i <-> (!w_i & F w_i))
///        & G(s_i <-> (b_i & body_i)) & G(w_i -> pre_i)
/// and the constraints 100 * #s_i cmp_i k_i * #b_i. Fresh props avoid
/// `avoid` and the props of c.
Decorated decorate(const Conjunct& c, const std::set<Prop>& avoid = {});

enum class Verdict { Sat, Unsat, Inconclusive };

std::string to_string(Verdict v);

struct SolveOptions {
  ParikhOptions parikh;
};

struct ConjunctReport {
  Formula decorated;
  std::size_t nfa_states = 0;
  std::size_t nfa_edges = 0;
  std::size_t dfa_states = 0;
  std::size_t dfa_edges = 0;
  std::size_t nodes = 0;
  ParikhVerdict verdict = ParikhVerdict::Empty;
};

struct SolveResult {
  Verdict verdict = Verdict::Unsat;
  /// Present iff Sat; checked against the input with the evaluator.
  std::optional<Word> witness;
  /// DNF conjunct that produced the witness.
  std::size_t conjunct = 0;
  std::vector<ConjunctReport> reports;
};

/// Satisfiability of a certified formula. Conjuncts of the DNF are tried in
/// order; Unsat means every conjunct was proved empty.
SolveResult solve(const LtlPercentFormula& f, const SolveOptions& opt = {});

/// The automaton and constraints solve() builds for one conjunct.
ParikhAutomaton conjunct_automaton(const Decorated& d);

}  // namespace ltlpct
