#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ltlpct/formula.hpp"
#include "ltlpct/library.hpp"
#include "ltlpct/word.hpp"

namespace ltlpct {

using State = std::string;

/// Counter test: zero or positive.
enum class Sign { Zero, Pos };

std::string to_string(Sign s);

/// One entry delta(from, c1, c2) = (d1, d2, to). Also used as a run letter
/// (q, f, s, f-bar, s-bar, q_N).
struct Transition {
  State from;
  Sign c1 = Sign::Zero;
  Sign c2 = Sign::Zero;
  int d1 = 0;
  int d2 = 0;
  State to;

  friend bool operator==(const Transition&, const Transition&) = default;
};

std::string format_step(const Transition& t);

/// Deterministic two-counter machine with a partial transition function.
struct MinskyMachine {
  std::vector<State> states;
  State initial;
  std::vector<Transition> delta;

  /// The entry for (q, c1, c2), if any.
  const Transition* find(const State& q, Sign c1, Sign c2) const;
  bool has_state(const State& q) const;
};

/// Every violated constraint, one message each; empty means valid.
std::vector<std::string> validate_machine(const MinskyMachine& m);
/// Throws Error listing the violations.
void require_valid(const MinskyMachine& m);

using Run = std::vector<Transition>;

std::string format_run(const Run& r);

/// The first violated run condition (initial configuration, transition
/// consistency, state propagation, counter consistency), or nullopt.
/// Counter consistency is only checked when `counters` is set.
std::optional<std::string> run_violation(const MinskyMachine& m, const Run& r, bool counters = true);
inline bool is_valid_run(const MinskyMachine& m, const Run& r) { return !run_violation(m, r); }

/// All runs of length 1..max_steps, shortest first. They are the prefixes of
/// the single maximal trajectory.
std::vector<Run> simulate(const MinskyMachine& m, std::size_t max_steps);

/// Some run of length <= max_steps ends a step in q.
bool reaches(const MinskyMachine& m, const State& q, std::size_t max_steps);

// ---- propositions ----------------------------------------------------------

Prop from_prop(const State& q);
Prop to_prop(const State& q);
/// counter is 1 or 2.
Prop counter_prop(int counter, Sign s);
Prop update_prop(int counter, int d);

/// from_q, to_q per state in declaration order, then c1_0 c1_+ c2_0 c2_+,
/// then i1_-1 i1_0 i1_+1 i2_-1 i2_0 i2_+1.
std::vector<Prop> sigma_minsky(const MinskyMachine& m);
/// Every sigma mapped to sigma + "~".
TildeMap minsky_tildes(const MinskyMachine& m);
/// wht, shdw, sigma_minsky, then the tildes in the same order.
Alphabet minsky_alphabet(const MinskyMachine& m);

// ---- codec -----------------------------------------------------------------

/// White 2i carries wht and the six props of step i, shadow 2i+1 carries
/// shdw and their tildes. Only the shape of r is checked (non-empty, updates
/// in {-1,0,1}), not that it is a run of some machine.
Word encode_word(const Run& r);

/// Inverse of encode_word on white positions. Throws Error on odd length or
/// when a white lacks, or has several, props of one family.
Run run_of(const Word& w);

// ---- formulas --------------------------------------------------------------

/// How the "at most six letters" guard is written.
enum class GuardForm {
  Auto,        ///< Subsets when |sigma_minsky| <= 12, ExactlyOne otherwise.
  Subsets,     ///< G of !(p1 & ... & p7) over all 7-subsets.
  ExactlyOne,  ///< G(wht -> exactly one prop of each family).
};

/// How the zero tests are tied to the update counts.
enum class CounterForm {
  Equivalence,  ///< G(wht -> (c1_0 <-> isequal(i1_+1, i1_-1))).
  Implication,  ///< G(c1_0 -> isequal(i1_+1, i1_-1)); admits fake runs.
};

struct MinskyOptions {
  GuardForm guard = GuardForm::Auto;
  CounterForm counters = CounterForm::Equivalence;
};

struct MinskyFormula {
  Formula formula;
  /// Every prop the formula mentions or MFL should range over.
  Alphabet ctx;
  /// True when the 7-subset guard was emitted.
  bool subset_guard = false;
  CounterForm counters = CounterForm::Equivalence;
  /// Fresh props introduced for Half(lambda), with lambda.
  std::vector<std::pair<Prop, Formula>> definitions;
};

/// from_q0 & c1_0 & c2_0
Formula psi_p1(const MinskyMachine& m);
/// G(wht -> one disjunct per delta entry)
Formula psi_p2_delta(const MinskyMachine& m);
/// The guard; `subset_guard` reports which form was chosen.
Formula psi_p2_guard(const MinskyMachine& m, GuardForm g, bool* subset_guard = nullptr);
/// Truly shadowy over sigma_minsky, p1, p2.
Formula psi_enc_basics(const MinskyMachine& m, const MinskyOptions& opt = {});
/// G(wht -> /\_{q != q0} (from_q | isequal(from_q, to_q)))
Formula psi_p3(const MinskyMachine& m);
/// Zero tests for both counters plus G(wht -> (c_0 <-> !c_+)).
Formula psi_p4(const MinskyMachine& m, CounterForm form = CounterForm::Equivalence);

/// enc_basics & p3 & p4. Validates m.
MinskyFormula psi_minsky(const MinskyMachine& m, const MinskyOptions& opt = {});
/// psi_minsky & F to_q. Throws Error if q is not a state.
MinskyFormula psi_minsky_q(const MinskyMachine& m, const State& q, const MinskyOptions& opt = {});

/// The Half-free variant: strongly shadowy base, every Half(lambda) replaced
/// by MFL(p) for a fresh p, the counter tests written over the negated body,
/// plus G(p <-> lambda) for every p, plus F to_q.
MinskyFormula psi_minsky_mfl_q(const MinskyMachine& m, const State& q,
                               const MinskyOptions& opt = {});

// ---- test support ----------------------------------------------------------

/// Every word differing from w in exactly one (position, prop) over ctx.
std::vector<Word> single_mutants(const Word& w, const Alphabet& ctx);

/// Words obtained by toggling a sigma on a white together with its tilde on
/// the following shadow, and by swapping the prop of one family at one step
/// for another member of the same family.
std::vector<Word> paired_mutants(const Word& w, const MinskyMachine& m);

}  // namespace ltlpct
