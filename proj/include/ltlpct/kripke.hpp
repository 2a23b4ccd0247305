#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ltlpct/formula.hpp"
#include "ltlpct/fragment.hpp"
#include "ltlpct/solver.hpp"
#include "ltlpct/word.hpp"

namespace ltlpct {

struct KripkeStructure {
  std::vector<std::string> states;
  std::vector<std::string> initial;
  std::vector<std::pair<std::string, std::string>> edges;
  /// States without an entry are labelled with the empty set.
  std::map<std::string, Letter> labels;

  const Letter& label(const std::string& s) const;
  std::vector<std::string> successors(const std::string& s) const;
  std::set<Prop> label_props() const;
};

struct KripkeDiagnostics {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
};

/// Errors: bad or duplicate state names, unknown states in initial, edges or
/// labels, invalid label props, a state without successor. Warnings: no
/// initial state, unreachable states.
KripkeDiagnostics validate_kripke(const KripkeStructure& k);
/// Throws Error listing the errors.
void require_valid(const KripkeStructure& k);

/// Label words of all paths from an initial state with 1..max_len states,
/// without duplicates, shorter first and then in Word order.
std::vector<Word> traces(const KripkeStructure& k, std::size_t max_len);

inline constexpr std::size_t kMaxUniversalProps = 10;

/// States are the subsets of sigma (named s<mask>, bit j for the j-th prop
/// in sorted order), all initial, complete transition relation, each state
/// labelled with its subset. Throws Error above `cap` props.
KripkeStructure universal_structure(const std::set<Prop>& sigma, std::size_t cap = kMaxUniversalProps);

/// First trace of length <= max_len satisfying f, in traces() order.
std::optional<Word> model_check_bounded(const KripkeStructure& k, const Formula& f, std::size_t max_len);

inline constexpr const char* kStatePropPrefix = "st$";
Prop state_prop(const std::string& state);

enum class LabelForm {
  /// G(s -> exactly the label) over the label props and the extra props.
  Exact,
  /// G(s -> every prop of the label); other props are unconstrained.
  Implication,
};

/// (1) some initial state at 0, (2) G(X true -> some edge (s & X s')),
/// (3) labelling of each state prop, (4) exactly one state prop everywhere.
/// `extra` lists the props of the formula to be checked; with the implication
/// form they are left free. Throws Error on invalid k or if a prop in
/// `extra` or a label uses the state prefix.
Formula phi_K(const KripkeStructure& k, const std::set<Prop>& extra = {}, LabelForm form = LabelForm::Exact);

/// Reads the state props of w: the path and its trace. nullopt if some
/// position does not carry exactly one state prop.
struct DecodedPath {
  std::vector<std::string> states;
  Word trace;
};
std::optional<DecodedPath> decode_path(const KripkeStructure& k, const Word& w);

struct ModelCheckResult {
  Verdict verdict = Verdict::Unsat;
  /// Present iff Sat: the path, and its trace, which satisfies f.
  std::optional<DecodedPath> path;
  SolveResult solver;
};

/// Is there a trace of k satisfying f? Solves phi_K(k, props of f) & f and
/// decodes the witness; the decoded path is checked against k and the trace
/// against f.
ModelCheckResult model_check_percent(const KripkeStructure& k, const LtlPercentFormula& f,
                                     const SolveOptions& opt = {});

}  // namespace ltlpct
