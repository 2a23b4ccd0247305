#include "ltlpct/kripke.hpp"

#include <algorithm>

#include "ltlpct/semantics.hpp"

namespace ltlpct {

namespace {

bool valid_state_name(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

bool reserved(const Prop& p) { return p.rfind(kStatePropPrefix, 0) == 0; }

Formula A(const Prop& p) { return Formula::atom(p); }

}  // namespace

const Letter& KripkeStructure::label(const std::string& s) const {
  static const Letter none;
  auto it = labels.find(s);
  return it == labels.end() ? none : it->second;
}

std::vector<std::string> KripkeStructure::successors(const std::string& s) const {
  std::vector<std::string> out;
  for (const auto& [a, b] : edges)
    if (a == s && std::find(out.begin(), out.end(), b) == out.end()) out.push_back(b);
  return out;
}

std::set<Prop> KripkeStructure::label_props() const {
  std::set<Prop> out;
  for (const auto& [s, l] : labels) out.insert(l.begin(), l.end());
  return out;
}

KripkeDiagnostics validate_kripke(const KripkeStructure& k) {
  KripkeDiagnostics d;
  std::set<std::string> known;
  for (const auto& s : k.states) {
    if (!valid_state_name(s)) d.errors.push_back("invalid state name '" + s + "'");
    if (!known.insert(s).second) d.errors.push_back("duplicate state '" + s + "'");
  }
  if (k.states.empty()) d.errors.push_back("no states");
  for (const auto& s : k.initial)
    if (!known.count(s)) d.errors.push_back("unknown initial state '" + s + "'");
  for (const auto& [a, b] : k.edges)
    for (const auto& s : {a, b})
      if (!known.count(s)) d.errors.push_back("edge (" + a + ", " + b + ") uses unknown state '" + s + "'");
  for (const auto& [s, l] : k.labels) {
    if (!known.count(s)) d.errors.push_back("label for unknown state '" + s + "'");
    for (const auto& p : l)
      if (!is_valid_prop_name(p) || p.find('$') != std::string::npos)
        d.errors.push_back("invalid label prop '" + p + "' on state '" + s + "'");
  }
  for (const auto& s : k.states)
    if (k.successors(s).empty()) d.errors.push_back("state '" + s + "' has no successor");
  if (k.initial.empty()) d.warnings.push_back("no initial state: there are no traces");

  std::set<std::string> seen(k.initial.begin(), k.initial.end());
  std::vector<std::string> todo(k.initial.begin(), k.initial.end());
  while (!todo.empty()) {
    const auto s = todo.back();
    todo.pop_back();
    for (const auto& t : k.successors(s))
      if (seen.insert(t).second) todo.push_back(t);
  }
  for (const auto& s : k.states)
    if (!seen.count(s) && !k.initial.empty()) d.warnings.push_back("state '" + s + "' is unreachable");
  return d;
}

void require_valid(const KripkeStructure& k) {
  const auto d = validate_kripke(k);
  if (d.errors.empty()) return;
  std::string msg = "invalid Kripke structure:";
  for (const auto& e : d.errors) msg += "\n  " + e;
  throw Error(msg);
}

std::vector<Word> traces(const KripkeStructure& k, std::size_t max_len) {
  // Each distinct trace of the current length with the states it can end in.
  std::map<Word, std::set<std::string>> layer;
  for (const auto& s : k.initial) layer[Word{k.label(s)}].insert(s);
  std::vector<Word> out;
  for (std::size_t len = 1; len <= max_len && !layer.empty(); ++len) {
    std::map<Word, std::set<std::string>> next;
    for (const auto& [w, ends] : layer) {
      out.push_back(w);
      if (len == max_len) continue;
      for (const auto& s : ends)
        for (const auto& t : k.successors(s)) {
          std::vector<Letter> pos = w.positions();
          pos.push_back(k.label(t));
          next[Word(std::move(pos))].insert(t);
        }
    }
    layer = std::move(next);
  }
  return out;
}

KripkeStructure universal_structure(const std::set<Prop>& sigma, std::size_t cap) {
  if (sigma.size() > cap)
    throw Error("universal structure over " + std::to_string(sigma.size()) + " props exceeds the cap of " +
                std::to_string(cap));
  const std::vector<Prop> props(sigma.begin(), sigma.end());
  KripkeStructure k;
  const std::size_t n = std::size_t{1} << props.size();
  for (std::size_t m = 0; m < n; ++m) {
    const std::string s = "s" + std::to_string(m);
    k.states.push_back(s);
    k.initial.push_back(s);
    Letter l;
    for (std::size_t j = 0; j < props.size(); ++j)
      if ((m >> j) & 1U) l.insert(props[j]);
    k.labels[s] = l;
  }
  for (const auto& a : k.states)
    for (const auto& b : k.states) k.edges.emplace_back(a, b);
  return k;
}

std::optional<Word> model_check_bounded(const KripkeStructure& k, const Formula& f, std::size_t max_len) {
  auto props = props_of(f);
  const auto lp = k.label_props();
  props.insert(lp.begin(), lp.end());
  const CompiledFormula c(f, Alphabet::of(props));
  for (auto& w : traces(k, max_len))
    if (c.eval(w)) return std::move(w);
  return std::nullopt;
}

Prop state_prop(const std::string& state) { return kStatePropPrefix + state; }

Formula phi_K(const KripkeStructure& k, const std::set<Prop>& extra, LabelForm form) {
  require_valid(k);
  std::set<Prop> all = k.label_props();
  all.insert(extra.begin(), extra.end());
  for (const auto& p : all)
    if (reserved(p)) throw Error("prop '" + p + "' collides with the state props");

  std::vector<Formula> init;
  for (const auto& s : k.initial) init.push_back(A(state_prop(s)));

  std::vector<Formula> steps;
  for (const auto& [a, b] : k.edges) steps.push_back(Formula::conj(A(state_prop(a)), Formula::next(A(state_prop(b)))));

  // Clauses (3) and (4) share one G.
  std::vector<Formula> local;
  local.push_back(Formula::implies(Formula::next(Formula::tt()), disj_all(steps)));
  std::vector<Formula> some;
  for (std::size_t i = 0; i < k.states.size(); ++i) {
    const Formula s = A(state_prop(k.states[i]));
    some.push_back(s);
    std::vector<Formula> lab;
    const Letter& l = k.label(k.states[i]);
    for (const auto& p : all) {
      if (l.count(p)) lab.push_back(A(p));
      else if (form == LabelForm::Exact) lab.push_back(Formula::neg(A(p)));
    }
    for (std::size_t j = i + 1; j < k.states.size(); ++j) lab.push_back(Formula::neg(A(state_prop(k.states[j]))));
    if (!lab.empty()) local.push_back(Formula::implies(s, conj_all(lab)));
  }
  local.push_back(disj_all(some));
  return Formula::conj(disj_all(init), Formula::always(conj_all(local)));
}

std::optional<DecodedPath> decode_path(const KripkeStructure& k, const Word& w) {
  std::vector<std::string> states;
  std::vector<Letter> trace;
  for (const auto& l : w) {
    const std::string* found = nullptr;
    for (const auto& s : k.states)
      if (l.count(state_prop(s))) {
        if (found) return std::nullopt;
        found = &s;
      }
    if (!found) return std::nullopt;
    states.push_back(*found);
    trace.push_back(k.label(*found));
  }
  return DecodedPath{std::move(states), Word(std::move(trace))};
}

ModelCheckResult model_check_percent(const KripkeStructure& k, const LtlPercentFormula& f, const SolveOptions& opt) {
  const Formula g = Formula::conj(phi_K(k, props_of(f.formula())), f.formula());
  ModelCheckResult out;
  out.solver = solve(validate_percent_fragment(g), opt);
  out.verdict = out.solver.verdict;
  if (out.verdict != Verdict::Sat) return out;
  auto path = decode_path(k, *out.solver.witness);
  if (!path) throw Error("internal: witness does not carry one state per position");
  const auto& st = path->states;
  if (std::find(k.initial.begin(), k.initial.end(), st[0]) == k.initial.end())
    throw Error("internal: witness path does not start in an initial state");
  for (std::size_t i = 0; i + 1 < st.size(); ++i) {
    const auto succ = k.successors(st[i]);
    if (std::find(succ.begin(), succ.end(), st[i + 1]) == succ.end())
      throw Error("internal: witness path uses a missing edge");
  }
  auto ctx = Alphabet::of(props_of(f.formula())).extended(path->trace.props());
  if (!eval(path->trace, f.formula(), ctx)) throw Error("internal: decoded trace does not satisfy the formula");
  out.path = std::move(path);
  return out;
}

}  // namespace ltlpct
