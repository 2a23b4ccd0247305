#include "ltlpct/minsky.hpp"

#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace ltlpct {

namespace {

Formula A(const Prop& p) { return Formula::atom(p); }
Formula G(Formula f) { return Formula::always(std::move(f)); }
Formula And(Formula a, Formula b) { return Formula::conj(std::move(a), std::move(b)); }
Formula Or(Formula a, Formula b) { return Formula::disj(std::move(a), std::move(b)); }
Formula Not(Formula a) { return Formula::neg(std::move(a)); }
Formula Imp(Formula a, Formula b) { return Formula::implies(std::move(a), std::move(b)); }
Formula Iff(Formula a, Formula b) { return Formula::iff(std::move(a), std::move(b)); }

const char* sign_suffix(Sign s) { return s == Sign::Zero ? "0" : "+"; }

const char* update_suffix(int d) {
  switch (d) {
    case -1: return "-1";
    case 0: return "0";
    case 1: return "+1";
  }
  throw Error("counter update must be -1, 0 or 1, got " + std::to_string(d));
}

Sign sign_of(long v) { return v == 0 ? Sign::Zero : Sign::Pos; }

bool valid_state_name(const State& q) {
  if (!is_valid_prop_name(q)) return false;
  for (char c : q)
    if (c == '~' || c == '$' || c == '+' || c == '-') return false;
  return true;
}

std::vector<std::vector<Prop>> families(const MinskyMachine& m) {
  std::vector<Prop> from, to;
  for (const auto& q : m.states) {
    from.push_back(from_prop(q));
    to.push_back(to_prop(q));
  }
  std::vector<std::vector<Prop>> out{from, to};
  for (int c = 1; c <= 2; ++c) out.push_back({counter_prop(c, Sign::Zero), counter_prop(c, Sign::Pos)});
  for (int c = 1; c <= 2; ++c) out.push_back({update_prop(c, -1), update_prop(c, 0), update_prop(c, 1)});
  return out;
}

std::vector<Prop> step_props(const Transition& t) {
  return {from_prop(t.from), counter_prop(1, t.c1), counter_prop(2, t.c2),
          update_prop(1, t.d1), update_prop(2, t.d2), to_prop(t.to)};
}

Formula step_formula(const Transition& t) {
  std::vector<Formula> parts;
  for (const auto& p : step_props(t)) parts.push_back(A(p));
  return conj_all(parts);
}

Formula conj_not_all(const std::vector<Prop>& ps) {
  std::vector<Formula> parts;
  for (const auto& p : ps) parts.push_back(A(p));
  return Not(conj_all(parts));
}

Formula subset_guard(const std::vector<Prop>& sigma) {
  std::vector<Formula> parts;
  const std::size_t n = sigma.size();
  if (n >= 7) {
    std::vector<std::size_t> idx{0, 1, 2, 3, 4, 5, 6};
    for (;;) {
      std::vector<Prop> pick;
      for (auto i : idx) pick.push_back(sigma[i]);
      parts.push_back(conj_not_all(pick));
      int j = 6;
      while (j >= 0 && idx[j] == n - 7 + j) --j;
      if (j < 0) break;
      ++idx[j];
      for (int k = j + 1; k < 7; ++k) idx[k] = idx[k - 1] + 1;
    }
  }
  return G(conj_all(parts));
}

Formula exactly_one_guard(const MinskyMachine& m) {
  std::vector<Formula> parts;
  for (const auto& fam : families(m)) {
    std::vector<Formula> any;
    for (const auto& p : fam) any.push_back(A(p));
    parts.push_back(disj_all(any));
    for (std::size_t i = 0; i < fam.size(); ++i)
      for (std::size_t j = i + 1; j < fam.size(); ++j) parts.push_back(conj_not_all({fam[i], fam[j]}));
  }
  return G(Imp(A(kWht), conj_all(parts)));
}

// Body of isequal(alpha, beta): [wht & alpha] | [shdw & !tilde(beta)].
Formula equal_body(const Prop& alpha, const Prop& beta, const TildeMap& tm) {
  return phi_isequal(alpha, beta, tm).lhs();
}

Formula counter_tests(const MinskyMachine& m, CounterForm form, bool negated_body) {
  const TildeMap tm = minsky_tildes(m);
  std::vector<Formula> parts;
  for (int c = 1; c <= 2; ++c) {
    Formula body = equal_body(update_prop(c, 1), update_prop(c, -1), tm);
    Formula eq = Formula::half(negated_body ? Not(body) : body);
    Formula zero = A(counter_prop(c, Sign::Zero));
    parts.push_back(form == CounterForm::Equivalence ? G(Imp(A(kWht), Iff(zero, eq)))
                                                     : G(Imp(zero, eq)));
  }
  for (int c = 1; c <= 2; ++c)
    parts.push_back(G(Imp(A(kWht), Iff(A(counter_prop(c, Sign::Zero)), Not(A(counter_prop(c, Sign::Pos)))))));
  return conj_all(parts);
}

}  // namespace

std::string to_string(Sign s) { return sign_suffix(s); }

std::string format_step(const Transition& t) {
  std::ostringstream os;
  os << '(' << t.from << ',' << sign_suffix(t.c1) << ',' << sign_suffix(t.c2) << ','
     << update_suffix(t.d1) << ',' << update_suffix(t.d2) << ',' << t.to << ')';
  return os.str();
}

std::string format_run(const Run& r) {
  std::string out = "[";
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) out += ", ";
    out += format_step(r[i]);
  }
  return out + "]";
}

const Transition* MinskyMachine::find(const State& q, Sign c1, Sign c2) const {
  for (const auto& t : delta)
    if (t.from == q && t.c1 == c1 && t.c2 == c2) return &t;
  return nullptr;
}

bool MinskyMachine::has_state(const State& q) const {
  for (const auto& s : states)
    if (s == q) return true;
  return false;
}

std::vector<std::string> validate_machine(const MinskyMachine& m) {
  std::vector<std::string> errs;
  std::set<State> seen;
  for (const auto& q : m.states) {
    if (!valid_state_name(q)) errs.push_back("invalid state name '" + q + "'");
    if (!seen.insert(q).second) errs.push_back("duplicate state '" + q + "'");
  }
  if (m.states.empty()) errs.push_back("no states");
  if (!m.has_state(m.initial)) errs.push_back("initial state '" + m.initial + "' is not a state");
  std::set<std::tuple<State, Sign, Sign>> keys;
  for (const auto& t : m.delta) {
    const std::string where = "transition from " + t.from + ": ";
    if (!m.has_state(t.from)) errs.push_back(where + "unknown source state '" + t.from + "'");
    if (!m.has_state(t.to)) errs.push_back(where + "unknown target state '" + t.to + "'");
    if (t.d1 < -1 || t.d1 > 1 || t.d2 < -1 || t.d2 > 1) {
      errs.push_back(where + "counter update outside {-1,0,1}");
      continue;
    }
    if (t.d1 == -1 && t.c1 == Sign::Zero) errs.push_back(where + "decrement of zero counter 1");
    if (t.d2 == -1 && t.c2 == Sign::Zero) errs.push_back(where + "decrement of zero counter 2");
    if (t.from == t.to) errs.push_back(where + "self-loop q=q' on '" + t.from + "'");
    if (t.to == m.initial) errs.push_back(where + "transition into the initial state");
    if (!keys.emplace(t.from, t.c1, t.c2).second)
      errs.push_back(where + "several transitions for (" + t.from + "," + sign_suffix(t.c1) + "," +
                     sign_suffix(t.c2) + ")");
  }
  return errs;
}

void require_valid(const MinskyMachine& m) {
  auto errs = validate_machine(m);
  if (errs.empty()) return;
  std::string msg = "invalid machine:";
  for (const auto& e : errs) msg += "\n  " + e;
  throw Error(msg);
}

std::optional<std::string> run_violation(const MinskyMachine& m, const Run& r, bool counters) {
  if (r.empty()) return "empty run";
  if (r[0].from != m.initial || r[0].c1 != Sign::Zero || r[0].c2 != Sign::Zero)
    return "step 0 does not start in the initial configuration";
  long sum1 = 0, sum2 = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const auto& t = r[i];
    const std::string at = "step " + std::to_string(i) + ": ";
    const Transition* d = m.find(t.from, t.c1, t.c2);
    if (!d || !(*d == t)) return at + "does not match the transition function";
    if (i + 1 < r.size() && t.to != r[i + 1].from) return at + "target differs from the next source";
    if (!counters) continue;
    if (t.c1 != sign_of(sum1)) return at + "zero test of counter 1 is wrong";
    if (t.c2 != sign_of(sum2)) return at + "zero test of counter 2 is wrong";
    sum1 += t.d1;
    sum2 += t.d2;
  }
  return std::nullopt;
}

std::vector<Run> simulate(const MinskyMachine& m, std::size_t max_steps) {
  std::vector<Run> out;
  Run cur;
  State q = m.initial;
  long n1 = 0, n2 = 0;
  while (cur.size() < max_steps) {
    const Transition* t = m.find(q, sign_of(n1), sign_of(n2));
    if (!t) break;
    cur.push_back(*t);
    n1 += t->d1;
    n2 += t->d2;
    q = t->to;
    out.push_back(cur);
  }
  return out;
}

bool reaches(const MinskyMachine& m, const State& q, std::size_t max_steps) {
  auto runs = simulate(m, max_steps);
  if (runs.empty()) return false;
  for (const auto& t : runs.back())
    if (t.to == q) return true;
  return false;
}

Prop from_prop(const State& q) { return "from_" + q; }
Prop to_prop(const State& q) { return "to_" + q; }

Prop counter_prop(int counter, Sign s) {
  if (counter != 1 && counter != 2) throw Error("counter index must be 1 or 2");
  return "c" + std::to_string(counter) + "_" + sign_suffix(s);
}

Prop update_prop(int counter, int d) {
  if (counter != 1 && counter != 2) throw Error("counter index must be 1 or 2");
  return "i" + std::to_string(counter) + "_" + update_suffix(d);
}

std::vector<Prop> sigma_minsky(const MinskyMachine& m) {
  std::vector<Prop> out;
  for (const auto& q : m.states) {
    out.push_back(from_prop(q));
    out.push_back(to_prop(q));
  }
  for (int c = 1; c <= 2; ++c)
    for (Sign s : {Sign::Zero, Sign::Pos}) out.push_back(counter_prop(c, s));
  for (int c = 1; c <= 2; ++c)
    for (int d : {-1, 0, 1}) out.push_back(update_prop(c, d));
  return out;
}

TildeMap minsky_tildes(const MinskyMachine& m) {
  auto s = sigma_minsky(m);
  return TildeMap::suffixed({s.begin(), s.end()});
}

Alphabet minsky_alphabet(const MinskyMachine& m) {
  std::vector<Prop> props{kWht, kShdw};
  const auto sigma = sigma_minsky(m);
  props.insert(props.end(), sigma.begin(), sigma.end());
  for (const auto& s : sigma) props.push_back(s + "~");
  return Alphabet(std::move(props));
}

Word encode_word(const Run& r) {
  if (r.empty()) throw Error("cannot encode an empty run");
  std::vector<Letter> pos;
  for (const auto& t : r) {
    Letter white{kWht}, shadow{kShdw};
    for (const auto& p : step_props(t)) {
      white.insert(p);
      shadow.insert(p + "~");
    }
    pos.push_back(std::move(white));
    pos.push_back(std::move(shadow));
  }
  return Word(std::move(pos));
}

Run run_of(const Word& w) {
  if (w.size() % 2 != 0) throw Error("run_of needs an even-length word");
  auto pick = [&](std::size_t p, const std::string& prefix, const std::vector<std::string>& suffixes) {
    std::vector<std::string> found;
    for (const auto& s : suffixes)
      if (w.holds(p, prefix + s)) found.push_back(s);
    if (found.size() != 1)
      throw Error("position " + std::to_string(p) + ": " + (found.empty() ? "no" : "several") + " '" +
                  prefix + "' props");
    return found[0];
  };
  auto pick_state = [&](std::size_t p, const std::string& prefix) {
    std::vector<State> found;
    for (const auto& q : w[p])
      if (q.rfind(prefix, 0) == 0 && q.back() != '~') found.push_back(q.substr(prefix.size()));
    if (found.size() != 1)
      throw Error("position " + std::to_string(p) + ": " + (found.empty() ? "no" : "several") + " '" +
                  prefix + "' props");
    return found[0];
  };
  auto sign = [](const std::string& s) { return s == "0" ? Sign::Zero : Sign::Pos; };
  auto upd = [](const std::string& s) { return s == "-1" ? -1 : s == "0" ? 0 : 1; };
  Run r;
  for (std::size_t p = 0; p < w.size(); p += 2) {
    Transition t;
    t.from = pick_state(p, "from_");
    t.c1 = sign(pick(p, "c1_", {"0", "+"}));
    t.c2 = sign(pick(p, "c2_", {"0", "+"}));
    t.d1 = upd(pick(p, "i1_", {"-1", "0", "+1"}));
    t.d2 = upd(pick(p, "i2_", {"-1", "0", "+1"}));
    t.to = pick_state(p, "to_");
    r.push_back(std::move(t));
  }
  return r;
}

Formula psi_p1(const MinskyMachine& m) {
  return conj_all({A(from_prop(m.initial)), A(counter_prop(1, Sign::Zero)), A(counter_prop(2, Sign::Zero))});
}

Formula psi_p2_delta(const MinskyMachine& m) {
  std::vector<Formula> alts;
  for (const auto& t : m.delta) alts.push_back(step_formula(t));
  return G(Imp(A(kWht), disj_all(alts)));
}

Formula psi_p2_guard(const MinskyMachine& m, GuardForm g, bool* subset) {
  const auto sigma = sigma_minsky(m);
  const bool use_subsets = g == GuardForm::Subsets || (g == GuardForm::Auto && sigma.size() <= 12);
  if (subset) *subset = use_subsets;
  return use_subsets ? subset_guard(sigma) : exactly_one_guard(m);
}

Formula psi_enc_basics(const MinskyMachine& m, const MinskyOptions& opt) {
  const auto sigma = sigma_minsky(m);
  return conj_all({psi_truly_shadowy({sigma.begin(), sigma.end()}, minsky_tildes(m)), psi_p1(m),
                   psi_p2_delta(m), psi_p2_guard(m, opt.guard)});
}

Formula psi_p3(const MinskyMachine& m) {
  const TildeMap tm = minsky_tildes(m);
  std::vector<Formula> parts;
  for (const auto& q : m.states) {
    if (q == m.initial) continue;
    parts.push_back(Or(A(from_prop(q)), phi_isequal(from_prop(q), to_prop(q), tm)));
  }
  return G(Imp(A(kWht), conj_all(parts)));
}

Formula psi_p4(const MinskyMachine& m, CounterForm form) { return counter_tests(m, form, false); }

MinskyFormula psi_minsky(const MinskyMachine& m, const MinskyOptions& opt) {
  require_valid(m);
  MinskyFormula out;
  const auto sigma = sigma_minsky(m);
  Formula guard = psi_p2_guard(m, opt.guard, &out.subset_guard);
  out.formula = conj_all({psi_truly_shadowy({sigma.begin(), sigma.end()}, minsky_tildes(m)), psi_p1(m),
                          psi_p2_delta(m), guard, psi_p3(m), psi_p4(m, opt.counters)});
  out.ctx = minsky_alphabet(m);
  out.counters = opt.counters;
  return out;
}

MinskyFormula psi_minsky_q(const MinskyMachine& m, const State& q, const MinskyOptions& opt) {
  if (!m.has_state(q)) throw Error("'" + q + "' is not a state of the machine");
  MinskyFormula out = psi_minsky(m, opt);
  out.formula = And(out.formula, Formula::eventually(A(to_prop(q))));
  return out;
}

MinskyFormula psi_minsky_mfl_q(const MinskyMachine& m, const State& q, const MinskyOptions& opt) {
  require_valid(m);
  if (!m.has_state(q)) throw Error("'" + q + "' is not a state of the machine");
  MinskyFormula out;
  const TildeMap tm = minsky_tildes(m);
  std::vector<Formula> parts{psi_shadowy_mfl()};
  for (const auto& s : sigma_minsky(m)) {
    parts.push_back(G(Imp(A(s), A(kWht))));
    parts.push_back(G(Imp(A(tm.tilde(s)), A(kShdw))));
    parts.push_back(phi_heart(s, tm));
    parts.push_back(phi_diamond(s, tm));
  }
  parts.push_back(psi_p1(m));
  parts.push_back(psi_p2_delta(m));
  parts.push_back(psi_p2_guard(m, opt.guard, &out.subset_guard));
  parts.push_back(psi_p3(m));
  parts.push_back(counter_tests(m, opt.counters, true));
  parts.push_back(Formula::eventually(A(to_prop(q))));

  const Alphabet base = minsky_alphabet(m);
  FreshProps fresh(base.as_set());
  Dehalfed d = dehalf(conj_all(parts), fresh);
  out.formula = And(d.formula, d.definitions_formula());
  out.definitions = d.definitions;
  std::vector<Prop> defs;
  for (const auto& def : d.definitions) defs.push_back(def.first);
  out.ctx = base.extended(defs);
  out.counters = opt.counters;
  return out;
}

std::vector<Word> single_mutants(const Word& w, const Alphabet& ctx) {
  std::vector<Word> out;
  for (std::size_t p = 0; p < w.size(); ++p) {
    for (const auto& prop : ctx.props()) {
      std::vector<Letter> pos = w.positions();
      if (!pos[p].erase(prop)) pos[p].insert(prop);
      out.emplace_back(std::move(pos));
    }
  }
  return out;
}

std::vector<Word> paired_mutants(const Word& w, const MinskyMachine& m) {
  std::vector<Word> out;
  auto toggle = [](Letter& l, const Prop& p) {
    if (!l.erase(p)) l.insert(p);
  };
  for (std::size_t p = 0; p + 1 < w.size(); p += 2) {
    for (const auto& s : sigma_minsky(m)) {
      std::vector<Letter> pos = w.positions();
      toggle(pos[p], s);
      toggle(pos[p + 1], s + "~");
      out.emplace_back(std::move(pos));
    }
    for (const auto& fam : families(m)) {
      for (const auto& have : fam) {
        if (!w.holds(p, have)) continue;
        for (const auto& other : fam) {
          if (other == have) continue;
          std::vector<Letter> pos = w.positions();
          pos[p].erase(have);
          pos[p].insert(other);
          pos[p + 1].erase(have + "~");
          pos[p + 1].insert(other + "~");
          out.emplace_back(std::move(pos));
        }
      }
    }
  }
  return out;
}

}  // namespace ltlpct
