#include "ltlpct/library.hpp"

#include <unordered_map>

#include "ltlpct/semantics.hpp"

namespace ltlpct {

namespace {

Formula A(const Prop& p) { return Formula::atom(p); }
Formula G(Formula f) { return Formula::always(std::move(f)); }
Formula Fe(Formula f) { return Formula::eventually(std::move(f)); }
Formula And(Formula a, Formula b) { return Formula::conj(std::move(a), std::move(b)); }
Formula Or(Formula a, Formula b) { return Formula::disj(std::move(a), std::move(b)); }
Formula Not(Formula a) { return Formula::neg(std::move(a)); }
Formula Imp(Formula a, Formula b) { return Formula::implies(std::move(a), std::move(b)); }
Formula Iff(Formula a, Formula b) { return Formula::iff(std::move(a), std::move(b)); }

}  // namespace

TildeMap::TildeMap(std::map<Prop, Prop> pairs) : pairs_(std::move(pairs)) {
  std::set<Prop> seen;
  for (const auto& [s, t] : pairs_) {
    if (s == t) throw Error("tilde of '" + s + "' must differ from it");
    if (s == kWht || s == kShdw || t == kWht || t == kShdw)
      throw Error("wht and shdw cannot take part in a tilde map");
    if (!seen.insert(t).second) throw Error("tilde map is not injective at '" + t + "'");
  }
  for (const auto& t : seen)
    if (pairs_.count(t)) throw Error("tilde prop '" + t + "' is also a key");
}

TildeMap TildeMap::suffixed(const std::set<Prop>& keys) {
  std::map<Prop, Prop> m;
  for (const auto& k : keys) m.emplace(k, k + "~");
  return TildeMap(std::move(m));
}

const Prop& TildeMap::tilde(const Prop& sigma) const {
  auto it = pairs_.find(sigma);
  if (it == pairs_.end()) throw Error("no tilde companion for '" + sigma + "'");
  return it->second;
}

std::set<Prop> TildeMap::keys() const {
  std::set<Prop> out;
  for (const auto& kv : pairs_) out.insert(kv.first);
  return out;
}

std::set<Prop> TildeMap::values() const {
  std::set<Prop> out;
  for (const auto& kv : pairs_) out.insert(kv.second);
  return out;
}

FreshProps::FreshProps(std::set<Prop> avoid, std::string prefix)
    : avoid_(std::move(avoid)), prefix_(std::move(prefix)) {}

Prop FreshProps::next() {
  for (;;) {
    Prop p = prefix_ + std::to_string(counter_++);
    if (avoid_.insert(p).second) return p;
  }
}

void FreshProps::avoid(const std::set<Prop>& props) { avoid_.insert(props.begin(), props.end()); }

bool is_reserved_prop(const Prop& p) { return p.find('$') != Prop::npos; }

Formula phi_init() {
  return And(A(kWht), And(G(Iff(A(kWht), Not(A(kShdw)))), G(Imp(A(kWht), Fe(A(kShdw))))));
}

Formula phi_odd() { return G(Iff(Formula::half(A(kWht)), A(kWht))); }

Formula psi_shadowy() { return And(phi_init(), phi_odd()); }

Formula phi_last() { return G(A(kShdw)); }

Formula phi_stl() { return And(A(kWht), G(Or(A(kWht), phi_last()))); }

Formula heart_body(const Prop& sigma, const TildeMap& tm) {
  return Formula::half(Or(And(A(kWht), A(sigma)), And(A(kShdw), Not(A(tm.tilde(sigma))))));
}

Formula phi_heart(const Prop& sigma, const TildeMap& tm) {
  return G(Imp(A(kWht), heart_body(sigma, tm)));
}

Formula phi_diamond(const Prop& sigma, const TildeMap& tm) {
  return Iff(Fe(And(phi_stl(), A(sigma))), Fe(And(phi_last(), A(tm.tilde(sigma)))));
}

Formula transfer_conjuncts(const Prop& sigma, const TildeMap& tm) {
  const Prop& t = tm.tilde(sigma);
  return conj_all({G(Imp(A(sigma), A(kWht))), G(Imp(A(t), A(kShdw))), phi_heart(sigma, tm),
                   phi_diamond(sigma, tm)});
}

Formula phi_transfer(const Prop& sigma, const TildeMap& tm) {
  return And(psi_shadowy(), transfer_conjuncts(sigma, tm));
}

Formula psi_truly_shadowy(const std::set<Prop>& sigma, const TildeMap& tm) {
  std::vector<Formula> parts{psi_shadowy()};
  for (const auto& s : sigma) parts.push_back(transfer_conjuncts(s, tm));
  return conj_all(parts);
}

Formula phi_isequal(const Prop& alpha, const Prop& beta, const TildeMap& tm) {
  if (alpha == beta) throw Error("phi_isequal needs two different props");
  return Formula::half(Or(And(A(kWht), A(alpha)), And(A(kShdw), Not(A(tm.tilde(beta))))));
}

Formula phi_odd_mfl() {
  return G(And(Formula::most_frequent(kWht), Iff(A(kWht), Formula::most_frequent(kShdw))));
}

Formula psi_shadowy_mfl() { return And(phi_init(), phi_odd_mfl()); }

Formula Dehalfed::definitions_formula() const {
  std::vector<Formula> parts;
  for (const auto& [p, lambda] : definitions) parts.push_back(G(Iff(A(p), lambda)));
  return conj_all(parts);
}

Dehalfed dehalf(const Formula& f, FreshProps& fresh) {
  fresh.avoid(props_of(f));
  Dehalfed out;
  std::unordered_map<Formula, Prop, FormulaHash> named;
  for (const auto& g : subformulas(f)) {
    if (g.op() != Op::Half) continue;
    if (contains_op(g.lhs(), Op::Half)) throw Error("dehalfication does not support nested Half");
    if (named.count(g.lhs())) continue;
    Prop p = fresh.next();
    named.emplace(g.lhs(), p);
    out.definitions.emplace_back(p, g.lhs());
  }
  out.formula = f;
  for (const auto& [p, lambda] : out.definitions)
    out.formula = substitute(out.formula, Formula::half(lambda), Formula::most_frequent(p));
  return out;
}

Word label_definitions(const Word& w, const std::vector<std::pair<Prop, Formula>>& definitions) {
  std::vector<Letter> pos = w.positions();
  std::set<Prop> ctx_props = w.props();
  for (const auto& d : definitions) {
    auto ps = props_of(d.second);
    ctx_props.insert(ps.begin(), ps.end());
  }
  const Alphabet ctx = Alphabet::of(ctx_props);
  for (const auto& [p, lambda] : definitions) {
    const auto t = CompiledFormula(lambda, ctx).truth(w);
    for (std::size_t i = 0; i < t.size(); ++i)
      if (t[i]) pos[i].insert(p);
  }
  return Word(std::move(pos));
}

bool is_shadowy(const Word& w) {
  if (w.size() % 2 != 0) return false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const bool wh = w.holds(i, kWht), sh = w.holds(i, kShdw);
    if (i % 2 == 0 ? (!wh || sh) : (!sh || wh)) return false;
  }
  return true;
}

bool transfer_conditions(const Word& w, const Prop& sigma, const TildeMap& tm) {
  if (!is_shadowy(w)) return false;
  const Prop& t = tm.tilde(sigma);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i % 2 == 1 && w.holds(i, sigma)) return false;
    if (i % 2 == 0 && w.holds(i, t)) return false;
    if (i % 2 == 0 && w.holds(i, sigma) != w.holds(i + 1, t)) return false;
  }
  return true;
}

bool is_truly_shadowy(const Word& w, const std::set<Prop>& sigma, const TildeMap& tm) {
  if (!is_shadowy(w)) return false;
  for (const auto& s : sigma)
    if (!transfer_conditions(w, s, tm)) return false;
  return true;
}

bool is_strongly_shadowy(const Word& w, const Alphabet& ctx) {
  if (!is_shadowy(w)) return false;
  std::set<Prop> letters = ctx.as_set();
  const auto wp = w.props();
  letters.insert(wp.begin(), wp.end());
  std::map<Prop, std::size_t> count;
  for (std::size_t p = 0; p < w.size(); ++p) {
    for (const auto& tau : letters) {
      if (count[tau] > count[kWht]) return false;
      if (p % 2 == 0 && count[tau] > count[kShdw]) return false;
    }
    for (const auto& q : w[p]) ++count[q];
  }
  return true;
}

std::set<Prop> importunate_props(const Word& w) {
  std::set<Prop> out;
  std::map<Prop, std::size_t> count;
  for (std::size_t p = 0; p < w.size(); ++p) {
    if (p % 2 == 0)
      for (const auto& [q, c] : count)
        if (c > p / 2) out.insert(q);
    for (const auto& q : w[p]) ++count[q];
  }
  return out;
}

namespace {
bool coin(Rng& rng) { return (rng() & 1U) != 0; }
}  // namespace

Word random_shadowy(Rng& rng, std::size_t pairs, const std::vector<Prop>& white_extra,
                    const std::vector<Prop>& shadow_extra) {
  if (pairs == 0) throw Error("shadowy words have at least one white/shadow pair");
  std::vector<Letter> pos;
  for (std::size_t i = 0; i < pairs; ++i) {
    Letter wl{kWht}, sl{kShdw};
    for (const auto& p : white_extra)
      if (coin(rng)) wl.insert(p);
    for (const auto& p : shadow_extra)
      if (coin(rng)) sl.insert(p);
    pos.push_back(std::move(wl));
    pos.push_back(std::move(sl));
  }
  return Word(std::move(pos));
}

Word random_truly_shadowy(Rng& rng, std::size_t pairs, const std::set<Prop>& sigma,
                          const TildeMap& tm) {
  if (pairs == 0) throw Error("shadowy words have at least one white/shadow pair");
  std::vector<Letter> pos;
  for (std::size_t i = 0; i < pairs; ++i) {
    Letter wl{kWht}, sl{kShdw};
    for (const auto& s : sigma) {
      if (coin(rng)) {
        wl.insert(s);
        sl.insert(tm.tilde(s));
      }
    }
    pos.push_back(std::move(wl));
    pos.push_back(std::move(sl));
  }
  return Word(std::move(pos));
}

Word random_strongly_shadowy(Rng& rng, std::size_t pairs, const std::vector<Prop>& extra) {
  if (pairs == 0) throw Error("shadowy words have at least one white/shadow pair");
  const std::size_t n = 2 * pairs;
  std::vector<Letter> pos(n);
  std::map<Prop, std::size_t> count;
  for (std::size_t p = 0; p < n; ++p) {
    pos[p].insert(p % 2 == 0 ? kWht : kShdw);
    for (const auto& q : extra) {
      // Labels of the last position never enter a past count.
      const bool fits = p + 1 == n || count[q] + 1 <= (p + 2) / 2;
      if (fits && coin(rng)) {
        pos[p].insert(q);
        ++count[q];
      }
    }
  }
  return Word(std::move(pos));
}

}  // namespace ltlpct
