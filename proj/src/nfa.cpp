#include "ltlpct/nfa.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <map>
#include <unordered_map>

namespace ltlpct {

namespace {

using Bits = std::vector<std::uint64_t>;

bool get(const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1U; }
void set(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }

// Bottom-up evaluation of the closure at one position from the letter there
// and the values of the tracked nodes one position later.
class Closure {
 public:
  Closure(const Formula& f, const Alphabet& ctx) {
    if (!f.is_pure_ltl()) throw Error("automaton construction needs a formula without counting operators");
    nodes_ = subformulas(f);
    std::unordered_map<Formula, std::size_t, FormulaHash> index;
    for (std::size_t i = 0; i < nodes_.size(); ++i) index.emplace(nodes_[i], i);
    kids_.resize(nodes_.size(), {0, 0});
    atom_.resize(nodes_.size(), 0);
    std::vector<bool> needs_next(nodes_.size(), false);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const Formula& n = nodes_[i];
      for (std::size_t c = 0; c < n.arity(); ++c) kids_[i][c] = index.at(n.child(c));
      switch (n.op()) {
        case Op::Atom: {
          auto j = ctx.index(n.prop());
          if (!j) throw Error("prop '" + n.prop() + "' is not in the automaton context");
          atom_[i] = *j;
          break;
        }
        case Op::Next: needs_next[kids_[i][0]] = true; break;
        case Op::Finally:
        case Op::Globally:
        case Op::Until: needs_next[i] = true; break;
        default: break;
      }
    }
    root_ = nodes_.size() - 1;
    needs_next[root_] = true;
    slot_.assign(nodes_.size(), SIZE_MAX);
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      if (needs_next[i]) slot_[i] = tracked_++;
    vals_.resize(nodes_.size());

    // A G conjunct of the root holds at 0, hence everywhere on a model.
    std::vector<std::size_t> todo{root_};
    while (!todo.empty()) {
      const std::size_t i = todo.back();
      todo.pop_back();
      if (nodes_[i].op() == Op::And) {
        todo.push_back(kids_[i][0]);
        todo.push_back(kids_[i][1]);
      } else if (nodes_[i].op() == Op::Globally) {
        invariant_.push_back(slot_[i]);
      }
    }
  }

  std::size_t words() const { return (tracked_ + 63) / 64; }
  bool root_holds(const Bits& s) const { return get(s, slot_[root_]); }
  // False for states no model passes through.
  bool admissible(const Bits& s) const {
    return std::all_of(invariant_.begin(), invariant_.end(), [&](std::size_t j) { return get(s, j); });
  }

  // State at a position given its letter and the state one step later
  // (nullptr: the position is the last one).
  Bits step(const Bits* later, std::uint64_t letter) {
    auto nx = [&](std::size_t i) { return later && get(*later, slot_[i]); };
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const auto& k = kids_[i];
      bool v = false;
      switch (nodes_[i].op()) {
        case Op::True: v = true; break;
        case Op::False: v = false; break;
        case Op::Atom: v = (letter >> atom_[i]) & 1U; break;
        case Op::Not: v = !vals_[k[0]]; break;
        case Op::And: v = vals_[k[0]] && vals_[k[1]]; break;
        case Op::Or: v = vals_[k[0]] || vals_[k[1]]; break;
        case Op::Implies: v = !vals_[k[0]] || vals_[k[1]]; break;
        case Op::Iff: v = vals_[k[0]] == vals_[k[1]]; break;
        case Op::Next: v = nx(k[0]); break;
        case Op::Finally: v = vals_[k[0]] || nx(i); break;
        case Op::Globally: v = vals_[k[0]] && (!later || nx(i)); break;
        case Op::Until: v = vals_[k[1]] || (vals_[k[0]] && nx(i)); break;
        default: break;
      }
      vals_[i] = v;
    }
    Bits out(words(), 0);
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      if (slot_[i] != SIZE_MAX && vals_[i]) set(out, slot_[i]);
    return out;
  }

 private:
  std::vector<Formula> nodes_;
  std::vector<std::array<std::size_t, 2>> kids_;
  std::vector<std::size_t> atom_;
  std::vector<std::size_t> slot_;
  std::vector<std::size_t> invariant_;
  std::vector<char> vals_;
  std::size_t tracked_ = 0;
  std::size_t root_ = 0;
};

std::vector<std::vector<std::pair<std::uint64_t, std::size_t>>> forward_lists(const Nfa& a) {
  std::vector<std::vector<std::pair<std::uint64_t, std::size_t>>> out(a.num_states);
  for (const auto& e : a.edges) out[e.from].emplace_back(e.letter, e.to);
  return out;
}

}  // namespace

bool Nfa::accepts(const Word& w) const {
  check_word_in(w, ctx);
  return accepts_letters(encode_letters(ctx, w));
}

bool Nfa::accepts_letters(const std::vector<std::uint64_t>& letters) const {
  if (letters.empty()) return false;
  const auto fwd = forward_lists(*this);
  std::vector<bool> cur(num_states, false);
  for (auto s : initial) cur[s] = true;
  for (auto l : letters) {
    std::vector<bool> nxt(num_states, false);
    for (std::size_t s = 0; s < num_states; ++s)
      if (cur[s])
        for (const auto& [lt, t] : fwd[s])
          if (lt == l) nxt[t] = true;
    cur = std::move(nxt);
  }
  for (std::size_t s = 0; s < num_states; ++s)
    if (cur[s] && final[s]) return true;
  return false;
}

bool Nfa::empty() const {
  const auto fwd = forward_lists(*this);
  std::vector<bool> seen(num_states, false);
  std::vector<std::size_t> stack(initial.begin(), initial.end());
  for (auto s : initial) seen[s] = true;
  while (!stack.empty()) {
    auto s = stack.back();
    stack.pop_back();
    for (const auto& e : fwd[s]) {
      if (final[e.second]) return false;
      if (!seen[e.second]) {
        seen[e.second] = true;
        stack.push_back(e.second);
      }
    }
  }
  return true;
}

Nfa ltl_to_nfa(const Formula& f, const Alphabet& ctx) {
  if (ctx.size() > kMaxNfaContext)
    throw Error("automaton context of " + std::to_string(ctx.size()) + " props exceeds the limit of " +
                std::to_string(kMaxNfaContext));
  Closure cl(f, ctx);
  const std::uint64_t letters = std::uint64_t{1} << ctx.size();

  // Reverse exploration from the end of the word. State 0 is "past the
  // end" and the only final state.
  std::map<Bits, std::size_t> id;
  std::vector<Bits> states{Bits{}};
  std::vector<NfaEdge> edges;
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t later = queue.front();
    queue.pop_front();
    for (std::uint64_t l = 0; l < letters; ++l) {
      Bits s = cl.step(later == 0 ? nullptr : &states[later], l);
      if (!cl.admissible(s)) continue;
      auto [it, fresh] = id.emplace(std::move(s), states.size());
      if (fresh) {
        states.push_back(it->first);
        queue.push_back(it->second);
      }
      edges.push_back({it->second, l, later});
    }
  }

  // Keep what is reachable from the initial states.
  std::vector<std::vector<std::size_t>> succ(states.size());
  for (const auto& e : edges) succ[e.from].push_back(e.to);
  std::vector<long> renum(states.size(), -1);
  std::vector<std::size_t> order;
  std::vector<std::size_t> stack;
  for (std::size_t s = 1; s < states.size(); ++s)
    if (cl.root_holds(states[s])) {
      renum[s] = 0;
      stack.push_back(s);
    }
  const std::vector<std::size_t> roots = stack;
  while (!stack.empty()) {
    auto s = stack.back();
    stack.pop_back();
    order.push_back(s);
    for (auto t : succ[s])
      if (renum[t] < 0) {
        renum[t] = 0;
        stack.push_back(t);
      }
  }
  std::sort(order.begin(), order.end());
  for (std::size_t i = 0; i < order.size(); ++i) renum[order[i]] = static_cast<long>(i);

  Nfa out;
  out.ctx = ctx;
  out.num_states = order.size();
  out.final.assign(order.size(), false);
  for (auto s : order)
    if (s == 0) out.final[renum[s]] = true;
  for (auto s : roots) out.initial.push_back(renum[s]);
  std::sort(out.initial.begin(), out.initial.end());
  for (const auto& e : edges)
    if (renum[e.from] >= 0 && renum[e.to] >= 0)
      out.edges.push_back({static_cast<std::size_t>(renum[e.from]), e.letter, static_cast<std::size_t>(renum[e.to])});
  return out;
}

std::size_t Dfa::num_edges() const {
  std::size_t n = 0;
  for (const auto& row : next)
    for (auto t : row) n += t >= 0;
  return n;
}

bool Dfa::accepts_letters(const std::vector<std::uint64_t>& letters) const {
  if (letters.empty()) return false;
  long s = static_cast<long>(initial);
  for (auto l : letters) {
    if (l >= next[s].size()) return false;
    s = next[s][l];
    if (s < 0) return false;
  }
  return final[s];
}

std::uint64_t project_letter(std::uint64_t letter, const Alphabet& from, const Alphabet& to) {
  std::uint64_t out = 0;
  for (std::size_t j = 0; j < to.size(); ++j) {
    auto i = from.index(to[j]);
    if (!i) throw Error("prop '" + to[j] + "' is not in the automaton context");
    if ((letter >> *i) & 1U) out |= std::uint64_t{1} << j;
  }
  return out;
}

Dfa project_minimal_dfa(const Nfa& nfa, const Alphabet& keep) {
  if (keep.size() > kMaxNfaContext) throw Error("projection alphabet too large");
  const std::size_t L = std::size_t{1} << keep.size();
  std::vector<std::vector<std::vector<std::size_t>>> adj(nfa.num_states,
                                                         std::vector<std::vector<std::size_t>>(L));
  for (const auto& e : nfa.edges) adj[e.from][project_letter(e.letter, nfa.ctx, keep)].push_back(e.to);

  // Subset construction.
  using Set = std::vector<std::size_t>;
  std::map<Set, std::size_t> id;
  std::vector<Set> sets;
  std::vector<std::vector<long>> next;
  Set start(nfa.initial.begin(), nfa.initial.end());
  std::sort(start.begin(), start.end());
  start.erase(std::unique(start.begin(), start.end()), start.end());
  id.emplace(start, 0);
  sets.push_back(start);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    next.emplace_back(L, -1);
    for (std::size_t l = 0; l < L; ++l) {
      Set t;
      for (auto s : sets[i]) t.insert(t.end(), adj[s][l].begin(), adj[s][l].end());
      if (t.empty()) continue;
      std::sort(t.begin(), t.end());
      t.erase(std::unique(t.begin(), t.end()), t.end());
      auto [it, fresh] = id.emplace(t, sets.size());
      if (fresh) sets.push_back(it->first);
      next[i][l] = static_cast<long>(it->second);
    }
  }
  const std::size_t n = sets.size();
  std::vector<bool> fin(n, false);
  for (std::size_t i = 0; i < n; ++i)
    for (auto s : sets[i])
      if (nfa.final[s]) fin[i] = true;

  // Drop states that cannot reach a final state.
  std::vector<std::vector<std::size_t>> pred(n);
  for (std::size_t i = 0; i < n; ++i)
    for (auto t : next[i])
      if (t >= 0) pred[t].push_back(i);
  std::vector<bool> live(n, false);
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < n; ++i)
    if (fin[i]) {
      live[i] = true;
      stack.push_back(i);
    }
  while (!stack.empty()) {
    auto s = stack.back();
    stack.pop_back();
    for (auto p : pred[s])
      if (!live[p]) {
        live[p] = true;
        stack.push_back(p);
      }
  }
  Dfa out;
  out.ctx = keep;
  if (!live[0]) {
    out.final = {false};
    out.next = {std::vector<long>(L, -1)};
    return out;
  }
  for (auto& row : next)
    for (auto& t : row)
      if (t >= 0 && !live[t]) t = -1;

  // Moore refinement over the live states.
  std::vector<long> cls(n, -1);
  for (std::size_t i = 0; i < n; ++i)
    if (live[i]) cls[i] = fin[i] ? 1 : 0;
  std::size_t count = 0;
  for (;;) {
    std::map<std::vector<long>, long> sig;
    std::vector<long> nc(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
      if (!live[i]) continue;
      std::vector<long> key{cls[i]};
      for (auto t : next[i]) key.push_back(t >= 0 ? cls[t] : -1);
      auto [it, fresh] = sig.emplace(std::move(key), static_cast<long>(sig.size()));
      nc[i] = it->second;
    }
    const bool stable = sig.size() == count;
    count = sig.size();
    cls = std::move(nc);
    if (stable) break;
  }
  // Renumber so that the initial class is 0, in discovery order.
  std::vector<long> order(count, -1);
  long k = 0;
  std::vector<std::size_t> bfs{0};
  order[cls[0]] = k++;
  for (std::size_t h = 0; h < bfs.size(); ++h)
    for (auto t : next[bfs[h]])
      if (t >= 0 && order[cls[t]] < 0) {
        order[cls[t]] = k++;
        bfs.push_back(static_cast<std::size_t>(t));
      }
  out.initial = 0;
  out.final.assign(k, false);
  out.next.assign(k, std::vector<long>(L, -1));
  for (auto s : bfs) {
    const long c = order[cls[s]];
    out.final[c] = fin[s];
    for (std::size_t l = 0; l < L; ++l)
      if (next[s][l] >= 0) out.next[c][l] = order[cls[next[s][l]]];
  }
  return out;
}

std::optional<std::vector<std::uint64_t>> lift_word(const Nfa& nfa, const Alphabet& keep,
                                                    const std::vector<std::uint64_t>& target) {
  if (target.empty()) return std::nullopt;
  const auto fwd = forward_lists(nfa);
  struct Back {
    long prev;
    std::uint64_t letter;
  };
  const std::size_t n = target.size();
  std::vector<std::vector<long>> layer(n + 1, std::vector<long>(nfa.num_states, -2));
  std::vector<std::vector<std::uint64_t>> via(n + 1, std::vector<std::uint64_t>(nfa.num_states, 0));
  for (auto s : nfa.initial) layer[0][s] = -1;
  for (std::size_t j = 0; j < n; ++j) {
    bool any = false;
    for (std::size_t s = 0; s < nfa.num_states; ++s) {
      if (layer[j][s] == -2) continue;
      for (const auto& [l, t] : fwd[s]) {
        if (layer[j + 1][t] != -2 || project_letter(l, nfa.ctx, keep) != target[j]) continue;
        layer[j + 1][t] = static_cast<long>(s);
        via[j + 1][t] = l;
        any = true;
      }
    }
    if (!any) return std::nullopt;
  }
  for (std::size_t s = 0; s < nfa.num_states; ++s) {
    if (layer[n][s] == -2 || !nfa.final[s]) continue;
    std::vector<std::uint64_t> word(n);
    long cur = static_cast<long>(s);
    for (std::size_t j = n; j > 0; --j) {
      word[j - 1] = via[j][cur];
      cur = layer[j][cur];
    }
    return word;
  }
  return std::nullopt;
}

}  // namespace ltlpct
