#include "ltlpct/formula.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <unordered_set>

namespace ltlpct {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t arity_of(Op op) {
  switch (op) {
    case Op::True:
    case Op::False:
    case Op::Atom:
    case Op::MostFrequent:
      return 0;
    case Op::Not:
    case Op::Next:
    case Op::Finally:
    case Op::Globally:
    case Op::Half:
    case Op::PastMajority:
    case Op::Percent:
      return 1;
    case Op::And:
    case Op::Or:
    case Op::Implies:
    case Op::Iff:
    case Op::Until:
      return 2;
  }
  return 0;
}

bool is_counting(Op op) {
  return op == Op::Half || op == Op::PastMajority || op == Op::MostFrequent || op == Op::Percent;
}

void check_prop(const Prop& p) {
  static const std::set<std::string, std::less<>> keywords = {"X",  "F",   "G",    "U",    "Half",
                                                               "PM", "MFL", "true", "false"};
  if (!is_valid_prop_name(p) || keywords.count(p))
    throw Error("invalid proposition name '" + p + "'");
}

}  // namespace

std::string_view to_string(Cmp c) {
  switch (c) {
    case Cmp::Lt: return "<";
    case Cmp::Le: return "<=";
    case Cmp::Eq: return "=";
    case Cmp::Ge: return ">=";
    case Cmp::Gt: return ">";
  }
  return "?";
}

bool is_valid_prop_name(std::string_view name) {
  if (name.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(name[0])) return false;
  for (std::size_t i = 1; i < name.size(); ++i) {
    char c = name[i];
    if (alpha(c) || digit(c) || c == '_' || c == '~' || c == '$') continue;
    // Signed suffixes such as `i1_-1` or `c1_+` are allowed right after '_'.
    if (c == '+' && name[i - 1] == '_') continue;
    if (c == '-' && name[i - 1] == '_' && i + 1 < name.size() && digit(name[i + 1])) continue;
    return false;
  }
  return true;
}

Formula Formula::make(Op op, Prop p, Cmp cmp, int k, std::vector<Formula> kids) {
  auto n = std::make_shared<Node>(op, std::move(p), cmp, k);
  std::size_t h = mix(0, static_cast<std::size_t>(op));
  if (op == Op::Atom || op == Op::MostFrequent) h = mix(h, std::hash<std::string>{}(n->prop));
  if (op == Op::Percent) h = mix(mix(h, static_cast<std::size_t>(cmp)), static_cast<std::size_t>(k));
  n->pure = !is_counting(op);
  for (std::size_t i = 0; i < kids.size(); ++i) {
    h = mix(h, kids[i].hash());
    n->size += kids[i].size();
    n->pure = n->pure && kids[i].is_pure_ltl();
    n->children[i] = std::move(kids[i]);
  }
  n->hash = h;
  return Formula(std::move(n));
}

Formula Formula::tt() {
  static const Formula f = make(Op::True, {}, Cmp::Ge, 0, {});
  return f;
}
Formula Formula::ff() {
  static const Formula f = make(Op::False, {}, Cmp::Ge, 0, {});
  return f;
}
Formula Formula::atom(Prop p) {
  check_prop(p);
  return make(Op::Atom, std::move(p), Cmp::Ge, 0, {});
}
Formula Formula::neg(Formula f) { return make(Op::Not, {}, Cmp::Ge, 0, {std::move(f)}); }
Formula Formula::conj(Formula a, Formula b) {
  return make(Op::And, {}, Cmp::Ge, 0, {std::move(a), std::move(b)});
}
Formula Formula::disj(Formula a, Formula b) {
  return make(Op::Or, {}, Cmp::Ge, 0, {std::move(a), std::move(b)});
}
Formula Formula::implies(Formula a, Formula b) {
  return make(Op::Implies, {}, Cmp::Ge, 0, {std::move(a), std::move(b)});
}
Formula Formula::iff(Formula a, Formula b) {
  return make(Op::Iff, {}, Cmp::Ge, 0, {std::move(a), std::move(b)});
}
Formula Formula::next(Formula f) { return make(Op::Next, {}, Cmp::Ge, 0, {std::move(f)}); }
Formula Formula::eventually(Formula f) { return make(Op::Finally, {}, Cmp::Ge, 0, {std::move(f)}); }
Formula Formula::always(Formula f) { return make(Op::Globally, {}, Cmp::Ge, 0, {std::move(f)}); }
Formula Formula::until(Formula a, Formula b) {
  return make(Op::Until, {}, Cmp::Ge, 0, {std::move(a), std::move(b)});
}
Formula Formula::half(Formula f) { return make(Op::Half, {}, Cmp::Ge, 0, {std::move(f)}); }
Formula Formula::past_majority(Formula f) {
  return make(Op::PastMajority, {}, Cmp::Ge, 0, {std::move(f)});
}
Formula Formula::most_frequent(Prop p) {
  check_prop(p);
  return make(Op::MostFrequent, std::move(p), Cmp::Ge, 0, {});
}
Formula Formula::percent(Cmp cmp, int k, Formula f) {
  if (k < 0 || k > 100) throw Error("percentage " + std::to_string(k) + " outside [0, 100]");
  return make(Op::Percent, {}, cmp, k, {std::move(f)});
}

std::size_t Formula::arity() const { return arity_of(op()); }

bool Formula::is_leaf() const { return arity() == 0; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.hash() != b.hash() || a.op() != b.op() || a.size() != b.size()) return false;
  switch (a.op()) {
    case Op::Atom:
    case Op::MostFrequent:
      return a.prop() == b.prop();
    case Op::Percent:
      if (a.cmp() != b.cmp() || a.k() != b.k()) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (a.child(i) != b.child(i)) return false;
  return true;
}

Formula conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::tt();
  Formula acc = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) acc = Formula::conj(fs[i], acc);
  return acc;
}

Formula disj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::ff();
  Formula acc = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) acc = Formula::disj(fs[i], acc);
  return acc;
}

std::vector<Formula> subformulas(const Formula& f) {
  std::vector<Formula> order;
  std::unordered_set<Formula, FormulaHash> seen;
  // Iterative post-order; formulas produced by the Minsky compiler are deep.
  std::vector<std::pair<Formula, bool>> stack{{f, false}};
  while (!stack.empty()) {
    auto [g, expanded] = stack.back();
    stack.pop_back();
    if (seen.count(g)) continue;
    if (expanded) {
      seen.insert(g);
      order.push_back(g);
      continue;
    }
    stack.push_back({g, true});
    for (std::size_t i = g.arity(); i-- > 0;)
      if (!seen.count(g.child(i))) stack.push_back({g.child(i), false});
  }
  return order;
}

std::set<Prop> props_of(const Formula& f) {
  std::set<Prop> out;
  for (const auto& g : subformulas(f))
    if (g.op() == Op::Atom || g.op() == Op::MostFrequent) out.insert(g.prop());
  return out;
}

bool contains_op(const Formula& f, Op op) {
  for (const auto& g : subformulas(f))
    if (g.op() == op) return true;
  return false;
}

bool is_x_fragment(const Formula& f) {
  for (const auto& g : subformulas(f))
    if (g.op() == Op::Finally || g.op() == Op::Globally || g.op() == Op::Until) return false;
  return true;
}

std::size_t temporal_depth(const Formula& f) {
  if (!is_x_fragment(f)) throw Error("temporal depth is only defined for formulas without F, G and U");
  std::unordered_map<Formula, std::size_t, FormulaHash> depth;
  for (const auto& g : subformulas(f)) {
    std::size_t d = 0;
    for (std::size_t i = 0; i < g.arity(); ++i) d = std::max(d, depth.at(g.child(i)));
    if (g.op() == Op::Next) ++d;
    depth[g] = d;
  }
  return depth.at(f);
}

Formula substitute(const Formula& f, const Formula& from, const Formula& to) {
  std::unordered_map<Formula, Formula, FormulaHash> done;
  for (const auto& g : subformulas(f)) {
    if (g == from) {
      done.emplace(g, to);
      continue;
    }
    Formula r = g;
    switch (g.op()) {
      case Op::Not: r = Formula::neg(done.at(g.lhs())); break;
      case Op::Next: r = Formula::next(done.at(g.lhs())); break;
      case Op::Finally: r = Formula::eventually(done.at(g.lhs())); break;
      case Op::Globally: r = Formula::always(done.at(g.lhs())); break;
      case Op::Half: r = Formula::half(done.at(g.lhs())); break;
      case Op::PastMajority: r = Formula::past_majority(done.at(g.lhs())); break;
      case Op::Percent: r = Formula::percent(g.cmp(), g.k(), done.at(g.lhs())); break;
      case Op::And: r = Formula::conj(done.at(g.lhs()), done.at(g.rhs())); break;
      case Op::Or: r = Formula::disj(done.at(g.lhs()), done.at(g.rhs())); break;
      case Op::Implies: r = Formula::implies(done.at(g.lhs()), done.at(g.rhs())); break;
      case Op::Iff: r = Formula::iff(done.at(g.lhs()), done.at(g.rhs())); break;
      case Op::Until: r = Formula::until(done.at(g.lhs()), done.at(g.rhs())); break;
      default: break;
    }
    done.emplace(g, r);
  }
  return done.at(f);
}

}  // namespace ltlpct
