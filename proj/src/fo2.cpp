#include "ltlpct/fo2.hpp"

#include <cctype>

#include "ltlpct/library.hpp"
#include "ltlpct/parser.hpp"

namespace ltlpct {

struct FoFormula::Node {
  FoOp op;
  Prop prop;
  Var v = Var::X;
  Var v2 = Var::X;
  std::vector<FoFormula> kids;
};

namespace {
using F = FoFormula;
}  // namespace

Var other(Var v) { return v == Var::X ? Var::Y : Var::X; }

std::string_view var_name(Var v) { return v == Var::X ? "x" : "y"; }

FoFormula::FoFormula() : FoFormula(tt()) {}

FoFormula FoFormula::tt() { return FoFormula(std::make_shared<const Node>(Node{FoOp::True, {}, Var::X, Var::X, {}})); }
FoFormula FoFormula::ff() { return FoFormula(std::make_shared<const Node>(Node{FoOp::False, {}, Var::X, Var::X, {}})); }

FoFormula FoFormula::pred(Prop p, Var v) {
  if (!is_valid_prop_name(p)) throw Error("invalid proposition name '" + p + "'");
  return FoFormula(std::make_shared<const Node>(Node{FoOp::Pred, std::move(p), v, Var::X, {}}));
}

FoFormula FoFormula::less(Var a, Var b) { return FoFormula(std::make_shared<const Node>(Node{FoOp::Less, {}, a, b, {}})); }
FoFormula FoFormula::equal(Var a, Var b) { return FoFormula(std::make_shared<const Node>(Node{FoOp::Equal, {}, a, b, {}})); }

FoFormula FoFormula::neg(FoFormula f) {
  return FoFormula(std::make_shared<const Node>(Node{FoOp::Not, {}, Var::X, Var::X, {std::move(f)}}));
}

FoFormula FoFormula::conj(FoFormula a, FoFormula b) {
  return FoFormula(std::make_shared<const Node>(Node{FoOp::And, {}, Var::X, Var::X, {std::move(a), std::move(b)}}));
}

FoFormula FoFormula::disj(FoFormula a, FoFormula b) {
  return FoFormula(std::make_shared<const Node>(Node{FoOp::Or, {}, Var::X, Var::X, {std::move(a), std::move(b)}}));
}

FoFormula FoFormula::implies(FoFormula a, FoFormula b) {
  return FoFormula(
      std::make_shared<const Node>(Node{FoOp::Implies, {}, Var::X, Var::X, {std::move(a), std::move(b)}}));
}

FoFormula FoFormula::exists(Var v, FoFormula f) {
  return FoFormula(std::make_shared<const Node>(Node{FoOp::Exists, {}, v, Var::X, {std::move(f)}}));
}

FoFormula FoFormula::forall(Var v, FoFormula f) {
  return FoFormula(std::make_shared<const Node>(Node{FoOp::Forall, {}, v, Var::X, {std::move(f)}}));
}

FoFormula FoFormula::majority(Var v, FoFormula f) {
  return FoFormula(std::make_shared<const Node>(Node{FoOp::Majority, {}, v, Var::X, {std::move(f)}}));
}

FoOp FoFormula::op() const { return n_->op; }
const Prop& FoFormula::prop() const { return n_->prop; }
Var FoFormula::var() const { return n_->v; }
Var FoFormula::var2() const { return n_->v2; }
std::size_t FoFormula::arity() const { return n_->kids.size(); }
const FoFormula& FoFormula::child(std::size_t i) const { return n_->kids.at(i); }

bool operator==(const FoFormula& a, const FoFormula& b) {
  if (a.n_ == b.n_) return true;
  const auto& x = *a.n_;
  const auto& y = *b.n_;
  if (x.op != y.op || x.kids.size() != y.kids.size()) return false;
  switch (x.op) {
    case FoOp::Pred:
      if (x.prop != y.prop || x.v != y.v) return false;
      break;
    case FoOp::Less:
    case FoOp::Equal:
      if (x.v != y.v || x.v2 != y.v2) return false;
      break;
    case FoOp::Exists:
    case FoOp::Forall:
    case FoOp::Majority:
      if (x.v != y.v) return false;
      break;
    default: break;
  }
  for (std::size_t i = 0; i < x.kids.size(); ++i)
    if (x.kids[i] != y.kids[i]) return false;
  return true;
}

FoFormula fo_conj_all(const std::vector<FoFormula>& fs) {
  if (fs.empty()) return F::tt();
  FoFormula acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = F::conj(acc, fs[i]);
  return acc;
}

FoFormula fo_disj_all(const std::vector<FoFormula>& fs) {
  if (fs.empty()) return F::ff();
  FoFormula acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = F::disj(acc, fs[i]);
  return acc;
}

std::set<Var> free_vars(const FoFormula& f) {
  switch (f.op()) {
    case FoOp::True:
    case FoOp::False: return {};
    case FoOp::Pred: return {f.var()};
    case FoOp::Less:
    case FoOp::Equal: return {f.var(), f.var2()};
    case FoOp::Exists:
    case FoOp::Forall:
    case FoOp::Majority: {
      auto s = free_vars(f.child(0));
      s.erase(f.var());
      return s;
    }
    default: {
      std::set<Var> s;
      for (std::size_t i = 0; i < f.arity(); ++i) {
        auto c = free_vars(f.child(i));
        s.insert(c.begin(), c.end());
      }
      return s;
    }
  }
}

std::set<Prop> fo_props(const FoFormula& f) {
  std::set<Prop> out;
  if (f.op() == FoOp::Pred) out.insert(f.prop());
  for (std::size_t i = 0; i < f.arity(); ++i) {
    auto c = fo_props(f.child(i));
    out.insert(c.begin(), c.end());
  }
  return out;
}

namespace {

class Evaluator {
 public:
  explicit Evaluator(const Word& w) : w_(w) {}

  bool eval(const FoFormula& f) {
    switch (f.op()) {
      case FoOp::True: return true;
      case FoOp::False: return false;
      case FoOp::Pred: return w_.holds(pos(f.var()), f.prop());
      case FoOp::Less: return pos(f.var()) < pos(f.var2());
      case FoOp::Equal: return pos(f.var()) == pos(f.var2());
      case FoOp::Not: return !eval(f.child(0));
      case FoOp::And: return eval(f.child(0)) && eval(f.child(1));
      case FoOp::Or: return eval(f.child(0)) || eval(f.child(1));
      case FoOp::Implies: return !eval(f.child(0)) || eval(f.child(1));
      case FoOp::Exists:
      case FoOp::Forall:
      case FoOp::Majority: {
        const std::size_t slot = f.var() == Var::X ? 0 : 1;
        const auto saved = a_[slot];
        std::size_t hits = 0;
        bool result = f.op() == FoOp::Forall;
        for (std::size_t p = 0; p < w_.size(); ++p) {
          a_[slot] = p;
          const bool v = eval(f.child(0));
          hits += v;
          if (f.op() == FoOp::Exists && v) {
            result = true;
            break;
          }
          if (f.op() == FoOp::Forall && !v) {
            result = false;
            break;
          }
        }
        if (f.op() == FoOp::Majority) result = 2 * hits >= w_.size();
        a_[slot] = saved;
        return result;
      }
    }
    return false;
  }

  std::optional<std::size_t> a_[2];

 private:
  std::size_t pos(Var v) const {
    const auto& p = a_[v == Var::X ? 0 : 1];
    if (!p) throw Error("variable " + std::string(var_name(v)) + " is unbound");
    return *p;
  }

  const Word& w_;
};

}  // namespace

bool fo_eval(const Word& w, const FoFormula& f, const Assignment& a) {
  Evaluator e(w);
  for (Var v : {Var::X, Var::Y}) {
    const auto p = a.get(v);
    if (p && *p >= w.size())
      throw Error("variable " + std::string(var_name(v)) + " is assigned position " + std::to_string(*p) +
                  " outside a word of length " + std::to_string(w.size()));
  }
  e.a_[0] = a.x;
  e.a_[1] = a.y;
  return e.eval(f);
}

// Parsing.

namespace {

class FoParser {
 public:
  explicit FoParser(std::string_view s) : s_(s) {}

  FoFormula parse() {
    FoFormula f = iff();
    skip();
    if (i_ < s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k < i_ && k < s_.size(); ++k) {
      if (s_[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(i_, tok.size()) == tok) {
      i_ += tok.size();
      return true;
    }
    return false;
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '~' || c == '$';
  }

  std::string peek_ident(std::size_t at) const {
    std::size_t j = at;
    if (j >= s_.size() || !std::isalpha(static_cast<unsigned char>(s_[j]))) return {};
    while (j < s_.size() && ident_char(s_[j])) ++j;
    return std::string(s_.substr(at, j - at));
  }

  std::size_t after_space(std::size_t j) const {
    while (j < s_.size() && std::isspace(static_cast<unsigned char>(s_[j]))) ++j;
    return j;
  }

  static std::optional<Var> as_var(const std::string& id) {
    if (id == "x") return Var::X;
    if (id == "y") return Var::Y;
    return std::nullopt;
  }

  FoFormula iff() {
    FoFormula a = imp();
    if (eat("<->")) {
      FoFormula b = iff();
      return F::conj(F::implies(a, b), F::implies(b, a));
    }
    return a;
  }

  FoFormula imp() {
    FoFormula a = disj();
    skip();
    if (s_.substr(i_, 3) != "<->" && eat("->")) return F::implies(a, imp());
    return a;
  }

  FoFormula disj() {
    FoFormula a = conj();
    if (eat("|")) return F::disj(a, disj());
    return a;
  }

  FoFormula conj() {
    FoFormula a = unary();
    if (eat("&")) return F::conj(a, conj());
    return a;
  }

  FoFormula unary() {
    skip();
    if (eat("!")) return F::neg(unary());
    if (eat("(")) {
      FoFormula f = iff();
      if (!eat(")")) fail("expected ')'");
      return f;
    }
    const std::string id = peek_ident(i_);
    if (id.empty()) fail(i_ < s_.size() ? "unexpected '" + std::string(1, s_[i_]) + "'" : "unexpected end of input");
    const std::size_t after = after_space(i_ + id.size());

    if (id == "E" || id == "A" || id == "M") {
      const std::string v = peek_ident(after);
      const std::size_t dot = after_space(after + v.size());
      if (as_var(v) && dot < s_.size() && s_[dot] == '.') {
        i_ = dot + 1;
        FoFormula body = iff();
        const Var var = *as_var(v);
        if (id == "E") return F::exists(var, body);
        if (id == "A") return F::forall(var, body);
        return F::majority(var, body);
      }
    }
    if (id == "true") {
      i_ += id.size();
      return F::tt();
    }
    if (id == "false") {
      i_ += id.size();
      return F::ff();
    }
    if (auto v = as_var(id); v && (after >= s_.size() || s_[after] != '(')) {
      i_ = after;
      const bool lt = eat("<");
      if (!lt && !eat("=")) fail("expected '<' or '=' after variable");
      skip();
      const std::string r = peek_ident(i_);
      if (!as_var(r)) fail("expected variable x or y");
      i_ += r.size();
      return lt ? F::less(*v, *as_var(r)) : F::equal(*v, *as_var(r));
    }
    if (!is_valid_prop_name(id)) fail("invalid predicate name '" + id + "'");
    i_ += id.size();
    if (!eat("(")) fail("expected '(' after predicate '" + id + "'");
    skip();
    const std::string v = peek_ident(i_);
    if (!as_var(v)) fail("expected variable x or y");
    i_ += v.size();
    if (!eat(")")) fail("expected ')'");
    return F::pred(id, *as_var(v));
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

bool compound(const FoFormula& f) {
  switch (f.op()) {
    case FoOp::And:
    case FoOp::Or:
    case FoOp::Implies:
    case FoOp::Exists:
    case FoOp::Forall:
    case FoOp::Majority: return true;
    default: return false;
  }
}

std::string wrap(const FoFormula& f) { return compound(f) ? "(" + print_fo(f) + ")" : print_fo(f); }

// Right operand of a right-associative operator: same operator needs no
// parentheses.
std::string wrap_right(const FoFormula& parent, const FoFormula& f) {
  return f.op() == parent.op() ? print_fo(f) : wrap(f);
}

}  // namespace

FoFormula parse_fo(std::string_view text) { return FoParser(text).parse(); }

std::string print_fo(const FoFormula& f) {
  const std::string v(var_name(f.var()));
  switch (f.op()) {
    case FoOp::True: return "true";
    case FoOp::False: return "false";
    case FoOp::Pred: return f.prop() + "(" + v + ")";
    case FoOp::Less: return v + " < " + std::string(var_name(f.var2()));
    case FoOp::Equal: return v + " = " + std::string(var_name(f.var2()));
    case FoOp::Not: return "!" + wrap(f.child(0));
    case FoOp::And: return wrap(f.child(0)) + " & " + wrap_right(f, f.child(1));
    case FoOp::Or: return wrap(f.child(0)) + " | " + wrap_right(f, f.child(1));
    case FoOp::Implies: return wrap(f.child(0)) + " -> " + wrap_right(f, f.child(1));
    case FoOp::Exists: return "E " + v + ". " + print_fo(f.child(0));
    case FoOp::Forall: return "A " + v + ". " + print_fo(f.child(0));
    case FoOp::Majority: return "M " + v + ". " + print_fo(f.child(0));
  }
  return "?";
}

// Macros.

FoFormula half_q(Var v, const FoFormula& f) { return F::conj(F::majority(v, f), F::majority(v, F::neg(f))); }

FoFormula first(Var v) { return F::neg(F::exists(other(v), F::less(other(v), v))); }

FoFormula second(Var v) {
  const Var u = other(v);
  return F::conj(F::exists(u, F::less(u, v)), F::forall(u, F::implies(F::less(u, v), first(u))));
}

FoFormula last(Var v) { return F::neg(F::exists(other(v), F::less(v, other(v)))); }

FoFormula sectolast(Var v) {
  const Var u = other(v);
  return F::conj(F::exists(u, F::less(v, u)), F::forall(u, F::implies(F::less(v, u), last(u))));
}

FoFormula udistr(const std::vector<Prop>& sigma) {
  std::vector<FoFormula> some, parts;
  for (const auto& s : sigma) some.push_back(F::pred(s, Var::X));
  parts.push_back(fo_disj_all(some));
  for (std::size_t i = 0; i < sigma.size(); ++i)
    for (std::size_t j = 0; j < sigma.size(); ++j)
      if (i != j)
        parts.push_back(F::disj(F::neg(F::pred(sigma[i], Var::X)), F::neg(F::pred(sigma[j], Var::X))));
  return F::forall(Var::X, fo_conj_all(parts));
}

FoFormula psi_shadowy_fo() {
  const Var x = Var::X, y = Var::Y;
  auto wht = [](Var v) { return F::pred(kWht, v); };
  auto shdw = [](Var v) { return F::pred(kShdw, v); };
  const FoFormula base = fo_conj_all({udistr({kWht, kShdw}), F::exists(x, F::conj(first(x), wht(x))),
                                      half_q(x, wht(x)), half_q(x, shdw(x))});
  const FoFormula forbid_ww =
      F::implies(wht(x), half_q(y, F::disj(F::conj(F::less(y, x), wht(y)), F::conj(F::less(x, y), shdw(y)))));
  const FoFormula forbid_ss = F::implies(
      shdw(x), half_q(y, F::disj(F::conj(F::disj(F::less(y, x), F::equal(x, y)), shdw(y)),
                                 F::conj(F::less(x, y), wht(y)))));
  return F::conj(base, F::forall(x, F::conj(forbid_ww, forbid_ss)));
}

bool is_pm_fragment(const Formula& f) {
  switch (f.op()) {
    case Op::Next:
    case Op::Until:
    case Op::MostFrequent:
    case Op::Percent: return false;
    default: break;
  }
  for (std::size_t i = 0; i < f.arity(); ++i)
    if (!is_pm_fragment(f.child(i))) return false;
  return true;
}

namespace {

// Rewrites into atoms, true, false, !, &, F and PM.
Formula core(const Formula& f) {
  using L = Formula;
  switch (f.op()) {
    case Op::True:
    case Op::False:
    case Op::Atom: return f;
    case Op::Not: return L::neg(core(f.child(0)));
    case Op::And: return L::conj(core(f.child(0)), core(f.child(1)));
    case Op::Or: return L::neg(L::conj(L::neg(core(f.child(0))), L::neg(core(f.child(1)))));
    case Op::Implies: return L::neg(L::conj(core(f.child(0)), L::neg(core(f.child(1)))));
    case Op::Iff: {
      const Formula a = core(f.child(0)), b = core(f.child(1));
      return L::conj(L::neg(L::conj(a, L::neg(b))), L::neg(L::conj(b, L::neg(a))));
    }
    case Op::Finally: return L::eventually(core(f.child(0)));
    case Op::Globally: return L::neg(L::eventually(L::neg(core(f.child(0)))));
    case Op::PastMajority: return L::past_majority(core(f.child(0)));
    case Op::Half: {
      const Formula g = core(f.child(0));
      return L::conj(L::past_majority(g), L::past_majority(L::neg(g)));
    }
    default: break;
  }
  throw Error("translation to first-order logic needs a formula with only F, G, PM, Half and booleans");
}

FoFormula tr(Var v, const Formula& f) {
  const Var u = other(v);
  switch (f.op()) {
    case Op::True: return F::tt();
    case Op::False: return F::ff();
    case Op::Atom: return F::pred(f.prop(), v);
    case Op::Not: return F::neg(tr(v, f.child(0)));
    case Op::And: return F::conj(tr(v, f.child(0)), tr(v, f.child(1)));
    case Op::Finally: return F::exists(u, F::conj(F::disj(F::less(v, u), F::equal(v, u)), tr(u, f.child(0))));
    case Op::PastMajority:
      return F::majority(u, F::disj(F::conj(F::less(u, v), tr(u, f.child(0))),
                                    F::conj(F::disj(F::less(v, u), F::equal(v, u)), F::pred(kWht, u))));
    default: break;
  }
  throw Error("internal: unexpected operator in translation");
}

}  // namespace

FoFormula translate(Var v, const Formula& f) {
  if (!is_pm_fragment(f))
    throw Error("translation to first-order logic needs a formula with only F, G, PM, Half and booleans");
  return tr(v, core(f));
}

FoFormula translate_closed(const Formula& f) {
  return F::conj(psi_shadowy_fo(), F::exists(Var::X, F::conj(first(Var::X), translate(Var::X, f))));
}

std::optional<Word> fo_bounded_sat(const FoFormula& f, const Alphabet& ctx, std::size_t max_len) {
  if (!free_vars(f).empty()) throw Error("bounded search needs a closed formula");
  WordEnumerator en(ctx, max_len);
  while (en.next()) {
    Word w = en.word();
    if (fo_eval(w, f)) return w;
  }
  return std::nullopt;
}

}  // namespace ltlpct
