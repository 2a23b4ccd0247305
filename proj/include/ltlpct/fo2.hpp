#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ltlpct/formula.hpp"
#include "ltlpct/word.hpp"

namespace ltlpct {

enum class Var : std::uint8_t { X, Y };

Var other(Var v);
std::string_view var_name(Var v);

enum class FoOp { True, False, Pred, Less, Equal, Not, And, Or, Implies, Exists, Forall, Majority };

/// First-order formula over positions with the two variables x and y, the
/// order <, equality, one unary predicate per prop, and the Majority
/// quantifier M.
class FoFormula {
 public:
  /// true
  FoFormula();

  static FoFormula tt();
  static FoFormula ff();
  static FoFormula pred(Prop p, Var v);
  static FoFormula less(Var a, Var b);
  static FoFormula equal(Var a, Var b);
  static FoFormula neg(FoFormula f);
  static FoFormula conj(FoFormula a, FoFormula b);
  static FoFormula disj(FoFormula a, FoFormula b);
  static FoFormula implies(FoFormula a, FoFormula b);
  static FoFormula exists(Var v, FoFormula f);
  static FoFormula forall(Var v, FoFormula f);
  static FoFormula majority(Var v, FoFormula f);

  FoOp op() const;
  /// Pred only.
  const Prop& prop() const;
  /// Pred: its variable. Less, Equal: the left one. Quantifiers: the bound one.
  Var var() const;
  /// Less, Equal: the right variable.
  Var var2() const;
  std::size_t arity() const;
  const FoFormula& child(std::size_t i) const;

  friend bool operator==(const FoFormula& a, const FoFormula& b);
  friend bool operator!=(const FoFormula& a, const FoFormula& b) { return !(a == b); }

 private:
  struct Node;
  explicit FoFormula(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

/// Left-nested; true / false for an empty list.
FoFormula fo_conj_all(const std::vector<FoFormula>& fs);
FoFormula fo_disj_all(const std::vector<FoFormula>& fs);

std::set<Var> free_vars(const FoFormula& f);
std::set<Prop> fo_props(const FoFormula& f);

struct Assignment {
  std::optional<std::size_t> x;
  std::optional<std::size_t> y;

  std::optional<std::size_t> get(Var v) const { return v == Var::X ? x : y; }
  void set(Var v, std::size_t p) { (v == Var::X ? x : y) = p; }
};

/// Satisfaction over positions 0..|w|-1. M v.f holds iff 2 * |{p : f[v/p]}|
/// >= |w|. Throws Error on an unbound free variable or a position outside w.
bool fo_eval(const Word& w, const FoFormula& f, const Assignment& a = {});

/// `E x. f`, `A x. f`, `M x. f`, `x < y`, `x = y`, `a(x)`, `true`, `false`,
/// `!`, `&`, `|`, `->`, `<->` (expanded into two implications), parentheses.
/// Quantifier bodies extend as far right as possible; binary operators
/// associate to the right, `&` binding tightest. Throws ParseError.
FoFormula parse_fo(std::string_view text);
std::string print_fo(const FoFormula& f);

// Macros.
FoFormula half_q(Var v, const FoFormula& f);
/// No position before v.
FoFormula first(Var v);
/// Some position before v, and all of them are first.
FoFormula second(Var v);
FoFormula last(Var v);
FoFormula sectolast(Var v);
/// Every position carries exactly one prop of sigma.
FoFormula udistr(const std::vector<Prop>& sigma);

/// udistr{wht,shdw} & E x(first(x) & wht(x)) & Half x.wht(x) & Half x.shdw(x)
/// & A x(forbid_wht_wht(x) & forbid_shdw_shdw(x)).
FoFormula psi_shadowy_fo();

/// Atoms, booleans, F, G, PM and Half; no X, U, MFL or P[..].
bool is_pm_fragment(const Formula& f);

/// tr_v(f). Derived booleans and G are first rewritten into !, & and F,
/// Half g into PM g & PM !g. Throws Error outside the PM fragment.
FoFormula translate(Var v, const Formula& f);
/// psi_shadowy_fo() & E x(first(x) & tr_x(f)).
FoFormula translate_closed(const Formula& f);

/// First word in WordEnumerator order of length <= max_len satisfying the
/// closed formula f. Throws Error if f has free variables.
std::optional<Word> fo_bounded_sat(const FoFormula& f, const Alphabet& ctx, std::size_t max_len);

}  // namespace ltlpct
