#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ltlpct {

/// Atomic proposition ("letter"). Two props are equal iff their names are.
using Prop = std::string;

/// Base class for every error this library reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Op : std::uint8_t {
  True,
  False,
  Atom,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Next,
  Finally,
  Globally,
  Until,
  Half,
  PastMajority,
  MostFrequent,
  Percent,
};

/// Comparison used by the parameterised percentage operator.
enum class Cmp : std::uint8_t { Lt, Le, Eq, Ge, Gt };

std::string_view to_string(Cmp c);

/// Evaluates `lhs cmp rhs` on exact integers.
template <typename T>
constexpr bool compare(T lhs, Cmp c, T rhs) {
  switch (c) {
    case Cmp::Lt: return lhs < rhs;
    case Cmp::Le: return lhs <= rhs;
    case Cmp::Eq: return lhs == rhs;
    case Cmp::Ge: return lhs >= rhs;
    case Cmp::Gt: return lhs > rhs;
  }
  return false;
}

bool is_valid_prop_name(std::string_view name);

/// Immutable LTL formula over finite traces, extended with the past
/// percentage operators. Nodes are shared; copying a Formula is cheap.
class Formula {
 public:
  /// Null handle; only useful as a placeholder before assignment.
  Formula() = default;

  static Formula tt();
  static Formula ff();
  static Formula atom(Prop p);
  static Formula neg(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  static Formula next(Formula f);
  static Formula eventually(Formula f);
  static Formula always(Formula f);
  static Formula until(Formula a, Formula b);
  static Formula half(Formula f);
  static Formula past_majority(Formula f);
  static Formula most_frequent(Prop p);
  /// `P[cmp k%] f`; k must lie in [0, 100].
  static Formula percent(Cmp cmp, int k, Formula f);

  Op op() const;
  /// Prop carried by Atom and MostFrequent nodes.
  const Prop& prop() const;
  Cmp cmp() const;
  int k() const;
  std::size_t arity() const;
  /// Operand of a unary node, left operand of a binary node.
  const Formula& lhs() const;
  const Formula& rhs() const;
  const Formula& child(std::size_t i) const;

  std::size_t hash() const;
  std::size_t size() const;
  bool is_leaf() const;
  /// No Half/PM/MFL/P[..] anywhere in the tree.
  bool is_pure_ltl() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Op op, Prop p, Cmp cmp, int k, std::vector<Formula> kids);

  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  Op op;
  Prop prop;
  Cmp cmp = Cmp::Ge;
  int k = 0;
  std::array<Formula, 2> children;
  std::size_t hash = 0;
  std::size_t size = 1;
  bool pure = true;

  Node(Op o, Prop p, Cmp c, int kk) : op(o), prop(std::move(p)), cmp(c), k(kk), children{} {}
};

inline Op Formula::op() const { return node_->op; }
inline const Prop& Formula::prop() const { return node_->prop; }
inline Cmp Formula::cmp() const { return node_->cmp; }
inline int Formula::k() const { return node_->k; }
inline const Formula& Formula::lhs() const { return node_->children[0]; }
inline const Formula& Formula::rhs() const { return node_->children[1]; }
inline const Formula& Formula::child(std::size_t i) const { return node_->children[i]; }
inline std::size_t Formula::hash() const { return node_->hash; }
inline std::size_t Formula::size() const { return node_->size; }
inline bool Formula::is_pure_ltl() const { return node_->pure; }

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

/// Right-nested conjunction; `tt()` for an empty list.
Formula conj_all(const std::vector<Formula>& fs);
/// Right-nested disjunction; `ff()` for an empty list.
Formula disj_all(const std::vector<Formula>& fs);

/// Props syntactically occurring in f (MFL arguments included).
std::set<Prop> props_of(const Formula& f);

/// Maximal nesting of X. Throws Error if f contains F, G or U.
std::size_t temporal_depth(const Formula& f);

/// True if f uses none of F, G, U.
bool is_x_fragment(const Formula& f);

/// Every distinct subformula, children before parents.
std::vector<Formula> subformulas(const Formula& f);

/// Replaces every node equal to `from` (structurally) by `to`.
Formula substitute(const Formula& f, const Formula& from, const Formula& to);

bool contains_op(const Formula& f, Op op);

}  // namespace ltlpct

template <>
struct std::hash<ltlpct::Formula> {
  std::size_t operator()(const ltlpct::Formula& f) const noexcept { return f.hash(); }
};
