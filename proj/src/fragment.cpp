#include "ltlpct/fragment.hpp"

#include <optional>

#include "ltlpct/parser.hpp"

namespace ltlpct {

FragmentError::FragmentError(const std::string& msg, Formula offending)
    : Error(msg + ": " + print_formula(offending)), offending_(std::move(offending)) {}

Formula PercentBlock::to_formula() const {
  Formula pct = Formula::percent(cmp, k, body);
  return Formula::eventually(pre.op() == Op::True ? pct : Formula::conj(pre, pct));
}

Formula Conjunct::to_formula() const {
  std::vector<Formula> parts;
  if (base.op() != Op::True || blocks.empty()) parts.push_back(base);
  for (const auto& b : blocks) parts.push_back(b.to_formula());
  return conj_all(parts);
}

namespace {

void flatten_and(const Formula& f, std::vector<Formula>& out) {
  if (f.op() == Op::And) {
    flatten_and(f.lhs(), out);
    flatten_and(f.rhs(), out);
  } else {
    out.push_back(f);
  }
}

bool is_percent_op(Op op) {
  return op == Op::Percent || op == Op::PastMajority || op == Op::Half;
}

// Percentage slot with its operand; nullopt unless the operand is pure LTL.
std::optional<PercentBlock> as_percent(const Formula& g) {
  if (!is_percent_op(g.op()) || !g.lhs().is_pure_ltl()) return std::nullopt;
  switch (g.op()) {
    case Op::PastMajority: return PercentBlock{Formula::tt(), Cmp::Ge, 50, g.lhs()};
    case Op::Half: return PercentBlock{Formula::tt(), Cmp::Eq, 50, g.lhs()};
    default: return PercentBlock{Formula::tt(), g.cmp(), g.k(), g.lhs()};
  }
}

Formula first_impure(const Formula& f) {
  if (!f.is_pure_ltl() && f.op() != Op::Not)
    for (std::size_t i = 0; i < f.arity(); ++i)
      if (!f.child(i).is_pure_ltl()) return first_impure(f.child(i));
  return f;
}

[[noreturn]] void reject_block(const Formula& f) {
  // f = F(g) with g impure but not of block shape
  std::vector<Formula> parts;
  flatten_and(f.lhs(), parts);
  std::size_t counting = 0;
  for (const auto& p : parts) {
    if (p.is_pure_ltl()) continue;
    if (is_percent_op(p.op()) && !p.lhs().is_pure_ltl())
      throw FragmentError("nested percentage operator", p);
    if (p.op() == Op::MostFrequent) throw FragmentError("MFL is not a percentage operator of the fragment", p);
    if (is_percent_op(p.op())) {
      ++counting;
      continue;
    }
    Formula bad = first_impure(p);
    if (bad.op() == Op::Not) throw FragmentError("percentage operator under negation", bad);
    throw FragmentError("percentage operator nested inside a temporal or boolean operator", p);
  }
  if (counting > 1) throw FragmentError("more than one percentage operator in one F-block", f);
  throw FragmentError("percentage operator outside the licensed F-block shape", f);
}

void check(const Formula& f) {
  if (f.is_pure_ltl()) return;
  switch (f.op()) {
    case Op::And:
    case Op::Or:
      check(f.lhs());
      check(f.rhs());
      return;
    case Op::Finally:
      if (match_block(f)) return;
      reject_block(f);
    case Op::Not:
      throw FragmentError("percentage operator under negation", f);
    case Op::Implies:
    case Op::Iff:
      throw FragmentError("percentage operator under an implicit negation", f);
    case Op::MostFrequent:
      throw FragmentError("MFL is not a percentage operator of the fragment", f);
    case Op::Half:
    case Op::PastMajority:
    case Op::Percent:
      throw FragmentError("percentage operator outside an F-block", f);
    default:
      throw FragmentError("percentage operator nested inside a temporal operator", f);
  }
}

std::vector<Conjunct> dnf(const Formula& f) {
  if (f.op() == Op::Or) {
    auto l = dnf(f.lhs());
    auto r = dnf(f.rhs());
    l.insert(l.end(), r.begin(), r.end());
    return l;
  }
  // Pure conjunctions stay whole so that the expansion only multiplies
  // around percentage blocks.
  if (f.op() == Op::And && !f.is_pure_ltl()) {
    const auto l = dnf(f.lhs());
    const auto r = dnf(f.rhs());
    std::vector<Conjunct> out;
    for (const auto& a : l) {
      for (const auto& b : r) {
        Conjunct c;
        if (a.base.op() == Op::True) c.base = b.base;
        else if (b.base.op() == Op::True) c.base = a.base;
        else c.base = Formula::conj(a.base, b.base);
        c.blocks = a.blocks;
        c.blocks.insert(c.blocks.end(), b.blocks.begin(), b.blocks.end());
        out.push_back(std::move(c));
      }
    }
    return out;
  }
  if (f.is_pure_ltl()) return {Conjunct{f, {}}};
  return {Conjunct{Formula::tt(), {*match_block(f)}}};
}

}  // namespace

std::optional<PercentBlock> match_block(const Formula& f) {
  if (f.op() != Op::Finally) return std::nullopt;
  std::vector<Formula> parts;
  flatten_and(f.lhs(), parts);
  std::optional<PercentBlock> found;
  std::vector<Formula> pre;
  for (const auto& p : parts) {
    if (p.is_pure_ltl()) {
      pre.push_back(p);
      continue;
    }
    auto b = as_percent(p);
    if (!b || found) return std::nullopt;
    found = b;
  }
  if (!found) return std::nullopt;
  found->pre = conj_all(pre);
  return found;
}

LtlPercentFormula validate_percent_fragment(const Formula& f) {
  check(f);
  return LtlPercentFormula(f);
}

std::vector<Conjunct> to_dnf(const LtlPercentFormula& f) { return dnf(f.formula()); }

}  // namespace ltlpct
