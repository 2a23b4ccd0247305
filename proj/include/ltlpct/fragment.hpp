#pragma once

#include <optional>
#include <vector>

#include "ltlpct/formula.hpp"

namespace ltlpct {

/// Rejection by validate_percent_fragment; `offending()` is the smallest
/// subformula found to break the grammar.
class FragmentError : public Error {
 public:
  FragmentError(const std::string& msg, Formula offending);
  const Formula& offending() const { return offending_; }

 private:
  Formula offending_;
};

/// `F(pre & P[cmp k%] body)` with pre and body pure LTL.
struct PercentBlock {
  Formula pre;
  Cmp cmp;
  int k;
  Formula body;

  Formula to_formula() const;
  friend bool operator==(const PercentBlock&, const PercentBlock&) = default;
};

/// `base & F(block_1) & ... & F(block_n)` with base pure LTL.
struct Conjunct {
  Formula base;
  std::vector<PercentBlock> blocks;

  Formula to_formula() const;
};

/// A formula known to be a positive boolean combination of pure-LTL
/// formulas and percentage blocks.
class LtlPercentFormula {
 public:
  const Formula& formula() const { return f_; }

 private:
  friend LtlPercentFormula validate_percent_fragment(const Formula& f);
  explicit LtlPercentFormula(Formula f) : f_(std::move(f)) {}
  Formula f_;
};

/// Accepts F(pre & P[..] body), F(P[..] body & pre), F(P[..] body) and
/// longer &-chains under F with exactly one percentage conjunct. PM and
/// Half in that slot count as P[>= 50%] and P[= 50%]. MFL is rejected.
LtlPercentFormula validate_percent_fragment(const Formula& f);

/// Reads the block out of `F(...)`; nullopt if it is not a block.
std::optional<PercentBlock> match_block(const Formula& f);

/// Disjunctive normal form over the top-level & and |, treating blocks and
/// pure-LTL conjunctions as literals. Top-level disjunctions are always
/// split, pure ones included. Pure-LTL literals of one conjunct are merged
/// into its base.
std::vector<Conjunct> to_dnf(const LtlPercentFormula& f);

}  // namespace ltlpct
