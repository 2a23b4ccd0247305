#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "ltlpct/formula.hpp"

namespace ltlpct {

/// sum coeff * x_var  cmp  rhs, over non-negative integer variables.
struct IlpConstraint {
  std::vector<std::pair<std::size_t, long long>> terms;
  Cmp cmp = Cmp::Eq;
  long long rhs = 0;
};

struct IlpProblem {
  std::size_t num_vars = 0;
  std::vector<IlpConstraint> constraints;
  /// Minimised; empty means all zero.
  std::vector<long long> objective;
};

/// Called on every integral LP solution. Returning nullopt accepts it;
/// returning two constraints rejects it and splits the current node into one
/// child per constraint. The caller must make sure every acceptable solution
/// satisfies at least one of the two and the rejected one satisfies neither.
using LazyCheck =
    std::function<std::optional<std::pair<IlpConstraint, IlpConstraint>>(const std::vector<mpz_class>&)>;

enum class IlpStatus { Feasible, Infeasible, BudgetExhausted };

struct IlpResult {
  IlpStatus status = IlpStatus::Infeasible;
  std::vector<mpz_class> values;
  std::size_t nodes = 0;
  std::size_t lazy_splits = 0;
};

/// Exact LP over the rationals: two-phase tableau simplex with Bland's rule.
/// Returns an optimal vertex, or nullopt if infeasible. Unbounded objectives
/// are reported as Error (callers only minimise bounded-below objectives).
std::optional<std::vector<mpq_class>> solve_lp(const IlpProblem& p);

/// Best-first branch and bound on top of solve_lp (lowest LP bound first). Explores at most
/// `max_nodes` nodes; Infeasible is only reported after the whole tree was
/// closed, so it is a proof.
IlpResult solve_ilp(const IlpProblem& p, std::size_t max_nodes, const LazyCheck& lazy = {});

}  // namespace ltlpct
