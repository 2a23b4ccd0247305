#include "ltlpct/ilp.hpp"

#include <queue>

namespace ltlpct {

namespace {

using Row = std::vector<mpq_class>;

// Integer-strengthened form: a.x < b becomes a.x <= b-1, a.x > b becomes
// a.x >= b+1. Sound because coefficients and variables are integers.
IlpConstraint tighten(IlpConstraint c) {
  if (c.cmp == Cmp::Lt) {
    c.cmp = Cmp::Le;
    c.rhs -= 1;
  } else if (c.cmp == Cmp::Gt) {
    c.cmp = Cmp::Ge;
    c.rhs += 1;
  }
  return c;
}

class Tableau {
 public:
  // rows: A x (cmp) b; all x >= 0.
  Tableau(std::size_t n, const std::vector<IlpConstraint>& cons) : n_(n) {
    std::size_t slacks = 0;
    for (const auto& c : cons) slacks += c.cmp != Cmp::Eq;
    m_ = cons.size();
    art0_ = n_ + slacks;
    cols_ = art0_ + m_;
    t_.assign(m_, Row(cols_ + 1, 0));
    basis_.resize(m_);
    std::size_t s = n_;
    for (std::size_t i = 0; i < m_; ++i) {
      const auto c = tighten(cons[i]);
      Row& r = t_[i];
      for (const auto& [v, a] : c.terms) r[v] += static_cast<long>(a);
      if (c.cmp == Cmp::Le) r[s++] = 1;
      else if (c.cmp == Cmp::Ge) r[s++] = -1;
      r[cols_] = static_cast<long>(c.rhs);
      if (c.rhs < 0)
        for (auto& x : r) x = -x;
      r[art0_ + i] = 1;
      basis_[i] = art0_ + i;
    }
  }

  // Phase I then II; nullopt when infeasible.
  std::optional<std::vector<mpq_class>> solve(const std::vector<long long>& objective) {
    Row phase1(cols_, 0);
    for (std::size_t j = art0_; j < cols_; ++j) phase1[j] = 1;
    run(phase1, cols_);
    mpq_class infeas = 0;
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] >= art0_) infeas += t_[i][cols_];
    if (infeas > 0) return std::nullopt;
    evict_artificials();
    Row cost(cols_, 0);
    for (std::size_t j = 0; j < objective.size() && j < n_; ++j) cost[j] = static_cast<long>(objective[j]);
    run(cost, art0_);
    std::vector<mpq_class> x(n_, 0);
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) x[basis_[i]] = t_[i][cols_];
    return x;
  }

 private:
  void pivot(std::size_t r, std::size_t c, Row& z) {
    const mpq_class p = t_[r][c];
    for (auto& x : t_[r]) x /= p;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || t_[i][c] == 0) continue;
      const mpq_class f = t_[i][c];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (t_[r][j] != 0) t_[i][j] -= f * t_[r][j];
    }
    if (z[c] != 0) {
      const mpq_class f = z[c];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (t_[r][j] != 0) z[j] -= f * t_[r][j];
    }
    basis_[r] = c;
  }

  // Minimises cost over columns < limit, starting from the current basis.
  void run(const Row& cost, std::size_t limit) {
    Row z(cols_ + 1, 0);
    for (std::size_t j = 0; j < cols_; ++j) z[j] = cost[j];
    for (std::size_t i = 0; i < m_; ++i) {
      const mpq_class cb = cost[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= cols_; ++j)
        if (t_[i][j] != 0) z[j] -= cb * t_[i][j];
    }
    for (;;) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j)
        if (z[j] < 0) {
          enter = j;
          break;
        }
      if (enter == limit) return;
      std::size_t leave = m_;
      mpq_class best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (t_[i][enter] <= 0) continue;
        mpq_class ratio = t_[i][cols_] / t_[i][enter];
        if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m_) throw Error("linear program is unbounded");
      pivot(leave, enter, z);
    }
  }

  void evict_artificials() {
    Row dummy(cols_ + 1, 0);
    for (std::size_t i = 0; i < m_;) {
      if (basis_[i] < art0_) {
        ++i;
        continue;
      }
      std::size_t c = art0_;
      for (std::size_t j = 0; j < art0_; ++j)
        if (t_[i][j] != 0) {
          c = j;
          break;
        }
      if (c < art0_) {
        pivot(i, c, dummy);
        ++i;
      } else {
        // Redundant row.
        t_.erase(t_.begin() + static_cast<long>(i));
        basis_.erase(basis_.begin() + static_cast<long>(i));
        --m_;
      }
    }
  }

  std::size_t n_, m_ = 0, art0_ = 0, cols_ = 0;
  std::vector<Row> t_;
  std::vector<std::size_t> basis_;
};

bool is_integer(const mpq_class& q) { return q.get_den() == 1; }

mpz_class floor_of(const mpq_class& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

}  // namespace

std::optional<std::vector<mpq_class>> solve_lp(const IlpProblem& p) {
  for (const auto& c : p.constraints)
    for (const auto& t : c.terms)
      if (t.first >= p.num_vars) throw Error("constraint refers to an unknown variable");
  Tableau t(p.num_vars, p.constraints);
  return t.solve(p.objective);
}

namespace {

// Branch bounds on a single variable replace earlier ones in the same
// direction, so rows do not pile up along deep branches.
std::vector<IlpConstraint> with_bound(std::vector<IlpConstraint> extra, std::size_t var, Cmp cmp, long long v) {
  std::erase_if(extra, [&](const IlpConstraint& c) {
    return c.terms.size() == 1 && c.terms[0].first == var && c.terms[0].second == 1 && c.cmp == cmp;
  });
  extra.push_back({{{var, 1}}, cmp, v});
  return extra;
}

struct Node {
  mpq_class bound;
  std::size_t seq = 0;
  std::vector<IlpConstraint> extra;
};

// Smallest LP bound first; among equal bounds the newest node, which keeps
// the search diving while the bound does not move.
struct Later {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.seq < b.seq;
  }
};

}  // namespace

IlpResult solve_ilp(const IlpProblem& p, std::size_t max_nodes, const LazyCheck& lazy) {
  IlpResult res;
  std::priority_queue<Node, std::vector<Node>, Later> open;
  std::size_t seq = 0;
  open.push({0, seq++, {}});
  while (!open.empty()) {
    if (res.nodes >= max_nodes) {
      res.status = IlpStatus::BudgetExhausted;
      return res;
    }
    std::vector<IlpConstraint> extra = open.top().extra;
    open.pop();
    ++res.nodes;
    IlpProblem q = p;
    q.constraints.insert(q.constraints.end(), extra.begin(), extra.end());
    auto x = solve_lp(q);
    if (!x) continue;
    mpq_class value = 0;
    for (std::size_t j = 0; j < p.objective.size() && j < p.num_vars; ++j) value += static_cast<long>(p.objective[j]) * (*x)[j];
    std::size_t frac = p.num_vars;
    for (std::size_t j = 0; j < p.num_vars; ++j)
      if (!is_integer((*x)[j])) {
        frac = j;
        break;
      }
    if (frac < p.num_vars) {
      const mpz_class fl = floor_of((*x)[frac]);
      if (!fl.fits_slong_p()) throw Error("branch value out of range");
      open.push({value, seq++, with_bound(extra, frac, Cmp::Le, fl.get_si())});
      open.push({value, seq++, with_bound(extra, frac, Cmp::Ge, fl.get_si() + 1)});
      continue;
    }
    std::vector<mpz_class> v(p.num_vars);
    for (std::size_t j = 0; j < p.num_vars; ++j) v[j] = (*x)[j].get_num();
    if (lazy) {
      if (auto split = lazy(v)) {
        ++res.lazy_splits;
        auto second = extra, first = extra;
        second.push_back(split->second);
        first.push_back(split->first);
        open.push({value, seq++, std::move(second)});
        open.push({value, seq++, std::move(first)});
        continue;
      }
    }
    res.status = IlpStatus::Feasible;
    res.values = std::move(v);
    return res;
  }
  res.status = IlpStatus::Infeasible;
  return res;
}

}  // namespace ltlpct
