#include "doctest.h"

#include "ltlpct/ilp.hpp"
#include "ltlpct/nfa.hpp"
#include "ltlpct/parikh.hpp"
#include "ltlpct/parser.hpp"
#include "ltlpct/semantics.hpp"
#include "ltlpct/solver.hpp"
#include "support/generators.hpp"
#include "support/reference.hpp"

using namespace ltlpct;
using ltlpct::testing::make_rng;

namespace {
Formula P(const char* s) { return parse_formula(s); }

// Exhaustive language check against the recursive evaluator.
std::size_t nfa_mismatches(const Formula& f, const Alphabet& ctx, std::size_t max_len) {
  const Nfa a = ltl_to_nfa(f, ctx);
  std::size_t bad = 0;
  WordEnumerator it(ctx, max_len);
  while (it.next())
    if (a.accepts_letters(it.letters()) != testing::ref_eval(it.word(), f, ctx)) ++bad;
  return bad;
}

long long count(const Word& w, const Prop& p) {
  long long n = 0;
  for (const auto& l : w) n += l.count(p) != 0;
  return n;
}
}  // namespace

TEST_CASE("nfa examples") {
  const Alphabet A({"a"});
  CHECK(nfa_mismatches(P("a"), A, 5) == 0);
  CHECK(nfa_mismatches(P("G a"), A, 5) == 0);
  CHECK(ltl_to_nfa(P("false"), A).empty());
  CHECK(ltl_to_nfa(P("a & ! a"), A).empty());
  CHECK_FALSE(ltl_to_nfa(P("F a"), A).empty());
  CHECK(ltl_to_nfa(P("G a"), A).accepts(Word{{"a"}, {"a"}, {"a"}}));
  CHECK_FALSE(ltl_to_nfa(P("G a"), A).accepts(Word{{"a"}, {}, {"a"}}));
  // X is strong: nothing satisfies it at the last position.
  CHECK_FALSE(ltl_to_nfa(P("G X a"), A).accepts(Word{{"a"}}));
  CHECK(ltl_to_nfa(P("G X a"), A).empty());
  CHECK_THROWS_AS(ltl_to_nfa(P("PM a"), A), Error);
  CHECK_THROWS_AS(ltl_to_nfa(P("b"), A), Error);
}

TEST_CASE("nfa language matches evaluator on random formulas") {
  auto rng = make_rng(41);
  const Alphabet AB({"a", "b"});
  for (int i = 0; i < 150; ++i) {
    const Formula f = testing::random_pure_ltl(rng, {"a", "b"}, 3);
    INFO(print_formula(f));
    CHECK(nfa_mismatches(f, AB, 5) == 0);
  }
}

TEST_CASE("projected dfa keeps the projected language") {
  auto rng = make_rng(42);
  const Alphabet AB({"a", "b"}), A({"a"});
  for (int i = 0; i < 60; ++i) {
    const Formula f = testing::random_pure_ltl(rng, {"a", "b"}, 3);
    INFO(print_formula(f));
    const Nfa n = ltl_to_nfa(f, AB);
    const Dfa d = project_minimal_dfa(n, A);
    // u over {a} is accepted iff some word over {a,b} restricting to u is.
    WordEnumerator it(A, 4);
    while (it.next()) {
      const auto u = it.letters();
      const bool lifted = lift_word(n, A, u).has_value();
      CHECK(d.accepts_letters(u) == lifted);
      if (lifted) CHECK(n.accepts_letters(*lift_word(n, A, u)));
    }
  }
}

TEST_CASE("minimal dfa sizes") {
  const Alphabet A({"a"});
  // All-a words: one accepting state looping on {a}.
  const Dfa g = project_minimal_dfa(ltl_to_nfa(P("G a"), A), A);
  CHECK(g.num_states() == 2);
  CHECK(g.num_edges() == 2);
  const Dfa e = project_minimal_dfa(ltl_to_nfa(P("false"), A), A);
  CHECK(e.num_states() == 1);
  CHECK_FALSE(e.final[0]);
}

TEST_CASE("lp and ilp basics") {
  // x + y = 3, x - y = 0  ->  x = y = 3/2 in LP, infeasible over integers.
  IlpProblem p;
  p.num_vars = 2;
  p.constraints = {{{{0, 1}, {1, 1}}, Cmp::Eq, 3}, {{{0, 1}, {1, -1}}, Cmp::Eq, 0}};
  auto lp = solve_lp(p);
  REQUIRE(lp);
  CHECK((*lp)[0] == mpq_class(3, 2));
  CHECK(solve_ilp(p, 100).status == IlpStatus::Infeasible);

  // min x + y s.t. 2x + 3y >= 7.
  IlpProblem q;
  q.num_vars = 2;
  q.constraints = {{{{0, 2}, {1, 3}}, Cmp::Ge, 7}};
  q.objective = {1, 1};
  const auto r = solve_ilp(q, 100);
  REQUIRE(r.status == IlpStatus::Feasible);
  CHECK(2 * r.values[0] + 3 * r.values[1] >= 7);
  CHECK(r.values[0] + r.values[1] == 3);

  // Strict comparisons are integral: x > 2, x < 3 has no solution.
  IlpProblem s;
  s.num_vars = 1;
  s.constraints = {{{{0, 1}}, Cmp::Gt, 2}, {{{0, 1}}, Cmp::Lt, 3}};
  CHECK(solve_ilp(s, 100).status == IlpStatus::Infeasible);
  s.constraints[1].rhs = 4;
  const auto rs = solve_ilp(s, 100);
  REQUIRE(rs.status == IlpStatus::Feasible);
  CHECK(rs.values[0] == 3);

  // Redundant equalities.
  IlpProblem d;
  d.num_vars = 2;
  d.constraints = {{{{0, 1}, {1, 1}}, Cmp::Eq, 2}, {{{0, 2}, {1, 2}}, Cmp::Eq, 4}, {{{0, 1}}, Cmp::Eq, 1}};
  const auto rd = solve_ilp(d, 100);
  REQUIRE(rd.status == IlpStatus::Feasible);
  CHECK(rd.values[1] == 1);

  // Budget.
  CHECK(solve_ilp(p, 1).status == IlpStatus::BudgetExhausted);
}

TEST_CASE("ilp agrees with enumeration on small random systems") {
  auto rng = make_rng(43);
  std::uniform_int_distribution<int> coef(-3, 3), rhs(-4, 6), cmp(0, 4);
  for (int t = 0; t < 200; ++t) {
    IlpProblem p;
    p.num_vars = 3;
    const int m = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < m; ++i) {
      IlpConstraint c;
      for (std::size_t v = 0; v < 3; ++v)
        if (int a = coef(rng)) c.terms.emplace_back(v, a);
      c.cmp = static_cast<Cmp>(cmp(rng));
      c.rhs = rhs(rng);
      p.constraints.push_back(c);
    }
    // Keep it bounded.
    for (std::size_t v = 0; v < 3; ++v) p.constraints.push_back({{{v, 1}}, Cmp::Le, 5});
    auto ok = [&](const long long* x) {
      for (const auto& c : p.constraints) {
        long long l = 0;
        for (const auto& [v, a] : c.terms) l += a * x[v];
        if (!compare(l, c.cmp, c.rhs)) return false;
      }
      return true;
    };
    bool any = false;
    for (long long x = 0; x <= 5 && !any; ++x)
      for (long long y = 0; y <= 5 && !any; ++y)
        for (long long z = 0; z <= 5 && !any; ++z) {
          const long long v[3] = {x, y, z};
          any = ok(v);
        }
    const auto r = solve_ilp(p, 10000);
    REQUIRE(r.status != IlpStatus::BudgetExhausted);
    CHECK((r.status == IlpStatus::Feasible) == any);
    if (r.status == IlpStatus::Feasible) {
      const long long v[3] = {r.values[0].get_si(), r.values[1].get_si(), r.values[2].get_si()};
      CHECK(ok(v));
    }
  }
}

TEST_CASE("parikh examples") {
  const Alphabet A({"a"});
  ParikhAutomaton ga{ltl_to_nfa(P("G a"), A), {{{{"a", 1}}, Cmp::Eq, {}, 3}}};
  CHECK(ga.constraints[0].str() == "1*#a = 3");
  const auto r = parikh_emptiness(ga);
  REQUIRE(r.verdict == ParikhVerdict::NonEmpty);
  CHECK(*r.word == Word{{"a"}, {"a"}, {"a"}});
  CHECK(eval(*r.word, P("G a"), A));

  ParikhAutomaton empty{ltl_to_nfa(P("false"), A), {{{{"a", 1}}, Cmp::Ge, {}}}};
  CHECK(parikh_emptiness(empty).verdict == ParikhVerdict::Empty);

  // x_a >= 1 and x_a <= 0 over the universal automaton.
  ParikhAutomaton contra{ltl_to_nfa(P("true"), A),
                         {{{{"a", 1}}, Cmp::Ge, {}, 1}, {{{"a", 1}}, Cmp::Le, {}, 0}}};
  CHECK(parikh_emptiness(contra).verdict == ParikhVerdict::Empty);
}

TEST_CASE("parikh needs connectivity") {
  // a* then b+ then a*: counts alone allow a disconnected cycle; ask for
  // more a than b with a only in a leading block of length <= 1.
  const Alphabet AB({"a", "b"});
  const Formula f = P("(a & ! b & X (G (b & ! a))) | G (b & ! a)");
  ParikhAutomaton p{ltl_to_nfa(f, AB), {{{{"a", 1}}, Cmp::Ge, {{"b", 1}}}}};
  const auto r = parikh_emptiness(p);
  REQUIRE(r.verdict == ParikhVerdict::NonEmpty);
  CHECK(*r.word == Word{{"a"}, {"b"}});
  p.constraints = {{{{"a", 1}}, Cmp::Gt, {{"b", 1}}}};
  // [{a}] alone violates X: a single a with no b is not accepted.
  CHECK(parikh_emptiness(p).verdict == ParikhVerdict::Empty);
}

TEST_CASE("decorate example") {
  const auto f = validate_percent_fragment(P("F (a & P[>= 50%] b)"));
  const auto cs = to_dnf(f);
  REQUIRE(cs.size() == 1);
  const Decorated d = decorate(cs[0]);
  REQUIRE(d.props.size() == 1);
  const auto& dp = d.props[0];
  const Word w{{"b", dp.b, dp.s}, {"a", dp.w}};
  const Alphabet ctx = Alphabet::of(props_of(d.formula)).extended(w.props());
  CHECK(eval(w, d.formula, ctx));
  REQUIRE(d.constraints.size() == 1);
  CHECK(d.constraints[0].holds(w));
  CHECK(d.constraints[0].str() == "100*#" + dp.s + " >= 50*#" + dp.b);

  // Mislabelled special positions are rejected.
  const Word under{{"b", dp.b}, {"a", dp.w}};
  CHECK_FALSE(eval(under, d.formula, ctx));
  const Word extra_b{{"b", dp.b, dp.s}, {"a", dp.w, dp.b}};
  CHECK_FALSE(eval(extra_b, d.formula, ctx));

  // k = 0 with >= is always met.
  const auto z = decorate(to_dnf(validate_percent_fragment(P("F (P[>= 0%] b)")))[0]);
  CHECK(z.constraints[0].str() == "100*#" + z.props[0].s + " >= 0*#" + z.props[0].b);

  // No blocks: formula unchanged, no constraints.
  const auto pure = decorate(to_dnf(validate_percent_fragment(P("G a")))[0]);
  CHECK(pure.formula == P("G a"));
  CHECK(pure.constraints.empty());
}

TEST_CASE("solve examples") {
  const auto s = solve(validate_percent_fragment(P("F (a & P[>= 50%] b)")));
  REQUIRE(s.verdict == Verdict::Sat);
  CHECK(eval(*s.witness, P("F (a & P[>= 50%] b)"), Alphabet({"a", "b"}).extended(s.witness->props())));

  CHECK(solve(validate_percent_fragment(P("G a & F (! a & P[>= 0%] a)"))).verdict == Verdict::Unsat);
  CHECK(!bounded_sat(P("G a & F (! a & P[>= 0%] a)"), Alphabet({"a"}), 8));

  // p > 0 and b at 0 counts, so the block position p = 10 * #b >= 10.
  const Formula longf = P("b & ! a & F (a & P[= 10%] b)");
  const auto l = solve(validate_percent_fragment(longf));
  REQUIRE(l.verdict == Verdict::Sat);
  CHECK(eval(*l.witness, longf, Alphabet({"a", "b"}).extended(l.witness->props())));
  CHECK(l.witness->size() >= 11);
  CHECK_FALSE(bounded_sat(longf, Alphabet({"a", "b"}), 8));

  // Half of a non-empty past, but G forbids a.
  CHECK(solve(validate_percent_fragment(P("G ! a & b & F (! b & P[= 50%] a)"))).verdict == Verdict::Unsat);

  // Pure LTL agrees with automaton emptiness.
  CHECK(solve(validate_percent_fragment(P("G X a"))).verdict == Verdict::Unsat);
  CHECK(solve(validate_percent_fragment(P("a U b"))).verdict == Verdict::Sat);
}

TEST_CASE("solver agrees with bounded search") {
  auto rng = make_rng(44);
  std::size_t sat = 0, unsat = 0, inconclusive = 0;
  for (int i = 0; i < 60; ++i) {
    const Formula f = testing::random_percent_formula(rng, {"a", "b"}, 2);
    INFO(print_formula(f));
    const auto r = solve(validate_percent_fragment(f));
    const Alphabet ctx({"a", "b"});
    const auto b = bounded_sat(f, ctx, 6);
    if (r.verdict == Verdict::Sat) {
      ++sat;
      CHECK(eval(*r.witness, f, ctx.extended(r.witness->props())));
    } else if (r.verdict == Verdict::Unsat) {
      ++unsat;
      CHECK_FALSE(b.has_value());
    } else {
      ++inconclusive;
    }
    if (b) CHECK(r.verdict != Verdict::Unsat);
  }
  MESSAGE("sat " << sat << " unsat " << unsat << " inconclusive " << inconclusive);
  CHECK(inconclusive <= 6);
}
