#include "doctest.h"

#include "ltlpct/parser.hpp"
#include "support/generators.hpp"

using namespace ltlpct;
using ltlpct::testing::make_rng;

namespace {
Formula A(const char* p) { return Formula::atom(p); }
}  // namespace

TEST_CASE("parse examples") {
  CHECK(parse_formula("F (g & PM g)") ==
        Formula::eventually(Formula::conj(A("g"), Formula::past_majority(A("g")))));
  CHECK(parse_formula("P[>= 50%] b") == Formula::percent(Cmp::Ge, 50, A("b")));
  CHECK(parse_formula("Half(wht) <-> wht") == Formula::iff(Formula::half(A("wht")), A("wht")));
  CHECK(parse_formula("MFL a") == Formula::most_frequent("a"));
  CHECK(parse_formula("MFL(a)") == Formula::most_frequent("a"));
  CHECK(parse_formula("true & !false") == Formula::conj(Formula::tt(), Formula::neg(Formula::ff())));
}

TEST_CASE("precedence and associativity") {
  CHECK(parse_formula("a & b | c") == Formula::disj(Formula::conj(A("a"), A("b")), A("c")));
  CHECK(parse_formula("a -> b -> c") == Formula::implies(A("a"), Formula::implies(A("b"), A("c"))));
  CHECK(parse_formula("a U b & c") == Formula::conj(Formula::until(A("a"), A("b")), A("c")));
  CHECK(parse_formula("F a U b") == Formula::until(Formula::eventually(A("a")), A("b")));
  CHECK(parse_formula("a U b U c") == Formula::until(A("a"), Formula::until(A("b"), A("c"))));
  CHECK(parse_formula("a <-> b -> c") == Formula::iff(A("a"), Formula::implies(A("b"), A("c"))));
  CHECK(parse_formula("! a & b") == Formula::conj(Formula::neg(A("a")), A("b")));
}

TEST_CASE("identifiers") {
  CHECK(parse_formula("i2_-1 & c1_+") == Formula::conj(A("i2_-1"), A("c1_+")));
  CHECK(parse_formula("a~ | p$0") == Formula::disj(A("a~"), A("p$0")));
  CHECK(parse_formula("a_->b") == Formula::implies(A("a_"), A("b")));
  CHECK(parse_formula("Fa") == A("Fa"));
  CHECK(parse_formula("P & q") == Formula::conj(A("P"), A("q")));
  CHECK_THROWS_AS(Formula::atom("U"), Error);
  CHECK_THROWS_AS(Formula::atom("1a"), Error);
}

TEST_CASE("print examples") {
  CHECK(print_formula(A("a")) == "a");
  CHECK(print_formula(Formula::past_majority(Formula::neg(A("r")))) == "PM (! r)");
  CHECK(print_formula(Formula::percent(Cmp::Lt, 20, A("a"))) == "P[< 20%] a");
  CHECK(print_formula(parse_formula("(a & b) & c")) == "(a & b) & c");
  CHECK(print_formula(parse_formula("a & (b & c)")) == "a & b & c");
  CHECK(print_formula(parse_formula("F (a U b)")) == "F (a U b)");
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_formula("a &\n  (b | )");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 8);
  }
  CHECK_THROWS_AS(parse_formula("P[=> 50%] a"), ParseError);
  CHECK_THROWS_AS(parse_formula("P[>= 150%] a"), ParseError);
  CHECK_THROWS_AS(parse_formula("a # b"), ParseError);
  CHECK_THROWS_AS(parse_formula("MFL (a & b)"), ParseError);
  CHECK_THROWS_AS(parse_formula(""), ParseError);
  CHECK_THROWS_AS(parse_formula("a b"), ParseError);
}

TEST_CASE("formula lines") {
  auto fs = parse_formula_lines("# header\na\n\n  F b\n");
  REQUIRE(fs.size() == 2);
  CHECK(fs[1] == Formula::eventually(A("b")));
  try {
    parse_formula_lines("a\nb &\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("round trip on generated formulas") {
  auto rng = make_rng(1);
  testing::FormulaShape shape;
  shape.props = {"a", "b", "i1_-1", "c1_+", "x~"};
  shape.max_depth = 5;
  for (int n = 0; n < 2000; ++n) {
    Formula f = random_formula(rng, shape);
    std::string s = print_formula(f);
    Formula g = parse_formula(s);
    REQUIRE_MESSAGE(g == f, s);
    CHECK(print_formula(g) == s);
  }
}

TEST_CASE("temporal depth") {
  CHECK(temporal_depth(A("a")) == 0);
  CHECK(temporal_depth(parse_formula("X X a")) == 2);
  CHECK(temporal_depth(parse_formula("X a & PM b")) == 1);
  CHECK(temporal_depth(parse_formula("X (a | X MFL b) & X a")) == 2);
  CHECK_THROWS_AS(temporal_depth(parse_formula("X F a")), Error);
}

TEST_CASE("props_of") {
  CHECK(props_of(A("a")) == std::set<Prop>{"a"});
  CHECK(props_of(Formula::most_frequent("s")) == std::set<Prop>{"s"});
  CHECK(props_of(parse_formula("a & F b")) == std::set<Prop>{"a", "b"});
  CHECK(props_of(Formula::tt()).empty());
}

TEST_CASE("structural equality and sharing") {
  Formula f = parse_formula("G (a -> F b)");
  Formula g = parse_formula("G (a -> F b)");
  CHECK(f == g);
  CHECK(f.hash() == g.hash());
  CHECK(f != parse_formula("G (a -> F c)"));
  CHECK(Formula::percent(Cmp::Ge, 50, A("a")) != Formula::percent(Cmp::Gt, 50, A("a")));
  CHECK(subformulas(parse_formula("a & a")).size() == 2);
  CHECK(substitute(parse_formula("Half a & F Half a"), parse_formula("Half a"), A("p")) ==
        parse_formula("p & F p"));
  CHECK(parse_formula("a & PM b").is_pure_ltl() == false);
  CHECK(parse_formula("a U X b").is_pure_ltl());
  CHECK_THROWS_AS(Formula::percent(Cmp::Ge, 101, A("a")), Error);
}
