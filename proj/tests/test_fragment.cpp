#include "doctest.h"

#include "ltlpct/fragment.hpp"
#include "ltlpct/parser.hpp"
#include "ltlpct/semantics.hpp"
#include "support/generators.hpp"

using namespace ltlpct;
using ltlpct::testing::make_rng;

namespace {
Formula P(const char* s) { return parse_formula(s); }
const Alphabet AB({"a", "b"});

Formula dnf_formula(const std::vector<Conjunct>& cs) {
  std::vector<Formula> parts;
  for (const auto& c : cs) parts.push_back(c.to_formula());
  return disj_all(parts);
}

// A formula that breaks the grammar, built by placing a percentage operator
// somewhere it is not licensed.
Formula violating(testing::Rng& rng, const std::vector<Prop>& props) {
  Formula ok = testing::random_percent_formula(rng, props, 2);
  Formula pct = Formula::percent(Cmp::Ge, 50, testing::random_pure_ltl(rng, props, 1));
  Formula bad;
  switch (rng() % 7) {
    case 0: bad = Formula::neg(Formula::eventually(Formula::conj(Formula::atom(props[0]), pct))); break;
    case 1: bad = Formula::eventually(Formula::conj(Formula::atom(props[0]), Formula::percent(Cmp::Lt, 20, pct))); break;
    case 2: bad = pct; break;
    case 3: bad = Formula::always(Formula::eventually(pct)); break;
    case 4: bad = Formula::eventually(Formula::disj(Formula::atom(props[0]), pct)); break;
    case 5: bad = Formula::eventually(Formula::conj(Formula::most_frequent(props[0]), Formula::atom(props[1]))); break;
    default: bad = Formula::implies(Formula::eventually(pct), Formula::atom(props[1])); break;
  }
  return rng() % 2 ? Formula::conj(ok, bad) : Formula::disj(bad, ok);
}
}  // namespace

TEST_CASE("validate examples") {
  CHECK_NOTHROW(validate_percent_fragment(P("F (a & P[>= 50%] b)")));
  CHECK_NOTHROW(validate_percent_fragment(P("G a")));
  CHECK_NOTHROW(validate_percent_fragment(P("F (P[< 20%] a & b & X b) | G a")));
  CHECK_NOTHROW(validate_percent_fragment(P("F (PM a) & F (b & Half (a | b))")));
  try {
    validate_percent_fragment(P("! P[>= 50%] b"));
    FAIL("expected rejection");
  } catch (const FragmentError& e) {
    CHECK(e.offending() == P("! P[>= 50%] b"));
  }
  CHECK_THROWS_AS(validate_percent_fragment(P("F (a & P[>= 50%] P[< 10%] b)")), FragmentError);
  CHECK_THROWS_AS(validate_percent_fragment(P("P[>= 50%] b")), FragmentError);
  CHECK_THROWS_AS(validate_percent_fragment(P("G F (P[>= 50%] b)")), FragmentError);
  CHECK_THROWS_AS(validate_percent_fragment(P("F (PM a & PM b)")), FragmentError);
  CHECK_THROWS_AS(validate_percent_fragment(P("F (a & MFL a)")), FragmentError);
  CHECK_THROWS_AS(validate_percent_fragment(P("F (a & ! PM b)")), FragmentError);
}

TEST_CASE("block matching normalises PM and Half") {
  auto b = match_block(P("F (PM a & b & X b)"));
  REQUIRE(b);
  CHECK(b->cmp == Cmp::Ge);
  CHECK(b->k == 50);
  CHECK(b->body == P("a"));
  CHECK(b->pre == P("b & X b"));
  auto h = match_block(P("F Half a"));
  REQUIRE(h);
  CHECK(h->cmp == Cmp::Eq);
  CHECK(h->pre == Formula::tt());
}

TEST_CASE("dnf examples") {
  auto one = to_dnf(validate_percent_fragment(P("F (a & P[>= 50%] b)")));
  REQUIRE(one.size() == 1);
  CHECK(one[0].base == Formula::tt());
  REQUIRE(one[0].blocks.size() == 1);
  CHECK(one[0].blocks[0] == PercentBlock{P("a"), Cmp::Ge, 50, P("b")});

  auto two = to_dnf(validate_percent_fragment(P("G a | F b")));
  REQUIRE(two.size() == 2);
  CHECK(two[0].base == P("G a"));
  CHECK(two[1].base == P("F b"));
  CHECK(two[0].blocks.empty());

  auto cross = to_dnf(validate_percent_fragment(P("(G a | F b) & F (a & P[< 30%] b) & X a")));
  REQUIRE(cross.size() == 2);
  CHECK(cross[0].base == P("G a & X a"));
  CHECK(cross[1].base == P("F b & X a"));
  CHECK(cross[0].blocks.size() == 1);
}

TEST_CASE("fragment acceptance on generated formulas") {
  auto rng = make_rng(10);
  const std::vector<Prop> props{"a", "b"};
  for (int n = 0; n < 300; ++n) {
    Formula ok = testing::random_percent_formula(rng, props, 2);
    CHECK_NOTHROW(validate_percent_fragment(ok));
    Formula bad = violating(rng, props);
    CHECK_THROWS_AS(validate_percent_fragment(bad), FragmentError);
  }
}

TEST_CASE("dnf preserves bounded models") {
  auto rng = make_rng(11);
  const std::vector<Prop> props{"a", "b"};
  for (int n = 0; n < 60; ++n) {
    Formula f = testing::random_percent_formula(rng, props, 2);
    Formula g = dnf_formula(to_dnf(validate_percent_fragment(f)));
    CompiledFormula cf(f, AB), cg(g, AB);
    WordEnumerator en(AB, 6);
    while (en.next())
      REQUIRE(cf.eval_letters(en.letters().data(), en.length()) ==
              cg.eval_letters(en.letters().data(), en.length()));
  }
}
