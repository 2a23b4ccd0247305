#include "doctest.h"

#include "ltlpct/library.hpp"
#include "ltlpct/parser.hpp"
#include "ltlpct/semantics.hpp"
#include "support/generators.hpp"

using namespace ltlpct;
using ltlpct::testing::make_rng;

namespace {
const Alphabet WS({"wht", "shdw"});
const TildeMap TM = TildeMap::suffixed({"a", "b", "s"});
}  // namespace

TEST_CASE("tilde maps") {
  CHECK(TM.tilde("a") == "a~");
  CHECK_THROWS_AS(TM.tilde("c"), Error);
  CHECK_THROWS_AS(TildeMap(std::map<Prop, Prop>{{"a", "a"}}), Error);
  CHECK_THROWS_AS(TildeMap(std::map<Prop, Prop>{{"a", "x"}, {"b", "x"}}), Error);
  CHECK_THROWS_AS(TildeMap(std::map<Prop, Prop>{{"a", "b"}, {"b", "c"}}), Error);
  CHECK_THROWS_AS(TildeMap(std::map<Prop, Prop>{{"wht", "w~"}}), Error);
}

TEST_CASE("psi_shadowy examples") {
  CHECK(eval(Word{{"wht"}, {"shdw"}}, psi_shadowy(), WS));
  CHECK_FALSE(eval(Word{{"wht"}}, psi_shadowy(), WS));
  CHECK_FALSE(eval(Word{{"wht"}, {"wht"}}, psi_shadowy(), WS));
  CHECK(props_of(psi_shadowy()) == std::set<Prop>{"wht", "shdw"});
  CHECK(print_formula(phi_odd()) == "G (Half wht <-> wht)");
}

TEST_CASE("shadowy classes") {
  CHECK(is_shadowy(Word{{"wht"}, {"shdw"}, {"wht"}, {"shdw"}}));
  CHECK_FALSE(is_shadowy(Word{{"wht"}, {"shdw"}, {"shdw"}, {"wht"}}));
  CHECK_FALSE(is_shadowy(Word{{"wht", "shdw"}, {"shdw"}}));
  CHECK_FALSE(is_shadowy(Word{{"wht"}}));
  CHECK(is_truly_shadowy(Word{{"wht", "a"}, {"shdw", "a~"}}, {"a"}, TM));
  CHECK_FALSE(is_truly_shadowy(Word{{"wht", "a"}, {"shdw"}}, {"a"}, TM));
  CHECK_FALSE(is_truly_shadowy(Word{{"wht", "a~"}, {"shdw", "a~"}}, {"a"}, TM));
}

TEST_CASE("psi_shadowy defines shadowy words") {
  CompiledFormula f(psi_shadowy(), WS);
  WordEnumerator en(WS, 8);
  while (en.next()) {
    const Word w = en.word();
    REQUIRE(f.eval_letters(en.letters().data(), en.length()) == is_shadowy(w));
  }
}

TEST_CASE("phi_transfer examples") {
  const Alphabet ctx({"wht", "shdw", "s", "s~"});
  const Formula t = phi_transfer("s", TM);
  CHECK(eval(Word{{"wht", "s"}, {"shdw", "s~"}}, t, ctx));
  CHECK_FALSE(eval(Word{{"wht", "s"}, {"shdw"}}, t, ctx));
  CHECK_FALSE(eval(Word{{"wht", "s"}, {"shdw", "s~"}, {"wht"}, {"shdw", "s~"}}, t, ctx));
  CHECK(eval(Word{{"wht", "s"}, {"shdw", "s~"}, {"wht"}, {"shdw"}, {"wht"}, {"shdw"}}, t, ctx));
  CHECK_THROWS_AS(phi_transfer("zz", TM), Error);
}

TEST_CASE("phi_transfer matches the structural conditions") {
  const Alphabet ctx({"wht", "shdw", "s", "s~"});
  CompiledFormula t(phi_transfer("s", TM), ctx);
  WordEnumerator en(ctx, 5);
  while (en.next())
    REQUIRE(t.eval_letters(en.letters().data(), en.length()) == transfer_conditions(en.word(), "s", TM));
  auto rng = make_rng(20);
  for (int n = 0; n < 200; ++n) {
    Word w = random_truly_shadowy(rng, 1 + rng() % 10, {"s"}, TM);
    REQUIRE(t.eval(w));
  }
}

TEST_CASE("psi_truly_shadowy") {
  CHECK(psi_truly_shadowy({}, TM) == psi_shadowy());
  const Alphabet ctx({"wht", "shdw", "a", "a~"});
  CompiledFormula f(psi_truly_shadowy({"a"}, TM), ctx);
  CHECK_FALSE(f.eval(Word{{"wht", "a"}, {"shdw"}}));
  WordEnumerator en(ctx, 6);
  while (en.next())
    REQUIRE(f.eval_letters(en.letters().data(), en.length()) == is_truly_shadowy(en.word(), {"a"}, TM));
}

TEST_CASE("phi_isequal compares white counts") {
  const Alphabet ctx({"wht", "shdw", "a", "b", "a~", "b~"});
  const Formula eq = phi_isequal("a", "b", TM);
  Word one_each{{"wht", "a"}, {"shdw", "a~"}, {"wht", "b"}, {"shdw", "b~"}, {"wht"}, {"shdw"}};
  CHECK(eval_at(one_each, 4, eq, ctx));
  CHECK(eval_at(one_each, 0, eq, ctx));
  CHECK_FALSE(eval_at(one_each, 2, eq, ctx));
  Word two_a{{"wht", "a"}, {"shdw", "a~"}, {"wht", "a"}, {"shdw", "a~"}, {"wht"}, {"shdw"}};
  CHECK_FALSE(eval_at(two_a, 4, eq, ctx));
  CHECK_THROWS_AS(phi_isequal("a", "a", TM), Error);

  auto rng = make_rng(21);
  CompiledFormula cf(eq, ctx);
  const Formula wa = parse_formula("wht & a"), wb = parse_formula("wht & b");
  for (int n = 0; n < 200; ++n) {
    Word w = random_truly_shadowy(rng, 1 + rng() % 8, {"a", "b"}, TM);
    auto t = cf.truth(w);
    for (std::size_t p = 0; p < w.size(); p += 2)
      REQUIRE(t[p] == (count_before(w, p, wa, ctx) == count_before(w, p, wb, ctx)));
  }
}

TEST_CASE("psi_shadowy_mfl") {
  CHECK(eval(Word{{"wht"}, {"shdw"}}, psi_shadowy_mfl(), WS));
  CHECK_FALSE(eval(Word{{"wht"}, {"wht"}}, psi_shadowy_mfl(), WS));
  CompiledFormula f(psi_shadowy_mfl(), WS);
  WordEnumerator en(WS, 8);
  while (en.next())
    REQUIRE(f.eval_letters(en.letters().data(), en.length()) == is_strongly_shadowy(en.word(), WS));
  // with an extra letter in the context, MFL sees it too
  const Alphabet wsa({"wht", "shdw", "a"});
  CompiledFormula g(psi_shadowy_mfl(), wsa);
  WordEnumerator en2(wsa, 6);
  while (en2.next())
    REQUIRE(g.eval_letters(en2.letters().data(), en2.length()) == is_strongly_shadowy(en2.word(), wsa));
}

TEST_CASE("strongly shadowy generator and importunate letters") {
  auto rng = make_rng(22);
  const Alphabet ctx({"wht", "shdw", "a", "b"});
  CompiledFormula half_a(parse_formula("Half a"), ctx), mfl_a(parse_formula("MFL a"), ctx);
  for (int n = 0; n < 300; ++n) {
    Word w = random_strongly_shadowy(rng, 1 + rng() % 8, {"a", "b"});
    REQUIRE(is_strongly_shadowy(w, ctx));
    REQUIRE(importunate_props(w).empty());
    auto h = half_a.truth(w), m = mfl_a.truth(w);
    for (std::size_t p = 0; p < w.size(); p += 2) REQUIRE(h[p] == m[p]);
  }
  CHECK(importunate_props(Word{{"wht", "a"}, {"shdw", "a"}, {"wht"}, {"shdw"}}) == std::set<Prop>{"a"});
  // labels of the last position are outside every past count
  CHECK(importunate_props(Word{{"wht", "a"}, {"shdw", "a"}}).empty());
  CHECK(is_strongly_shadowy(Word{{"wht", "a"}, {"shdw", "a"}}, ctx));
  CHECK_FALSE(is_strongly_shadowy(Word{{"wht", "a"}, {"shdw", "a"}, {"wht"}, {"shdw"}}, ctx));
}

TEST_CASE("dehalf") {
  FreshProps fresh;
  auto d = dehalf(parse_formula("Half a"), fresh);
  CHECK(d.formula == Formula::most_frequent("p$0"));
  REQUIRE(d.definitions.size() == 1);
  CHECK(d.definitions[0].second == parse_formula("a"));

  FreshProps f2;
  auto g = dehalf(parse_formula("G (wht -> Half x)"), f2);
  CHECK(g.formula == parse_formula("G (wht -> MFL p$0)"));

  FreshProps f3;
  auto same = dehalf(parse_formula("G a"), f3);
  CHECK(same.formula == parse_formula("G a"));
  CHECK(same.definitions.empty());

  FreshProps f4;
  auto shared = dehalf(parse_formula("Half a & X Half a & Half b"), f4);
  CHECK(shared.definitions.size() == 2);
  CHECK_FALSE(contains_op(shared.formula, Op::Half));

  FreshProps f5;
  auto avoid = dehalf(parse_formula("Half p$0 & p$1"), f5);
  CHECK(avoid.definitions[0].first == "p$2");

  FreshProps f6;
  CHECK_THROWS_AS(dehalf(parse_formula("Half (a & Half b)"), f6), Error);
  CHECK(shared.definitions_formula() ==
        parse_formula("G (p$0 <-> a) & G (p$1 <-> b)"));
}

TEST_CASE("dehalfication is sound on strongly shadowy models") {
  auto rng = make_rng(23);
  const std::vector<Prop> props{"wht", "shdw", "a"};
  int checked = 0;
  for (int n = 0; n < 300; ++n) {
    // Boolean combinations with one Half: no nesting, no temporal operator
    testing::FormulaShape shape;
    shape.props = props;
    shape.max_depth = 2;
    shape.temporal = false;
    shape.next = false;
    shape.counting = false;
    shape.mfl = false;
    Formula lambda = random_formula(rng, shape);
    Formula phi = Formula::conj(random_formula(rng, shape), Formula::half(lambda));
    if (rng() % 2) phi = Formula::neg(phi);
    FreshProps fresh;
    auto d = dehalf(phi, fresh);
    Word w = label_definitions(random_strongly_shadowy(rng, 1 + rng() % 6, {"a"}), d.definitions);
    const Alphabet ctx = Alphabet::of(w.props()).extended(props_of(phi)).extended(props_of(d.formula));
    if (!eval(w, Formula::conj(psi_shadowy_mfl(), d.definitions_formula()), ctx)) continue;
    ++checked;
    auto lhs = CompiledFormula(d.formula, ctx).truth(w);
    auto rhs = CompiledFormula(phi, ctx).truth(w);
    for (std::size_t p = 0; p < w.size(); p += 2)
      if (lhs[p]) REQUIRE(rhs[p]);
  }
  CHECK(checked > 50);
}
