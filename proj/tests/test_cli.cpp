#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"
#include "ltlpct/fo2.hpp"
#include "ltlpct/io.hpp"
#include "ltlpct/library.hpp"
#include "ltlpct/parser.hpp"
#include "ltlpct/semantics.hpp"
#include "support/kripkes.hpp"
#include "support/machines.hpp"

using namespace ltlpct;
namespace fs = std::filesystem;

namespace {

struct Out {
  int code;
  std::string out;
  std::string err;
  Json json() const { return parse_json(out, "<stdout>"); }
};

Out run(std::vector<std::string> args) {
  std::ostringstream o, e;
  const int c = cli::run_cli(args, o, e);
  return {c, o.str(), e.str()};
}

/// Scratch directory removed at scope exit.
struct TempDir {
  fs::path dir;
  TempDir() {
    dir = fs::temp_directory_path() / ("ltlpct_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    fs::create_directories(dir);
  }
  ~TempDir() { fs::remove_all(dir); }
  static int& counter() {
    static int n = 0;
    return n;
  }
  std::string write(const std::string& name, const std::string& body) const {
    const auto p = dir / name;
    std::ofstream(p) << body;
    return p.string();
  }
};

}  // namespace

TEST_CASE("eval PM on a two-letter word") {
  TempDir t;
  const auto w = t.write("word.json", R"([["r"], ["g"]])");
  const auto r = run({"eval", "PM r", w});
  CHECK(r.code == cli::kPositive);
  CHECK(r.out.rfind("holds\n", 0) == 0);
  const auto j = run({"--json", "eval", "PM r", w}).json();
  CHECK(j["status"] == "holds");
  CHECK(word_from_json(j["witness"]) == Word{{"r"}, {"g"}});
  // At position 1 the only earlier position has r: 1 >= 1/2.
  CHECK(run({"eval", "PM g", w, "--pos", "1"}).code == cli::kNegative);
  CHECK(run({"eval", "PM r", w, "--pos", "1"}).code == cli::kPositive);
  const auto f = run({"--json", "eval", "g", w});
  CHECK(f.code == cli::kNegative);
  CHECK(f.json()["status"] == "fails");
  CHECK(f.json()["witness"].is_null());
  CHECK(run({"eval", "a", w, "--pos", "2"}).code == cli::kUsage);
}

TEST_CASE("sat-percent finds a checked witness") {
  const auto r = run({"--json", "sat-percent", "F (a & P[>= 50%] b)"});
  CHECK(r.code == cli::kPositive);
  const Json j = r.json();
  CHECK(j["status"] == "sat");
  const Word w = word_from_json(j["witness"]);
  const Formula f = parse_formula("F (a & P[>= 50%] b)");
  CHECK(eval(w, f, Alphabet::of(props_of(f))));

  const auto u = run({"--json", "sat-percent", "G a & F (! a & P[>= 0%] a)"});
  CHECK(u.code == cli::kNegative);
  CHECK(u.json()["status"] == "unsat");
  CHECK(u.json()["witness"].is_null());
  // Outside the fragment.
  CHECK(run({"sat-percent", "MFL a"}).code == cli::kInput);
}

TEST_CASE("sat-percent emits its automata") {
  TempDir t;
  const auto path = (t.dir / "aut.json").string();
  CHECK(run({"sat-percent", "F (a & P[>= 50%] b) | F (b & P[< 10%] a)", "--emit-automaton", path}).code == 0);
  const Json j = load_json(path);
  REQUIRE(j.size() == 2);
  for (const auto& a : j) {
    CHECK(a["constraints"].size() == 1);
    CHECK(a["states"].get<std::size_t>() > 0);
    CHECK(a.contains("formula"));
  }
}

TEST_CASE("bounded and X-fragment satisfiability") {
  const auto r = run({"--json", "sat-bounded", "a & X ! a", "--max-len", "3"});
  CHECK(r.code == cli::kPositive);
  CHECK(word_from_json(r.json()["witness"]) == Word{{"a"}, {}});
  // Nothing found up to the bound is not a proof.
  const auto n = run({"--json", "sat-bounded", "X X X a", "--max-len", "3"});
  CHECK(n.code == cli::kInconclusive);
  CHECK(n.json()["status"] == "inconclusive");
  CHECK(run({"sat-bounded", "a & ! a", "--max-len", "3"}).code == cli::kInconclusive);

  CHECK(run({"sat-x", "X X a & ! a"}).code == cli::kPositive);
  CHECK(run({"sat-x", "X a & ! X true"}).code == cli::kNegative);
  CHECK(run({"sat-x", "F a"}).code == cli::kInput);
  // At position 1 only a has been seen, so b is not the most frequent.
  CHECK(run({"sat-x", "a & ! b & X MFL b"}).code == cli::kNegative);
  CHECK(run({"sat-x", "a & X MFL b", "--ctx", "c"}).code == cli::kPositive);
}

TEST_CASE("formula files and line mode") {
  TempDir t;
  const auto one = t.write("f.ltl", "F a\n");
  CHECK(run({"sat-bounded", "@" + one, "--max-len", "2"}).code == 0);
  const auto many = t.write("fs.ltl", "# corpus\nF a\n\nG a & F ! a\n");
  const auto r = run({"--json", "sat-bounded", "@" + many, "--lines", "--max-len", "3"});
  CHECK(r.code == cli::kInconclusive);
  REQUIRE(r.json().size() == 2);
  CHECK(r.json()[0]["status"] == "sat");
  CHECK(r.json()[1]["status"] == "inconclusive");
  CHECK(run({"sat-x", "@" + t.write("g.ltl", "a\na & ! a\n"), "--lines"}).code == cli::kNegative);
}

TEST_CASE("parse errors cite file, line and column") {
  TempDir t;
  const auto bad = t.write("bad.ltl", "F a\n\nG (a &\n");
  const auto r = run({"sat-bounded", "@" + bad, "--lines", "--max-len", "2"});
  CHECK(r.code == cli::kInput);
  CHECK(r.err.find(bad + ":3:") != std::string::npos);
  const auto i = run({"eval", "a & (b", R"([["a"]])"});
  CHECK(i.code == cli::kInput);
  CHECK(i.err.find("<formula>:1:7:") != std::string::npos);
  const auto w = t.write("w.json", "[\n  [\"a\"],\n  [\"a\" 1]\n]\n");
  const auto e = run({"eval", "a", w});
  CHECK(e.code == cli::kInput);
  CHECK(e.err.find(w + ":3:8:") != std::string::npos);
  const auto s = run({"eval", "a", t.write("w2.json", R"([["a"], [7]])")});
  CHECK(s.err.find(": /1/0: expected a string") != std::string::npos);
  const auto fo = run({"fo-eval", "E x. a(x", R"([["a"]])"});
  CHECK(fo.code == cli::kInput);
  CHECK(fo.err.find("<fo-formula>:1:") != std::string::npos);
  CHECK(run({"eval", "a", (t.dir / "missing.json").string()}).code == cli::kInput);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
  CHECK(run({"eval", "a"}).code == cli::kUsage);
  CHECK(run({"sat-bounded", "a"}).code == cli::kUsage);
  CHECK(run({"gen", "fuzzy"}).code == cli::kUsage);
  CHECK(run({"mc", "{}", "a", "--bounded", "3", "--percent"}).code == cli::kUsage);
  CHECK(run({"encode-minsky", "{}", "--mfl"}).code == cli::kUsage);
  const auto h = run({"--help"});
  CHECK(h.code == 0);
  CHECK(h.out.find("sat-percent") != std::string::npos);
}

TEST_CASE("encode-minsky then eval on the encoded run") {
  TempDir t;
  const auto m = t.write("ex.json", machine_to_json(testing::ex_machine()).dump(2));
  const auto enc = run({"encode-minsky", m, "--target", "q2"});
  REQUIRE(enc.code == 0);
  const auto f = t.write("f.ltl", enc.out);

  const auto sim2 = run({"--json", "simulate-minsky", m, "--steps", "2"});
  REQUIRE(sim2.code == 0);
  CHECK(sim2.json()["steps"] == 2);
  const auto w2 = t.write("run2.json", sim2.json()["word"].dump());
  CHECK(run({"eval", "@" + f, w2}).code == cli::kPositive);

  // One step never reaches q2.
  const auto sim1 = run({"--json", "simulate-minsky", m, "--steps", "1"});
  const auto w1 = t.write("run1.json", sim1.json()["word"].dump());
  CHECK(run({"eval", "@" + f, w1}).code == cli::kNegative);

  // The encoded word decodes back to the simulated run.
  const Word w = word_from_json(sim2.json()["word"]);
  CHECK(run_to_json(run_of(w)) == sim2.json()["run"]);

  const Json j = run({"--json", "encode-minsky", m, "--target", "q2"}).json();
  CHECK(j["formula"].get<std::string>() + "\n" == enc.out);
  CHECK(j["sigma"][0] == "from_q0");
  CHECK(j["tildes"]["c1_0"] == "c1_0~");
  CHECK(j["definitions"].empty());
  const Json mj = run({"--json", "encode-minsky", m, "--target", "q2", "--mfl"}).json();
  CHECK_FALSE(mj["definitions"].empty());
  CHECK(run({"encode-minsky", m, "--target", "q7"}).code == cli::kInput);
  CHECK(run({"simulate-minsky", R"({"states":["q0"],"initial":"q0","delta":[]})", "--steps", "3"}).code == 0);
}

TEST_CASE("mc") {
  const std::string k = kripke_to_json(testing::alternator()).dump();
  const auto r = run({"--json", "mc", k, "F (b & P[>= 50%] a)"});
  CHECK(r.code == cli::kPositive);
  const Json j = r.json();
  CHECK(j["status"] == "sat");
  CHECK(j["path"][0] == "u");
  const Word w = word_from_json(j["witness"]);
  CHECK(eval(w, parse_formula("F (b & P[>= 50%] a)"), Alphabet({"a", "b"})));
  CHECK(run({"mc", k, "F (a & b)"}).code == cli::kNegative);
  CHECK(run({"mc", k, "F (a & b)", "--bounded", "4"}).code == cli::kInconclusive);
  CHECK(run({"mc", k, "F (b & X b)", "--bounded", "4"}).code == cli::kInconclusive);
  CHECK(run({"mc", k, "b", "--bounded", "4"}).code == cli::kInconclusive);
  CHECK(run({"mc", k, "F b", "--bounded", "4"}).code == cli::kPositive);
  CHECK(run({"mc", R"({"states":["u"],"initial":["u"],"edges":[]})", "a"}).code == cli::kInput);
}

TEST_CASE("translate-fo2 and fo-eval") {
  const auto r = run({"translate-fo2", "PM a", "--free"});
  CHECK(r.code == 0);
  CHECK(parse_fo(r.out) == translate(Var::X, parse_formula("PM a")));
  const auto c = run({"--json", "translate-fo2", "F a"});
  CHECK(parse_fo(c.json()["formula"].get<std::string>()) == translate_closed(parse_formula("F a")));
  CHECK(run({"translate-fo2", "X a"}).code == cli::kInput);

  CHECK(run({"fo-eval", "M x. a(x)", R"([["a"], []])"}).code == cli::kPositive);
  CHECK(run({"fo-eval", "M x. a(x)", R"([["a"], [], []])"}).code == cli::kNegative);
  CHECK(run({"fo-eval", "a(x)", R"([[], ["a"]])", "--x", "1"}).code == cli::kPositive);
  CHECK(run({"fo-eval", "a(x)", R"([["a"]])"}).code == cli::kInput);
}

TEST_CASE("gen") {
  const auto a = run({"--json", "--seed", "9", "gen", "shadowy", "--pairs", "3", "--count", "5", "--props", "a"});
  const auto b = run({"--json", "--seed", "9", "gen", "shadowy", "--pairs", "3", "--count", "5", "--props", "a"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.json().size() == 5);
  for (const auto& w : a.json()) {
    CHECK(is_shadowy(word_from_json(w)));
    CHECK(word_from_json(w).size() == 6);
  }
  const auto t = run({"--json", "gen", "truly", "--pairs", "4", "--count", "20", "--props", "a,b"});
  for (const auto& w : t.json()) CHECK(is_truly_shadowy(word_from_json(w), {"a", "b"}, TildeMap::suffixed({"a", "b"})));
  const auto tm = run({"--json", "gen", "truly", "--count", "5", "--props", "a", "--tildes", R"({"a": "abar"})"});
  for (const auto& w : tm.json()) CHECK(is_truly_shadowy(word_from_json(w), {"a"}, TildeMap(std::map<Prop, Prop>{{"a", "abar"}})));
  CHECK(run({"gen", "truly", "--props", "a,b", "--tildes", R"({"a": "abar"})"}).code == cli::kInput);
  const auto s = run({"--json", "gen", "strongly", "--pairs", "4", "--count", "20", "--props", "p,q"});
  for (const auto& w : s.json()) {
    const Word x = word_from_json(w);
    CHECK(is_strongly_shadowy(x, Alphabet::of([&] {
                                auto ps = x.props();
                                ps.insert({"wht", "shdw", "p", "q"});
                                return ps;
                              }())));
  }
  CHECK(run({"gen", "shadowy", "--count", "3"}).out.size() > 0);
}

TEST_CASE("exit code depends on status only") {
  // Same status from different commands, same code.
  CHECK(run({"eval", "a", R"([["a"]])"}).code == run({"sat-x", "a"}).code);
  CHECK(run({"eval", "b", R"([["a"]])"}).code == run({"sat-x", "a & ! a"}).code);
}
