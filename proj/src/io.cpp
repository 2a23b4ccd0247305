#include "ltlpct/io.hpp"

#include <fstream>
#include <sstream>

namespace ltlpct {

namespace {

std::string at(const std::string& source, const std::string& pointer) {
  return source + ": " + (pointer.empty() ? "/" : pointer);
}

[[noreturn]] void bad(const std::string& source, const std::string& pointer, const std::string& msg) {
  throw InputError(at(source, pointer), msg);
}

const Json& field(const Json& j, const char* key, const std::string& source, const std::string& ptr) {
  if (!j.is_object()) bad(source, ptr, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(source, ptr, std::string("missing field \"") + key + "\"");
  return *it;
}

std::string str(const Json& j, const std::string& source, const std::string& ptr) {
  if (!j.is_string()) bad(source, ptr, "expected a string");
  return j.get<std::string>();
}

std::vector<std::string> strings(const Json& j, const std::string& source, const std::string& ptr) {
  if (!j.is_array()) bad(source, ptr, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(str(j[i], source, ptr + "/" + std::to_string(i)));
  return out;
}

Prop prop(const Json& j, const std::string& source, const std::string& ptr) {
  std::string p = str(j, source, ptr);
  if (!is_valid_prop_name(p)) bad(source, ptr, "invalid proposition name '" + p + "'");
  return p;
}

Letter letter(const Json& j, const std::string& source, const std::string& ptr) {
  if (!j.is_array()) bad(source, ptr, "expected an array of proposition names");
  Letter l;
  for (std::size_t i = 0; i < j.size(); ++i) l.insert(prop(j[i], source, ptr + "/" + std::to_string(i)));
  return l;
}

Sign sign(const Json& j, const std::string& source, const std::string& ptr) {
  const std::string s = str(j, source, ptr);
  if (s == "0") return Sign::Zero;
  if (s == "+") return Sign::Pos;
  bad(source, ptr, "counter test must be \"0\" or \"+\"");
}

int update(const Json& j, const std::string& source, const std::string& ptr) {
  if (!j.is_number_integer()) bad(source, ptr, "counter update must be -1, 0 or 1");
  const auto v = j.get<long long>();
  if (v < -1 || v > 1) bad(source, ptr, "counter update must be -1, 0 or 1");
  return static_cast<int>(v);
}

}  // namespace

Json parse_json(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t upto = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (auto p = msg.find(": "); p != std::string::npos) msg = msg.substr(p + 2);
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col), msg);
  }
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path, "cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Json load_json(const std::string& path) { return parse_json(read_text(path), path); }

Json word_to_json(const Word& w) {
  Json j = Json::array();
  for (const auto& l : w) j.push_back(Json(std::vector<std::string>(l.begin(), l.end())));
  return j;
}

Word word_from_json(const Json& j, const std::string& source) {
  if (!j.is_array()) bad(source, "", "a word is an array of arrays of proposition names");
  if (j.empty()) bad(source, "", "words must be non-empty");
  std::vector<Letter> pos;
  for (std::size_t i = 0; i < j.size(); ++i) pos.push_back(letter(j[i], source, "/" + std::to_string(i)));
  return Word(std::move(pos));
}

Json alphabet_to_json(const Alphabet& a) { return Json(a.props()); }

Alphabet alphabet_from_json(const Json& j, const std::string& source) {
  if (!j.is_array()) bad(source, "", "an alphabet is an array of proposition names");
  std::vector<Prop> props;
  for (std::size_t i = 0; i < j.size(); ++i) props.push_back(prop(j[i], source, "/" + std::to_string(i)));
  try {
    return Alphabet(props);
  } catch (const Error& e) {
    bad(source, "", e.what());
  }
}

Json tildemap_to_json(const TildeMap& tm) {
  Json j = Json::object();
  for (const auto& [k, v] : tm.pairs()) j[k] = v;
  return j;
}

TildeMap tildemap_from_json(const Json& j, const std::string& source) {
  if (!j.is_object()) bad(source, "", "a tilde map is an object from props to props");
  std::map<Prop, Prop> pairs;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string ptr = "/" + it.key();
    if (!is_valid_prop_name(it.key())) bad(source, ptr, "invalid proposition name '" + it.key() + "'");
    pairs[it.key()] = prop(it.value(), source, ptr);
  }
  try {
    return TildeMap(pairs);
  } catch (const Error& e) {
    bad(source, "", e.what());
  }
}

Json machine_to_json(const MinskyMachine& m) {
  Json delta = Json::array();
  for (const auto& t : m.delta)
    delta.push_back({{"from", t.from},
                     {"c1", to_string(t.c1)},
                     {"c2", to_string(t.c2)},
                     {"d1", t.d1},
                     {"d2", t.d2},
                     {"to", t.to}});
  return {{"states", m.states}, {"initial", m.initial}, {"delta", delta}};
}

MinskyMachine machine_from_json(const Json& j, const std::string& source) {
  MinskyMachine m;
  m.states = strings(field(j, "states", source, ""), source, "/states");
  m.initial = str(field(j, "initial", source, ""), source, "/initial");
  const Json& d = field(j, "delta", source, "");
  if (!d.is_array()) bad(source, "/delta", "expected an array of transitions");
  for (std::size_t i = 0; i < d.size(); ++i) {
    const std::string p = "/delta/" + std::to_string(i);
    Transition t;
    t.from = str(field(d[i], "from", source, p), source, p + "/from");
    t.c1 = sign(field(d[i], "c1", source, p), source, p + "/c1");
    t.c2 = sign(field(d[i], "c2", source, p), source, p + "/c2");
    t.d1 = update(field(d[i], "d1", source, p), source, p + "/d1");
    t.d2 = update(field(d[i], "d2", source, p), source, p + "/d2");
    t.to = str(field(d[i], "to", source, p), source, p + "/to");
    m.delta.push_back(t);
  }
  const auto errs = validate_machine(m);
  if (!errs.empty()) {
    std::string msg = "invalid machine:";
    for (const auto& e : errs) msg += "\n  " + e;
    bad(source, "", msg);
  }
  return m;
}

Json run_to_json(const Run& r) {
  Json j = Json::array();
  for (const auto& t : r)
    j.push_back({{"from", t.from},
                 {"c1", to_string(t.c1)},
                 {"c2", to_string(t.c2)},
                 {"d1", t.d1},
                 {"d2", t.d2},
                 {"to", t.to}});
  return j;
}

Json kripke_to_json(const KripkeStructure& k) {
  Json edges = Json::array();
  for (const auto& [a, b] : k.edges) edges.push_back({a, b});
  Json labels = Json::object();
  for (const auto& [s, l] : k.labels) labels[s] = std::vector<std::string>(l.begin(), l.end());
  return {{"states", k.states}, {"initial", k.initial}, {"edges", edges}, {"labels", labels}};
}

KripkeStructure kripke_from_json(const Json& j, const std::string& source) {
  KripkeStructure k;
  k.states = strings(field(j, "states", source, ""), source, "/states");
  k.initial = strings(field(j, "initial", source, ""), source, "/initial");
  const Json& e = field(j, "edges", source, "");
  if (!e.is_array()) bad(source, "/edges", "expected an array of [from, to] pairs");
  for (std::size_t i = 0; i < e.size(); ++i) {
    const std::string p = "/edges/" + std::to_string(i);
    const auto pair = strings(e[i], source, p);
    if (pair.size() != 2) bad(source, p, "an edge is a [from, to] pair");
    k.edges.emplace_back(pair[0], pair[1]);
  }
  if (j.contains("labels")) {
    const Json& l = j["labels"];
    if (!l.is_object()) bad(source, "/labels", "expected an object from states to prop lists");
    for (auto it = l.begin(); it != l.end(); ++it)
      k.labels[it.key()] = letter(it.value(), source, "/labels/" + it.key());
  }
  const auto d = validate_kripke(k);
  if (!d.errors.empty()) {
    std::string msg = "invalid Kripke structure:";
    for (const auto& e2 : d.errors) msg += "\n  " + e2;
    bad(source, "", msg);
  }
  return k;
}

Json automaton_to_json(const ParikhAutomaton& p) {
  const Nfa& a = p.nfa;
  Json edges = Json::array();
  for (const auto& e : a.edges) {
    std::vector<std::string> l;
    for (std::size_t j = 0; j < a.ctx.size(); ++j)
      if ((e.letter >> j) & 1U) l.push_back(a.ctx[j]);
    edges.push_back({{"from", e.from}, {"letter", l}, {"to", e.to}});
  }
  std::vector<std::size_t> finals;
  for (std::size_t s = 0; s < a.num_states; ++s)
    if (a.final[s]) finals.push_back(s);
  auto side = [](const std::vector<std::pair<Prop, long long>>& ts) {
    Json out = Json::array();
    for (const auto& [q, c] : ts) out.push_back({{"prop", q}, {"coeff", c}});
    return out;
  };
  Json cons = Json::array();
  for (const auto& c : p.constraints)
    cons.push_back({{"lhs", side(c.lhs)},
                    {"cmp", std::string(to_string(c.cmp))},
                    {"rhs", side(c.rhs)},
                    {"constant", c.constant}});
  return {{"ctx", a.ctx.props()}, {"states", a.num_states}, {"initial", a.initial},
          {"final", finals},      {"edges", edges},          {"constraints", cons}};
}

}  // namespace ltlpct
