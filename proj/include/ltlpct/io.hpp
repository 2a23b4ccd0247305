#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "ltlpct/kripke.hpp"
#include "ltlpct/library.hpp"
#include "ltlpct/minsky.hpp"
#include "ltlpct/parikh.hpp"
#include "ltlpct/word.hpp"

namespace ltlpct {

using Json = nlohmann::json;

/// Malformed input file. `where` is "file:line:col" for syntax errors and
/// "file: /json/pointer" for structural ones.
class InputError : public Error {
 public:
  InputError(const std::string& where, const std::string& msg) : Error(where + ": " + msg) {}
};

/// Parses JSON text; `source` names it in error messages.
Json parse_json(std::string_view text, const std::string& source);
/// Reads and parses a JSON file.
Json load_json(const std::string& path);
/// Reads a whole text file. Throws InputError if it cannot be opened.
std::string read_text(const std::string& path);

// Word: [["wht"], ["shdw", "a~"]]. Must be non-empty.
Json word_to_json(const Word& w);
Word word_from_json(const Json& j, const std::string& source = "<word>");

// Alphabet: ["a", "b"].
Json alphabet_to_json(const Alphabet& a);
Alphabet alphabet_from_json(const Json& j, const std::string& source = "<alphabet>");

// TildeMap: {"a": "a~"}.
Json tildemap_to_json(const TildeMap& tm);
TildeMap tildemap_from_json(const Json& j, const std::string& source = "<tildes>");

// Machine: {"states": [...], "initial": "q0", "delta": [{"from": "q0",
// "c1": "0", "c2": "+", "d1": 1, "d2": 0, "to": "q1"}, ...]}.
Json machine_to_json(const MinskyMachine& m);
MinskyMachine machine_from_json(const Json& j, const std::string& source = "<machine>");
Json run_to_json(const Run& r);

// Kripke: {"states": [...], "initial": [...], "edges": [["s", "t"], ...],
// "labels": {"s": ["a"]}}.
Json kripke_to_json(const KripkeStructure& k);
KripkeStructure kripke_from_json(const Json& j, const std::string& source = "<kripke>");

/// {"ctx": [...], "states": n, "initial": [...], "final": [...],
///  "edges": [{"from": i, "letter": [props], "to": j}, ...],
///  "constraints": [{"lhs": [{"prop": p, "coeff": c}], "cmp": ">=",
///                   "rhs": [...], "constant": k}, ...]}
Json automaton_to_json(const ParikhAutomaton& p);

}  // namespace ltlpct
