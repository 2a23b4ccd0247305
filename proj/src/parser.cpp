#include "ltlpct/parser.hpp"

#include <cctype>
#include <optional>

namespace ltlpct {

ParseError::ParseError(const std::string& msg, std::size_t line, std::size_t column)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column),
      detail_(msg) {}

namespace {

enum class Tok {
  Ident,
  Number,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Percent,
  Not,
  And,
  Or,
  Implies,
  Iff,
  CmpOp,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t col;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool ident_body(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '~' || c == '$';
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    std::size_t l = line, cl = col;
    auto push = [&](Tok k, std::size_t n) {
      out.push_back({k, std::string(s.substr(i, n)), l, cl});
      advance(n);
    };
    if (ident_start(c)) {
      std::size_t j = i + 1;
      while (j < s.size()) {
        if (ident_body(s[j])) {
          ++j;
        } else if (s[j] == '+' && s[j - 1] == '_') {
          ++j;
        } else if (s[j] == '-' && s[j - 1] == '_' && j + 1 < s.size() && is_digit(s[j + 1])) {
          ++j;
        } else {
          break;
        }
      }
      push(Tok::Ident, j - i);
      continue;
    }
    if (is_digit(c)) {
      std::size_t j = i;
      while (j < s.size() && is_digit(s[j])) ++j;
      push(Tok::Number, j - i);
      continue;
    }
    auto starts = [&](std::string_view t) { return s.substr(i, t.size()) == t; };
    if (starts("<->")) { push(Tok::Iff, 3); continue; }
    if (starts("->")) { push(Tok::Implies, 2); continue; }
    if (starts("<=") || starts(">=")) { push(Tok::CmpOp, 2); continue; }
    switch (c) {
      case '(': push(Tok::LParen, 1); continue;
      case ')': push(Tok::RParen, 1); continue;
      case '[': push(Tok::LBracket, 1); continue;
      case ']': push(Tok::RBracket, 1); continue;
      case '%': push(Tok::Percent, 1); continue;
      case '!': push(Tok::Not, 1); continue;
      case '&': push(Tok::And, 1); continue;
      case '|': push(Tok::Or, 1); continue;
      case '<':
      case '>':
      case '=':
        push(Tok::CmpOp, 1);
        continue;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula parse_all() {
    Formula f = parse_iff();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw ParseError(msg, t.line, t.col);
  }
  void expect(Tok k, const char* what) {
    if (peek().kind != k) {
      fail(std::string("expected ") + what +
           (peek().kind == Tok::End ? " before end of input" : ", found '" + peek().text + "'"));
    }
    take();
  }
  bool is_keyword(std::string_view kw) const {
    return peek().kind == Tok::Ident && peek().text == kw;
  }

  Formula parse_iff() {
    Formula lhs = parse_implies();
    if (peek().kind == Tok::Iff) {
      take();
      return Formula::iff(lhs, parse_iff());
    }
    return lhs;
  }
  Formula parse_implies() {
    Formula lhs = parse_or();
    if (peek().kind == Tok::Implies) {
      take();
      return Formula::implies(lhs, parse_implies());
    }
    return lhs;
  }
  Formula parse_or() {
    Formula lhs = parse_and();
    if (peek().kind == Tok::Or) {
      take();
      return Formula::disj(lhs, parse_or());
    }
    return lhs;
  }
  Formula parse_and() {
    Formula lhs = parse_until();
    if (peek().kind == Tok::And) {
      take();
      return Formula::conj(lhs, parse_and());
    }
    return lhs;
  }
  Formula parse_until() {
    Formula lhs = parse_unary();
    if (is_keyword("U")) {
      take();
      return Formula::until(lhs, parse_until());
    }
    return lhs;
  }

  Cmp parse_cmp() {
    if (peek().kind != Tok::CmpOp) fail("expected comparison operator (<, <=, =, >=, >)");
    std::string t = take().text;
    if (t == "<") return Cmp::Lt;
    if (t == "<=") return Cmp::Le;
    if (t == "=") return Cmp::Eq;
    if (t == ">=") return Cmp::Ge;
    return Cmp::Gt;
  }

  Formula parse_unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Not:
        take();
        return Formula::neg(parse_unary());
      case Tok::LParen: {
        take();
        Formula f = parse_iff();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Ident:
        break;
      case Tok::End:
        fail("unexpected end of input");
      default:
        fail("unexpected '" + t.text + "'");
    }
    const std::string& w = t.text;
    if (w == "true") { take(); return Formula::tt(); }
    if (w == "false") { take(); return Formula::ff(); }
    if (w == "X") { take(); return Formula::next(parse_unary()); }
    if (w == "F") { take(); return Formula::eventually(parse_unary()); }
    if (w == "G") { take(); return Formula::always(parse_unary()); }
    if (w == "Half") { take(); return Formula::half(parse_unary()); }
    if (w == "PM") { take(); return Formula::past_majority(parse_unary()); }
    if (w == "U") fail("'U' needs a left operand");
    if (w == "MFL") {
      take();
      bool paren = peek().kind == Tok::LParen;
      if (paren) take();
      if (peek().kind != Tok::Ident || is_reserved_word(peek().text))
        fail("MFL expects a proposition");
      Prop p = take().text;
      if (paren) expect(Tok::RParen, "')'");
      return Formula::most_frequent(p);
    }
    if (w == "P" && peek(1).kind == Tok::LBracket) {
      take();
      take();
      Cmp c = parse_cmp();
      if (peek().kind != Tok::Number) fail("expected an integer percentage");
      const Token num = take();
      if (num.text.size() > 3 || std::stoi(num.text) > 100)
        throw ParseError("percentage must lie in 0..100", num.line, num.col);
      int k = std::stoi(num.text);
      expect(Tok::Percent, "'%'");
      expect(Tok::RBracket, "']'");
      return Formula::percent(c, k, parse_unary());
    }
    take();
    return Formula::atom(w);
  }

  static bool is_reserved_word(const std::string& w) {
    return w == "X" || w == "F" || w == "G" || w == "U" || w == "Half" || w == "PM" ||
           w == "MFL" || w == "true" || w == "false";
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// 0: atoms and unary operators, 1: U, 2: &, 3: |, 4: ->, 5: <->
int level(const Formula& f) {
  switch (f.op()) {
    case Op::Until: return 1;
    case Op::And: return 2;
    case Op::Or: return 3;
    case Op::Implies: return 4;
    case Op::Iff: return 5;
    default: return 0;
  }
}

bool bare_operand(const Formula& f) {
  return f.op() == Op::Atom || f.op() == Op::True || f.op() == Op::False;
}

void print_to(const Formula& f, std::string& out);

void print_unary_operand(const Formula& g, std::string& out) {
  if (bare_operand(g)) {
    print_to(g, out);
  } else {
    out += '(';
    print_to(g, out);
    out += ')';
  }
}

void print_to(const Formula& f, std::string& out) {
  switch (f.op()) {
    case Op::True: out += "true"; return;
    case Op::False: out += "false"; return;
    case Op::Atom: out += f.prop(); return;
    case Op::MostFrequent: out += "MFL " + f.prop(); return;
    case Op::Not:
      out += "! ";
      print_unary_operand(f.lhs(), out);
      return;
    case Op::Next: out += "X "; print_unary_operand(f.lhs(), out); return;
    case Op::Finally: out += "F "; print_unary_operand(f.lhs(), out); return;
    case Op::Globally: out += "G "; print_unary_operand(f.lhs(), out); return;
    case Op::Half: out += "Half "; print_unary_operand(f.lhs(), out); return;
    case Op::PastMajority: out += "PM "; print_unary_operand(f.lhs(), out); return;
    case Op::Percent:
      out += "P[";
      out += to_string(f.cmp());
      out += ' ';
      out += std::to_string(f.k());
      out += "%] ";
      print_unary_operand(f.lhs(), out);
      return;
    default:
      break;
  }
  const char* sym = "";
  switch (f.op()) {
    case Op::Until: sym = " U "; break;
    case Op::And: sym = " & "; break;
    case Op::Or: sym = " | "; break;
    case Op::Implies: sym = " -> "; break;
    case Op::Iff: sym = " <-> "; break;
    default: break;
  }
  int lv = level(f);
  auto side = [&](const Formula& c, bool paren) {
    if (paren) out += '(';
    print_to(c, out);
    if (paren) out += ')';
  };
  side(f.lhs(), level(f.lhs()) >= lv);
  out += sym;
  side(f.rhs(), level(f.rhs()) > lv);
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(lex(text)).parse_all(); }

std::string print_formula(const Formula& f) {
  std::string out;
  print_to(f, out);
  return out;
}

std::vector<Formula> parse_formula_lines(std::string_view text) {
  std::vector<Formula> out;
  std::size_t line_no = 0, start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos && line[first] != '#') {
      try {
        out.push_back(parse_formula(line));
      } catch (const ParseError& e) {
        throw ParseError(e.detail(), line_no, e.column());
      }
    }
    start = end + 1;
  }
  return out;
}

}  // namespace ltlpct
