#include "lamsec/syntax.hpp"

#include <cctype>
#include <set>
#include <vector>

namespace lamsec::syntax {

ParseError::ParseError(SourcePos pos, const std::string& what)
    : std::runtime_error(std::to_string(pos.line) + ":" + std::to_string(pos.column) +
                         ": parse error: " + what),
      pos_(pos) {}

namespace {

using namespace surface;

struct Token {
  std::string text;
  SourcePos pos;
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '\'';
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c)) != 0) {
      advance(1);
      continue;
    }
    if (c == ';') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    const SourcePos pos{line, col};
    if (src.substr(i, 2) == "->" || src.substr(i, 2) == ":=") {
      out.push_back({std::string(src.substr(i, 2)), pos});
      advance(2);
      continue;
    }
    if (c == '^') {
      // blame labels may contain ':' so auto-assigned ones roundtrip
      std::size_t j = i + 1;
      while (j < src.size() && (ident_char(src[j]) || src[j] == ':')) ++j;
      if (j == i + 1) throw ParseError(pos, "expected a blame label after '^'");
      out.push_back({std::string(src.substr(i, j - i)), pos});
      advance(j - i);
      continue;
    }
    if (std::string_view("()[]@:.!*").find(c) != std::string_view::npos) {
      out.push_back({std::string(1, c), pos});
      advance(1);
      continue;
    }
    if (ident_char(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      out.push_back({std::string(src.substr(i, j - i)), pos});
      advance(j - i);
      continue;
    }
    throw ParseError(pos, "unexpected character '" + std::string(1, c) + "'");
  }
  return out;
}

const std::set<std::string, std::less<>> kKeywords = {
    "unit", "true", "false", "lam", "app", "if", "let", "ref", "ann", "low", "high", "Unit", "Bool", "Ref"};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Term program() {
    Term t = term();
    if (!done()) fail("unexpected '" + peek().text + "' after the program");
    return t;
  }

  Type whole_type() {
    Type t = type();
    if (!done()) fail("unexpected '" + peek().text + "' after the type");
    return t;
  }

 private:
  bool done() const { return i_ >= toks_.size(); }

  SourcePos here() const { return done() ? end_pos() : toks_[i_].pos; }

  SourcePos end_pos() const {
    if (toks_.empty()) return {1, 1};
    SourcePos p = toks_.back().pos;
    p.column += static_cast<int>(toks_.back().text.size());
    return p;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(here(), what); }

  const Token& peek() const {
    if (done()) fail("unexpected end of input");
    return toks_[i_];
  }

  bool at(std::string_view s) const { return !done() && toks_[i_].text == s; }

  Token next() {
    Token t = peek();
    ++i_;
    return t;
  }

  void expect(std::string_view s) {
    if (!at(s)) fail("expected '" + std::string(s) + "'" + (done() ? "" : ", got '" + peek().text + "'"));
    ++i_;
  }

  std::string ident() {
    const Token& t = peek();
    if (!std::isalpha(static_cast<unsigned char>(t.text[0])) && t.text[0] != '_') {
      fail("expected an identifier, got '" + t.text + "'");
    }
    if (kKeywords.contains(t.text)) fail("'" + t.text + "' is a keyword");
    return next().text;
  }

  Label label() {
    if (at("low")) return ++i_, Label::low;
    if (at("high")) return ++i_, Label::high;
    fail("expected a label (low or high)");
  }

  GLabel glabel() {
    if (at("*")) return ++i_, kStar;
    return label();
  }

  Label opt_label() {
    if (!at("@")) return Label::low;
    ++i_;
    return label();
  }

  GLabel opt_glabel() {
    if (!at("@")) return Label::low;
    ++i_;
    return glabel();
  }

  std::string opt_blame(SourcePos open) {
    if (!done() && peek().text[0] == '^') return next().text.substr(1);
    return "p" + std::to_string(open.line) + ":" + std::to_string(open.column);
  }

  Type type() {
    expect("(");
    if (at("Unit") || at("Bool")) {
      const bool is_unit = next().text == "Unit";
      GLabel g = opt_glabel();
      expect(")");
      return is_unit ? unit_t(g) : bool_t(g);
    }
    if (at("Ref")) {
      ++i_;
      Type inner = type();
      GLabel g = opt_glabel();
      expect(")");
      return ref_t(std::move(inner), g);
    }
    if (at("(")) {
      Type dom = type();
      expect("->");
      expect("[");
      GLabel pc = glabel();
      expect("]");
      Type cod = type();
      GLabel g = opt_glabel();
      expect(")");
      return fun_t(std::move(dom), pc, std::move(cod), g);
    }
    fail("expected a type");
  }

  Term term() {
    if (!at("(")) {
      SourcePos pos = here();
      return make(Var{ident()}, pos);
    }
    const SourcePos open = next().pos;
    const std::string head = peek().text;
    if (head == "unit" || head == "true" || head == "false") {
      ++i_;
      Label l = opt_label();
      expect(")");
      Const k = head == "unit" ? Const::unit : head == "true" ? Const::tt : Const::ff;
      return make(Constant{k, l}, open);
    }
    if (head == "lam") {
      ++i_;
      expect("[");
      Label pc = label();
      expect("]");
      std::string x = ident();
      expect(":");
      Type a = type();
      expect(".");
      Term body = term();
      Label l = opt_label();
      expect(")");
      return make(Lam{pc, std::move(x), std::move(a), std::move(body), l}, open);
    }
    if (head == "app") {
      ++i_;
      Term f = term();
      Term a = term();
      std::string p = opt_blame(open);
      expect(")");
      return make(App{std::move(f), std::move(a), std::move(p)}, open);
    }
    if (head == "if") {
      ++i_;
      Term c = term();
      Term t = term();
      Term e = term();
      std::string p = opt_blame(open);
      expect(")");
      return make(If{std::move(c), std::move(t), std::move(e), std::move(p)}, open);
    }
    if (head == "let") {
      ++i_;
      std::string x = ident();
      Term m = term();
      Term n = term();
      expect(")");
      return make(Let{std::move(x), std::move(m), std::move(n)}, open);
    }
    if (head == "ref") {
      ++i_;
      Label l = label();
      Term m = term();
      std::string p = opt_blame(open);
      expect(")");
      return make(Ref{l, std::move(m), std::move(p)}, open);
    }
    if (head == "!") {
      ++i_;
      Term m = term();
      expect(")");
      return make(Deref{std::move(m)}, open);
    }
    if (head == ":=") {
      ++i_;
      Term l = term();
      Term m = term();
      std::string p = opt_blame(open);
      expect(")");
      return make(Assign{std::move(l), std::move(m), std::move(p)}, open);
    }
    if (head == "ann") {
      ++i_;
      Term m = term();
      expect(":");
      Type a = type();
      std::string p = opt_blame(open);
      expect(")");
      return make(Ann{std::move(m), std::move(a), std::move(p)}, open);
    }
    fail("unknown form '" + head + "'");
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace

Term parse_program(std::string_view text) { return Parser(tokenize(text)).program(); }

Type parse_type(std::string_view text) { return Parser(tokenize(text)).whole_type(); }

std::string print(GLabel g) { return g.is_star() ? "*" : std::string(to_string(g.concrete())); }

std::string print(const Type& t) {
  const std::string g = " @ " + print(t.label) + ")";
  return std::visit(
      [&](const auto& r) -> std::string {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, UnitType>) return "(Unit" + g;
        if constexpr (std::is_same_v<R, BoolType>) return "(Bool" + g;
        if constexpr (std::is_same_v<R, RefType>) return "(Ref " + print(*r.inner) + g;
        if constexpr (std::is_same_v<R, FunType>) {
          return "(" + print(*r.dom) + " -> [" + print(r.pc) + "] " + print(*r.cod) + g;
        }
      },
      t.raw);
}

std::string print(const Term& t) {
  auto lab = [](Label l) { return std::string(to_string(l)); };
  return std::visit(
      [&](const auto& n) -> std::string {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Var>) return n.name;
        if constexpr (std::is_same_v<N, Constant>) {
          return "(" + std::string(to_string(n.value)) + " @ " + lab(n.label) + ")";
        }
        if constexpr (std::is_same_v<N, Lam>) {
          return "(lam [" + lab(n.pc) + "] " + n.param + " : " + print(n.param_type) + " . " +
                 print(n.body) + " @ " + lab(n.label) + ")";
        }
        if constexpr (std::is_same_v<N, App>) {
          return "(app " + print(n.fun) + " " + print(n.arg) + " ^" + n.blame + ")";
        }
        if constexpr (std::is_same_v<N, If>) {
          return "(if " + print(n.cond) + " " + print(n.then_branch) + " " + print(n.else_branch) + " ^" +
                 n.blame + ")";
        }
        if constexpr (std::is_same_v<N, Let>) {
          return "(let " + n.name + " " + print(n.bound) + " " + print(n.body) + ")";
        }
        if constexpr (std::is_same_v<N, Ref>) {
          return "(ref " + lab(n.label) + " " + print(n.init) + " ^" + n.blame + ")";
        }
        if constexpr (std::is_same_v<N, Deref>) return "(! " + print(n.ref) + ")";
        if constexpr (std::is_same_v<N, Assign>) {
          return "(:= " + print(n.ref) + " " + print(n.value) + " ^" + n.blame + ")";
        }
        if constexpr (std::is_same_v<N, Ann>) {
          return "(ann " + print(n.term) + " : " + print(n.type) + " ^" + n.blame + ")";
        }
      },
      t->kind);
}

}  // namespace lamsec::syntax
