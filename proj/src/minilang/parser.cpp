#include "compmetrics/minilang/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <initializer_list>
#include <set>

namespace compmetrics::minilang {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += ", ";
    out += item;
  }
  return out;
}

}  // namespace

SyntaxError::SyntaxError(Span at, std::vector<std::string> expected,
                         std::string found)
    : Error(ErrorCode::syntax_error,
            std::to_string(at.line) + ":" + std::to_string(at.column) +
                ": expected " + join(expected) + " but found " + found),
      at_(at),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

namespace {

enum class Tok {
  identifier,
  integer,
  punct,  // operators and delimiters, spelled in `text`
  keyword,
  end,
};

struct Token {
  Tok kind;
  std::string text;
  Span span;
};

constexpr std::string_view kKeywords[] = {
    "class", "extends", "if",   "else",    "while",  "for",
    "switch", "case",   "default", "return", "self",
};

bool is_keyword(std::string_view word) {
  return std::find(std::begin(kKeywords), std::end(kKeywords), word) !=
         std::end(kKeywords);
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::end: return "end of input";
    case Tok::identifier: return "identifier '" + t.text + "'";
    case Tok::integer: return "integer " + t.text;
    default: return "'" + t.text + "'";
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_trivia();
      Span at{line_, column_};
      if (pos_ >= text_.size()) {
        out.push_back({Tok::end, "", at});
        return out;
      }
      char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                text_[pos_] == '_')) {
          advance();
        }
        std::string word(text_.substr(start, pos_ - start));
        out.push_back(
            {is_keyword(word) ? Tok::keyword : Tok::identifier, word, at});
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          advance();
        }
        out.push_back(
            {Tok::integer, std::string(text_.substr(start, pos_ - start)), at});
      } else {
        static constexpr std::string_view two[] = {"==", "!=", "<=", ">=",
                                                   "&&", "||"};
        auto rest = text_.substr(pos_);
        auto it = std::find_if(std::begin(two), std::end(two),
                               [&](std::string_view op) { return rest.starts_with(op); });
        if (it != std::end(two)) {
          advance();
          advance();
          out.push_back({Tok::punct, std::string(*it), at});
        } else if (std::string_view("{}();:,.=<>+-*/!").find(c) !=
                   std::string_view::npos) {
          advance();
          out.push_back({Tok::punct, std::string(1, c), at});
        } else {
          throw SyntaxError(at, {"token"},
                            std::string("character '") + c + "'");
        }
      }
    }
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_trivia() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (text_.substr(pos_).starts_with("//")) {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (text_.substr(pos_).starts_with("/*")) {
        Span at{line_, column_};
        advance();
        advance();
        while (pos_ < text_.size() && !text_.substr(pos_).starts_with("*/")) {
          advance();
        }
        if (pos_ >= text_.size()) {
          throw SyntaxError(at, {"'*/'"}, "end of input");
        }
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::uint32_t line_ = 1;
  std::uint32_t column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Program program() {
    Program p;
    while (!at_end()) {
      if (!is_keyword("class")) fail({"'class'", "end of input"});
      p.classes.push_back(class_decl());
    }
    return p;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at_end() const { return peek().kind == Tok::end; }
  bool is_punct(std::string_view p, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::punct && peek(ahead).text == p;
  }
  bool is_keyword(std::string_view k) const {
    return peek().kind == Tok::keyword && peek().text == k;
  }
  const Token& take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    std::sort(expected.begin(), expected.end());
    expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
    throw SyntaxError(peek().span, std::move(expected), describe(peek()));
  }

  void expect_punct(std::string_view p) {
    if (!is_punct(p)) fail({"'" + std::string(p) + "'"});
    take();
  }
  void expect_keyword(std::string_view k) {
    if (!is_keyword(k)) fail({"'" + std::string(k) + "'"});
    take();
  }
  std::string identifier() {
    if (peek().kind != Tok::identifier) fail({"identifier"});
    return take().text;
  }

  ClassDecl class_decl() {
    ClassDecl cls;
    cls.span = peek().span;
    expect_keyword("class");
    cls.name = identifier();
    if (is_keyword("extends")) {
      take();
      cls.parent = identifier();
    }
    if (!is_punct("{")) {
      fail(cls.parent ? std::vector<std::string>{"'{'"}
                      : std::vector<std::string>{"'extends'", "'{'"});
    }
    take();
    while (!is_punct("}")) {
      if (peek().kind != Tok::identifier) fail({"identifier", "'}'"});
      cls.methods.push_back(method_decl());
    }
    take();
    return cls;
  }

  MethodDecl method_decl() {
    MethodDecl m;
    m.span = peek().span;
    m.name = identifier();
    expect_punct("(");
    if (!is_punct(")")) {
      m.params.push_back(identifier());
      while (is_punct(",")) {
        take();
        m.params.push_back(identifier());
      }
      if (!is_punct(")")) fail({"','", "')'"});
    }
    take();
    m.body = block();
    return m;
  }

  Block block() {
    expect_punct("{");
    Block body;
    while (!is_punct("}")) body.push_back(statement());
    take();
    return body;
  }

  Stmt statement() {
    Stmt s;
    s.span = peek().span;
    if (is_keyword("if")) {
      s.node = if_stmt();
    } else if (is_keyword("while")) {
      take();
      expect_punct("(");
      WhileStmt w{expression(), {}};
      expect_punct(")");
      w.body = block();
      s.node = std::move(w);
    } else if (is_keyword("for")) {
      s.node = for_stmt();
    } else if (is_keyword("switch")) {
      s.node = switch_stmt();
    } else if (is_keyword("return")) {
      take();
      ReturnStmt r;
      if (!is_punct(";")) r.value = expression();
      expect_punct(";");
      s.node = std::move(r);
    } else if (is_punct("{")) {
      s.node = BlockStmt{block()};
    } else if (peek().kind == Tok::identifier || is_keyword("self")) {
      s = simple_statement();
      expect_punct(";");
    } else {
      fail({"'if'", "'while'", "'for'", "'switch'", "'return'", "'{'", "'}'",
            "identifier", "'self'"});
    }
    return s;
  }

  IfStmt if_stmt() {
    expect_keyword("if");
    expect_punct("(");
    IfStmt st{expression(), {}, std::nullopt};
    expect_punct(")");
    st.then_body = block();
    if (is_keyword("else")) {
      take();
      if (is_keyword("if")) {
        Stmt nested;
        nested.span = peek().span;
        nested.node = if_stmt();
        st.else_body = Block{};
        st.else_body->push_back(std::move(nested));
      } else if (is_punct("{")) {
        st.else_body = block();
      } else {
        fail({"'if'", "'{'"});
      }
    }
    return st;
  }

  ForStmt for_stmt() {
    expect_keyword("for");
    expect_punct("(");
    ForStmt st;
    if (!is_punct(";")) st.init = Box<Stmt>(simple_statement());
    expect_punct(";");
    if (!is_punct(";")) st.condition = expression();
    expect_punct(";");
    if (!is_punct(")")) st.step = Box<Stmt>(simple_statement());
    expect_punct(")");
    st.body = block();
    return st;
  }

  SwitchStmt switch_stmt() {
    expect_keyword("switch");
    expect_punct("(");
    SwitchStmt st{expression(), {}};
    expect_punct(")");
    expect_punct("{");
    if (!is_keyword("case") && !is_keyword("default")) {
      fail({"'case'", "'default'"});
    }
    while (is_keyword("case") || is_keyword("default")) {
      SwitchArm arm;
      if (take().text == "case") arm.label = case_label();
      expect_punct(":");
      while (!is_keyword("case") && !is_keyword("default") && !is_punct("}")) {
        arm.body.push_back(statement());
      }
      st.arms.push_back(std::move(arm));
    }
    expect_punct("}");
    return st;
  }

  Expr case_label() {
    Expr e;
    e.span = peek().span;
    bool negative = false;
    if (is_punct("-")) {
      take();
      negative = true;
    }
    if (peek().kind == Tok::integer) {
      auto value = integer();
      e.node = IntExpr{negative ? -value : value};
    } else if (!negative && peek().kind == Tok::identifier) {
      e.node = NameExpr{take().text};
    } else {
      fail(negative ? std::vector<std::string>{"integer"}
                    : std::vector<std::string>{"integer", "identifier", "'-'"});
    }
    return e;
  }

  std::int64_t integer() {
    const auto& tok = take();
    std::int64_t value = 0;
    auto [ptr, ec] =
        std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
    if (ec != std::errc{}) throw SyntaxError(tok.span, {"integer"}, describe(tok));
    return value;
  }

  // simple := IDENT '=' expr | call
  Stmt simple_statement() {
    Stmt s;
    s.span = peek().span;
    if (peek().kind == Tok::identifier && is_punct("=", 1)) {
      AssignStmt a{take().text, {}};
      take();
      a.value = expression();
      s.node = std::move(a);
      return s;
    }
    if (peek().kind != Tok::identifier && !is_keyword("self")) {
      fail({"identifier", "'self'"});
    }
    if (!is_punct(".", 1)) {
      take();
      fail({"'='", "'.'"});
    }
    s.node = CallStmt{call()};
    return s;
  }

  CallExpr call() {
    CallExpr c;
    c.receiver = take().text;
    expect_punct(".");
    c.method = identifier();
    expect_punct("(");
    if (!is_punct(")")) {
      c.args.push_back(expression());
      while (is_punct(",")) {
        take();
        c.args.push_back(expression());
      }
      if (!is_punct(")")) fail({"','", "')'"});
    }
    take();
    return c;
  }

  Expr expression() { return binary(0); }

  static int precedence(std::string_view op) {
    if (op == "||") return 1;
    if (op == "&&") return 2;
    if (op == "==" || op == "!=") return 3;
    if (op == "<" || op == "<=" || op == ">" || op == ">=") return 4;
    if (op == "+" || op == "-") return 5;
    if (op == "*" || op == "/") return 6;
    return 0;
  }

  // Precedence climbing; all binary operators are left-associative.
  Expr binary(int min_prec) {
    Expr lhs = unary();
    while (peek().kind == Tok::punct) {
      int prec = precedence(peek().text);
      if (prec == 0 || prec <= min_prec) break;
      std::string op = take().text;
      Expr rhs = binary(prec);
      Expr combined;
      combined.span = lhs.span;
      combined.node = BinaryExpr{op, std::move(lhs), std::move(rhs)};
      lhs = std::move(combined);
    }
    return lhs;
  }

  Expr unary() {
    if (is_punct("!") || is_punct("-")) {
      Expr e;
      e.span = peek().span;
      std::string op = take().text;
      e.node = UnaryExpr{op, unary()};
      return e;
    }
    return primary();
  }

  Expr primary() {
    Expr e;
    e.span = peek().span;
    if (peek().kind == Tok::integer) {
      e.node = IntExpr{integer()};
    } else if (is_keyword("self") ||
               (peek().kind == Tok::identifier && is_punct(".", 1))) {
      e.node = call();
    } else if (peek().kind == Tok::identifier) {
      e.node = NameExpr{take().text};
    } else if (is_punct("(")) {
      take();
      e = expression();
      expect_punct(")");
    } else {
      fail({"integer", "identifier", "'self'", "'('", "'!'", "'-'"});
    }
    return e;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Program parse_source(std::string_view text) {
  return Parser(Lexer(text).run()).program();
}

}  // namespace compmetrics::minilang
