#include <sstream>

#include "compmetrics/minilang/parser.hpp"

namespace compmetrics::minilang {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

class Printer {
 public:
  std::string run(const Program& program) {
    bool first = true;
    for (const auto& cls : program.classes) {
      if (!first) out_ << "\n";
      first = false;
      print_class(cls);
    }
    return out_.str();
  }

 private:
  void indent() { out_ << std::string(depth_ * 2, ' '); }

  void print_class(const ClassDecl& cls) {
    out_ << "class " << cls.name;
    if (cls.parent) out_ << " extends " << *cls.parent;
    if (cls.methods.empty()) {
      out_ << " {\n}\n";
      return;
    }
    out_ << " {\n";
    ++depth_;
    for (const auto& m : cls.methods) {
      indent();
      out_ << m.name << "(";
      for (std::size_t i = 0; i < m.params.size(); ++i) {
        out_ << (i ? ", " : "") << m.params[i];
      }
      out_ << ") ";
      print_block(m.body);
      out_ << "\n";
    }
    --depth_;
    out_ << "}\n";
  }

  void print_block(const Block& body) {
    out_ << "{\n";
    ++depth_;
    for (const auto& s : body) print_stmt(s);
    --depth_;
    indent();
    out_ << "}";
  }

  void print_stmt(const Stmt& s) {
    indent();
    print_stmt_inline(s);
    out_ << "\n";
  }

  void print_stmt_inline(const Stmt& s) {
    std::visit(
        overloaded{
            [&](const IfStmt& st) { print_if(st); },
            [&](const WhileStmt& st) {
              out_ << "while (" << expr(st.condition) << ") ";
              print_block(st.body);
            },
            [&](const ForStmt& st) {
              out_ << "for (";
              if (st.init) out_ << simple(**st.init);
              out_ << "; ";
              if (st.condition) out_ << expr(*st.condition);
              out_ << "; ";
              if (st.step) out_ << simple(**st.step);
              out_ << ") ";
              print_block(st.body);
            },
            [&](const SwitchStmt& st) {
              out_ << "switch (" << expr(st.subject) << ") {\n";
              ++depth_;
              for (const auto& arm : st.arms) {
                indent();
                if (arm.label) {
                  out_ << "case " << expr(*arm.label) << ":\n";
                } else {
                  out_ << "default:\n";
                }
                ++depth_;
                for (const auto& inner : arm.body) print_stmt(inner);
                --depth_;
              }
              --depth_;
              indent();
              out_ << "}";
            },
            [&](const ReturnStmt& st) {
              out_ << "return";
              if (st.value) out_ << " " << expr(*st.value);
              out_ << ";";
            },
            [&](const BlockStmt& st) { print_block(st.body); },
            [&](const auto&) { out_ << simple(s) << ";"; },
        },
        s.node);
  }

  void print_if(const IfStmt& st) {
    out_ << "if (" << expr(st.condition) << ") ";
    print_block(st.then_body);
    if (!st.else_body) return;
    out_ << " else ";
    const auto& body = *st.else_body;
    if (body.size() == 1 && std::holds_alternative<IfStmt>(body[0].node)) {
      print_if(std::get<IfStmt>(body[0].node));
    } else {
      print_block(body);
    }
  }

  static std::string simple(const Stmt& s) {
    if (const auto* a = std::get_if<AssignStmt>(&s.node)) {
      return a->target + " = " + expr(a->value);
    }
    if (const auto* c = std::get_if<CallStmt>(&s.node)) return call(c->call);
    return "";
  }

  static std::string call(const CallExpr& c) {
    std::string out = c.receiver + "." + c.method + "(";
    for (std::size_t i = 0; i < c.args.size(); ++i) {
      if (i) out += ", ";
      out += expr(c.args[i]);
    }
    return out + ")";
  }

  // Binary operands are parenthesized whenever they are themselves binary, so
  // the printed text re-parses to the same tree regardless of precedence.
  static std::string operand(const Expr& e) {
    if (std::holds_alternative<BinaryExpr>(e.node)) return "(" + expr(e) + ")";
    return expr(e);
  }

  static std::string expr(const Expr& e) {
    return std::visit(
        overloaded{
            [](const NameExpr& n) { return n.name; },
            [](const IntExpr& n) { return std::to_string(n.value); },
            [](const CallExpr& c) { return call(c); },
            [](const UnaryExpr& u) { return u.op + operand(*u.operand); },
            [](const BinaryExpr& b) {
              return operand(*b.lhs) + " " + b.op + " " + operand(*b.rhs);
            },
        },
        e.node);
  }

  std::ostringstream out_;
  std::size_t depth_ = 0;
};

}  // namespace

std::string print_program(const Program& program) {
  return Printer().run(program);
}

}  // namespace compmetrics::minilang
