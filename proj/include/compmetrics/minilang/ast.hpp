#pragma once

// MiniOO syntax tree. Equality ignores source spans so that a tree parsed
// from pretty-printed output compares equal to the original.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace compmetrics::minilang {

struct Span {
  std::uint32_t line = 1;
  std::uint32_t column = 1;
};

/// Owning pointer with value semantics, for recursive variants.
template <typename T>
class Box {
 public:
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}  // NOLINT
  Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = std::make_unique<T>(*other.ptr_);
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;

  const T& operator*() const { return *ptr_; }
  T& operator*() { return *ptr_; }
  const T* operator->() const { return ptr_.get(); }
  T* operator->() { return ptr_.get(); }

  friend bool operator==(const Box& a, const Box& b) { return *a == *b; }

 private:
  std::unique_ptr<T> ptr_;
};

struct Expr;

struct NameExpr {
  std::string name;
  bool operator==(const NameExpr&) const = default;
};

struct IntExpr {
  std::int64_t value = 0;
  bool operator==(const IntExpr&) const = default;
};

/// `Receiver.method(args)`; the receiver is a class name or `self`.
struct CallExpr {
  std::string receiver;
  std::string method;
  std::vector<Expr> args;
  bool operator==(const CallExpr&) const;
};

struct UnaryExpr {
  std::string op;
  Box<Expr> operand;
  bool operator==(const UnaryExpr&) const = default;
};

struct BinaryExpr {
  std::string op;
  Box<Expr> lhs;
  Box<Expr> rhs;
  bool operator==(const BinaryExpr&) const = default;
};

struct Expr {
  Span span;
  std::variant<NameExpr, IntExpr, CallExpr, UnaryExpr, BinaryExpr> node;

  bool operator==(const Expr& other) const { return node == other.node; }
};

inline bool CallExpr::operator==(const CallExpr& other) const {
  return receiver == other.receiver && method == other.method &&
         args == other.args;
}

struct Stmt;
using Block = std::vector<Stmt>;

struct IfStmt {
  Expr condition;
  Block then_body;
  std::optional<Block> else_body;
  bool operator==(const IfStmt&) const;
};

struct WhileStmt {
  Expr condition;
  Block body;
  bool operator==(const WhileStmt&) const;
};

/// Init and step clauses are single simple statements (assignment or call).
struct ForStmt {
  std::optional<Box<Stmt>> init;
  std::optional<Expr> condition;
  std::optional<Box<Stmt>> step;
  Block body;
  bool operator==(const ForStmt&) const;
};

struct SwitchArm {
  /// Empty for `default`.
  std::optional<Expr> label;
  Block body;
  bool operator==(const SwitchArm&) const;
};

struct SwitchStmt {
  Expr subject;
  std::vector<SwitchArm> arms;
  bool has_default() const;
  bool operator==(const SwitchStmt&) const;
};

struct CallStmt {
  CallExpr call;
  bool operator==(const CallStmt&) const = default;
};

struct ReturnStmt {
  std::optional<Expr> value;
  bool operator==(const ReturnStmt&) const = default;
};

struct AssignStmt {
  std::string target;
  Expr value;
  bool operator==(const AssignStmt&) const = default;
};

struct BlockStmt {
  Block body;
  bool operator==(const BlockStmt&) const;
};

struct Stmt {
  Span span;
  std::variant<IfStmt, WhileStmt, ForStmt, SwitchStmt, CallStmt, ReturnStmt,
               AssignStmt, BlockStmt>
      node;

  bool operator==(const Stmt& other) const { return node == other.node; }
};

inline bool IfStmt::operator==(const IfStmt& o) const {
  return condition == o.condition && then_body == o.then_body &&
         else_body == o.else_body;
}
inline bool WhileStmt::operator==(const WhileStmt& o) const {
  return condition == o.condition && body == o.body;
}
inline bool ForStmt::operator==(const ForStmt& o) const {
  return init == o.init && condition == o.condition && step == o.step &&
         body == o.body;
}
inline bool SwitchArm::operator==(const SwitchArm& o) const {
  return label == o.label && body == o.body;
}
inline bool SwitchStmt::operator==(const SwitchStmt& o) const {
  return subject == o.subject && arms == o.arms;
}
inline bool SwitchStmt::has_default() const {
  for (const auto& arm : arms) {
    if (!arm.label) return true;
  }
  return false;
}
inline bool BlockStmt::operator==(const BlockStmt& o) const {
  return body == o.body;
}

struct MethodDecl {
  Span span;
  std::string name;
  std::vector<std::string> params;
  Block body;

  bool operator==(const MethodDecl& o) const {
    return name == o.name && params == o.params && body == o.body;
  }
};

struct ClassDecl {
  Span span;
  std::string name;
  std::optional<std::string> parent;
  std::vector<MethodDecl> methods;

  bool operator==(const ClassDecl& o) const {
    return name == o.name && parent == o.parent && methods == o.methods;
  }
};

struct Program {
  std::vector<ClassDecl> classes;

  bool operator==(const Program&) const = default;
};

}  // namespace compmetrics::minilang
