#pragma once

// Language-agnostic model of an object-oriented system: components own
// classes, classes own methods, plus single-inheritance edges and
// callee-keyed invocation counts.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "compmetrics/error.hpp"

namespace compmetrics {

enum class Category {
  general_purpose,
  domain_specific,
  product_specific,
  unspecified,
};

std::string_view to_string(Category category);
std::optional<Category> parse_category(std::string_view text);

struct ComponentRecord {
  std::string id;
  std::string name;
  Category category = Category::unspecified;

  bool operator==(const ComponentRecord&) const = default;
};

using NodeId = std::uint32_t;

struct CfgEdge {
  NodeId from = 0;
  NodeId to = 0;

  auto operator<=>(const CfgEdge&) const = default;
};

/// Control-flow graph of one method body.
struct Cfg {
  std::vector<NodeId> nodes;
  std::vector<CfgEdge> edges;
  NodeId entry = 0;

  bool operator==(const Cfg&) const = default;
};

struct MethodRecord {
  std::string name;
  std::uint64_t decision_count = 0;
  std::optional<Cfg> cfg;

  bool operator==(const MethodRecord&) const = default;
};

struct ClassRecord {
  std::string id;
  std::string name;
  std::string component;
  std::vector<MethodRecord> methods;

  const MethodRecord* find_method(std::string_view method) const;

  bool operator==(const ClassRecord&) const = default;
};

struct InheritanceEdge {
  std::string child;
  std::string parent;

  auto operator<=>(const InheritanceEdge&) const = default;
};

/// How often one method was invoked. Keyed by callee only.
struct InvocationRecord {
  std::string callee_class;
  std::string callee_method;
  std::uint64_t count = 0;

  bool operator==(const InvocationRecord&) const = default;
};

/// Class-to-class call weight. Only the reconfigurator reads these: they are
/// the edges a component split tries not to cut.
struct CallEdge {
  std::string caller_class;
  std::string callee_class;
  std::uint64_t count = 0;

  bool operator==(const CallEdge&) const = default;
};

struct CodeFacts {
  std::vector<ComponentRecord> components;
  std::vector<ClassRecord> classes;
  std::vector<InheritanceEdge> inheritance;
  std::vector<InvocationRecord> invocations;
  std::vector<CallEdge> call_edges;

  const ComponentRecord* find_component(std::string_view id) const;
  const ClassRecord* find_class(std::string_view id) const;
  /// Parent of `class_id`, if it has one.
  const std::string* parent_of(std::string_view class_id) const;

  bool empty() const;

  bool operator==(const CodeFacts&) const = default;
};

/// Sorts every list lexicographically by key and merges duplicate invocation
/// records and call edges by summing their counts. Does not validate.
CodeFacts canonicalize(CodeFacts facts);

// ---------------------------------------------------------------------------
// Validation

enum class ViolationKind {
  duplicate_component,
  duplicate_class,
  duplicate_method,
  dangling_component,
  dangling_inheritance,
  self_inheritance,
  multiple_parents,
  inheritance_cycle,
  dangling_invocation,
  duplicate_invocation,
  dangling_call_edge,
  duplicate_call_edge,
  cfg_missing_entry,
  cfg_duplicate_node,
  cfg_dangling_edge,
  cfg_duplicate_edge,
  cfg_unreachable_node,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  /// Human-readable path such as `class HRDAO` or `class A method m cfg`.
  std::string location;

  bool operator==(const Violation&) const = default;
};

using ValidationReport = std::vector<Violation>;

ValidationReport validate_facts(const CodeFacts& facts);

class InvalidFactsError : public Error {
 public:
  explicit InvalidFactsError(ValidationReport report);

  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

/// Throws InvalidFactsError when `validate_facts` reports anything.
void require_valid(const CodeFacts& facts);

/// Checks the Cfg invariants alone, prefixing locations with `where`.
void validate_cfg(const Cfg& cfg, const std::string& where,
                  ValidationReport& out);

/// Classes of `component`, ordered by name (then id).
/// Throws Error(unknown_component).
std::vector<ClassRecord> classes_of(const CodeFacts& facts,
                                    std::string_view component);

}  // namespace compmetrics
