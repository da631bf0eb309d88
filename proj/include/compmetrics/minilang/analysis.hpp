#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "compmetrics/code_model.hpp"
#include "compmetrics/minilang/ast.hpp"

namespace compmetrics::minilang {

/// Decision elements of a body: one per `if`, `while` and `for`, plus
/// (arms - 1) per `switch`, where `default` counts as an arm. Nested
/// constructs count; boolean operators do not.
std::uint64_t count_decisions(const Block& body);

/// Single-entry, single-exit CFG. Node 0 is the entry, node 1 the synthetic
/// exit. A branch (if/switch) ends the current block and gets one out-edge
/// per arm, plus a fall-through edge when there is no else/default. Loops
/// get a header node with a back edge from the end of the body. Statements
/// after a `return` are unreachable and contribute no nodes.
Cfg build_cfg(const Block& body);

inline constexpr NodeId kCfgExit = 1;

struct ComponentMap {
  std::map<std::string, std::string> by_class;
  std::optional<std::string> default_component;
};

struct LoweringDiagnostic {
  enum class Kind { unresolved_callee, unresolved_parent };
  Kind kind;
  Span at;
  std::string message;
};

struct LoweringResult {
  CodeFacts facts;
  /// Warning-level findings; the offending call or `extends` is dropped.
  std::vector<LoweringDiagnostic> warnings;
};

/// Class names become class ids. Each resolved call site adds 1 to the
/// callee's invocation count and 1 to the caller->callee class edge.
/// Throws Error(unmapped_class) for a class with no component and no default.
LoweringResult lower_to_facts(const Program& program, const ComponentMap& map);

}  // namespace compmetrics::minilang
