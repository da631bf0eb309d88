#pragma once

// Reusability metrics over CodeFacts: per-method complexity, WMC per class,
// WCM per component, depth of inheritance, number of children and CBOM.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "compmetrics/code_model.hpp"

namespace compmetrics {

/// Canonical method complexity: decision_count + 1. Ignores any CFG.
std::uint64_t method_complexity(const MethodRecord& method);

/// Graph form |E| - |V| + 1. Reported next to method_complexity as a
/// diagnostic; it is 0 for straight-line code where the canonical value is 1.
std::int64_t cfg_complexity(const Cfg& cfg);

/// Sum of method complexities; 0 for a class without methods.
std::uint64_t class_wmc(const ClassRecord& cls);

/// Sum of class_wmc over the component's classes.
std::uint64_t component_wcm(const CodeFacts& facts, std::string_view component);

/// Edges from the class up to its hierarchy root (0 for a root).
/// Facts must have acyclic inheritance.
std::uint64_t class_dit(const CodeFacts& facts, std::string_view class_id);

/// Max class_dit over the component's classes; 0 for an empty component.
std::uint64_t component_dit(const CodeFacts& facts, std::string_view component);

/// Number of immediate subclasses.
std::uint64_t class_noc(const CodeFacts& facts, std::string_view class_id);

/// Invocation count attributed to the component: the sum over invocation
/// records whose callee class belongs to it.
std::uint64_t component_cbom(const CodeFacts& facts, std::string_view component);

struct MethodMetrics {
  std::string class_id;
  std::string method;
  std::uint64_t complexity = 0;
  std::optional<std::int64_t> cfg_complexity;

  /// True when a CFG is present and the two complexity formulas differ.
  bool formulas_disagree() const {
    return cfg_complexity &&
           *cfg_complexity != static_cast<std::int64_t>(complexity);
  }

  bool operator==(const MethodMetrics&) const = default;
};

struct ClassMetrics {
  std::string class_id;
  std::string component;
  std::uint64_t wmc = 0;
  std::uint64_t dit = 0;
  std::uint64_t noc = 0;

  bool operator==(const ClassMetrics&) const = default;
};

struct ComponentMetrics {
  std::string component;
  std::uint64_t class_count = 0;
  std::uint64_t wcm = 0;
  std::uint64_t dit = 0;
  std::map<std::string, std::uint64_t> noc_by_class;
  std::uint64_t cbom = 0;

  bool operator==(const ComponentMetrics&) const = default;
};

/// Every method, class and component of the input appears exactly once,
/// sorted by id.
struct MetricsReport {
  std::vector<MethodMetrics> per_method;
  std::vector<ClassMetrics> per_class;
  std::vector<ComponentMetrics> per_component;

  const ComponentMetrics* component(std::string_view id) const;
  const ClassMetrics* class_metrics(std::string_view id) const;
  const MethodMetrics* method(std::string_view class_id,
                              std::string_view method) const;

  bool operator==(const MetricsReport&) const = default;
};

/// Throws InvalidFactsError when facts do not validate.
MetricsReport full_report(const CodeFacts& facts);

}  // namespace compmetrics
