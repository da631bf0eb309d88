#pragma once

// Picks the component(s) to reconfigure by CBOM and splits one of them in two
// along the cheapest cut of its internal call graph.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "compmetrics/code_model.hpp"
#include "compmetrics/metrics.hpp"

namespace compmetrics {

enum class Strategy { max_cbom, threshold };

struct ReconfigPolicy {
  Strategy strategy = Strategy::max_cbom;
  /// Required iff strategy == threshold. No default: it is domain specific.
  std::optional<std::uint64_t> threshold;
};

/// Component with the highest CBOM; ties go to the smallest id.
/// Throws Error(empty_report).
std::string select_max(const MetricsReport& report);

/// Components with CBOM strictly greater than `threshold`, sorted by id.
std::vector<std::string> select_threshold(const MetricsReport& report,
                                          std::uint64_t threshold);

/// Dispatches on the policy. Throws Error(usage) for a threshold policy
/// without a threshold.
std::vector<std::string> select_components(const MetricsReport& report,
                                           const ReconfigPolicy& policy);

enum class PartitionMethod { exact, heuristic };

struct PlanPart {
  std::string name;
  std::vector<std::string> classes;  // sorted
  std::uint64_t predicted_cbom = 0;

  bool operator==(const PlanPart&) const = default;
};

struct PartitionPlan {
  std::string component;
  std::vector<PlanPart> parts;
  std::uint64_t cross_coupling = 0;
  PartitionMethod method = PartitionMethod::exact;

  bool operator==(const PartitionPlan&) const = default;
};

/// Components with at most this many classes are split by exhaustive search.
inline constexpr std::size_t kExactSearchLimit = 15;

struct PartitionOptions {
  enum class Search { automatic, exact, heuristic };

  std::size_t parts = 2;
  std::size_t min_part_size = 1;
  Search search = Search::automatic;
};

/// Two-way split of `component` minimizing the summed call_edges counts whose
/// endpoints land in different parts. Part 1 always holds the smallest class
/// id; among equal cuts the smallest part-1 membership wins. The exact path
/// is optimal. The heuristic path refines a size-balanced seed and a global
/// minimum-cut seed with moves and pairwise swaps; it is optimal when
/// min_part_size is 1 and otherwise not guaranteed to be.
/// Throws Error(unknown_component) or Error(not_partitionable).
PartitionPlan propose_partition(const CodeFacts& facts, std::string_view component,
                                const PartitionOptions& options = {});

/// Summed call_edges counts between classes of `part` and classes of
/// `component` outside it. Calls that leave the component are ignored.
std::uint64_t cross_coupling(const CodeFacts& facts, std::string_view component,
                             const std::vector<std::string>& part);

struct PartEvaluation {
  std::string name;
  std::uint64_t cbom = 0;
  std::uint64_t wcm = 0;

  bool operator==(const PartEvaluation&) const = default;
};

struct PartitionEvaluation {
  std::string component;
  std::uint64_t original_cbom = 0;
  std::uint64_t original_wcm = 0;
  std::vector<PartEvaluation> parts;
  std::uint64_t cross_coupling = 0;
  /// Every part's CBOM is strictly below the original component's.
  bool improved = false;
};

/// Throws Error(stale_plan) when the plan does not match the facts.
PartitionEvaluation evaluate_partition(const CodeFacts& facts,
                                       const PartitionPlan& plan);

/// Replaces the component by one component per part. Inheritance and
/// invocation records are unchanged. Throws Error(stale_plan).
CodeFacts apply_partition(const CodeFacts& facts, const PartitionPlan& plan);

std::string plan_to_text(const PartitionPlan& plan);
/// Throws ParseError or Error(unsupported_version).
PartitionPlan plan_from_text(std::string_view text);

}  // namespace compmetrics
