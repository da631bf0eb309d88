#include "compmetrics/reconfigurator.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <map>
#include <set>
#include <unordered_map>

#include "json_util.hpp"

namespace compmetrics {

std::string select_max(const MetricsReport& report) {
  if (report.per_component.empty()) {
    throw Error(ErrorCode::empty_report, "the report has no components");
  }
  // per_component is sorted by id, so the first maximum is the tie winner.
  const ComponentMetrics* best = &report.per_component.front();
  for (const auto& c : report.per_component) {
    if (c.cbom > best->cbom || (c.cbom == best->cbom && c.component < best->component)) {
      best = &c;
    }
  }
  return best->component;
}

std::vector<std::string> select_threshold(const MetricsReport& report,
                                          std::uint64_t threshold) {
  std::vector<std::string> out;
  for (const auto& c : report.per_component) {
    if (c.cbom > threshold) out.push_back(c.component);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> select_components(const MetricsReport& report,
                                           const ReconfigPolicy& policy) {
  if (policy.strategy == Strategy::max_cbom) return {select_max(report)};
  if (!policy.threshold) {
    throw Error(ErrorCode::usage, "the threshold strategy requires a value for P");
  }
  return select_threshold(report, *policy.threshold);
}

namespace {

using Weight = std::int64_t;

/// Undirected weighted call graph restricted to one component's classes.
struct ComponentGraph {
  std::vector<std::string> ids;  // sorted
  std::vector<std::vector<Weight>> w;

  std::size_t size() const { return ids.size(); }
};

ComponentGraph component_graph(const CodeFacts& facts, std::string_view component) {
  ComponentGraph g;
  for (const auto& cls : facts.classes) {
    if (cls.component == component) g.ids.push_back(cls.id);
  }
  std::sort(g.ids.begin(), g.ids.end());
  std::unordered_map<std::string_view, std::size_t> index;
  for (std::size_t i = 0; i < g.ids.size(); ++i) index.emplace(g.ids[i], i);
  g.w.assign(g.size(), std::vector<Weight>(g.size(), 0));
  for (const auto& e : facts.call_edges) {
    auto a = index.find(e.caller_class);
    auto b = index.find(e.callee_class);
    if (a == index.end() || b == index.end() || a->second == b->second) continue;
    g.w[a->second][b->second] += static_cast<Weight>(e.count);
    g.w[b->second][a->second] += static_cast<Weight>(e.count);
  }
  return g;
}

using Sides = std::vector<std::uint8_t>;  // 0 = part 1, 1 = part 2

Weight cut_of(const ComponentGraph& g, const Sides& side) {
  Weight cut = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      if (side[i] != side[j]) cut += g.w[i][j];
    }
  }
  return cut;
}

void normalize(Sides& side) {
  if (!side.empty() && side[0] == 1) {
    for (auto& s : side) s ^= 1;
  }
}

/// Part-1 membership comparison; indices follow sorted id order.
bool part1_less(const Sides& a, const Sides& b) {
  std::size_t i = 0;
  std::size_t j = 0;
  const std::size_t n = a.size();
  while (true) {
    while (i < n && a[i] != 0) ++i;
    while (j < n && b[j] != 0) ++j;
    if (i == n || j == n) return i == n && j != n;
    if (i != j) return i < j;
    ++i;
    ++j;
  }
}

struct Candidate {
  Sides side;
  Weight cut = std::numeric_limits<Weight>::max();

  bool better_than(const Candidate& other) const {
    if (cut != other.cut) return cut < other.cut;
    return part1_less(side, other.side);
  }
};

Candidate exact_search(const ComponentGraph& g, std::size_t min_size) {
  const std::size_t n = g.size();
  Candidate best;
  Sides side(n, 0);
  const std::uint64_t limit = std::uint64_t{1} << (n - 1);
  for (std::uint64_t mask = 1; mask < limit; ++mask) {
    auto second = static_cast<std::size_t>(std::popcount(mask));
    if (second < min_size || n - second < min_size) continue;
    for (std::size_t i = 1; i < n; ++i) side[i] = (mask >> (i - 1)) & 1;
    Candidate c{side, cut_of(g, side)};
    if (c.better_than(best)) best = std::move(c);
  }
  return best;
}

/// Stoer-Wagner global minimum cut; returns the side holding the last-merged
/// group of the best phase.
Sides stoer_wagner(const ComponentGraph& g) {
  const std::size_t n = g.size();
  auto w = g.w;
  std::vector<std::vector<std::size_t>> groups(n);
  for (std::size_t i = 0; i < n; ++i) groups[i] = {i};
  std::vector<bool> merged(n, false);

  Weight best = std::numeric_limits<Weight>::max();
  std::vector<std::size_t> best_group;
  for (std::size_t phase = 0; phase + 1 < n; ++phase) {
    std::vector<Weight> attach(n, 0);
    std::vector<bool> added(n, false);
    std::size_t prev = n;
    const std::size_t active = n - phase;
    for (std::size_t k = 0; k < active; ++k) {
      std::size_t pick = n;
      for (std::size_t v = 0; v < n; ++v) {
        if (merged[v] || added[v]) continue;
        if (pick == n || attach[v] > attach[pick]) pick = v;
      }
      added[pick] = true;
      if (k + 1 == active) {
        if (attach[pick] < best) {
          best = attach[pick];
          best_group = groups[pick];
        }
        groups[prev].insert(groups[prev].end(), groups[pick].begin(),
                            groups[pick].end());
        for (std::size_t v = 0; v < n; ++v) {
          w[prev][v] += w[pick][v];
          w[v][prev] = w[prev][v];
        }
        merged[pick] = true;
      } else {
        for (std::size_t v = 0; v < n; ++v) {
          if (!merged[v] && !added[v]) attach[v] += w[pick][v];
        }
      }
      prev = pick;
    }
  }
  Sides side(n, 0);
  for (auto v : best_group) side[v] = 1;
  return side;
}

/// Greedy refinement: applies the best strictly improving single move or
/// pairwise swap until none is left.
void refine(const ComponentGraph& g, Sides& side, std::size_t min_size) {
  const std::size_t n = g.size();
  std::vector<Weight> gain(n);
  while (true) {
    std::size_t count[2] = {0, 0};
    for (auto s : side) ++count[s];
    for (std::size_t v = 0; v < n; ++v) {
      Weight external = 0;
      Weight internal = 0;
      for (std::size_t u = 0; u < n; ++u) {
        if (u == v) continue;
        (side[u] == side[v] ? internal : external) += g.w[v][u];
      }
      gain[v] = external - internal;
    }

    Weight best = 0;
    std::size_t move_a = n;
    std::size_t move_b = n;
    for (std::size_t v = 0; v < n; ++v) {
      bool allowed = count[side[v]] - 1 >= std::max<std::size_t>(min_size, 1);
      if (allowed && gain[v] > best) {
        best = gain[v];
        move_a = v;
        move_b = n;
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        if (side[a] == side[b]) continue;
        Weight swap_gain = gain[a] + gain[b] - 2 * g.w[a][b];
        if (swap_gain > best) {
          best = swap_gain;
          move_a = a;
          move_b = b;
        }
      }
    }
    if (move_a == n) return;
    side[move_a] ^= 1;
    if (move_b != n) side[move_b] ^= 1;
  }
}

Candidate heuristic_search(const ComponentGraph& g, std::size_t min_size) {
  const std::size_t n = g.size();
  std::vector<Sides> seeds;

  Sides balanced(n, 0);
  for (std::size_t i = n / 2; i < n; ++i) balanced[i] = 1;
  seeds.push_back(std::move(balanced));

  Sides global = stoer_wagner(g);
  auto second = static_cast<std::size_t>(std::count(global.begin(), global.end(), 1));
  if (second >= min_size && n - second >= min_size) seeds.push_back(std::move(global));

  Candidate best;
  for (auto& seed : seeds) {
    refine(g, seed, min_size);
    normalize(seed);
    Candidate c{seed, cut_of(g, seed)};
    if (c.better_than(best)) best = std::move(c);
  }
  return best;
}

std::uint64_t cbom_of(const CodeFacts& facts, const std::set<std::string>& classes) {
  std::uint64_t total = 0;
  for (const auto& rec : facts.invocations) {
    if (classes.contains(rec.callee_class)) total += rec.count;
  }
  return total;
}

std::uint64_t wcm_of(const CodeFacts& facts, const std::set<std::string>& classes) {
  std::uint64_t total = 0;
  for (const auto& cls : facts.classes) {
    if (classes.contains(cls.id)) total += class_wmc(cls);
  }
  return total;
}

std::string part_name(std::string_view component, std::size_t index) {
  return std::string(component) + "_" + std::to_string(index + 1);
}

}  // namespace

std::uint64_t cross_coupling(const CodeFacts& facts, std::string_view component,
                             const std::vector<std::string>& part) {
  const std::set<std::string> inside(part.begin(), part.end());
  std::uint64_t total = 0;
  for (const auto& e : facts.call_edges) {
    const auto* caller = facts.find_class(e.caller_class);
    const auto* callee = facts.find_class(e.callee_class);
    if (!caller || !callee || caller->component != component ||
        callee->component != component) {
      continue;
    }
    if (inside.contains(e.caller_class) != inside.contains(e.callee_class)) {
      total += e.count;
    }
  }
  return total;
}

PartitionPlan propose_partition(const CodeFacts& facts, std::string_view component,
                                const PartitionOptions& options) {
  if (!facts.find_component(component)) {
    throw Error(ErrorCode::unknown_component,
                "unknown component '" + std::string(component) + "'");
  }
  if (options.parts != 2) {
    throw Error(ErrorCode::not_partitionable, "only two-way splits are supported");
  }
  const auto graph = component_graph(facts, component);
  const std::size_t min_size = std::max<std::size_t>(options.min_part_size, 1);
  if (graph.size() < 2 * min_size) {
    throw Error(ErrorCode::not_partitionable,
                "component '" + std::string(component) + "' has " +
                    std::to_string(graph.size()) + " classes; a split needs at least " +
                    std::to_string(2 * min_size));
  }

  bool exact = options.search == PartitionOptions::Search::exact ||
               (options.search == PartitionOptions::Search::automatic &&
                graph.size() <= kExactSearchLimit);
  if (exact && graph.size() > 63) {
    throw Error(ErrorCode::not_partitionable, "too many classes for exhaustive search");
  }
  Candidate best = exact ? exact_search(graph, min_size) : heuristic_search(graph, min_size);

  PartitionPlan plan;
  plan.component = std::string(component);
  plan.method = exact ? PartitionMethod::exact : PartitionMethod::heuristic;
  plan.cross_coupling = static_cast<std::uint64_t>(best.cut);
  for (std::size_t p = 0; p < 2; ++p) {
    PlanPart part{part_name(component, p), {}, 0};
    for (std::size_t i = 0; i < graph.size(); ++i) {
      if (best.side[i] == p) part.classes.push_back(graph.ids[i]);
    }
    part.predicted_cbom =
        cbom_of(facts, std::set<std::string>(part.classes.begin(), part.classes.end()));
    plan.parts.push_back(std::move(part));
  }
  return plan;
}

namespace {

std::vector<std::set<std::string>> check_plan(const CodeFacts& facts,
                                              const PartitionPlan& plan) {
  auto stale = [&](const std::string& why) {
    return Error(ErrorCode::stale_plan,
                 "plan for '" + plan.component + "' does not match the facts: " + why);
  };
  if (!facts.find_component(plan.component)) throw stale("component is gone");
  if (plan.parts.size() < 2) throw stale("a plan needs at least two parts");

  std::set<std::string> expected;
  for (const auto& cls : facts.classes) {
    if (cls.component == plan.component) expected.insert(cls.id);
  }
  std::set<std::string> seen;
  std::vector<std::set<std::string>> parts;
  for (const auto& part : plan.parts) {
    if (part.classes.empty()) throw stale("part " + part.name + " is empty");
    for (const auto& id : part.classes) {
      if (!facts.find_class(id)) throw stale("class '" + id + "' no longer exists");
      if (!expected.contains(id)) {
        throw stale("class '" + id + "' is not in the component");
      }
      if (!seen.insert(id).second) throw stale("class '" + id + "' is in two parts");
    }
    parts.emplace_back(part.classes.begin(), part.classes.end());
  }
  if (seen != expected) throw stale("parts do not cover every class");
  return parts;
}

}  // namespace

PartitionEvaluation evaluate_partition(const CodeFacts& facts,
                                       const PartitionPlan& plan) {
  const auto parts = check_plan(facts, plan);
  PartitionEvaluation eval;
  eval.component = plan.component;
  eval.original_cbom = component_cbom(facts, plan.component);
  eval.original_wcm = component_wcm(facts, plan.component);

  std::uint64_t worst = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    PartEvaluation pe{plan.parts[i].name, cbom_of(facts, parts[i]), wcm_of(facts, parts[i])};
    worst = std::max(worst, pe.cbom);
    eval.parts.push_back(std::move(pe));
  }

  // Each crossing edge is seen from both of its parts.
  std::uint64_t crossing = 0;
  for (const auto& part : plan.parts) {
    crossing += cross_coupling(facts, plan.component, part.classes);
  }
  eval.cross_coupling = crossing / 2;
  eval.improved = worst < eval.original_cbom;
  return eval;
}

CodeFacts apply_partition(const CodeFacts& facts, const PartitionPlan& plan) {
  const auto parts = check_plan(facts, plan);
  CodeFacts out = facts;
  const auto original = *facts.find_component(plan.component);

  std::erase_if(out.components,
                [&](const ComponentRecord& c) { return c.id == plan.component; });
  for (const auto& part : plan.parts) {
    if (out.find_component(part.name)) {
      throw Error(ErrorCode::stale_plan,
                  "part name '" + part.name + "' collides with an existing component");
    }
    out.components.push_back({part.name, part.name, original.category});
  }
  for (auto& cls : out.classes) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (parts[i].contains(cls.id)) cls.component = plan.parts[i].name;
    }
  }
  out = canonicalize(std::move(out));
  require_valid(out);
  return out;
}

std::string plan_to_text(const PartitionPlan& plan) {
  using nlohmann::json;
  json parts = json::array();
  for (const auto& p : plan.parts) {
    parts.push_back(
        {{"name", p.name}, {"classes", p.classes}, {"predicted_cbom", p.predicted_cbom}});
  }
  json doc{{"schema_version", "1"},
           {"component", plan.component},
           {"parts", std::move(parts)},
           {"cross_coupling", plan.cross_coupling},
           {"method", plan.method == PartitionMethod::exact ? "exact" : "heuristic"}};
  return doc.dump(2) + "\n";
}

PartitionPlan plan_from_text(std::string_view text) {
  auto doc = json_util::parse(text);
  json_util::expect_keys(doc, "$",
                         {"schema_version", "component", "parts", "cross_coupling", "method"},
                         {});
  if (json_util::as_string(doc.at("schema_version"), "$.schema_version") != "1") {
    throw Error(ErrorCode::unsupported_version,
                "unsupported plan schema_version " + doc.at("schema_version").dump());
  }
  PartitionPlan plan;
  plan.component = json_util::as_string(doc.at("component"), "$.component");
  plan.cross_coupling = json_util::as_uint(doc.at("cross_coupling"), "$.cross_coupling");
  auto method = json_util::as_string(doc.at("method"), "$.method");
  if (method == "exact") {
    plan.method = PartitionMethod::exact;
  } else if (method == "heuristic") {
    plan.method = PartitionMethod::heuristic;
  } else {
    throw json_util::schema_error("$.method", "\"exact\" or \"heuristic\"");
  }
  for (const auto& p : json_util::array_at(doc, "parts", "$")) {
    const std::string path = "$.parts[]";
    json_util::expect_keys(p, path, {"name", "classes", "predicted_cbom"}, {});
    PlanPart part{json_util::as_string(p.at("name"), path + ".name"), {},
                  json_util::as_uint(p.at("predicted_cbom"), path + ".predicted_cbom")};
    for (const auto& c : json_util::array_at(p, "classes", path)) {
      part.classes.push_back(json_util::as_string(c, path + ".classes[]"));
    }
    plan.parts.push_back(std::move(part));
  }
  return plan;
}

}  // namespace compmetrics
