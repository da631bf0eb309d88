#include "compmetrics/metrics.hpp"

#include <algorithm>
#include <unordered_map>

namespace compmetrics {

namespace {

void require_component(const CodeFacts& facts, std::string_view component) {
  if (!facts.find_component(component)) {
    throw Error(ErrorCode::unknown_component,
                "unknown component '" + std::string(component) + "'");
  }
}

void require_class(const CodeFacts& facts, std::string_view class_id) {
  if (!facts.find_class(class_id)) {
    throw Error(ErrorCode::unknown_class,
                "unknown class '" + std::string(class_id) + "'");
  }
}

using ParentMap = std::unordered_map<std::string_view, std::string_view>;

ParentMap parent_map(const CodeFacts& facts) {
  ParentMap parents;
  for (const auto& e : facts.inheritance) parents.emplace(e.child, e.parent);
  return parents;
}

std::uint64_t depth(const ParentMap& parents, std::string_view class_id) {
  std::uint64_t d = 0;
  for (auto it = parents.find(class_id); it != parents.end();
       it = parents.find(it->second)) {
    if (++d > parents.size()) {
      throw Error(ErrorCode::invalid_facts,
                  "inheritance cycle through '" + std::string(class_id) + "'");
    }
  }
  return d;
}

std::unordered_map<std::string_view, std::uint64_t> invocations_by_class(
    const CodeFacts& facts) {
  std::unordered_map<std::string_view, std::uint64_t> out;
  for (const auto& rec : facts.invocations) out[rec.callee_class] += rec.count;
  return out;
}

}  // namespace

std::uint64_t method_complexity(const MethodRecord& method) {
  return method.decision_count + 1;
}

std::int64_t cfg_complexity(const Cfg& cfg) {
  return static_cast<std::int64_t>(cfg.edges.size()) -
         static_cast<std::int64_t>(cfg.nodes.size()) + 1;
}

std::uint64_t class_wmc(const ClassRecord& cls) {
  std::uint64_t total = 0;
  for (const auto& m : cls.methods) total += method_complexity(m);
  return total;
}

std::uint64_t component_wcm(const CodeFacts& facts, std::string_view component) {
  require_component(facts, component);
  std::uint64_t total = 0;
  for (const auto& cls : facts.classes) {
    if (cls.component == component) total += class_wmc(cls);
  }
  return total;
}

std::uint64_t class_dit(const CodeFacts& facts, std::string_view class_id) {
  require_class(facts, class_id);
  return depth(parent_map(facts), class_id);
}

std::uint64_t component_dit(const CodeFacts& facts, std::string_view component) {
  require_component(facts, component);
  const auto parents = parent_map(facts);
  std::uint64_t deepest = 0;
  for (const auto& cls : facts.classes) {
    if (cls.component == component) {
      deepest = std::max(deepest, depth(parents, cls.id));
    }
  }
  return deepest;
}

std::uint64_t class_noc(const CodeFacts& facts, std::string_view class_id) {
  require_class(facts, class_id);
  return std::count_if(facts.inheritance.begin(), facts.inheritance.end(),
                       [&](const InheritanceEdge& e) { return e.parent == class_id; });
}

std::uint64_t component_cbom(const CodeFacts& facts, std::string_view component) {
  require_component(facts, component);
  std::uint64_t total = 0;
  for (const auto& rec : facts.invocations) {
    const auto* cls = facts.find_class(rec.callee_class);
    if (cls && cls->component == component) total += rec.count;
  }
  return total;
}

const ComponentMetrics* MetricsReport::component(std::string_view id) const {
  auto it = std::find_if(per_component.begin(), per_component.end(),
                         [&](const auto& c) { return c.component == id; });
  return it == per_component.end() ? nullptr : &*it;
}

const ClassMetrics* MetricsReport::class_metrics(std::string_view id) const {
  auto it = std::find_if(per_class.begin(), per_class.end(),
                         [&](const auto& c) { return c.class_id == id; });
  return it == per_class.end() ? nullptr : &*it;
}

const MethodMetrics* MetricsReport::method(std::string_view class_id,
                                           std::string_view method) const {
  auto it = std::find_if(per_method.begin(), per_method.end(), [&](const auto& m) {
    return m.class_id == class_id && m.method == method;
  });
  return it == per_method.end() ? nullptr : &*it;
}

MetricsReport full_report(const CodeFacts& input) {
  require_valid(input);
  const CodeFacts facts = canonicalize(input);
  const auto parents = parent_map(facts);
  const auto invoked = invocations_by_class(facts);

  std::unordered_map<std::string_view, std::uint64_t> children;
  for (const auto& e : facts.inheritance) ++children[e.parent];

  MetricsReport report;
  std::map<std::string, ComponentMetrics> components;
  for (const auto& c : facts.components) {
    components[c.id].component = c.id;
  }

  for (const auto& cls : facts.classes) {
    for (const auto& m : cls.methods) {
      MethodMetrics mm{cls.id, m.name, method_complexity(m), std::nullopt};
      if (m.cfg) mm.cfg_complexity = cfg_complexity(*m.cfg);
      report.per_method.push_back(std::move(mm));
    }
    auto noc_it = children.find(cls.id);
    ClassMetrics cm{cls.id, cls.component, class_wmc(cls), depth(parents, cls.id),
                    noc_it == children.end() ? 0 : noc_it->second};

    auto& comp = components.at(cls.component);
    comp.class_count += 1;
    comp.wcm += cm.wmc;
    comp.dit = std::max(comp.dit, cm.dit);
    comp.noc_by_class[cls.id] = cm.noc;
    if (auto it = invoked.find(cls.id); it != invoked.end()) comp.cbom += it->second;

    report.per_class.push_back(std::move(cm));
  }
  for (auto& [_, comp] : components) report.per_component.push_back(std::move(comp));
  return report;
}

}  // namespace compmetrics
