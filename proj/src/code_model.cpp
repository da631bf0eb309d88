#include "compmetrics/code_model.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace compmetrics {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::unsupported_version: return "unsupported_version";
    case ErrorCode::invalid_facts: return "invalid_facts";
    case ErrorCode::merge_conflict: return "merge_conflict";
    case ErrorCode::unknown_component: return "unknown_component";
    case ErrorCode::unknown_class: return "unknown_class";
    case ErrorCode::syntax_error: return "syntax_error";
    case ErrorCode::unmapped_class: return "unmapped_class";
    case ErrorCode::invalid_delta: return "invalid_delta";
    case ErrorCode::empty_ledger: return "empty_ledger";
    case ErrorCode::ledger_corrupt: return "ledger_corrupt";
    case ErrorCode::empty_report: return "empty_report";
    case ErrorCode::not_partitionable: return "not_partitionable";
    case ErrorCode::stale_plan: return "stale_plan";
    case ErrorCode::io_error: return "io_error";
    case ErrorCode::usage: return "usage";
  }
  return "unknown";
}

std::string_view to_string(Category category) {
  switch (category) {
    case Category::general_purpose: return "general_purpose";
    case Category::domain_specific: return "domain_specific";
    case Category::product_specific: return "product_specific";
    case Category::unspecified: return "unspecified";
  }
  return "unspecified";
}

std::optional<Category> parse_category(std::string_view text) {
  for (auto c : {Category::general_purpose, Category::domain_specific,
                 Category::product_specific, Category::unspecified}) {
    if (to_string(c) == text) return c;
  }
  return std::nullopt;
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::duplicate_component: return "duplicate_component";
    case ViolationKind::duplicate_class: return "duplicate_class";
    case ViolationKind::duplicate_method: return "duplicate_method";
    case ViolationKind::dangling_component: return "dangling_component";
    case ViolationKind::dangling_inheritance: return "dangling_inheritance";
    case ViolationKind::self_inheritance: return "self_inheritance";
    case ViolationKind::multiple_parents: return "multiple_parents";
    case ViolationKind::inheritance_cycle: return "inheritance_cycle";
    case ViolationKind::dangling_invocation: return "dangling_invocation";
    case ViolationKind::duplicate_invocation: return "duplicate_invocation";
    case ViolationKind::dangling_call_edge: return "dangling_call_edge";
    case ViolationKind::duplicate_call_edge: return "duplicate_call_edge";
    case ViolationKind::cfg_missing_entry: return "cfg_missing_entry";
    case ViolationKind::cfg_duplicate_node: return "cfg_duplicate_node";
    case ViolationKind::cfg_dangling_edge: return "cfg_dangling_edge";
    case ViolationKind::cfg_duplicate_edge: return "cfg_duplicate_edge";
    case ViolationKind::cfg_unreachable_node: return "cfg_unreachable_node";
  }
  return "unknown";
}

const MethodRecord* ClassRecord::find_method(std::string_view method) const {
  auto it = std::find_if(methods.begin(), methods.end(),
                         [&](const MethodRecord& m) { return m.name == method; });
  return it == methods.end() ? nullptr : &*it;
}

const ComponentRecord* CodeFacts::find_component(std::string_view id) const {
  auto it = std::find_if(components.begin(), components.end(),
                         [&](const ComponentRecord& c) { return c.id == id; });
  return it == components.end() ? nullptr : &*it;
}

const ClassRecord* CodeFacts::find_class(std::string_view id) const {
  auto it = std::find_if(classes.begin(), classes.end(),
                         [&](const ClassRecord& c) { return c.id == id; });
  return it == classes.end() ? nullptr : &*it;
}

const std::string* CodeFacts::parent_of(std::string_view class_id) const {
  for (const auto& edge : inheritance) {
    if (edge.child == class_id) return &edge.parent;
  }
  return nullptr;
}

bool CodeFacts::empty() const {
  return components.empty() && classes.empty() && inheritance.empty() &&
         invocations.empty() && call_edges.empty();
}

CodeFacts canonicalize(CodeFacts facts) {
  std::sort(facts.components.begin(), facts.components.end(),
            [](const auto& a, const auto& b) {
              return std::tie(a.id, a.name) < std::tie(b.id, b.name);
            });
  for (auto& cls : facts.classes) {
    std::sort(cls.methods.begin(), cls.methods.end(),
              [](const auto& a, const auto& b) { return a.name < b.name; });
    for (auto& method : cls.methods) {
      if (!method.cfg) continue;
      std::sort(method.cfg->nodes.begin(), method.cfg->nodes.end());
      std::sort(method.cfg->edges.begin(), method.cfg->edges.end());
    }
  }
  std::sort(facts.classes.begin(), facts.classes.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  std::sort(facts.inheritance.begin(), facts.inheritance.end());
  facts.inheritance.erase(
      std::unique(facts.inheritance.begin(), facts.inheritance.end()),
      facts.inheritance.end());

  std::map<std::pair<std::string, std::string>, std::uint64_t> invocations;
  for (auto& rec : facts.invocations) {
    invocations[{std::move(rec.callee_class), std::move(rec.callee_method)}] +=
        rec.count;
  }
  facts.invocations.clear();
  for (auto& [key, count] : invocations) {
    facts.invocations.push_back({key.first, key.second, count});
  }

  std::map<std::pair<std::string, std::string>, std::uint64_t> calls;
  for (auto& edge : facts.call_edges) {
    calls[{std::move(edge.caller_class), std::move(edge.callee_class)}] +=
        edge.count;
  }
  facts.call_edges.clear();
  for (auto& [key, count] : calls) {
    facts.call_edges.push_back({key.first, key.second, count});
  }
  return facts;
}

void validate_cfg(const Cfg& cfg, const std::string& where,
                  ValidationReport& out) {
  std::set<NodeId> nodes;
  for (NodeId n : cfg.nodes) {
    if (!nodes.insert(n).second) {
      out.push_back({ViolationKind::cfg_duplicate_node,
                     where + " node " + std::to_string(n)});
    }
  }
  if (!nodes.contains(cfg.entry)) {
    out.push_back({ViolationKind::cfg_missing_entry,
                   where + " entry " + std::to_string(cfg.entry)});
  }
  std::set<CfgEdge> edges;
  std::map<NodeId, std::vector<NodeId>> successors;
  for (const auto& e : cfg.edges) {
    auto label = where + " edge " + std::to_string(e.from) + "->" +
                 std::to_string(e.to);
    if (!nodes.contains(e.from) || !nodes.contains(e.to)) {
      out.push_back({ViolationKind::cfg_dangling_edge, label});
      continue;
    }
    if (!edges.insert(e).second) {
      out.push_back({ViolationKind::cfg_duplicate_edge, label});
      continue;
    }
    successors[e.from].push_back(e.to);
  }
  if (!nodes.contains(cfg.entry)) return;

  std::set<NodeId> seen{cfg.entry};
  std::vector<NodeId> stack{cfg.entry};
  while (!stack.empty()) {
    NodeId n = stack.back();
    stack.pop_back();
    for (NodeId next : successors[n]) {
      if (seen.insert(next).second) stack.push_back(next);
    }
  }
  for (NodeId n : nodes) {
    if (!seen.contains(n)) {
      out.push_back({ViolationKind::cfg_unreachable_node,
                     where + " node " + std::to_string(n)});
    }
  }
}

namespace {

void check_inheritance(const CodeFacts& facts,
                       const std::unordered_set<std::string>& class_ids,
                       ValidationReport& out) {
  std::map<std::string, std::string> parent;
  for (const auto& edge : facts.inheritance) {
    auto label = "inheritance " + edge.child + " -> " + edge.parent;
    if (edge.child == edge.parent) {
      out.push_back({ViolationKind::self_inheritance, label});
      continue;
    }
    if (!class_ids.contains(edge.child) || !class_ids.contains(edge.parent)) {
      out.push_back({ViolationKind::dangling_inheritance, label});
      continue;
    }
    auto [it, inserted] = parent.emplace(edge.child, edge.parent);
    if (!inserted && it->second != edge.parent) {
      out.push_back({ViolationKind::multiple_parents, label});
    }
  }

  // Each class has at most one parent in `parent`, so every cycle is found by
  // following parent links from some node and hitting the current path.
  enum class Mark { none, active, done };
  std::map<std::string, Mark> mark;
  for (const auto& [start, _] : parent) {
    if (mark[start] != Mark::none) continue;
    std::vector<std::string> path;
    std::string cur = start;
    while (true) {
      auto& m = mark[cur];
      if (m == Mark::done) break;
      if (m == Mark::active) {
        auto from = std::find(path.begin(), path.end(), cur);
        std::vector<std::string> cycle(from, path.end());
        std::rotate(cycle.begin(),
                    std::min_element(cycle.begin(), cycle.end()), cycle.end());
        std::string label = "inheritance cycle ";
        for (const auto& c : cycle) label += c + " -> ";
        label += cycle.front();
        out.push_back({ViolationKind::inheritance_cycle, label});
        break;
      }
      m = Mark::active;
      path.push_back(cur);
      auto next = parent.find(cur);
      if (next == parent.end()) break;
      cur = next->second;
    }
    for (const auto& p : path) mark[p] = Mark::done;
  }
}

}  // namespace

ValidationReport validate_facts(const CodeFacts& facts) {
  ValidationReport out;

  std::unordered_set<std::string> component_ids;
  for (const auto& c : facts.components) {
    if (!component_ids.insert(c.id).second) {
      out.push_back({ViolationKind::duplicate_component, "component " + c.id});
    }
  }

  std::unordered_set<std::string> class_ids;
  std::unordered_map<std::string, const ClassRecord*> by_id;
  for (const auto& cls : facts.classes) {
    auto where = "class " + cls.id;
    if (!class_ids.insert(cls.id).second) {
      out.push_back({ViolationKind::duplicate_class, where});
    } else {
      by_id.emplace(cls.id, &cls);
    }
    if (!component_ids.contains(cls.component)) {
      out.push_back({ViolationKind::dangling_component,
                     where + " component " + cls.component});
    }
    std::unordered_set<std::string> method_names;
    for (const auto& m : cls.methods) {
      auto mwhere = where + " method " + m.name;
      if (!method_names.insert(m.name).second) {
        out.push_back({ViolationKind::duplicate_method, mwhere});
      }
      if (m.cfg) validate_cfg(*m.cfg, mwhere + " cfg", out);
    }
  }

  check_inheritance(facts, class_ids, out);

  std::set<std::pair<std::string, std::string>> callees;
  for (const auto& rec : facts.invocations) {
    auto where = "invocation " + rec.callee_class + "." + rec.callee_method;
    auto cls = by_id.find(rec.callee_class);
    if (cls == by_id.end() || !cls->second->find_method(rec.callee_method)) {
      out.push_back({ViolationKind::dangling_invocation, where});
    }
    if (!callees.emplace(rec.callee_class, rec.callee_method).second) {
      out.push_back({ViolationKind::duplicate_invocation, where});
    }
  }

  std::set<std::pair<std::string, std::string>> calls;
  for (const auto& edge : facts.call_edges) {
    auto where = "call " + edge.caller_class + " -> " + edge.callee_class;
    if (!class_ids.contains(edge.caller_class) ||
        !class_ids.contains(edge.callee_class)) {
      out.push_back({ViolationKind::dangling_call_edge, where});
    }
    if (!calls.emplace(edge.caller_class, edge.callee_class).second) {
      out.push_back({ViolationKind::duplicate_call_edge, where});
    }
  }
  return out;
}

namespace {

std::string describe(const ValidationReport& report) {
  std::string msg = "facts failed validation (" +
                    std::to_string(report.size()) + " violation" +
                    (report.size() == 1 ? "" : "s") + ")";
  for (const auto& v : report) {
    msg += "\n  ";
    msg += to_string(v.kind);
    msg += ": " + v.location;
  }
  return msg;
}

}  // namespace

InvalidFactsError::InvalidFactsError(ValidationReport report)
    : Error(ErrorCode::invalid_facts, describe(report)),
      report_(std::move(report)) {}

void require_valid(const CodeFacts& facts) {
  auto report = validate_facts(facts);
  if (!report.empty()) throw InvalidFactsError(std::move(report));
}

std::vector<ClassRecord> classes_of(const CodeFacts& facts,
                                    std::string_view component) {
  if (!facts.find_component(component)) {
    throw Error(ErrorCode::unknown_component,
                "unknown component '" + std::string(component) + "'");
  }
  std::vector<ClassRecord> out;
  for (const auto& cls : facts.classes) {
    if (cls.component == component) out.push_back(cls);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.name, a.id) < std::tie(b.name, b.id);
  });
  return out;
}

}  // namespace compmetrics
