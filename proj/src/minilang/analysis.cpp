#include "compmetrics/minilang/analysis.hpp"

#include <algorithm>
#include <set>

namespace compmetrics::minilang {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::uint64_t count_stmt(const Stmt& s);

std::uint64_t count_block(const Block& body) {
  std::uint64_t total = 0;
  for (const auto& s : body) total += count_stmt(s);
  return total;
}

std::uint64_t count_stmt(const Stmt& s) {
  return std::visit(
      overloaded{
          [](const IfStmt& st) {
            return 1 + count_block(st.then_body) +
                   (st.else_body ? count_block(*st.else_body) : 0);
          },
          [](const WhileStmt& st) { return 1 + count_block(st.body); },
          [](const ForStmt& st) { return 1 + count_block(st.body); },
          [](const SwitchStmt& st) {
            std::uint64_t total = st.arms.empty() ? 0 : st.arms.size() - 1;
            for (const auto& arm : st.arms) total += count_block(arm.body);
            return total;
          },
          [](const BlockStmt& st) { return count_block(st.body); },
          [](const auto&) -> std::uint64_t { return 0; },
      },
      s.node);
}

class CfgBuilder {
 public:
  Cfg run(const Block& body) {
    cfg_.entry = 0;
    cfg_.nodes = {0, kCfgExit};
    frontier_ = {0};
    open_ = 0;
    walk(body);
    connect_frontier(kCfgExit);
    std::sort(cfg_.edges.begin(), cfg_.edges.end());
    return std::move(cfg_);
  }

 private:
  NodeId new_node() {
    cfg_.nodes.push_back(next_);
    return next_++;
  }

  void edge(NodeId from, NodeId to) { cfg_.edges.push_back({from, to}); }

  void connect_frontier(NodeId to) {
    for (NodeId f : frontier_) edge(f, to);
    frontier_.clear();
    open_.reset();
  }

  bool reachable() const { return !frontier_.empty(); }

  // Block that the next straight-line statement belongs to.
  NodeId current_block() {
    if (open_) return *open_;
    NodeId n = new_node();
    connect_frontier(n);
    frontier_ = {n};
    open_ = n;
    return n;
  }

  // Starts a fresh arm reached from `branch`; returns the arm's exit frontier.
  std::vector<NodeId> arm(NodeId branch, const Block& body) {
    NodeId start = new_node();
    edge(branch, start);
    frontier_ = {start};
    open_ = start;
    walk(body);
    return std::exchange(frontier_, {});
  }

  void walk(const Block& body) {
    for (const auto& s : body) {
      if (!reachable()) return;
      std::visit(overloaded{
                     [&](const IfStmt& st) { on_if(st); },
                     [&](const WhileStmt& st) { loop(nullptr, st.body); },
                     [&](const ForStmt& st) {
                       if (st.init) current_block();
                       loop(st.step ? &**st.step : nullptr, st.body);
                     },
                     [&](const SwitchStmt& st) { on_switch(st); },
                     [&](const ReturnStmt&) {
                       edge(current_block(), kCfgExit);
                       frontier_.clear();
                       open_.reset();
                     },
                     [&](const BlockStmt& st) { walk(st.body); },
                     [&](const auto&) { current_block(); },
                 },
                 s.node);
    }
  }

  void on_if(const IfStmt& st) {
    NodeId branch = current_block();
    auto out = arm(branch, st.then_body);
    if (st.else_body) {
      auto other = arm(branch, *st.else_body);
      out.insert(out.end(), other.begin(), other.end());
    } else {
      out.push_back(branch);
    }
    frontier_ = std::move(out);
    open_.reset();
  }

  void on_switch(const SwitchStmt& st) {
    NodeId branch = current_block();
    std::vector<NodeId> out;
    for (const auto& a : st.arms) {
      auto arm_out = arm(branch, a.body);
      out.insert(out.end(), arm_out.begin(), arm_out.end());
    }
    if (!st.has_default()) out.push_back(branch);
    frontier_ = std::move(out);
    open_.reset();
  }

  void loop(const Stmt* step, const Block& body) {
    NodeId header = new_node();
    connect_frontier(header);
    frontier_ = arm(header, body);
    if (step && reachable()) current_block();
    connect_frontier(header);
    frontier_ = {header};
  }

  Cfg cfg_;
  NodeId next_ = 2;
  std::vector<NodeId> frontier_;
  std::optional<NodeId> open_;
};

// Call-site collection for lowering.
struct CallSite {
  const CallExpr* call;
  Span at;
};

void collect_expr(const Expr& e, std::vector<CallSite>& out) {
  std::visit(overloaded{
                 [&](const CallExpr& c) {
                   out.push_back({&c, e.span});
                   for (const auto& a : c.args) collect_expr(a, out);
                 },
                 [&](const UnaryExpr& u) { collect_expr(*u.operand, out); },
                 [&](const BinaryExpr& b) {
                   collect_expr(*b.lhs, out);
                   collect_expr(*b.rhs, out);
                 },
                 [](const auto&) {},
             },
             e.node);
}

void collect_block(const Block& body, std::vector<CallSite>& out);

void collect_stmt(const Stmt& s, std::vector<CallSite>& out) {
  std::visit(overloaded{
                 [&](const IfStmt& st) {
                   collect_expr(st.condition, out);
                   collect_block(st.then_body, out);
                   if (st.else_body) collect_block(*st.else_body, out);
                 },
                 [&](const WhileStmt& st) {
                   collect_expr(st.condition, out);
                   collect_block(st.body, out);
                 },
                 [&](const ForStmt& st) {
                   if (st.init) collect_stmt(**st.init, out);
                   if (st.condition) collect_expr(*st.condition, out);
                   if (st.step) collect_stmt(**st.step, out);
                   collect_block(st.body, out);
                 },
                 [&](const SwitchStmt& st) {
                   collect_expr(st.subject, out);
                   for (const auto& arm : st.arms) collect_block(arm.body, out);
                 },
                 [&](const CallStmt& st) {
                   out.push_back({&st.call, s.span});
                   for (const auto& a : st.call.args) collect_expr(a, out);
                 },
                 [&](const ReturnStmt& st) {
                   if (st.value) collect_expr(*st.value, out);
                 },
                 [&](const AssignStmt& st) { collect_expr(st.value, out); },
                 [&](const BlockStmt& st) { collect_block(st.body, out); },
             },
             s.node);
}

void collect_block(const Block& body, std::vector<CallSite>& out) {
  for (const auto& s : body) collect_stmt(s, out);
}

std::string where(Span at) {
  return std::to_string(at.line) + ":" + std::to_string(at.column);
}

}  // namespace

std::uint64_t count_decisions(const Block& body) { return count_block(body); }

Cfg build_cfg(const Block& body) { return CfgBuilder().run(body); }

LoweringResult lower_to_facts(const Program& program, const ComponentMap& map) {
  LoweringResult result;
  CodeFacts& facts = result.facts;

  std::map<std::string, const ClassDecl*> declared;
  for (const auto& cls : program.classes) declared.emplace(cls.name, &cls);

  std::set<std::string> components;
  for (const auto& cls : program.classes) {
    std::string component;
    if (auto it = map.by_class.find(cls.name); it != map.by_class.end()) {
      component = it->second;
    } else if (map.default_component) {
      component = *map.default_component;
    } else {
      throw Error(ErrorCode::unmapped_class,
                  where(cls.span) + ": class '" + cls.name +
                      "' has no component mapping and no default component");
    }
    components.insert(component);

    ClassRecord rec{cls.name, cls.name, component, {}};
    for (const auto& m : cls.methods) {
      rec.methods.push_back({m.name, count_decisions(m.body), build_cfg(m.body)});
    }
    facts.classes.push_back(std::move(rec));

    if (cls.parent) {
      if (declared.contains(*cls.parent)) {
        facts.inheritance.push_back({cls.name, *cls.parent});
      } else {
        result.warnings.push_back(
            {LoweringDiagnostic::Kind::unresolved_parent, cls.span,
             where(cls.span) + ": class '" + cls.name + "' extends undeclared '" +
                 *cls.parent + "'"});
      }
    }

    for (const auto& m : cls.methods) {
      std::vector<CallSite> sites;
      collect_block(m.body, sites);
      for (const auto& site : sites) {
        const std::string& receiver =
            site.call->receiver == "self" ? cls.name : site.call->receiver;
        auto target = declared.find(receiver);
        bool resolved =
            target != declared.end() &&
            std::any_of(target->second->methods.begin(),
                        target->second->methods.end(),
                        [&](const MethodDecl& d) { return d.name == site.call->method; });
        if (!resolved) {
          result.warnings.push_back(
              {LoweringDiagnostic::Kind::unresolved_callee, site.at,
               where(site.at) + ": call to undeclared " + receiver + "." +
                   site.call->method + " in " + cls.name + "." + m.name});
          continue;
        }
        facts.invocations.push_back({receiver, site.call->method, 1});
        facts.call_edges.push_back({cls.name, receiver, 1});
      }
    }
  }

  for (const auto& c : components) facts.components.push_back({c, c});
  facts = canonicalize(std::move(facts));
  require_valid(facts);
  return result;
}

}  // namespace compmetrics::minilang
