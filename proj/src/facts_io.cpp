#include "compmetrics/facts_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json_util.hpp"

namespace compmetrics {

using nlohmann::json;

namespace {

Cfg cfg_from_json(const json& j, const std::string& path) {
  json_util::expect_keys(j, path, {"nodes", "edges", "entry"}, {});
  Cfg cfg;
  for (const auto& n : json_util::array_at(j, "nodes", path)) {
    cfg.nodes.push_back(
        static_cast<NodeId>(json_util::as_uint(n, path + ".nodes[]")));
  }
  for (const auto& e : json_util::array_at(j, "edges", path)) {
    if (!e.is_array() || e.size() != 2) {
      throw json_util::schema_error(path + ".edges[]", "a [from, to] pair");
    }
    cfg.edges.push_back(
        {static_cast<NodeId>(json_util::as_uint(e[0], path + ".edges[]")),
         static_cast<NodeId>(json_util::as_uint(e[1], path + ".edges[]"))});
  }
  cfg.entry = static_cast<NodeId>(json_util::as_uint(j.at("entry"), path + ".entry"));
  return cfg;
}

json cfg_to_json(const Cfg& cfg) {
  json edges = json::array();
  for (const auto& e : cfg.edges) edges.push_back(json::array({e.from, e.to}));
  return json{{"nodes", cfg.nodes}, {"edges", std::move(edges)},
              {"entry", cfg.entry}};
}

CodeFacts facts_from_json(const json& doc) {
  if (!doc.is_object()) throw json_util::schema_error("$", "an object");
  json_util::expect_keys(doc, "$", {"schema_version"},
                         {"components", "classes", "inheritance", "invocations",
                          "call_edges"});
  const auto& version = doc.at("schema_version");
  if (!version.is_string() || version.get<std::string>() != kFactsSchemaVersion) {
    throw Error(ErrorCode::unsupported_version,
                "unsupported schema_version " + version.dump() +
                    " (supported: \"" + std::string(kFactsSchemaVersion) + "\")");
  }

  CodeFacts facts;
  for (const auto& c : json_util::array_at(doc, "components", "$")) {
    const std::string path = "$.components[]";
    json_util::expect_keys(c, path, {"id", "name"}, {"category"});
    ComponentRecord rec{json_util::as_string(c.at("id"), path + ".id"),
                        json_util::as_string(c.at("name"), path + ".name")};
    if (c.contains("category")) {
      auto text = json_util::as_string(c.at("category"), path + ".category");
      auto category = parse_category(text);
      if (!category) {
        throw json_util::schema_error(path + ".category", "a known category");
      }
      rec.category = *category;
    }
    facts.components.push_back(std::move(rec));
  }

  for (const auto& c : json_util::array_at(doc, "classes", "$")) {
    std::string path = "$.classes[]";
    json_util::expect_keys(c, path, {"id", "name", "component"}, {"methods"});
    ClassRecord cls{json_util::as_string(c.at("id"), path + ".id"),
                    json_util::as_string(c.at("name"), path + ".name"),
                    json_util::as_string(c.at("component"), path + ".component"),
                    {}};
    path = "$.classes[" + cls.id + "].methods[]";
    for (const auto& m : json_util::array_at(c, "methods", path)) {
      json_util::expect_keys(m, path, {"name", "decision_count"}, {"cfg"});
      MethodRecord method{
          json_util::as_string(m.at("name"), path + ".name"),
          json_util::as_uint(m.at("decision_count"), path + ".decision_count"),
          std::nullopt};
      if (m.contains("cfg")) method.cfg = cfg_from_json(m.at("cfg"), path + ".cfg");
      cls.methods.push_back(std::move(method));
    }
    facts.classes.push_back(std::move(cls));
  }

  for (const auto& e : json_util::array_at(doc, "inheritance", "$")) {
    const std::string path = "$.inheritance[]";
    json_util::expect_keys(e, path, {"child", "parent"}, {});
    facts.inheritance.push_back(
        {json_util::as_string(e.at("child"), path + ".child"),
         json_util::as_string(e.at("parent"), path + ".parent")});
  }

  for (const auto& r : json_util::array_at(doc, "invocations", "$")) {
    const std::string path = "$.invocations[]";
    json_util::expect_keys(r, path, {"callee_class", "callee_method", "count"}, {});
    facts.invocations.push_back(
        {json_util::as_string(r.at("callee_class"), path + ".callee_class"),
         json_util::as_string(r.at("callee_method"), path + ".callee_method"),
         json_util::as_uint(r.at("count"), path + ".count")});
  }

  for (const auto& r : json_util::array_at(doc, "call_edges", "$")) {
    const std::string path = "$.call_edges[]";
    json_util::expect_keys(r, path, {"caller_class", "callee_class", "count"}, {});
    facts.call_edges.push_back(
        {json_util::as_string(r.at("caller_class"), path + ".caller_class"),
         json_util::as_string(r.at("callee_class"), path + ".callee_class"),
         json_util::as_uint(r.at("count"), path + ".count")});
  }
  return facts;
}

}  // namespace

CodeFacts load_facts(std::string_view text) {
  auto facts = canonicalize(facts_from_json(json_util::parse(text)));
  require_valid(facts);
  return facts;
}

CodeFacts load_facts(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_facts(buf.str());
}

CodeFacts load_facts_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot read " + path.string());
  return load_facts(in);
}

std::string save_facts(const CodeFacts& input) {
  require_valid(input);
  const CodeFacts facts = canonicalize(input);

  json components = json::array();
  for (const auto& c : facts.components) {
    components.push_back(
        {{"id", c.id}, {"name", c.name}, {"category", to_string(c.category)}});
  }
  json classes = json::array();
  for (const auto& cls : facts.classes) {
    json methods = json::array();
    for (const auto& m : cls.methods) {
      json jm{{"name", m.name}, {"decision_count", m.decision_count}};
      if (m.cfg) jm["cfg"] = cfg_to_json(*m.cfg);
      methods.push_back(std::move(jm));
    }
    classes.push_back({{"id", cls.id},
                       {"name", cls.name},
                       {"component", cls.component},
                       {"methods", std::move(methods)}});
  }
  json inheritance = json::array();
  for (const auto& e : facts.inheritance) {
    inheritance.push_back({{"child", e.child}, {"parent", e.parent}});
  }
  json invocations = json::array();
  for (const auto& r : facts.invocations) {
    invocations.push_back({{"callee_class", r.callee_class},
                           {"callee_method", r.callee_method},
                           {"count", r.count}});
  }
  json doc{{"schema_version", kFactsSchemaVersion},
           {"components", std::move(components)},
           {"classes", std::move(classes)},
           {"inheritance", std::move(inheritance)},
           {"invocations", std::move(invocations)}};
  if (!facts.call_edges.empty()) {
    json calls = json::array();
    for (const auto& e : facts.call_edges) {
      calls.push_back({{"caller_class", e.caller_class},
                       {"callee_class", e.callee_class},
                       {"count", e.count}});
    }
    doc["call_edges"] = std::move(calls);
  }
  return doc.dump(2) + "\n";
}

namespace {

template <typename Record, typename Key>
void merge_unique(std::vector<Record>& into, const std::vector<Record>& from,
                  std::map<std::string, std::size_t>& index, Key key,
                  std::string_view what) {
  for (const auto& rec : from) {
    auto [it, inserted] = index.emplace(key(rec), into.size());
    if (inserted) {
      into.push_back(rec);
    } else if (!(into[it->second] == rec)) {
      throw Error(ErrorCode::merge_conflict, "conflicting definitions of " +
                                                 std::string(what) + " '" +
                                                 key(rec) + "'");
    }
  }
}

}  // namespace

CodeFacts merge_facts(std::span<const CodeFacts> parts) {
  CodeFacts out;
  std::map<std::string, std::size_t> components, classes, parents;
  for (const auto& part : parts) {
    // Compare canonical forms so method order does not cause false conflicts.
    const CodeFacts facts = canonicalize(part);
    merge_unique(out.components, facts.components, components,
                 [](const ComponentRecord& c) { return c.id; }, "component");
    merge_unique(out.classes, facts.classes, classes,
                 [](const ClassRecord& c) { return c.id; }, "class");
    merge_unique(out.inheritance, facts.inheritance, parents,
                 [](const InheritanceEdge& e) { return e.child; },
                 "parent of class");
    out.invocations.insert(out.invocations.end(), facts.invocations.begin(),
                           facts.invocations.end());
    out.call_edges.insert(out.call_edges.end(), facts.call_edges.begin(),
                          facts.call_edges.end());
  }
  out = canonicalize(std::move(out));
  require_valid(out);
  return out;
}

}  // namespace compmetrics
