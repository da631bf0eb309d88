#include "compmetrics/render.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace compmetrics {

using nlohmann::json;

std::optional<RenderFormat> parse_format(std::string_view text) {
  if (text == "table") return RenderFormat::table;
  if (text == "structured" || text == "json") return RenderFormat::structured;
  if (text == "csv") return RenderFormat::csv;
  return std::nullopt;
}

namespace {

using Row = std::vector<std::string>;

struct Table {
  Row header;
  std::vector<Row> rows;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_csv(std::ostream& out, const Table& t) {
  auto line = [&](const Row& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << csv_field(row[i]);
    }
    out << "\n";
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
}

void write_aligned(std::ostream& out, const Table& t) {
  std::vector<std::size_t> width(t.header.size(), 0);
  auto measure = [&](const Row& row) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  };
  measure(t.header);
  for (const auto& r : t.rows) measure(r);
  auto line = [&](const Row& row) {
    std::string text;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) text += "  ";
      text += row[i];
      if (i + 1 < row.size()) text += std::string(width[i] - row[i].size(), ' ');
    }
    out << text << "\n";
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
}

std::string write_tables(const std::vector<Table>& tables, RenderFormat format) {
  std::ostringstream out;
  for (std::size_t i = 0; i < tables.size(); ++i) {
    if (i) out << "\n";
    if (format == RenderFormat::csv) {
      write_csv(out, tables[i]);
    } else {
      write_aligned(out, tables[i]);
    }
  }
  return out.str();
}

std::string formula_flag(const MethodMetrics& m) {
  if (!m.cfg_complexity) return "-";
  return m.formulas_disagree() ? "disagree" : "agree";
}

}  // namespace

std::string render_report(const MetricsReport& report, RenderFormat format) {
  if (format == RenderFormat::structured) {
    json components = json::array();
    for (const auto& c : report.per_component) {
      components.push_back({{"component", c.component},
                            {"class_count", c.class_count},
                            {"wcm", c.wcm},
                            {"dit", c.dit},
                            {"noc_by_class", c.noc_by_class},
                            {"cbom", c.cbom}});
    }
    json classes = json::array();
    for (const auto& c : report.per_class) {
      classes.push_back({{"class", c.class_id},
                         {"component", c.component},
                         {"wmc", c.wmc},
                         {"dit", c.dit},
                         {"noc", c.noc}});
    }
    json methods = json::array();
    for (const auto& m : report.per_method) {
      json jm{{"class", m.class_id},
              {"method", m.method},
              {"complexity", m.complexity},
              {"cfg_complexity", nullptr},
              {"formulas_disagree", m.formulas_disagree()}};
      if (m.cfg_complexity) jm["cfg_complexity"] = *m.cfg_complexity;
      methods.push_back(std::move(jm));
    }
    json doc{{"components", std::move(components)},
             {"classes", std::move(classes)},
             {"methods", std::move(methods)}};
    return doc.dump(2) + "\n";
  }

  const bool csv = format == RenderFormat::csv;
  Table components{csv ? Row{"component", "wcm", "dit", "cbom"}
                       : Row{"COMPONENT", "WCM", "DIT", "CBOM", "CLASSES"},
                   {}};
  for (const auto& c : report.per_component) {
    Row row{c.component, std::to_string(c.wcm), std::to_string(c.dit),
            std::to_string(c.cbom)};
    if (!csv) row.push_back(std::to_string(c.class_count));
    components.rows.push_back(std::move(row));
  }
  Table classes{csv ? Row{"class", "component", "wmc", "dit", "noc"}
                    : Row{"CLASS", "COMPONENT", "WMC", "DIT", "NOC"},
                {}};
  for (const auto& c : report.per_class) {
    classes.rows.push_back({c.class_id, c.component, std::to_string(c.wmc),
                            std::to_string(c.dit), std::to_string(c.noc)});
  }
  Table methods{csv ? Row{"class", "method", "complexity", "cfg_complexity", "formulas"}
                    : Row{"CLASS", "METHOD", "C(DECISIONS+1)", "C(E-V+1)", "FORMULAS"},
                {}};
  for (const auto& m : report.per_method) {
    methods.rows.push_back({m.class_id, m.method, std::to_string(m.complexity),
                            m.cfg_complexity ? std::to_string(*m.cfg_complexity) : "-",
                            formula_flag(m)});
  }
  return write_tables({components, classes, methods}, format);
}

std::string render_ledger(const ReuseLedger& ledger, RenderFormat format) {
  if (format == RenderFormat::structured) {
    json entries = json::object();
    for (const auto& [name, n] : ledger.entries) entries[name] = n;
    return json{{"entries", std::move(entries)}}.dump(2) + "\n";
  }
  Table t{format == RenderFormat::csv ? Row{"component", "reuse_count"}
                                      : Row{"COMPONENT", "REUSE COUNT"},
          {}};
  for (const auto& [name, n] : ledger.entries) t.rows.push_back({name, std::to_string(n)});
  return write_tables({t}, format);
}

std::string render_victims(const VictimList& victims, RenderFormat format) {
  if (format == RenderFormat::structured) {
    json out = json::array();
    for (const auto& [name, n] : victims) out.push_back({{"component", name}, {"count", n}});
    return json{{"victims", std::move(out)}}.dump(2) + "\n";
  }
  Table t{format == RenderFormat::csv ? Row{"component", "reuse_count"}
                                      : Row{"VICTIM", "REUSE COUNT"},
          {}};
  for (const auto& [name, n] : victims) t.rows.push_back({name, std::to_string(n)});
  return write_tables({t}, format);
}

std::string render_plan(const PartitionPlan& plan, const PartitionEvaluation& eval,
                        RenderFormat format) {
  const char* method = plan.method == PartitionMethod::exact ? "exact" : "heuristic";
  if (format == RenderFormat::structured) {
    json parts = json::array();
    for (std::size_t i = 0; i < plan.parts.size(); ++i) {
      parts.push_back({{"name", plan.parts[i].name},
                       {"classes", plan.parts[i].classes},
                       {"cbom", eval.parts[i].cbom},
                       {"wcm", eval.parts[i].wcm}});
    }
    json doc{{"component", plan.component},
             {"original_cbom", eval.original_cbom},
             {"original_wcm", eval.original_wcm},
             {"cross_coupling", eval.cross_coupling},
             {"method", method},
             {"improved", eval.improved},
             {"parts", std::move(parts)}};
    return doc.dump(2) + "\n";
  }
  const bool csv = format == RenderFormat::csv;
  Table t{csv ? Row{"part", "cbom", "wcm", "classes"}
              : Row{"PART", "CBOM", "WCM", "CLASSES"},
          {}};
  for (std::size_t i = 0; i < plan.parts.size(); ++i) {
    std::string members;
    for (const auto& c : plan.parts[i].classes) {
      if (!members.empty()) members += csv ? ";" : " ";
      members += c;
    }
    t.rows.push_back({plan.parts[i].name, std::to_string(eval.parts[i].cbom),
                      std::to_string(eval.parts[i].wcm), members});
  }
  std::ostringstream out;
  if (csv) {
    out << "component,original_cbom,original_wcm,cross_coupling,method,verdict\n"
        << plan.component << "," << eval.original_cbom << "," << eval.original_wcm << ","
        << eval.cross_coupling << "," << method << ","
        << (eval.improved ? "improved" : "not_improved") << "\n\n";
  } else {
    out << "split of " << plan.component << " (cbom " << eval.original_cbom << ", wcm "
        << eval.original_wcm << "), " << method << " search\n"
        << "cross coupling: " << eval.cross_coupling << "\n"
        << "verdict: " << (eval.improved ? "improved" : "not improved") << "\n\n";
  }
  out << write_tables({t}, format);
  return out.str();
}

}  // namespace compmetrics
