#include "compmetrics/cli.hpp"

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "compmetrics/facts_io.hpp"
#include "compmetrics/metrics.hpp"
#include "compmetrics/minilang/analysis.hpp"
#include "compmetrics/minilang/parser.hpp"
#include "compmetrics/reconfigurator.hpp"
#include "compmetrics/render.hpp"
#include "compmetrics/reuse_registry.hpp"
#include "json_util.hpp"

namespace compmetrics::cli {

Environment environment_from_process() {
  Environment env;
  if (const char* v = std::getenv(kLedgerEnvVar); v && *v) env.ledger_path = v;
  return env;
}

namespace {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse_error:
    case ErrorCode::unsupported_version:
    case ErrorCode::invalid_facts:
    case ErrorCode::syntax_error:
    case ErrorCode::unmapped_class:
    case ErrorCode::ledger_corrupt:
    case ErrorCode::io_error:
    case ErrorCode::usage:
      return 2;
    default:
      return 1;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Error(ErrorCode::io_error, "cannot write " + path);
}

std::string utc_now() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Config file section: {"component_map": {class: component},
/// "default_component": component}.
minilang::ComponentMap load_component_map(const std::string& path) {
  auto doc = json_util::parse(read_file(path));
  json_util::expect_keys(doc, "$", {}, {"component_map", "default_component"});
  minilang::ComponentMap map;
  if (doc.contains("component_map")) {
    const auto& section = doc.at("component_map");
    if (!section.is_object()) throw json_util::schema_error("$.component_map", "an object");
    for (const auto& [cls, comp] : section.items()) {
      map.by_class[cls] = json_util::as_string(comp, "$.component_map." + cls);
    }
  }
  if (doc.contains("default_component")) {
    map.default_component =
        json_util::as_string(doc.at("default_component"), "$.default_component");
  }
  return map;
}

bool is_minioo(const std::string& path) {
  return path.size() > 4 && path.compare(path.size() - 4, 4, ".moo") == 0;
}

struct Globals {
  std::string ledger;
  std::string format = "table";
  std::string component_map;
};

/// Fact files load directly; all .moo sources are parsed into one program so
/// calls may cross files, then lowered with the component map.
CodeFacts load_inputs(const std::vector<std::string>& inputs, const Globals& globals,
                      std::ostream& err) {
  std::vector<CodeFacts> parts;
  minilang::Program program;
  bool any_source = false;
  for (const auto& path : inputs) {
    if (is_minioo(path)) {
      any_source = true;
      try {
        auto parsed = minilang::parse_source(read_file(path));
        for (auto& cls : parsed.classes) program.classes.push_back(std::move(cls));
      } catch (const minilang::SyntaxError& e) {
        throw minilang::SyntaxError(e.where(), e.expected(), e.found() + " in " + path);
      }
    } else {
      parts.push_back(load_facts(read_file(path)));
    }
  }
  if (any_source) {
    if (globals.component_map.empty()) {
      throw Error(ErrorCode::usage, "MiniOO inputs require --component-map");
    }
    auto lowered = minilang::lower_to_facts(program, load_component_map(globals.component_map));
    for (const auto& w : lowered.warnings) {
      err << "warning["
          << (w.kind == minilang::LoweringDiagnostic::Kind::unresolved_callee
                  ? "unresolved_callee"
                  : "unresolved_parent")
          << "]: " << w.message << "\n";
    }
    parts.push_back(std::move(lowered.facts));
  }
  return merge_facts(parts);
}

RenderFormat format_of(const Globals& globals) {
  auto format = parse_format(globals.format);
  if (!format) throw Error(ErrorCode::usage, "unknown format '" + globals.format + "'");
  return *format;
}

std::string ledger_path(const Globals& globals, const Environment& env) {
  if (!globals.ledger.empty()) return globals.ledger;
  if (env.ledger_path) return *env.ledger_path;
  return kDefaultLedgerPath;
}

}  // namespace

int run_command(const std::vector<std::string>& args, const Environment& env,
                std::ostream& out, std::ostream& err) {
  CLI::App app{"Component reusability metrics: WMC/WCM, DIT, NOC, CBOM, victim "
               "components and CBOM-driven component splits.",
               "compmetrics"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals globals;
  app.add_option("--ledger", globals.ledger,
                 std::string("Reuse ledger file (default ") + kDefaultLedgerPath +
                     ", or $" + kLedgerEnvVar + ")");
  app.add_option("--format", globals.format, "Output format: table, structured or csv")
      ->check(CLI::IsMember({"table", "structured", "json", "csv"}));
  app.add_option("--component-map", globals.component_map,
                 "Config file mapping MiniOO classes to components");

  std::vector<std::string> analyze_inputs;
  std::string save_to;
  auto* analyze = app.add_subcommand("analyze", "Compute the metrics report");
  analyze->add_option("inputs", analyze_inputs, "Fact files and/or .moo sources")
      ->required();
  analyze->add_option("--save-facts", save_to, "Also write the merged facts to this file");

  auto* report = app.add_subcommand("report", "Show the component reuse ledger");

  auto* reuse = app.add_subcommand("reuse", "Reuse ledger operations");
  reuse->require_subcommand(1);
  std::string record_name;
  std::uint64_t record_n = 1;
  auto* record = reuse->add_subcommand("record", "Record reuses of a component");
  record->add_option("name", record_name, "Component name")->required();
  record->add_option("--n", record_n, "Number of reuses to add")->check(CLI::PositiveNumber);
  std::optional<std::uint64_t> victim_threshold;
  auto* victim_cmd = reuse->add_subcommand("victims", "List victim components");
  victim_cmd->add_option("--threshold", victim_threshold,
                         "Victims are counts below this (default: below the median)");

  std::vector<std::string> reconf_inputs;
  std::string strategy;
  std::optional<std::uint64_t> threshold;
  std::string emit_plan;
  std::string apply_plan;
  std::string output;
  std::size_t min_part_size = 1;
  auto* reconfigure =
      app.add_subcommand("reconfigure", "Select reconfigurable components and split them");
  reconfigure->add_option("inputs", reconf_inputs, "Fact files and/or .moo sources")
      ->required();
  reconfigure->add_option("--strategy", strategy, "max or threshold")
      ->check(CLI::IsMember({"max", "threshold"}));
  reconfigure->add_option("--P", threshold, "CBOM threshold for --strategy threshold");
  reconfigure->add_option("--emit-plan", emit_plan, "Write the proposed plan to this file");
  reconfigure->add_option("--apply-plan", apply_plan,
                          "Apply a previously emitted plan and print the new facts");
  reconfigure->add_option("--output", output,
                          "With --apply-plan, write the new facts here instead of stdout");
  reconfigure->add_option("--min-part-size", min_part_size,
                          "Smallest allowed part, in classes")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error[usage]: " << e.what() << "\n";
    return 2;
  }

  try {
    const RenderFormat format = format_of(globals);

    if (*analyze) {
      CodeFacts facts = load_inputs(analyze_inputs, globals, err);
      if (!save_to.empty()) write_file(save_to, save_facts(facts));
      out << render_report(full_report(facts), format);
      return 0;
    }

    if (*report) {
      out << render_ledger(load_ledger(ledger_path(globals, env)), format);
      return 0;
    }

    if (*record) {
      const auto path = ledger_path(globals, env);
      auto ledger = record_reuse(load_ledger(path), record_name, record_n);
      ledger.updated_at = utc_now();
      save_ledger(ledger, path);
      out << record_name << " " << ledger.entries.at(record_name) << "\n";
      return 0;
    }

    if (*victim_cmd) {
      auto ledger = load_ledger(ledger_path(globals, env));
      VictimRule rule = BelowMedian{};
      if (victim_threshold) rule = BelowThreshold{*victim_threshold};
      out << render_victims(victims(ledger, rule), format);
      return 0;
    }

    if (*reconfigure) {
      CodeFacts facts = load_inputs(reconf_inputs, globals, err);

      if (!apply_plan.empty()) {
        auto plan = plan_from_text(read_file(apply_plan));
        auto eval = evaluate_partition(facts, plan);
        auto text = save_facts(apply_partition(facts, plan));
        if (output.empty()) {
          out << text;
        } else {
          write_file(output, text);
          out << render_plan(plan, eval, format);
        }
        return 0;
      }

      if (strategy.empty()) {
        throw Error(ErrorCode::usage, "--strategy is required unless --apply-plan is given");
      }
      ReconfigPolicy policy{strategy == "max" ? Strategy::max_cbom : Strategy::threshold,
                            threshold};
      const auto metrics = full_report(facts);
      const auto selected = select_components(metrics, policy);
      if (!emit_plan.empty() && selected.size() != 1) {
        throw Error(ErrorCode::usage, "--emit-plan needs exactly one selected component, got " +
                                          std::to_string(selected.size()));
      }

      PartitionOptions options;
      options.min_part_size = min_part_size;
      nlohmann::json structured = {
          {"strategy", strategy},
          {"selected", nlohmann::json::array()},
          {"plans", nlohmann::json::array()}};
      std::ostringstream text;
      if (policy.strategy == Strategy::max_cbom) {
        text << "Cr = " << selected.front() << " (cbom "
             << metrics.component(selected.front())->cbom << ")\n";
      } else {
        text << "Cr (cbom > " << *policy.threshold << "):";
        for (const auto& c : selected) text << " " << c;
        text << (selected.empty() ? " none\n" : "\n");
      }
      for (const auto& component : selected) {
        auto plan = propose_partition(facts, component, options);
        auto eval = evaluate_partition(facts, plan);
        if (!emit_plan.empty()) write_file(emit_plan, plan_to_text(plan));
        structured["selected"].push_back(component);
        structured["plans"].push_back(
            nlohmann::json::parse(render_plan(plan, eval, RenderFormat::structured)));
        text << "\n" << render_plan(plan, eval, format);
      }
      if (format == RenderFormat::structured) {
        out << structured.dump(2) << "\n";
      } else {
        out << text.str();
      }
      return 0;
    }
  } catch (const Error& e) {
    err << "error[" << to_string(e.code()) << "]: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error[internal]: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace compmetrics::cli
