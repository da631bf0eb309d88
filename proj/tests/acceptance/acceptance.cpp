// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failures.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "compmetrics/cli.hpp"
#include "compmetrics/metrics.hpp"
#include "compmetrics/minilang/analysis.hpp"
#include "compmetrics/minilang/parser.hpp"
#include "compmetrics/reconfigurator.hpp"
#include "compmetrics/reuse_registry.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace compmetrics;
using testsupport::data_dir;

namespace {

struct Check {
  std::ostringstream why;
  bool ok = true;

  template <typename A, typename B>
  void eq(const A& actual, const B& expected, const std::string& what) {
    if (actual == expected) return;
    ok = false;
    why << what << ": got " << actual << ", want " << expected << "; ";
  }
  void that(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    why << what << "; ";
  }
};

struct CliRun {
  int status;
  std::string out;
  std::string err;
};

CliRun cli_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int status = cli::run_command(args, {}, out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

bool has_line(const std::string& text, const std::string& line) {
  for (const auto& l : lines_of(text)) {
    if (l == line) return true;
  }
  return false;
}

const std::string facts_file = (data_dir() / "hr_portal.facts").string();

void wcm(Check& c) {
  auto run = cli_run({"analyze", facts_file, "--format", "csv"});
  c.eq(run.status, 0, "exit status");
  auto facts = load_facts_file(facts_file);
  c.eq(component_wcm(facts, "Webtier"), 75u, "WCM Webtier");
  c.eq(component_wcm(facts, "Businesstier"), 91u, "WCM Businesstier");
  c.eq(component_wcm(facts, "DAO"), 212u, "WCM DAO");
  c.that(has_line(run.out, "Webtier,75,3,180"), "csv row for Webtier");
  c.that(has_line(run.out, "Businesstier,91,3,95"), "csv row for Businesstier");
  c.that(has_line(run.out, "DAO,212,2,224"), "csv row for DAO");
}

void wmc(Check& c) {
  const std::map<std::string, std::uint64_t> expected = {
      {"HRProcessServlet", 23}, {"InterviewResultServlet", 19}, {"RegistrationServlet", 21},
      {"LoginServlet", 12},     {"EmployeeBean", 43},           {"HRProcessBean", 24},
      {"InterviewResultsBean", 24}, {"BaseDAO", 40},            {"HRDAO", 27},
      {"EmployeeDAO", 84},      {"InterviewDAO", 24},           {"ProcessDAO", 37},
      {"HttpServlet", 0}};
  auto report = full_report(testsupport::hr_portal());
  c.eq(report.per_class.size(), expected.size(), "class count");
  for (const auto& [id, value] : expected) {
    const auto* m = report.class_metrics(id);
    c.that(m != nullptr, "class " + id + " present");
    if (m) c.eq(m->wmc, value, "WMC " + id);
  }
  const auto* rc = report.method("HRDAO", "M_RC");
  c.that(rc && rc->complexity == 13, "C[M_RC] in HRDAO is 13");
}

void dit_noc(Check& c) {
  const auto& f = testsupport::hr_portal();
  c.eq(component_dit(f, "Webtier"), 3u, "DIT Webtier");
  c.eq(component_dit(f, "DAO"), 2u, "DIT DAO");
  c.eq(component_dit(f, "Businesstier"), 3u, "DIT Businesstier");
  c.eq(class_noc(f, "HttpServlet"), 4u, "NOC HttpServlet");
  c.eq(class_noc(f, "BaseDAO"), 4u, "NOC BaseDAO");
}

void cbom_selection(Check& c) {
  const auto& f = testsupport::hr_portal();
  c.eq(component_cbom(f, "Webtier"), 180u, "CBOM Webtier");
  c.eq(component_cbom(f, "Businesstier"), 95u, "CBOM Businesstier");
  c.eq(component_cbom(f, "DAO"), 224u, "CBOM DAO");
  c.eq(select_max(full_report(f)), std::string("DAO"), "select_max");
  auto run = cli_run({"reconfigure", facts_file, "--strategy", "max"});
  c.eq(run.status, 0, "reconfigure exit status");
  c.that(has_line(run.out, "Cr = DAO (cbom 224)"), "reconfigure names DAO");
}

void victim(Check& c) {
  const auto ledger_file = (data_dir() / "table1.ledger").string();
  auto ledger = load_ledger(ledger_file);
  c.eq(ledger.entries.size(), 3u, "ledger entries");
  auto v = victims(ledger);
  c.that(v == VictimList{{"Businesstier", 5}}, "victims == [Businesstier]");
  auto run = cli_run({"--ledger", ledger_file, "--format", "csv", "reuse", "victims"});
  c.eq(run.status, 0, "victims exit status");
  c.eq(run.out, std::string("component,reuse_count\nBusinesstier,5\n"), "victims output");
}

void split(Check& c) {
  const auto& f = testsupport::hr_portal();
  auto plan = propose_partition(f, "DAO");
  auto after = apply_partition(f, plan);
  c.that(validate_facts(after).empty(), "applied facts validate");
  c.eq(after.components.size(), 4u, "component count after split");
  const auto p1 = component_cbom(after, "DAO_1");
  const auto p2 = component_cbom(after, "DAO_2");
  c.eq(p1 + p2, 224u, "CBOM sum");
  c.that(p1 < 224 && p2 < 224, "each part CBOM below 224");
  c.eq(component_wcm(after, "DAO_1") + component_wcm(after, "DAO_2"), 212u, "WCM sum");
  c.that(evaluate_partition(f, plan).improved, "verdict improved");
}

void partition_oracle(Check& c) {
  const auto start = std::chrono::steady_clock::now();
  int matched = 0;
  const int total = 250;
  for (int i = 0; i < total; ++i) {
    testsupport::Rng rng(424242 + i);
    const auto n = testsupport::uniform(rng, 2, 10);
    auto facts = canonicalize(testsupport::random_component(rng, n, 0.15 + 0.05 * (i % 8)));
    auto plan = propose_partition(facts, "Target");
    if (plan.cross_coupling == testsupport::brute_force_min_cut(facts, "Target")) ++matched;
  }
  const auto seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.eq(matched, total, "components matching brute force");
  c.that(seconds < 60.0, "finished in " + std::to_string(seconds) + " s");
}

void property_suites(Check& c) {
  // The property suites live in their own test binary; run every one of them
  // at 1000 cases.
  const std::string cmd = std::string("\"") + COMPMETRICS_PROPERTY_BINARY +
                          "\" --gtest_brief=1 > /dev/null 2>&1";
  c.eq(testsupport::property_cases() >= 1000, true, "at least 1000 cases per property");
  c.eq(std::system(cmd.c_str()), 0, "property test binary exit status");
}

void frontend(Check& c) {
  auto program = minilang::parse_source(
      testsupport::read_text(data_dir() / "hr_portal" / "webtier.moo"));
  minilang::ComponentMap map{{}, "Webtier"};
  auto lowered = minilang::lower_to_facts(program, map);
  const auto* pr = lowered.facts.find_class("HRProcessServlet")->find_method("M_PR");
  c.that(pr != nullptr, "M_PR lowered");
  if (pr) {
    c.eq(pr->decision_count, 11u, "decisions in M_PR");
    c.eq(method_complexity(*pr), 12u, "C[M_PR]");
  }

  auto run = cli_run({"--component-map", (data_dir() / "straight_line.components.json").string(),
                      "--format", "csv", "analyze", (data_dir() / "straight_line.moo").string()});
  c.eq(run.status, 0, "analyze straight_line exit status");
  int flagged = 0;
  int methods = 0;
  bool in_methods = false;
  for (const auto& line : lines_of(run.out)) {
    if (line.rfind("class,method,", 0) == 0) {
      in_methods = true;
      continue;
    }
    if (!in_methods || line.empty()) continue;
    ++methods;
    const std::string gap = ",1,0,disagree";
    if (line.size() > gap.size() && line.compare(line.size() - gap.size(), gap.size(), gap) == 0) {
      ++flagged;
    }
  }
  c.that(methods == 4, "4 straight-line methods reported, got " + std::to_string(methods));
  c.eq(flagged, methods, "straight-line methods flagged");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"WCM reproduction", wcm},
      {"per-class WMC reproduction", wmc},
      {"DIT/NOC reproduction", dit_noc},
      {"CBOM and max selection", cbom_selection},
      {"victim from reuse ledger", victim},
      {"DAO split validation", split},
      {"partition equals brute force", partition_oracle},
      {"property suites", property_suites},
      {"MiniOO frontend", frontend},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check check;
    try {
      criteria[i].second(check);
    } catch (const std::exception& e) {
      check.ok = false;
      check.why << "exception: " << e.what();
    }
    std::cout << (check.ok ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first;
    if (!check.ok) std::cout << " (" << check.why.str() << ")";
    std::cout << "\n";
    if (!check.ok) ++failures;
  }
  return failures;
}
