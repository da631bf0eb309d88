#include <gtest/gtest.h>

#include <map>

#include "compmetrics/metrics.hpp"
#include "fixtures.hpp"

using namespace compmetrics;
using testsupport::hr_portal;

namespace {

ClassRecord with_complexities(std::initializer_list<std::uint64_t> cs) {
  ClassRecord cls{"K", "K", "C", {}};
  int i = 0;
  for (auto c : cs) cls.methods.push_back({"m" + std::to_string(i++), c - 1, {}});
  return cls;
}

}  // namespace

TEST(MethodComplexity, DecisionsPlusOne) {
  EXPECT_EQ(method_complexity({"M_PR", 11, {}}), 12u);
  EXPECT_EQ(method_complexity({"straight", 0, {}}), 1u);
  EXPECT_EQ(method_complexity({"M_GC", 34, {}}), 35u);
}

TEST(MethodComplexity, IgnoresCfg) {
  MethodRecord m{"m", 3, Cfg{{0, 1}, {{0, 1}}, 0}};
  EXPECT_EQ(method_complexity(m), 4u);
}

TEST(CfgComplexity, GraphFormula) {
  EXPECT_EQ(cfg_complexity(Cfg{{0, 1}, {{0, 1}}, 0}), 0);
  EXPECT_EQ(cfg_complexity(Cfg{{0, 1, 2, 3}, {{0, 2}, {0, 3}, {2, 1}, {3, 1}}, 0}), 1);
  EXPECT_EQ(cfg_complexity(Cfg{{0}, {}, 0}), 0);
}

TEST(ClassWmc, Sums) {
  EXPECT_EQ(class_wmc(with_complexities({12, 11})), 23u);
  EXPECT_EQ(class_wmc(with_complexities({6, 7, 8, 22})), 43u);
  EXPECT_EQ(class_wmc(ClassRecord{"E", "E", "C", {}}), 0u);
}

TEST(ComponentWcm, HrPortal) {
  EXPECT_EQ(component_wcm(hr_portal(), "Webtier"), 75u);
  EXPECT_EQ(component_wcm(hr_portal(), "Businesstier"), 91u);
  EXPECT_EQ(component_wcm(hr_portal(), "DAO"), 212u);
}

TEST(ComponentWcm, UnknownComponent) {
  EXPECT_THROW(component_wcm(hr_portal(), "Nope"), Error);
}

TEST(ClassWmc, HrPortalAllClasses) {
  const std::map<std::string, std::uint64_t> expected = {
      {"HRProcessServlet", 23}, {"InterviewResultServlet", 19}, {"RegistrationServlet", 21},
      {"LoginServlet", 12},     {"EmployeeBean", 43},           {"HRProcessBean", 24},
      {"InterviewResultsBean", 24}, {"BaseDAO", 40},            {"HRDAO", 27},
      {"EmployeeDAO", 84},      {"InterviewDAO", 24},           {"ProcessDAO", 37},
      {"HttpServlet", 0}};
  for (const auto& [id, wmc] : expected) {
    const auto* cls = hr_portal().find_class(id);
    ASSERT_NE(cls, nullptr) << id;
    EXPECT_EQ(class_wmc(*cls), wmc) << id;
  }
  // The documented reading: M_RC in HRDAO counts 13, not 12+1.
  EXPECT_EQ(method_complexity(*hr_portal().find_class("HRDAO")->find_method("M_RC")), 13u);
}

TEST(Dit, RootAndChild) {
  CodeFacts f;
  f.components = {{"C", "C", Category::unspecified}};
  f.classes = {{"A", "A", "C", {}}, {"B", "B", "C", {}}};
  f.inheritance = {{"B", "A"}};
  EXPECT_EQ(class_dit(f, "A"), 0u);
  EXPECT_EQ(class_dit(f, "B"), 1u);
  EXPECT_THROW(class_dit(f, "Z"), Error);
}

TEST(Dit, HrPortal) {
  EXPECT_EQ(class_dit(hr_portal(), "LoginServlet"), 3u);
  EXPECT_EQ(component_dit(hr_portal(), "Webtier"), 3u);
  EXPECT_EQ(component_dit(hr_portal(), "DAO"), 2u);
  EXPECT_EQ(component_dit(hr_portal(), "Businesstier"), 3u);
}

TEST(Dit, EmptyComponent) {
  CodeFacts f;
  f.components = {{"E", "E", Category::unspecified}};
  EXPECT_EQ(component_dit(f, "E"), 0u);
}

TEST(Noc, HrPortal) {
  EXPECT_EQ(class_noc(hr_portal(), "HttpServlet"), 4u);
  EXPECT_EQ(class_noc(hr_portal(), "BaseDAO"), 4u);
  EXPECT_EQ(class_noc(hr_portal(), "LoginServlet"), 0u);
}

TEST(Cbom, HrPortal) {
  EXPECT_EQ(component_cbom(hr_portal(), "Webtier"), 180u);
  EXPECT_EQ(component_cbom(hr_portal(), "Businesstier"), 95u);
  EXPECT_EQ(component_cbom(hr_portal(), "DAO"), 224u);
}

TEST(Cbom, NoInvocations) {
  CodeFacts f;
  f.components = {{"C", "C", Category::unspecified}};
  f.classes = {{"A", "A", "C", {{"m", 0, {}}}}};
  EXPECT_EQ(component_cbom(f, "C"), 0u);
}

TEST(Cbom, SumsRecords) {
  CodeFacts f;
  f.components = {{"C", "C", Category::unspecified}, {"D", "D", Category::unspecified}};
  f.classes = {{"A", "A", "C", {{"a", 0, {}}, {"b", 0, {}}}},
               {"B", "B", "C", {{"c", 0, {}}, {"d", 0, {}}}},
               {"X", "X", "D", {{"x", 0, {}}}}};
  f.invocations = {{"A", "a", 50}, {"A", "b", 20}, {"B", "c", 20}, {"B", "d", 10}, {"X", "x", 99}};
  EXPECT_EQ(component_cbom(f, "C"), 100u);
}

TEST(FullReport, HrPortalRows) {
  auto r = full_report(hr_portal());
  ASSERT_EQ(r.per_component.size(), 3u);
  struct Row {
    const char* id;
    std::uint64_t wcm, dit, cbom;
  };
  for (const auto& row : {Row{"Webtier", 75, 3, 180}, Row{"Businesstier", 91, 3, 95},
                          Row{"DAO", 212, 2, 224}}) {
    const auto* c = r.component(row.id);
    ASSERT_NE(c, nullptr);
    EXPECT_EQ(c->wcm, row.wcm);
    EXPECT_EQ(c->dit, row.dit);
    EXPECT_EQ(c->cbom, row.cbom);
  }
  EXPECT_EQ(r.component("Webtier")->noc_by_class.at("HttpServlet"), 4u);
  EXPECT_EQ(r.per_class.size(), 13u);
}

TEST(FullReport, Empty) {
  auto r = full_report(CodeFacts{});
  EXPECT_TRUE(r.per_method.empty());
  EXPECT_TRUE(r.per_class.empty());
  EXPECT_TRUE(r.per_component.empty());
}

TEST(FullReport, SingleMethod) {
  CodeFacts f;
  f.components = {{"C", "C", Category::unspecified}};
  f.classes = {{"A", "A", "C", {{"m", 2, {}}}}};
  auto r = full_report(f);
  EXPECT_EQ(r.method("A", "m")->complexity, 3u);
  EXPECT_EQ(r.class_metrics("A")->wmc, 3u);
  EXPECT_EQ(r.component("C")->wcm, 3u);
}

TEST(FullReport, FlagsFormulaDisagreement) {
  CodeFacts f;
  f.components = {{"C", "C", Category::unspecified}};
  f.classes = {{"A", "A", "C", {{"flat", 0, Cfg{{0, 1}, {{0, 1}}, 0}}, {"bare", 0, {}}}}};
  auto r = full_report(f);
  EXPECT_TRUE(r.method("A", "flat")->formulas_disagree());
  EXPECT_EQ(r.method("A", "flat")->cfg_complexity, 0);
  EXPECT_FALSE(r.method("A", "bare")->formulas_disagree());
}

TEST(FullReport, RejectsInvalidFacts) {
  CodeFacts f;
  f.classes = {{"A", "A", "Missing", {}}};
  EXPECT_THROW(full_report(f), InvalidFactsError);
}
