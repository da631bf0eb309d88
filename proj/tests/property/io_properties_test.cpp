#include <gtest/gtest.h>

#include <algorithm>

#include "compmetrics/facts_io.hpp"
#include "compmetrics/reuse_registry.hpp"
#include "fixtures.hpp"
#include "generators.hpp"

using namespace compmetrics;
using namespace testsupport;

namespace {

/// Facts whose ids carry `prefix`, plus one class shared verbatim by every
/// part so merging has something to deduplicate and sum.
CodeFacts prefixed_part(Rng& rng, const std::string& prefix) {
  auto f = random_facts(rng);
  auto rename = [&](std::string& id) { id = prefix + id; };
  for (auto& c : f.components) rename(c.id);
  for (auto& c : f.classes) {
    rename(c.id);
    rename(c.component);
  }
  for (auto& e : f.inheritance) {
    rename(e.child);
    rename(e.parent);
  }
  for (auto& inv : f.invocations) rename(inv.callee_class);
  for (auto& e : f.call_edges) {
    rename(e.caller_class);
    rename(e.callee_class);
  }
  f.components.push_back({"Shared", "Shared", Category::general_purpose});
  f.classes.push_back({"Common", "Common", "Shared", {{"tick", 2, {}}}});
  f.invocations.push_back({"Common", "tick", uniform(rng, 1, 9)});
  if (!f.classes.empty()) f.call_edges.push_back({f.classes[0].id, "Common", uniform(rng, 1, 9)});
  return f;
}

CodeFacts merge2(const CodeFacts& a, const CodeFacts& b) {
  std::vector<CodeFacts> parts{a, b};
  return merge_facts(parts);
}

}  // namespace

TEST(FactsProperty, SaveLoadRoundTrip) {
  for (int i = 0; i < property_cases(); ++i) {
    Rng rng(7000 + i);
    SCOPED_TRACE("seed " + std::to_string(7000 + i));
    auto facts = random_facts(rng);
    const auto text = save_facts(facts);
    const auto loaded = load_facts(text);
    ASSERT_EQ(loaded, canonicalize(facts));
    ASSERT_EQ(save_facts(loaded), text);
  }
}

TEST(FactsProperty, SaveIgnoresInputOrder) {
  for (int i = 0; i < property_cases(); ++i) {
    Rng rng(8000 + i);
    SCOPED_TRACE("seed " + std::to_string(8000 + i));
    auto facts = random_facts(rng);
    auto shuffled = facts;
    std::shuffle(shuffled.classes.begin(), shuffled.classes.end(), rng);
    std::shuffle(shuffled.components.begin(), shuffled.components.end(), rng);
    std::shuffle(shuffled.invocations.begin(), shuffled.invocations.end(), rng);
    std::shuffle(shuffled.inheritance.begin(), shuffled.inheritance.end(), rng);
    std::shuffle(shuffled.call_edges.begin(), shuffled.call_edges.end(), rng);
    ASSERT_EQ(save_facts(shuffled), save_facts(facts));
  }
}

TEST(FactsProperty, MergeIsAssociative) {
  for (int i = 0; i < property_cases(); ++i) {
    Rng rng(9000 + i);
    SCOPED_TRACE("seed " + std::to_string(9000 + i));
    auto a = prefixed_part(rng, "a.");
    auto b = prefixed_part(rng, "b.");
    auto c = prefixed_part(rng, "c.");
    std::vector<CodeFacts> all{a, b, c};
    const auto flat = merge_facts(all);
    ASSERT_EQ(merge2(merge2(a, b), c), flat);
    ASSERT_EQ(merge2(a, merge2(b, c)), flat);
    ASSERT_EQ(merge2(c, merge2(a, b)), flat);

    std::uint64_t common = 0;
    for (const auto* part : {&a, &b, &c}) {
      for (const auto& inv : part->invocations) {
        if (inv.callee_class == "Common") common += inv.count;
      }
    }
    const auto it = std::find_if(flat.invocations.begin(), flat.invocations.end(),
                                 [](const InvocationRecord& r) { return r.callee_class == "Common"; });
    ASSERT_NE(it, flat.invocations.end());
    ASSERT_EQ(it->count, common);
  }
}

TEST(LedgerProperty, FoldEquivalence) {
  for (int i = 0; i < property_cases(); ++i) {
    Rng rng(10000 + i);
    SCOPED_TRACE("seed " + std::to_string(10000 + i));
    std::vector<std::pair<std::string, std::uint64_t>> events;
    const auto n = uniform(rng, 0, 40);
    for (std::uint64_t k = 0; k < n; ++k) {
      events.emplace_back("c" + std::to_string(uniform(rng, 0, 5)), uniform(rng, 1, 10));
    }
    ReuseLedger one_by_one;
    for (const auto& [name, delta] : events) one_by_one = record_reuse(one_by_one, name, delta);

    std::map<std::string, std::uint64_t> totals;
    for (const auto& [name, delta] : events) totals[name] += delta;
    ASSERT_EQ(one_by_one.entries, totals);

    std::shuffle(events.begin(), events.end(), rng);
    ReuseLedger shuffled;
    for (const auto& [name, delta] : events) shuffled = record_reuse(shuffled, name, delta);
    ASSERT_EQ(shuffled.entries, one_by_one.entries);

    ReuseLedger batched;
    for (const auto& [name, total] : totals) batched = record_reuse(batched, name, total);
    ASSERT_EQ(batched.entries, one_by_one.entries);
  }
}

TEST(LedgerProperty, TextRoundTrip) {
  for (int i = 0; i < property_cases(); ++i) {
    Rng rng(11000 + i);
    SCOPED_TRACE("seed " + std::to_string(11000 + i));
    auto ledger = random_ledger(rng);
    ASSERT_EQ(ledger_from_text(ledger_to_text(ledger)), ledger);
  }
}

TEST(LedgerProperty, FileRoundTrip) {
  TempDir dir;
  const auto path = dir / "ledger";
  for (int i = 0; i < property_cases(); ++i) {
    Rng rng(12000 + i);
    SCOPED_TRACE("seed " + std::to_string(12000 + i));
    auto ledger = random_ledger(rng);
    save_ledger(ledger, path);
    ASSERT_EQ(load_ledger(path), ledger);
  }
}

TEST(LedgerProperty, VictimsAreMonotoneInThreshold) {
  for (int i = 0; i < property_cases(); ++i) {
    Rng rng(13000 + i);
    SCOPED_TRACE("seed " + std::to_string(13000 + i));
    auto ledger = random_ledger(rng);
    ASSERT_TRUE(victims(ledger, BelowThreshold{0}).empty());
    const auto t1 = uniform(rng, 0, 45);
    const auto t2 = t1 + uniform(rng, 0, 10);
    auto low = victims(ledger, BelowThreshold{t1});
    auto high = victims(ledger, BelowThreshold{t2});
    for (const auto& v : low) {
      ASSERT_NE(std::find(high.begin(), high.end(), v), high.end());
    }
    for (const auto& [name, count] : high) ASSERT_LT(count, t2);
  }
}

TEST(LedgerProperty, BelowMedianMatchesSortedOracle) {
  for (int i = 0; i < property_cases(); ++i) {
    Rng rng(14000 + i);
    SCOPED_TRACE("seed " + std::to_string(14000 + i));
    auto ledger = random_ledger(rng);
    std::vector<double> counts;
    for (const auto& [name, n] : ledger.entries) counts.push_back(static_cast<double>(n));
    std::sort(counts.begin(), counts.end());
    const auto k = counts.size();
    const double median = k % 2 ? counts[k / 2] : (counts[k / 2 - 1] + counts[k / 2]) / 2.0;
    VictimList expected;
    for (const auto& [name, n] : ledger.entries) {
      if (static_cast<double>(n) < median) expected.emplace_back(name, n);
    }
    std::sort(expected.begin(), expected.end(),
              [](const auto& a, const auto& b) { return std::tie(a.second, a.first) < std::tie(b.second, b.first); });
    ASSERT_EQ(victims(ledger), expected);
  }
}
