#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "compmetrics/reuse_registry.hpp"
#include "fixtures.hpp"

using namespace compmetrics;

namespace {

ReuseLedger table1() { return load_ledger(testsupport::data_dir() / "table1.ledger"); }

ReuseLedger of(std::map<std::string, std::uint64_t> entries) { return {std::move(entries), ""}; }

}  // namespace

TEST(RecordReuse, Initializes) {
  EXPECT_EQ(record_reuse({}, "DAO", 1).entries, (std::map<std::string, std::uint64_t>{{"DAO", 1}}));
}

TEST(RecordReuse, Increments) {
  EXPECT_EQ(record_reuse(of({{"Webtier", 11}}), "Webtier", 1).entries.at("Webtier"), 12u);
}

TEST(RecordReuse, EighteenUnitIncrements) {
  ReuseLedger l;
  for (int i = 0; i < 18; ++i) l = record_reuse(l, "DAO", 1);
  EXPECT_EQ(l.entries, (std::map<std::string, std::uint64_t>{{"DAO", 18}}));
}

TEST(RecordReuse, ZeroDeltaRejected) {
  try {
    record_reuse({}, "DAO", 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_delta);
  }
}

TEST(Victims, Table1BelowMedian) {
  EXPECT_EQ(victims(table1()), (VictimList{{"Businesstier", 5}}));
}

TEST(Victims, AllEqual) {
  EXPECT_TRUE(victims(of({{"A", 4}, {"B", 4}, {"C", 4}})).empty());
}

TEST(Victims, EvenCountMedianIsMidpoint) {
  // median of {1, 2, 3, 100} is 2.5
  EXPECT_EQ(victims(of({{"A", 1}, {"B", 2}, {"C", 3}, {"D", 100}})),
            (VictimList{{"A", 1}, {"B", 2}}));
}

TEST(Victims, BelowThreshold) {
  EXPECT_EQ(victims(of({{"A", 1}, {"B", 2}, {"C", 3}, {"D", 100}}), BelowThreshold{3}),
            (VictimList{{"A", 1}, {"B", 2}}));
}

TEST(Victims, EmptyLedger) {
  try {
    victims({});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::empty_ledger);
  }
}

TEST(LedgerFile, SaveThenLoad) {
  testsupport::TempDir dir;
  save_ledger(table1(), dir / "ledger");
  EXPECT_EQ(load_ledger(dir / "ledger"), table1());
  EXPECT_EQ(std::distance(std::filesystem::directory_iterator(dir.path()),
                          std::filesystem::directory_iterator()),
            1);
}

TEST(LedgerFile, MissingIsEmpty) {
  testsupport::TempDir dir;
  EXPECT_TRUE(load_ledger(dir / "absent").entries.empty());
}

TEST(LedgerFile, NegativeCountIsCorrupt) {
  testsupport::TempDir dir;
  std::ofstream(dir / "neg") << R"({"entries": {"DAO": -3}, "updated_at": ""})";
  try {
    load_ledger(dir / "neg");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ledger_corrupt);
  }
}

TEST(LedgerFile, GarbageIsCorrupt) {
  EXPECT_THROW(ledger_from_text("entries: lots"), Error);
  EXPECT_THROW(ledger_from_text(R"({"entries": []})"), Error);
}

TEST(LedgerText, RoundTrip) {
  auto l = table1();
  EXPECT_EQ(ledger_from_text(ledger_to_text(l)), l);
  EXPECT_EQ(l.entries.size(), 3u);
}
