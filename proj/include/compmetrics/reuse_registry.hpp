#pragma once

// Component Management Relation: how many times each component was reused.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "compmetrics/error.hpp"

namespace compmetrics {

struct ReuseLedger {
  std::map<std::string, std::uint64_t> entries;
  std::string updated_at;

  bool operator==(const ReuseLedger&) const = default;
};

/// Adds `delta` reuses to `component`. Throws Error(invalid_delta) for 0.
ReuseLedger record_reuse(ReuseLedger ledger, std::string_view component,
                         std::uint64_t delta);

struct BelowMedian {};
struct BelowThreshold {
  std::uint64_t threshold = 0;
};
using VictimRule = std::variant<BelowMedian, BelowThreshold>;

using VictimList = std::vector<std::pair<std::string, std::uint64_t>>;

/// Components reused strictly less than the median count (default rule) or
/// strictly less than a threshold. Sorted by count, then name.
/// Throws Error(empty_ledger).
VictimList victims(const ReuseLedger& ledger, const VictimRule& rule = BelowMedian{});

/// A missing file loads as an empty ledger. Throws Error(ledger_corrupt) on
/// malformed content or negative counts.
ReuseLedger load_ledger(const std::filesystem::path& path);

/// Writes to a temporary sibling file and renames it over `path`, so readers
/// see either the old or the new ledger. Single writer only.
void save_ledger(const ReuseLedger& ledger, const std::filesystem::path& path);

std::string ledger_to_text(const ReuseLedger& ledger);
ReuseLedger ledger_from_text(std::string_view text);

}  // namespace compmetrics
