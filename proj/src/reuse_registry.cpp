#include "compmetrics/reuse_registry.hpp"

#include <unistd.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json_util.hpp"

namespace compmetrics {

using nlohmann::json;

ReuseLedger record_reuse(ReuseLedger ledger, std::string_view component,
                         std::uint64_t delta) {
  if (delta == 0) {
    throw Error(ErrorCode::invalid_delta, "reuse delta must be at least 1");
  }
  ledger.entries[std::string(component)] += delta;
  return ledger;
}

VictimList victims(const ReuseLedger& ledger, const VictimRule& rule) {
  if (ledger.entries.empty()) {
    throw Error(ErrorCode::empty_ledger, "the reuse ledger has no entries");
  }

  // Compare 2 * count against twice the median to stay in integers.
  std::uint64_t limit2 = 0;
  if (const auto* t = std::get_if<BelowThreshold>(&rule)) {
    limit2 = 2 * t->threshold;
  } else {
    std::vector<std::uint64_t> counts;
    for (const auto& [_, n] : ledger.entries) counts.push_back(n);
    std::sort(counts.begin(), counts.end());
    std::size_t mid = counts.size() / 2;
    limit2 = counts.size() % 2 ? 2 * counts[mid] : counts[mid - 1] + counts[mid];
  }

  VictimList out;
  for (const auto& [name, n] : ledger.entries) {
    if (2 * n < limit2) out.emplace_back(name, n);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.second, a.first) < std::tie(b.second, b.first);
  });
  return out;
}

std::string ledger_to_text(const ReuseLedger& ledger) {
  json entries = json::object();
  for (const auto& [name, n] : ledger.entries) entries[name] = n;
  json doc{{"entries", std::move(entries)}, {"updated_at", ledger.updated_at}};
  return doc.dump(2) + "\n";
}

ReuseLedger ledger_from_text(std::string_view text) {
  try {
    auto doc = json_util::parse(text);
    json_util::expect_keys(doc, "$", {"entries"}, {"updated_at"});
    const auto& entries = doc.at("entries");
    if (!entries.is_object()) throw json_util::schema_error("$.entries", "an object");
    ReuseLedger ledger;
    for (const auto& [name, n] : entries.items()) {
      ledger.entries[name] = json_util::as_uint(n, "$.entries." + name);
    }
    if (doc.contains("updated_at")) {
      ledger.updated_at = json_util::as_string(doc.at("updated_at"), "$.updated_at");
    }
    return ledger;
  } catch (const ParseError& e) {
    throw Error(ErrorCode::ledger_corrupt, std::string("corrupt ledger: ") + e.what());
  }
}

ReuseLedger load_ledger(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    if (!std::filesystem::exists(path)) return {};
    throw Error(ErrorCode::io_error, "cannot read ledger " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return ledger_from_text(buf.str());
}

void save_ledger(const ReuseLedger& ledger, const std::filesystem::path& path) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << ledger_to_text(ledger);
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error(ErrorCode::io_error, "cannot write ledger " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::io_error, "cannot replace ledger " + path.string());
  }
}

}  // namespace compmetrics
