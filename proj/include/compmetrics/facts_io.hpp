#pragma once

// Fact file format v1: a JSON document with the top-level keys
// `schema_version`, `components`, `classes`, `inheritance`, `invocations` and
// the optional `call_edges`. See docs/facts-format.md.

#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <string_view>

#include "compmetrics/code_model.hpp"

namespace compmetrics {

inline constexpr std::string_view kFactsSchemaVersion = "1";

/// Parses and validates a fact document. Duplicate invocation records and
/// call edges are merged by summation; the result is canonical.
/// Throws ParseError, Error(unsupported_version) or InvalidFactsError.
CodeFacts load_facts(std::string_view text);
CodeFacts load_facts(std::istream& in);
CodeFacts load_facts_file(const std::filesystem::path& path);

/// Deterministic serialization: sorted keys, sorted lists, two-space indent,
/// trailing newline. Throws InvalidFactsError on invalid input.
std::string save_facts(const CodeFacts& facts);

/// Union of all parts. Identical definitions are deduplicated, invocation and
/// call counts are summed. Throws Error(merge_conflict) when the same id is
/// defined differently, InvalidFactsError when the union is invalid.
CodeFacts merge_facts(std::span<const CodeFacts> parts);

}  // namespace compmetrics
