#pragma once

// Shared helpers for the JSON-backed text formats (facts, plans, ledgers).

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>

#include <json.hpp>

#include "compmetrics/error.hpp"

namespace compmetrics::json_util {

inline ParseError schema_error(const std::string& path, std::string_view expected) {
  return ParseError(path + ": expected " + std::string(expected), 0, 0, 0);
}

/// Parses `text`, converting syntax errors into ParseError with line/column.
inline nlohmann::json parse(std::string_view text) {
  try {
    return nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // nlohmann reports the 1-based byte position of the offending character.
    std::size_t offset = e.byte == 0 ? 0 : std::min(e.byte - 1, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": malformed document",
                     line, column, offset);
  }
}

inline void expect_keys(const nlohmann::json& j, const std::string& path,
                        std::initializer_list<std::string_view> required,
                        std::initializer_list<std::string_view> optional) {
  if (!j.is_object()) throw schema_error(path, "an object");
  for (auto key : required) {
    if (!j.contains(key)) {
      throw schema_error(path, "key '" + std::string(key) + "'");
    }
  }
  for (const auto& [key, _] : j.items()) {
    auto known = [&](std::initializer_list<std::string_view> keys) {
      return std::find(keys.begin(), keys.end(), key) != keys.end();
    };
    if (!known(required) && !known(optional)) {
      throw ParseError(path + ": unknown key '" + key + "'", 0, 0, 0);
    }
  }
}

/// Array under `key`; an absent key reads as an empty array.
inline const nlohmann::json& array_at(const nlohmann::json& j, std::string_view key,
                                      const std::string& path) {
  static const nlohmann::json empty = nlohmann::json::array();
  auto it = j.find(key);
  if (it == j.end()) return empty;
  if (!it->is_array()) {
    throw schema_error(path + "." + std::string(key), "an array");
  }
  return *it;
}

inline std::string as_string(const nlohmann::json& j, const std::string& path) {
  if (!j.is_string()) throw schema_error(path, "a string");
  return j.get<std::string>();
}

inline std::uint64_t as_uint(const nlohmann::json& j, const std::string& path) {
  if (!j.is_number_unsigned()) throw schema_error(path, "a non-negative integer");
  return j.get<std::uint64_t>();
}

}  // namespace compmetrics::json_util
