#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ffdyn/errors.hpp"
#include "ffdyn/reveng.hpp"

namespace ffdyn::detail {

using nlohmann::json;

inline json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

inline const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw SchemaError(where + ": missing \"" + key + "\"");
  return obj.at(key);
}

inline std::uint64_t as_uint(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw SchemaError(where + ": expected a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

inline std::string as_string(const json& v, const std::string& where) {
  if (!v.is_string()) throw SchemaError(where + ": expected a string");
  return v.get<std::string>();
}

inline std::vector<VariableSpec> parse_variables(const json& doc) {
  const json& vars = require(doc, "variables", "problem");
  if (!vars.is_array() || vars.empty()) throw SchemaError("\"variables\" must be a nonempty array");
  std::vector<VariableSpec> out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const std::string where = "variables[" + std::to_string(i) + "]";
    VariableSpec v{as_string(require(vars[i], "name", where), where + ".name"),
                   as_uint(require(vars[i], "domain", where), where + ".domain")};
    if (v.domain < 2) throw SchemaError(where + ": domain must be at least 2");
    for (const auto& prev : out) {
      if (prev.name == v.name) throw SchemaError("duplicate variable name \"" + v.name + "\"");
    }
    out.push_back(std::move(v));
  }
  return out;
}

inline std::optional<std::uint64_t> optional_prime(const json& doc) {
  if (!doc.contains("p") || doc.at("p").is_null()) return std::nullopt;
  return as_uint(doc.at("p"), "p");
}

inline std::vector<Residue> parse_row(const json& row, const std::string& where) {
  if (!row.is_array()) throw SchemaError(where + ": expected an array of integers");
  std::vector<Residue> out;
  for (std::size_t i = 0; i < row.size(); ++i) out.push_back(as_uint(row[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace ffdyn::detail
