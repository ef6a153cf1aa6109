// Copyright 2026 The adiastep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "adiastep/cli/output.hpp"

#include <fmt/format.h>

#include <cmath>
#include <ostream>

namespace adiastep::cli {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return fmt::format("{:.15g}", value);
}

namespace {

std::string csv_cell(const Json& v) {
  if (v.is_number_float()) return format_number(v.get<double>());
  if (v.is_number_integer()) return fmt::format("{}", v.get<long long>());
  if (v.is_number_unsigned()) return fmt::format("{}", v.get<unsigned long long>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_null()) return "";
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char ch : s) {
      if (ch == '"') quoted += '"';
      quoted += ch;
    }
    return quoted + "\"";
  }
  return v.dump();
}

Json json_value(const Json& v) {
  if (v.is_number_float() && !std::isfinite(v.get<double>())) return nullptr;
  return v;
}

}  // namespace

void write_csv(std::ostream& os, const Document& doc, double wall_clock_seconds) {
  os << "# tool: adiastep " << ADIASTEP_VERSION << '\n';
  for (const auto& [key, value] : doc.config) os << "# " << key << ": " << value << '\n';
  for (std::size_t i = 0; i < doc.columns.size(); ++i) {
    os << (i ? "," : "") << doc.columns[i];
  }
  os << '\n';
  for (const auto& row : doc.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << '\n';
  }
  for (const auto& [key, value] : doc.summary.items()) {
    os << "# " << key << ": " << csv_cell(value) << '\n';
  }
  os << "# wall_clock_seconds: " << format_number(wall_clock_seconds) << '\n';
}

void write_json(std::ostream& os, const Document& doc, double wall_clock_seconds) {
  Json meta = Json::object();
  meta["tool"] = "adiastep";
  meta["version"] = ADIASTEP_VERSION;
  Json config = Json::object();
  for (const auto& [key, value] : doc.config) config[key] = value;
  meta["config"] = std::move(config);
  Json rows = Json::array();
  for (const auto& row : doc.rows) {
    Json obj = Json::object();
    for (std::size_t i = 0; i < row.size() && i < doc.columns.size(); ++i) {
      obj[doc.columns[i]] = json_value(row[i]);
    }
    rows.push_back(std::move(obj));
  }
  Json summary = Json::object();
  for (const auto& [key, value] : doc.summary.items()) summary[key] = json_value(value);
  Json out = Json::object();
  out["metadata"] = std::move(meta);
  out["rows"] = std::move(rows);
  out["summary"] = std::move(summary);
  out["wall_clock_seconds"] = wall_clock_seconds;
  os << out.dump(2) << '\n';
}

}  // namespace adiastep::cli
