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

#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace adiastep::cli {

using Json = nlohmann::ordered_json;

/// Tabular result plus scalar summary, serialized as CSV or JSON.
struct Document {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::string> columns;
  /// One JSON array per row, aligned with `columns`.
  std::vector<Json> rows;
  Json summary = Json::object();
};

/// 15 significant digits, '.' decimal point.
std::string format_number(double value);

/// `#` metadata lines, header, rows, summary lines, then the wall-clock line.
void write_csv(std::ostream& os, const Document& doc, double wall_clock_seconds);
void write_json(std::ostream& os, const Document& doc, double wall_clock_seconds);

}  // namespace adiastep::cli
