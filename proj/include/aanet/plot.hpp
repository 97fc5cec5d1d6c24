/* Copyright 2026 The AANet Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef AANET_PLOT_HPP_
#define AANET_PLOT_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace aanet {

// Comma-separated text with a header row. No quoting: fields never contain
// commas in the files this library writes.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Throws DataError for an unknown column.
  std::size_t column(std::string_view name) const;
};

// Throws DataError on an empty text or ragged rows.
CsvTable parse_csv(std::string_view text);

// The same table from JSON: a top-level array gives one row per element, any
// other value a single row. Nested members are flattened into dotted column
// names ("ce.pixelate", "entries.contrast.0"). Throws DataError on invalid
// JSON or rows whose columns differ.
CsvTable parse_json_table(std::string_view text);

enum class ChartKind { kLine, kBar };

ChartKind parse_chart_kind(std::string_view name);

struct ChartSpec {
  ChartKind kind = ChartKind::kLine;
  // Line: numeric x column, one polyline per y column. Bar: one group of
  // bars per row, labelled with the x column.
  std::string x;
  std::vector<std::string> y;
  std::string title;
};

// Standalone SVG document. Throws DataError when a y value is not numeric.
std::string render_svg(const CsvTable& table, const ChartSpec& spec);

}  // namespace aanet

#endif  // AANET_PLOT_HPP_
