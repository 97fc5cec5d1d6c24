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

#include "aanet/plot.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "aanet/error.hpp"
#include "json.hpp"

namespace aanet {

namespace {

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.emplace_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double to_number(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw DataError("'" + s + "' is not a number");
  }
  return v;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
constexpr double kWidth = 640, kHeight = 400;
constexpr double kLeft = 60, kRight = 20, kTop = 40, kBottom = 60;

}  // namespace

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw DataError("no column '" + std::string(name) + "'");
}

CsvTable parse_csv(std::string_view text) {
  CsvTable t;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    start = end + 1;
    if (line.empty()) continue;
    if (t.header.empty()) {
      t.header = split(line);
      continue;
    }
    auto row = split(line);
    if (row.size() != t.header.size()) {
      throw DataError("CSV row has " + std::to_string(row.size()) +
                      " fields, header has " + std::to_string(t.header.size()));
    }
    t.rows.push_back(std::move(row));
  }
  if (t.header.empty()) throw DataError("CSV text is empty");
  return t;
}

namespace {

void flatten(const nlohmann::json& j, const std::string& prefix,
             std::vector<std::string>& keys, std::vector<std::string>& values) {
  if (j.is_object() || j.is_array()) {
    std::size_t i = 0;
    for (const auto& [key, value] : j.items()) {
      const std::string name = j.is_array() ? std::to_string(i++) : key;
      flatten(value, prefix.empty() ? name : prefix + "." + name, keys, values);
    }
    return;
  }
  keys.push_back(prefix.empty() ? "value" : prefix);
  values.push_back(j.is_string() ? j.get<std::string>() : j.dump());
}

}  // namespace

CsvTable parse_json_table(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("not a JSON table: ") + e.what());
  }
  CsvTable t;
  auto add = [&t](const nlohmann::json& item) {
    std::vector<std::string> keys, values;
    flatten(item, "", keys, values);
    if (t.rows.empty() && t.header.empty()) {
      t.header = std::move(keys);
    } else if (keys != t.header) {
      throw DataError("JSON rows have different fields");
    }
    t.rows.push_back(std::move(values));
  };
  if (j.is_array()) {
    for (const auto& item : j) add(item);
  } else {
    add(j);
  }
  if (t.header.empty()) throw DataError("JSON table is empty");
  return t;
}

ChartKind parse_chart_kind(std::string_view name) {
  if (name == "line") return ChartKind::kLine;
  if (name == "bar") return ChartKind::kBar;
  throw ArgumentError("chart kind must be line or bar, got '" + std::string(name) + "'");
}

std::string render_svg(const CsvTable& table, const ChartSpec& spec) {
  if (spec.y.empty()) throw ArgumentError("a chart needs at least one y column");
  const std::size_t xi = table.column(spec.x);
  std::vector<std::size_t> yi;
  for (const auto& y : spec.y) yi.push_back(table.column(y));

  std::vector<std::vector<double>> ys(yi.size());
  double lo = 0.0, hi = 0.0;
  for (std::size_t s = 0; s < yi.size(); ++s) {
    for (const auto& row : table.rows) {
      const double v = to_number(row[yi[s]]);
      ys[s].push_back(v);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (hi == lo) hi = lo + 1.0;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto sy = [&](double v) { return kTop + plot_h * (hi - v) / (hi - lo); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(spec.title) << "</text>\n";
  // axes and y ticks
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
      << "\" y2=\"" << kTop + plot_h << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << sy(0.0) << "\" x2=\"" << kLeft + plot_w
      << "\" y2=\"" << sy(0.0) << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double v = lo + (hi - lo) * t / 4.0;
    svg << "<text x=\"" << kLeft - 4 << "\" y=\"" << sy(v) + 4
        << "\" text-anchor=\"end\">" << fmt(v) << "</text>\n";
  }

  const std::size_t n = table.rows.size();
  if (spec.kind == ChartKind::kLine) {
    std::vector<double> xs;
    for (const auto& row : table.rows) xs.push_back(to_number(row[xi]));
    double x_lo = n ? *std::min_element(xs.begin(), xs.end()) : 0.0;
    double x_hi = n ? *std::max_element(xs.begin(), xs.end()) : 1.0;
    if (x_hi == x_lo) x_hi = x_lo + 1.0;
    auto sx = [&](double v) { return kLeft + plot_w * (v - x_lo) / (x_hi - x_lo); };
    for (int t = 0; t <= 4; ++t) {
      const double v = x_lo + (x_hi - x_lo) * t / 4.0;
      svg << "<text x=\"" << sx(v) << "\" y=\"" << kTop + plot_h + 16
          << "\" text-anchor=\"middle\">" << fmt(v) << "</text>\n";
    }
    for (std::size_t s = 0; s < ys.size(); ++s) {
      svg << "<polyline fill=\"none\" stroke=\"" << kPalette[s % 8]
          << "\" stroke-width=\"2\" points=\"";
      for (std::size_t i = 0; i < n; ++i) {
        svg << (i ? " " : "") << sx(xs[i]) << "," << sy(ys[s][i]);
      }
      svg << "\"/>\n";
    }
  } else {
    const double group_w = n ? plot_w / static_cast<double>(n) : plot_w;
    const double bar_w = 0.8 * group_w / static_cast<double>(ys.size());
    for (std::size_t i = 0; i < n; ++i) {
      const double gx = kLeft + group_w * static_cast<double>(i) + 0.1 * group_w;
      for (std::size_t s = 0; s < ys.size(); ++s) {
        const double v = ys[s][i];
        svg << "<rect x=\"" << gx + bar_w * static_cast<double>(s) << "\" y=\""
            << std::min(sy(v), sy(0.0)) << "\" width=\"" << bar_w << "\" height=\""
            << std::abs(sy(v) - sy(0.0)) << "\" fill=\"" << kPalette[s % 8] << "\"/>\n";
      }
      const double cx = gx + 0.4 * group_w;
      const double cy = kTop + plot_h + 12;
      svg << "<text x=\"" << cx << "\" y=\"" << cy << "\" text-anchor=\"end\" transform=\"rotate(-40 "
          << cx << " " << cy << ")\">" << escape(table.rows[i][xi]) << "</text>\n";
    }
  }
  // legend
  for (std::size_t s = 0; s < spec.y.size(); ++s) {
    const double ly = kTop + 14.0 * static_cast<double>(s);
    svg << "<rect x=\"" << kWidth - 150 << "\" y=\"" << ly - 9 << "\" width=\"10\" height=\"10\" fill=\""
        << kPalette[s % 8] << "\"/>\n";
    svg << "<text x=\"" << kWidth - 136 << "\" y=\"" << ly << "\">" << escape(spec.y[s])
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace aanet
