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

#include "aanet/robustness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

namespace aanet {

namespace {

constexpr std::array<Corruption, 7> kAllCorruptions = {
    Corruption::kGaussianNoise, Corruption::kShotNoise,
    Corruption::kImpulseNoise,  Corruption::kDefocusBlur,
    Corruption::kContrast,      Corruption::kBrightness,
    Corruption::kPixelate,
};

using Levels = std::array<double, kSeverityLevels>;

const Levels& severity_table(Corruption c) {
  static const Levels gaussian{0.04, 0.08, 0.12, 0.16, 0.20};
  static const Levels shot{60, 25, 12, 5, 3};
  static const Levels impulse{0.01, 0.02, 0.05, 0.07, 0.10};
  static const Levels defocus{1, 2, 3, 4, 6};
  static const Levels contrast{0.75, 0.5, 0.4, 0.3, 0.2};
  static const Levels brightness{0.05, 0.1, 0.15, 0.2, 0.3};
  static const Levels pixelate{2, 3, 4, 6, 8};
  switch (c) {
    case Corruption::kGaussianNoise:
      return gaussian;
    case Corruption::kShotNoise:
      return shot;
    case Corruption::kImpulseNoise:
      return impulse;
    case Corruption::kDefocusBlur:
      return defocus;
    case Corruption::kContrast:
      return contrast;
    case Corruption::kBrightness:
      return brightness;
    case Corruption::kPixelate:
      return pixelate;
  }
  return gaussian;
}

double clip01(double v) { return std::clamp(v, 0.0, 1.0); }

void gaussian_noise(Tensor& x, double sigma, std::mt19937_64& rng) {
  if (sigma == 0.0) return;
  std::normal_distribution<double> dist(0.0, sigma);
  for (double& v : x.data()) v = clip01(v + dist(rng));
}

void shot_noise(Tensor& x, double scale, std::mt19937_64& rng) {
  for (double& v : x.data()) {
    const double lambda = v * scale;
    if (lambda <= 0.0) {
      v = 0.0;
      continue;
    }
    std::poisson_distribution<long> dist(lambda);
    v = clip01(static_cast<double>(dist(rng)) / scale);
  }
}

void impulse_noise(Tensor& x, double fraction, std::mt19937_64& rng) {
  if (fraction == 0.0) return;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double& v : x.data()) {
    if (u(rng) < fraction) v = u(rng) < 0.5 ? 0.0 : 1.0;
  }
}

// Normalized disk average with edge-clamped borders.
void defocus_blur(Tensor& x, double radius) {
  const long r = static_cast<long>(std::floor(radius));
  if (r <= 0) return;
  std::vector<std::pair<long, long>> taps;
  for (long i = -r; i <= r; ++i) {
    for (long j = -r; j <= r; ++j) {
      if (static_cast<double>(i * i + j * j) <= radius * radius) {
        taps.emplace_back(i, j);
      }
    }
  }
  const double weight = 1.0 / static_cast<double>(taps.size());
  const Shape& s = x.shape();
  const long h = static_cast<long>(s.h);
  const long w = static_cast<long>(s.w);
  const Tensor src_tensor = x;
  for (std::size_t n = 0; n < s.n; ++n) {
    for (std::size_t c = 0; c < s.c; ++c) {
      auto src = src_tensor.plane(n, c);
      auto dst = x.plane(n, c);
      for (long i = 0; i < h; ++i) {
        for (long j = 0; j < w; ++j) {
          double acc = 0.0;
          for (const auto& [di, dj] : taps) {
            const long si = std::clamp(i + di, 0L, h - 1);
            const long sj = std::clamp(j + dj, 0L, w - 1);
            acc += src[static_cast<std::size_t>(si * w + sj)];
          }
          dst[static_cast<std::size_t>(i * w + j)] = clip01(acc * weight);
        }
      }
    }
  }
}

// Scales deviations from each image's mean intensity.
void contrast(Tensor& x, double factor) {
  if (factor == 1.0) return;
  const Shape& s = x.shape();
  const std::size_t per_image = s.c * s.plane_size();
  auto d = x.data();
  for (std::size_t n = 0; n < s.n; ++n) {
    auto img = d.subspan(n * per_image, per_image);
    double mean = 0.0;
    for (double v : img) mean += v;
    mean /= static_cast<double>(per_image);
    for (double& v : img) v = clip01((v - mean) * factor + mean);
  }
}

void brightness(Tensor& x, double offset) {
  if (offset == 0.0) return;
  for (double& v : x.data()) v = clip01(v + offset);
}

// Replaces each factor×factor block by its mean; edge blocks may be partial.
void pixelate(Tensor& x, double factor) {
  const auto f = static_cast<std::size_t>(std::lround(factor));
  if (f <= 1) return;
  const Shape& s = x.shape();
  for (std::size_t n = 0; n < s.n; ++n) {
    for (std::size_t c = 0; c < s.c; ++c) {
      auto p = x.plane(n, c);
      for (std::size_t bi = 0; bi < s.h; bi += f) {
        for (std::size_t bj = 0; bj < s.w; bj += f) {
          const std::size_t ei = std::min(bi + f, s.h);
          const std::size_t ej = std::min(bj + f, s.w);
          double mean = 0.0;
          for (std::size_t i = bi; i < ei; ++i) {
            for (std::size_t j = bj; j < ej; ++j) mean += p[i * s.w + j];
          }
          mean /= static_cast<double>((ei - bi) * (ej - bj));
          for (std::size_t i = bi; i < ei; ++i) {
            for (std::size_t j = bj; j < ej; ++j) p[i * s.w + j] = mean;
          }
        }
      }
    }
  }
}

}  // namespace

std::string_view to_string(Corruption c) {
  switch (c) {
    case Corruption::kGaussianNoise:
      return "gaussian_noise";
    case Corruption::kShotNoise:
      return "shot_noise";
    case Corruption::kImpulseNoise:
      return "impulse_noise";
    case Corruption::kDefocusBlur:
      return "defocus_blur";
    case Corruption::kContrast:
      return "contrast";
    case Corruption::kBrightness:
      return "brightness";
    case Corruption::kPixelate:
      return "pixelate";
  }
  return "unknown";
}

Corruption parse_corruption(std::string_view name) {
  for (Corruption c : kAllCorruptions) {
    if (to_string(c) == name) return c;
  }
  throw ArgumentError("unknown corruption '" + std::string(name) + "'");
}

std::span<const Corruption> all_corruptions() { return kAllCorruptions; }

Severity severity(Corruption c, int level) {
  if (level < 1 || level > kSeverityLevels) {
    throw ArgumentError("severity level must be in 1..5, got " +
                        std::to_string(level));
  }
  return {level, severity_table(c)[static_cast<std::size_t>(level - 1)]};
}

Tensor corrupt(const Tensor& image, Corruption c, const Severity& sev,
               std::uint64_t seed) {
  for (double v : image.data()) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ArgumentError("corrupt expects image values in [0, 1]");
    }
  }
  if (sev.parameter < 0.0) {
    throw ArgumentError("corruption parameter must be non-negative");
  }
  Tensor out = image;
  std::mt19937_64 rng(seed);
  switch (c) {
    case Corruption::kGaussianNoise:
      gaussian_noise(out, sev.parameter, rng);
      break;
    case Corruption::kShotNoise:
      if (sev.parameter <= 0.0) {
        throw ArgumentError("shot noise needs a positive photon scale");
      }
      shot_noise(out, sev.parameter, rng);
      break;
    case Corruption::kImpulseNoise:
      impulse_noise(out, sev.parameter, rng);
      break;
    case Corruption::kDefocusBlur:
      defocus_blur(out, sev.parameter);
      break;
    case Corruption::kContrast:
      contrast(out, sev.parameter);
      break;
    case Corruption::kBrightness:
      brightness(out, sev.parameter);
      break;
    case Corruption::kPixelate:
      pixelate(out, sev.parameter);
      break;
  }
  return out;
}

void validate(const ErrorTable& table) {
  auto check = [](double e, const std::string& where) {
    if (!(e >= 0.0 && e <= 1.0)) {
      throw DataError("error " + std::to_string(e) + " for " + where +
                      " is outside [0, 1]");
    }
  };
  check(table.clean_error, "clean");
  for (const auto& [name, row] : table.entries) {
    for (double e : row) check(e, name);
  }
}

double corruption_error(const ErrorTable& f, const ErrorTable& baseline,
                        const std::string& corruption) {
  const auto fi = f.entries.find(corruption);
  const auto bi = baseline.entries.find(corruption);
  if (fi == f.entries.end() || bi == baseline.entries.end()) {
    throw DataError("corruption '" + corruption + "' missing from a table");
  }
  double num = 0.0, den = 0.0;
  for (int s = 0; s < kSeverityLevels; ++s) {
    num += fi->second[static_cast<std::size_t>(s)];
    den += bi->second[static_cast<std::size_t>(s)];
  }
  if (den <= 0.0) {
    throw DegenerateBaselineError("baseline errors for '" + corruption +
                                  "' sum to zero");
  }
  return 100.0 * num / den;
}

double mean_corruption_error(std::span<const double> ce_values) {
  if (ce_values.empty()) {
    throw ArgumentError("mCE needs at least one corruption error");
  }
  double sum = 0.0;
  for (double v : ce_values) sum += v;
  return sum / static_cast<double>(ce_values.size());
}

CorruptionReport corruption_report(const ErrorTable& f,
                                   const ErrorTable& baseline) {
  CorruptionReport report;
  std::vector<double> values;
  for (const auto& [name, row] : f.entries) {
    const double ce = corruption_error(f, baseline, name);
    report.ce[name] = ce;
    values.push_back(ce);
  }
  report.mce = mean_corruption_error(values);
  report.clean_error = f.clean_error;
  return report;
}

void to_json(nlohmann::json& j, const ErrorTable& t) {
  j = nlohmann::json{{"entries", t.entries}, {"clean_error", t.clean_error}};
}

void from_json(const nlohmann::json& j, ErrorTable& t) {
  try {
    t.entries.clear();
    for (const auto& [name, row] : j.at("entries").items()) {
      if (!row.is_array() || row.size() != kSeverityLevels) {
        throw DataError("corruption '" + name +
                        "' needs exactly 5 severity entries");
      }
      t.entries[name] = row.get<std::array<double, kSeverityLevels>>();
    }
    t.clean_error = j.at("clean_error").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed error table: ") + e.what());
  }
  validate(t);
}

void to_json(nlohmann::json& j, const CorruptionReport& r) {
  j = nlohmann::json{
      {"ce", r.ce}, {"mce", r.mce}, {"clean_error", r.clean_error}};
}

void from_json(const nlohmann::json& j, CorruptionReport& r) {
  try {
    r.ce = j.at("ce").get<std::map<std::string, double>>();
    r.mce = j.at("mce").get<double>();
    r.clean_error = j.at("clean_error").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed corruption report: ") + e.what());
  }
}

std::string to_csv(const ErrorTable& table) {
  std::ostringstream os;
  os.precision(17);
  os << "corruption,severity,error\n";
  os << "clean,0," << table.clean_error << "\n";
  for (const auto& [name, row] : table.entries) {
    for (int s = 0; s < kSeverityLevels; ++s) {
      os << name << "," << s + 1 << "," << row[static_cast<std::size_t>(s)]
         << "\n";
    }
  }
  return os.str();
}

ErrorTable error_table_from_csv(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  if (!std::getline(is, line) || line != "corruption,severity,error") {
    throw DataError("error table CSV must start with corruption,severity,error");
  }
  ErrorTable table;
  std::map<std::string, std::array<bool, kSeverityLevels>> seen;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string name, sev, err;
    if (!std::getline(row, name, ',') || !std::getline(row, sev, ',') ||
        !std::getline(row, err)) {
      throw DataError("malformed error table row '" + line + "'");
    }
    int level = 0;
    double value = 0.0;
    try {
      level = std::stoi(sev);
      value = std::stod(err);
    } catch (const std::exception&) {
      throw DataError("malformed error table row '" + line + "'");
    }
    if (name == "clean" && level == 0) {
      table.clean_error = value;
      continue;
    }
    if (level < 1 || level > kSeverityLevels) {
      throw DataError("severity out of range in row '" + line + "'");
    }
    const auto idx = static_cast<std::size_t>(level - 1);
    table.entries[name][idx] = value;
    seen[name][idx] = true;
  }
  for (const auto& [name, flags] : seen) {
    if (!std::all_of(flags.begin(), flags.end(), [](bool b) { return b; })) {
      throw DataError("corruption '" + name + "' lacks some severities");
    }
  }
  validate(table);
  return table;
}

std::uint64_t cell_seed(std::uint64_t seed, Corruption c, int level) {
  // splitmix64 finalizer over the packed cell coordinates.
  std::uint64_t z = seed ^ (static_cast<std::uint64_t>(c) << 32) ^
                    static_cast<std::uint64_t>(level);
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

namespace {

double top1_error(const LayerGraph& net, const Tensor& images,
                  std::span<const int> labels) {
  const std::size_t n = labels.size();
  constexpr std::size_t kBatch = 64;
  std::size_t wrong = 0;
  std::vector<std::size_t> idx;
  for (std::size_t start = 0; start < n; start += kBatch) {
    idx.clear();
    for (std::size_t i = start; i < std::min(n, start + kBatch); ++i) idx.push_back(i);
    const std::vector<int> pred = argmax_rows(net.infer(gather(images, idx)));
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (pred[k] != labels[idx[k]]) ++wrong;
    }
  }
  return n == 0 ? 0.0 : static_cast<double>(wrong) / static_cast<double>(n);
}

}  // namespace

ErrorTable evaluate_corruptions(const LayerGraph& net, const Dataset& test,
                                std::span<const Corruption> corruptions,
                                std::uint64_t seed, std::size_t threads) {
  struct Cell {
    Corruption corruption;
    int level;
    double error = 0.0;
  };
  std::vector<Cell> cells;
  for (Corruption c : corruptions) {
    for (int s = 1; s <= kSeverityLevels; ++s) cells.push_back({c, s});
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      Cell& cell = cells[i];
      const Tensor images =
          corrupt(test.images, cell.corruption,
                  severity(cell.corruption, cell.level),
                  cell_seed(seed, cell.corruption, cell.level));
      cell.error = top1_error(net, images, test.labels);
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, cells.size() + 1);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  ErrorTable table;
  table.clean_error = top1_error(net, test.images, test.labels);
  for (const Cell& cell : cells) {
    table.entries[std::string(to_string(cell.corruption))]
                 [static_cast<std::size_t>(cell.level - 1)] = cell.error;
  }
  return table;
}

}  // namespace aanet
