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

#include "aanet/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "aanet/checkpoint.hpp"
#include "aanet/error.hpp"
#include "aanet/fewshot.hpp"
#include "aanet/plot.hpp"
#include "aanet/robustness.hpp"
#include "aanet/spectral.hpp"
#include "aanet/trainer.hpp"

namespace aanet {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Options {
  std::string config_path;
  std::int64_t seed = -1;
  std::string out_dir = ".";
  std::string format = "json";
  std::string checkpoint;
  // corrupt-eval / mce
  std::string baseline;
  std::string model;
  std::vector<std::string> corruptions;
  // spectrum / consistency
  std::size_t samples = 64;
  // plot
  std::string input;
  std::string output;
  std::string kind = "line";
  std::string x;
  std::vector<std::string> y;
  std::string title;
};

std::string read_text(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
}

std::size_t worker_threads() {
  if (const char* env = std::getenv("AANET_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) {
      throw ConfigError("AANET_THREADS must be a positive integer, got '" +
                        std::string(env) + "'");
    }
    return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

ExperimentConfig resolve_config(const Options& opt, std::ostream& err) {
  ExperimentConfig config;
  if (!opt.config_path.empty()) config = load_config(opt.config_path);
  if (opt.seed >= 0) config.train.seed = static_cast<std::uint64_t>(opt.seed);
  err << "resolved config:\n" << serialize_config(config);
  err << "seed: " << config.train.seed << "\n";
  return config;
}

fs::path out_path(const Options& opt, const std::string& name) {
  fs::create_directories(opt.out_dir);
  return fs::path(opt.out_dir) / name;
}

// Loads the trained weights when a checkpoint is given; otherwise the freshly
// initialized network of the config.
LayerGraph network_for(const ExperimentConfig& config, const Options& opt) {
  LayerGraph net = build_network(config.arch, config.placement, config.train.seed);
  if (!opt.checkpoint.empty()) load_checkpoint(opt.checkpoint, net);
  net.set_mode(Mode::kEval);
  return net;
}

Tensor leading_samples(const Dataset& data, std::size_t count) {
  std::vector<std::size_t> idx(std::min(count, data.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return gather(data.images, idx);
}

ErrorTable read_error_table(const std::string& path) {
  const std::string text = read_text(path);
  ErrorTable table;
  if (fs::path(path).extension() == ".csv") {
    table = error_table_from_csv(text);
  } else {
    try {
      table = json::parse(text).get<ErrorTable>();
    } catch (const json::exception& e) {
      throw DataError(path + ": " + e.what());
    }
  }
  validate(table);
  return table;
}

std::string report_csv(const CorruptionReport& r) {
  std::ostringstream s;
  s.precision(17);
  s << "corruption,ce\n";
  for (const auto& [name, ce] : r.ce) s << name << "," << ce << "\n";
  s << "mce," << r.mce << "\n";
  s << "clean_error," << r.clean_error << "\n";
  return s.str();
}

void emit(const Options& opt, const std::string& stem, const json& j,
          const std::string& csv, std::ostream& out) {
  if (opt.format == "csv") {
    write_text(out_path(opt, stem + ".csv"), csv);
    out << csv;
  } else {
    write_text(out_path(opt, stem + ".json"), j.dump(2) + "\n");
    out << j.dump(2) << "\n";
  }
}

int cmd_train(const Options& opt, std::ostream& out, std::ostream& err) {
  const ExperimentConfig config = resolve_config(opt, err);
  const auto [train_set, test_set] = load_datasets(config);
  LayerGraph net = build_network(config.arch, config.placement, config.train.seed);

  const fs::path log_path = out_path(opt, "train_log.csv");
  std::ofstream log(log_path);
  if (!log) throw DataError("cannot write " + log_path.string());
  log.precision(17);
  log << "epoch,lr,loss,test_accuracy\n";
  train(net, train_set, config.train, [&](const EpochLog& e) {
    const double acc = accuracy(net, test_set.images, test_set.labels);
    log << e.epoch << "," << e.lr << "," << e.mean_loss << "," << acc << "\n";
    err << "epoch " << e.epoch << " loss " << e.mean_loss << " test accuracy " << acc
        << "\n";
  });
  log.close();

  save_checkpoint(out_path(opt, "checkpoint.bin"), net);
  write_text(out_path(opt, "config.json"), serialize_config(config));
  const double acc = accuracy(net, test_set.images, test_set.labels);
  json j{{"test_accuracy", acc},
         {"checkpoint", out_path(opt, "checkpoint.bin").string()},
         {"log", log_path.string()}};
  out << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_eval(const Options& opt, std::ostream& out, std::ostream& err) {
  const ExperimentConfig config = resolve_config(opt, err);
  const auto [train_set, test_set] = load_datasets(config);
  const LayerGraph net = network_for(config, opt);
  const double acc = accuracy(net, test_set.images, test_set.labels);
  std::ostringstream csv;
  csv.precision(17);
  csv << "accuracy,error\n" << acc << "," << 1.0 - acc << "\n";
  emit(opt, "eval", json{{"accuracy", acc}, {"error", 1.0 - acc}}, csv.str(), out);
  return kExitOk;
}

int cmd_corrupt_eval(const Options& opt, std::ostream& out, std::ostream& err) {
  const ExperimentConfig config = resolve_config(opt, err);
  if (!config.eval.corruptions) {
    throw ConfigError("corrupt-eval: eval.corruptions is false in the config");
  }
  const auto [train_set, test_set] = load_datasets(config);
  const LayerGraph net = network_for(config, opt);
  std::vector<Corruption> list;
  for (const auto& name : opt.corruptions) list.push_back(parse_corruption(name));
  if (list.empty()) list.assign(all_corruptions().begin(), all_corruptions().end());

  const ErrorTable table =
      evaluate_corruptions(net, test_set, list, config.train.seed, worker_threads());
  json j;
  to_json(j, table);
  emit(opt, "error_table", j, to_csv(table), out);
  if (!opt.baseline.empty()) {
    const CorruptionReport report = corruption_report(table, read_error_table(opt.baseline));
    json rj;
    to_json(rj, report);
    emit(opt, "report", rj, report_csv(report), out);
  }
  return kExitOk;
}

int cmd_spectrum(const Options& opt, std::ostream& out, std::ostream& err) {
  const ExperimentConfig config = resolve_config(opt, err);
  const auto [train_set, test_set] = load_datasets(config);
  const LayerGraph net = network_for(config, opt);
  const auto reports =
      subsampling_alias_reports(net, leading_samples(test_set, opt.samples));
  json j = json::array();
  std::ostringstream csv;
  csv.precision(17);
  csv << "layer,stride,total_energy,above_nyquist_energy,fraction\n";
  for (const auto& r : reports) {
    json e;
    to_json(e, r.report);
    e["layer"] = r.layer;
    j.push_back(e);
    csv << r.layer << "," << r.report.stride << "," << r.report.total_energy << ","
        << r.report.above_nyquist_energy << "," << r.report.fraction << "\n";
  }
  emit(opt, "spectrum", j, csv.str(), out);
  return kExitOk;
}

int cmd_consistency(const Options& opt, std::ostream& out, std::ostream& err) {
  const ExperimentConfig config = resolve_config(opt, err);
  const auto [train_set, test_set] = load_datasets(config);
  const LayerGraph net = network_for(config, opt);
  const ConsistencyReport r =
      shift_consistency(net, leading_samples(test_set, opt.samples),
                        config.eval.shift_max, config.eval.shift_padding);
  json j;
  to_json(j, r);
  std::ostringstream csv;
  csv.precision(17);
  csv << "pairs_evaluated,agreement_rate,mean_feature_cosine\n"
      << r.pairs_evaluated << "," << r.agreement_rate << "," << r.mean_feature_cosine
      << "\n";
  emit(opt, "consistency", j, csv.str(), out);
  return kExitOk;
}

int cmd_episode_eval(const Options& opt, std::ostream& out, std::ostream& err) {
  const ExperimentConfig config = resolve_config(opt, err);
  const auto [train_set, test_set] = load_datasets(config);
  const LayerGraph net = network_for(config, opt);
  const EvalConfig& ev = config.eval;
  if (ev.episodes == 0) throw ConfigError("eval.episodes must be >= 1");
  const Tensor features = extract_features(net, test_set.images);

  std::vector<double> accs;
  for (std::size_t e = 0; e < ev.episodes; ++e) {
    const Episode ep = sample_episode(test_set.labels, ev.way, ev.shots, ev.query,
                                      config.train.seed + e);
    const auto pred = ncc_classify(gather(features, ep.support_indices),
                                   ep.support_labels,
                                   gather(features, ep.query_indices));
    std::size_t correct = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) correct += pred[i] == ep.query_labels[i];
    accs.push_back(static_cast<double>(correct) / static_cast<double>(pred.size()));
  }
  const double n = static_cast<double>(accs.size());
  double mean = 0.0;
  for (double a : accs) mean += a / n;
  double var = 0.0;
  for (double a : accs) var += (a - mean) * (a - mean);
  var = accs.size() > 1 ? var / (n - 1.0) : 0.0;
  const double ci = 1.96 * std::sqrt(var / n);

  std::ostringstream csv;
  csv.precision(17);
  csv << "episodes,mean_accuracy,ci95\n" << accs.size() << "," << mean << "," << ci << "\n";
  emit(opt, "episodes",
       json{{"episodes", accs.size()}, {"mean_accuracy", mean}, {"ci95", ci},
            {"way", ev.way}, {"shots", ev.shots}, {"query", ev.query}},
       csv.str(), out);
  return kExitOk;
}

int cmd_mce(const Options& opt, std::ostream& out, std::ostream& err) {
  if (opt.model.empty() || opt.baseline.empty()) {
    throw ConfigError("mce needs --model and --baseline error tables");
  }
  resolve_config(opt, err);
  err << "model table: " << opt.model << "\nbaseline table: " << opt.baseline << "\n";
  const CorruptionReport report =
      corruption_report(read_error_table(opt.model), read_error_table(opt.baseline));
  json j;
  to_json(j, report);
  emit(opt, "report", j, report_csv(report), out);
  return kExitOk;
}

int cmd_plot(const Options& opt, std::ostream& out, std::ostream& err) {
  if (opt.input.empty()) throw ConfigError("plot needs --input");
  resolve_config(opt, err);
  ChartSpec spec;
  spec.kind = parse_chart_kind(opt.kind);
  const std::string text = read_text(opt.input);
  const CsvTable table = fs::path(opt.input).extension() == ".json" ? parse_json_table(text)
                                                                    : parse_csv(text);
  spec.x = opt.x.empty() ? table.header.front() : opt.x;
  spec.y = opt.y;
  if (spec.y.empty()) spec.y.push_back(table.header.back());
  spec.title = opt.title.empty() ? fs::path(opt.input).stem().string() : opt.title;
  const fs::path target =
      opt.output.empty() ? out_path(opt, fs::path(opt.input).stem().string() + ".svg")
                         : fs::path(opt.output);
  write_text(target, render_svg(table, spec));
  err << "plot: " << spec.title << "\n";
  out << target.string() << "\n";
  return kExitOk;
}

}  // namespace

std::pair<Dataset, Dataset> load_datasets(const ExperimentConfig& config) {
  const DataConfig& d = config.data;
  std::pair<Dataset, Dataset> sets;
  if (d.source == "idx") {
    sets = {load_idx(d.train_images, d.train_labels),
            load_idx(d.test_images, d.test_labels)};
  } else {
    const Generator g = parse_generator(d.source);
    sets = {make_synthetic(g, d.train_size, config.arch.classes, config.arch.input_size,
                           d.seed),
            make_synthetic(g, d.test_size, config.arch.classes, config.arch.input_size,
                           d.seed + 1)};
  }
  for (const Dataset* ds : {&sets.first, &sets.second}) {
    const Shape& s = ds->images.shape();
    if (s.c != config.arch.input_channels || s.h != config.arch.input_size ||
        s.w != config.arch.input_size) {
      throw ConfigError("data samples are " + std::to_string(s.c) + "x" +
                        std::to_string(s.h) + "x" + std::to_string(s.w) +
                        " but arch expects " + std::to_string(config.arch.input_channels) +
                        "x" + std::to_string(config.arch.input_size) + "x" +
                        std::to_string(config.arch.input_size));
    }
    for (int label : ds->labels) {
      if (label < 0 || static_cast<std::size_t>(label) >= config.arch.classes) {
        throw DataError("label " + std::to_string(label) + " exceeds arch.classes");
      }
    }
  }
  return sets;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Anti-aliased residual network experiments"};
  app.require_subcommand(1);
  Options opt;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "experiment config (JSON)");
    sub->add_option("--seed", opt.seed, "overrides train.seed")->check(CLI::NonNegativeNumber);
    sub->add_option("--out", opt.out_dir, "output directory");
    sub->add_option("--format", opt.format, "report format")
        ->check(CLI::IsMember({"json", "csv"}));
  };
  auto with_checkpoint = [&](CLI::App* sub) {
    sub->add_option("--checkpoint", opt.checkpoint, "trained weights");
  };

  auto* train_cmd = app.add_subcommand("train", "train a network; writes checkpoint and log");
  common(train_cmd);
  auto* eval_cmd = app.add_subcommand("eval", "clean test accuracy");
  common(eval_cmd);
  with_checkpoint(eval_cmd);
  auto* corrupt_cmd = app.add_subcommand("corrupt-eval", "error table over corruptions");
  common(corrupt_cmd);
  with_checkpoint(corrupt_cmd);
  corrupt_cmd->add_option("--baseline", opt.baseline, "baseline error table for CE/mCE");
  corrupt_cmd->add_option("--corruption", opt.corruptions, "restrict to these corruptions");
  auto* spectrum_cmd =
      app.add_subcommand("spectrum", "aliased energy entering each subsampling step");
  common(spectrum_cmd);
  with_checkpoint(spectrum_cmd);
  spectrum_cmd->add_option("--samples", opt.samples, "test samples to probe");
  auto* consistency_cmd = app.add_subcommand("consistency", "shift consistency");
  common(consistency_cmd);
  with_checkpoint(consistency_cmd);
  consistency_cmd->add_option("--samples", opt.samples, "test samples to shift");
  auto* episode_cmd = app.add_subcommand("episode-eval", "few-shot NCC accuracy");
  common(episode_cmd);
  with_checkpoint(episode_cmd);
  auto* mce_cmd = app.add_subcommand("mce", "CE and mCE from two error tables");
  common(mce_cmd);
  mce_cmd->add_option("--model", opt.model, "error table of the evaluated model");
  mce_cmd->add_option("--baseline", opt.baseline, "error table of the reference model");
  auto* plot_cmd = app.add_subcommand("plot", "SVG chart from a CSV or JSON file");
  common(plot_cmd);
  plot_cmd->add_option("--input", opt.input, "CSV or JSON file");
  plot_cmd->add_option("--output", opt.output, "SVG file (default <out>/<input>.svg)");
  plot_cmd->add_option("--kind", opt.kind, "line or bar");
  plot_cmd->add_option("--x", opt.x, "x or label column");
  plot_cmd->add_option("--y", opt.y, "value columns");
  plot_cmd->add_option("--title", opt.title, "chart title");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (train_cmd->parsed()) return cmd_train(opt, out, err);
    if (eval_cmd->parsed()) return cmd_eval(opt, out, err);
    if (corrupt_cmd->parsed()) return cmd_corrupt_eval(opt, out, err);
    if (spectrum_cmd->parsed()) return cmd_spectrum(opt, out, err);
    if (consistency_cmd->parsed()) return cmd_consistency(opt, out, err);
    if (episode_cmd->parsed()) return cmd_episode_eval(opt, out, err);
    if (mce_cmd->parsed()) return cmd_mce(opt, out, err);
    if (plot_cmd->parsed()) return cmd_plot(opt, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ArgumentError& e) {
    err << "argument error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace aanet
