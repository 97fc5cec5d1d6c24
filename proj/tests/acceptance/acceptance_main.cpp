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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Pass --skip-training to leave out the multi-seed training comparison.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "aanet/antialias.hpp"
#include "aanet/checkpoint.hpp"
#include "aanet/config.hpp"
#include "aanet/data.hpp"
#include "aanet/fewshot.hpp"
#include "aanet/fourier.hpp"
#include "aanet/network.hpp"
#include "aanet/robustness.hpp"
#include "aanet/spectral.hpp"
#include "aanet/tensor.hpp"
#include "aanet/trainer.hpp"
#include "gradient_check.hpp"
#include "random_config.hpp"
#include "test_util.hpp"

namespace aanet {
namespace {

using testing::random_tensor;

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Runner {
 public:
  void run(int id, const std::string& name, double budget_s,
           const std::function<Outcome()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > budget_s) {
      o.pass = false;
      o.detail += " [over the " + std::to_string(static_cast<int>(budget_s)) + " s budget]";
    }
    failures_ += o.pass ? 0 : 1;
    std::printf("%s %2d %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  int failures() const { return failures_; }

 private:
  int failures_ = 0;
};

std::string num(double v, int digits = 6) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

// --- 1 ---------------------------------------------------------------------

Outcome parameter_count_invariance() {
  const ArchSpec arch;
  const std::size_t p0 = build_network(arch, PlacementConfig::baseline(), 0).parameter_count();
  const Variant variants[] = {Variant::kNone, Variant::kBlurBefore, Variant::kBlurAfter,
                              Variant::kBlurBoth, Variant::kErf,
                              Variant::kBlurPoolPostActivation};
  const Activation acts[] = {Activation::kRelu, Activation::kSwish, Activation::kGelu};
  std::vector<PlacementConfig> configs{PlacementConfig::best_model(3),
                                       PlacementConfig::best_model(5),
                                       PlacementConfig::best_model(7)};
  std::size_t i = 0;
  for (Variant stem : variants)
    for (Variant strided : variants)
      for (Variant skip : variants) {
        PlacementConfig p;
        p.initial_conv = {stem, {3, PaddingMode::kReflect}};
        p.block_conv_unstrided = {variants[i % 4], {3 + 2 * static_cast<int>(i % 2), PaddingMode::kZero}};
        p.block_conv_strided = {strided, {5, PaddingMode::kCircular}};
        p.skip_strided = {skip, {3, PaddingMode::kReflect}};
        p.maxpool_blur = i % 2 == 0;
        p.activation = acts[i % 3];
        p.conv1_stride = 1 + static_cast<int>(i % 2);
        ++i;
        try {
          validate(p);
        } catch (const ConfigError&) {
          continue;
        }
        configs.push_back(p);
      }
  for (const PlacementConfig& p : configs) {
    const std::size_t count = build_network(arch, p, 0).parameter_count();
    if (count != p0) {
      return {false, "count " + std::to_string(count) + " differs from baseline " + std::to_string(p0)};
    }
  }
  return {true, std::to_string(configs.size()) + " placements, all " + std::to_string(p0) +
                    " parameters"};
}

// --- 2 ---------------------------------------------------------------------

Outcome gradient_suite() {
  using testing::check_layer;
  double worst = 0.0;
  std::string where;
  auto note = [&](const testing::GradientCheck& r) {
    if (r.worst >= worst) {
      worst = r.worst;
      where = r.where;
    }
  };
  const Tensor x = random_tensor({4, 2, 8, 8}, 1);
  for (PaddingMode m : {PaddingMode::kZero, PaddingMode::kCircular, PaddingMode::kReflect}) {
    ConvLayer conv("conv", random_tensor({3, 2, 3, 3}, 2), 2, m, 1);
    note(check_layer(conv, x, 3));
    BlurLayer blur("blur", {3, m});
    note(check_layer(blur, x, 4));
    MaxPoolLayer pool("maxpool", 3, 2, m, 1);
    note(check_layer(pool, x, 5));
  }
  SubsampleLayer sub("subsample", 2);
  note(check_layer(sub, x, 6));
  BatchNormLayer bn("batchnorm", 2);
  note(check_layer(bn, x, 7));
  for (Activation a : {Activation::kRelu, Activation::kSwish, Activation::kGelu}) {
    ActivationLayer act(std::string(to_string(a)), a);
    note(check_layer(act, x, 8));
  }
  GlobalAvgPoolLayer gap("gap");
  note(check_layer(gap, x, 9));
  LinearLayer fc("linear", random_tensor({3, 2, 1, 1}, 10), random_tensor({3, 1, 1, 1}, 11));
  note(check_layer(fc, gap.infer(x, nullptr), 12));

  // Whole networks: residual junctions, sequential units and every trainable
  // parameter under several placements.
  const Tensor batch = random_tensor({4, 2, 8, 8}, 13, 0.0, 1.0);
  const std::vector<int> labels{0, 1, 2, 1};
  std::vector<PlacementConfig> placements;
  for (Activation a : {Activation::kRelu, Activation::kSwish, Activation::kGelu}) {
    PlacementConfig base = PlacementConfig::baseline();
    base.activation = a;
    PlacementConfig best = PlacementConfig::best_model(3);
    best.activation = a;
    placements.push_back(base);
    placements.push_back(best);
  }
  for (Variant v : {Variant::kBlurBefore, Variant::kBlurBoth, Variant::kErf,
                    Variant::kBlurPoolPostActivation}) {
    PlacementConfig p = PlacementConfig::best_model(3);
    p.block_conv_strided.variant = v;
    p.block_conv_unstrided = {Variant::kBlurBefore, {3, PaddingMode::kCircular}};
    placements.push_back(p);
  }
  for (PlacementConfig& p : placements) {
    p.conv1_stride = 1;
    LayerGraph net = build_network(testing::two_block_arch(), p, 14);
    note(testing::check_network(net, batch, labels));
  }
  return {worst < 1e-6, "worst relative error " + num(worst, 3) + " at " + where + " over " +
                            std::to_string(placements.size()) + " networks"};
}

// --- 3 ---------------------------------------------------------------------

Outcome folding_oracle() {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::size_t lengths[] = {8, 12, 16, 24, 30, 32, 36, 64};
  double worst = 0.0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = lengths[rng() % std::size(lengths)];
    std::vector<int> strides;
    for (int s = 1; s <= static_cast<int>(n); ++s) {
      if (n % static_cast<std::size_t>(s) == 0 && s <= 8) strides.push_back(s);
    }
    const int s = strides[rng() % strides.size()];
    std::vector<double> x(n);
    for (double& v : x) v = u(rng);
    const std::size_t m = n / static_cast<std::size_t>(s);
    const auto got = folding_spectrum(x, s);
    // Direct DFT of the subsampled signal.
    for (std::size_t k = 0; k < m; ++k) {
      std::complex<double> bin = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        bin += x[i * static_cast<std::size_t>(s)] *
               std::polar(1.0, -2 * kPi * static_cast<double>(k * i) / static_cast<double>(m));
      }
      worst = std::max(worst, std::abs(got[k] - bin));
    }
  }
  return {worst < 1e-9, "500 cases, max deviation " + num(worst, 3)};
}

// --- 4 ---------------------------------------------------------------------

Outcome nyquist_null() {
  Tensor pattern({1, 1, 16, 16});
  for (std::size_t i = 0; i < 16; ++i)
    for (std::size_t j = 0; j < 16; ++j) pattern.at(0, 0, i, j) = (i + j) % 2 ? -1.0 : 1.0;
  const Tensor nulled = blur(pattern, {3, PaddingMode::kCircular});
  double residue = 0.0;
  for (double v : nulled.data()) residue = std::max(residue, std::abs(v));

  std::mt19937_64 rng(4);
  double excess = -1e300;
  int violations = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t h = 4 + 2 * (rng() % 7);
    const std::size_t w = 4 + 2 * (rng() % 7);
    const int k = 3 + 2 * static_cast<int>(rng() % 3);
    const Tensor x = random_tensor({1, 1, h, w}, rng());
    const double before = aliased_energy(x, 2).above_nyquist_energy;
    const double after = aliased_energy(blur(x, {k, PaddingMode::kCircular}), 2).above_nyquist_energy;
    excess = std::max(excess, after - before);
    if (after > before + 1e-9) ++violations;
  }
  return {residue < 1e-12 && violations == 0,
          "pattern residue " + num(residue, 3) + ", " + std::to_string(violations) +
              "/1000 trials gained aliased energy (largest change " + num(excess, 3) + ")"};
}

// --- 5 ---------------------------------------------------------------------

Outcome decomposition_and_commutativity() {
  std::mt19937_64 rng(5);
  int mismatches = 0;
  for (int t = 0; t < 60; ++t) {
    const std::size_t ksize = 1 + 2 * (rng() % 3);
    const Tensor x = random_tensor({2, 2, 6 + rng() % 6, 6 + rng() % 6}, rng());
    const Tensor k = random_tensor({3, 2, ksize, ksize}, rng());
    const PaddingMode m = static_cast<PaddingMode>(rng() % 3);
    const std::size_t pad = ksize / 2;
    const int stride = 2 + static_cast<int>(rng() % 2);
    if (!(conv2d(x, k, stride, m, pad) == subsample(conv2d(x, k, 1, m, pad), stride))) ++mismatches;
  }
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t k1 = 1 + 2 * (rng() % 3);
    const std::size_t k2 = 1 + 2 * (rng() % 3);
    const Tensor x = random_tensor({1, 1, 9, 10}, rng());
    const Tensor a = random_tensor({1, 1, k1, k1}, rng());
    const Tensor b = random_tensor({1, 1, k2, k2}, rng());
    const auto c = PaddingMode::kCircular;
    const Tensor ab = conv2d(conv2d(x, a, 1, c, k1 / 2), b, 1, c, k2 / 2);
    const Tensor ba = conv2d(conv2d(x, b, 1, c, k2 / 2), a, 1, c, k1 / 2);
    worst = std::max(worst, testing::max_abs_diff(ab, ba));
  }
  return {mismatches == 0 && worst < 1e-9,
          std::to_string(mismatches) + "/60 strided decompositions differ; 200 kernel pairs "
          "commute to " + num(worst, 3)};
}

// --- 6 ---------------------------------------------------------------------

Outcome skip_incapacity() {
  const BlurSpec k3{3, PaddingMode::kCircular};
  auto plain = make_probe_fragment(Variant::kNone, 1, 2, k3);
  auto blurred = make_probe_fragment(Variant::kBlurAfter, 1, 2, k3);
  double drift = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Tensor noise = random_tensor({1, 1, 16, 16}, seed);
    ProbeSink probes;
    plain->infer(noise, &probes);
    drift = std::max(drift, std::abs(aliased_energy(probes.at(0).signal, 2).fraction -
                                     aliased_energy(noise, 2).fraction));
  }
  Tensor tone({1, 1, 16, 16});
  for (std::size_t i = 0; i < 16; ++i)
    for (std::size_t j = 0; j < 16; ++j) tone.at(0, 0, i, j) = (i + j) % 2 ? -1.0 : 1.0;
  ProbeSink probes;
  plain->infer(tone, &probes);
  const double plain_fraction = aliased_energy(probes.at(0).signal, 2).fraction;
  probes.clear();
  blurred->infer(tone, &probes);
  const double blurred_fraction = aliased_energy(probes.at(0).signal, 2).fraction;
  return {drift < 1e-9 && blurred_fraction < 1e-6 && plain_fraction > 0.99,
          "noise fraction drift " + num(drift, 3) + "; Nyquist tone fraction " +
              num(plain_fraction, 4) + " plain vs " + num(blurred_fraction, 3) + " blurred"};
}

// --- 7 ---------------------------------------------------------------------

Outcome corruption_metrics() {
  auto table = [](std::array<double, 5> row) {
    ErrorTable t;
    t.entries["c"] = row;
    return t;
  };
  const ErrorTable base = table({0.4, 0.5, 0.6, 0.7, 0.8});
  const double self = corruption_error(base, base, "c");
  const double half = corruption_error(table({0.2, 0.25, 0.3, 0.35, 0.4}), base, "c");
  const double fixture = corruption_error(table({0.2, 0.3, 0.4, 0.5, 0.6}), base, "c");

  ErrorTable f, b;
  double expected = 0.0;
  for (int c = 0; c < 15; ++c) {
    std::array<double, 5> fr{}, br{};
    double fs = 0.0, bs = 0.0;
    for (int s = 0; s < 5; ++s) {
      fr[s] = 0.02 * (c + 1) + 0.01 * s;
      br[s] = 0.25 + 0.02 * c + 0.04 * s;
      fs += fr[s];
      bs += br[s];
    }
    f.entries["corruption" + std::to_string(c)] = fr;
    b.entries["corruption" + std::to_string(c)] = br;
    expected += 100.0 * fs / bs / 15.0;
  }
  const CorruptionReport r = corruption_report(f, b);
  const bool ok = std::abs(self - 100.0) < 1e-9 && std::abs(half - 50.0) < 1e-9 &&
                  std::abs(fixture - 200.0 / 3.0) < 1e-9 && r.ce.size() == 15 &&
                  std::abs(r.mce - expected) < 1e-9;
  return {ok, "self " + num(self, 12) + ", half " + num(half, 12) + ", fixture " +
                  num(fixture, 8) + ", 15-entry mCE " + num(r.mce, 10) + " vs " +
                  num(expected, 10)};
}

// --- 8 ---------------------------------------------------------------------

struct SeedResult {
  double agreement = 0.0;
  double corrupted_error = 0.0;
  double clean_accuracy = 0.0;
};

SeedResult train_and_measure(const PlacementConfig& placement, std::uint64_t seed,
                             const Dataset& train_set, const Dataset& test_set) {
  ArchSpec arch;
  arch.classes = test_set.classes;
  TrainConfig tc;
  tc.lr = 0.05;
  tc.momentum = 0.9;
  tc.lr_decay = 0.7;
  tc.epochs = 8;
  tc.batch = 32;
  tc.seed = seed;
  LayerGraph net = build_network(arch, placement, seed);
  train(net, train_set, tc);
  SeedResult r;
  r.clean_accuracy = accuracy(net, test_set.images, test_set.labels);
  r.agreement = shift_consistency(net, test_set.images, 2, PaddingMode::kCircular).agreement_rate;
  const std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
  const ErrorTable table = evaluate_corruptions(net, test_set, all_corruptions(), seed, threads);
  double sum = 0.0;
  std::size_t cells = 0;
  for (const auto& [name, row] : table.entries) {
    for (double e : row) {
      sum += e;
      ++cells;
    }
  }
  r.corrupted_error = sum / static_cast<double>(cells);
  return r;
}

Outcome direction_of_effect() {
  const std::size_t classes = 16;
  const Dataset train_set = make_synthetic(Generator::kStripes, 1024, classes, 32, 1);
  const Dataset test_set = make_synthetic(Generator::kStripes, 256, classes, 32, 2);
  const PlacementConfig base = PlacementConfig::baseline();
  const PlacementConfig best = PlacementConfig::best_model(3);
  double agree_base = 0.0, agree_best = 0.0, err_base = 0.0, err_best = 0.0;
  const int seeds = 5;
  for (int s = 0; s < seeds; ++s) {
    const SeedResult rb = train_and_measure(base, static_cast<std::uint64_t>(s), train_set, test_set);
    const SeedResult ra = train_and_measure(best, static_cast<std::uint64_t>(s), train_set, test_set);
    std::printf("     seed %d: baseline agreement %.4f corrupted error %.4f clean acc %.4f | "
                "anti-aliased agreement %.4f corrupted error %.4f clean acc %.4f\n",
                s, rb.agreement, rb.corrupted_error, rb.clean_accuracy, ra.agreement,
                ra.corrupted_error, ra.clean_accuracy);
    std::fflush(stdout);
    agree_base += rb.agreement / seeds;
    agree_best += ra.agreement / seeds;
    err_base += rb.corrupted_error / seeds;
    err_best += ra.corrupted_error / seeds;
  }
  const bool a = agree_best - agree_base >= 0.05;
  const bool b = err_best <= err_base;
  return {a && b, std::string("(a) agreement ") + num(agree_base, 4) + " -> " + num(agree_best, 4) +
                      (a ? " ok" : " NOT met") + "; (b) corrupted error " + num(err_base, 4) +
                      " -> " + num(err_best, 4) + (b ? " ok" : " NOT met")};
}

// --- 9 ---------------------------------------------------------------------

Outcome receptive_fields() {
  const BlurSpec k3{3, PaddingMode::kReflect};
  auto none = make_probe_fragment(Variant::kNone, 3, 2, k3);
  auto before = make_probe_fragment(Variant::kBlurBefore, 3, 2, k3);
  auto erf = make_probe_fragment(Variant::kErf, 3, 2, k3);
  const std::size_t a = receptive_field_probe(*none).side();
  const std::size_t b = receptive_field_probe(*before).side();
  const std::size_t c = receptive_field_probe(*erf).side();
  return {a < b && b < c && a == 3 && b == 5,
          "sides none " + std::to_string(a) + ", blur_before " + std::to_string(b) + ", erf " +
              std::to_string(c)};
}

// --- 10 --------------------------------------------------------------------

Outcome ncc_and_episodes() {
  std::mt19937_64 rng(10);
  std::normal_distribution<double> noise(0.0, 1.0);
  const std::size_t classes = 4, dim = 6, shots = 10, queries = 1000;
  Tensor support({classes * shots, dim, 1, 1});
  Tensor query({queries, dim, 1, 1});
  std::vector<int> support_labels, query_labels;
  // Centres on orthogonal axes, 10 sigma apart.
  auto fill = [&](Tensor& t, std::size_t row, std::size_t c) {
    for (std::size_t d = 0; d < dim; ++d) {
      t.at(row, d, 0, 0) = (d == c ? 10.0 / std::sqrt(2.0) : 0.0) + noise(rng);
    }
  };
  for (std::size_t i = 0; i < classes * shots; ++i) {
    fill(support, i, i % classes);
    support_labels.push_back(static_cast<int>(i % classes));
  }
  for (std::size_t i = 0; i < queries; ++i) {
    fill(query, i, i % classes);
    query_labels.push_back(static_cast<int>(i % classes));
  }
  const auto pred = ncc_classify(support, support_labels, query);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < queries; ++i) correct += pred[i] == query_labels[i];

  std::vector<int> labels;
  for (int i = 0; i < 120; ++i) labels.push_back(i % 12);
  int overlaps = 0, nondeterministic = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const Episode e = sample_episode(labels, 5, 3, 4, seed);
    const std::set<std::size_t> s(e.support_indices.begin(), e.support_indices.end());
    for (std::size_t q : e.query_indices) overlaps += s.count(q) ? 1 : 0;
    if (!(sample_episode(labels, 5, 3, 4, seed) == e)) ++nondeterministic;
  }
  return {correct == queries && overlaps == 0 && nondeterministic == 0,
          "cluster accuracy " + std::to_string(correct) + "/" + std::to_string(queries) + ", " +
              std::to_string(overlaps) + " support/query overlaps and " +
              std::to_string(nondeterministic) + " non-repeatable episodes over 1000 seeds"};
}

// --- 11 --------------------------------------------------------------------

std::string read_bytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome io_closure() {
  const auto dir = std::filesystem::temp_directory_path() / "aanet_acceptance";
  std::filesystem::create_directories(dir);
  const std::vector<unsigned char> images = {0, 0, 8, 3, 0, 0, 0, 2, 0, 0, 0, 2, 0, 0, 0, 2,
                                             0, 51, 102, 255, 17, 34, 200, 1};
  const std::vector<unsigned char> labels = {0, 0, 8, 1, 0, 0, 0, 2, 3, 1};
  std::ofstream(dir / "images", std::ios::binary)
      .write(reinterpret_cast<const char*>(images.data()), static_cast<std::streamsize>(images.size()));
  std::ofstream(dir / "labels", std::ios::binary)
      .write(reinterpret_cast<const char*>(labels.data()), static_cast<std::streamsize>(labels.size()));
  const Dataset d = load_idx(dir / "images", dir / "labels");
  bool idx_ok = d.images.at(0, 0, 0, 1) == 51 / 255.0 && d.images.at(1, 0, 1, 0) == 200 / 255.0 &&
                d.labels == std::vector<int>{3, 1};
  write_idx(dir / "images2", dir / "labels2", d);
  idx_ok = idx_ok && read_bytes(dir / "images2") == read_bytes(dir / "images") &&
           read_bytes(dir / "labels2") == read_bytes(dir / "labels");

  LayerGraph net = build_network(ArchSpec{}, PlacementConfig::best_model(3), 11);
  net.loss_and_backward(random_tensor({4, 1, 32, 32}, 12, 0.0, 1.0), std::vector<int>{1, 2, 3, 4});
  net.sgd_step(0.05, 0.9);
  save_checkpoint(dir / "a.bin", net);
  LayerGraph other = build_network(ArchSpec{}, PlacementConfig::best_model(3), 12);
  load_checkpoint(dir / "a.bin", other);
  save_checkpoint(dir / "b.bin", other);
  const bool ckpt_ok =
      network_state(net) == network_state(other) && read_bytes(dir / "a.bin") == read_bytes(dir / "b.bin");

  std::mt19937_64 rng(11);
  int config_failures = 0;
  for (int i = 0; i < 100; ++i) {
    const ExperimentConfig c = testing::random_config(rng);
    if (!(parse_config(serialize_config(c)) == c)) ++config_failures;
  }
  std::filesystem::remove_all(dir);
  return {idx_ok && ckpt_ok && config_failures == 0,
          std::string("IDX ") + (idx_ok ? "exact" : "MISMATCH") + ", checkpoint " +
              (ckpt_ok ? "bitwise" : "MISMATCH") + ", " + std::to_string(100 - config_failures) +
              "/100 configs round-trip"};
}

}  // namespace
}  // namespace aanet

int main(int argc, char** argv) {
  bool skip_training = false;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--skip-training") skip_training = true;
  }
  aanet::Runner r;
  r.run(1, "parameter count is placement-invariant", 1, aanet::parameter_count_invariance);
  r.run(2, "gradients match central differences", 30, aanet::gradient_suite);
  r.run(3, "folding spectrum equals transform of subsampled signal", 10, aanet::folding_oracle);
  r.run(4, "blur nulls the Nyquist pattern and never adds aliased energy", 10, aanet::nyquist_null);
  r.run(5, "strided conv decomposition and circular commutativity", 10,
        aanet::decomposition_and_commutativity);
  r.run(6, "pointwise strided skip cannot remove aliasing", 5, aanet::skip_incapacity);
  r.run(7, "CE and mCE fixtures", 1, aanet::corruption_metrics);
  if (skip_training) {
    std::printf("SKIP  8 anti-aliased model: more shift-consistent, no less robust\n");
  } else {
    r.run(8, "anti-aliased model: more shift-consistent, no less robust", 900,
          aanet::direction_of_effect);
  }
  r.run(9, "receptive field ordering none < blur_before < erf", 5, aanet::receptive_fields);
  r.run(10, "nearest-centroid accuracy and episode sampling", 30, aanet::ncc_and_episodes);
  r.run(11, "IDX, checkpoint and config round trips", 10, aanet::io_closure);
  std::printf("%d criteria failed\n", r.failures());
  return r.failures() == 0 ? 0 : 1;
}
