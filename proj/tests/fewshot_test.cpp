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

#include "aanet/fewshot.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "aanet/error.hpp"

namespace aanet {
namespace {

std::vector<int> balanced_labels(int classes, int per_class) {
  std::vector<int> labels;
  for (int i = 0; i < classes * per_class; ++i) labels.push_back(i % classes);
  return labels;
}

Tensor rows(const std::vector<std::vector<double>>& values) {
  Tensor t({values.size(), values[0].size(), 1, 1});
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = 0; j < values[i].size(); ++j) t.at(i, j, 0, 0) = values[i][j];
  return t;
}

TEST(EpisodeTest, StructureAndDisjointness) {
  const std::vector<int> labels = balanced_labels(10, 12);
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const Episode e = sample_episode(labels, 5, 2, 3, seed);
    ASSERT_EQ(e.classes.size(), 5u);
    ASSERT_EQ(e.support_indices.size(), 10u);
    ASSERT_EQ(e.query_indices.size(), 15u);
    std::set<std::size_t> support(e.support_indices.begin(), e.support_indices.end());
    ASSERT_EQ(support.size(), e.support_indices.size());
    for (std::size_t q : e.query_indices) ASSERT_EQ(support.count(q), 0u) << "seed " << seed;
    std::set<int> distinct(e.classes.begin(), e.classes.end());
    ASSERT_EQ(distinct.size(), 5u);
    for (std::size_t i = 0; i < e.support_indices.size(); ++i) {
      ASSERT_EQ(labels[e.support_indices[i]], e.classes[e.support_labels[i]]);
    }
    for (std::size_t i = 0; i < e.query_indices.size(); ++i) {
      ASSERT_EQ(labels[e.query_indices[i]], e.classes[e.query_labels[i]]);
      ASSERT_LT(e.query_labels[i], 5);
    }
  }
}

TEST(EpisodeTest, SeedDeterminism) {
  const std::vector<int> labels = balanced_labels(8, 10);
  EXPECT_EQ(sample_episode(labels, 4, 3, 2, 17), sample_episode(labels, 4, 3, 2, 17));
}

TEST(EpisodeTest, SeedsChangeWithinClassOrder) {
  // One class only, so any difference comes from the within-class shuffle.
  const std::vector<int> labels(20, 0);
  int differ = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    const Episode a = sample_episode(labels, 1, 5, 5, 2 * t);
    const Episode b = sample_episode(labels, 1, 5, 5, 2 * t + 1);
    if (a.support_indices != b.support_indices || a.query_indices != b.query_indices) ++differ;
  }
  EXPECT_GE(differ, 99);
}

TEST(EpisodeTest, Preconditions) {
  const std::vector<int> labels = balanced_labels(3, 4);
  EXPECT_THROW(sample_episode(labels, 0, 1, 1, 0), ArgumentError);
  EXPECT_THROW(sample_episode(labels, 1, 4, 0, 0), ArgumentError);
  EXPECT_THROW(sample_episode(labels, 4, 1, 1, 0), DataError);
  EXPECT_THROW(sample_episode(labels, 1, 4, 1, 0), DataError);
  EXPECT_NO_THROW(sample_episode(labels, 3, 2, 2, 0));
}

TEST(NccTest, QueryOnACentroid) {
  const Tensor support = rows({{0, 0}, {10, 0}});
  const std::vector<int> labels{0, 1};
  EXPECT_EQ(ncc_classify(support, labels, rows({{10, 0}, {0, 0}})), (std::vector<int>{1, 0}));
}

TEST(NccTest, TiesGoToTheLowerClass) {
  const Tensor support = rows({{10, 0}, {0, 0}});
  const std::vector<int> labels{1, 0};
  EXPECT_EQ(ncc_classify(support, labels, rows({{5, 3}})), (std::vector<int>{0}));
}

TEST(NccTest, SeparatedClustersAreClassifiedPerfectly) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> noise(0.0, 1.0);
  const int classes = 5, dim = 8;
  std::vector<std::vector<double>> centres(classes, std::vector<double>(dim, 0.0));
  // Orthogonal centres 10 / sqrt(2) along each axis: pairwise distance 10 sigma.
  for (int c = 0; c < classes; ++c) centres[c][c] = 10.0 / std::sqrt(2.0);
  auto sample = [&](int c) {
    std::vector<double> v = centres[c];
    for (double& x : v) x += noise(rng);
    return v;
  };
  std::vector<std::vector<double>> support, query;
  std::vector<int> support_labels, query_labels;
  for (int c = 0; c < classes; ++c)
    for (int k = 0; k < 20; ++k) {
      support.push_back(sample(c));
      support_labels.push_back(c);
    }
  for (int q = 0; q < 1000; ++q) {
    query.push_back(sample(q % classes));
    query_labels.push_back(q % classes);
  }
  EXPECT_EQ(ncc_classify(rows(support), support_labels, rows(query)), query_labels);
}

TEST(NccTest, SupportOrderDoesNotMatter) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<std::vector<double>> support, query;
  std::vector<int> labels;
  for (int i = 0; i < 12; ++i) {
    support.push_back({u(rng), u(rng), u(rng)});
    labels.push_back(i % 3);
  }
  for (int i = 0; i < 50; ++i) query.push_back({u(rng), u(rng), u(rng)});
  const auto expected = ncc_classify(rows(support), labels, rows(query));
  std::vector<std::size_t> perm(12);
  std::iota(perm.begin(), perm.end(), 0);
  for (int t = 0; t < 10; ++t) {
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::vector<double>> s2;
    std::vector<int> l2;
    for (std::size_t p : perm) {
      s2.push_back(support[p]);
      l2.push_back(labels[p]);
    }
    EXPECT_EQ(ncc_classify(rows(s2), l2, rows(query)), expected);
  }
}

TEST(NccTest, EmptyClassIsRejected) {
  const Tensor support = rows({{0, 0}, {1, 1}});
  EXPECT_THROW(ncc_classify(support, std::vector<int>{0, 2}, rows({{0, 0}})), ArgumentError);
  EXPECT_THROW(ncc_classify(support, std::vector<int>{0}, rows({{0, 0}})), DimensionError);
}

}  // namespace
}  // namespace aanet
