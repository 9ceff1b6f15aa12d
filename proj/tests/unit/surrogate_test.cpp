#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "l2s/errors.hpp"
#include "l2s/surrogate.hpp"

using namespace l2s;

namespace {

TrainingSet make_training_set(const DiscreteSpace& space, std::size_t n, Rng& rng,
                        const std::function<double(const Structure&)>& f) {
  TrainingSet data;
  for (std::size_t i = 0; i < n; ++i) {
    Structure x = space.sample_valid(rng);
    const double y = f(x);
    data.add(std::move(x), y);
  }
  return data;
}

double linear(const Structure& x) {
  static const double w[] = {1.5, -2.0, 0.7, 3.1, -0.4, 1.1};
  double y = 0.25;
  for (std::size_t i = 0; i < x.size(); ++i) y += w[i] * x[i];
  return y;
}

}  // namespace

TEST(Forest, SingleExample) {
  TrainingSet data;
  data.add(Structure{0, 1, 1}, 5.0);
  const auto forest = RandomForest::fit(data, {2, 2, 2}, {}, 1);
  EXPECT_EQ(forest.tree_count(), 20u);
  const auto p = forest.predict(Structure{0, 1, 1});
  EXPECT_EQ(p.mean, 5.0);
  EXPECT_EQ(p.variance, 0.0);
}

TEST(Forest, ConstantTargets) {
  const DiscreteSpace space({3, 2, 4, 2});
  Rng rng(1);
  const auto data = make_training_set(space, 30, rng, [](const Structure&) { return -1.25; });
  const auto forest = RandomForest::fit(data, space.domain_sizes(), {}, 2);
  for (const auto& x : space.enumerate()) {
    const auto p = forest.predict(x);
    EXPECT_EQ(p.mean, -1.25);
    EXPECT_EQ(p.variance, 0.0);
  }
  for (std::size_t t = 0; t < forest.tree_count(); ++t) EXPECT_EQ(forest.tree(t).leaf_count(), 1u);
}

TEST(Forest, BeatsConstantPredictorOnLinearFunction) {
  const auto space = DiscreteSpace::binary(6);
  TrainingSet data;
  for (const auto& x : space.enumerate()) data.add(x, linear(x));
  ASSERT_EQ(data.size(), 64u);
  const auto forest = RandomForest::fit(data, space.domain_sizes(), {}, 3);
  double mean = 0.0;
  for (double y : data.targets) mean += y / 64.0;
  double mse_forest = 0.0, mse_const = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    mse_forest += std::pow(forest.predict(data.inputs[i]).mean - data.targets[i], 2);
    mse_const += std::pow(mean - data.targets[i], 2);
  }
  EXPECT_LE(mse_forest, mse_const);
  EXPECT_LT(mse_forest, 0.25 * mse_const);
}

TEST(Forest, PredictionIsMeanAndPopulationVarianceOfTrees) {
  const DiscreteSpace space({2, 3, 2, 2, 3});
  Rng rng(4);
  const auto data = make_training_set(space, 40, rng, [](const Structure& x) {
    return std::sin(1.0 + x[0] + 2.0 * x[1] - x[3] * x[4]);
  });
  ForestConfig cfg;
  cfg.trees = 7;
  const auto forest = RandomForest::fit(data, space.domain_sizes(), cfg, 5);
  for (const auto& x : space.enumerate()) {
    const auto preds = forest.tree_predictions(x);
    ASSERT_EQ(preds.size(), 7u);
    double m = 0.0;
    for (double v : preds) m += v / 7.0;
    double var = 0.0;
    for (double v : preds) var += (v - m) * (v - m) / 7.0;
    const auto p = forest.predict(x);
    EXPECT_NEAR(p.mean, m, 1e-12);
    EXPECT_NEAR(p.variance, var, 1e-12);
    EXPECT_GE(p.variance, 0.0);
  }
}

TEST(Forest, MeanWithinTargetRange) {
  const DiscreteSpace space({3, 3, 3, 3, 3});
  Rng rng(6);
  const auto data = make_training_set(space, 50, rng, [&](const Structure& x) {
    return 10.0 * x[0] - 3.0 * x[1] * x[2] + std::cos(static_cast<double>(x[3] + x[4]));
  });
  const auto [lo, hi] = std::minmax_element(data.targets.begin(), data.targets.end());
  const auto forest = RandomForest::fit(data, space.domain_sizes(), {}, 7);
  for (const auto& x : space.enumerate()) {
    const double m = forest.predict(x).mean;
    EXPECT_GE(m, *lo);
    EXPECT_LE(m, *hi);
  }
}

TEST(Forest, ReproducibleForSeed) {
  const auto space = DiscreteSpace::binary(10);
  Rng rng(8);
  const auto data = make_training_set(space, 40, rng, [](const Structure& x) {
    return static_cast<double>(x.count(1)) + (x[0] ^ x[9]);
  });
  const auto a = RandomForest::fit(data, space.domain_sizes(), {}, 99);
  const auto b = RandomForest::fit(data, space.domain_sizes(), {}, 99);
  const auto c = RandomForest::fit(data, space.domain_sizes(), {}, 100);
  Rng probe(9);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = space.sample_valid(probe);
    const SurrogatePrediction pa = a.predict(x), pb = b.predict(x), pc = c.predict(x);
    EXPECT_EQ(pa.mean, pb.mean);
    EXPECT_EQ(pa.variance, pb.variance);
    differs = differs || pa.mean != pc.mean || pa.variance != pc.variance;
  }
  EXPECT_TRUE(differs);
}

TEST(Forest, FeaturesPerSplitIsCeilThird) {
  EXPECT_EQ(RandomForest::features_per_split(1), 1u);
  EXPECT_EQ(RandomForest::features_per_split(3), 1u);
  EXPECT_EQ(RandomForest::features_per_split(12), 4u);
  EXPECT_EQ(RandomForest::features_per_split(13), 5u);
  EXPECT_EQ(RandomForest::features_per_split(25), 9u);
}

TEST(Forest, SplitsAreCategoryEqualityTests) {
  const DiscreteSpace space({4, 4});
  TrainingSet data;
  // Only the middle value of variable 0 is special: a threshold split could not isolate
  // it in one test, an equality split can.
  for (const auto& x : space.enumerate()) data.add(x, x[0] == 2 ? 1.0 : 0.0);
  const auto forest = RandomForest::fit(data, space.domain_sizes(), {}, 1);
  for (std::size_t t = 0; t < forest.tree_count(); ++t)
    for (const auto& n : forest.tree(t).nodes())
      if (n.feature >= 0) EXPECT_LT(n.category, 4);
  // A single tree can miss the rows it needs in its bootstrap; the ensemble cannot.
  EXPECT_GT(forest.predict(Structure{2, 0}).mean, forest.predict(Structure{1, 0}).mean);
}

TEST(Forest, DepthAndLeafLimits) {
  const auto space = DiscreteSpace::binary(8);
  Rng rng(10);
  const auto data = make_training_set(space, 60, rng, [](const Structure& x) {
    return static_cast<double>(x[0] + 2 * x[1] + 4 * x[2]) + 0.1 * x[7];
  });
  ForestConfig cfg;
  cfg.max_depth = 2;
  const auto shallow = RandomForest::fit(data, space.domain_sizes(), cfg, 11);
  for (std::size_t t = 0; t < shallow.tree_count(); ++t) EXPECT_LE(shallow.tree(t).depth(), 2u);
  cfg.max_depth = 0;
  cfg.min_samples_leaf = 10;
  const auto coarse = RandomForest::fit(data, space.domain_sizes(), cfg, 11);
  for (std::size_t t = 0; t < coarse.tree_count(); ++t) EXPECT_LE(coarse.tree(t).leaf_count(), 6u);
}

TEST(Forest, RejectsBadInput) {
  TrainingSet empty;
  EXPECT_THROW(RandomForest::fit(empty, {2, 2}, {}, 0), PreconditionError);
  TrainingSet nan;
  nan.add(Structure{0, 1}, std::nan(""));
  EXPECT_THROW(RandomForest::fit(nan, {2, 2}, {}, 0), PreconditionError);
  TrainingSet wrong;
  wrong.add(Structure{0, 1, 1}, 1.0);
  EXPECT_THROW(RandomForest::fit(wrong, {2, 2}, {}, 0), PreconditionError);
  TrainingSet ok;
  ok.add(Structure{0, 1}, 1.0);
  const auto forest = RandomForest::fit(ok, {2, 2}, {}, 0);
  EXPECT_THROW(forest.predict(Structure{0, 1, 0}), PreconditionError);
}
