#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "l2s/acquisition.hpp"
#include "l2s/errors.hpp"

using namespace l2s;

namespace {

// E[max(Y - incumbent, 0)] for Y ~ N(mean, sd^2) by composite Simpson over +-12 sd.
double ei_by_quadrature(double mean, double sd, double incumbent) {
  const int n = 200000;
  const double lo = mean - 12 * sd, hi = mean + 12 * sd;
  const double h = (hi - lo) / n;
  auto f = [&](double y) {
    const double z = (y - mean) / sd;
    return std::max(y - incumbent, 0.0) * std::exp(-0.5 * z * z) / (sd * std::sqrt(2 * std::numbers::pi));
  };
  double sum = f(lo) + f(hi);
  for (int i = 1; i < n; ++i) sum += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

}  // namespace

TEST(ExpectedImprovement, NoUncertaintyNoImprovement) {
  EXPECT_EQ(expected_improvement(2.0, 0.0, 2.0), 0.0);
  EXPECT_EQ(expected_improvement(1.0, 0.0, 2.0), 0.0);
  EXPECT_EQ(expected_improvement(3.5, 0.0, 2.0), 1.5);
}

TEST(ExpectedImprovement, UnitSigmaAtIncumbent) {
  EXPECT_NEAR(expected_improvement(0.7, 1.0, 0.7), 0.398942, 1e-6);
  EXPECT_NEAR(expected_improvement(0.7, 1.0, 0.7), 1.0 / std::sqrt(2 * std::numbers::pi), 1e-15);
}

TEST(ExpectedImprovement, ClosedFormAtZTwo) {
  // Phi(2) + 0.5 phi(2)
  EXPECT_NEAR(expected_improvement(1.0, 0.25, 0.0), 1.0042454, 1e-6);
}

TEST(ExpectedImprovement, MatchesNumericalIntegration) {
  for (double mean : {-2.0, -0.3, 0.0, 0.4, 1.0, 3.0})
    for (double sd : {0.05, 0.5, 1.0, 2.5}) {
      const double closed = expected_improvement(mean, sd * sd, 0.2);
      EXPECT_NEAR(closed, ei_by_quadrature(mean, sd, 0.2), 1e-8 * (1.0 + closed))
          << "mean=" << mean << " sd=" << sd;
    }
}

TEST(ExpectedImprovement, NonNegativeAndMonotone) {
  for (double sd = 0.0; sd <= 3.0; sd += 0.25) {
    double previous = -1.0;
    for (double mean = -5.0; mean <= 5.0; mean += 0.125) {
      const double ei = expected_improvement(mean, sd * sd, 0.0);
      EXPECT_GE(ei, 0.0);
      EXPECT_GE(ei, previous);
      previous = ei;
    }
  }
  for (double mean = -5.0; mean <= 0.0; mean += 0.25) {
    double previous = -1.0;
    for (double sd = 0.0; sd <= 3.0; sd += 0.125) {
      const double ei = expected_improvement(mean, sd * sd, 0.0);
      EXPECT_GE(ei, previous);
      previous = ei;
    }
  }
}

TEST(ExpectedImprovement, FarTailsStayFinite) {
  EXPECT_EQ(expected_improvement(-1e6, 1.0, 0.0), 0.0);
  EXPECT_NEAR(expected_improvement(1e6, 1.0, 0.0), 1e6, 1e-6);
}

TEST(Ucb, BetaForTwentyFourBinaryVariables) {
  EXPECT_NEAR(ucb_beta(24 * std::log(2.0), 1, 0.1), 38.87, 0.01);
  EXPECT_NEAR(ucb_beta(24 * std::log(2.0), 1, 0.1),
              2 * (24 * std::log(2.0) + std::log(std::numbers::pi * std::numbers::pi / 0.6)),
              1e-12);
}

TEST(Ucb, BetaZeroWhenLogArgumentIsOne) {
  const double log_x = 5 * std::log(2.0);
  const double delta = std::exp(log_x) * std::numbers::pi * std::numbers::pi / 6.0;
  EXPECT_NEAR(ucb_beta(log_x, 1, delta), 0.0, 1e-12);
  EXPECT_EQ(upper_confidence_bound(1.5, 4.0, 0.0), 1.5);
}

TEST(Ucb, ZeroVarianceIsMean) {
  for (double beta : {0.0, 1.0, 38.87, 1e6}) EXPECT_EQ(upper_confidence_bound(-2.5, 0.0, beta), -2.5);
}

TEST(Ucb, MonotoneInIterationAndBeta) {
  double previous = -HUGE_VAL;
  for (std::size_t i = 1; i < 500; ++i) {
    const double b = ucb_beta(10.0, i, 0.1);
    EXPECT_GE(b, previous);
    previous = b;
  }
  EXPECT_LT(upper_confidence_bound(1.0, 0.5, 2.0), upper_confidence_bound(1.0, 0.5, 3.0));
}

TEST(Acquisition, ShiftInvariance) {
  for (double c : {-7.5, 0.0, 3.25, 100.0})
    for (double mean : {-1.0, 0.0, 0.9})
      for (double var : {0.0, 0.3, 2.0}) {
        EXPECT_NEAR(expected_improvement(mean + c, var, 0.5 + c), expected_improvement(mean, var, 0.5),
                    1e-12);
        EXPECT_NEAR(upper_confidence_bound(mean + c, var, 9.0), upper_confidence_bound(mean, var, 9.0) + c,
                    1e-12);
      }
}

TEST(Acquisition, FunctionObjectUsesForest) {
  TrainingSet data;
  data.add(Structure{0, 1}, 2.0);
  const auto forest = RandomForest::fit(data, {2, 2}, {}, 0);
  AcquisitionConfig cfg;
  cfg.kind = AcquisitionKind::ucb;
  const AcquisitionFunction ucb(forest, 2.0, 3, cfg, 2 * std::log(2.0));
  EXPECT_EQ(ucb(Structure{1, 0}), 2.0);  // single leaf everywhere: sigma = 0
  EXPECT_NEAR(ucb.beta(), ucb_beta(2 * std::log(2.0), 3, 0.1), 1e-15);
  cfg.kind = AcquisitionKind::ei;
  const AcquisitionFunction ei(forest, 2.0, 1, cfg, 2 * std::log(2.0));
  EXPECT_EQ(ei(Structure{1, 1}), 0.0);
  EXPECT_THROW(AcquisitionFunction(forest, 2.0, 0, cfg, 1.0), PreconditionError);
}

TEST(Acquisition, ParseKind) {
  EXPECT_EQ(parse_acquisition_kind("ei"), AcquisitionKind::ei);
  EXPECT_EQ(parse_acquisition_kind("ucb"), AcquisitionKind::ucb);
  EXPECT_THROW(parse_acquisition_kind("pi"), ConfigError);
  EXPECT_EQ(to_string(AcquisitionKind::ucb), "ucb");
}
