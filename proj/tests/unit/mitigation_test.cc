// Copyright 2026 The ZNE Lab Authors
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


#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "znelab/errors.h"
#include "znelab/mitigation.h"

namespace znelab {
namespace {

std::vector<ZnePoint> sample(const std::vector<double> &nodes, double (*f)(double)) {
  std::vector<ZnePoint> pts;
  for (double c : nodes) pts.push_back({c, f(c), 0.0});
  return pts;
}

TEST(NodeSetTest, Validation) {
  EXPECT_NO_THROW(NodeSet({1, 3, 5}, AmplificationMethod::kGlobalFold));
  EXPECT_NO_THROW(NodeSet({1, 1.5, 2}, AmplificationMethod::kPulseStretch));
  EXPECT_THROW(NodeSet({1, 2}, AmplificationMethod::kLocalFold), ValidationError);
  EXPECT_THROW(NodeSet({3, 5}, AmplificationMethod::kGlobalFold), ValidationError);
  EXPECT_THROW(NodeSet({1, 3, 3}, AmplificationMethod::kGlobalFold), ValidationError);
  EXPECT_THROW(NodeSet({1, 2, 1.5}, AmplificationMethod::kPulseStretch), ValidationError);
  const NodeSet f = NodeSet::folds(3, AmplificationMethod::kGlobalFold);
  EXPECT_EQ(f.factors(), (std::vector<double>{1, 3, 5}));
  EXPECT_EQ(f.fold_count(2), 2);
}

TEST(Richardson, KnownCoefficients) {
  const std::vector<double> one{1}, two{1, 3}, three{1, 3, 5};
  const auto a = richardson_coefficients(one);
  EXPECT_EQ(a.gamma, std::vector<double>{1.0});
  EXPECT_EQ(a.overhead, 1.0);
  const auto b = richardson_coefficients(two);
  EXPECT_NEAR(b.gamma[0], 1.5, 1e-12);
  EXPECT_NEAR(b.gamma[1], -0.5, 1e-12);
  EXPECT_NEAR(b.overhead, 2.0, 1e-12);
  const auto c = richardson_coefficients(three);
  EXPECT_NEAR(c.gamma[0], 1.875, 1e-12);
  EXPECT_NEAR(c.gamma[1], -1.25, 1e-12);
  EXPECT_NEAR(c.gamma[2], 0.375, 1e-12);
  EXPECT_NEAR(c.overhead, 3.5, 1e-12);
  const std::vector<double> dup{1, 2, 2};
  EXPECT_THROW(richardson_coefficients(dup), ValidationError);
}

TEST(Richardson, ConstraintFamiliesOnRandomNodes) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> gap(0.3, 2.0);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = trial % 5;  // up to 5 nodes
    std::vector<double> nodes{1.0};
    for (int i = 0; i < n; ++i) nodes.push_back(nodes.back() + gap(rng));
    const auto r = richardson_coefficients(nodes);
    double sum = 0.0;
    for (double g : r.gamma) sum += g;
    EXPECT_NEAR(sum, 1.0, 1e-12);
    for (int k = 1; k <= n; ++k) {
      double m = 0.0;
      for (std::size_t i = 0; i < nodes.size(); ++i) m += r.gamma[i] * std::pow(nodes[i], k);
      EXPECT_NEAR(m, 0.0, 1e-9);
    }
  }
}

TEST(Richardson, Examples) {
  auto flat = sample({1, 2.5, 4}, [](double) { return 0.7; });
  EXPECT_NEAR(richardson_extrapolate(flat).value, 0.7, 1e-14);
  auto line = sample({1, 3}, [](double c) { return 1 - 0.1 * c; });
  EXPECT_NEAR(richardson_extrapolate(line).value, 1.0, 1e-15);
  auto quad = sample({1, 3, 5}, [](double c) { return 1 - 0.1 * c - 0.02 * c * c; });
  EXPECT_NEAR(richardson_extrapolate(quad).value, 1.0, 1e-12);
}

TEST(Richardson, PolynomialExactness) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> coef(-1.0, 1.0), gap(0.5, 2.5);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = trial % 4;
    std::vector<double> c(n + 1);
    for (double &v : c) v = coef(rng);
    std::vector<ZnePoint> pts;
    double x = 1.0;
    for (int i = 0; i <= n; ++i, x += gap(rng)) {
      double v = 0.0;
      for (int k = n; k >= 0; --k) v = v * x + c[k];
      pts.push_back({x, v, 0.0});
    }
    EXPECT_NEAR(richardson_extrapolate(pts).value, c[0], 1e-10);
  }
}

TEST(Richardson, EstimateIsWeightedSumAndVariance) {
  const std::vector<ZnePoint> pts{{1, 0.91, 0.01}, {3, 0.8, 0.02}, {5, 0.7, 0.03}};
  const ZneEstimate e = richardson_extrapolate(pts);
  const std::vector<double> g{1.875, -1.25, 0.375};
  double v = 0.0, var = 0.0, max_term = 0.0;
  for (int i = 0; i < 3; ++i) {
    v += g[i] * pts[i].value;
    var += g[i] * g[i] * pts[i].se * pts[i].se;
    max_term = std::max(max_term, g[i] * g[i] * pts[i].se * pts[i].se);
  }
  EXPECT_NEAR(e.value, v, 1e-14);
  EXPECT_NEAR(e.variance, var, 1e-16);
  EXPECT_GE(e.variance, max_term);
}

TEST(Richardson, VarianceGrowsWithOverhead) {
  const std::vector<ZnePoint> two{{1, 0.9, 0.01}, {3, 0.8, 0.01}};
  const std::vector<ZnePoint> three{{1, 0.9, 0.01}, {3, 0.8, 0.01}, {5, 0.7, 0.01}};
  EXPECT_GT(richardson_extrapolate(three).variance, richardson_extrapolate(two).variance);
}

TEST(Linear, TwoPointsEqualRichardson) {
  const std::vector<ZnePoint> pts{{1, 0.9, 0.01}, {3, 0.7, 0.02}};
  const ZneEstimate l = linear_extrapolate(pts), r = richardson_extrapolate(pts);
  EXPECT_NEAR(l.value, 1.0, 1e-12);
  EXPECT_NEAR(l.value, r.value, 1e-12);
  EXPECT_NEAR(l.variance, r.variance, 1e-12);
}

TEST(Linear, ExactLine) {
  auto pts = sample({1, 1.5, 2, 2.5, 3}, [](double c) { return 0.95 - 0.05 * c; });
  EXPECT_NEAR(linear_extrapolate(pts).value, 0.95, 1e-12);
  const std::vector<ZnePoint> same{{2, 0.1, 0}, {2, 0.2, 0}};
  EXPECT_THROW(linear_extrapolate(same), ValidationError);
  const std::vector<ZnePoint> single{{1, 0.1, 0}};
  EXPECT_THROW(linear_extrapolate(single), ValidationError);
}

TEST(Linear, NoisyPointsWithinFourStandardErrors) {
  std::mt19937_64 rng(3);
  std::bernoulli_distribution sign(0.5);
  const double delta = 0.01;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<ZnePoint> pts;
    for (double c : {1.0, 1.5, 2.0, 2.5, 3.0}) {
      pts.push_back({c, 0.95 - 0.05 * c + (sign(rng) ? delta : -delta), delta});
    }
    const ZneEstimate e = linear_extrapolate(pts);
    EXPECT_LE(std::abs(e.value - 0.95), 4 * e.standard_error());
  }
}

TEST(Shots, LargestRemainder) {
  const std::vector<double> r31{3, 1}, r1{1}, r11{1, 1}, r111{1, 1, 1};
  EXPECT_EQ(allocate_shots(4000, r31), (std::vector<std::int64_t>{3000, 1000}));
  EXPECT_EQ(allocate_shots(1000, r1), (std::vector<std::int64_t>{1000}));
  EXPECT_EQ(allocate_shots(1001, r11), (std::vector<std::int64_t>{501, 500}));
  EXPECT_EQ(allocate_shots(1000, r111), (std::vector<std::int64_t>{334, 333, 333}));
  EXPECT_THROW(allocate_shots(1, r11), ValidationError);
  const std::vector<double> bad{1, 0};
  EXPECT_THROW(allocate_shots(10, bad), ValidationError);
}

TEST(Confusion, ColumnsSumToOneAndInverse) {
  const ConfusionMatrix f(0.97, 0.93);
  const auto m = f.matrix();
  EXPECT_EQ(m[0] + m[2], 1.0);
  EXPECT_EQ(m[1] + m[3], 1.0);
  const auto inv = f.inverse();
  // inv * m = I
  EXPECT_NEAR(inv[0] * m[0] + inv[1] * m[2], 1.0, 1e-14);
  EXPECT_NEAR(inv[0] * m[1] + inv[1] * m[3], 0.0, 1e-14);
  EXPECT_NEAR(inv[2] * m[0] + inv[3] * m[2], 0.0, 1e-14);
  EXPECT_NEAR(inv[2] * m[1] + inv[3] * m[3], 1.0, 1e-14);
  EXPECT_THROW(ConfusionMatrix(0.6, 0.4).inverse(), NonInvertibleError);
  EXPECT_THROW(ConfusionMatrix(0.6, 0.4 + 5e-7).inverse(), NonInvertibleError);
  EXPECT_THROW(ConfusionMatrix(1.1, 0.9), ValidationError);
}

TEST(RemCorrect, Examples) {
  const auto same = rem_correct({0.3, 0.7}, ConfusionMatrix(1.0, 1.0));
  EXPECT_NEAR(same.p[0], 0.3, 1e-15);
  EXPECT_FALSE(same.clipped);
  const ConfusionMatrix f(0.9, 0.85);
  const auto back = rem_correct(f.apply({0.3, 0.7}), f);
  EXPECT_NEAR(back.p[0], 0.3, 1e-10);
  EXPECT_NEAR(back.p[1], 0.7, 1e-10);
  const auto clip = rem_correct({0.97, 0.03}, ConfusionMatrix(0.95, 0.9));
  EXPECT_LT(clip.raw[1], 0.0);
  EXPECT_TRUE(clip.clipped);
  EXPECT_EQ(clip.p[0], 1.0);
  EXPECT_EQ(clip.p[1], 0.0);
  EXPECT_THROW(rem_correct({0.5, 0.6}, f), ValidationError);
  EXPECT_THROW(rem_correct({0.5, 0.5}, ConfusionMatrix(0.5, 0.5)), NonInvertibleError);
}

TEST(RemCorrect, RoundTripOnSimplexInterior) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> f(0.5, 1.0), p(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double fd = f(rng), fu = f(rng);
    if (fd + fu <= 1.1) continue;
    const double p1 = p(rng);
    const ConfusionMatrix m(fd, fu);
    const auto c = rem_correct(m.apply({1 - p1, p1}), m);
    EXPECT_NEAR(c.p[1], p1, 1e-10);
    EXPECT_FALSE(c.clipped);
  }
}

TEST(RemCalibrate, Examples) {
  const auto ideal = rem_calibrate(0.0, 0.98, 1.0, 0.98);
  EXPECT_NEAR(ideal.matrix.f_down(), 1.0, 1e-15);
  EXPECT_NEAR(ideal.matrix.f_up(), 1.0, 1e-15);
  const auto c = rem_calibrate(0.05, 0.93 * 0.995, 1.0, 0.995);
  EXPECT_NEAR(c.matrix.f_down(), 0.95, 1e-12);
  EXPECT_NEAR(c.matrix.f_up(), 0.93, 1e-12);
  EXPECT_FALSE(c.clipped);
  EXPECT_THROW(rem_calibrate(0.05, 0.9, 0.5, 1.0), ValidationError);
  EXPECT_THROW(rem_calibrate(0.05, 0.9, 0.5, 1.0, RemEquations::kFlipConsistent), ValidationError);
  EXPECT_THROW(rem_calibrate(1.2, 0.9, 1.0, 1.0), ValidationError);
  EXPECT_THROW(rem_calibrate(0.1, 0.9, 1.0, 0.0), ValidationError);
}

TEST(RemCalibrate, EachFormSolvesItsOwnSystem) {
  const double fd = 0.97, fu = 0.93, g = 0.99, ppi = 0.995;
  const double pa = (1 - g) * fu + g * (1 - fd);
  // Verbatim second equation.
  const double pb_verbatim = ppi * (g * fu + (1 - g) * fd);
  const auto v = rem_calibrate(pa, pb_verbatim, g, ppi, RemEquations::kVerbatim);
  EXPECT_NEAR(v.matrix.f_down(), fd, 1e-12);
  EXPECT_NEAR(v.matrix.f_up(), fu, 1e-12);
  // Flipped preparation followed by X.
  const double pb_flip = ppi * (g * fu + (1 - g) * (1 - fd));
  const auto f = rem_calibrate(pa, pb_flip, g, ppi, RemEquations::kFlipConsistent);
  EXPECT_NEAR(f.matrix.f_down(), fd, 1e-12);
  EXPECT_NEAR(f.matrix.f_up(), fu, 1e-12);
  // At gamma = 1 the two forms coincide.
  const auto a = rem_calibrate(0.03, 0.9, 1.0, 0.99, RemEquations::kVerbatim);
  const auto b = rem_calibrate(0.03, 0.9, 1.0, 0.99, RemEquations::kFlipConsistent);
  EXPECT_NEAR(a.matrix.f_down(), b.matrix.f_down(), 1e-15);
  EXPECT_NEAR(a.matrix.f_up(), b.matrix.f_up(), 1e-15);
}

TEST(RemCalibrate, ClipsWithFlag) {
  const auto c = rem_calibrate(0.0, 1.0, 1.0, 0.9);
  EXPECT_TRUE(c.clipped);
  EXPECT_EQ(c.matrix.f_up(), 1.0);
  EXPECT_GT(c.raw_f_up, 1.0);
}

TEST(Helpers, PPiAndThermalPopulation) {
  EXPECT_NEAR(p_pi_from_rabi_decay(0.0, 1e-6), 1.0, 1e-15);
  EXPECT_NEAR(p_pi_from_rabi_decay(1e-6, 1e-6), 0.5 * (1 + std::exp(-1.0)), 1e-15);
  EXPECT_NEAR(thermal_excited_population(0.0), 0.5, 1e-15);
  EXPECT_NEAR(thermal_excited_population(9.0), 1 / (1 + std::exp(9.0)), 1e-15);
}

TEST(Names, RoundTrip) {
  for (auto m : {AmplificationMethod::kGlobalFold, AmplificationMethod::kLocalFold,
                 AmplificationMethod::kPulseStretch}) {
    EXPECT_EQ(method_from_name(method_name(m)), m);
  }
  for (auto k : {ExtrapolationKind::kRichardson, ExtrapolationKind::kLinear}) {
    EXPECT_EQ(extrapolation_from_name(extrapolation_name(k)), k);
  }
  EXPECT_THROW(method_from_name("zigzag"), ValidationError);
}

}  // namespace
}  // namespace znelab
