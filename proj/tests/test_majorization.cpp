// Copyright 2026 The SSR Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include <gtest/gtest.h>

#include "ssr/majorization.hpp"
#include "ssr/states.hpp"
#include "test_util.hpp"

namespace ssr {
namespace {

using testing::expect_error;

// Sorted partial sums, padded with zeros.
bool brute_majorized(std::vector<double> x, std::vector<double> y) {
  const std::size_t d = std::max(x.size(), y.size());
  x.resize(d, 0.0);
  y.resize(d, 0.0);
  std::sort(x.rbegin(), x.rend());
  std::sort(y.rbegin(), y.rend());
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    sx += x[i];
    sy += y[i];
    if (sx > sy + 1e-8) return false;
  }
  return true;
}

std::vector<double> random_probabilities(std::mt19937_64& rng, int d) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(static_cast<std::size_t>(d));
  double s = 0.0;
  for (double& x : p) s += (x = e(rng));
  for (double& x : p) x /= s;
  return p;
}

TEST(Majorization, Basics) {
  const std::vector<double> flat{0.5, 0.5};
  const std::vector<double> sharp{1.0};
  EXPECT_TRUE(is_majorized(flat, sharp));
  EXPECT_FALSE(is_majorized(sharp, flat));
  expect_error(ErrorCode::kTotalMismatch, [] {
    const std::vector<double> a{0.5};
    const std::vector<double> b{1.0};
    is_majorized(a, b);
  });
}

TEST(Majorization, AgreesWithBruteForce) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> dim(1, 6);
  int agreements = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const auto x = random_probabilities(rng, dim(rng));
    const auto y = random_probabilities(rng, dim(rng));
    EXPECT_EQ(is_majorized(x, y), brute_majorized(x, y));
    agreements += is_majorized(x, y) ? 1 : 0;
  }
  EXPECT_GT(agreements, 0);
}

TEST(Majorization, ReflexiveAndTransitive) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 500; ++trial) {
    const auto x = random_probabilities(rng, 4);
    EXPECT_TRUE(is_majorized(x, x));
    auto y = x;
    auto z = x;
    // Tilting towards the largest entry can only move up the order.
    for (double& v : y) v = std::pow(v, 1.5);
    for (double& v : z) v = std::pow(v, 3.0);
    double sy = 0.0;
    double sz = 0.0;
    for (double v : y) sy += v;
    for (double v : z) sz += v;
    for (double& v : y) v /= sy;
    for (double& v : z) v /= sz;
    ASSERT_TRUE(is_majorized(x, y));
    ASSERT_TRUE(is_majorized(y, z));
    EXPECT_TRUE(is_majorized(x, z));
  }
}

TEST(Majorization, UniformRunsWithAstronomicalCounts) {
  const SchmidtEntry big{UniformCoefficients{200 * std::log(2.0), 1.0}};
  const SchmidtEntry small{UniformCoefficients{199 * std::log(2.0), 1.0}};
  EXPECT_TRUE(is_majorized(to_step_vector(big), to_step_vector(small)));
  EXPECT_FALSE(is_majorized(to_step_vector(small), to_step_vector(big)));
  EXPECT_NEAR(total(to_step_vector(big)), 1.0, 1e-12);
  expect_error(ErrorCode::kDomainError,
               [] { to_step_vector(SchmidtEntry{UniformCoefficients{800.0, 1.0}}); });
}

TEST(Convertibility, SectorWeightsMustAgree) {
  const SchmidtBlocks a = schmidt_block_decompose(states::fig1());
  const SchmidtBlocks b = schmidt_block_decompose(states::phi_plus());
  const ConvertibilityReport r = ssr_convertibility(a, {{1.0, b}});
  EXPECT_FALSE(r.convertible);
  EXPECT_FALSE(ssr_convertible(b, {{1.0, a}}));
  ASSERT_EQ(r.sectors.size(), 2u);
  EXPECT_NEAR(r.sectors[0].source_weight, 1.0 / 6.0, 1e-12);
  EXPECT_NEAR(r.sectors[0].target_weight, 0.5, 1e-12);
  EXPECT_TRUE(ssr_convertible(a, {{1.0, a}}));
}

TEST(Convertibility, ConstantNumberSingletIsUnrestricted) {
  // Within one sector the criterion is ordinary majorization.
  const SchmidtBlocks singlet = schmidt_block_decompose(states::constant_number_singlet());
  const SchmidtBlocks product({{1, SchmidtEntry{ExplicitCoefficients{{1.0}}}}});
  EXPECT_TRUE(ssr_convertible(singlet, {{1.0, product}}));
  EXPECT_FALSE(ssr_convertible(product, {{1.0, singlet}}));
}

TEST(Convertibility, MultipleTargets) {
  const SchmidtBlocks src({{0, SchmidtEntry{ExplicitCoefficients{{0.25, 0.25}}}},
                           {1, SchmidtEntry{ExplicitCoefficients{{0.5}}}}});
  const SchmidtBlocks t1({{0, SchmidtEntry{ExplicitCoefficients{{0.5}}}},
                          {1, SchmidtEntry{ExplicitCoefficients{{0.5}}}}});
  const SchmidtBlocks t2 = src;
  EXPECT_TRUE(ssr_convertible(src, {{0.5, t1}, {0.5, t2}}));
  expect_error(ErrorCode::kInvalidInput, [&] { ssr_convertible(src, {{0.5, t1}, {0.4, t2}}); });
}

TEST(Monotonicity, ExpectedVarianceDecreases) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> k(1, 5);
  for (int trial = 0; trial < 1000; ++trial) {
    const SectorSpace a = testing::random_space(rng, 4, 3);
    const SectorSpace b = testing::random_space(rng, 3, 2);
    const BlockedPureState psi = random_state(a, b, testing::random_total(a, b, rng), rng());
    const MonotoneCheck c = siv_monotone_check(psi, random_povm(a, k(rng), rng()));
    EXPECT_GE(c.rhs - c.lhs, -1e-9);
    EXPECT_TRUE(c.ok);
  }
}

TEST(Monotonicity, NumberMeasurementRemovesAllVariance) {
  const BlockedPureState psi = states::fig1();
  const SectorSpace& s = psi.alice();
  std::vector<BlockOperator> projectors;
  for (int n = 0; n <= s.max_number(); ++n) projectors.push_back(sector_projector(s, n));
  const MonotoneCheck c = siv_monotone_check(psi, LocalPOVM(s, projectors));
  EXPECT_NEAR(c.lhs, 0.0, 1e-15);
  EXPECT_NEAR(c.rhs, 5.0 / 36.0, 1e-12);
}

TEST(DataHiding, BellStatesIndistinguishableUnderSsr) {
  EXPECT_LE(data_hiding_distance(states::phi_plus(), states::phi_minus(), 500, 1), 1e-10);
  EXPECT_GT(unrestricted_hiding_distance(states::phi_plus(), states::phi_minus(), 100, 1), 0.4);
  // Local number statistics do separate states with different weights.
  EXPECT_GT(data_hiding_distance(states::phi_plus(), states::fig1(), 50, 1), 0.1);
}

}  // namespace
}  // namespace ssr
