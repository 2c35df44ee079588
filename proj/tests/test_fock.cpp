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

#include <random>
#include <set>

#include <gtest/gtest.h>
#include <unsupported/Eigen/KroneckerProduct>

#include "ssr/fock.hpp"
#include "test_util.hpp"

namespace ssr {
namespace {

using testing::expect_error;

TEST(SectorSpace, QubitModes) {
  const SectorSpace s = qubit_modes_space(3);
  EXPECT_EQ(s.dims(), (std::vector<int>{1, 3, 3, 1}));
  EXPECT_EQ(s.total_dim(), 8);
  EXPECT_EQ(s.offset(2), 4);
  EXPECT_EQ(s.dim(7), 0);
  EXPECT_EQ(s.dim(-1), 0);
  EXPECT_EQ(occupation_strings(3, 1), (std::vector<std::uint64_t>{1, 2, 4}));
  EXPECT_EQ(occupation_strings(4, 2).size(), 6u);
}

TEST(SectorSpace, RejectsBadDims) {
  expect_error(ErrorCode::kInvalidInput, [] { SectorSpace({}); });
  expect_error(ErrorCode::kInvalidInput, [] { SectorSpace({1, -1}); });
  expect_error(ErrorCode::kInvalidInput, [] { SectorSpace({0, 0}); });
  expect_error(ErrorCode::kInvalidInput, [] { qubit_modes_space(63); });
}

TEST(SectorSpace, Admissible) {
  const SectorSpace a({1, 2});
  const SectorSpace b({2, 0, 1});
  EXPECT_EQ(admissible_sectors(a, b, 1), (std::vector<int>{1}));
  EXPECT_EQ(admissible_sectors(a, b, 2), (std::vector<int>{0}));
  EXPECT_EQ(admissible_sectors(a, b, 3), (std::vector<int>{1}));
  EXPECT_TRUE(admissible_sectors(a, b, 5).empty());
}

TEST(BlockedPureState, ValidatesShapes) {
  const SectorSpace a({1, 2});
  expect_error(ErrorCode::kInvalidInput, [&] { BlockedPureState(a, a, 1, {{1, Matrix::Ones(1, 1)}}); });
  expect_error(ErrorCode::kInvalidInput, [&] { BlockedPureState(a, a, 1, {{0, Matrix::Ones(2, 1)}}); });
  expect_error(ErrorCode::kInvalidInput, [&] { BlockedPureState(a, a, 5, {{0, Matrix::Ones(1, 1)}}); });
  expect_error(ErrorCode::kZeroState, [&] { normalize(BlockedPureState(a, a, 1, {{0, Matrix::Zero(1, 2)}})); });
}

TEST(BlockedPureState, FlattenRoundTrip) {
  const SectorSpace a({1, 2, 2});
  const SectorSpace b({2, 1});
  const BlockedPureState s = random_state(a, b, 2, 7);
  const BlockedPureState t = unflatten(a, b, 2, flatten(s));
  for (const auto& [n, m] : s.blocks()) EXPECT_LT((m - *t.block(n)).norm(), 1e-15);
  EXPECT_EQ(flatten(s).size(), sector_layout(a, b, 2).dim);
}

TEST(BlockedPureState, TensorProductMatchesDenseKron) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const SectorSpace a1 = testing::random_space(rng);
    const SectorSpace b1 = testing::random_space(rng);
    const SectorSpace a2 = testing::random_space(rng);
    const SectorSpace b2 = testing::random_space(rng);
    const BlockedPureState x = random_state(a1, b1, testing::random_total(a1, b1, rng), rng());
    const BlockedPureState y = random_state(a2, b2, testing::random_total(a2, b2, rng), rng());
    const BlockedPureState xy = tensor_product(x, y);
    EXPECT_EQ(xy.n_total(), x.n_total() + y.n_total());
    EXPECT_NEAR(xy.norm_squared(), 1.0, 1e-12);
    // Schmidt spectrum of the dense Kronecker product, independent of ordering.
    const Matrix dense = Eigen::kroneckerProduct(full_amplitudes(x), full_amplitudes(y)).eval();
    std::vector<double> expected = testing::dense_schmidt(dense);
    std::vector<double> actual = testing::dense_schmidt(full_amplitudes(xy));
    ASSERT_EQ(expected.size(), actual.size());
    for (std::size_t i = 0; i < actual.size(); ++i) EXPECT_NEAR(expected[i], actual[i], 1e-12);
  }
}

TEST(LocalOperators, NumberOperatorAndProjectors) {
  const SectorSpace s({1, 2, 1});
  const Matrix n = to_dense(s, number_operator(s));
  EXPECT_EQ(n.rows(), 4);
  EXPECT_NEAR(n.trace().real(), 0 + 2 + 2, 1e-15);
  Matrix sum = Matrix::Zero(4, 4);
  for (int k = 0; k <= 2; ++k) sum += to_dense(s, sector_projector(s, k));
  EXPECT_LT((sum - Matrix::Identity(4, 4)).norm(), 1e-15);
}

TEST(LocalPOVM, RandomIsComplete) {
  const SectorSpace s({1, 3, 2});
  for (int k = 1; k <= 5; ++k) {
    const LocalPOVM p = random_povm(s, k, 100 + k);
    EXPECT_EQ(p.size(), static_cast<std::size_t>(k));
    EXPECT_LT(p.completeness_residual(), 1e-10);
  }
  expect_error(ErrorCode::kInvalidInput, [&] { LocalPOVM(s, {identity_operator(s), identity_operator(s)}); });
}

TEST(BlockedDensity, ValidatesAndEmbeds) {
  const SectorSpace mode = qubit_modes_space(1);
  Matrix bad(2, 2);
  bad << 0.5, 0.9, 0.9, 0.5;  // not PSD
  expect_error(ErrorCode::kInvalidInput, [&] { BlockedDensity(mode, mode, {{1, DensitySector{1.0, bad}}}); });
  expect_error(ErrorCode::kInvalidInput,
               [&] { BlockedDensity(mode, mode, {{1, DensitySector{0.5, Matrix::Identity(2, 2) * 0.5}}}); });

  const BlockedPureState psi = random_state(SectorSpace({1, 2}), SectorSpace({2, 1}), 1, 5);
  const Matrix amp = full_amplitudes(psi);
  Vector v(amp.size());
  for (int a = 0; a < amp.rows(); ++a) {
    for (int b = 0; b < amp.cols(); ++b) v(a * amp.cols() + b) = amp(a, b);
  }
  const Matrix full = pure_density(psi).to_full();
  EXPECT_LT((full - v * v.adjoint()).norm(), 1e-14);
}

TEST(BlockedDensity, TensorProductMatchesKron) {
  const BlockedPureState x = random_state(SectorSpace({1, 2}), SectorSpace({1, 1}), 1, 1);
  const BlockedPureState y = random_state(SectorSpace({1, 1}), SectorSpace({2, 1}), 1, 2);
  const BlockedDensity rx = pure_density(x);
  const BlockedDensity ry = pure_density(y);
  const Matrix a = tensor_product(rx, ry).to_full();
  const Matrix b = pure_density(tensor_product(x, y)).to_full();
  EXPECT_LT((a - b).norm(), 1e-13);
  EXPECT_NEAR(a.trace().real(), 1.0, 1e-13);
}

TEST(Random, SeedsAreReproducibleAndDistinct) {
  const SectorSpace s({1, 2, 1});
  const BlockedPureState a = random_state(s, s, 2, 42);
  const BlockedPureState b = random_state(s, s, 2, 42);
  EXPECT_EQ(flatten(a), flatten(b));
  std::set<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 1000; ++i) seeds.insert(derive_seed(9, i));
  EXPECT_EQ(seeds.size(), 1000u);
  expect_error(ErrorCode::kEmptySector, [&] { random_state(s, s, 9, 1); });
}

}  // namespace
}  // namespace ssr
