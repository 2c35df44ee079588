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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "ssr/teleport.hpp"
#include "test_util.hpp"

namespace ssr {
namespace {

using testing::expect_error;

TEST(BellBasis, IsOrthonormal) {
  for (int n_particles = 0; n_particles <= 5; ++n_particles) {
    for (int m = n_particles; m <= 8; ++m) {
      for (int n = 0; n <= n_particles + m; ++n) {
        const std::vector<Vector> basis = bell_basis(n, n_particles, m);
        const int d = static_cast<int>(basis.size());
        EXPECT_EQ(d, sector_high(n, n_particles, m) - sector_low(n, n_particles, m) + 1);
        for (int i = 0; i < d; ++i) {
          for (int j = 0; j < d; ++j) {
            EXPECT_NEAR(std::abs(basis[i].dot(basis[j]) - (i == j ? 1.0 : 0.0)), 0.0, 1e-12);
          }
        }
      }
    }
  }
}

TEST(BellBasis, MeasurementIsComplete) {
  const int n_particles = 3;
  const int m = 4;
  const int dim = (n_particles + 1) * (m + 1);
  Matrix sum = Matrix::Zero(dim, dim);
  for (int n = 0; n <= n_particles + m; ++n) {
    const int d = sector_high(n, n_particles, m) - sector_low(n, n_particles, m) + 1;
    for (int k = 0; k < d; ++k) sum += alice_measurement_operator(n, k, n_particles, m);
  }
  EXPECT_LT((sum - Matrix::Identity(dim, dim)).norm(), 1e-12);
}

double exact_success(int n_particles, int m, std::uint64_t seed) {
  double p = 0.0;
  for (const TeleportOutcome& o : run_teleport(make_teleport_instance(random_alpha(n_particles, seed), m))) {
    if (o.success) p += o.prob;
  }
  return p;
}

TEST(Teleport, SuccessProbabilities) {
  EXPECT_NEAR(exact_success(1, 1, 1), 0.5, 1e-12);
  EXPECT_NEAR(exact_success(1, 3, 2), 0.75, 1e-12);
  for (int m = 0; m <= 10; ++m) EXPECT_NEAR(exact_success(m, m, 3), 1.0 / (m + 1), 1e-12);
  EXPECT_NEAR(exact_success(0, 0, 4), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(success_probability(1, 1), 0.5);
  EXPECT_DOUBLE_EQ(success_probability(5, 2), 0.0);
}

TEST(Teleport, FormulaOverTheGrid) {
  for (int n = 0; n <= 8; ++n) {
    for (int m = n; m <= 40; ++m) {
      const TeleportInstance inst = make_teleport_instance(random_alpha(n, derive_seed(n, m)), m);
      double p = 0.0;
      double total = 0.0;
      for (const TeleportOutcome& o : run_teleport(inst)) {
        total += o.prob;
        if (!o.success) continue;
        p += o.prob;
        if (o.prob > 0.0) EXPECT_GE(o.post_fidelity, 1.0 - 1e-10);
      }
      EXPECT_NEAR(total, 1.0, 1e-12);
      EXPECT_NEAR(p, 1.0 - double(n) / (m + 1.0), 1e-12);
    }
  }
}

TEST(Teleport, CorrectionsAreUnitaryPhases) {
  const Matrix u = bob_correction(3, 2, 2, 5);
  EXPECT_LT((u * u.adjoint() - Matrix::Identity(6, 6)).norm(), 1e-12);
}

TEST(Teleport, MonteCarloAgreesWithExact) {
  const TeleportInstance inst = make_teleport_instance(random_alpha(2, 9), 5);
  EXPECT_NEAR(sample_success_rate(inst, 20000, 10), 2.0 / 3.0, 0.02);
}

TEST(Teleport, InvalidInputs) {
  expect_error(ErrorCode::kInvalidInput, [] { make_teleport_instance({Complex(0.5)}, 1); });
  expect_error(ErrorCode::kInvalidInput, [] { make_teleport_instance({Complex(1.0)}, -1); });
}

TEST(Scaling, MinimalResource) {
  const std::vector<int> ns{1, 2, 10};
  const auto t90 = scaling_table(ns, 0.9);
  EXPECT_EQ(t90[0].second, 9);
  EXPECT_EQ(t90[1].second, 19);
  EXPECT_EQ(t90[2].second, 99);
  const std::vector<int> one{1};
  EXPECT_EQ(scaling_table(one, 0.999)[0].second, 999);
  EXPECT_EQ(scaling_table(one, 0.5)[0].second, 1);
  for (const auto& [n, m] : scaling_table(ns, 0.99)) {
    EXPECT_GE(success_probability(n, static_cast<int>(m)), 0.99 - 1e-12);
    EXPECT_LT(success_probability(n, static_cast<int>(m - 1)), 0.99 - 1e-12);
  }
  expect_error(ErrorCode::kDomainError, [&] { scaling_table(ns, 1.0); });
  expect_error(ErrorCode::kDomainError, [&] { scaling_table(ns, 0.0); });
}

}  // namespace
}  // namespace ssr
