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

#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "ssr/formation.hpp"
#include "ssr/linalg.hpp"
#include "ssr/schmidt.hpp"
#include "ssr/states.hpp"
#include "test_util.hpp"

namespace ssr {
namespace {

using testing::expect_error;

FormationOptions quick(int restarts = 8, int k = 0, std::uint64_t seed = 1) {
  FormationOptions o;
  o.restarts = restarts;
  o.ensemble_size = k;
  o.seed = seed;
  return o;
}

// Mixture of rank random pure states inside global sector n_total.
BlockedDensity random_mixed(const SectorSpace& a, const SectorSpace& b, int n_total, int rank, std::uint64_t seed) {
  const int d = sector_layout(a, b, n_total).dim;
  Matrix rho = Matrix::Zero(d, d);
  for (int i = 0; i < rank; ++i) {
    const Vector v = flatten(random_state(a, b, n_total, derive_seed(seed, i)));
    rho += (i + 1.0) * v * v.adjoint();
  }
  rho /= rho.trace().real();
  return BlockedDensity(a, b, {{n_total, DensitySector{1.0, rho}}});
}

void expect_certificate(const BlockedDensity& rho, const FormationResult& r, Measure which) {
  EXPECT_LE(reconstruction_distance(rho, r.best_ensemble), 1e-8);
  double value = 0.0;
  for (const EnsembleMember& m : r.best_ensemble.members) {
    value += m.prob * measure_of(m.state, which);
    EXPECT_TRUE(rho.sectors().count(m.state.n_total()));
  }
  EXPECT_NEAR(value, r.value, 1e-10);
}

TEST(Formation, SeparableExampleHasHalfUnit) {
  const BlockedDensity rho = states::separable_ssr_example();
  for (Measure m : {Measure::kEoe, Measure::kSiv}) {
    const FormationResult r = formation_measure(rho, m);
    EXPECT_NEAR(r.value, 0.5, 1e-6);
    EXPECT_EQ(r.restarts, 32);
    expect_certificate(rho, r, m);
  }
}

TEST(Formation, PureStatesReturnTheirMeasure) {
  const BlockedPureState psi = random_state(SectorSpace({1, 2, 1}), SectorSpace({1, 2}), 2, 3);
  const BlockedDensity rho = pure_density(psi);
  for (int k : {0, 1, 3}) {
    EXPECT_NEAR(formation_measure(rho, Measure::kEoe, quick(4, k)).value,
                entropy_of_entanglement(schmidt_block_decompose(psi)), 1e-10);
    EXPECT_NEAR(formation_measure(rho, Measure::kSiv, quick(4, k)).value, siv(psi), 1e-10);
  }
}

TEST(Formation, SectorDiagonalProductMixtureIsFree) {
  const SectorSpace mode = qubit_modes_space(1);
  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = 0.3;
  diag(1, 1) = 0.7;
  const BlockedDensity rho(mode, mode, {{1, DensitySector{0.6, diag}}, {0, DensitySector{0.4, Matrix::Ones(1, 1)}}});
  for (Measure m : {Measure::kEoe, Measure::kSiv}) {
    const FormationResult r = formation_measure(rho, m, quick());
    EXPECT_NEAR(r.value, 0.0, 1e-10);
    expect_certificate(rho, r, m);
  }
}

TEST(Formation, CertificatesOnRandomStates) {
  const SectorSpace modes = qubit_modes_space(2);
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const BlockedDensity rho = random_mixed(modes, modes, 2, 3, seed);
    for (Measure m : {Measure::kEoe, Measure::kSiv}) {
      const FormationResult r = formation_measure(rho, m, quick(4, 0, seed));
      expect_certificate(rho, r, m);
      EXPECT_GE(r.value, -1e-12);
    }
  }
}

TEST(Formation, LargerEnsemblesNeverHurt) {
  const SectorSpace modes = qubit_modes_space(2);
  for (std::uint64_t seed = 10; seed < 13; ++seed) {
    const BlockedDensity rho = random_mixed(modes, modes, 2, 2, seed);
    for (Measure m : {Measure::kEoe, Measure::kSiv}) {
      double prev = formation_measure(rho, m, quick(16, 2, seed)).value;
      for (int k = 3; k <= 5; ++k) {
        const double v = formation_measure(rho, m, quick(16, k, seed)).value;
        EXPECT_LE(v, prev + 1e-8) << "K=" << k;
        prev = v;
      }
    }
  }
}

TEST(Formation, RankExceedsK) {
  const SectorSpace modes = qubit_modes_space(2);
  const BlockedDensity rho = random_mixed(modes, modes, 2, 3, 1);
  expect_error(ErrorCode::kRankExceedsK, [&] { formation_measure(rho, Measure::kEoe, quick(1, 2)); });
}

// Dense 200 x 200 grid over two-member rotations of a rank-2 sector. Member
// swaps and phases identify (t, phi) with (pi/2 - t, phi + pi).
double grid_minimum(const BlockedDensity& rho, int n_total, Measure which) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(rho.sectors().at(n_total).rho);
  const Eigen::Index d = eig.eigenvalues().size();
  const Vector w0 = eig.eigenvectors().col(d - 1) * std::sqrt(eig.eigenvalues()(d - 1));
  const Vector w1 = eig.eigenvectors().col(d - 2) * std::sqrt(eig.eigenvalues()(d - 2));
  double best = 1e300;
  for (int i = 0; i < 200; ++i) {
    const double t = 0.5 * std::numbers::pi * i / 199;
    for (int j = 0; j < 200; ++j) {
      const Complex ph = std::polar(1.0, std::numbers::pi * j / 200);
      double v = 0.0;
      for (const Vector& m : {Vector(std::cos(t) * w0 - ph * std::sin(t) * w1),
                              Vector(std::conj(ph) * std::sin(t) * w0 + std::cos(t) * w1)}) {
        const double p = m.squaredNorm();
        if (p > 1e-14) v += p * measure_of(unflatten(rho.alice(), rho.bob(), n_total, m / std::sqrt(p)), which);
      }
      best = std::min(best, v);
    }
  }
  return best;
}

TEST(Formation, RankTwoGridOracle) {
  const SectorSpace modes = qubit_modes_space(2);
  for (std::uint64_t seed = 20; seed < 23; ++seed) {
    const BlockedDensity rho = random_mixed(modes, modes, 2, 2, seed);
    for (Measure m : {Measure::kEoe, Measure::kSiv}) {
      const double opt = formation_measure(rho, m, quick(16, 2, seed)).value;
      const double grid = grid_minimum(rho, 2, m);
      EXPECT_NEAR(opt, grid, 1e-4);
      EXPECT_LE(opt, grid + 1e-12);
    }
  }
}

TEST(Formation, SuperselectedValueDominatesUnrestricted) {
  const SectorSpace mode = qubit_modes_space(1);
  const BlockedDensity example = states::separable_ssr_example();
  EXPECT_NEAR(unrestricted_entanglement_of_formation(example, quick(8)), 0.0, 1e-6);
  for (std::uint64_t seed = 30; seed < 34; ++seed) {
    const BlockedDensity rho = random_mixed(SectorSpace({1, 2}), SectorSpace({1, 2}), 2, 2, seed);
    const double ssr = formation_measure(rho, Measure::kEoe, quick(8, 0, seed)).value;
    const double free = unrestricted_entanglement_of_formation(rho, quick(8, 0, seed));
    EXPECT_GE(ssr, free - 1e-6);
  }
  (void)mode;
}

TEST(Formation, DeterministicPerSeed) {
  const SectorSpace modes = qubit_modes_space(2);
  const BlockedDensity rho = random_mixed(modes, modes, 2, 3, 5);
  const FormationResult a = formation_measure(rho, Measure::kEoe, quick(6, 0, 77));
  const FormationResult b = formation_measure(rho, Measure::kEoe, quick(6, 0, 77));
  EXPECT_EQ(a.value, b.value);
}

// ---------------------------------------------------------------------------

TEST(Projection, PlusPlusPair) {
  const Eigen::Vector2cd plus(std::sqrt(0.5), std::sqrt(0.5));
  const ProjectionBound b = projection_entanglement_bound(product_of_pairs({{plus, plus}}), 1);
  EXPECT_EQ(b.schmidt_rank, 2);
  EXPECT_NEAR(b.eoe, 1.0, 1e-12);
  EXPECT_NEAR(b.bound, 1.0, 1e-15);
  EXPECT_TRUE(b.rank_ok);
  EXPECT_TRUE(b.eoe_ok);
}

// Projected 2^N x 2^N amplitude matrix, decomposed densely.
std::vector<double> dense_projected_schmidt(const ProductState& s, int n_sector) {
  const int dim = 1 << s.modes;
  Matrix m = Matrix::Zero(dim, dim);
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      if (std::popcount(unsigned(a)) + std::popcount(unsigned(b)) == n_sector) m(a, b) = s.alice(a) * s.bob(b);
    }
  }
  m /= m.norm();
  return testing::dense_schmidt(m);
}

TEST(Projection, MatchesDenseSvdAndBound) {
  for (int n = 1; n <= 6; ++n) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const ProductState s = random_product_state(n, derive_seed(n, seed));
      for (int sector = 0; sector <= 2 * n; ++sector) {
        const ProjectionBound b = projection_entanglement_bound(s, sector);
        const std::vector<double> dense = dense_projected_schmidt(s, sector);
        EXPECT_EQ(b.schmidt_rank, static_cast<int>(dense.size()));
        EXPECT_NEAR(b.eoe, testing::shannon_bits(dense), 1e-10);
        EXPECT_LE(b.schmidt_rank, n + 1);
        EXPECT_LE(b.eoe, std::log2(n + 1.0) + 1e-12);
      }
    }
  }
}

TEST(Projection, EmptySector) {
  const Eigen::Vector2cd zero(1.0, 0.0);
  const ProductState vacuum = product_of_pairs({{zero, zero}, {zero, zero}});
  expect_error(ErrorCode::kZeroProjection, [&] { projection_entanglement_bound(vacuum, 1); });
  expect_error(ErrorCode::kZeroProjection, [&] { projection_entanglement_bound(vacuum, 9); });
  EXPECT_EQ(projection_entanglement_bound(vacuum, 0).schmidt_rank, 1);
}

// ---------------------------------------------------------------------------

TEST(Additivity, VarianceOfFormationProbe) {
  const AdditivityProbe example = vf_additivity_probe(states::separable_ssr_example(), quick(8));
  EXPECT_NEAR(example.v1, 0.5, 1e-6);
  EXPECT_NEAR(example.ratio, 1.0, 0.02);

  const AdditivityProbe pure = vf_additivity_probe(pure_density(states::fig1()), quick(4));
  EXPECT_NEAR(pure.ratio, 1.0, 1e-9);

  const SectorSpace mode = qubit_modes_space(1);
  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = 0.5;
  diag(1, 1) = 0.5;
  const AdditivityProbe free = vf_additivity_probe(BlockedDensity(mode, mode, {{1, DensitySector{1.0, diag}}}), quick(4));
  EXPECT_NEAR(free.v1, 0.0, 1e-12);
  EXPECT_NEAR(free.v2, 0.0, 1e-12);
  EXPECT_EQ(free.ratio, 1.0);

  const SectorSpace big({1, 2, 2});  // (5 * 5)^2 > 256
  expect_error(ErrorCode::kDomainError, [&] { vf_additivity_probe(random_mixed(big, big, 2, 2, 1), quick(1)); });
}

}  // namespace
}  // namespace ssr
