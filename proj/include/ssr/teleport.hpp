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

#pragma once

// Teleportation of Alice's share of sum_j alpha_j |j>_A |N-j>_C through the
// resource sum_i |i>_Abar |M-i>_B / sqrt(M+1). All four registers are
// unary particle-number registers. Alice can only measure inside sectors of
// fixed total number n = a + abar; within sector n she measures the Fourier
// basis over the admissible split l = lo(n)..hi(n),
//   lo(n) = max(0, n - M),  hi(n) = min(n, N).
// Bob undoes the Fourier phase and relabels his register by M - n.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ssr/fock.hpp"

namespace ssr {

struct TeleportInstance {
  std::vector<Complex> alpha;  // alpha_0..alpha_N, unit norm
  int m_resource;

  int n_particles() const { return static_cast<int>(alpha.size()) - 1; }
};

/// Validates the norm (1e-12) and M >= 0.
TeleportInstance make_teleport_instance(std::vector<Complex> alpha, int m_resource);

/// Haar-random alpha of length N + 1.
std::vector<Complex> random_alpha(int n_particles, std::uint64_t seed);

struct TeleportOutcome {
  int n;
  int k;
  double prob;
  double post_fidelity;
  bool success;
  /// Bob-Charlie state after correction and relabeling, as amplitudes over
  /// Bob's relabeled count j (Charlie holds N - j); normalized.
  Vector post_state;
};

int sector_low(int n, int n_particles, int m_resource);
int sector_high(int n, int n_particles, int m_resource);

/// Fourier basis of Alice's sector n; entry l - lo(n) of each vector is the
/// amplitude of |l>_A |n - l>_Abar.
std::vector<Vector> bell_basis(int n, int n_particles, int m_resource);

/// |chi_k^(n)><chi_k^(n)| as a dense operator on A (x) Abar, index
/// a * (M + 1) + abar.
Matrix alice_measurement_operator(int n, int k, int n_particles, int m_resource);

/// Bob's diagonal phase correction for outcome (n, k) on his M + 1 levels.
Matrix bob_correction(int n, int k, int n_particles, int m_resource);

/// Exact enumeration of every outcome (n, k).
std::vector<TeleportOutcome> run_teleport(const TeleportInstance& instance);

/// max(0, 1 - N/(M+1)).
double success_probability(int n_particles, int m_resource);

/// Fraction of successful runs over `shots` outcomes drawn from the exact
/// outcome distribution.
double sample_success_rate(const TeleportInstance& instance, int shots, std::uint64_t seed);

/// Minimal M with success_probability(N, M) >= target, per N.
std::vector<std::pair<int, std::int64_t>> scaling_table(std::span<const int> n_list, double target_success);

}  // namespace ssr
