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

// Formation measures of mixed states: the least ensemble average of EoE or
// SiV over decompositions rho = sum_i p_i |psi_i><psi_i| whose members each
// live in a single global sector. Members cannot straddle global sectors, so
// the minimization splits into one problem per sector. Inside a sector every
// decomposition of size K is rho_N's eigen-ensemble rotated by a K x r
// isometry; the optimizer searches that manifold by sweeps of two-member
// rotations and reports an upper bound together with the ensemble that
// attains it.

#include <cstdint>
#include <functional>
#include <vector>

#include "ssr/fock.hpp"

namespace ssr {

enum class Measure { kEoe, kSiv };

double measure_of(const BlockedPureState& state, Measure which);

struct FormationOptions {
  int ensemble_size = 0;  // K; 0 selects rank^2 per sector
  int restarts = 32;
  std::uint64_t seed = 1;
  int max_iters = 200;    // sweeps per restart
  double tol = 1e-12;     // sweep improvement that counts as converged
};

struct EnsembleMember {
  double prob;
  BlockedPureState state;
};

struct EnsembleDecomposition {
  std::vector<EnsembleMember> members;
};

struct FormationResult {
  double value;
  EnsembleDecomposition best_ensemble;
  int restarts;
  bool converged;
};

/// Raises kRankExceedsK if an explicit ensemble size is below a sector rank.
FormationResult formation_measure(const BlockedDensity& rho, Measure which, const FormationOptions& opts = {});

/// Trace distance between rho and the ensemble's average state.
double reconstruction_distance(const BlockedDensity& rho, const EnsembleDecomposition& ensemble);

/// Ordinary entanglement of formation (no sector constraint on members),
/// by the same optimizer on the full space. Returns the best value found.
double unrestricted_entanglement_of_formation(const BlockedDensity& rho, const FormationOptions& opts = {});

/// Low-level search shared by the above. `weighted` holds the columns
/// sqrt(e_k) v_k of a rank-r operator; members are K columns sum_k U_ik
/// weighted_k for a K x r isometry U. `cost` maps an unnormalized member to
/// p * measure(member / sqrt(p)). Returns the best member matrix (D x K).
struct EnsembleSearch {
  double value;
  Matrix members;
  bool converged;
};
using MemberCost = std::function<double(const Vector&)>;
EnsembleSearch minimize_ensemble(const Matrix& weighted, int ensemble_size, const MemberCost& cost,
                                 const FormationOptions& opts);

/// Bipartite product state on N two-level modes per side, amplitudes
/// indexed by occupation strings (mode 0 is the most significant bit).
struct ProductState {
  int modes;
  Vector alice;
  Vector bob;
};

/// Product of N single-mode pairs chi_j (x) psi_j; each entry is
/// (Alice mode state, Bob mode state) in the basis |0>, |1>.
ProductState product_of_pairs(const std::vector<std::pair<Eigen::Vector2cd, Eigen::Vector2cd>>& pairs);

/// Random (non-superselected) product state on N modes per side.
ProductState random_product_state(int modes, std::uint64_t seed);

struct ProjectionBound {
  int schmidt_rank;
  double eoe;
  double bound;  // log2(N + 1)
  bool rank_ok;  // rank <= N + 1
  bool eoe_ok;   // eoe <= log2(rank)
};

/// Projects the product state onto the global sector n_sector, renormalizes
/// and measures the entanglement created. Raises kZeroProjection when the
/// sector component vanishes.
ProjectionBound projection_entanglement_bound(const ProductState& state, int n_sector);

struct AdditivityProbe {
  double v1;
  double v2;
  double ratio;  // v2 / (2 v1); 1 when both vanish
};

/// SiV of formation of rho and of rho (x) rho. Raises kDomainError when
/// (dim rho)^2 exceeds 256.
AdditivityProbe vf_additivity_probe(const BlockedDensity& rho, const FormationOptions& opts = {});

}  // namespace ssr
