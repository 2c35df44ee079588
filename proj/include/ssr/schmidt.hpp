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

#include <map>
#include <variant>
#include <vector>

#include "ssr/fock.hpp"

namespace ssr {

/// Schmidt coefficients of one sector, nonincreasing and nonnegative.
struct ExplicitCoefficients {
  std::vector<double> values;
};

/// `count` equal coefficients summing to `weight`. The count is kept as its
/// natural logarithm so that binomial counts far beyond 2^64 stay exact
/// enough for entropy and majorization.
struct UniformCoefficients {
  double log_count;
  double weight;
};

struct SchmidtEntry {
  std::variant<ExplicitCoefficients, UniformCoefficients> coefficients;

  double weight() const;
  bool is_uniform() const { return std::holds_alternative<UniformCoefficients>(coefficients); }
};

/// Schmidt coefficients grouped by Alice's local particle number.
class SchmidtBlocks {
 public:
  SchmidtBlocks() = default;
  /// Sorts explicit vectors, rejects negative entries, and requires the
  /// sector weights to sum to one.
  explicit SchmidtBlocks(std::map<int, SchmidtEntry> sectors);

  const std::map<int, SchmidtEntry>& sectors() const { return sectors_; }
  const SchmidtEntry* sector(int n) const;
  /// p_n, zero for absent sectors.
  double weight(int n) const;
  int max_sector() const;

 private:
  std::map<int, SchmidtEntry> sectors_;
};

/// Coefficient at or below which singular values are treated as zero.
inline constexpr double kSingularValueCutoff = 1e-12;

SchmidtBlocks schmidt_block_decompose(const BlockedPureState& state);

/// Full per-sector SVD: block = u * diag(singular) * v^dagger, with full
/// square u and v and singular values nonincreasing.
struct SectorSvd {
  Matrix u;
  Eigen::VectorXd singular;
  Matrix v;
};
std::map<int, SectorSvd> sector_svd(const BlockedPureState& state);

/// Schmidt blocks of a product state built from the blocks of its factors;
/// sector n of the product collects lambda^a_i * mu^(n-a)_j.
SchmidtBlocks tensor_product(const SchmidtBlocks& left, const SchmidtBlocks& right);

/// Entropy of entanglement in bits, with 0 log 0 = 0.
double entropy_of_entanglement(const SchmidtBlocks& blocks);

/// 4 * variance of n under the distribution p.
double siv_of_distribution(const std::vector<double>& p);
double siv(const SchmidtBlocks& blocks);
double siv(const BlockedPureState& state);

/// p_n for n = 0..max_sector().
std::vector<double> local_number_distribution(const SchmidtBlocks& blocks);

enum class Party { kAlice, kBob };
/// Local particle-number distribution of either party, read directly from
/// block norms (no SVD). Indexed by that party's particle number.
std::vector<double> local_number_distribution(const BlockedPureState& state, Party party = Party::kAlice);

double binary_entropy(double p);

struct ResourcePair {
  double eoe;
  double siv;
  double mean_local_number;
};

ResourcePair resource_pair(const SchmidtBlocks& blocks);
ResourcePair resource_pair(const BlockedPureState& state);

}  // namespace ssr
