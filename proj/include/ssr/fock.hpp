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

// Data model for bipartite states under a particle-number superselection
// rule. Every local space splits into sectors of fixed particle number; every
// pure state lives in one global sector; every local operator is
// block-diagonal in the local sectors.

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "ssr/errors.hpp"

namespace ssr {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct Tolerances {
  double normalization = 1e-12;
  double psd = 1e-10;
  double completeness = 1e-10;
  double hermiticity = 1e-12;
};

const Tolerances& tolerances();
void set_tolerances(const Tolerances& tol);

/// Local Hilbert space given by the dimension of each fixed-particle-number
/// sector, indexed by particle number n = 0..max_number().
class SectorSpace {
 public:
  explicit SectorSpace(std::vector<int> dims);

  const std::vector<int>& dims() const { return dims_; }
  int max_number() const { return static_cast<int>(dims_.size()) - 1; }
  /// Zero for n outside 0..max_number().
  int dim(int n) const;
  int total_dim() const { return total_; }
  /// First index of sector n in the full local basis (sectors ascending).
  int offset(int n) const;

  bool operator==(const SectorSpace& other) const = default;

 private:
  std::vector<int> dims_;
  std::vector<int> offsets_;
  int total_ = 0;
};

/// m two-level modes; sector n is spanned by the occupation strings with n
/// ones, ordered lexicographically.
SectorSpace qubit_modes_space(int m);

/// One basis state per particle number, n = 0..n_max.
SectorSpace unary_space(int n_max);

/// Occupation strings of `modes` modes with `n` ones, as integers whose most
/// significant bit is mode 0. Ascending integer order equals lexicographic
/// string order, which is the basis order of qubit_modes_space sectors.
std::vector<std::uint64_t> occupation_strings(int modes, int n);

/// Sector-wise product space: dims[n] = sum_{a+b=n} left[a] * right[b].
/// Inside sector n the basis is ordered by the left sector a ascending, then
/// left index major, right index minor.
SectorSpace product_space(const SectorSpace& left, const SectorSpace& right);

/// Offset of the (a, n - a) group inside sector n of product_space(left, right).
int product_group_offset(const SectorSpace& left, const SectorSpace& right, int n, int a);

/// Alice sectors n for which the block of shape dims_A[n] x dims_B[N - n]
/// is nonempty.
std::vector<int> admissible_sectors(const SectorSpace& alice, const SectorSpace& bob, int n_total);

/// Pure state in the global sector n_total. blocks[n] is the amplitude matrix
/// between Alice's sector n and Bob's sector n_total - n; an absent block is
/// an exact zero. Norm is not enforced here; see normalize() and
/// is_normalized().
class BlockedPureState {
 public:
  BlockedPureState(SectorSpace alice, SectorSpace bob, int n_total, std::map<int, Matrix> blocks);

  int n_total() const { return n_total_; }
  const SectorSpace& alice() const { return alice_; }
  const SectorSpace& bob() const { return bob_; }
  const std::map<int, Matrix>& blocks() const { return blocks_; }
  /// nullptr when the block is absent.
  const Matrix* block(int n) const;

  double norm_squared() const;
  bool is_normalized() const;

 private:
  SectorSpace alice_;
  SectorSpace bob_;
  int n_total_;
  std::map<int, Matrix> blocks_;
};

BlockedPureState normalize(const BlockedPureState& state);

/// Tensor product of two pure states on product_space of each side.
BlockedPureState tensor_product(const BlockedPureState& left, const BlockedPureState& right);

/// Local operator commuting with the local particle number: one square block
/// per sector, absent blocks are zero.
using BlockOperator = std::map<int, Matrix>;

BlockOperator identity_operator(const SectorSpace& space);
BlockOperator number_operator(const SectorSpace& space);
BlockOperator sector_projector(const SectorSpace& space, int n);

/// Dense matrix on the full local space (sectors ascending).
Matrix to_dense(const SectorSpace& space, const BlockOperator& op);

class LocalPOVM {
 public:
  /// Validates block shapes and per-sector completeness.
  LocalPOVM(SectorSpace space, std::vector<BlockOperator> elements);

  const SectorSpace& space() const { return space_; }
  const std::vector<BlockOperator>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }

  /// max over sectors of || sum_i M_i^dagger M_i - 1 ||_F.
  double completeness_residual() const;

 private:
  SectorSpace space_;
  std::vector<BlockOperator> elements_;
};

double completeness_residual(const SectorSpace& space, const std::vector<BlockOperator>& elements);

/// Basis of the global sector n_total: ascending Alice sector, then Alice
/// index, then Bob index.
struct SectorLayout {
  struct Group {
    int n_alice;
    int offset;
    int rows;
    int cols;
  };
  int n_total = 0;
  int dim = 0;
  std::vector<Group> groups;

  const Group* group(int n_alice) const;
};

SectorLayout sector_layout(const SectorSpace& alice, const SectorSpace& bob, int n_total);

/// Amplitudes of a pure state in its sector_layout basis, and back.
Vector flatten(const BlockedPureState& state);
BlockedPureState unflatten(const SectorSpace& alice, const SectorSpace& bob, int n_total, const Vector& amplitudes);

/// Embedding of the pure state into the full (unrestricted) space
/// C^{total_A} (x) C^{total_B} as a total_A x total_B amplitude matrix.
Matrix full_amplitudes(const BlockedPureState& state);

struct DensitySector {
  double weight;
  Matrix rho;
};

/// Mixed state with no coherence between global sectors. Each sector matrix
/// is unit-trace on the sector_layout basis and carries weight q_N.
class BlockedDensity {
 public:
  /// Validates shapes, Hermiticity, positivity, unit traces and total weight.
  BlockedDensity(SectorSpace alice, SectorSpace bob, std::map<int, DensitySector> sectors);

  const SectorSpace& alice() const { return alice_; }
  const SectorSpace& bob() const { return bob_; }
  const std::map<int, DensitySector>& sectors() const { return sectors_; }

  /// Dense operator on C^{total_A} (x) C^{total_B}, index a * total_B + b.
  Matrix to_full() const;

 private:
  SectorSpace alice_;
  SectorSpace bob_;
  std::map<int, DensitySector> sectors_;
};

BlockedDensity pure_density(const BlockedPureState& state);
BlockedDensity tensor_product(const BlockedDensity& left, const BlockedDensity& right);

/// Deterministic 64-bit seed for stream `index` derived from `root`.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index);

/// i.i.d. complex Gaussian amplitudes on every admissible block, normalized.
BlockedPureState random_state(const SectorSpace& alice, const SectorSpace& bob, int n_total, std::uint64_t seed);

/// k random sector-block operators made complete by the inverse square root
/// of sum_i G_i^dagger G_i in each sector.
LocalPOVM random_povm(const SectorSpace& space, int k, std::uint64_t seed);

}  // namespace ssr
