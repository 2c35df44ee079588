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

#include "ssr/fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "ssr/linalg.hpp"

namespace ssr {

namespace {

Tolerances g_tolerances;

std::string shape_string(Eigen::Index r, Eigen::Index c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

}  // namespace

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kZeroState: return "ZeroState";
    case ErrorCode::kEmptySector: return "EmptySector";
    case ErrorCode::kTotalMismatch: return "TotalMismatch";
    case ErrorCode::kNotConvertible: return "NotConvertible";
    case ErrorCode::kZeroProbability: return "ZeroProbability";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kEmptyTypicalSet: return "EmptyTypicalSet";
    case ErrorCode::kRankExceedsK: return "RankExceedsK";
    case ErrorCode::kZeroProjection: return "ZeroProjection";
    case ErrorCode::kInvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

const Tolerances& tolerances() { return g_tolerances; }
void set_tolerances(const Tolerances& tol) { g_tolerances = tol; }

// ---------------------------------------------------------------------------
// SectorSpace

SectorSpace::SectorSpace(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw Error(ErrorCode::kInvalidInput, "sector space needs at least one sector");
  offsets_.resize(dims_.size());
  for (std::size_t n = 0; n < dims_.size(); ++n) {
    if (dims_[n] < 0) throw Error(ErrorCode::kInvalidInput, "negative sector dimension");
    offsets_[n] = total_;
    total_ += dims_[n];
  }
  if (total_ <= 0) throw Error(ErrorCode::kInvalidInput, "sector space has total dimension 0");
}

int SectorSpace::dim(int n) const {
  if (n < 0 || n > max_number()) return 0;
  return dims_[static_cast<std::size_t>(n)];
}

int SectorSpace::offset(int n) const {
  if (n < 0) return 0;
  if (n > max_number()) return total_;
  return offsets_[static_cast<std::size_t>(n)];
}

SectorSpace qubit_modes_space(int m) {
  if (m < 0) throw Error(ErrorCode::kInvalidInput, "mode count must be nonnegative");
  if (m > 62) throw Error(ErrorCode::kInvalidInput, "at most 62 modes are supported");
  std::vector<int> dims(static_cast<std::size_t>(m) + 1);
  // Pascal row; values fit in int for the sizes anyone materializes.
  std::int64_t c = 1;
  for (int n = 0; n <= m; ++n) {
    dims[static_cast<std::size_t>(n)] = static_cast<int>(std::min<std::int64_t>(c, INT32_MAX));
    c = c * (m - n) / (n + 1);
  }
  return SectorSpace(std::move(dims));
}

SectorSpace unary_space(int n_max) {
  if (n_max < 0) throw Error(ErrorCode::kInvalidInput, "n_max must be nonnegative");
  return SectorSpace(std::vector<int>(static_cast<std::size_t>(n_max) + 1, 1));
}

std::vector<std::uint64_t> occupation_strings(int modes, int n) {
  std::vector<std::uint64_t> out;
  if (n < 0 || n > modes) return out;
  const std::uint64_t end = std::uint64_t{1} << modes;
  for (std::uint64_t s = 0; s < end; ++s) {
    if (std::popcount(s) == n) out.push_back(s);
  }
  return out;
}

SectorSpace product_space(const SectorSpace& left, const SectorSpace& right) {
  std::vector<int> dims(static_cast<std::size_t>(left.max_number() + right.max_number()) + 1, 0);
  for (int a = 0; a <= left.max_number(); ++a) {
    for (int b = 0; b <= right.max_number(); ++b) {
      dims[static_cast<std::size_t>(a + b)] += left.dim(a) * right.dim(b);
    }
  }
  return SectorSpace(std::move(dims));
}

int product_group_offset(const SectorSpace& left, const SectorSpace& right, int n, int a) {
  int off = 0;
  for (int x = 0; x < a; ++x) off += left.dim(x) * right.dim(n - x);
  return off;
}

std::vector<int> admissible_sectors(const SectorSpace& alice, const SectorSpace& bob, int n_total) {
  std::vector<int> out;
  for (int n = 0; n <= std::min(n_total, alice.max_number()); ++n) {
    if (alice.dim(n) > 0 && bob.dim(n_total - n) > 0) out.push_back(n);
  }
  return out;
}

// ---------------------------------------------------------------------------
// BlockedPureState

BlockedPureState::BlockedPureState(SectorSpace alice, SectorSpace bob, int n_total,
                                   std::map<int, Matrix> blocks)
    : alice_(std::move(alice)), bob_(std::move(bob)), n_total_(n_total), blocks_(std::move(blocks)) {
  if (n_total_ < 0) throw Error(ErrorCode::kInvalidInput, "negative global particle number");
  for (const auto& [n, m] : blocks_) {
    const int rows = alice_.dim(n);
    const int cols = bob_.dim(n_total_ - n);
    if (rows == 0 || cols == 0) {
      throw Error(ErrorCode::kInvalidInput, "block " + std::to_string(n) + " is not admissible");
    }
    if (m.rows() != rows || m.cols() != cols) {
      throw Error(ErrorCode::kInvalidInput, "block " + std::to_string(n) + " has shape " +
                                                shape_string(m.rows(), m.cols()) + ", expected " +
                                                shape_string(rows, cols));
    }
  }
}

const Matrix* BlockedPureState::block(int n) const {
  auto it = blocks_.find(n);
  return it == blocks_.end() ? nullptr : &it->second;
}

double BlockedPureState::norm_squared() const {
  double s = 0.0;
  for (const auto& [n, m] : blocks_) s += m.squaredNorm();
  return s;
}

bool BlockedPureState::is_normalized() const {
  return std::abs(norm_squared() - 1.0) <= tolerances().normalization;
}

BlockedPureState normalize(const BlockedPureState& state) {
  const double norm = std::sqrt(state.norm_squared());
  if (norm < 1e-14) throw Error(ErrorCode::kZeroState, "state has norm " + std::to_string(norm));
  std::map<int, Matrix> blocks;
  for (const auto& [n, m] : state.blocks()) blocks.emplace(n, m / norm);
  return BlockedPureState(state.alice(), state.bob(), state.n_total(), std::move(blocks));
}

BlockedPureState tensor_product(const BlockedPureState& left, const BlockedPureState& right) {
  const SectorSpace alice = product_space(left.alice(), right.alice());
  const SectorSpace bob = product_space(left.bob(), right.bob());
  const int n_total = left.n_total() + right.n_total();
  std::map<int, Matrix> blocks;
  for (const auto& [a1, m1] : left.blocks()) {
    const int b1 = left.n_total() - a1;
    for (const auto& [a2, m2] : right.blocks()) {
      const int b2 = right.n_total() - a2;
      const int n = a1 + a2;
      auto [it, inserted] = blocks.try_emplace(n, Matrix::Zero(alice.dim(n), bob.dim(n_total - n)));
      const int row0 = product_group_offset(left.alice(), right.alice(), n, a1);
      const int col0 = product_group_offset(left.bob(), right.bob(), b1 + b2, b1);
      for (int i1 = 0; i1 < m1.rows(); ++i1) {
        for (int j1 = 0; j1 < m1.cols(); ++j1) {
          it->second.block(row0 + i1 * m2.rows(), col0 + j1 * m2.cols(), m2.rows(), m2.cols()) =
              m1(i1, j1) * m2;
        }
      }
    }
  }
  return BlockedPureState(alice, bob, n_total, std::move(blocks));
}

// ---------------------------------------------------------------------------
// Local operators

BlockOperator identity_operator(const SectorSpace& space) {
  BlockOperator op;
  for (int n = 0; n <= space.max_number(); ++n) {
    if (space.dim(n) > 0) op.emplace(n, Matrix::Identity(space.dim(n), space.dim(n)));
  }
  return op;
}

BlockOperator number_operator(const SectorSpace& space) {
  BlockOperator op;
  for (int n = 1; n <= space.max_number(); ++n) {
    if (space.dim(n) > 0) op.emplace(n, Matrix::Identity(space.dim(n), space.dim(n)) * double(n));
  }
  return op;
}

BlockOperator sector_projector(const SectorSpace& space, int n) {
  BlockOperator op;
  if (space.dim(n) > 0) op.emplace(n, Matrix::Identity(space.dim(n), space.dim(n)));
  return op;
}

Matrix to_dense(const SectorSpace& space, const BlockOperator& op) {
  Matrix out = Matrix::Zero(space.total_dim(), space.total_dim());
  for (const auto& [n, m] : op) {
    out.block(space.offset(n), space.offset(n), space.dim(n), space.dim(n)) = m;
  }
  return out;
}

double completeness_residual(const SectorSpace& space, const std::vector<BlockOperator>& elements) {
  double worst = 0.0;
  for (int n = 0; n <= space.max_number(); ++n) {
    const int d = space.dim(n);
    if (d == 0) continue;
    Matrix sum = Matrix::Zero(d, d);
    for (const auto& el : elements) {
      auto it = el.find(n);
      if (it != el.end()) sum += it->second.adjoint() * it->second;
    }
    worst = std::max(worst, (sum - Matrix::Identity(d, d)).norm());
  }
  return worst;
}

LocalPOVM::LocalPOVM(SectorSpace space, std::vector<BlockOperator> elements)
    : space_(std::move(space)), elements_(std::move(elements)) {
  if (elements_.empty()) throw Error(ErrorCode::kInvalidInput, "POVM needs at least one element");
  for (const auto& el : elements_) {
    for (const auto& [n, m] : el) {
      const int d = space_.dim(n);
      if (d == 0 || m.rows() != d || m.cols() != d) {
        throw Error(ErrorCode::kInvalidInput, "POVM block for sector " + std::to_string(n) +
                                                  " has shape " + shape_string(m.rows(), m.cols()));
      }
    }
  }
  const double residual = completeness_residual();
  if (residual > tolerances().completeness) {
    throw Error(ErrorCode::kInvalidInput, "POVM completeness residual " + std::to_string(residual));
  }
}

double LocalPOVM::completeness_residual() const { return ssr::completeness_residual(space_, elements_); }

// ---------------------------------------------------------------------------
// Global-sector layout

const SectorLayout::Group* SectorLayout::group(int n_alice) const {
  for (const auto& g : groups) {
    if (g.n_alice == n_alice) return &g;
  }
  return nullptr;
}

SectorLayout sector_layout(const SectorSpace& alice, const SectorSpace& bob, int n_total) {
  SectorLayout layout;
  layout.n_total = n_total;
  for (int n : admissible_sectors(alice, bob, n_total)) {
    const int rows = alice.dim(n);
    const int cols = bob.dim(n_total - n);
    layout.groups.push_back({n, layout.dim, rows, cols});
    layout.dim += rows * cols;
  }
  return layout;
}

Vector flatten(const BlockedPureState& state) {
  const SectorLayout layout = sector_layout(state.alice(), state.bob(), state.n_total());
  Vector v = Vector::Zero(layout.dim);
  for (const auto& g : layout.groups) {
    const Matrix* m = state.block(g.n_alice);
    if (m == nullptr) continue;
    for (int i = 0; i < g.rows; ++i) {
      for (int j = 0; j < g.cols; ++j) v(g.offset + i * g.cols + j) = (*m)(i, j);
    }
  }
  return v;
}

BlockedPureState unflatten(const SectorSpace& alice, const SectorSpace& bob, int n_total,
                           const Vector& amplitudes) {
  const SectorLayout layout = sector_layout(alice, bob, n_total);
  if (amplitudes.size() != layout.dim) {
    throw Error(ErrorCode::kInvalidInput, "amplitude vector has wrong length for sector layout");
  }
  std::map<int, Matrix> blocks;
  for (const auto& g : layout.groups) {
    Matrix m(g.rows, g.cols);
    for (int i = 0; i < g.rows; ++i) {
      for (int j = 0; j < g.cols; ++j) m(i, j) = amplitudes(g.offset + i * g.cols + j);
    }
    blocks.emplace(g.n_alice, std::move(m));
  }
  return BlockedPureState(alice, bob, n_total, std::move(blocks));
}

Matrix full_amplitudes(const BlockedPureState& state) {
  Matrix out = Matrix::Zero(state.alice().total_dim(), state.bob().total_dim());
  for (const auto& [n, m] : state.blocks()) {
    out.block(state.alice().offset(n), state.bob().offset(state.n_total() - n), m.rows(), m.cols()) = m;
  }
  return out;
}

// ---------------------------------------------------------------------------
// BlockedDensity

BlockedDensity::BlockedDensity(SectorSpace alice, SectorSpace bob, std::map<int, DensitySector> sectors)
    : alice_(std::move(alice)), bob_(std::move(bob)), sectors_(std::move(sectors)) {
  if (sectors_.empty()) throw Error(ErrorCode::kInvalidInput, "density has no sectors");
  const Tolerances& tol = tolerances();
  double total = 0.0;
  for (const auto& [n_total, sec] : sectors_) {
    const std::string where = "sector " + std::to_string(n_total);
    const SectorLayout layout = sector_layout(alice_, bob_, n_total);
    if (layout.dim == 0) throw Error(ErrorCode::kInvalidInput, where + " is empty");
    if (sec.rho.rows() != layout.dim || sec.rho.cols() != layout.dim) {
      throw Error(ErrorCode::kInvalidInput, where + " matrix has shape " +
                                                shape_string(sec.rho.rows(), sec.rho.cols()) + ", expected " +
                                                shape_string(layout.dim, layout.dim));
    }
    if (!(sec.weight >= 0.0)) throw Error(ErrorCode::kInvalidInput, where + " has negative weight");
    if ((sec.rho - sec.rho.adjoint()).norm() > tol.hermiticity) {
      throw Error(ErrorCode::kInvalidInput, where + " is not Hermitian");
    }
    if (std::abs(sec.rho.trace() - Complex(1.0)) > tol.normalization * 100) {
      throw Error(ErrorCode::kInvalidInput, where + " does not have unit trace");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(sec.rho, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -tol.psd) {
      throw Error(ErrorCode::kInvalidInput, where + " is not positive semidefinite");
    }
    total += sec.weight;
  }
  if (std::abs(total - 1.0) > tol.normalization * 100) {
    throw Error(ErrorCode::kInvalidInput, "sector weights sum to " + std::to_string(total));
  }
}

Matrix BlockedDensity::to_full() const {
  const int db = bob_.total_dim();
  const int dim = alice_.total_dim() * db;
  Matrix out = Matrix::Zero(dim, dim);
  for (const auto& [n_total, sec] : sectors_) {
    const SectorLayout layout = sector_layout(alice_, bob_, n_total);
    std::vector<int> full_index(static_cast<std::size_t>(layout.dim));
    for (const auto& g : layout.groups) {
      const int a0 = alice_.offset(g.n_alice);
      const int b0 = bob_.offset(n_total - g.n_alice);
      for (int i = 0; i < g.rows; ++i) {
        for (int j = 0; j < g.cols; ++j) {
          full_index[static_cast<std::size_t>(g.offset + i * g.cols + j)] = (a0 + i) * db + (b0 + j);
        }
      }
    }
    for (int r = 0; r < layout.dim; ++r) {
      for (int c = 0; c < layout.dim; ++c) {
        out(full_index[r], full_index[c]) += sec.weight * sec.rho(r, c);
      }
    }
  }
  return out;
}

BlockedDensity pure_density(const BlockedPureState& state) {
  const Vector v = flatten(normalize(state));
  std::map<int, DensitySector> sectors;
  sectors.emplace(state.n_total(), DensitySector{1.0, v * v.adjoint()});
  return BlockedDensity(state.alice(), state.bob(), std::move(sectors));
}

BlockedDensity tensor_product(const BlockedDensity& left, const BlockedDensity& right) {
  const SectorSpace alice = product_space(left.alice(), right.alice());
  const SectorSpace bob = product_space(left.bob(), right.bob());

  // Index of the basis vector |a1 i1, a2 i2>|b1 j1, b2 j2> inside the
  // product's global-sector layout.
  auto product_index = [&](const SectorLayout& out, int n1, int i1, int j1, int n2, int i2, int j2,
                           int bob1, int bob2) {
    const int n = n1 + n2;
    const int m = bob1 + bob2;
    const int ai = product_group_offset(left.alice(), right.alice(), n, n1) + i1 * right.alice().dim(n2) + i2;
    const int bi = product_group_offset(left.bob(), right.bob(), m, bob1) + j1 * right.bob().dim(bob2) + j2;
    const SectorLayout::Group* g = out.group(n);
    return g->offset + ai * g->cols + bi;
  };

  std::map<int, DensitySector> sectors;
  for (const auto& [n1_total, s1] : left.sectors()) {
    const SectorLayout l1 = sector_layout(left.alice(), left.bob(), n1_total);
    for (const auto& [n2_total, s2] : right.sectors()) {
      const SectorLayout l2 = sector_layout(right.alice(), right.bob(), n2_total);
      const int n_total = n1_total + n2_total;
      const SectorLayout out = sector_layout(alice, bob, n_total);
      auto [it, inserted] = sectors.try_emplace(n_total, DensitySector{0.0, Matrix::Zero(out.dim, out.dim)});
      const double w = s1.weight * s2.weight;
      if (w == 0.0) continue;

      std::vector<int> map(static_cast<std::size_t>(l1.dim * l2.dim));
      for (const auto& g1 : l1.groups) {
        for (int i1 = 0; i1 < g1.rows; ++i1) {
          for (int j1 = 0; j1 < g1.cols; ++j1) {
            const int r1 = g1.offset + i1 * g1.cols + j1;
            for (const auto& g2 : l2.groups) {
              for (int i2 = 0; i2 < g2.rows; ++i2) {
                for (int j2 = 0; j2 < g2.cols; ++j2) {
                  const int r2 = g2.offset + i2 * g2.cols + j2;
                  map[static_cast<std::size_t>(r1 * l2.dim + r2)] =
                      product_index(out, g1.n_alice, i1, j1, g2.n_alice, i2, j2, n1_total - g1.n_alice,
                                    n2_total - g2.n_alice);
                }
              }
            }
          }
        }
      }
      Matrix& acc = it->second.rho;
      for (int r1 = 0; r1 < l1.dim; ++r1) {
        for (int r2 = 0; r2 < l2.dim; ++r2) {
          const int row = map[static_cast<std::size_t>(r1 * l2.dim + r2)];
          for (int c1 = 0; c1 < l1.dim; ++c1) {
            const Complex a = s1.rho(r1, c1);
            if (a == Complex(0.0)) continue;
            for (int c2 = 0; c2 < l2.dim; ++c2) {
              acc(row, map[static_cast<std::size_t>(c1 * l2.dim + c2)]) += w * a * s2.rho(r2, c2);
            }
          }
        }
      }
      it->second.weight += w;
    }
  }
  for (auto it = sectors.begin(); it != sectors.end();) {
    if (it->second.weight == 0.0) {
      it = sectors.erase(it);
      continue;
    }
    it->second.rho /= it->second.weight;
    ++it;
  }
  return BlockedDensity(alice, bob, std::move(sectors));
}

// ---------------------------------------------------------------------------
// Random instances

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
  // splitmix64 finalizer over (root, index).
  std::uint64_t z = root + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

BlockedPureState random_state(const SectorSpace& alice, const SectorSpace& bob, int n_total,
                              std::uint64_t seed) {
  const std::vector<int> sectors = admissible_sectors(alice, bob, n_total);
  if (sectors.empty()) {
    throw Error(ErrorCode::kEmptySector, "no admissible block for n_total=" + std::to_string(n_total));
  }
  Rng rng(seed);
  std::map<int, Matrix> blocks;
  for (int n : sectors) blocks.emplace(n, random_ginibre(alice.dim(n), bob.dim(n_total - n), rng));
  return normalize(BlockedPureState(alice, bob, n_total, std::move(blocks)));
}

LocalPOVM random_povm(const SectorSpace& space, int k, std::uint64_t seed) {
  if (k < 1) throw Error(ErrorCode::kInvalidInput, "POVM needs k >= 1 elements");
  Rng rng(seed);
  std::vector<BlockOperator> elements(static_cast<std::size_t>(k));
  for (int n = 0; n <= space.max_number(); ++n) {
    const int d = space.dim(n);
    if (d == 0) continue;
    std::vector<Matrix> draws;
    Matrix sum = Matrix::Zero(d, d);
    for (int i = 0; i < k; ++i) {
      draws.push_back(random_ginibre(d, d, rng));
      sum += draws.back().adjoint() * draws.back();
    }
    const Matrix correction = inverse_sqrt_psd(sum);
    for (int i = 0; i < k; ++i) elements[static_cast<std::size_t>(i)].emplace(n, draws[i] * correction);
  }
  return LocalPOVM(space, std::move(elements));
}

}  // namespace ssr
