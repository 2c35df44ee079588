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

#include "ssr/states.hpp"

#include <cmath>

namespace ssr::states {

namespace {

Matrix scalar(double v) { return Matrix::Constant(1, 1, Complex(v)); }

BlockedPureState one_mode_pair(double a01, double a10) {
  const SectorSpace mode = qubit_modes_space(1);
  return BlockedPureState(mode, mode, 1, {{0, scalar(a01)}, {1, scalar(a10)}});
}

}  // namespace

BlockedPureState two_coefficient(double p0) {
  if (!(p0 >= 0.0 && p0 <= 1.0)) throw Error(ErrorCode::kDomainError, "p0 must lie in [0, 1]");
  const SectorSpace mode = qubit_modes_space(1);
  std::map<int, Matrix> blocks;
  if (p0 > 0.0) blocks.emplace(0, scalar(std::sqrt(p0)));
  if (p0 < 1.0) blocks.emplace(1, scalar(std::sqrt(1.0 - p0)));
  return BlockedPureState(mode, mode, 1, std::move(blocks));
}

BlockedPureState fig1() { return two_coefficient(1.0 / 6.0); }

BlockedPureState phi_plus() { return one_mode_pair(std::sqrt(0.5), std::sqrt(0.5)); }

BlockedPureState phi_minus() { return one_mode_pair(std::sqrt(0.5), -std::sqrt(0.5)); }

BlockedPureState constant_number_singlet() {
  // Sector-1 basis of two modes, lexicographic: index 0 = |01>, index 1 = |10>.
  const SectorSpace modes = qubit_modes_space(2);
  Matrix block = Matrix::Zero(2, 2);
  block(0, 1) = std::sqrt(0.5);
  block(1, 0) = std::sqrt(0.5);
  return BlockedPureState(modes, modes, 2, {{1, block}});
}

BlockedPureState constant_number_pair() {
  const SectorSpace modes = qubit_modes_space(2);
  const Matrix block = Matrix::Identity(2, 2) * std::sqrt(0.5);
  return BlockedPureState(modes, modes, 2, {{1, block}});
}

BlockedDensity separable_ssr_example() {
  const SectorSpace mode = qubit_modes_space(1);
  Matrix one_particle(2, 2);
  one_particle << 0.5, 0.5, 0.5, 0.5;
  std::map<int, DensitySector> sectors;
  sectors.emplace(0, DensitySector{0.25, scalar(1.0)});
  sectors.emplace(1, DensitySector{0.5, one_particle});
  sectors.emplace(2, DensitySector{0.25, scalar(1.0)});
  return BlockedDensity(mode, mode, std::move(sectors));
}

}  // namespace ssr::states
