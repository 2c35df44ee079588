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

#include <random>

#include "ssr/fock.hpp"

namespace ssr {

using Rng = std::mt19937_64;

/// Matrix of i.i.d. standard complex Gaussians (E|z|^2 = 1).
Matrix random_ginibre(int rows, int cols, Rng& rng);

/// Haar-distributed unitary (QR of a Ginibre matrix with the R-diagonal
/// phases folded back into Q).
Matrix random_unitary(int d, Rng& rng);

/// Random Hermitian matrix (GUE-like), not normalized.
Matrix random_hermitian(int d, Rng& rng);

/// A^{-1/2} for Hermitian positive definite A.
Matrix inverse_sqrt_psd(const Matrix& a);

/// Unitary factor U of the polar decomposition A = U P. For singular A the
/// factor is completed arbitrarily on the kernel.
Matrix polar_unitary(const Matrix& a);

/// Largest |eigenvalue| of a Hermitian matrix.
double hermitian_spectral_norm(const Matrix& a);

/// Trace norm of a Hermitian matrix (sum of |eigenvalues|).
double hermitian_trace_norm(const Matrix& a);

}  // namespace ssr
