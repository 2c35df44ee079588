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

// Many copies of sqrt(p0)|0>_A|1>_B + sqrt(p1)|1>_A|0>_B, handled purely at
// the level of the copy-number spectrum. Component n (n copies in the p0
// branch) is maximally entangled with Schmidt number C(N, n) and weight
//   c_n = p0^n p1^(N-n) C(N, n),
// and Alice holds N - n particles in it. Weights and counts are kept as
// natural logarithms throughout.

#include "ssr/schmidt.hpp"

namespace ssr {

struct CopySpectrum {
  int n_copies;
  double p0;
  std::vector<double> log_weights;  // ln c_n, n = 0..N
  std::vector<double> log_counts;   // ln C(N, n)

  double weight(int n) const;
  double log2_count(int n) const;
};

/// Raises kDomainError unless 0 < p0 < 1 and n_copies >= 1.
CopySpectrum n_copy_spectrum(double p0, int n_copies);

/// Uniform Schmidt blocks of the full N-copy state, keyed by Alice's sector.
SchmidtBlocks copy_blocks(const CopySpectrum& spectrum);

/// Copy numbers within delta standard deviations of the mean N p0. If that
/// window holds no integer the set falls back to {round(N p0)}.
struct TypicalSet {
  int lo;
  int hi;
  double mass;
  double min_log2_count;
  double max_log2_count;

  int size() const { return hi - lo + 1; }
  bool contains(int n) const { return n >= lo && n <= hi; }
};

TypicalSet typical_set(const CopySpectrum& spectrum, double delta);

/// c~_n = c_n / mass for n in the set, zero elsewhere (indexed by n = 0..N).
std::vector<double> truncated_weights(const CopySpectrum& spectrum, const TypicalSet& set);

/// Uniform blocks of the truncated, renormalized N-copy state.
SchmidtBlocks truncated_blocks(const CopySpectrum& spectrum, const TypicalSet& set);

struct DistillResult {
  int ebits;                 // floor(min over the set of log2 C(N, n))
  double ebits_per_copy;     // ebits / N
  double residual_siv;       // SiV of the truncated remainder sum_n c~_n |n>|N-n>
  double truncation_loss;    // 1 - mass
  bool convertible;          // truncated blocks -> 2^ebits uniform blocks
};

/// Raises kEmptyTypicalSet when the set carries no weight.
DistillResult distill_rate(const CopySpectrum& spectrum, double delta);

enum class ResourceSizing {
  kLargestBlock,   // 2^(max ceil log2 C(N, n)) coefficients per sector
  kSmallestBlock,  // 2^(min ceil log2 C(N, n)); undersized unless p0 = 1/2
};

/// Whether uniform resource blocks of 2^(bits + pad_bits) coefficients with
/// the truncated weights convert back into the truncated N-copy blocks.
bool dilute_check(const CopySpectrum& spectrum, double delta, int pad_bits,
                  ResourceSizing sizing = ResourceSizing::kLargestBlock);

struct GaussianFit {
  double mean;
  double variance;
  double max_abs_dev;  // max_n |c_n - normal density(n)|
};

/// Raises kDomainError for N < 16.
GaussianFit gaussian_fit(const CopySpectrum& spectrum);

/// Entropy of entanglement (bits) of the remainder sum_n sqrt(c~_n)|N-n>|n>,
/// i.e. the Shannon entropy of c~.
double remainder_entropy(const CopySpectrum& spectrum, double delta);

/// Resource totals of the qubit decomposition of N copies into N(E - V)
/// constant-number singlets plus N V copies of |01> + |10>.
struct DecompositionAccounting {
  double singlet_copies;
  double pair_copies;
  double total_eoe;
  double total_siv;
  double expected_eoe;  // N E(phi)
  double expected_siv;  // N V(phi)
};

DecompositionAccounting qubit_decomposition(double p0, int n_copies);

}  // namespace ssr
