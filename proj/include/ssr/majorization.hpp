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

// Pure-state convertibility under local operations that commute with the
// local particle number. A source converts into an ensemble of targets iff
// in every sector n the source coefficients are majorized by the
// probability-weighted sum of the (sorted) target coefficients.

#include <cstdint>
#include <span>
#include <vector>

#include "ssr/fock.hpp"
#include "ssr/schmidt.hpp"

namespace ssr {

inline constexpr double kMajorizationTolerance = 1e-8;

/// Nonincreasing step vector: `count` copies of `value` per run. Counts are
/// real so that uniform blocks with astronomically many coefficients can be
/// compared without expansion.
struct Run {
  double value;
  double count;
};
using StepVector = std::vector<Run>;

StepVector to_step_vector(std::span<const double> values);
StepVector to_step_vector(const SchmidtEntry& entry);

/// Sum of sorted step vectors, each scaled by its weight.
StepVector weighted_sum(const std::vector<std::pair<double, StepVector>>& terms);

double total(const StepVector& v);

/// min_k ( S_y(k) - S_x(k) ) over all partial sums of the nonincreasing
/// rearrangements. Nonnegative (within tolerance) iff x is majorized by y
/// once the totals agree.
double majorization_slack(const StepVector& x, const StepVector& y);

/// True iff x is majorized by y (x ≺ y). Vectors are zero-padded; totals
/// differing by more than kMajorizationTolerance raise kTotalMismatch.
bool is_majorized(std::span<const double> x, std::span<const double> y);
bool is_majorized(const StepVector& x, const StepVector& y);

struct ConversionTarget {
  double prob;
  SchmidtBlocks blocks;
};

struct SectorVerdict {
  int n;
  double source_weight;
  double target_weight;
  double slack;  // majorization_slack, meaningful only when weights agree
  bool ok;
};

struct ConvertibilityReport {
  bool convertible;
  std::vector<SectorVerdict> sectors;
};

ConvertibilityReport ssr_convertibility(const SchmidtBlocks& source, const std::vector<ConversionTarget>& targets);
bool ssr_convertible(const SchmidtBlocks& source, const std::vector<ConversionTarget>& targets);

struct ProtocolOutcome {
  int target_index;
  /// Unitary applied by Bob, keyed by Bob's local sector.
  BlockOperator bob_correction;
};

/// Alice measures `povm` and announces the outcome; Bob applies the recorded
/// correction. Every outcome leaves the target state.
struct ConversionProtocol {
  LocalPOVM povm;
  std::vector<ProtocolOutcome> outcomes;
};

/// Deterministic conversion source -> target (single target). Per sector the
/// source coefficients are written as a doubly stochastic image of the
/// target coefficients (T-transforms), which gives a local measurement
/// producing the target in every branch; the per-sector branch
/// probabilities are then equalized by splitting elements along the common
/// refinement of the sectors' probability vectors. Raises kNotConvertible
/// when the majorization criterion fails.
ConversionProtocol build_protocol(const BlockedPureState& source, const BlockedPureState& target);

struct PovmOutcome {
  double prob;
  BlockedPureState post_state;
};

/// Applies M (x) 1 and renormalizes. Raises kZeroProbability below 1e-14.
PovmOutcome apply_povm_outcome(const BlockedPureState& state, const BlockOperator& element);

/// Applies Bob's block-diagonal operator B as 1 (x) B.
BlockedPureState apply_bob_operator(const BlockedPureState& state, const BlockOperator& op);

/// |<a|b>|^2 for states on the same spaces and global sector.
double fidelity(const BlockedPureState& a, const BlockedPureState& b);

struct OutcomeCheck {
  double prob;
  double fidelity;
};
/// Runs the protocol on `source` and reports each branch's probability and
/// fidelity with `target` after Bob's correction. Zero-probability branches
/// report fidelity 1.
std::vector<OutcomeCheck> run_protocol(const ConversionProtocol& protocol, const BlockedPureState& source,
                                       const BlockedPureState& target);

struct MonotoneCheck {
  double lhs;
  double rhs;
  bool ok;
};

/// Expected post-measurement number variance against V(psi)/4.
MonotoneCheck siv_monotone_check(const BlockedPureState& state, const LocalPOVM& povm);

/// Largest |<s1|A(x)B|s1> - <s2|A(x)B|s2>| over sampled sector-block-diagonal
/// Hermitian A, B of unit spectral norm. The normalized local number
/// observables are always included among the candidates.
double data_hiding_distance(const BlockedPureState& s1, const BlockedPureState& s2, int trials, std::uint64_t seed);

/// Same statistic with A, B drawn as arbitrary Hermitian matrices on the full
/// local spaces, i.e. without the superselection constraint.
double unrestricted_hiding_distance(const BlockedPureState& s1, const BlockedPureState& s2, int trials,
                                    std::uint64_t seed);

}  // namespace ssr
