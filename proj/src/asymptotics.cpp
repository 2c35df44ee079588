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

#include "ssr/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ssr/majorization.hpp"
#include "ssr/states.hpp"

namespace ssr {

namespace {

double log_sum_exp(const std::vector<double>& xs) {
  double top = -std::numeric_limits<double>::infinity();
  for (double x : xs) top = std::max(top, x);
  if (std::isinf(top)) return top;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - top);
  return top + std::log(s);
}

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

double CopySpectrum::weight(int n) const {
  if (n < 0 || n > n_copies) return 0.0;
  return std::exp(log_weights[static_cast<std::size_t>(n)]);
}

double CopySpectrum::log2_count(int n) const { return log_counts[static_cast<std::size_t>(n)] / std::numbers::ln2; }

CopySpectrum n_copy_spectrum(double p0, int n_copies) {
  if (!(p0 > 0.0 && p0 < 1.0)) throw Error(ErrorCode::kDomainError, "p0 must lie strictly between 0 and 1");
  if (n_copies < 1) throw Error(ErrorCode::kDomainError, "need at least one copy");
  CopySpectrum spectrum{n_copies, p0, {}, {}};
  const double lp0 = std::log(p0);
  const double lp1 = std::log1p(-p0);
  for (int n = 0; n <= n_copies; ++n) {
    const double lc = log_binomial(n_copies, n);
    spectrum.log_counts.push_back(lc);
    spectrum.log_weights.push_back(n * lp0 + (n_copies - n) * lp1 + lc);
  }
  // Remove the O(1e-15) drift of lgamma so the weights sum to one.
  const double norm = log_sum_exp(spectrum.log_weights);
  for (double& w : spectrum.log_weights) w -= norm;
  return spectrum;
}

SchmidtBlocks copy_blocks(const CopySpectrum& spectrum) {
  std::map<int, SchmidtEntry> sectors;
  for (int n = 0; n <= spectrum.n_copies; ++n) {
    sectors.emplace(spectrum.n_copies - n,
                    SchmidtEntry{UniformCoefficients{spectrum.log_counts[static_cast<std::size_t>(n)], spectrum.weight(n)}});
  }
  return SchmidtBlocks(std::move(sectors));
}

TypicalSet typical_set(const CopySpectrum& spectrum, double delta) {
  if (!(delta > 0.0)) throw Error(ErrorCode::kDomainError, "delta must be positive");
  const int big_n = spectrum.n_copies;
  const double mean = big_n * spectrum.p0;
  const double width = delta * std::sqrt(big_n * spectrum.p0 * (1.0 - spectrum.p0));
  int lo = 0;
  int hi = big_n;
  if (std::isfinite(width)) {
    lo = static_cast<int>(std::max(0.0, std::ceil(mean - width)));
    hi = static_cast<int>(std::min<double>(big_n, std::floor(mean + width)));
  }
  if (lo > hi) lo = hi = std::clamp(static_cast<int>(std::lround(mean)), 0, big_n);

  TypicalSet set{lo, hi, 0.0, std::numeric_limits<double>::infinity(), 0.0};
  std::vector<double> logs;
  for (int n = lo; n <= hi; ++n) {
    logs.push_back(spectrum.log_weights[static_cast<std::size_t>(n)]);
    set.min_log2_count = std::min(set.min_log2_count, spectrum.log2_count(n));
    set.max_log2_count = std::max(set.max_log2_count, spectrum.log2_count(n));
  }
  set.mass = std::min(1.0, std::exp(log_sum_exp(logs)));
  return set;
}

std::vector<double> truncated_weights(const CopySpectrum& spectrum, const TypicalSet& set) {
  std::vector<double> logs;
  for (int n = set.lo; n <= set.hi; ++n) logs.push_back(spectrum.log_weights[static_cast<std::size_t>(n)]);
  const double log_mass = log_sum_exp(logs);
  std::vector<double> out(static_cast<std::size_t>(spectrum.n_copies) + 1, 0.0);
  for (int n = set.lo; n <= set.hi; ++n) {
    out[static_cast<std::size_t>(n)] = std::exp(spectrum.log_weights[static_cast<std::size_t>(n)] - log_mass);
  }
  return out;
}

namespace {

// Uniform blocks keyed by Alice's sector N - n, with `log_count(n)` natural
// log counts and truncated weights.
template <typename LogCount>
SchmidtBlocks uniform_blocks(const CopySpectrum& spectrum, const TypicalSet& set, LogCount log_count) {
  const std::vector<double> w = truncated_weights(spectrum, set);
  std::map<int, SchmidtEntry> sectors;
  for (int n = set.lo; n <= set.hi; ++n) {
    sectors.emplace(spectrum.n_copies - n, SchmidtEntry{UniformCoefficients{log_count(n), w[static_cast<std::size_t>(n)]}});
  }
  return SchmidtBlocks(std::move(sectors));
}

}  // namespace

SchmidtBlocks truncated_blocks(const CopySpectrum& spectrum, const TypicalSet& set) {
  return uniform_blocks(spectrum, set, [&](int n) { return spectrum.log_counts[static_cast<std::size_t>(n)]; });
}

DistillResult distill_rate(const CopySpectrum& spectrum, double delta) {
  const TypicalSet set = typical_set(spectrum, delta);
  if (!(set.mass > 0.0)) throw Error(ErrorCode::kEmptyTypicalSet, "typical set carries no weight");

  DistillResult out{};
  // Slack so that counts which are exact powers of two do not floor one bit
  // short after lgamma rounding.
  out.ebits = static_cast<int>(std::floor(set.min_log2_count + 1e-9));
  out.ebits_per_copy = double(out.ebits) / spectrum.n_copies;
  out.residual_siv = siv_of_distribution(truncated_weights(spectrum, set));
  out.truncation_loss = 1.0 - set.mass;

  const SchmidtBlocks source = truncated_blocks(spectrum, set);
  const double log_target = out.ebits * std::numbers::ln2;
  const SchmidtBlocks target = uniform_blocks(spectrum, set, [&](int) { return log_target; });
  out.convertible = ssr_convertible(source, {{1.0, target}});
  return out;
}

bool dilute_check(const CopySpectrum& spectrum, double delta, int pad_bits, ResourceSizing sizing) {
  if (pad_bits < 0) throw Error(ErrorCode::kDomainError, "pad_bits must be nonnegative");
  const TypicalSet set = typical_set(spectrum, delta);
  int bits = sizing == ResourceSizing::kLargestBlock ? 0 : std::numeric_limits<int>::max();
  for (int n = set.lo; n <= set.hi; ++n) {
    const int b = static_cast<int>(std::ceil(spectrum.log2_count(n) - 1e-9));
    bits = sizing == ResourceSizing::kLargestBlock ? std::max(bits, b) : std::min(bits, b);
  }
  const double log_resource = (bits + pad_bits) * std::numbers::ln2;
  const SchmidtBlocks resource = uniform_blocks(spectrum, set, [&](int) { return log_resource; });
  return ssr_convertible(resource, {{1.0, truncated_blocks(spectrum, set)}});
}

GaussianFit gaussian_fit(const CopySpectrum& spectrum) {
  if (spectrum.n_copies < 16) throw Error(ErrorCode::kDomainError, "Gaussian comparison needs N >= 16");
  double mean = 0.0;
  for (int n = 0; n <= spectrum.n_copies; ++n) mean += n * spectrum.weight(n);
  double variance = 0.0;
  for (int n = 0; n <= spectrum.n_copies; ++n) variance += (n - mean) * (n - mean) * spectrum.weight(n);
  double dev = 0.0;
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * variance);
  for (int n = 0; n <= spectrum.n_copies; ++n) {
    const double density = norm * std::exp(-(n - mean) * (n - mean) / (2.0 * variance));
    dev = std::max(dev, std::abs(spectrum.weight(n) - density));
  }
  return {mean, variance, dev};
}

double remainder_entropy(const CopySpectrum& spectrum, double delta) {
  double h = 0.0;
  for (double w : truncated_weights(spectrum, typical_set(spectrum, delta))) {
    if (w > 0.0) h -= w * std::log2(w);
  }
  return h;
}

DecompositionAccounting qubit_decomposition(double p0, int n_copies) {
  if (n_copies < 1) throw Error(ErrorCode::kDomainError, "need at least one copy");
  const ResourcePair base = resource_pair(states::two_coefficient(p0));
  const ResourcePair singlet = resource_pair(states::constant_number_singlet());
  const ResourcePair pair = resource_pair(states::phi_plus());

  DecompositionAccounting out{};
  out.singlet_copies = n_copies * (base.eoe - base.siv);
  out.pair_copies = n_copies * base.siv;
  out.total_eoe = out.singlet_copies * singlet.eoe + out.pair_copies * pair.eoe;
  out.total_siv = out.singlet_copies * singlet.siv + out.pair_copies * pair.siv;
  out.expected_eoe = n_copies * base.eoe;
  out.expected_siv = n_copies * base.siv;
  return out;
}

}  // namespace ssr
