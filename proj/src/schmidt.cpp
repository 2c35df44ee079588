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

#include "ssr/schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

namespace ssr {

double SchmidtEntry::weight() const {
  if (const auto* u = std::get_if<UniformCoefficients>(&coefficients)) return u->weight;
  const auto& v = std::get<ExplicitCoefficients>(coefficients).values;
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

SchmidtBlocks::SchmidtBlocks(std::map<int, SchmidtEntry> sectors) : sectors_(std::move(sectors)) {
  double total = 0.0;
  for (auto& [n, entry] : sectors_) {
    if (n < 0) throw Error(ErrorCode::kInvalidInput, "negative sector index");
    if (auto* e = std::get_if<ExplicitCoefficients>(&entry.coefficients)) {
      for (double x : e->values) {
        if (!(x >= 0.0)) throw Error(ErrorCode::kInvalidInput, "negative Schmidt coefficient in sector " + std::to_string(n));
      }
      std::sort(e->values.begin(), e->values.end(), std::greater<>());
    } else {
      const auto& u = std::get<UniformCoefficients>(entry.coefficients);
      if (!(u.weight >= 0.0) || !(u.log_count >= 0.0)) {
        throw Error(ErrorCode::kInvalidInput, "invalid uniform block in sector " + std::to_string(n));
      }
    }
    total += entry.weight();
  }
  if (std::abs(total - 1.0) > tolerances().normalization) {
    throw Error(ErrorCode::kInvalidInput, "sector weights sum to " + std::to_string(total));
  }
}

const SchmidtEntry* SchmidtBlocks::sector(int n) const {
  auto it = sectors_.find(n);
  return it == sectors_.end() ? nullptr : &it->second;
}

double SchmidtBlocks::weight(int n) const {
  const SchmidtEntry* e = sector(n);
  return e == nullptr ? 0.0 : e->weight();
}

int SchmidtBlocks::max_sector() const { return sectors_.empty() ? 0 : sectors_.rbegin()->first; }

std::map<int, SectorSvd> sector_svd(const BlockedPureState& state) {
  std::map<int, SectorSvd> out;
  for (const auto& [n, m] : state.blocks()) {
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    out.emplace(n, SectorSvd{svd.matrixU(), svd.singularValues(), svd.matrixV()});
  }
  return out;
}

SchmidtBlocks schmidt_block_decompose(const BlockedPureState& state) {
  std::map<int, SchmidtEntry> sectors;
  for (const auto& [n, m] : state.blocks()) {
    Eigen::JacobiSVD<Matrix> svd(m);
    ExplicitCoefficients c;
    for (double s : svd.singularValues()) {
      if (s > kSingularValueCutoff) c.values.push_back(s * s);
    }
    if (!c.values.empty()) sectors.emplace(n, SchmidtEntry{std::move(c)});
  }
  return SchmidtBlocks(std::move(sectors));
}

SchmidtBlocks tensor_product(const SchmidtBlocks& left, const SchmidtBlocks& right) {
  std::map<int, SchmidtEntry> sectors;
  for (const auto& [a, e1] : left.sectors()) {
    for (const auto& [b, e2] : right.sectors()) {
      const auto* x = std::get_if<ExplicitCoefficients>(&e1.coefficients);
      const auto* y = std::get_if<ExplicitCoefficients>(&e2.coefficients);
      if (x == nullptr || y == nullptr) {
        throw Error(ErrorCode::kInvalidInput, "tensor product of uniform Schmidt blocks is not supported");
      }
      auto [it, inserted] = sectors.try_emplace(a + b, SchmidtEntry{ExplicitCoefficients{}});
      auto& out = std::get<ExplicitCoefficients>(it->second.coefficients).values;
      for (double l : x->values) {
        for (double m : y->values) out.push_back(l * m);
      }
    }
  }
  return SchmidtBlocks(std::move(sectors));
}

namespace {

double plogp(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

}  // namespace

double binary_entropy(double p) { return -plogp(p) - plogp(1.0 - p); }

double entropy_of_entanglement(const SchmidtBlocks& blocks) {
  double h = 0.0;
  for (const auto& [n, entry] : blocks.sectors()) {
    if (const auto* u = std::get_if<UniformCoefficients>(&entry.coefficients)) {
      // count * (w / count) * log2(count / w)
      if (u->weight > 0.0) h += u->weight * u->log_count / std::numbers::ln2 - plogp(u->weight);
    } else {
      for (double l : std::get<ExplicitCoefficients>(entry.coefficients).values) h -= plogp(l);
    }
  }
  return std::max(h, 0.0);
}

double siv_of_distribution(const std::vector<double>& p) {
  double mass = 0.0;
  double mean = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) {
    mass += p[n];
    mean += double(n) * p[n];
  }
  if (mass <= 0.0) return 0.0;
  mean /= mass;
  double var = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) var += p[n] * (double(n) - mean) * (double(n) - mean);
  return 4.0 * var / mass;
}

std::vector<double> local_number_distribution(const SchmidtBlocks& blocks) {
  std::vector<double> p(static_cast<std::size_t>(blocks.max_sector()) + 1, 0.0);
  for (const auto& [n, entry] : blocks.sectors()) p[static_cast<std::size_t>(n)] = entry.weight();
  return p;
}

std::vector<double> local_number_distribution(const BlockedPureState& state, Party party) {
  const int size = party == Party::kAlice ? state.alice().max_number() : state.bob().max_number();
  std::vector<double> p(static_cast<std::size_t>(size) + 1, 0.0);
  for (const auto& [n, m] : state.blocks()) {
    const int idx = party == Party::kAlice ? n : state.n_total() - n;
    p[static_cast<std::size_t>(idx)] += m.squaredNorm();
  }
  return p;
}

double siv(const SchmidtBlocks& blocks) { return siv_of_distribution(local_number_distribution(blocks)); }

double siv(const BlockedPureState& state) { return siv_of_distribution(local_number_distribution(state)); }

ResourcePair resource_pair(const SchmidtBlocks& blocks) {
  const std::vector<double> p = local_number_distribution(blocks);
  double mean = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) mean += double(n) * p[n];
  return {entropy_of_entanglement(blocks), siv_of_distribution(p), mean};
}

ResourcePair resource_pair(const BlockedPureState& state) { return resource_pair(schmidt_block_decompose(state)); }

}  // namespace ssr
