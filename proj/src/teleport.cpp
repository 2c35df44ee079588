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

#include "ssr/teleport.hpp"

#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <string>

#include "ssr/linalg.hpp"

namespace ssr {

namespace {

// Sparse joint state over (a, abar, b, c) occupation numbers.
using Registers = std::array<int, 4>;
using SparseState = std::map<Registers, Complex>;

SparseState initial_state(const TeleportInstance& inst) {
  const int big_n = inst.n_particles();
  const int m = inst.m_resource;
  const double r = 1.0 / std::sqrt(m + 1.0);
  SparseState s;
  for (int j = 0; j <= big_n; ++j) {
    for (int i = 0; i <= m; ++i) s[{j, i, m - i, big_n - j}] = inst.alpha[static_cast<std::size_t>(j)] * r;
  }
  return s;
}

Complex fourier_phase(int l, int k, int period) {
  return std::polar(1.0, 2.0 * std::numbers::pi * l * k / period);
}

}  // namespace

TeleportInstance make_teleport_instance(std::vector<Complex> alpha, int m_resource) {
  if (alpha.empty()) throw Error(ErrorCode::kInvalidInput, "alpha needs at least one amplitude");
  if (m_resource < 0) throw Error(ErrorCode::kInvalidInput, "resource size M must be nonnegative");
  double norm = 0.0;
  for (const Complex& a : alpha) norm += std::norm(a);
  if (std::abs(norm - 1.0) > tolerances().normalization) {
    throw Error(ErrorCode::kInvalidInput, "alpha has squared norm " + std::to_string(norm));
  }
  return TeleportInstance{std::move(alpha), m_resource};
}

std::vector<Complex> random_alpha(int n_particles, std::uint64_t seed) {
  if (n_particles < 0) throw Error(ErrorCode::kInvalidInput, "N must be nonnegative");
  Rng rng(seed);
  const Matrix g = random_ginibre(n_particles + 1, 1, rng);
  const double norm = g.norm();
  std::vector<Complex> out;
  for (int j = 0; j <= n_particles; ++j) out.push_back(g(j, 0) / norm);
  return out;
}

int sector_low(int n, int /*n_particles*/, int m_resource) { return std::max(0, n - m_resource); }
int sector_high(int n, int n_particles, int /*m_resource*/) { return std::min(n, n_particles); }

std::vector<Vector> bell_basis(int n, int n_particles, int m_resource) {
  if (n < 0 || n > n_particles + m_resource) throw Error(ErrorCode::kInvalidInput, "sector out of range");
  const int lo = sector_low(n, n_particles, m_resource);
  const int hi = sector_high(n, n_particles, m_resource);
  const int period = hi - lo + 1;
  std::vector<Vector> basis;
  for (int k = 0; k < period; ++k) {
    Vector v(period);
    for (int l = lo; l <= hi; ++l) v(l - lo) = fourier_phase(l, k, period) / std::sqrt(double(period));
    basis.push_back(std::move(v));
  }
  return basis;
}

Matrix alice_measurement_operator(int n, int k, int n_particles, int m_resource) {
  const int lo = sector_low(n, n_particles, m_resource);
  const Vector chi = bell_basis(n, n_particles, m_resource).at(static_cast<std::size_t>(k));
  Vector full = Vector::Zero((n_particles + 1) * (m_resource + 1));
  for (int idx = 0; idx < chi.size(); ++idx) {
    const int l = lo + idx;
    full(l * (m_resource + 1) + (n - l)) = chi(idx);
  }
  return full * full.adjoint();
}

Matrix bob_correction(int n, int k, int n_particles, int m_resource) {
  const int period = sector_high(n, n_particles, m_resource) - sector_low(n, n_particles, m_resource) + 1;
  Matrix u = Matrix::Identity(m_resource + 1, m_resource + 1);
  for (int b = 0; b <= m_resource; ++b) u(b, b) = fourier_phase(b - (m_resource - n), k, period);
  return u;
}

std::vector<TeleportOutcome> run_teleport(const TeleportInstance& instance) {
  const int big_n = instance.n_particles();
  const int m = instance.m_resource;
  const SparseState joint = initial_state(instance);

  std::vector<TeleportOutcome> outcomes;
  for (int n = 0; n <= big_n + m; ++n) {
    const int lo = sector_low(n, big_n, m);
    const int hi = sector_high(n, big_n, m);
    const std::vector<Vector> basis = bell_basis(n, big_n, m);
    for (int k = 0; k < static_cast<int>(basis.size()); ++k) {
      // <chi_k| on Alice's registers leaves a Bob-Charlie vector.
      std::map<std::pair<int, int>, Complex> bc;
      for (const auto& [reg, amp] : joint) {
        if (reg[0] + reg[1] != n) continue;
        bc[{reg[2], reg[3]}] += std::conj(basis[static_cast<std::size_t>(k)](reg[0] - lo)) * amp;
      }
      double prob = 0.0;
      for (const auto& [key, amp] : bc) prob += std::norm(amp);

      TeleportOutcome out{n, k, prob, 0.0, lo == 0 && hi == big_n, Vector::Zero(big_n + 1)};
      if (prob > 0.0) {
        const Matrix correction = bob_correction(n, k, big_n, m);
        const int shift = m - n;
        for (const auto& [key, amp] : bc) {
          const auto [b, c] = key;
          const int j = b - shift;
          const Complex corrected = correction(b, b) * amp;
          if (j < 0 || j > big_n || c != big_n - j) {
            if (std::abs(corrected) > 1e-12) throw Error(ErrorCode::kInvalidInput, "relabeling left the code space");
            continue;
          }
          out.post_state(j) += corrected;
        }
        out.post_state /= std::sqrt(prob);
        Complex overlap(0.0);
        for (int j = 0; j <= big_n; ++j) overlap += std::conj(instance.alpha[static_cast<std::size_t>(j)]) * out.post_state(j);
        out.post_fidelity = std::norm(overlap);
      }
      outcomes.push_back(std::move(out));
    }
  }
  return outcomes;
}

double success_probability(int n_particles, int m_resource) {
  if (n_particles < 0 || m_resource < 0) throw Error(ErrorCode::kInvalidInput, "N and M must be nonnegative");
  return std::max(0.0, 1.0 - double(n_particles) / (m_resource + 1.0));
}

double sample_success_rate(const TeleportInstance& instance, int shots, std::uint64_t seed) {
  if (shots < 1) throw Error(ErrorCode::kInvalidInput, "need at least one shot");
  const std::vector<TeleportOutcome> outcomes = run_teleport(instance);
  std::vector<double> probs;
  for (const auto& o : outcomes) probs.push_back(o.prob);
  std::discrete_distribution<std::size_t> pick(probs.begin(), probs.end());
  Rng rng(seed);
  int hits = 0;
  for (int s = 0; s < shots; ++s) hits += outcomes[pick(rng)].success ? 1 : 0;
  return double(hits) / shots;
}

std::vector<std::pair<int, std::int64_t>> scaling_table(std::span<const int> n_list, double target_success) {
  if (!(target_success > 0.0 && target_success < 1.0)) {
    throw Error(ErrorCode::kDomainError, "target success must lie strictly between 0 and 1");
  }
  auto success = [](int n, std::int64_t m) { return std::max(0.0, 1.0 - double(n) / (double(m) + 1.0)); };
  const double slack = 1e-12;
  std::vector<std::pair<int, std::int64_t>> out;
  for (int n : n_list) {
    if (n < 0) throw Error(ErrorCode::kInvalidInput, "N must be nonnegative");
    const double guess = std::ceil(n / (1.0 - target_success) - 1.0);
    if (!(guess < 9.0e18)) throw Error(ErrorCode::kDomainError, "required resource exceeds 64-bit range");
    auto m = std::max<std::int64_t>(0, static_cast<std::int64_t>(guess));
    while (success(n, m) < target_success - slack) ++m;
    while (m > 0 && success(n, m - 1) >= target_success - slack) --m;
    out.emplace_back(n, m);
  }
  return out;
}

}  // namespace ssr
