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

#include "ssr/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>

#include "ssr/asymptotics.hpp"
#include "ssr/formation.hpp"
#include "ssr/linalg.hpp"
#include "ssr/majorization.hpp"
#include "ssr/schmidt.hpp"
#include "ssr/serialization.hpp"
#include "ssr/states.hpp"
#include "ssr/teleport.hpp"

namespace ssr {

namespace {

struct Verdict {
  bool passed;
  std::string detail;
};

std::string fmt(double x, int precision = 6) {
  std::ostringstream s;
  s << std::setprecision(precision) << x;
  return s.str();
}

SectorSpace random_space(Rng& rng, int max_total) {
  std::uniform_int_distribution<int> len(1, 3);
  std::uniform_int_distribution<int> d(1, 3);
  for (;;) {
    std::vector<int> dims(static_cast<std::size_t>(len(rng)));
    for (int& x : dims) x = d(rng);
    int tot = 0;
    for (int x : dims) tot += x;
    if (tot <= max_total) return SectorSpace(dims);
  }
}

int random_total(const SectorSpace& a, const SectorSpace& b, Rng& rng) {
  const int hi = a.max_number() + b.max_number();
  std::uniform_int_distribution<int> pick(0, hi);
  for (;;) {
    const int n = pick(rng);
    if (!admissible_sectors(a, b, n).empty()) return n;
  }
}

// ---------------------------------------------------------------------------

Verdict siv_normalization() {
  const double v_pair = siv(states::phi_plus());
  const double v_const = siv(states::constant_number_singlet());
  const bool ok = std::abs(v_pair - 1.0) <= 1e-12 && std::abs(v_const) <= 1e-12;
  return {ok, "V(|01>+|10>)=" + fmt(v_pair, 15) + " V(constant number)=" + fmt(v_const, 3)};
}

Verdict teleportation(std::uint64_t seed) {
  double worst_prob = 0.0;
  double worst_fid = 1.0;
  int instances = 0;
  for (int n = 0; n <= 8; ++n) {
    for (int m = n; m <= 40; ++m) {
      const int inputs = (m == 40) ? 100 : 1;
      for (int r = 0; r < inputs; ++r) {
        const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(n * 1000 + m) * 1000 + r);
        const TeleportInstance inst = make_teleport_instance(random_alpha(n, s), m);
        double p = 0.0;
        for (const TeleportOutcome& o : run_teleport(inst)) {
          if (!o.success) continue;
          p += o.prob;
          if (o.prob > 0.0) worst_fid = std::min(worst_fid, o.post_fidelity);
        }
        worst_prob = std::max(worst_prob, std::abs(p - (1.0 - double(n) / (m + 1.0))));
        ++instances;
      }
    }
  }
  const bool ok = worst_prob <= 1e-12 && worst_fid >= 1.0 - 1e-10;
  return {ok, std::to_string(instances) + " instances, max |p - formula|=" + fmt(worst_prob, 3) +
                  " min fidelity=" + fmt(worst_fid, 15)};
}

Verdict siv_monotonicity(std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_int_distribution<int> outcomes(2, 4);
  double worst = std::numeric_limits<double>::infinity();
  int pairs = 0;
  while (pairs < 1000) {
    const SectorSpace a = random_space(rng, 4);
    const SectorSpace b = random_space(rng, 3);
    if (a.total_dim() * b.total_dim() > 12) continue;
    const int n = random_total(a, b, rng);
    const BlockedPureState psi = random_state(a, b, n, rng());
    const LocalPOVM povm = random_povm(a, outcomes(rng), rng());
    const MonotoneCheck c = siv_monotone_check(psi, povm);
    worst = std::min(worst, c.rhs - c.lhs);
    ++pairs;
  }
  return {worst >= -1e-9, std::to_string(pairs) + " pairs, min slack=" + fmt(worst, 3)};
}

// Target with the source's sector weights and tilted (majorizing) Schmidt
// coefficients, in fresh random local bases.
BlockedPureState majorizing_target(const BlockedPureState& src, double tilt, Rng& rng) {
  std::map<int, Matrix> blocks;
  for (const auto& [n, svd] : sector_svd(src)) {
    const Matrix& m = *src.block(n);
    Eigen::VectorXd lam = svd.singular.array().square();
    const double w = lam.sum();
    Eigen::VectorXd tilted = lam.array().pow(tilt);
    tilted *= w / tilted.sum();
    const Matrix u = random_unitary(static_cast<int>(m.rows()), rng);
    const Matrix v = random_unitary(static_cast<int>(m.cols()), rng);
    Matrix t = Matrix::Zero(m.rows(), m.cols());
    for (Eigen::Index k = 0; k < tilted.size(); ++k) t += std::sqrt(tilted(k)) * u.col(k) * v.col(k).adjoint();
    blocks.emplace(n, std::move(t));
  }
  return normalize(BlockedPureState(src.alice(), src.bob(), src.n_total(), std::move(blocks)));
}

Verdict majorization_protocol(std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> tilt(1.0, 3.0);
  int yes = 0;
  int no = 0;
  double worst_fid = 1.0;
  std::string failure;
  for (int trial = 0; trial < 200 && failure.empty(); ++trial) {
    const SectorSpace a = random_space(rng, 8);
    const SectorSpace b = random_space(rng, 8);
    const int n = random_total(a, b, rng);
    const BlockedPureState src = random_state(a, b, n, rng());
    BlockedPureState tgt = (trial % 3 == 2) ? random_state(a, b, n, rng()) : majorizing_target(src, tilt(rng), rng);
    const SchmidtBlocks sb = schmidt_block_decompose(src);
    const ConvertibilityReport rep = ssr_convertibility(sb, {{1.0, schmidt_block_decompose(tgt)}});
    if (rep.convertible) {
      ++yes;
      const ConversionProtocol protocol = build_protocol(src, tgt);
      for (const OutcomeCheck& c : run_protocol(protocol, src, tgt)) {
        if (c.prob > 1e-14) worst_fid = std::min(worst_fid, c.fidelity);
      }
    } else {
      ++no;
      bool explained = false;
      for (const SectorVerdict& v : rep.sectors) {
        explained = explained || std::abs(v.source_weight - v.target_weight) > kMajorizationTolerance ||
                    v.slack < -kMajorizationTolerance;
      }
      bool refused = false;
      try {
        build_protocol(src, tgt);
      } catch (const Error& e) {
        refused = e.code() == ErrorCode::kNotConvertible;
      }
      if (!explained || !refused) failure = "trial " + std::to_string(trial) + " rejected without a witness";
    }
  }
  const bool ok = failure.empty() && worst_fid >= 1.0 - 1e-9 && yes > 0 && no > 0;
  return {ok, failure.empty() ? std::to_string(yes) + " convertible, " + std::to_string(no) +
                                    " rejected, min fidelity=" + fmt(worst_fid, 12)
                              : failure};
}

Verdict distillation() {
  const double p0 = 1.0 / 3.0;
  const double delta = 3.0;
  const double h = binary_entropy(p0);
  double prev = -1.0;
  bool monotone = true;
  bool convertible = true;
  double loss = 0.0;
  double rate256 = 0.0;
  double var_err = 0.0;
  for (int n : {64, 128, 256}) {
    const CopySpectrum spectrum = n_copy_spectrum(p0, n);
    const DistillResult d = distill_rate(spectrum, delta);
    monotone = monotone && d.ebits_per_copy >= prev;
    prev = d.ebits_per_copy;
    convertible = convertible && d.convertible && dilute_check(spectrum, delta, 0);
    loss = std::max(loss, d.truncation_loss);
    if (n == 256) rate256 = d.ebits_per_copy;
    const GaussianFit g = gaussian_fit(spectrum);
    var_err = std::max(var_err, std::abs(g.variance - n * p0 * (1.0 - p0)));
  }
  const bool ok = std::abs(h - rate256) <= 0.15 && monotone && loss <= 0.01 && convertible && var_err <= 1e-9;
  return {ok, "rate(256)=" + fmt(rate256) + " H=" + fmt(h) + " loss=" + fmt(loss, 3) +
                  " variance err=" + fmt(var_err, 3) + (monotone ? "" : " non-monotone") +
                  (convertible ? "" : " conversion failed")};
}

Verdict data_hiding(std::uint64_t seed) {
  const double restricted = data_hiding_distance(states::phi_plus(), states::phi_minus(), 500, seed);
  const double free = unrestricted_hiding_distance(states::phi_plus(), states::phi_minus(), 100, seed);
  return {restricted <= 1e-10 && free > 0.4,
          "restricted=" + fmt(restricted, 3) + " unrestricted=" + fmt(free, 4)};
}

// Best ensemble value over a 200 x 200 grid of two-member rotations of a
// rank-2 sector, measured through the public single-state measures. Member
// swaps and phases identify (t, phi) with (pi/2 - t, phi + pi), so phi only
// needs to cover [0, pi).
double grid_oracle(const BlockedDensity& rho, int n_total, Measure which) {
  const Matrix& sector = rho.sectors().at(n_total).rho;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sector);
  const Eigen::Index d = sector.rows();
  const Vector w0 = eig.eigenvectors().col(d - 1) * std::sqrt(std::max(0.0, eig.eigenvalues()(d - 1)));
  const Vector w1 = eig.eigenvectors().col(d - 2) * std::sqrt(std::max(0.0, eig.eigenvalues()(d - 2)));
  constexpr int kGrid = 200;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kGrid; ++i) {
    const double t = 0.5 * std::numbers::pi * i / (kGrid - 1);
    for (int j = 0; j < kGrid; ++j) {
      const Complex ph = std::polar(1.0, std::numbers::pi * j / kGrid);
      const Vector m0 = std::cos(t) * w0 - ph * std::sin(t) * w1;
      const Vector m1 = std::conj(ph) * std::sin(t) * w0 + std::cos(t) * w1;
      double v = 0.0;
      for (const Vector* m : {&m0, &m1}) {
        const double p = m->squaredNorm();
        if (p > 1e-14) v += p * measure_of(unflatten(rho.alice(), rho.bob(), n_total, *m / std::sqrt(p)), which);
      }
      best = std::min(best, v);
    }
  }
  return best;
}

BlockedDensity random_rank2_sector(std::uint64_t seed) {
  const SectorSpace modes = qubit_modes_space(2);
  const BlockedPureState a = random_state(modes, modes, 2, derive_seed(seed, 0));
  const BlockedPureState b = random_state(modes, modes, 2, derive_seed(seed, 1));
  const Vector va = flatten(a);
  const Vector vb = flatten(b);
  const Matrix rho = 0.6 * va * va.adjoint() + 0.4 * vb * vb.adjoint();
  return BlockedDensity(modes, modes, {{2, DensitySector{1.0, rho}}});
}

Verdict mixed_formation(const std::filesystem::path& fixtures, std::uint64_t seed) {
  const std::filesystem::path file = fixtures / "paper_rho.json";
  const bool from_file = !fixtures.empty() && std::filesystem::exists(file);
  const BlockedDensity rho = from_file ? read_density(file) : states::separable_ssr_example();
  FormationOptions opts;
  opts.seed = seed;
  const FormationResult ef = formation_measure(rho, Measure::kEoe, opts);
  const FormationResult vf = formation_measure(rho, Measure::kSiv, opts);
  const double recon = std::max(reconstruction_distance(rho, ef.best_ensemble),
                                reconstruction_distance(rho, vf.best_ensemble));

  const BlockedDensity r2 = random_rank2_sector(seed);
  FormationOptions k2 = opts;
  k2.ensemble_size = 2;
  double grid_gap = 0.0;
  for (Measure m : {Measure::kEoe, Measure::kSiv}) {
    grid_gap = std::max(grid_gap, std::abs(formation_measure(r2, m, k2).value - grid_oracle(r2, 2, m)));
  }
  const bool ok = std::abs(ef.value - 0.5) <= 1e-6 && std::abs(vf.value - 0.5) <= 1e-6 && recon <= 1e-8 &&
                  grid_gap <= 1e-4;
  return {ok, std::string(from_file ? "fixture" : "built-in") + " E_F=" + fmt(ef.value, 10) +
                  " V_F=" + fmt(vf.value, 10) + " reconstruction=" + fmt(recon, 3) +
                  " rank-2 grid gap=" + fmt(grid_gap, 3)};
}

Verdict projection_bound(std::uint64_t seed) {
  bool ok = true;
  int checked = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= 6; ++n) {
    for (int s = 0; s < 4; ++s) {
      const ProductState ps = random_product_state(n, derive_seed(seed, static_cast<std::uint64_t>(n * 16 + s)));
      for (int sector = 0; sector <= 2 * n; ++sector) {
        const ProjectionBound b = projection_entanglement_bound(ps, sector);
        ok = ok && b.rank_ok && b.eoe_ok && b.eoe <= b.bound + 1e-12;
        worst_margin = std::min(worst_margin, b.bound - b.eoe);
        ++checked;
      }
    }
  }
  return {ok, std::to_string(checked) + " projections, min log2(N+1) - EoE=" + fmt(worst_margin, 4)};
}

Verdict qubit_decomposition_check(std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 10000; ++i) {
    double p = u(rng);
    if (p <= 0.0) p = 0.5;
    worst = std::min(worst, binary_entropy(p) - 4.0 * p * (1.0 - p));
  }
  const double at_half = std::abs(binary_entropy(0.5) - 1.0);
  double acct = 0.0;
  for (double p0 : {0.1, 1.0 / 6.0, 1.0 / 3.0, 0.5, 0.8}) {
    for (int n : {1, 10, 100}) {
      const DecompositionAccounting c = qubit_decomposition(p0, n);
      acct = std::max({acct, std::abs(c.total_eoe - c.expected_eoe), std::abs(c.total_siv - c.expected_siv)});
    }
  }
  return {worst >= -1e-15 && at_half <= 1e-12 && acct <= 1e-9,
          "min H(p)-4p(1-p)=" + fmt(worst, 3) + " accounting err=" + fmt(acct, 3)};
}

Verdict additivity(std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const SectorSpace a1 = random_space(rng, 4);
    const SectorSpace b1 = random_space(rng, 4);
    const SectorSpace a2 = random_space(rng, 4);
    const SectorSpace b2 = random_space(rng, 4);
    const BlockedPureState x = random_state(a1, b1, random_total(a1, b1, rng), rng());
    const BlockedPureState y = random_state(a2, b2, random_total(a2, b2, rng), rng());
    const ResourcePair rx = resource_pair(x);
    const ResourcePair ry = resource_pair(y);
    const ResourcePair rxy = resource_pair(tensor_product(x, y));
    worst = std::max({worst, std::abs(rxy.eoe - rx.eoe - ry.eoe), std::abs(rxy.siv - rx.siv - ry.siv)});
  }
  return {worst <= 1e-9, "100 pairs, max deviation=" + fmt(worst, 3)};
}

}  // namespace

bool run_acceptance(std::ostream& out, const std::filesystem::path& fixture_dir, std::uint64_t seed,
                    std::vector<CriterionResult>* results) {
  struct Criterion {
    int id;
    const char* name;
    double budget;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "siv-normalization", 1.0, [] { return siv_normalization(); }},
      {2, "teleportation-formula", 30.0, [&] { return teleportation(derive_seed(seed, 2)); }},
      {3, "siv-monotonicity", 60.0, [&] { return siv_monotonicity(derive_seed(seed, 3)); }},
      {4, "majorization-protocol", 120.0, [&] { return majorization_protocol(derive_seed(seed, 4)); }},
      {5, "typical-subspace-rates", 10.0, [] { return distillation(); }},
      {6, "data-hiding", 10.0, [&] { return data_hiding(derive_seed(seed, 6)); }},
      {7, "mixed-state-formation", 300.0, [&] { return mixed_formation(fixture_dir, derive_seed(seed, 7)); }},
      {8, "projection-bound", 60.0, [&] { return projection_bound(derive_seed(seed, 8)); }},
      {9, "qubit-decomposition", 5.0, [&] { return qubit_decomposition_check(derive_seed(seed, 9)); }},
      {10, "additivity", 30.0, [&] { return additivity(derive_seed(seed, 10)); }},
  };
  bool all = true;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget) {
      v.passed = false;
      v.detail += " (over time budget)";
    }
    all = all && v.passed;
    out << (v.passed ? "PASS" : "FAIL") << "  [" << std::setw(2) << c.id << "] " << std::left << std::setw(24)
        << c.name << std::right << std::fixed << std::setprecision(2) << std::setw(8) << secs << "s / "
        << c.budget << "s  " << v.detail << '\n';
    out.unsetf(std::ios::fixed);
    out << std::flush;
    if (results) results->push_back({c.id, c.name, v.passed, secs, c.budget, v.detail});
  }
  out << (all ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED") << '\n';
  return all;
}

}  // namespace ssr
