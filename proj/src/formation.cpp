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

#include "ssr/formation.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ssr/linalg.hpp"
#include "ssr/parallel.hpp"
#include "ssr/schmidt.hpp"

namespace ssr {

namespace {

constexpr double kEigenCutoff = 1e-12;
constexpr double kMemberCutoff = 1e-14;

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// -sum lambda log2 lambda over the squared singular values of m.
double entropy_term(const Eigen::Ref<const Matrix>& m) {
  if (m.rows() == 1 || m.cols() == 1) return -xlog2x(m.squaredNorm());
  Eigen::JacobiSVD<Matrix> svd(m);
  double h = 0.0;
  for (double s : svd.singularValues()) h -= xlog2x(s * s);
  return h;
}

MemberCost sector_cost(const SectorLayout& layout, Measure which) {
  if (which == Measure::kSiv) {
    return [layout](const Vector& v) {
      double p = 0.0;
      double first = 0.0;
      std::vector<double> w;
      for (const auto& g : layout.groups) {
        const double x = v.segment(g.offset, g.rows * g.cols).squaredNorm();
        w.push_back(x);
        p += x;
        first += g.n_alice * x;
      }
      if (p <= 0.0) return 0.0;
      const double mean = first / p;
      double var = 0.0;
      for (std::size_t i = 0; i < w.size(); ++i) {
        const double d = layout.groups[i].n_alice - mean;
        var += w[i] * d * d;
      }
      return 4.0 * var;
    };
  }
  return [layout](const Vector& v) {
    const double p = v.squaredNorm();
    if (p <= 0.0) return 0.0;
    double h = 0.0;
    for (const auto& g : layout.groups) {
      // Row-major block inside the flattened vector.
      Matrix block(g.rows, g.cols);
      for (int i = 0; i < g.rows; ++i) {
        for (int j = 0; j < g.cols; ++j) block(i, j) = v(g.offset + i * g.cols + j);
      }
      h += entropy_term(block);
    }
    return std::max(0.0, h + xlog2x(p));
  };
}

struct Eigenbasis {
  Matrix weighted;  // columns sqrt(e_k) v_k, e_k descending
  int rank;
};

Eigenbasis weighted_eigenbasis(const Matrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(rho);
  std::vector<int> keep;
  for (int k = static_cast<int>(eig.eigenvalues().size()) - 1; k >= 0; --k) {
    if (eig.eigenvalues()(k) > kEigenCutoff) keep.push_back(k);
  }
  Matrix w(rho.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    w.col(static_cast<Eigen::Index>(c)) = eig.eigenvectors().col(keep[c]) * std::sqrt(eig.eigenvalues()(keep[c]));
  }
  return {w, static_cast<int>(keep.size())};
}

int resolve_ensemble_size(const FormationOptions& opts, int rank) {
  if (opts.ensemble_size == 0) return std::max(1, rank * rank);
  if (opts.ensemble_size < rank) {
    throw Error(ErrorCode::kRankExceedsK, "ensemble size " + std::to_string(opts.ensemble_size) +
                                              " is below sector rank " + std::to_string(rank));
  }
  return opts.ensemble_size;
}

// Best (theta, phi) rotation of one member pair:
//   a' = cos t a - e^{i phi} sin t b,   b' = e^{-i phi} sin t a + cos t b.
// Coarse grid (first sweep only), then pattern search. Returns the achieved
// pair cost.
double optimize_pair(Vector& a, Vector& b, double current, const MemberCost& cost, bool coarse) {
  auto rotated = [&](double t, double phi, Vector& ra, Vector& rb) {
    const Complex ph = std::polar(1.0, phi);
    ra = std::cos(t) * a - ph * std::sin(t) * b;
    rb = std::conj(ph) * std::sin(t) * a + std::cos(t) * b;
  };
  Vector ra, rb;
  auto eval = [&](double t, double phi) {
    rotated(t, phi, ra, rb);
    return cost(ra) + cost(rb);
  };

  double best = current;
  double bt = 0.0;
  double bp = 0.0;
  constexpr int kThetaSteps = 8;
  constexpr int kPhiSteps = 6;
  for (int i = 0; coarse && i < kThetaSteps; ++i) {
    for (int q = 0; q < kPhiSteps; ++q) {
      const double t = std::numbers::pi * i / kThetaSteps;
      const double phi = 2.0 * std::numbers::pi * q / kPhiSteps;
      if (i == 0 && q > 0) continue;
      const double v = eval(t, phi);
      if (v < best) {
        best = v;
        bt = t;
        bp = phi;
      }
    }
  }
  double st = coarse ? std::numbers::pi / (2 * kThetaSteps) : 0.05;
  double sp = coarse ? std::numbers::pi / kPhiSteps : 0.1;
  for (int round = 0; round < 100 && st > 1e-6; ++round) {
    bool moved = false;
    const double cand[4][2] = {{bt + st, bp}, {bt - st, bp}, {bt, bp + sp}, {bt, bp - sp}};
    for (const auto& c : cand) {
      const double v = eval(c[0], c[1]);
      if (v < best) {
        best = v;
        bt = c[0];
        bp = c[1];
        moved = true;
      }
    }
    const double scale = moved ? 2.0 : 0.5;
    st = std::min(st * scale, std::numbers::pi / 4);
    sp = std::min(sp * scale, std::numbers::pi / 2);
  }
  if (best < current) {
    rotated(bt, bp, ra, rb);
    a = ra;
    b = rb;
    return best;
  }
  return current;
}

}  // namespace

double measure_of(const BlockedPureState& state, Measure which) {
  if (which == Measure::kSiv) return siv(state);
  return entropy_of_entanglement(schmidt_block_decompose(normalize(state)));
}

EnsembleSearch minimize_ensemble(const Matrix& weighted, int ensemble_size, const MemberCost& cost,
                                 const FormationOptions& opts) {
  const int rank = static_cast<int>(weighted.cols());
  if (ensemble_size < rank) throw Error(ErrorCode::kRankExceedsK, "ensemble smaller than rank");
  const int restarts = std::max(1, opts.restarts);

  std::vector<EnsembleSearch> runs(static_cast<std::size_t>(restarts));
  parallel_for(restarts, [&](int restart) {
    Matrix iso = Matrix::Zero(ensemble_size, rank);
    if (restart == 0) {
      iso.topRows(rank).setIdentity();  // start from the eigen-ensemble
    } else {
      Rng rng(derive_seed(opts.seed, static_cast<std::uint64_t>(restart)));
      iso = random_unitary(ensemble_size, rng).leftCols(rank);
    }
    Matrix members = weighted * iso.transpose();
    std::vector<double> costs(static_cast<std::size_t>(ensemble_size));
    double value = 0.0;
    for (int i = 0; i < ensemble_size; ++i) {
      costs[i] = cost(members.col(i));
      value += costs[i];
    }

    bool converged = ensemble_size == 1;
    for (int sweep = 0; sweep < opts.max_iters && !converged; ++sweep) {
      const double before = value;
      for (int i = 0; i < ensemble_size; ++i) {
        for (int j = i + 1; j < ensemble_size; ++j) {
          Vector a = members.col(i);
          Vector b = members.col(j);
          const double pair = costs[i] + costs[j];
          if (optimize_pair(a, b, pair, cost, sweep == 0) < pair) {
            members.col(i) = a;
            members.col(j) = b;
            costs[i] = cost(a);
            costs[j] = cost(b);
          }
        }
      }
      value = 0.0;
      for (double c : costs) value += c;
      converged = before - value < opts.tol;
    }
    runs[static_cast<std::size_t>(restart)] = {value, std::move(members), converged};
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < runs.size(); ++i) {
    if (runs[i].value < runs[best].value) best = i;
  }
  bool all_converged = true;
  for (const auto& r : runs) all_converged = all_converged && r.converged;
  EnsembleSearch out = std::move(runs[best]);
  out.converged = all_converged;
  return out;
}

FormationResult formation_measure(const BlockedDensity& rho, Measure which, const FormationOptions& opts) {
  FormationResult result{0.0, {}, std::max(1, opts.restarts), true};
  for (const auto& [n_total, sec] : rho.sectors()) {
    if (sec.weight <= 0.0) continue;
    const SectorLayout layout = sector_layout(rho.alice(), rho.bob(), n_total);
    const Eigenbasis basis = weighted_eigenbasis(sec.rho);
    const int k = resolve_ensemble_size(opts, basis.rank);
    FormationOptions sector_opts = opts;
    sector_opts.seed = derive_seed(opts.seed, static_cast<std::uint64_t>(n_total));
    const EnsembleSearch search = minimize_ensemble(basis.weighted, k, sector_cost(layout, which), sector_opts);
    result.converged = result.converged && search.converged;
    for (int i = 0; i < search.members.cols(); ++i) {
      const double p = search.members.col(i).squaredNorm();
      if (p <= kMemberCutoff) continue;
      BlockedPureState member = unflatten(rho.alice(), rho.bob(), n_total, search.members.col(i) / std::sqrt(p));
      result.best_ensemble.members.push_back({sec.weight * p, std::move(member)});
    }
  }
  for (const auto& m : result.best_ensemble.members) result.value += m.prob * measure_of(m.state, which);
  return result;
}

double reconstruction_distance(const BlockedDensity& rho, const EnsembleDecomposition& ensemble) {
  Matrix diff = rho.to_full();
  for (const auto& m : ensemble.members) {
    const Matrix amp = full_amplitudes(m.state);
    Vector v(amp.size());
    for (int a = 0; a < amp.rows(); ++a) {
      for (int b = 0; b < amp.cols(); ++b) v(a * amp.cols() + b) = amp(a, b);
    }
    diff -= m.prob * v * v.adjoint();
  }
  return 0.5 * hermitian_trace_norm(0.5 * (diff + diff.adjoint()));
}

double unrestricted_entanglement_of_formation(const BlockedDensity& rho, const FormationOptions& opts) {
  const int da = rho.alice().total_dim();
  const int db = rho.bob().total_dim();
  const Eigenbasis basis = weighted_eigenbasis(rho.to_full());
  const int k = resolve_ensemble_size(opts, basis.rank);
  const MemberCost cost = [da, db](const Vector& v) {
    const double p = v.squaredNorm();
    if (p <= 0.0) return 0.0;
    Matrix m(da, db);
    for (int a = 0; a < da; ++a) {
      for (int b = 0; b < db; ++b) m(a, b) = v(a * db + b);
    }
    return std::max(0.0, entropy_term(m) + xlog2x(p));
  };
  return minimize_ensemble(basis.weighted, k, cost, opts).value;
}

// ---------------------------------------------------------------------------
// Projection of product states onto global sectors

ProductState product_of_pairs(const std::vector<std::pair<Eigen::Vector2cd, Eigen::Vector2cd>>& pairs) {
  const int modes = static_cast<int>(pairs.size());
  if (modes < 1 || modes > 20) throw Error(ErrorCode::kInvalidInput, "need between 1 and 20 mode pairs");
  Vector alice = Vector::Ones(1);
  Vector bob = Vector::Ones(1);
  for (const auto& [chi, psi] : pairs) {
    // Appending a mode as the new least significant bit.
    Vector na(alice.size() * 2);
    Vector nb(bob.size() * 2);
    for (Eigen::Index s = 0; s < alice.size(); ++s) {
      na(2 * s) = alice(s) * chi(0);
      na(2 * s + 1) = alice(s) * chi(1);
      nb(2 * s) = bob(s) * psi(0);
      nb(2 * s + 1) = bob(s) * psi(1);
    }
    alice = std::move(na);
    bob = std::move(nb);
  }
  return {modes, alice, bob};
}

ProductState random_product_state(int modes, std::uint64_t seed) {
  if (modes < 1 || modes > 20) throw Error(ErrorCode::kInvalidInput, "need between 1 and 20 modes");
  Rng rng(seed);
  const int dim = 1 << modes;
  Vector a = random_ginibre(dim, 1, rng).col(0);
  Vector b = random_ginibre(dim, 1, rng).col(0);
  return {modes, a / a.norm(), b / b.norm()};
}

ProjectionBound projection_entanglement_bound(const ProductState& state, int n_sector) {
  const int modes = state.modes;
  if (state.alice.size() != (Eigen::Index{1} << modes) || state.bob.size() != (Eigen::Index{1} << modes)) {
    throw Error(ErrorCode::kInvalidInput, "product state amplitudes do not match the mode count");
  }
  if (n_sector < 0 || n_sector > 2 * modes) {
    throw Error(ErrorCode::kZeroProjection, "sector " + std::to_string(n_sector) + " is empty");
  }
  const SectorSpace space = qubit_modes_space(modes);
  std::map<int, Matrix> blocks;
  for (int a : admissible_sectors(space, space, n_sector)) {
    const auto rows = occupation_strings(modes, a);
    const auto cols = occupation_strings(modes, n_sector - a);
    Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < cols.size(); ++j) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            state.alice(static_cast<Eigen::Index>(rows[i])) * state.bob(static_cast<Eigen::Index>(cols[j]));
      }
    }
    blocks.emplace(a, std::move(m));
  }
  const BlockedPureState projected(space, space, n_sector, std::move(blocks));
  if (projected.norm_squared() < 1e-14) {
    throw Error(ErrorCode::kZeroProjection, "sector " + std::to_string(n_sector) + " component vanishes");
  }
  const SchmidtBlocks schmidt = schmidt_block_decompose(normalize(projected));
  int rank = 0;
  for (const auto& [n, e] : schmidt.sectors()) rank += static_cast<int>(std::get<ExplicitCoefficients>(e.coefficients).values.size());

  ProjectionBound out{};
  out.schmidt_rank = rank;
  out.eoe = entropy_of_entanglement(schmidt);
  out.bound = std::log2(modes + 1.0);
  out.rank_ok = rank <= modes + 1;
  out.eoe_ok = out.eoe <= std::log2(double(rank)) + 1e-12;
  return out;
}

// ---------------------------------------------------------------------------

AdditivityProbe vf_additivity_probe(const BlockedDensity& rho, const FormationOptions& opts) {
  const int dim = rho.alice().total_dim() * rho.bob().total_dim();
  if (dim * dim > 256) throw Error(ErrorCode::kDomainError, "rho (x) rho is too large for the probe");
  AdditivityProbe out{};
  out.v1 = formation_measure(rho, Measure::kSiv, opts).value;
  out.v2 = formation_measure(tensor_product(rho, rho), Measure::kSiv, opts).value;
  out.ratio = (out.v1 < 1e-12 && out.v2 < 1e-12) ? 1.0 : out.v2 / (2.0 * out.v1);
  return out;
}

}  // namespace ssr
