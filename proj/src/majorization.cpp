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

#include "ssr/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <string>

#include "ssr/linalg.hpp"

namespace ssr {

// ---------------------------------------------------------------------------
// Step vectors

StepVector to_step_vector(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  StepVector out;
  for (double v : sorted) {
    if (v < 0.0) throw Error(ErrorCode::kInvalidInput, "majorization needs nonnegative entries");
    if (v == 0.0) break;
    if (!out.empty() && out.back().value == v) {
      out.back().count += 1.0;
    } else {
      out.push_back({v, 1.0});
    }
  }
  return out;
}

StepVector to_step_vector(const SchmidtEntry& entry) {
  if (const auto* u = std::get_if<UniformCoefficients>(&entry.coefficients)) {
    if (u->log_count > 700.0) {
      throw Error(ErrorCode::kDomainError, "uniform block count exceeds double range");
    }
    const double count = std::exp(u->log_count);
    if (u->weight <= 0.0) return {};
    return {{u->weight / count, count}};
  }
  return to_step_vector(std::get<ExplicitCoefficients>(entry.coefficients).values);
}

double total(const StepVector& v) {
  double s = 0.0;
  for (const Run& r : v) s += r.value * r.count;
  return s;
}

namespace {

std::vector<double> breakpoints(const StepVector& v) {
  std::vector<double> out;
  double k = 0.0;
  for (const Run& r : v) {
    k += r.count;
    out.push_back(k);
  }
  return out;
}

// Sum of the first k entries (k real, entries beyond the end are zero).
double partial_sum(const StepVector& v, double k) {
  double s = 0.0;
  double start = 0.0;
  for (const Run& r : v) {
    if (k <= start) break;
    const double take = std::min(r.count, k - start);
    s += r.value * take;
    start += r.count;
  }
  return s;
}

double value_at(const StepVector& v, double position) {
  double start = 0.0;
  for (const Run& r : v) {
    if (position < start + r.count) return r.value;
    start += r.count;
  }
  return 0.0;
}

std::vector<double> merged_breakpoints(const std::vector<const StepVector*>& vs) {
  std::vector<double> all;
  for (const StepVector* v : vs) {
    const auto b = breakpoints(*v);
    all.insert(all.end(), b.begin(), b.end());
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

}  // namespace

StepVector weighted_sum(const std::vector<std::pair<double, StepVector>>& terms) {
  std::vector<const StepVector*> vs;
  for (const auto& t : terms) vs.push_back(&t.second);
  StepVector out;
  double prev = 0.0;
  for (double k : merged_breakpoints(vs)) {
    const double mid = prev + 0.5 * (k - prev);
    double value = 0.0;
    for (const auto& [w, v] : terms) value += w * value_at(v, mid);
    if (value > 0.0) {
      if (!out.empty() && out.back().value == value) {
        out.back().count += k - prev;
      } else {
        out.push_back({value, k - prev});
      }
    }
    prev = k;
  }
  return out;
}

double majorization_slack(const StepVector& x, const StepVector& y) {
  double slack = std::numeric_limits<double>::infinity();
  for (double k : merged_breakpoints({&x, &y})) slack = std::min(slack, partial_sum(y, k) - partial_sum(x, k));
  return std::isinf(slack) ? 0.0 : slack;
}

bool is_majorized(const StepVector& x, const StepVector& y) {
  const double tx = total(x);
  const double ty = total(y);
  if (std::abs(tx - ty) > kMajorizationTolerance) {
    throw Error(ErrorCode::kTotalMismatch,
                "totals " + std::to_string(tx) + " and " + std::to_string(ty) + " differ");
  }
  return majorization_slack(x, y) >= -kMajorizationTolerance;
}

bool is_majorized(std::span<const double> x, std::span<const double> y) {
  return is_majorized(to_step_vector(x), to_step_vector(y));
}

// ---------------------------------------------------------------------------
// Sector-wise criterion

ConvertibilityReport ssr_convertibility(const SchmidtBlocks& source, const std::vector<ConversionTarget>& targets) {
  if (targets.empty()) throw Error(ErrorCode::kInvalidInput, "no conversion targets");
  double prob_total = 0.0;
  for (const auto& t : targets) {
    if (!(t.prob >= 0.0)) throw Error(ErrorCode::kInvalidInput, "negative target probability");
    prob_total += t.prob;
  }
  if (std::abs(prob_total - 1.0) > tolerances().normalization) {
    throw Error(ErrorCode::kInvalidInput, "target probabilities sum to " + std::to_string(prob_total));
  }

  std::set<int> sectors;
  for (const auto& [n, e] : source.sectors()) sectors.insert(n);
  for (const auto& t : targets) {
    for (const auto& [n, e] : t.blocks.sectors()) sectors.insert(n);
  }

  ConvertibilityReport report{true, {}};
  for (int n : sectors) {
    StepVector x;
    if (const SchmidtEntry* e = source.sector(n)) x = to_step_vector(*e);
    std::vector<std::pair<double, StepVector>> terms;
    for (const auto& t : targets) {
      if (const SchmidtEntry* e = t.blocks.sector(n)) terms.emplace_back(t.prob, to_step_vector(*e));
    }
    const StepVector y = weighted_sum(terms);
    SectorVerdict v{n, total(x), total(y), majorization_slack(x, y), true};
    v.ok = std::abs(v.source_weight - v.target_weight) <= kMajorizationTolerance && v.slack >= -kMajorizationTolerance;
    report.convertible = report.convertible && v.ok;
    report.sectors.push_back(v);
  }
  return report;
}

bool ssr_convertible(const SchmidtBlocks& source, const std::vector<ConversionTarget>& targets) {
  return ssr_convertibility(source, targets).convertible;
}

// ---------------------------------------------------------------------------
// Applying local operators

PovmOutcome apply_povm_outcome(const BlockedPureState& state, const BlockOperator& element) {
  std::map<int, Matrix> blocks;
  double prob = 0.0;
  for (const auto& [n, m] : state.blocks()) {
    auto it = element.find(n);
    if (it == element.end()) continue;
    if (it->second.rows() != m.rows() || it->second.cols() != m.rows()) {
      throw Error(ErrorCode::kInvalidInput, "element does not match Alice's sector " + std::to_string(n));
    }
    Matrix out = it->second * m;
    prob += out.squaredNorm();
    blocks.emplace(n, std::move(out));
  }
  if (prob < 1e-14) throw Error(ErrorCode::kZeroProbability, "outcome probability " + std::to_string(prob));
  const double scale = 1.0 / std::sqrt(prob);
  for (auto& [n, m] : blocks) m *= scale;
  return {prob, BlockedPureState(state.alice(), state.bob(), state.n_total(), std::move(blocks))};
}

BlockedPureState apply_bob_operator(const BlockedPureState& state, const BlockOperator& op) {
  std::map<int, Matrix> blocks;
  for (const auto& [n, m] : state.blocks()) {
    auto it = op.find(state.n_total() - n);
    if (it == op.end()) continue;
    blocks.emplace(n, m * it->second.transpose());
  }
  return BlockedPureState(state.alice(), state.bob(), state.n_total(), std::move(blocks));
}

double fidelity(const BlockedPureState& a, const BlockedPureState& b) {
  if (a.alice() != b.alice() || a.bob() != b.bob() || a.n_total() != b.n_total()) {
    throw Error(ErrorCode::kInvalidInput, "fidelity between states on different spaces");
  }
  Complex overlap(0.0);
  for (const auto& [n, m] : a.blocks()) {
    if (const Matrix* other = b.block(n)) overlap += m.cwiseProduct(other->conjugate()).sum();
  }
  return std::norm(overlap);
}

// ---------------------------------------------------------------------------
// Protocol construction

namespace {

struct WeightedPermutation {
  double weight;
  std::vector<int> perm;  // (P y)_i = y[perm[i]]
};

// Writes x = D y with D a convex combination of permutations, for x ≺ y of
// equal length (both nonincreasing), by successive T-transforms that pull y
// towards x one coordinate at a time.
std::vector<WeightedPermutation> t_transform_decomposition(const std::vector<double>& x, std::vector<double> y) {
  const int d = static_cast<int>(x.size());
  std::vector<int> id(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) id[static_cast<std::size_t>(i)] = i;
  std::map<std::vector<int>, double> terms{{id, 1.0}};
  const double eps = 1e-15;

  for (int step = 0; step < d; ++step) {
    int j = -1;
    for (int i = d - 1; i >= 0; --i) {
      if (y[i] > x[i] + eps) {
        j = i;
        break;
      }
    }
    if (j < 0) break;
    int k = -1;
    for (int i = j + 1; i < d; ++i) {
      if (y[i] < x[i] - eps) {
        k = i;
        break;
      }
    }
    if (k < 0) break;
    const double delta = std::min(y[j] - x[j], x[k] - y[k]);
    const double t = std::clamp(1.0 - delta / (y[j] - y[k]), 0.0, 1.0);
    const double yj = y[j];
    const double yk = y[k];
    y[j] = t * yj + (1.0 - t) * yk;
    y[k] = t * yk + (1.0 - t) * yj;

    std::map<std::vector<int>, double> next;
    for (const auto& [perm, w] : terms) {
      if (w * t > 0.0) next[perm] += w * t;
      if (w * (1.0 - t) > 0.0) {
        std::vector<int> swapped = perm;
        std::swap(swapped[j], swapped[k]);
        next[swapped] += w * (1.0 - t);
      }
    }
    terms = std::move(next);
  }

  std::vector<WeightedPermutation> out;
  for (auto& [perm, w] : terms) {
    if (w > 1e-15) out.push_back({w, perm});
  }
  return out;
}

// Local measurement for one sector: branch j (probability weight_j within the
// sector) is the operator K_j, with sum_j weight_j K_j^dagger K_j = 1.
struct SectorPlan {
  std::vector<double> weights;
  std::vector<Matrix> branches;
};

SectorPlan plan_sector(const SectorSvd& src, const SectorSvd& tgt, int dim_alice) {
  std::vector<double> lambda(static_cast<std::size_t>(dim_alice), 0.0);
  std::vector<double> mu(static_cast<std::size_t>(dim_alice), 0.0);
  int rank = 0;
  for (int i = 0; i < src.singular.size(); ++i) {
    if (src.singular(i) > kSingularValueCutoff) {
      lambda[static_cast<std::size_t>(i)] = src.singular(i) * src.singular(i);
      rank = i + 1;
    }
  }
  for (int i = 0; i < std::min<Eigen::Index>(tgt.singular.size(), rank); ++i) {
    if (tgt.singular(i) > kSingularValueCutoff) mu[static_cast<std::size_t>(i)] = tgt.singular(i) * tgt.singular(i);
  }

  const auto perms = t_transform_decomposition(lambda, mu);
  std::vector<double> image(static_cast<std::size_t>(dim_alice), 0.0);
  for (const auto& p : perms) {
    for (int i = 0; i < dim_alice; ++i) image[i] += p.weight * mu[static_cast<std::size_t>(p.perm[i])];
  }

  SectorPlan plan;
  double weight_total = 0.0;
  for (const auto& p : perms) weight_total += p.weight;
  for (const auto& p : perms) {
    Matrix e = Matrix::Zero(dim_alice, dim_alice);
    for (int i = 0; i < rank; ++i) {
      if (image[static_cast<std::size_t>(i)] <= 0.0) {
        throw Error(ErrorCode::kNotConvertible, "source coefficient not reachable from target");
      }
      const int row = p.perm[static_cast<std::size_t>(i)];
      e(row, i) = std::sqrt(mu[static_cast<std::size_t>(row)] / image[static_cast<std::size_t>(i)] * weight_total);
    }
    for (int i = rank; i < dim_alice; ++i) e(i, i) = 1.0;
    plan.weights.push_back(p.weight / weight_total);
    plan.branches.push_back(tgt.u * e * src.u.adjoint());
  }
  return plan;
}

}  // namespace

ConversionProtocol build_protocol(const BlockedPureState& source, const BlockedPureState& target) {
  if (source.alice() != target.alice() || source.bob() != target.bob() || source.n_total() != target.n_total()) {
    throw Error(ErrorCode::kInvalidInput, "source and target live on different spaces");
  }
  if (!source.is_normalized() || !target.is_normalized()) {
    throw Error(ErrorCode::kInvalidInput, "protocol construction needs normalized states");
  }
  const ConvertibilityReport report =
      ssr_convertibility(schmidt_block_decompose(source), {{1.0, schmidt_block_decompose(target)}});
  if (!report.convertible) throw Error(ErrorCode::kNotConvertible, "sector-wise majorization fails");

  const SectorSpace& alice = source.alice();
  const auto src_svd = sector_svd(source);
  const auto tgt_svd = sector_svd(target);

  std::map<int, SectorPlan> plans;
  for (const auto& [n, svd] : src_svd) {
    if (source.block(n)->squaredNorm() <= 1e-24) continue;
    auto it = tgt_svd.find(n);
    if (it == tgt_svd.end()) throw Error(ErrorCode::kNotConvertible, "target lacks sector " + std::to_string(n));
    plans.emplace(n, plan_sector(svd, it->second, alice.dim(n)));
  }

  // Common refinement of the per-sector branch probabilities: every interval
  // of the merged cumulative partition sits inside one branch per sector.
  std::vector<double> cuts{0.0, 1.0};
  for (const auto& [n, plan] : plans) {
    double c = 0.0;
    for (double w : plan.weights) {
      c += w;
      cuts.push_back(std::min(c, 1.0));
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(), [](double a, double b) { return std::abs(a - b) < 1e-15; }),
             cuts.end());

  std::vector<BlockOperator> elements;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double len = cuts[i + 1] - cuts[i];
    if (len <= 0.0) continue;
    const double mid = cuts[i] + 0.5 * len;
    BlockOperator el;
    for (int n = 0; n <= alice.max_number(); ++n) {
      const int d = alice.dim(n);
      if (d == 0) continue;
      auto it = plans.find(n);
      if (it == plans.end()) {
        el.emplace(n, Matrix::Identity(d, d) * std::sqrt(len));
        continue;
      }
      const SectorPlan& plan = it->second;
      std::size_t j = 0;
      double c = plan.weights[0];
      while (j + 1 < plan.weights.size() && mid > c) c += plan.weights[++j];
      el.emplace(n, plan.branches[j] * std::sqrt(len));
    }
    elements.push_back(std::move(el));
  }

  LocalPOVM povm(alice, std::move(elements));
  std::vector<ProtocolOutcome> outcomes;
  for (const auto& el : povm.elements()) {
    ProtocolOutcome out{0, identity_operator(source.bob())};
    try {
      const PovmOutcome post = apply_povm_outcome(source, el);
      for (const auto& [n, p] : post.post_state.blocks()) {
        const Matrix* t = target.block(n);
        if (t == nullptr) continue;
        // Bob acts as P -> P X with X = B^T; the closest unitary X solves the
        // Procrustes problem for P^dagger T.
        out.bob_correction[source.n_total() - n] = polar_unitary(p.adjoint() * *t).transpose();
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kZeroProbability) throw;
    }
    outcomes.push_back(std::move(out));
  }
  return ConversionProtocol{std::move(povm), std::move(outcomes)};
}

std::vector<OutcomeCheck> run_protocol(const ConversionProtocol& protocol, const BlockedPureState& source,
                                       const BlockedPureState& target) {
  std::vector<OutcomeCheck> out;
  for (std::size_t i = 0; i < protocol.povm.size(); ++i) {
    try {
      const PovmOutcome post = apply_povm_outcome(source, protocol.povm.elements()[i]);
      const BlockedPureState corrected = apply_bob_operator(post.post_state, protocol.outcomes[i].bob_correction);
      out.push_back({post.prob, fidelity(corrected, target)});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kZeroProbability) throw;
      out.push_back({0.0, 1.0});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// SiV monotonicity

MonotoneCheck siv_monotone_check(const BlockedPureState& state, const LocalPOVM& povm) {
  if (povm.space() != state.alice()) throw Error(ErrorCode::kInvalidInput, "POVM does not act on Alice's space");
  double lhs = 0.0;
  for (const auto& el : povm.elements()) {
    double q = 0.0;
    double first = 0.0;
    double second = 0.0;
    for (const auto& [n, m] : state.blocks()) {
      auto it = el.find(n);
      if (it == el.end()) continue;
      const double w = (it->second * m).squaredNorm();
      q += w;
      first += n * w;
      second += double(n) * n * w;
    }
    if (q > 0.0) lhs += second - first * first / q;
  }
  const double rhs = siv(state) / 4.0;
  return {lhs, rhs, lhs <= rhs + 1e-9};
}

// ---------------------------------------------------------------------------
// Data hiding

namespace {

BlockOperator random_block_observable(const SectorSpace& space, Rng& rng) {
  BlockOperator op;
  double norm = 0.0;
  for (int n = 0; n <= space.max_number(); ++n) {
    if (space.dim(n) == 0) continue;
    Matrix h = random_hermitian(space.dim(n), rng);
    norm = std::max(norm, hermitian_spectral_norm(h));
    op.emplace(n, std::move(h));
  }
  if (norm > 0.0) {
    for (auto& [n, m] : op) m /= norm;
  }
  return op;
}

BlockOperator normalized_number_observable(const SectorSpace& space) {
  BlockOperator op = number_operator(space);
  const double top = space.max_number();
  if (top > 0) {
    for (auto& [n, m] : op) m /= top;
  }
  return op;
}

double product_expectation(const BlockedPureState& s, const BlockOperator& a, const BlockOperator& b) {
  Complex v(0.0);
  for (const auto& [n, m] : s.blocks()) {
    auto ia = a.find(n);
    auto ib = b.find(s.n_total() - n);
    if (ia == a.end() || ib == b.end()) continue;
    v += (m.adjoint() * ia->second * m * ib->second.transpose()).trace();
  }
  return v.real();
}

void require_same_spaces(const BlockedPureState& s1, const BlockedPureState& s2) {
  if (s1.alice() != s2.alice() || s1.bob() != s2.bob()) {
    throw Error(ErrorCode::kInvalidInput, "states live on different spaces");
  }
}

}  // namespace

double data_hiding_distance(const BlockedPureState& s1, const BlockedPureState& s2, int trials, std::uint64_t seed) {
  require_same_spaces(s1, s2);
  auto distance = [&](const BlockOperator& a, const BlockOperator& b) {
    return std::abs(product_expectation(s1, a, b) - product_expectation(s2, a, b));
  };
  const BlockOperator id_a = identity_operator(s1.alice());
  const BlockOperator id_b = identity_operator(s1.bob());
  double best = std::max(distance(normalized_number_observable(s1.alice()), id_b),
                         distance(id_a, normalized_number_observable(s1.bob())));
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const BlockOperator a = random_block_observable(s1.alice(), rng);
    const BlockOperator b = random_block_observable(s1.bob(), rng);
    best = std::max(best, distance(a, b));
  }
  return best;
}

double unrestricted_hiding_distance(const BlockedPureState& s1, const BlockedPureState& s2, int trials,
                                    std::uint64_t seed) {
  require_same_spaces(s1, s2);
  const Matrix p1 = full_amplitudes(s1);
  const Matrix p2 = full_amplitudes(s2);
  Rng rng(seed);
  double best = 0.0;
  for (int t = 0; t < trials; ++t) {
    Matrix a = random_hermitian(s1.alice().total_dim(), rng);
    Matrix b = random_hermitian(s1.bob().total_dim(), rng);
    a /= hermitian_spectral_norm(a);
    b /= hermitian_spectral_norm(b);
    const double e1 = (p1.adjoint() * a * p1 * b.transpose()).trace().real();
    const double e2 = (p2.adjoint() * a * p2 * b.transpose()).trace().real();
    best = std::max(best, std::abs(e1 - e2));
  }
  return best;
}

}  // namespace ssr
