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

#include "ssr/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ssr/acceptance.hpp"
#include "ssr/asymptotics.hpp"
#include "ssr/formation.hpp"
#include "ssr/majorization.hpp"
#include "ssr/schmidt.hpp"
#include "ssr/serialization.hpp"
#include "ssr/teleport.hpp"

namespace ssr {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string csv_num(double x) {
  std::ostringstream s;
  s << std::setprecision(12) << x;
  return s.str();
}

void emit(std::ostream& out, Json j) {
  j["schema"] = kSchemaVersion;
  out << j.dump(2) << '\n';
}

// "1..64" or "1,2,4"
std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  try {
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
      const int lo = std::stoi(text.substr(0, dots));
      const int hi = std::stoi(text.substr(dots + 2));
      if (lo > hi) throw UsageError("empty range " + text);
      for (int n = lo; n <= hi; ++n) out.push_back(n);
      return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  } catch (const std::logic_error&) {
    throw UsageError("cannot parse integer list '" + text + "'");
  }
  if (out.empty()) throw UsageError("empty integer list");
  return out;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  try {
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  } catch (const std::logic_error&) {
    throw UsageError("cannot parse number list '" + text + "'");
  }
  if (out.empty()) throw UsageError("empty number list");
  return out;
}

std::vector<ConversionTarget> read_targets(const std::string& path) {
  const Json j = read_json_file(path);
  std::vector<ConversionTarget> targets;
  if (j.contains("targets")) {
    for (const Json& t : j.at("targets")) {
      targets.push_back({t.at("prob").get<double>(), schmidt_block_decompose(state_from_json(t.at("state")))});
    }
  } else {
    targets.push_back({1.0, schmidt_block_decompose(state_from_json(j))});
  }
  return targets;
}

std::vector<Complex> read_alpha(const std::string& path) {
  Json j = read_json_file(path);
  if (j.is_object()) j = j.at("alpha");
  std::vector<Complex> alpha;
  for (const Json& z : j) alpha.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
  return alpha;
}

Json ensemble_json(const EnsembleDecomposition& e) {
  Json members = Json::array();
  for (const auto& m : e.members) members.push_back({{"prob", m.prob}, {"state", to_json(m.state)}});
  return {{"schema", kSchemaVersion}, {"members", std::move(members)}};
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Superselection-rule entanglement toolkit"};
  app.name("ssr_toolkit");
  app.require_subcommand(1);

  Tolerances tol = tolerances();
  app.add_option("--tol-normalization", tol.normalization, "State normalization tolerance");
  app.add_option("--tol-psd", tol.psd, "Density positivity tolerance");
  app.add_option("--tol-completeness", tol.completeness, "POVM completeness tolerance");
  app.add_option("--tol-hermiticity", tol.hermiticity, "Density hermiticity tolerance");

  std::string state_file, source_file, target_file, targets_file, povm_file, out_file, rho_file, alpha_file;
  std::string file_a, file_b, measure = "eoe", sizing = "largest", targets_list = "0.5,0.9,0.99", n_list = "1..64";
  std::string fixtures;
  std::uint64_t seed = 1;
  int trials = 500, outcomes = 3, copies = 64, n_particles = 1, m_resource = 1, k = 0, restarts = 32, pad_bits = 0;
  double p0 = 1.0 / 3.0, delta = 3.0;
  bool csv = false;

  auto* measures = app.add_subcommand("measures", "EoE, SiV and local number distribution of a pure state");
  measures->add_option("--state", state_file, "State JSON file")->required();

  auto* convert = app.add_subcommand("convert-check", "Sector-wise majorization verdict");
  convert->add_option("--source", source_file, "Source state JSON file")->required();
  convert->add_option("--targets", targets_file,
                      "Target state file, or {\"targets\": [{\"prob\": p, \"state\": {...}}]}")
      ->required();

  auto* protocol = app.add_subcommand("protocol", "Build and run an explicit conversion protocol");
  protocol->add_option("--source", source_file, "Source state JSON file")->required();
  protocol->add_option("--target", target_file, "Target state JSON file")->required();
  protocol->add_option("--povm-out", out_file, "Write Alice's POVM to this file");

  auto* monotone = app.add_subcommand("povm-monotone", "Check the expected-SiV inequality for a local POVM");
  monotone->add_option("--state", state_file, "State JSON file")->required();
  monotone->add_option("--povm", povm_file, "POVM JSON file on Alice's space (random if omitted)");
  monotone->add_option("--outcomes", outcomes, "Outcomes of the random POVM")->check(CLI::PositiveNumber);
  monotone->add_option("--seed", seed, "Random seed");

  auto* hiding = app.add_subcommand("hiding", "Distinguishability of two states by local observables");
  hiding->add_option("--a", file_a, "First state JSON file")->required();
  hiding->add_option("--b", file_b, "Second state JSON file")->required();
  hiding->add_option("--trials", trials, "Sampled observables")->check(CLI::PositiveNumber);
  hiding->add_option("--seed", seed, "Random seed");

  auto* distill = app.add_subcommand(
      "distill", "Typical-subspace distillation of N copies of sqrt(p0)|01>+sqrt(1-p0)|10>");
  distill->footer("CSV columns (--csv): n,c_n,log2_count with c_n = p0^n p1^(N-n) C(N,n)");
  distill->add_option("--p0", p0, "Weight of the first coefficient")->required();
  distill->add_option("--copies", copies, "Number of copies N")->required();
  distill->add_option("--delta", delta, "Typical window half-width in standard deviations");
  distill->add_flag("--csv", csv, "Emit the copy spectrum as CSV");

  auto* dilute = app.add_subcommand("dilute", "Dilution convertibility from uniform resource blocks");
  dilute->add_option("--p0", p0, "Weight of the first coefficient")->required();
  dilute->add_option("--copies", copies, "Number of copies N")->required();
  dilute->add_option("--delta", delta, "Typical window half-width in standard deviations");
  dilute->add_option("--pad-bits", pad_bits, "Extra resource bits per sector");
  dilute->add_option("--sizing", sizing, "Resource block size")->check(CLI::IsMember({"largest", "smallest"}));

  auto* gaussian = app.add_subcommand("gaussian", "Moments of the copy spectrum against a normal density");
  gaussian->add_option("--p0", p0, "Weight of the first coefficient")->required();
  gaussian->add_option("--copies", copies, "Number of copies N (at least 16)")->required();

  auto* teleport = app.add_subcommand("teleport", "Exact simulation of number-state teleportation");
  teleport->add_option("--n", n_particles, "Particles N in the unknown state")->required();
  teleport->add_option("--m", m_resource, "Resource size M")->required();
  teleport->add_option("--alpha", alpha_file, "JSON list of [re, im] amplitudes (random if omitted)");
  teleport->add_option("--seed", seed, "Seed for the random input state");

  auto* scaling = app.add_subcommand("teleport-scaling", "Smallest M reaching each target success probability");
  scaling->footer("CSV columns: n,target,m_required,success");
  scaling->add_option("--targets", targets_list, "Comma-separated success targets in (0, 1)");
  scaling->add_option("--n", n_list, "Particle counts, as a range lo..hi or a comma list");

  auto* formation = app.add_subcommand("formation", "EoE or SiV of formation of a mixed state");
  formation->add_option("--rho", rho_file, "Density JSON file")->required();
  formation->add_option("--measure", measure, "eoe or siv")->check(CLI::IsMember({"eoe", "siv"}));
  formation->add_option("--k", k, "Ensemble size per sector (0 = rank^2)")->check(CLI::NonNegativeNumber);
  formation->add_option("--restarts", restarts, "Random restarts")->check(CLI::PositiveNumber);
  formation->add_option("--seed", seed, "Random seed");
  formation->add_option("--ensemble-out", out_file, "Write the certificate ensemble to this file");

  auto* projection = app.add_subcommand("projection-bound", "Entanglement created by projecting product states");
  projection->footer("CSV columns: sector,rank,eoe,bound");
  projection->add_option("--copies", copies, "Mode pairs N (1..20)")->required();
  projection->add_option("--seed", seed, "Random seed");

  auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");
  selftest->add_option("--fixtures", fixtures, "Fixture directory (built-in states if omitted)");
  std::uint64_t selftest_seed = 2026;
  selftest->add_option("--seed", selftest_seed, "Root seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    set_tolerances(tol);
    if (*measures) {
      const BlockedPureState psi = read_state(state_file);
      const ResourcePair r = resource_pair(psi);
      emit(out, {{"eoe", r.eoe},
                 {"siv", r.siv},
                 {"mean_local_number", r.mean_local_number},
                 {"p_n", local_number_distribution(psi)}});
    } else if (*convert) {
      const ConvertibilityReport rep = ssr_convertibility(schmidt_block_decompose(read_state(source_file)),
                                                          read_targets(targets_file));
      Json sectors = Json::array();
      for (const SectorVerdict& v : rep.sectors) {
        sectors.push_back({{"n", v.n},
                           {"source_weight", v.source_weight},
                           {"target_weight", v.target_weight},
                           {"slack", v.slack},
                           {"ok", v.ok}});
      }
      emit(out, {{"convertible", rep.convertible}, {"sectors", std::move(sectors)}});
    } else if (*protocol) {
      const BlockedPureState src = read_state(source_file);
      const BlockedPureState tgt = read_state(target_file);
      const ConversionProtocol p = build_protocol(src, tgt);
      Json rows = Json::array();
      double total = 0.0;
      double worst = 1.0;
      for (const OutcomeCheck& c : run_protocol(p, src, tgt)) {
        rows.push_back({{"prob", c.prob}, {"fidelity", c.fidelity}});
        total += c.prob;
        if (c.prob > 0.0) worst = std::min(worst, c.fidelity);
      }
      if (!out_file.empty()) write_json_file(out_file, to_json(p.povm));
      emit(out, {{"outcomes", std::move(rows)},
                 {"total_prob", total},
                 {"min_fidelity", worst},
                 {"completeness_residual", p.povm.completeness_residual()}});
    } else if (*monotone) {
      const BlockedPureState psi = read_state(state_file);
      const LocalPOVM povm = povm_file.empty() ? random_povm(psi.alice(), outcomes, seed) : read_povm(povm_file);
      const MonotoneCheck c = siv_monotone_check(psi, povm);
      emit(out, {{"expected_variance", c.lhs}, {"initial_variance", c.rhs}, {"ok", c.ok}});
    } else if (*hiding) {
      const BlockedPureState a = read_state(file_a);
      const BlockedPureState b = read_state(file_b);
      emit(out, {{"trials", trials},
                 {"max_distance", data_hiding_distance(a, b, trials, seed)},
                 {"unrestricted_max_distance", unrestricted_hiding_distance(a, b, trials, seed)}});
    } else if (*distill) {
      const CopySpectrum spectrum = n_copy_spectrum(p0, copies);
      if (csv) {
        out << "n,c_n,log2_count\n";
        for (int n = 0; n <= copies; ++n) {
          out << n << ',' << csv_num(spectrum.weight(n)) << ',' << csv_num(spectrum.log2_count(n)) << '\n';
        }
      } else {
        const DistillResult d = distill_rate(spectrum, delta);
        const TypicalSet set = typical_set(spectrum, delta);
        emit(out, {{"rate", d.ebits_per_copy},
                   {"ebits", d.ebits},
                   {"residual_siv", d.residual_siv},
                   {"loss", d.truncation_loss},
                   {"convertible", d.convertible},
                   {"typical", {{"lo", set.lo}, {"hi", set.hi}, {"mass", set.mass}}},
                   {"entropy", binary_entropy(p0)}});
      }
    } else if (*dilute) {
      const CopySpectrum spectrum = n_copy_spectrum(p0, copies);
      const ResourceSizing s = sizing == "largest" ? ResourceSizing::kLargestBlock : ResourceSizing::kSmallestBlock;
      emit(out, {{"convertible", dilute_check(spectrum, delta, pad_bits, s)}, {"sizing", sizing}, {"pad_bits", pad_bits}});
    } else if (*gaussian) {
      const GaussianFit g = gaussian_fit(n_copy_spectrum(p0, copies));
      emit(out, {{"mean", g.mean},
                 {"variance", g.variance},
                 {"expected_mean", copies * p0},
                 {"expected_variance", copies * p0 * (1.0 - p0)},
                 {"max_abs_dev", g.max_abs_dev}});
    } else if (*teleport) {
      if (n_particles < 0) throw Error(ErrorCode::kInvalidInput, "N must be nonnegative");
      std::vector<Complex> alpha = alpha_file.empty() ? random_alpha(n_particles, seed) : read_alpha(alpha_file);
      if (static_cast<int>(alpha.size()) != n_particles + 1) {
        throw Error(ErrorCode::kInvalidInput, "alpha needs N + 1 amplitudes");
      }
      const TeleportInstance inst = make_teleport_instance(std::move(alpha), m_resource);
      Json rows = Json::array();
      double exact = 0.0;
      for (const TeleportOutcome& o : run_teleport(inst)) {
        if (o.success) exact += o.prob;
        rows.push_back(
            {{"n", o.n}, {"k", o.k}, {"prob", o.prob}, {"fidelity", o.post_fidelity}, {"success", o.success}});
      }
      emit(out, {{"success_prob_exact", exact},
                 {"success_prob_formula", success_probability(n_particles, m_resource)},
                 {"outcomes", std::move(rows)}});
    } else if (*scaling) {
      const std::vector<double> targets = parse_real_list(targets_list);
      const std::vector<int> ns = parse_int_list(n_list);
      out << "n,target,m_required,success\n";
      for (double t : targets) {
        for (const auto& [n, m] : scaling_table(ns, t)) {
          out << n << ',' << csv_num(t) << ',' << m << ',' << csv_num(1.0 - double(n) / (double(m) + 1.0)) << '\n';
        }
      }
    } else if (*formation) {
      const BlockedDensity rho = read_density(rho_file);
      FormationOptions opts;
      opts.ensemble_size = k;
      opts.restarts = restarts;
      opts.seed = seed;
      const FormationResult r = formation_measure(rho, measure == "eoe" ? Measure::kEoe : Measure::kSiv, opts);
      Json j = {{"measure", measure},
                {"value", r.value},
                {"converged", r.converged},
                {"restarts", r.restarts},
                {"reconstruction_distance", reconstruction_distance(rho, r.best_ensemble)}};
      if (out_file.empty()) {
        j["ensemble"] = ensemble_json(r.best_ensemble);
      } else {
        write_json_file(out_file, ensemble_json(r.best_ensemble));
        j["ensemble"] = out_file;
      }
      emit(out, std::move(j));
    } else if (*projection) {
      const ProductState ps = random_product_state(copies, seed);
      out << "sector,rank,eoe,bound\n";
      for (int n = 0; n <= 2 * copies; ++n) {
        const ProjectionBound b = projection_entanglement_bound(ps, n);
        out << n << ',' << b.schmidt_rank << ',' << csv_num(b.eoe) << ',' << csv_num(b.bound) << '\n';
      }
    } else if (*selftest) {
      if (fixtures.empty()) {
        if (const char* env = std::getenv("SSR_TOOLKIT_FIXTURES")) fixtures = env;
      }
      return run_acceptance(out, fixtures, selftest_seed) ? kExitOk : kExitDomainError;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    out << Json{{"error", error_code_name(e.code())}, {"detail", e.detail()}}.dump() << '\n';
    return kExitDomainError;
  }
  return kExitOk;
}

}  // namespace ssr
