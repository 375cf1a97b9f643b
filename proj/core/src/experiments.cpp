// Copyright 2026 The dirtomo Authors
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

#include "dirtomo/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "dirtomo/analysis.hpp"
#include "dirtomo/errors.hpp"
#include "dirtomo/io.hpp"
#include "dirtomo/rng.hpp"

namespace dirtomo {

namespace {

/// A state counts as visibly distorted when its weak-estimate trace
/// distance exceeds this.
constexpr double kDistortedThreshold = 0.1;

/// Global trial indices >= this offset are reserved for the fixed
/// validation states so they never collide with per-sample streams.
constexpr std::uint64_t kFixedStateOffset = 1000003;

void require_basic(const ExperimentConfig& config) {
  if (config.d < 2) {
    throw std::invalid_argument("dimension must be at least 2");
  }
  if (config.samples < 1) {
    throw std::invalid_argument("sample count must be positive");
  }
}

std::vector<PointerProbabilities> exact_table(const StateVector& psi,
                                              CouplingAngle theta) {
  std::vector<PointerProbabilities> table(psi.dim());
  for (int x = 0; x < psi.dim(); ++x) {
    table[static_cast<std::size_t>(x)] =
        exact_pointer_probabilities(psi, x, theta, 0);
  }
  return table;
}

std::string optional_cell(const std::optional<double>& v) {
  return v.has_value() ? format_number(*v) : std::string("na");
}

std::span<const PointerBasis> bases_for(Method method) {
  static constexpr std::array<PointerBasis, 2> kTwo = {PointerBasis::kX,
                                                       PointerBasis::kY};
  static constexpr std::array<PointerBasis, 3> kThree = {
      PointerBasis::kX, PointerBasis::kY, PointerBasis::kZ};
  return method == Method::kWeak ? std::span<const PointerBasis>(kTwo)
                                 : std::span<const PointerBasis>(kThree);
}

}  // namespace

AccuracySweepResult run_accuracy_sweep(const ExperimentConfig& config) {
  require_basic(config);
  if (config.theta_grid.empty()) {
    throw std::invalid_argument("theta grid must not be empty");
  }
  AccuracySweepResult out;
  out.rows.reserve(config.theta_grid.size());
  const long long n = config.samples;
  std::vector<double> dist(static_cast<std::size_t>(n));
  std::vector<char> wrong(static_cast<std::size_t>(n));
  std::vector<double> audit(static_cast<std::size_t>(n));
  for (const double theta_value : config.theta_grid) {
    const CouplingAngle angle(theta_value);
    std::fill(audit.begin(), audit.end(), -1.0);
    parallel_for(n, config.workers, [&](long long i) {
      const std::size_t k = static_cast<std::size_t>(i);
      const StateVector psi =
          haar_random_state(config.d, mix_seed(config.seed, i));
      const WavefunctionStats s = wavefunction_stats(psi, angle);
      dist[k] = s.eps_theta * s.sigma_psi / s.norm_n;
      wrong[k] = s.psi_tilde * s.psi_tilde < s.eps_theta ? 1 : 0;
      if (i % 100 == 0) {
        // Audit: the measurement pipeline must land on the closed form.
        const auto result = dwt_estimate(exact_table(psi, angle), angle);
        audit[k] =
            trace_distance_pure(result.state(), dwt_closed_form(psi, angle));
      }
    });
    AccuracySweepRow row;
    row.theta = theta_value;
    row.epsilon = angle.epsilon();
    row.bound = dwt_error_bound(angle);
    row.samples = n;
    double sum_dist = 0.0;
    long long n_wrong = 0;
    long long n_distorted = 0;
    for (long long i = 0; i < n; ++i) {
      const std::size_t k = static_cast<std::size_t>(i);
      sum_dist += dist[k];
      n_wrong += wrong[k];
      n_distorted += dist[k] > kDistortedThreshold ? 1 : 0;
      if (audit[k] >= 0.0) {
        ++out.audited;
        out.audit_max_deviation = std::max(out.audit_max_deviation, audit[k]);
      }
    }
    row.mean_distance = sum_dist / static_cast<double>(n);
    row.frac_wrong_sign =
        static_cast<double>(n_wrong) / static_cast<double>(n);
    row.frac_distorted =
        static_cast<double>(n_distorted) / static_cast<double>(n);
    out.rows.push_back(row);
  }
  return out;
}

std::vector<ScatterRow> run_scatter(const ExperimentConfig& config) {
  require_basic(config);
  const CouplingAngle angle(config.theta);
  const long long n = config.samples;
  std::vector<ScatterRow> rows(static_cast<std::size_t>(n));
  parallel_for(n, config.workers, [&](long long i) {
    const StateVector psi =
        haar_random_state(config.d, mix_seed(config.seed, i));
    const WavefunctionStats s = wavefunction_stats(psi, angle);
    ScatterRow& row = rows[static_cast<std::size_t>(i)];
    row.state_id = i;
    row.psi_tilde = s.psi_tilde;
    row.psi_tilde_w = (s.psi_tilde * s.psi_tilde - s.eps_theta) / s.norm_n;
    row.distance = s.eps_theta * s.sigma_psi / s.norm_n;
    row.ratio = delta_psi_strong(psi, 1) / delta_psi_weak(psi, angle, 1);
    row.ratio_bound = precision_ratio_bound_at(s.psi_tilde, angle, config.d);
    row.ratio_bound_at_estimate = precision_ratio_bound_at(
        psi_tilde_from_indicator(row.psi_tilde_w, angle), angle, config.d);
  });
  return rows;
}

std::vector<ThetaMeansRow> run_theta_means(const ExperimentConfig& config) {
  require_basic(config);
  if (config.theta_grid.empty()) {
    throw std::invalid_argument("theta grid must not be empty");
  }
  std::vector<ThetaMeansRow> rows;
  rows.reserve(config.theta_grid.size());
  const long long n = config.samples;
  std::vector<double> ratio(static_cast<std::size_t>(n));
  std::vector<double> dist(static_cast<std::size_t>(n));
  for (const double theta_value : config.theta_grid) {
    const CouplingAngle angle(theta_value);
    parallel_for(n, config.workers, [&](long long i) {
      const std::size_t k = static_cast<std::size_t>(i);
      const StateVector psi =
          haar_random_state(config.d, mix_seed(config.seed, i));
      const WavefunctionStats s = wavefunction_stats(psi, angle);
      dist[k] = s.eps_theta * s.sigma_psi / s.norm_n;
      ratio[k] = delta_psi_strong(psi, 1) / delta_psi_weak(psi, angle, 1);
    });
    ThetaMeansRow row;
    row.theta = theta_value;
    row.samples = n;
    double sum_ratio = 0.0;
    double sum_dist = 0.0;
    for (long long i = 0; i < n; ++i) {
      const std::size_t k = static_cast<std::size_t>(i);
      sum_ratio += ratio[k];
      sum_dist += dist[k];
    }
    row.mean_ratio = sum_ratio / static_cast<double>(n);
    row.mean_distance = sum_dist / static_cast<double>(n);
    rows.push_back(row);
  }
  return rows;
}

std::vector<ShotNoiseRow> run_shot_noise_validation(
    const ExperimentConfig& config) {
  require_basic(config);
  if (config.reps < 50) {
    throw std::invalid_argument(
        "shot-noise validation needs at least 50 repetitions for a stable "
        "empirical error");
  }
  struct NamedState {
    std::string id;
    StateVector psi;
  };
  const std::vector<NamedState> states = {
      {"uniform", uniform_state(config.d)},
      {"haar0",
       haar_random_state(config.d, mix_seed(config.seed, kFixedStateOffset))},
      {"haar1", haar_random_state(config.d,
                                  mix_seed(config.seed, kFixedStateOffset + 1))},
  };
  struct MethodSpec {
    Method method;
    CouplingAngle angle;
  };
  const std::vector<MethodSpec> methods = {
      {Method::kWeak, CouplingAngle(config.theta)},
      {Method::kStrong, CouplingAngle::strong()},
  };
  std::vector<ShotNoiseRow> rows;
  rows.reserve(states.size() * methods.size());
  const long long reps = config.reps;
  std::vector<double> errs(static_cast<std::size_t>(reps));
  long long job = 0;
  for (const MethodSpec& spec : methods) {
    for (const NamedState& named : states) {
      const auto bases = bases_for(spec.method);
      const long long per_basis =
          config.shots / static_cast<long long>(bases.size());
      if (per_basis < 1) {
        throw std::invalid_argument("shot budget too small for the basis split");
      }
      const long long effective =
          per_basis * static_cast<long long>(bases.size());
      const StateVector target = spec.method == Method::kWeak
                                     ? dwt_closed_form(named.psi, spec.angle)
                                     : named.psi;
      const double predicted =
          spec.method == Method::kWeak
              ? delta_psi_weak(named.psi, spec.angle, effective)
              : delta_psi_strong(named.psi, effective);
      const std::vector<PointerProbabilities> exact =
          exact_table(named.psi, spec.angle);
      parallel_for(reps, config.workers, [&](long long r) {
        const std::uint64_t rep_seed =
            mix_seed(config.seed, static_cast<std::uint64_t>(job * reps + r));
        std::vector<PointerProbabilities> table(exact.size());
        for (std::size_t x = 0; x < exact.size(); ++x) {
          table[x] = sample_counts(exact[x], bases, per_basis, config.scheme,
                                   mix_seed(rep_seed, x))
                         .estimated();
        }
        const ReconstructionResult result =
            spec.method == Method::kWeak ? dwt_estimate(table, spec.angle)
                                         : dst_estimate(table);
        errs[static_cast<std::size_t>(r)] =
            (result.state().amplitudes() - target.amplitudes()).squaredNorm();
      });
      double sum = 0.0;
      for (long long r = 0; r < reps; ++r) {
        sum += errs[static_cast<std::size_t>(r)];
      }
      ShotNoiseRow row;
      row.method = std::string(to_label(spec.method));
      row.theta = spec.angle.theta();
      row.shots = effective;
      row.state_id = named.id;
      row.d = config.d;
      row.reps = static_cast<int>(reps);
      row.delta_empirical = std::sqrt(sum / static_cast<double>(reps));
      row.delta_predicted = predicted;
      row.rel_error = row.delta_empirical / row.delta_predicted - 1.0;
      rows.push_back(row);
      ++job;
    }
  }
  return rows;
}

ReconstructReport run_single_reconstruction(const ReconstructOptions& options) {
  if (options.method != Method::kWeak && options.method != Method::kStrong &&
      options.method != Method::kArbitrary) {
    throw std::invalid_argument(
        "single-state reconstruction handles the pure-state methods; use the "
        "mixed campaign for density matrices");
  }
  const CouplingAngle angle = options.method == Method::kStrong
                                  ? CouplingAngle::strong()
                                  : CouplingAngle(options.theta);
  if (options.method == Method::kStrong &&
      std::abs(options.theta - std::numbers::pi / 2) > 1e-9) {
    throw std::invalid_argument(
        "the strong-coupling method fixes theta = pi/2; use the arbitrary "
        "method for other angles");
  }
  const StateVector raw = read_state_json_file(options.state_path);
  const StateVector psi = normalize_and_fix_phase(raw.amplitudes());
  const int d = psi.dim();
  if (options.momentum < 0 || options.momentum >= d) {
    throw std::invalid_argument("momentum must lie in [0, d)");
  }
  if (psi.pathological() && options.momentum == 0) {
    throw DegenerateInputError(
        "the amplitude sum vanishes, so momentum-0 post-selection carries no "
        "signal; rerun with --momentum p for some p in [1, d)");
  }

  // Probabilities in the measured (momentum-rotated) frame.
  std::vector<PointerProbabilities> table(static_cast<std::size_t>(d));
  for (int x = 0; x < d; ++x) {
    table[static_cast<std::size_t>(x)] =
        exact_pointer_probabilities(psi, x, angle, options.momentum);
  }
  const auto bases = bases_for(options.method);
  long long effective_shots = 0;
  if (options.shots > 0) {
    const long long per_basis =
        options.shots / static_cast<long long>(bases.size());
    if (per_basis < 1) {
      throw std::invalid_argument("shot budget too small for the basis split");
    }
    effective_shots = per_basis * static_cast<long long>(bases.size());
    for (int x = 0; x < d; ++x) {
      auto& cell = table[static_cast<std::size_t>(x)];
      cell = sample_counts(cell, bases, per_basis, options.scheme,
                           mix_seed(options.seed, static_cast<std::uint64_t>(x)))
                 .estimated();
    }
  }

  ReconstructionResult result = [&] {
    switch (options.method) {
      case Method::kWeak:
        return dwt_estimate(table, angle);
      case Method::kStrong:
        return dst_estimate(table);
      default:
        return arbitrary_theta_estimate(table, angle);
    }
  }();

  // Map the estimate back to the momentum-0 frame (inverse phase map).
  const StateVector estimate =
      options.momentum == 0
          ? result.state()
          : momentum_rotated(result.state(), d - options.momentum);

  ReconstructReport report{.method = options.method,
                           .theta = angle.theta(),
                           .momentum = options.momentum,
                           .shots = effective_shots,
                           .estimate = estimate,
                           .distance_to_input =
                               trace_distance_pure(estimate, psi),
                           .psi_tilde_w = result.psi_tilde_w,
                           .sufficiency_ok = result.sufficiency_ok,
                           .bound_value = result.bound_value,
                           .predicted_distance = std::nullopt,
                           .probabilities = std::move(table)};
  if (options.method == Method::kWeak) {
    const StateVector measured = options.momentum == 0
                                     ? psi
                                     : momentum_rotated(psi, options.momentum);
    report.predicted_distance = accuracy(measured, angle).trace_distance;
  }
  return report;
}

std::vector<MixedRow> run_mixed_campaign(const ExperimentConfig& config) {
  require_basic(config);
  const CouplingAngle angle(config.theta);
  std::vector<int> ranks = {1, 2, config.d};
  ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
  const long long per_rank = config.samples;
  const long long total = per_rank * static_cast<long long>(ranks.size());
  std::vector<MixedRow> rows(static_cast<std::size_t>(total));
  const bool weak_defined = angle.cos_theta() > 1e-9;
  parallel_for(total, config.workers, [&](long long k) {
    const int rank =
        ranks[static_cast<std::size_t>(k / per_rank)];
    MixedRow& row = rows[static_cast<std::size_t>(k)];
    row.state_id = k % per_rank;
    row.d = config.d;
    row.rank = rank;
    row.theta = angle.theta();
    const DensityMatrix rho =
        random_density_matrix(config.d, rank, mix_seed(config.seed, k));
    // Full measurement pipeline: per-(site, momentum) probabilities ->
    // tomogram -> estimators.
    std::vector<PointerProbabilities> table;
    table.reserve(static_cast<std::size_t>(config.d) *
                  static_cast<std::size_t>(config.d));
    for (int x = 0; x < config.d; ++x) {
      for (int p = 0; p < config.d; ++p) {
        table.push_back(pointer_density_mixed(rho, x, p, angle).probabilities());
      }
    }
    const PointerTomogram tomogram =
        tomogram_from_probabilities(table, config.d);
    const ReconstructionResult corrected = mixed_dst_estimate(tomogram, angle);
    row.dst_residual = trace_distance_mixed(rho, corrected.density());
    if (weak_defined) {
      const ReconstructionResult weak = mixed_dwt_estimate(tomogram, angle);
      const DensityMatrix closed = mixed_dwt_closed_form(rho, angle);
      row.dist_closed = mixed_accuracy(rho, angle);
      row.dist_pipeline = trace_distance_mixed(rho, weak.density());
      row.closed_vs_pipeline = trace_distance_mixed(weak.density(), closed);
    }
  });
  return rows;
}

void write_accuracy_sweep_csv(std::ostream& out, const std::string& meta,
                              const AccuracySweepResult& result) {
  if (!meta.empty()) {
    out << meta << '\n';
  }
  out << "# audit: max_deviation=" << format_number(result.audit_max_deviation)
      << " audited=" << result.audited << '\n';
  out << "theta,epsilon,frac_wrong_sign,frac_distorted,mean_distance,bound,"
         "samples\n";
  for (const AccuracySweepRow& r : result.rows) {
    out << format_number(r.theta) << ',' << format_number(r.epsilon) << ','
        << format_number(r.frac_wrong_sign) << ','
        << format_number(r.frac_distorted) << ','
        << format_number(r.mean_distance) << ',' << format_number(r.bound)
        << ',' << r.samples << '\n';
  }
}

void write_scatter_csv(std::ostream& out, const std::string& meta,
                       const std::vector<ScatterRow>& rows) {
  if (!meta.empty()) {
    out << meta << '\n';
  }
  out << "state_id,psi_tilde,psi_tilde_w,distance,ratio,ratio_bound,"
         "ratio_bound_at_estimate\n";
  for (const ScatterRow& r : rows) {
    out << r.state_id << ',' << format_number(r.psi_tilde) << ','
        << format_number(r.psi_tilde_w) << ',' << format_number(r.distance)
        << ',' << format_number(r.ratio) << ',' << optional_cell(r.ratio_bound)
        << ',' << optional_cell(r.ratio_bound_at_estimate) << '\n';
  }
}

void write_theta_means_csv(std::ostream& out, const std::string& meta,
                           const std::vector<ThetaMeansRow>& rows) {
  if (!meta.empty()) {
    out << meta << '\n';
  }
  out << "theta,mean_ratio,mean_distance,samples\n";
  for (const ThetaMeansRow& r : rows) {
    out << format_number(r.theta) << ',' << format_number(r.mean_ratio) << ','
        << format_number(r.mean_distance) << ',' << r.samples << '\n';
  }
}

void write_shot_noise_csv(std::ostream& out, const std::string& meta,
                          const std::vector<ShotNoiseRow>& rows) {
  if (!meta.empty()) {
    out << meta << '\n';
  }
  out << "method,theta,shots,state_id,d,reps,delta_empirical,delta_predicted,"
         "rel_error\n";
  for (const ShotNoiseRow& r : rows) {
    out << r.method << ',' << format_number(r.theta) << ',' << r.shots << ','
        << r.state_id << ',' << r.d << ',' << r.reps << ','
        << format_number(r.delta_empirical) << ','
        << format_number(r.delta_predicted) << ','
        << format_number(r.rel_error) << '\n';
  }
}

void write_mixed_csv(std::ostream& out, const std::string& meta,
                     const std::vector<MixedRow>& rows) {
  if (!meta.empty()) {
    out << meta << '\n';
  }
  out << "state_id,d,rank,theta,dist_closed,dist_pipeline,closed_vs_pipeline,"
         "dst_residual\n";
  for (const MixedRow& r : rows) {
    out << r.state_id << ',' << r.d << ',' << r.rank << ','
        << format_number(r.theta) << ',' << optional_cell(r.dist_closed) << ','
        << optional_cell(r.dist_pipeline) << ','
        << optional_cell(r.closed_vs_pipeline) << ','
        << format_number(r.dst_residual) << '\n';
  }
}

}  // namespace dirtomo
