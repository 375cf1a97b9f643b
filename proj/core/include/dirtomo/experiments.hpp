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

#pragma once

#include <cstdint>
#include <exception>
#include <iosfwd>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "dirtomo/reconstruction.hpp"
#include "dirtomo/sampling.hpp"
#include "dirtomo/state.hpp"

namespace dirtomo {

/// Run i.i.d. trials fn(0..n-1) on up to `workers` threads (0 = hardware
/// concurrency). Each index must write only to its own preallocated slot;
/// campaign outputs are then reduced sequentially in index order, which
/// keeps every result byte-identical for any worker count. The first
/// exception thrown by any trial is rethrown on the calling thread.
template <typename Fn>
void parallel_for(long long n, int workers, Fn&& fn) {
  if (n <= 0) {
    return;
  }
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) {
    hw = 1;
  }
  long long nthreads = workers > 0 ? workers : static_cast<long long>(hw);
  if (nthreads > n) {
    nthreads = n;
  }
  if (nthreads <= 1) {
    for (long long i = 0; i < n; ++i) {
      fn(i);
    }
    return;
  }
  std::mutex mu;
  std::exception_ptr first_error;
  const long long chunk = (n + nthreads - 1) / nthreads;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(nthreads));
  for (long long t = 0; t < nthreads; ++t) {
    const long long begin = t * chunk;
    const long long end = std::min(n, begin + chunk);
    if (begin >= end) {
      break;
    }
    pool.emplace_back([&, begin, end] {
      try {
        for (long long i = begin; i < end; ++i) {
          fn(i);
        }
      } catch (...) {
        const std::lock_guard<std::mutex> lock(mu);
        if (!first_error) {
          first_error = std::current_exception();
        }
      }
    });
  }
  for (std::thread& th : pool) {
    th.join();
  }
  if (first_error) {
    std::rethrow_exception(first_error);
  }
}

/// Shared knobs for the Monte-Carlo campaigns. Each campaign reads the
/// subset it needs. The trial at global index i always derives its RNG
/// stream from mix_seed(seed, i), so outputs depend only on the knobs that
/// appear in the CSV metadata echo, never on the worker count.
struct ExperimentConfig {
  int d = 10;
  double theta = 0.2;               ///< coupling angle for single-angle runs
  std::vector<double> theta_grid;   ///< angles for sweep / means campaigns
  long long samples = 100000;       ///< Monte-Carlo states per angle
  long long shots = 1000000;        ///< per-site trial budget N
  int reps = 200;                   ///< repetitions for shot-noise runs
  std::uint64_t seed = 20260819;
  int workers = 0;                  ///< 0 = hardware concurrency
  SamplingScheme scheme = SamplingScheme::kPoisson;
};

/// ---------------------------------------------------------------------
/// Accuracy sweep: fraction of Haar-random states whose weak-coupling
/// estimate comes out wrong-signed or visibly distorted, per angle.
/// The same state set (mix_seed(seed, i), angle-independent) is reused at
/// every angle so the curves are comparable point by point.

struct AccuracySweepRow {
  double theta = 0.0;
  double epsilon = 0.0;
  double frac_wrong_sign = 0.0;  ///< share with negative estimated amplitude sum
  double frac_distorted = 0.0;   ///< share with trace distance > 0.1
  double mean_distance = 0.0;
  double bound = 0.0;            ///< theta-only accuracy bound
  long long samples = 0;
};

struct AccuracySweepResult {
  std::vector<AccuracySweepRow> rows;
  /// Every 100th state is also pushed through the probability -> estimator
  /// pipeline and compared against the closed form; this is the largest
  /// trace distance seen (should sit at rounding level).
  double audit_max_deviation = 0.0;
  long long audited = 0;
};

AccuracySweepResult run_accuracy_sweep(const ExperimentConfig& config);

/// ---------------------------------------------------------------------
/// Per-state scatter at one angle: distortion and precision-ratio data.

struct ScatterRow {
  long long state_id = 0;
  double psi_tilde = 0.0;    ///< true amplitude sum
  double psi_tilde_w = 0.0;  ///< amplitude sum of the distorted estimate
  double distance = 0.0;     ///< trace distance to the distorted estimate
  double ratio = 0.0;        ///< delta_strong / delta_weak (shots cancel)
  std::optional<double> ratio_bound;  ///< bound at the true amplitude sum
  std::optional<double> ratio_bound_at_estimate;  ///< bound at the sum
                                                  ///< recovered from psi_tilde_w
};

std::vector<ScatterRow> run_scatter(const ExperimentConfig& config);

/// ---------------------------------------------------------------------
/// Mean precision ratio and mean distortion per angle (same states at
/// every angle, as in the sweep).

struct ThetaMeansRow {
  double theta = 0.0;
  double mean_ratio = 0.0;
  double mean_distance = 0.0;
  long long samples = 0;
};

std::vector<ThetaMeansRow> run_theta_means(const ExperimentConfig& config);

/// ---------------------------------------------------------------------
/// Shot-noise validation: empirical statistical error of the estimators
/// under finite counts versus the closed-form predictions.
///
/// States: the equal-amplitude state plus two Haar-random states. Methods:
/// the weak-coupling estimator at config.theta (budget split over the two
/// transverse bases) and the strong-coupling estimator (three bases).
/// Empirical error is the root mean (over reps) of the squared distance to
/// the estimator's asymptotic target. Requires reps >= 50 for a usable
/// error-on-error; throws std::invalid_argument below that.

struct ShotNoiseRow {
  std::string method;    ///< "dwt" or "dst"
  double theta = 0.0;
  long long shots = 0;   ///< effective per-site budget (bases * per-basis)
  std::string state_id;  ///< "uniform", "haar0", "haar1"
  int d = 0;
  int reps = 0;
  double delta_empirical = 0.0;
  double delta_predicted = 0.0;
  double rel_error = 0.0;  ///< delta_empirical / delta_predicted - 1
};

std::vector<ShotNoiseRow> run_shot_noise_validation(
    const ExperimentConfig& config);

/// ---------------------------------------------------------------------
/// Single-state reconstruction (the `reconstruct` tool).

struct ReconstructOptions {
  std::string state_path;
  Method method = Method::kWeak;  ///< pure-state methods only
  double theta = 0.2;
  int momentum = 0;
  long long shots = 0;  ///< 0 = exact probabilities, no sampling
  SamplingScheme scheme = SamplingScheme::kMultinomialWithDiscard;
  std::uint64_t seed = 20260819;
};

struct ReconstructReport {
  Method method;
  double theta = 0.0;
  int momentum = 0;
  long long shots = 0;
  StateVector estimate;          ///< mapped back to the momentum-0 frame
  double distance_to_input = 0.0;
  double psi_tilde_w = 0.0;      ///< estimator amplitude sum (measured frame)
  bool sufficiency_ok = true;
  std::optional<double> bound_value;
  std::optional<double> predicted_distance;  ///< weak method, exact inputs
  /// Simulated probability table in the measured frame (one row per site).
  std::vector<PointerProbabilities> probabilities;
};

ReconstructReport run_single_reconstruction(const ReconstructOptions& options);

/// ---------------------------------------------------------------------
/// Mixed-state campaign: random density matrices of ranks {1, 2, d} pushed
/// through the full probability -> tomogram -> estimator pipeline at one
/// angle. Weak-estimator columns are absent at theta = pi/2 (estimate
/// undefined there); the corrected estimator column is always present and
/// should sit at rounding level at every angle.

struct MixedRow {
  long long state_id = 0;
  int d = 0;
  int rank = 0;
  double theta = 0.0;
  std::optional<double> dist_closed;         ///< closed-form distortion
  std::optional<double> dist_pipeline;       ///< input vs pipeline weak estimate
  std::optional<double> closed_vs_pipeline;  ///< the two estimates' distance
  double dst_residual = 0.0;  ///< input vs pipeline corrected estimate
};

std::vector<MixedRow> run_mixed_campaign(const ExperimentConfig& config);

/// ---------------------------------------------------------------------
/// CSV writers (meta is the metadata_line; pass "" to omit).

void write_accuracy_sweep_csv(std::ostream& out, const std::string& meta,
                              const AccuracySweepResult& result);
void write_scatter_csv(std::ostream& out, const std::string& meta,
                       const std::vector<ScatterRow>& rows);
void write_theta_means_csv(std::ostream& out, const std::string& meta,
                           const std::vector<ThetaMeansRow>& rows);
void write_shot_noise_csv(std::ostream& out, const std::string& meta,
                          const std::vector<ShotNoiseRow>& rows);
void write_mixed_csv(std::ostream& out, const std::string& meta,
                     const std::vector<MixedRow>& rows);

}  // namespace dirtomo
