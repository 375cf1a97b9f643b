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

// Command-line laboratory for pointer-coupling wavefunction tomography:
// Monte-Carlo campaigns over random states, finite-shot single-state
// reconstructions, and density-matrix pipelines, all emitting reproducible
// CSV.

#include <cstdio>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dirtomo/analysis.hpp"
#include "dirtomo/errors.hpp"
#include "dirtomo/experiments.hpp"
#include "dirtomo/io.hpp"
#include "dirtomo/version.hpp"

namespace {

using dirtomo::ExperimentConfig;
using dirtomo::format_number;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitDegenerate = 4;

/// Writes `contents` to `path`, or to stdout when path is empty.
void emit(const std::string& path, const std::string& contents) {
  if (path.empty()) {
    std::cout << contents;
  } else {
    dirtomo::write_text_file(path, contents);
    std::cerr << "wrote " << path << '\n';
  }
}

std::string join_grid(const std::vector<double>& grid) {
  std::string s;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i > 0) {
      s += ';';
    }
    s += format_number(grid[i]);
  }
  return s;
}

std::string scheme_label(dirtomo::SamplingScheme scheme) {
  return scheme == dirtomo::SamplingScheme::kPoisson ? "poisson"
                                                     : "multinomial";
}

dirtomo::SamplingScheme scheme_from_label(const std::string& label) {
  if (label == "poisson") {
    return dirtomo::SamplingScheme::kPoisson;
  }
  if (label == "multinomial") {
    return dirtomo::SamplingScheme::kMultinomialWithDiscard;
  }
  throw CLI::ValidationError("--scheme", "must be 'multinomial' or 'poisson'");
}

/// Options shared by the Monte-Carlo campaign subcommands.
struct CampaignCli {
  ExperimentConfig config;
  std::string out_path;
  bool full = false;
  bool gnuplot_hints = false;
  CLI::Option* samples_opt = nullptr;
  CLI::Option* reps_opt = nullptr;
};

void add_common_options(CLI::App* cmd, CampaignCli& cli, bool with_theta_grid,
                        bool with_single_theta) {
  cmd->add_option("--d", cli.config.d, "state dimension (number of sites)")
      ->check(CLI::Range(2, 4096))
      ->capture_default_str();
  if (with_single_theta) {
    cmd->add_option("--theta", cli.config.theta,
                    "coupling angle in radians, in (0, pi/2]")
        ->capture_default_str();
  }
  if (with_theta_grid) {
    cmd->add_option("--theta-grid", cli.config.theta_grid,
                    "coupling angles in radians (comma separated)")
        ->delimiter(',');
  }
  cli.samples_opt =
      cmd->add_option("--samples", cli.config.samples,
                      "number of random states per angle")
          ->check(CLI::PositiveNumber)
          ->capture_default_str();
  cmd->add_option("--seed", cli.config.seed, "master RNG seed")
      ->capture_default_str();
  cmd->add_option("--workers", cli.config.workers,
                  "worker threads (0 = hardware concurrency); never affects "
                  "the output bytes")
      ->check(CLI::Range(0, 1024))
      ->capture_default_str();
  cmd->add_option("--out", cli.out_path, "output CSV path (default: stdout)");
  cmd->add_flag("--full", cli.full,
                "full-scale run (larger sample count unless --samples is "
                "given explicitly)");
  cmd->add_flag("--gnuplot-hints", cli.gnuplot_hints,
                "print a gnuplot snippet for the CSV to stderr");
}

void apply_full_scaling(CampaignCli& cli, long long full_samples) {
  if (cli.full && cli.samples_opt != nullptr && cli.samples_opt->count() == 0) {
    cli.config.samples = full_samples;
  }
}

void print_hints(bool enabled, const std::string& snippet) {
  if (enabled) {
    std::cerr << snippet;
  }
}

std::vector<double> default_theta_grid() {
  return {0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.4, 0.5};
}

int run_app(int argc, char** argv) {
  CLI::App app{
      "dirtomo: site-by-site wavefunction tomography with a coupled qubit "
      "pointer - exact predictions and Monte-Carlo experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(dirtomo::kVersion));

  // ---- accuracy-sweep ----------------------------------------------------
  CampaignCli sweep;
  sweep.config.samples = 100000;
  CLI::App* sweep_cmd = app.add_subcommand(
      "accuracy-sweep",
      "fractions of random states with wrong-signed or visibly distorted "
      "weak-coupling estimates, per coupling angle");
  add_common_options(sweep_cmd, sweep, /*with_theta_grid=*/true,
                     /*with_single_theta=*/false);

  // ---- scatter -----------------------------------------------------------
  CampaignCli scatter;
  scatter.config.samples = 2000;
  CLI::App* scatter_cmd = app.add_subcommand(
      "scatter",
      "per-state distortion and precision-ratio scatter at one angle");
  add_common_options(scatter_cmd, scatter, /*with_theta_grid=*/false,
                     /*with_single_theta=*/true);

  // ---- theta-means -------------------------------------------------------
  CampaignCli means;
  means.config.samples = 20000;
  CLI::App* means_cmd = app.add_subcommand(
      "theta-means",
      "mean precision ratio and mean distortion per coupling angle");
  add_common_options(means_cmd, means, /*with_theta_grid=*/true,
                     /*with_single_theta=*/false);

  // ---- shot-noise --------------------------------------------------------
  CampaignCli noise;
  noise.config.samples = 1;  // unused by this campaign
  std::string noise_scheme = "poisson";
  CLI::App* noise_cmd = app.add_subcommand(
      "shot-noise",
      "empirical statistical error under finite counts versus the "
      "closed-form predictions");
  noise_cmd->add_option("--d", noise.config.d, "state dimension")
      ->check(CLI::Range(2, 4096))
      ->capture_default_str();
  noise_cmd
      ->add_option("--theta", noise.config.theta,
                   "weak-coupling angle in radians")
      ->capture_default_str();
  noise_cmd
      ->add_option("--shots", noise.config.shots,
                   "per-site trial budget, split over the readout bases")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  noise.reps_opt = noise_cmd
                       ->add_option("--reps", noise.config.reps,
                                    "repetitions (>= 50)")
                       ->check(CLI::Range(50, 1000000))
                       ->capture_default_str();
  noise_cmd
      ->add_option("--scheme", noise_scheme,
                   "counting model: poisson (matches the predictions' "
                   "variance model) or multinomial")
      ->capture_default_str();
  noise_cmd->add_option("--seed", noise.config.seed, "master RNG seed")
      ->capture_default_str();
  noise_cmd
      ->add_option("--workers", noise.config.workers,
                   "worker threads (0 = hardware concurrency)")
      ->check(CLI::Range(0, 1024))
      ->capture_default_str();
  noise_cmd->add_option("--out", noise.out_path,
                        "output CSV path (default: stdout)");
  noise_cmd->add_flag("--full", noise.full,
                      "full-scale run (more repetitions unless --reps is "
                      "given explicitly)");
  noise_cmd->add_flag("--gnuplot-hints", noise.gnuplot_hints,
                      "print a gnuplot snippet for the CSV to stderr");

  // ---- reconstruct -------------------------------------------------------
  dirtomo::ReconstructOptions rec;
  std::string rec_method = "dwt";
  std::string rec_scheme = "multinomial";
  std::string rec_out;
  std::string rec_probs_out;
  CLI::App* rec_cmd = app.add_subcommand(
      "reconstruct", "reconstruct one state from a JSON file");
  rec_cmd
      ->add_option("--state", rec.state_path,
                   "input state JSON ({\"d\": n, \"amplitudes\": [[re, im], "
                   "...]})")
      ->required();
  rec_cmd
      ->add_option("--method", rec_method,
                   "estimator: dwt (weak), dst (strong), arbitrary")
      ->capture_default_str();
  CLI::Option* rec_theta_opt =
      rec_cmd
          ->add_option("--theta", rec.theta,
                       "coupling angle in radians (dst fixes pi/2)")
          ->capture_default_str();
  rec_cmd
      ->add_option("--momentum", rec.momentum,
                   "post-selection momentum index in [0, d)")
      ->capture_default_str();
  rec_cmd
      ->add_option("--shots", rec.shots,
                   "per-site trial budget; 0 = exact probabilities")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  rec_cmd
      ->add_option("--scheme", rec_scheme,
                   "counting model for --shots > 0: multinomial or poisson")
      ->capture_default_str();
  rec_cmd->add_option("--seed", rec.seed, "RNG seed for --shots > 0")
      ->capture_default_str();
  rec_cmd->add_option("--out", rec_out,
                      "write the reconstructed state JSON here");
  rec_cmd->add_option("--probs-out", rec_probs_out,
                      "write the simulated probability table CSV here");

  // ---- mixed -------------------------------------------------------------
  CampaignCli mixed;
  mixed.config.samples = 20;
  CLI::App* mixed_cmd = app.add_subcommand(
      "mixed",
      "density-matrix pipeline campaign over random states of ranks "
      "{1, 2, d}");
  add_common_options(mixed_cmd, mixed, /*with_theta_grid=*/false,
                     /*with_single_theta=*/true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message
    return kExitUsage;
  }

  if (sweep_cmd->parsed()) {
    if (sweep.config.theta_grid.empty()) {
      sweep.config.theta_grid = default_theta_grid();
    }
    apply_full_scaling(sweep, 1000000);
    const auto result = run_accuracy_sweep(sweep.config);
    std::ostringstream out;
    std::string echo = "d=" + std::to_string(sweep.config.d) +
                       " samples=" + std::to_string(sweep.config.samples) +
                       " seed=" + std::to_string(sweep.config.seed) +
                       " theta_grid=" + join_grid(sweep.config.theta_grid);
    dirtomo::write_accuracy_sweep_csv(
        out, dirtomo::metadata_line("accuracy-sweep", echo), result);
    emit(sweep.out_path, out.str());
    print_hints(sweep.gnuplot_hints,
                "# gnuplot:\n"
                "#   set datafile separator ','\n"
                "#   set logscale y\n"
                "#   plot 'sweep.csv' every ::1 using 1:3 with linespoints "
                "title 'wrong sign', \\\n"
                "#        '' every ::1 using 1:4 with linespoints title "
                "'distance > 0.1'\n");
    return kExitOk;
  }

  if (scatter_cmd->parsed()) {
    apply_full_scaling(scatter, 20000);
    const auto rows = run_scatter(scatter.config);
    std::ostringstream out;
    std::string echo = "d=" + std::to_string(scatter.config.d) +
                       " theta=" + format_number(scatter.config.theta) +
                       " samples=" + std::to_string(scatter.config.samples) +
                       " seed=" + std::to_string(scatter.config.seed);
    dirtomo::write_scatter_csv(out, dirtomo::metadata_line("scatter", echo),
                               rows);
    emit(scatter.out_path, out.str());
    print_hints(scatter.gnuplot_hints,
                "# gnuplot:\n"
                "#   set datafile separator ','\n"
                "#   plot 'scatter.csv' every ::1 using 3:5 title 'ratio', "
                "\\\n"
                "#        '' every ::1 using 3:7 with lines title 'bound'\n");
    return kExitOk;
  }

  if (means_cmd->parsed()) {
    if (means.config.theta_grid.empty()) {
      means.config.theta_grid = default_theta_grid();
    }
    apply_full_scaling(means, 200000);
    const auto rows = run_theta_means(means.config);
    std::ostringstream out;
    std::string echo = "d=" + std::to_string(means.config.d) +
                       " samples=" + std::to_string(means.config.samples) +
                       " seed=" + std::to_string(means.config.seed) +
                       " theta_grid=" + join_grid(means.config.theta_grid);
    dirtomo::write_theta_means_csv(
        out, dirtomo::metadata_line("theta-means", echo), rows);
    emit(means.out_path, out.str());
    print_hints(means.gnuplot_hints,
                "# gnuplot:\n"
                "#   set datafile separator ','\n"
                "#   plot 'means.csv' every ::1 using 1:2 with linespoints "
                "title 'mean ratio', \\\n"
                "#        '' every ::1 using 1:3 with linespoints title "
                "'mean distance'\n");
    return kExitOk;
  }

  if (noise_cmd->parsed()) {
    noise.config.scheme = scheme_from_label(noise_scheme);
    if (noise.full && noise.reps_opt->count() == 0) {
      noise.config.reps = 500;
    }
    const auto rows = run_shot_noise_validation(noise.config);
    std::ostringstream out;
    std::string echo = "d=" + std::to_string(noise.config.d) +
                       " theta=" + format_number(noise.config.theta) +
                       " shots=" + std::to_string(noise.config.shots) +
                       " reps=" + std::to_string(noise.config.reps) +
                       " scheme=" + scheme_label(noise.config.scheme) +
                       " seed=" + std::to_string(noise.config.seed);
    dirtomo::write_shot_noise_csv(
        out, dirtomo::metadata_line("shot-noise", echo), rows);
    emit(noise.out_path, out.str());
    print_hints(noise.gnuplot_hints,
                "# gnuplot:\n"
                "#   set datafile separator ','\n"
                "#   plot 'noise.csv' every ::1 using 0:9 with points title "
                "'relative error'\n");
    return kExitOk;
  }

  if (rec_cmd->parsed()) {
    rec.method = dirtomo::method_from_label(rec_method);
    rec.scheme = scheme_from_label(rec_scheme);
    if (rec.method == dirtomo::Method::kStrong && rec_theta_opt->count() == 0) {
      rec.theta = std::numbers::pi / 2;  // dst fixes the angle
    }
    const auto report = run_single_reconstruction(rec);
    std::cout << "method: " << dirtomo::to_label(report.method) << '\n';
    std::cout << "theta: " << format_number(report.theta) << '\n';
    std::cout << "momentum: " << report.momentum << '\n';
    if (report.shots > 0) {
      std::cout << "shots: " << report.shots << " ("
                << scheme_label(rec.scheme) << ")\n";
    } else {
      std::cout << "shots: exact probabilities\n";
    }
    std::cout << "sufficiency_ok: " << (report.sufficiency_ok ? "yes" : "no")
              << '\n';
    std::cout << "psi_tilde_w: " << format_number(report.psi_tilde_w) << '\n';
    if (report.bound_value.has_value()) {
      std::cout << "accuracy_bound: " << format_number(*report.bound_value)
                << '\n';
    }
    if (report.predicted_distance.has_value()) {
      std::cout << "predicted_distance: "
                << format_number(*report.predicted_distance) << '\n';
    }
    std::cout << "distance_to_input: "
              << format_number(report.distance_to_input) << '\n';
    for (int x = 0; x < report.estimate.dim(); ++x) {
      const auto a = report.estimate.amplitudes()(x);
      std::cout << "amplitude[" << x << "]: " << format_number(a.real())
                << (a.imag() < 0 ? " - " : " + ")
                << format_number(std::abs(a.imag())) << "i\n";
    }
    if (!rec_out.empty()) {
      dirtomo::write_state_json_file(rec_out, report.estimate);
      std::cerr << "wrote " << rec_out << '\n';
    }
    if (!rec_probs_out.empty()) {
      std::ostringstream out;
      std::string echo =
          "method=" + std::string(dirtomo::to_label(report.method)) +
          " theta=" + format_number(report.theta) +
          " momentum=" + std::to_string(report.momentum) +
          " shots=" + std::to_string(report.shots) +
          " scheme=" + scheme_label(rec.scheme) +
          " seed=" + std::to_string(rec.seed);
      dirtomo::write_probability_csv(
          out, dirtomo::metadata_line("reconstruct", echo),
          report.probabilities);
      dirtomo::write_text_file(rec_probs_out, out.str());
      std::cerr << "wrote " << rec_probs_out << '\n';
    }
    return kExitOk;
  }

  if (mixed_cmd->parsed()) {
    apply_full_scaling(mixed, 100);
    const auto rows = run_mixed_campaign(mixed.config);
    std::ostringstream out;
    std::string echo = "d=" + std::to_string(mixed.config.d) +
                       " theta=" + format_number(mixed.config.theta) +
                       " samples=" + std::to_string(mixed.config.samples) +
                       " seed=" + std::to_string(mixed.config.seed);
    dirtomo::write_mixed_csv(out, dirtomo::metadata_line("mixed", echo), rows);
    emit(mixed.out_path, out.str());
    print_hints(mixed.gnuplot_hints,
                "# gnuplot:\n"
                "#   set datafile separator ','\n"
                "#   plot 'mixed.csv' every ::1 using 4:5 title 'closed "
                "form', '' every ::1 using 4:6 title 'pipeline'\n");
    return kExitOk;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_app(argc, argv);
  } catch (const dirtomo::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kExitIo;
  } catch (const dirtomo::DegenerateInputError& e) {
    std::cerr << "degenerate input: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
