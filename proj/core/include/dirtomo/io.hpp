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

#include <iosfwd>
#include <string>
#include <vector>

#include "dirtomo/measurement.hpp"
#include "dirtomo/sampling.hpp"
#include "dirtomo/state.hpp"

namespace dirtomo {

/// Formats a double with 12 significant digits ("%.12g"), the one numeric
/// format used for every CSV cell so outputs are byte-reproducible.
std::string format_number(double value);

/// One metadata comment line placed at the top of every CSV:
/// "# dirtomo <version> | <command> | <key=value ...>".
/// The echo must only contain inputs that determine the numbers below it;
/// execution details such as worker counts stay out so byte-identical
/// reruns stay byte-identical.
std::string metadata_line(const std::string& command,
                          const std::string& config_echo);

/// State vector JSON: {"d": n, "amplitudes": [[re, im], ...]}.
/// Readers reject non-finite entries and vectors whose norm deviates from 1
/// by more than 1e-6, then renormalize exactly (phase left untouched; callers
/// decide whether to phase-fix).
StateVector read_state_json(std::istream& in);
StateVector read_state_json_file(const std::string& path);
void write_state_json(std::ostream& out, const StateVector& psi);
void write_state_json_file(const std::string& path, const StateVector& psi);

/// Density matrix JSON: {"d": n, "rows": [[[re, im], ...], ...]}.
/// Readers enforce Hermiticity/trace via DensityMatrix::physical after a
/// trace renormalization within the same 1e-6 tolerance.
DensityMatrix read_density_json(std::istream& in);
DensityMatrix read_density_json_file(const std::string& path);
void write_density_json(std::ostream& out, const DensityMatrix& rho);
void write_density_json_file(const std::string& path,
                             const DensityMatrix& rho);

/// Pointer-probability table CSV with header
/// x,p,theta,P0,P1,Pplus,Pminus,PL,PR (one row per site/momentum pair).
void write_probability_csv(std::ostream& out, const std::string& meta,
                           const std::vector<PointerProbabilities>& rows);
std::vector<PointerProbabilities> read_probability_csv(std::istream& in);
std::vector<PointerProbabilities> read_probability_csv_file(
    const std::string& path);

/// Raw shot-count CSV with header x,p,theta,basis,outcome,count,trials.
void write_counts_csv(std::ostream& out, const std::string& meta,
                      const std::vector<ShotCounts>& rows);

/// Generic helper: open for writing, throw IoError on failure.
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace dirtomo
