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

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "dirtomo/errors.hpp"
#include "dirtomo/io.hpp"
#include "dirtomo/measurement.hpp"
#include "dirtomo/rng.hpp"
#include "dirtomo/sampling.hpp"
#include "dirtomo/state.hpp"

using namespace dirtomo;

TEST_CASE("number formatting is fixed at 12 significant digits") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(0.115468) == "0.115468");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(1e-9) == "1e-09");
}

TEST_CASE("metadata line carries version, command, and echo") {
  CHECK(metadata_line("accuracy-sweep", "d=10 samples=100") ==
        "# dirtomo 0.1.0 | accuracy-sweep | d=10 samples=100");
  CHECK(metadata_line("scatter", "") == "# dirtomo 0.1.0 | scatter");
}

TEST_CASE("state JSON roundtrip preserves amplitudes and phase") {
  const StateVector psi = haar_random_state(7, 123);
  std::ostringstream out;
  write_state_json(out, psi);
  std::istringstream in(out.str());
  const StateVector back = read_state_json(in);
  REQUIRE(back.dim() == 7);
  CHECK((back.amplitudes() - psi.amplitudes()).cwiseAbs().maxCoeff() <= 1e-14);

  // The reader must not touch a deliberately un-fixed global phase.
  Vector v(2);
  v << Complex(-1.0 / std::sqrt(2.0), 0), Complex(-1.0 / std::sqrt(2.0), 0);
  std::ostringstream out2;
  write_state_json(out2, StateVector::normalized(v));
  std::istringstream in2(out2.str());
  const StateVector back2 = read_state_json(in2);
  CHECK(back2.amplitudes()(0).real() == doctest::Approx(-1.0 / std::sqrt(2.0)));
}

TEST_CASE("state JSON rejects malformed input") {
  const auto reject = [](const std::string& text) {
    std::istringstream in(text);
    CHECK_THROWS_AS(read_state_json(in), IoError);
  };
  reject("not json at all");
  reject(R"({"amplitudes": [[1, 0], [0, 0]]})");              // missing d
  reject(R"({"d": 2, "amplitudes": [[1, 0]]})");              // wrong count
  reject(R"({"d": 1, "amplitudes": [[1, 0]]})");              // d < 2
  reject(R"({"d": 2, "amplitudes": [[1, 0], [0]]})");         // bad pair
  reject(R"({"d": 2, "amplitudes": [[1, 0], ["x", 0]]})");    // non-number
  reject(R"({"d": 2, "amplitudes": [[1e400, 0], [0, 0]]})");  // non-finite
  reject(R"({"d": 2, "amplitudes": [[0.8, 0], [0.5, 0]]})");  // norm 0.943
}

TEST_CASE("state JSON renormalizes tiny norm drift") {
  // Norm deviates by ~3e-7: accepted and renormalized exactly.
  std::istringstream in(
      R"({"d": 2, "amplitudes": [[0.7071065, 0], [0.7071065, 0]]})");
  const StateVector psi = read_state_json(in);
  CHECK(psi.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("density JSON roundtrip and validation") {
  const DensityMatrix rho = random_density_matrix(4, 2, 9);
  std::ostringstream out;
  write_density_json(out, rho);
  std::istringstream in(out.str());
  const DensityMatrix back = read_density_json(in);
  CHECK((back.entries() - rho.entries()).cwiseAbs().maxCoeff() <= 1e-12);

  const auto reject = [](const std::string& text) {
    std::istringstream bad(text);
    CHECK_THROWS_AS(read_density_json(bad), IoError);
  };
  reject(R"({"d": 2, "rows": [[[1, 0], [0, 0]]]})");  // wrong row count
  // Non-Hermitian.
  reject(R"({"d": 2, "rows": [[[0.5, 0], [0.2, 0]], [[0.3, 0], [0.5, 0]]]})");
  // Hermitian but indefinite (eigenvalues 1.2 and -0.2).
  reject(R"({"d": 2, "rows": [[[0.5, 0], [0.7, 0]], [[0.7, 0], [0.5, 0]]]})");
  // Trace far from 1.
  reject(R"({"d": 2, "rows": [[[0.8, 0], [0, 0]], [[0, 0], [0.8, 0]]]})");
}

TEST_CASE("probability CSV roundtrip at 12 significant digits") {
  const StateVector psi = haar_random_state(5, mix_seed(7, 0));
  const CouplingAngle theta(0.37);
  std::vector<PointerProbabilities> rows;
  for (int p = 0; p < 5; ++p) {
    for (int x = 0; x < 5; ++x) {
      rows.push_back(exact_pointer_probabilities(psi, x, theta, p));
    }
  }
  std::ostringstream out;
  write_probability_csv(out, metadata_line("test", "d=5"), rows);
  std::istringstream in(out.str());
  const std::vector<PointerProbabilities> back = read_probability_csv(in);
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(back[i].site == rows[i].site);
    CHECK(back[i].momentum == rows[i].momentum);
    CHECK(std::abs(back[i].theta - rows[i].theta) <= 1e-12);
    CHECK(std::abs(back[i].p0 - rows[i].p0) <= 1e-12);
    CHECK(std::abs(back[i].p1 - rows[i].p1) <= 1e-12);
    CHECK(std::abs(back[i].p_plus - rows[i].p_plus) <= 1e-12);
    CHECK(std::abs(back[i].p_minus - rows[i].p_minus) <= 1e-12);
    CHECK(std::abs(back[i].p_left - rows[i].p_left) <= 1e-12);
    CHECK(std::abs(back[i].p_right - rows[i].p_right) <= 1e-12);
  }
}

TEST_CASE("probability CSV reader skips comments and validates structure") {
  const std::string good =
      "# metadata comment\n"
      "x,p,theta,P0,P1,Pplus,Pminus,PL,PR\n"
      "# mid-file comment\n"
      "0,0,0.2,0.1,0.2,0.15,0.15,0.15,0.15\n";
  std::istringstream in(good);
  const auto rows = read_probability_csv(in);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].p1 == doctest::Approx(0.2));

  const auto reject = [](const std::string& text) {
    std::istringstream bad(text);
    CHECK_THROWS_AS(read_probability_csv(bad), IoError);
  };
  reject("wrong,header\n0,0,0.2,0.1,0.2,0.15,0.15,0.15,0.15\n");
  reject("x,p,theta,P0,P1,Pplus,Pminus,PL,PR\n0,0,0.2,0.1\n");  // 4 fields
  reject("x,p,theta,P0,P1,Pplus,Pminus,PL,PR\n0,0,abc,0.1,0.2,0.15,0.15,0.15,0.15\n");
  reject("# only a comment, no header\n");
}

TEST_CASE("counts CSV lists outcome rows, discard only when it is drawn") {
  PointerProbabilities probs;
  probs.p_plus = 0.07;
  probs.p_minus = 0.03;
  probs.site = 2;
  probs.momentum = 0;
  probs.theta = 0.5;
  const PointerBasis bases[] = {PointerBasis::kX};

  ShotCounts multinomial = sample_counts(
      probs, bases, 100, SamplingScheme::kMultinomialWithDiscard, 11);
  std::ostringstream out;
  write_counts_csv(out, "", {multinomial});
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "x,p,theta,basis,outcome,count,trials");
  std::getline(lines, line);
  CHECK(line.rfind("2,0,0.5,X,+,", 0) == 0);
  std::getline(lines, line);
  CHECK(line.rfind("2,0,0.5,X,-,", 0) == 0);
  std::getline(lines, line);
  CHECK(line.rfind("2,0,0.5,X,discard,", 0) == 0);
  CHECK_FALSE(std::getline(lines, line));

  ShotCounts poisson =
      sample_counts(probs, bases, 100, SamplingScheme::kPoisson, 11);
  std::ostringstream out2;
  write_counts_csv(out2, "", {poisson});
  CHECK(out2.str().find("discard") == std::string::npos);
}

TEST_CASE("text file writer reports unwritable paths") {
  CHECK_THROWS_AS(write_text_file("/nonexistent-dir/file.txt", "x"), IoError);
}

TEST_CASE("state JSON file helpers report missing files") {
  CHECK_THROWS_AS(read_state_json_file("/nonexistent-dir/state.json"), IoError);
}
