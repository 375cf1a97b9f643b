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

#include "dirtomo/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "dirtomo/errors.hpp"
#include "dirtomo/version.hpp"

namespace dirtomo {

namespace {

using nlohmann::json;

constexpr double kNormTolerance = 1e-6;

json parse_json(std::istream& in, const char* what) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw IoError(std::string("failed to parse ") + what + ": " + e.what());
  }
  return j;
}

Complex complex_from_pair(const json& pair, const char* what) {
  if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
      !pair[1].is_number()) {
    throw IoError(std::string(what) + ": entries must be [re, im] pairs");
  }
  const double re = pair[0].get<double>();
  const double im = pair[1].get<double>();
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw IoError(std::string(what) + ": non-finite entry");
  }
  return {re, im};
}

json pair_from_complex(const Complex& z) { return json::array({z.real(), z.imag()}); }

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open for reading: " + path);
  }
  return in;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    fields.push_back(field);
  }
  if (!line.empty() && line.back() == ',') {
    fields.emplace_back();
  }
  return fields;
}

double parse_double_field(const std::string& field, const char* what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(field, &pos);
    if (pos != field.size()) {
      throw std::invalid_argument("trailing characters");
    }
    return v;
  } catch (const std::exception&) {
    throw IoError(std::string("bad numeric field in ") + what + ": '" +
                  field + "'");
  }
}

int parse_int_field(const std::string& field, const char* what) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(field, &pos);
    if (pos != field.size()) {
      throw std::invalid_argument("trailing characters");
    }
    return v;
  } catch (const std::exception&) {
    throw IoError(std::string("bad integer field in ") + what + ": '" +
                  field + "'");
  }
}

constexpr const char* kProbabilityHeader =
    "x,p,theta,P0,P1,Pplus,Pminus,PL,PR";

}  // namespace

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::string metadata_line(const std::string& command,
                          const std::string& config_echo) {
  std::string line = "# dirtomo ";
  line += kVersion;
  line += " | ";
  line += command;
  if (!config_echo.empty()) {
    line += " | ";
    line += config_echo;
  }
  return line;
}

StateVector read_state_json(std::istream& in) {
  const json j = parse_json(in, "state JSON");
  if (!j.is_object() || !j.contains("d") || !j.contains("amplitudes")) {
    throw IoError("state JSON must be {\"d\": n, \"amplitudes\": [[re, im], ...]}");
  }
  if (!j["d"].is_number_integer()) {
    throw IoError("state JSON: \"d\" must be an integer");
  }
  const int d = j["d"].get<int>();
  const json& amps = j["amplitudes"];
  if (d < 2 || !amps.is_array() || static_cast<int>(amps.size()) != d) {
    throw IoError("state JSON: \"amplitudes\" must hold d >= 2 pairs");
  }
  Vector v(d);
  for (int x = 0; x < d; ++x) {
    v(x) = complex_from_pair(amps[x], "state JSON");
  }
  const double n = v.norm();
  if (std::abs(n - 1.0) > kNormTolerance) {
    throw IoError("state JSON: norm deviates from 1 by more than 1e-6 (got " +
                  format_number(n) + ")");
  }
  v /= n;  // exactly renormalize, phase untouched
  return StateVector::normalized(v);
}

StateVector read_state_json_file(const std::string& path) {
  std::ifstream in = open_input(path);
  return read_state_json(in);
}

void write_state_json(std::ostream& out, const StateVector& psi) {
  json amps = json::array();
  for (int x = 0; x < psi.dim(); ++x) {
    amps.push_back(pair_from_complex(psi.amplitudes()(x)));
  }
  const json j = {{"d", psi.dim()}, {"amplitudes", amps}};
  out << j.dump(2) << '\n';
}

void write_state_json_file(const std::string& path, const StateVector& psi) {
  std::ostringstream ss;
  write_state_json(ss, psi);
  write_text_file(path, ss.str());
}

DensityMatrix read_density_json(std::istream& in) {
  const json j = parse_json(in, "density JSON");
  if (!j.is_object() || !j.contains("d") || !j.contains("rows")) {
    throw IoError(
        "density JSON must be {\"d\": n, \"rows\": [[[re, im], ...], ...]}");
  }
  if (!j["d"].is_number_integer()) {
    throw IoError("density JSON: \"d\" must be an integer");
  }
  const int d = j["d"].get<int>();
  const json& rows = j["rows"];
  if (d < 2 || !rows.is_array() || static_cast<int>(rows.size()) != d) {
    throw IoError("density JSON: \"rows\" must hold d >= 2 rows");
  }
  Matrix m(d, d);
  for (int x = 0; x < d; ++x) {
    const json& row = rows[x];
    if (!row.is_array() || static_cast<int>(row.size()) != d) {
      throw IoError("density JSON: each row must hold d pairs");
    }
    for (int y = 0; y < d; ++y) {
      m(x, y) = complex_from_pair(row[y], "density JSON");
    }
  }
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > kNormTolerance || std::abs(m.trace().imag()) > kNormTolerance) {
    throw IoError("density JSON: trace deviates from 1 by more than 1e-6");
  }
  m /= tr;
  try {
    return DensityMatrix::physical(m);
  } catch (const std::invalid_argument& e) {
    throw IoError(std::string("density JSON: ") + e.what());
  }
}

DensityMatrix read_density_json_file(const std::string& path) {
  std::ifstream in = open_input(path);
  return read_density_json(in);
}

void write_density_json(std::ostream& out, const DensityMatrix& rho) {
  json rows = json::array();
  for (int x = 0; x < rho.dim(); ++x) {
    json row = json::array();
    for (int y = 0; y < rho.dim(); ++y) {
      row.push_back(pair_from_complex(rho.entries()(x, y)));
    }
    rows.push_back(row);
  }
  const json j = {{"d", rho.dim()}, {"rows", rows}};
  out << j.dump(2) << '\n';
}

void write_density_json_file(const std::string& path,
                             const DensityMatrix& rho) {
  std::ostringstream ss;
  write_density_json(ss, rho);
  write_text_file(path, ss.str());
}

void write_probability_csv(std::ostream& out, const std::string& meta,
                           const std::vector<PointerProbabilities>& rows) {
  if (!meta.empty()) {
    out << meta << '\n';
  }
  out << kProbabilityHeader << '\n';
  for (const PointerProbabilities& r : rows) {
    out << r.site << ',' << r.momentum << ',' << format_number(r.theta) << ','
        << format_number(r.p0) << ',' << format_number(r.p1) << ','
        << format_number(r.p_plus) << ',' << format_number(r.p_minus) << ','
        << format_number(r.p_left) << ',' << format_number(r.p_right) << '\n';
  }
}

std::vector<PointerProbabilities> read_probability_csv(std::istream& in) {
  std::vector<PointerProbabilities> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty() || line[0] == '#') {
      continue;
    }
    if (!header_seen) {
      if (line != kProbabilityHeader) {
        throw IoError(std::string("probability CSV: expected header '") +
                      kProbabilityHeader + "', got '" + line + "'");
      }
      header_seen = true;
      continue;
    }
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != 9) {
      throw IoError("probability CSV: expected 9 fields, got " +
                    std::to_string(f.size()));
    }
    PointerProbabilities p;
    p.site = parse_int_field(f[0], "probability CSV");
    p.momentum = parse_int_field(f[1], "probability CSV");
    p.theta = parse_double_field(f[2], "probability CSV");
    p.p0 = parse_double_field(f[3], "probability CSV");
    p.p1 = parse_double_field(f[4], "probability CSV");
    p.p_plus = parse_double_field(f[5], "probability CSV");
    p.p_minus = parse_double_field(f[6], "probability CSV");
    p.p_left = parse_double_field(f[7], "probability CSV");
    p.p_right = parse_double_field(f[8], "probability CSV");
    rows.push_back(p);
  }
  if (!header_seen) {
    throw IoError("probability CSV: missing header");
  }
  return rows;
}

std::vector<PointerProbabilities> read_probability_csv_file(
    const std::string& path) {
  std::ifstream in = open_input(path);
  return read_probability_csv(in);
}

void write_counts_csv(std::ostream& out, const std::string& meta,
                      const std::vector<ShotCounts>& rows) {
  if (!meta.empty()) {
    out << meta << '\n';
  }
  out << "x,p,theta,basis,outcome,count,trials\n";
  for (const ShotCounts& r : rows) {
    for (const BasisCounts& b : r.counts) {
      const auto emit = [&](std::string_view outcome, long long count) {
        out << r.site << ',' << r.momentum << ',' << format_number(r.theta)
            << ',' << to_label(b.basis) << ',' << outcome << ',' << count
            << ',' << r.trials_per_basis << '\n';
      };
      emit(to_label(first_outcome(b.basis)), b.first);
      emit(to_label(second_outcome(b.basis)), b.second);
      if (r.scheme == SamplingScheme::kMultinomialWithDiscard) {
        emit("discard", b.discard);
      }
    }
  }
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open for writing: " + path);
  }
  out << contents;
  if (!out) {
    throw IoError("write failed: " + path);
  }
}

}  // namespace dirtomo
