// Copyright 2026 The beew Authors
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

#ifndef BEEW_IO_HPP_
#define BEEW_IO_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace beew {

struct DatasetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two-column delimited text: comma or whitespace separators, '#' comments,
// optional header auto-detected by a non-numeric first row. Values are
// multiplied by rescale and must come out finite and > 0.
struct Dataset {
  std::vector<std::pair<double, double>> rows;
  bool had_header = false;
  std::string source;
};

Dataset read_dataset(const std::string& path, double rescale = 1.0);
Dataset parse_dataset(const std::string& text, double rescale = 1.0,
                      std::string source = {});

// Writes "x1,x2" header plus one row per pair with round-trip precision.
std::string format_dataset(std::span<const std::pair<double, double>> rows);
void write_dataset(const std::string& path,
                   std::span<const std::pair<double, double>> rows);

struct KsEntry {
  std::string target;
  double statistic = 0.0;
  double p_value = 0.0;
};

struct LrtEntry {
  double statistic = 0.0;
  int df = 0;
  double p_value = 0.0;
};

// Machine-readable result of one CLI command. Serialization is
// deterministic (fixed key order, round-trip number formatting) and
// parse(serialize(r)) == r.
struct ReportDocument {
  std::string command;  // fit | simulate | eval | compare | gof
  std::string model;

  std::optional<std::string> data_path;
  std::optional<std::uint64_t> n, n0, n1, n2;
  std::optional<double> tie_eps, rescale;

  std::vector<std::string> param_names;
  std::vector<double> estimates;
  std::vector<double> se;

  std::optional<double> loglik;
  std::optional<int> k;
  std::optional<double> aic, aicc, bic;
  std::vector<KsEntry> ks;
  std::optional<LrtEntry> lrt;

  std::optional<std::uint64_t> iterations;
  std::optional<bool> converged;
  std::optional<double> loglik_initial;  // EM trace summary: first value
  std::vector<std::string> flags;

  std::optional<std::uint64_t> seed;
  std::optional<std::string> rng_version;
  std::optional<std::string> out_path;

  std::optional<double> x1, x2, value;
  std::optional<std::string> what, region;

  std::vector<ReportDocument> fits;  // compare: base fit then full fit

  std::string to_json() const;
  static ReportDocument from_json(const std::string& text);

  friend bool operator==(const ReportDocument&, const ReportDocument&);
};

}  // namespace beew

#endif  // BEEW_IO_HPP_
