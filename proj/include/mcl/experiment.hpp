// Copyright 2026 The mcl Authors
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
#include <map>
#include <string>
#include <vector>

#include "mcl/dimension.hpp"

namespace mcl {

enum class ExperimentKind { Percolation, Dimension, Embed, Sweep, Verify };
const char* to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(const std::string& text);

const char* code_version();

// Grid axes. Percolation uses L, T, q; the circuit kinds use n, t, p.
struct ExperimentConfig {
  static constexpr int kVersion = 1;

  ExperimentKind kind = ExperimentKind::Sweep;
  std::vector<int> n, t;
  std::vector<double> p;
  std::vector<int> L, T;
  std::vector<double> q;
  int trials = 1;
  std::uint64_t seed = 1;
  int samples = 3;  // Haar samples per rank estimate; 0 skips the rank
  PauliFamily family = PauliFamily::Full15;
  int k = 2;        // embed: logical qubits
  int depth = 2;    // embed: logical depth
  int threads = 0;  // 0 = hardware concurrency
  std::map<std::string, double> tolerances;  // "rank_tol", "fidelity"
  std::string output_path;
  std::string format = "csv";

  void validate() const;  // throws Config
  double tolerance(const std::string& name, double fallback) const;

  std::string to_json() const;
  static ExperimentConfig from_json(const std::string& text);
  static ExperimentConfig load(const std::string& path);
};

struct Observable {
  std::string name;
  double value = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
};

// One grid point. For percolation (n, t, p) hold (L, T, q).
struct ResultRecord {
  ExperimentKind kind = ExperimentKind::Sweep;
  int point = 0;
  int n = 0;
  int t = 0;
  double p = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<Observable> observables;
  std::string error;          // non-empty when the point could not run
  double wall_seconds = 0.0;  // not persisted, so files stay reproducible

  const Observable* find(const std::string& name) const;
};

std::vector<ResultRecord> run_sweep(const ExperimentConfig& config);

std::string records_to_csv(const std::vector<ResultRecord>& records);
std::string records_to_json(const std::vector<ResultRecord>& records, const ExperimentConfig& config);
// format: "csv" or "json".
void persist(const std::vector<ResultRecord>& records, const ExperimentConfig& config, const std::string& path,
             const std::string& format);
// Writes one long-format file per observable into `directory`; returns the paths.
std::vector<std::string> emit_plot_data(const std::vector<ResultRecord>& records, const std::string& directory);

}  // namespace mcl
