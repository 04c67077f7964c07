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


#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "mcl/acceptance.hpp"
#include "mcl/embedding.hpp"
#include "mcl/error.hpp"
#include "mcl/experiment.hpp"

using namespace mcl;

namespace {

std::string format_for(const std::string& out, const std::string& requested) {
  if (!requested.empty()) return requested;
  return std::filesystem::path(out).extension() == ".json" ? "json" : "csv";
}

void emit(const std::vector<ResultRecord>& records, const ExperimentConfig& config, const std::string& out,
          const std::string& format) {
  if (out.empty() || out == "-") {
    std::cout << (format == "json" ? records_to_json(records, config) : records_to_csv(records));
    return;
  }
  persist(records, config, out, format);
  std::cerr << "wrote " << out << "\n";
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
  f << text << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monitored random circuits: percolation, accessible dimension and embedding experiments"};
  app.require_subcommand(1);

  std::string out, format, plot_dir;
  std::uint64_t seed = 1;
  int trials = 1, threads = 0;

  ExperimentConfig perc;
  perc.kind = ExperimentKind::Percolation;
  auto* p_cmd = app.add_subcommand("percolation", "crossing statistics on L x (T L) rectangles");
  p_cmd->add_option("--L", perc.L, "lattice heights (comma list)")->required()->delimiter(',');
  p_cmd->add_option("--T", perc.T, "aspect ratios (comma list)")->delimiter(',')->default_val(std::vector<int>{1});
  p_cmd->add_option("--q", perc.q, "bond-open probabilities (comma list)")->required()->delimiter(',');

  ExperimentConfig dim;
  dim.kind = ExperimentKind::Dimension;
  std::string family = "Full15";
  auto* d_cmd = app.add_subcommand("dimension", "accessible-dimension estimates over (n, t, p)");
  d_cmd->add_option("--n", dim.n, "qubit counts (even)")->required()->delimiter(',');
  d_cmd->add_option("--t", dim.t, "depths (even)")->required()->delimiter(',');
  d_cmd->add_option("--p", dim.p, "measurement rates")->required()->delimiter(',');
  d_cmd->add_option("--samples", dim.samples, "Haar samples per estimate")->default_val(3);
  d_cmd->add_option("--family", family, "Pauli family: Full15 or SingleQubit6")->default_val("Full15");

  int en = 6, et = 12, ek = 2, edepth = 2;
  double ep = 0.1;
  std::string dump_plan;
  auto* e_cmd = app.add_subcommand("embed", "plan, assign and verify one embedding of a random logical circuit");
  e_cmd->add_option("--n", en, "qubits")->default_val(6);
  e_cmd->add_option("--t", et, "depth")->default_val(12);
  e_cmd->add_option("--p", ep, "measurement rate")->default_val(0.1);
  e_cmd->add_option("--k", ek, "logical qubits")->default_val(2);
  e_cmd->add_option("--depth", edepth, "logical depth")->default_val(2);
  e_cmd->add_option("--dump-plan", dump_plan, "write the plan (with gate table) as JSON to this file");

  std::string config_path;
  auto* s_cmd = app.add_subcommand("sweep", "run a sweep described by a JSON config file");
  s_cmd->add_option("--config", config_path, "config file")->required()->check(CLI::ExistingFile);
  s_cmd->add_option("--plot-dir", plot_dir, "also write per-observable plot data here");

  std::vector<int> only;
  auto* v_cmd = app.add_subcommand("verify", "run the acceptance suite");
  v_cmd->add_option("--only", only, "criterion ids")->delimiter(',');

  for (auto* cmd : {p_cmd, d_cmd, e_cmd}) {
    cmd->add_option("--seed", seed, "master seed")->default_val(1);
    cmd->add_option("--out", out, "output file (stdout if absent)");
  }
  for (auto* cmd : {p_cmd, d_cmd}) {
    cmd->add_option("--trials", trials, "trials per grid point")->default_val(1);
    cmd->add_option("--format", format, "csv or json (default from extension)");
    cmd->add_option("--threads", threads, "worker threads, 0 = all cores")->default_val(0);
    cmd->add_option("--plot-dir", plot_dir, "also write per-observable plot data here");
  }
  s_cmd->add_option("--out", out, "output file (overrides the config)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (p_cmd->parsed() || d_cmd->parsed()) {
      ExperimentConfig c = p_cmd->parsed() ? perc : dim;
      if (d_cmd->parsed()) c.family = family == "SingleQubit6" ? PauliFamily::SingleQubit6 : PauliFamily::Full15;
      c.trials = trials;
      c.seed = seed;
      c.threads = threads;
      c.format = format_for(out, format);
      const auto records = run_sweep(c);
      emit(records, c, out, c.format);
      if (!plot_dir.empty()) emit_plot_data(records, plot_dir);
      return 0;
    }
    if (s_cmd->parsed()) {
      ExperimentConfig c = ExperimentConfig::load(config_path);
      if (!out.empty()) c.output_path = out;
      const auto records = run_sweep(c);
      emit(records, c, c.output_path, format_for(c.output_path, c.format));
      if (!plot_dir.empty()) emit_plot_data(records, plot_dir);
      return 0;
    }
    if (e_cmd->parsed()) {
      const StreamKey root(seed);
      const auto config =
          sample_measurement_configuration(en, et, ep, OutcomeMode::StructuralZero, root.child(Purpose::Measurement));
      const auto logical = LogicalCircuit::random_clifford(ek, edepth, root.child(Purpose::Logical));
      const auto plan = plan_embedding(config, logical);
      const auto gates = assign_gates(plan, logical);
      const auto check = verify_embedding(plan, gates, logical, ep > 0 ? ep : 0.5);
      if (!dump_plan.empty()) write_text(dump_plan, plan.to_json(&gates));
      nlohmann::ordered_json doc;
      doc["n"] = en;
      doc["t"] = et;
      doc["p"] = ep;
      doc["k"] = ek;
      doc["depth"] = edepth;
      doc["seed"] = seed;
      doc["bridges"] = plan.bridges.size();
      doc["added_measurements"] = plan.added_sites.size();
      doc["fidelity"] = check.fidelity;
      doc["log_born_weight"] = check.log_weight;
      if (out.empty())
        std::cout << doc.dump(2) << "\n";
      else
        write_text(out, doc.dump(2));
      return 0;
    }
    if (v_cmd->parsed()) {
      const auto results = run_acceptance([](const CriterionResult& r) { std::cout << format_result(r) << std::endl; }, only);
      const bool ok = acceptance_ok(results);
      std::cout << (ok ? "acceptance: OK" : "acceptance: FAILED") << std::endl;
      return ok ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "mcl: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
