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


#include "mcl/experiment.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "mcl/embedding.hpp"
#include "mcl/error.hpp"
#include "mcl/percolation.hpp"

#ifndef MCL_VERSION_TAG
#define MCL_VERSION_TAG "dev"
#endif

namespace mcl {

namespace {

using json = nlohmann::ordered_json;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

PauliFamily parse_family(const std::string& s) {
  if (s == to_string(PauliFamily::Full15)) return PauliFamily::Full15;
  if (s == to_string(PauliFamily::SingleQubit6)) return PauliFamily::SingleQubit6;
  throw Error(ErrorKind::Config, "unknown Pauli family '" + s + "'");
}

// Per-trial values keyed by observable name; NaN marks "not measured".
using TrialValues = std::map<std::string, double>;

struct Point {
  int n, t;
  double p;
};

std::vector<Point> grid_points(const ExperimentConfig& c) {
  std::vector<Point> pts;
  if (c.kind == ExperimentKind::Percolation) {
    for (int L : c.L)
      for (int T : c.T)
        for (double q : c.q) pts.push_back({L, T, q});
  } else {
    for (int n : c.n)
      for (int t : c.t)
        for (double p : c.p) pts.push_back({n, t, p});
  }
  return pts;
}

TrialValues percolation_trial(const Point& pt, const StreamKey& stream) {
  const BondLattice lat = rectangular_lattice(pt.n, pt.t * pt.n, pt.p, stream);
  const auto rep = max_edge_disjoint_crossings(lat, false);
  return {{"crossing", rep.exists ? 1.0 : 0.0}, {"edge_disjoint", static_cast<double>(rep.count)}};
}

TrialValues circuit_trial(const ExperimentConfig& c, const Point& pt, const StreamKey& stream) {
  TrialValues v;
  const auto config = sample_measurement_configuration(pt.n, pt.t, pt.p, OutcomeMode::StructuralZero,
                                                       stream.child(Purpose::Measurement));
  const bool structure = c.kind == ExperimentKind::Sweep;
  if (structure) {
    const BondLattice lat = circuit_to_bond_lattice(config);
    const auto rep = max_edge_disjoint_crossings(lat, false);
    v["crossing"] = rep.exists ? 1.0 : 0.0;
    v["edge_disjoint"] = rep.count;
    const auto clusters = final_time_clusters(config);
    v["max_cluster"] = clusters.max_size();
    double total = 0.0;
    for (const auto& cl : clusters.clusters) total += cl.size();
    v["mean_cluster"] = clusters.m() > 0 ? total / clusters.m() : 0.0;
    v["effective_gates"] = effective_gate_count(config);
  }
  if ((structure || c.kind == ExperimentKind::Dimension) && c.samples > 0) {
    const auto rank = estimate_accessible_dimension(config, c.samples, stream.child(Purpose::RankSamples), c.family,
                                                    c.tolerance("rank_tol", 1e-9));
    v["dimension"] = rank.rank;
    v["gap_warning"] = rank.gap_warning ? 1.0 : 0.0;
  }
  if (structure) {
    const auto layout = BrickwallLayout::build(pt.n, pt.t);
    const auto gates = sample_haar_gates(layout, stream.child(Purpose::Gates));
    const auto traj = sample_trajectory(pt.n, pt.t, pt.p, gates, stream.child(Purpose::Trajectory));
    v["log_born_weight"] = traj.log_weight;
    for (int cut = 1; cut < pt.n; ++cut) v["schmidt_rank_cut" + std::to_string(cut)] = schmidt_rank(traj.state, cut);
  }
  if (c.kind == ExperimentKind::Embed) {
    const auto logical = LogicalCircuit::random_clifford(c.k, c.depth, stream.child(Purpose::Logical));
    try {
      const auto plan = plan_embedding(config, logical);
      const auto chk = verify_embedding(plan, assign_gates(plan, logical), logical, pt.p > 0 ? pt.p : 0.5);
      v["plan_found"] = 1.0;
      v["fidelity"] = chk.fidelity;
      v["log_born_weight"] = chk.log_weight;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::InsufficientPaths && e.kind() != ErrorKind::NoBridgeFound &&
          e.kind() != ErrorKind::NoGateSlot)
        throw;
      v["plan_found"] = 0.0;
    }
  }
  return v;
}

std::vector<double> present(const std::vector<TrialValues>& trials, const std::string& key) {
  std::vector<double> out;
  for (const auto& t : trials) {
    const auto it = t.find(key);
    if (it != t.end() && !std::isnan(it->second)) out.push_back(it->second);
  }
  return out;
}

Observable mean_of(const std::string& name, const std::vector<double>& xs) {
  Observable o{name, kNaN, kNaN, kNaN};
  if (xs.empty()) return o;
  double s = 0.0;
  for (double x : xs) s += x;
  const double mean = s / xs.size();
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double half = xs.size() > 1 ? 1.96 * std::sqrt(ss / (xs.size() - 1) / xs.size()) : 0.0;
  return {name, mean, mean - half, mean + half};
}

// Median with a distribution-free order-statistic interval (about 95%).
Observable median_of(const std::string& name, std::vector<double> xs) {
  Observable o{name, kNaN, kNaN, kNaN};
  if (xs.empty()) return o;
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  const double med = n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
  const double spread = 0.98 * std::sqrt(static_cast<double>(n));
  const auto lo = static_cast<std::size_t>(std::max(0.0, std::floor(n / 2.0 - spread)));
  const auto hi = static_cast<std::size_t>(std::min<double>(n - 1, std::ceil(n / 2.0 + spread) - 1));
  return {name, med, xs[lo], xs[std::max(lo, hi)]};
}

Observable proportion_of(const std::string& name, const std::vector<double>& xs) {
  if (xs.empty()) return {name, kNaN, kNaN, kNaN};
  int hits = 0;
  for (double x : xs) hits += x > 0.5 ? 1 : 0;
  const auto e = wilson_estimate(hits, static_cast<int>(xs.size()));
  return {name, e.value, e.ci_lo, e.ci_hi};
}

Observable min_of(const std::string& name, const std::vector<double>& xs) {
  if (xs.empty()) return {name, kNaN, kNaN, kNaN};
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  return {name, *lo, *lo, *hi};
}

std::vector<Observable> reduce(ExperimentKind kind, int n, const std::vector<TrialValues>& trials) {
  std::vector<Observable> out;
  auto add = [&](Observable o) {
    if (!std::isnan(o.value)) out.push_back(std::move(o));
  };
  if (kind == ExperimentKind::Percolation || kind == ExperimentKind::Sweep) {
    add(proportion_of("crossing_probability", present(trials, "crossing")));
    add(mean_of("max_edge_disjoint_mean", present(trials, "edge_disjoint")));
  }
  if (kind == ExperimentKind::Sweep) {
    add(mean_of("max_final_cluster_mean", present(trials, "max_cluster")));
    add(median_of("max_final_cluster_median", present(trials, "max_cluster")));
    add(mean_of("mean_final_cluster_mean", present(trials, "mean_cluster")));
    add(median_of("effective_gates_median", present(trials, "effective_gates")));
    add(mean_of("effective_gates_mean", present(trials, "effective_gates")));
    for (int cut = 1; cut < n; ++cut) {
      const std::string key = "schmidt_rank_cut" + std::to_string(cut);
      add(mean_of(key + "_mean", present(trials, key)));
    }
  }
  if (kind == ExperimentKind::Sweep || kind == ExperimentKind::Dimension) {
    add(median_of("dimension_median", present(trials, "dimension")));
    add(mean_of("dimension_mean", present(trials, "dimension")));
    add(proportion_of("rank_gap_warning_rate", present(trials, "gap_warning")));
  }
  if (kind == ExperimentKind::Embed) {
    add(proportion_of("plan_found_probability", present(trials, "plan_found")));
    add(min_of("fidelity_min", present(trials, "fidelity")));
  }
  if (kind == ExperimentKind::Sweep || kind == ExperimentKind::Embed)
    add(mean_of("log_born_weight_mean", present(trials, "log_born_weight")));
  return out;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_file(const std::string& path, const std::string& text) {
  const auto parent = std::filesystem::path(path).parent_path();
  std::error_code ec;
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write failed for '" + path + "'");
}

json double_json(double x) { return std::isnan(x) ? json(nullptr) : json(x); }

}  // namespace

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Percolation: return "percolation";
    case ExperimentKind::Dimension: return "dimension";
    case ExperimentKind::Embed: return "embed";
    case ExperimentKind::Sweep: return "sweep";
    case ExperimentKind::Verify: return "verify";
  }
  return "?";
}

ExperimentKind parse_experiment_kind(const std::string& text) {
  for (auto k : {ExperimentKind::Percolation, ExperimentKind::Dimension, ExperimentKind::Embed, ExperimentKind::Sweep,
                 ExperimentKind::Verify})
    if (text == to_string(k)) return k;
  throw Error(ErrorKind::Config, "unknown experiment kind '" + text + "'");
}

const char* code_version() { return MCL_VERSION_TAG; }

void ExperimentConfig::validate() const {
  if (trials < 1) throw Error(ErrorKind::Config, "trials must be >= 1");
  if (kind == ExperimentKind::Verify) return;
  if (kind == ExperimentKind::Percolation) {
    if (L.empty() || T.empty() || q.empty()) throw Error(ErrorKind::Config, "percolation grid needs non-empty L, T, q");
    for (int x : L)
      if (x < 1) throw Error(ErrorKind::Config, "L must be >= 1");
    for (int x : T)
      if (x < 1) throw Error(ErrorKind::Config, "T must be >= 1");
    for (double x : q)
      if (!(x >= 0 && x <= 1)) throw Error(ErrorKind::Config, "q must lie in [0,1]");
    return;
  }
  if (n.empty() || t.empty() || p.empty()) throw Error(ErrorKind::Config, "grid needs non-empty n, t, p");
  for (int x : n)
    if (x < 2 || x % 2) throw Error(ErrorKind::Config, "n must be even and >= 2");
  for (int x : t)
    if (x < 2 || x % 2) throw Error(ErrorKind::Config, "t must be even and >= 2");
  for (double x : p)
    if (!(x >= 0 && x <= 1)) throw Error(ErrorKind::Config, "p must lie in [0,1]");
  if (samples < 0) throw Error(ErrorKind::Config, "samples must be >= 0");
  if (kind == ExperimentKind::Embed && (k < 2 || depth < 0)) throw Error(ErrorKind::Config, "embed needs k >= 2, depth >= 0");
  if (format != "csv" && format != "json") throw Error(ErrorKind::Config, "format must be csv or json");
}

double ExperimentConfig::tolerance(const std::string& name, double fallback) const {
  const auto it = tolerances.find(name);
  return it == tolerances.end() ? fallback : it->second;
}

std::string ExperimentConfig::to_json() const {
  json doc;
  doc["version"] = kVersion;
  doc["kind"] = mcl::to_string(kind);
  json grid = json::object();
  if (kind == ExperimentKind::Percolation) {
    grid["L"] = L;
    grid["T"] = T;
    grid["q"] = q;
  } else {
    grid["n"] = n;
    grid["t"] = t;
    grid["p"] = p;
  }
  doc["grid"] = grid;
  doc["trials"] = trials;
  doc["seed"] = seed;
  doc["samples"] = samples;
  doc["family"] = mcl::to_string(family);
  doc["k"] = k;
  doc["depth"] = depth;
  doc["threads"] = threads;
  doc["tolerances"] = tolerances;
  doc["output"] = {{"path", output_path}, {"format", format}};
  return doc.dump(2);
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Config, std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::Config, "config must be a JSON object");
  if (doc.value("version", 0) != kVersion)
    throw Error(ErrorKind::Config, "unsupported config version (expected " + std::to_string(kVersion) + ")");
  ExperimentConfig c;
  try {
    c.kind = parse_experiment_kind(doc.at("kind").get<std::string>());
    const json grid = doc.value("grid", json::object());
    c.n = grid.value("n", std::vector<int>{});
    c.t = grid.value("t", std::vector<int>{});
    c.p = grid.value("p", std::vector<double>{});
    c.L = grid.value("L", std::vector<int>{});
    c.T = grid.value("T", std::vector<int>{});
    c.q = grid.value("q", std::vector<double>{});
    c.trials = doc.value("trials", 1);
    c.seed = doc.value("seed", std::uint64_t{1});
    c.samples = doc.value("samples", 3);
    c.family = parse_family(doc.value("family", std::string(mcl::to_string(PauliFamily::Full15))));
    c.k = doc.value("k", 2);
    c.depth = doc.value("depth", 2);
    c.threads = doc.value("threads", 0);
    c.tolerances = doc.value("tolerances", std::map<std::string, double>{});
    const json out = doc.value("output", json::object());
    c.output_path = out.value("path", std::string());
    c.format = out.value("format", std::string("csv"));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Config, std::string("bad config field: ") + e.what());
  }
  c.validate();
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

const Observable* ResultRecord::find(const std::string& name) const {
  for (const auto& o : observables)
    if (o.name == name) return &o;
  return nullptr;
}

std::vector<ResultRecord> run_sweep(const ExperimentConfig& config) {
  config.validate();
  if (config.kind == ExperimentKind::Verify) throw Error(ErrorKind::Config, "verify is not a sweep");
  const auto points = grid_points(config);
  const int workers = config.threads > 0 ? config.threads
                                         : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const StreamKey root(config.seed);
  std::vector<ResultRecord> records;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    const Point pt = points[i];
    ResultRecord rec;
    rec.kind = config.kind;
    rec.point = static_cast<int>(i);
    rec.n = pt.n;
    rec.t = pt.t;
    rec.p = pt.p;
    rec.trials = config.trials;
    rec.seed = config.seed;

    std::vector<TrialValues> trials(config.trials);
    std::vector<std::string> errors(config.trials);
    std::atomic<int> next{0};
    auto work = [&] {
      for (int j = next++; j < config.trials; j = next++) {
        const StreamKey stream = root.child(
            {static_cast<std::uint64_t>(Purpose::Sweep), static_cast<std::uint64_t>(config.kind), i,
             static_cast<std::uint64_t>(j)});
        try {
          trials[j] = config.kind == ExperimentKind::Percolation ? percolation_trial(pt, stream)
                                                                  : circuit_trial(config, pt, stream);
        } catch (const Error& e) {
          errors[j] = e.what();
        }
      }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < std::min(workers, config.trials); ++w) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();

    // Lowest failing trial index, so the message does not depend on scheduling.
    for (const auto& e : errors) {
      if (!e.empty()) {
        rec.error = e;
        break;
      }
    }
    if (rec.error.empty()) rec.observables = reduce(config.kind, pt.n, trials);
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    records.push_back(std::move(rec));
  }
  return records;
}

std::string records_to_csv(const std::vector<ResultRecord>& records) {
  std::ostringstream os;
  os << "n,t,p,trials,seed,observable,value,ci_lo,ci_hi\n";
  for (const auto& r : records) {
    const std::string head = std::to_string(r.n) + "," + std::to_string(r.t) + "," + format_double(r.p) + "," +
                             std::to_string(r.trials) + "," + std::to_string(r.seed) + ",";
    if (!r.error.empty()) {
      os << head << "error,nan,nan,nan\n";
      continue;
    }
    for (const auto& o : r.observables)
      os << head << o.name << "," << format_double(o.value) << "," << format_double(o.ci_lo) << ","
         << format_double(o.ci_hi) << "\n";
  }
  return os.str();
}

std::string records_to_json(const std::vector<ResultRecord>& records, const ExperimentConfig& config) {
  json doc;
  doc["schema"] = 1;
  doc["code_version"] = code_version();
  doc["config"] = json::parse(config.to_json());
  json arr = json::array();
  for (const auto& r : records) {
    json rec;
    rec["kind"] = to_string(r.kind);
    rec["point"] = r.point;
    rec["n"] = r.n;
    rec["t"] = r.t;
    rec["p"] = r.p;
    rec["trials"] = r.trials;
    rec["seed"] = r.seed;
    if (!r.error.empty()) rec["error"] = r.error;
    json obs = json::object();
    for (const auto& o : r.observables)
      obs[o.name] = {{"value", double_json(o.value)}, {"ci_lo", double_json(o.ci_lo)}, {"ci_hi", double_json(o.ci_hi)}};
    rec["observables"] = obs;
    arr.push_back(rec);
  }
  doc["records"] = arr;
  return doc.dump(2) + "\n";
}

void persist(const std::vector<ResultRecord>& records, const ExperimentConfig& config, const std::string& path,
             const std::string& format) {
  if (format == "csv")
    write_file(path, records_to_csv(records));
  else if (format == "json")
    write_file(path, records_to_json(records, config));
  else
    throw Error(ErrorKind::Config, "format must be csv or json, got '" + format + "'");
}

std::vector<std::string> emit_plot_data(const std::vector<ResultRecord>& records, const std::string& directory) {
  if (records.empty()) throw Error(ErrorKind::InvalidInput, "no records to emit");
  std::map<std::string, std::ostringstream> files;
  for (const auto& r : records) {
    for (const auto& o : r.observables) {
      const std::string name = std::string(to_string(r.kind)) + "_" + o.name + ".csv";
      auto& os = files[name];
      if (os.tellp() == 0) os << "n,t,p,value,ci_lo,ci_hi\n";
      os << r.n << "," << r.t << "," << format_double(r.p) << "," << format_double(o.value) << ","
         << format_double(o.ci_lo) << "," << format_double(o.ci_hi) << "\n";
    }
  }
  std::vector<std::string> paths;
  for (auto& [name, os] : files) {
    const std::string path = (std::filesystem::path(directory) / name).string();
    write_file(path, os.str());
    paths.push_back(path);
  }
  return paths;
}

}  // namespace mcl
