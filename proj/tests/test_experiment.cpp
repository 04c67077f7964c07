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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mcl/error.hpp"
#include "mcl/experiment.hpp"

using namespace mcl;

namespace {

ExperimentConfig small_sweep() {
  ExperimentConfig c;
  c.kind = ExperimentKind::Sweep;
  c.n = {4};
  c.t = {4};
  c.p = {0.3};
  c.trials = 1;
  c.seed = 77;
  c.samples = 1;
  return c;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("phase contrast on a small grid") {
  ExperimentConfig c;
  c.kind = ExperimentKind::Sweep;
  c.n = {6};
  c.t = {4, 8, 12};
  c.p = {0.2, 0.8};
  c.trials = 50;
  c.seed = 5;
  const auto recs = run_sweep(c);
  REQUIRE(recs.size() == 6);
  std::vector<double> dim_low, eff_high;
  for (const auto& r : recs) {
    CHECK(r.error.empty());
    CHECK(r.trials == 50);
    if (r.p == 0.2) dim_low.push_back(r.find("dimension_median")->value);
    if (r.p == 0.8) eff_high.push_back(r.find("effective_gates_median")->value);
  }
  // Rank saturates quickly at n=6, so only nondecreasing is asserted here.
  CHECK(dim_low[0] <= dim_low[1]);
  CHECK(dim_low[1] <= dim_low[2]);
  for (double e : eff_high) CHECK(e <= 3.0);
  CHECK(eff_high[2] <= 1.2 * eff_high[1] + 1e-12);
}

TEST_CASE("fixed seed gives identical output") {
  const auto a = run_sweep(small_sweep());
  const auto b = run_sweep(small_sweep());
  CHECK(records_to_csv(a) == records_to_csv(b));
  CHECK(records_to_json(a, small_sweep()) == records_to_json(b, small_sweep()));
}

TEST_CASE("results do not depend on worker count") {
  ExperimentConfig c = small_sweep();
  c.trials = 12;
  c.threads = 1;
  const auto serial = records_to_csv(run_sweep(c));
  c.threads = 4;
  CHECK(records_to_csv(run_sweep(c)) == serial);
}

TEST_CASE("empty grid is a configuration error") {
  ExperimentConfig c = small_sweep();
  c.t.clear();
  try {
    run_sweep(c);
    FAIL("expected Config error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
  }
  c = small_sweep();
  c.trials = 0;
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("config round trip and version check") {
  ExperimentConfig c = small_sweep();
  c.tolerances["rank_tol"] = 1e-8;
  c.output_path = "out.csv";
  const ExperimentConfig back = ExperimentConfig::from_json(c.to_json());
  CHECK(back.to_json() == c.to_json());
  CHECK(back.tolerance("rank_tol", 0) == 1e-8);
  CHECK_THROWS_AS(ExperimentConfig::from_json(R"({"version": 99, "kind": "sweep"})"), Error);
  CHECK_THROWS_AS(ExperimentConfig::from_json("not json"), Error);
  CHECK_THROWS_AS(ExperimentConfig::from_json(R"({"version": 1, "kind": "nope"})"), Error);
}

TEST_CASE("oversized points are reported, not fatal") {
  ExperimentConfig c;
  c.kind = ExperimentKind::Dimension;
  c.n = {4, 30};
  c.t = {2};
  c.p = {0.0};
  c.samples = 1;
  const auto recs = run_sweep(c);
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].error.empty());
  CHECK(recs[1].error.find("ResourceCap") != std::string::npos);
  CHECK(records_to_csv(recs).find("30,2,0,1,1,error") != std::string::npos);
}

TEST_CASE("percolation kind at q=1 always crosses") {
  ExperimentConfig c;
  c.kind = ExperimentKind::Percolation;
  c.L = {6};
  c.T = {1, 2};
  c.q = {1.0};
  c.trials = 5;
  const auto recs = run_sweep(c);
  REQUIRE(recs.size() == 2);
  for (const auto& r : recs) {
    CHECK(r.find("crossing_probability")->value == 1.0);
    CHECK(r.find("max_edge_disjoint_mean")->value == 7.0);
  }
}

TEST_CASE("embed kind verifies every plan it finds") {
  ExperimentConfig c;
  c.kind = ExperimentKind::Embed;
  c.n = {6};
  c.t = {12};
  c.p = {0.1};
  c.k = 2;
  c.depth = 2;
  c.trials = 20;
  const auto recs = run_sweep(c);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].find("plan_found_probability")->value > 0.0);
  CHECK(recs[0].find("fidelity_min")->value == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("persistence and plot data") {
  const auto dir = std::filesystem::temp_directory_path() / "mcl_test_experiment";
  std::filesystem::remove_all(dir);
  const auto c = small_sweep();
  const auto recs = run_sweep(c);
  persist(recs, c, (dir / "r.csv").string(), "csv");
  persist(recs, c, (dir / "r.json").string(), "json");
  const std::string csv = slurp((dir / "r.csv").string());
  CHECK(csv.rfind("n,t,p,trials,seed,observable,value,ci_lo,ci_hi\n", 0) == 0);
  CHECK(slurp((dir / "r.json").string()).find("\"code_version\"") != std::string::npos);
  CHECK_THROWS_AS(persist(recs, c, (dir / "r.txt").string(), "xml"), Error);
  try {
    persist(recs, c, "/proc/nonexistent/x.csv", "csv");
    FAIL("expected Io error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Io);
    CHECK(std::string(e.what()).find("/proc/nonexistent/x.csv") != std::string::npos);
  }
  const auto files = emit_plot_data(recs, (dir / "plot").string());
  CHECK(files.size() == recs[0].observables.size());
  CHECK(slurp(files[0]).rfind("n,t,p,value,ci_lo,ci_hi\n", 0) == 0);
  CHECK_THROWS_AS(emit_plot_data({}, (dir / "plot").string()), Error);
  std::filesystem::remove_all(dir);
}
