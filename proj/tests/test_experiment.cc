// Copyright 2026 The ACNN Authors.
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


#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "acnn/errors.h"
#include "acnn/experiment.h"
#include "support.h"

using namespace acnn;
using namespace acnn::testing;
namespace fs = std::filesystem;

namespace {

ScenarioCell cell(const std::string& scheme, int index, FormulationKind k,
                  Verdict v, double ft = -1, double tf = -1) {
  ScenarioCell c;
  c.scheme = scheme;
  c.index = index;
  c.formulation = k;
  c.verdict = v;
  c.uc_status = "gap_reached";
  if (ft >= 0) {
    c.has_flow_error = true;
    c.err_ft = ft;
    c.err_tf = tf;
  }
  return c;
}

ExperimentReport synthetic_report() {
  using F = FormulationKind;
  ExperimentReport r;
  r.dataset_size = 42;
  r.mean_error_linear = 0.9;
  r.mean_error_compact = 0.3;
  r.mean_error_direct = 0.8;
  r.stages.push_back({"interval", 6, 1, 1, 2.5});
  r.cells.push_back(cell("uniform", 0, F::kNeural, Verdict::kFeasible, 0.4, 0.5));
  r.cells.push_back(cell("uniform", 0, F::kLinear, Verdict::kFeasible, 0.6, 0.6));
  r.cells.push_back(cell("uniform", 0, F::kDc, Verdict::kInfeasible));
  r.cells.push_back(cell("uniform", 1, F::kNeural, Verdict::kFeasible, 0.9, 0.9));
  r.cells.push_back(cell("uniform", 1, F::kLinear, Verdict::kFeasible, 0.5, 0.5));
  r.cells.push_back(cell("uniform", 1, F::kDc, Verdict::kFeasible));
  r.cells.push_back(cell("sinusoidal", 0, F::kNeural, Verdict::kFeasible, 0.1, 0.1));
  r.cells.push_back(cell("sinusoidal", 0, F::kLinear, Verdict::kNoSolution));
  r.cells.push_back(cell("sinusoidal", 0, F::kDc, Verdict::kFeasible));
  r.cells[7].diagnostics = "time budget, no incumbent";
  r.tallies = tally(r.cells, {F::kNeural, F::kLinear, F::kDc});
  return r;
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("acnn_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string read_file(const fs::path& p) { return slurp(p.string()); }

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("config keys and relative paths") {
  ExperimentConfig c = parse_experiment_config(R"({
    "case": "case14_ieee.m", "uc": "uc14_24h.json", "derate": 0.2,
    "periods": [1, 2], "seed": 7,
    "train": {"rho": 4, "steps": 100},
    "compression": {"bound_mode": "milp", "sparsity": 0.1},
    "schemes": [{"kind": "sinusoidal", "count": 3}],
    "formulations": ["nn", "dc"],
    "solver": {"gap_target": 0.02, "uc_time_s": 30}
  })", ACNN_DATA_DIR);
  CHECK(fs::path(c.case_path) == fs::path(ACNN_DATA_DIR) / "case14_ieee.m");
  CHECK(c.derate == 0.2);
  CHECK(c.periods == std::vector<int>{1, 2});
  CHECK(c.seed == 7);
  CHECK(c.train.rho == 4);
  CHECK(c.train.steps == 100);
  CHECK(c.compression.bound_mode == BoundMode::kMilp);
  CHECK(c.compression.sparsity == 0.1);
  REQUIRE(c.schemes.size() == 1);
  CHECK(c.schemes[0].kind == LoadSchemeKind::kSinusoidal);
  CHECK(c.schemes[0].count == 3);
  CHECK(c.formulations ==
        std::vector<FormulationKind>{FormulationKind::kNeural, FormulationKind::kDc});
  CHECK(c.gap_target == 0.02);
  CHECK(c.uc_time_s == 30);
  CHECK_NOTHROW(c.validate());

  ExperimentConfig back = parse_experiment_config(experiment_config_to_json(c));
  CHECK(back.case_path == c.case_path);
  CHECK(back.periods == c.periods);
  CHECK(back.train.rho == c.train.rho);
  CHECK(back.compression.bound_mode == c.compression.bound_mode);
  CHECK(back.schemes[0].count == 3);
  CHECK(back.formulations == c.formulations);
}

TEST_CASE("bundled desk profile loads") {
  ExperimentConfig c = load_experiment_config(data_path("desk.json"));
  CHECK_NOTHROW(c.validate());
  CHECK(c.schemes.size() == 3);
  CHECK(c.train.rho == 8);
  CHECK(c.periods.size() == 4);
}

TEST_CASE("bad configs are rejected") {
  const std::string paths = R"("case": "case14_ieee.m", "uc": "uc14_24h.json")";
  CHECK_THROWS_AS(parse_experiment_config("{" + paths + R"(, "formulations": ["exact"]})",
                                          ACNN_DATA_DIR),
                  ValidationError);
  CHECK_THROWS_AS(parse_experiment_config("{not json"), ParseError);
  CHECK_THROWS_AS(parse_experiment_config(R"({"uc": "uc14_24h.json"})", ACNN_DATA_DIR),
                  ParseError);
  CHECK_THROWS_AS(
      parse_experiment_config("{" + paths + R"(, "schemes": [{"kind": "weekly"}]})",
                              ACNN_DATA_DIR),
      ValidationError);
  ExperimentConfig c = load_experiment_config(data_path("desk.json"));
  c.formulations.clear();
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = load_experiment_config(data_path("desk.json"));
  c.case_path = "/nonexistent/case.m";
  CHECK_THROWS_AS(c.validate(), ValidationError);
}

TEST_CASE("worker count from the environment") {
  ::setenv("ACNN_WORKERS", "3", 1);
  CHECK(workers_from_env(1) == 3);
  ::setenv("ACNN_WORKERS", "zero", 1);
  CHECK(workers_from_env(2) == 2);
  ::unsetenv("ACNN_WORKERS");
  CHECK(workers_from_env(5) == 5);
}

TEST_CASE("scenario parameters span the envelope") {
  auto u = scenario_schemes({LoadSchemeKind::kUniform, 5}, 1);
  REQUIRE(u.size() == 5);
  CHECK(u.front().scale == doctest::Approx(0.85));
  CHECK(u[2].scale == doctest::Approx(1.0));
  CHECK(u.back().scale == doctest::Approx(1.15));
  auto s = scenario_schemes({LoadSchemeKind::kSinusoidal, 3}, 1);
  CHECK(s.front().amplitude == doctest::Approx(-0.15));
  CHECK(s.back().amplitude == doctest::Approx(0.15));
  auto one = scenario_schemes({LoadSchemeKind::kUniform, 1}, 1);
  CHECK(one[0].scale == doctest::Approx(1.0));
  auto r = scenario_schemes({LoadSchemeKind::kPerBusRandom, 3}, 10);
  CHECK(r[0].seed == 10);
  CHECK(r[2].seed == 12);
}

TEST_CASE("tallies conserve scenarios") {
  ExperimentReport r = synthetic_report();
  REQUIRE(r.tallies.size() == 3);
  for (const Tally& t : r.tallies) CHECK(t.total() == r.scenario_count());
  CHECK(r.tallies[0].feasible == 3);
  CHECK(r.tallies[1].no_solution == 1);
  CHECK(r.tallies[2].infeasible == 1);
}

TEST_CASE("flow win rate counts mutually feasible scenarios") {
  ExperimentReport r = synthetic_report();
  int mutual = 0;
  CHECK(nn_flow_win_rate(r, &mutual) == doctest::Approx(0.5));
  CHECK(mutual == 2);
  ExperimentReport empty;
  CHECK(nn_flow_win_rate(empty, &mutual) == -1);
  CHECK(mutual == 0);
}

TEST_CASE("empty report gives header-only tables") {
  ExperimentReport r;
  r.tallies = tally({}, {FormulationKind::kNeural});
  std::string sc = scenario_csv(r), fe = flow_error_csv(r);
  CHECK(sc == "scheme,index,parameter,formulation,uc_status,uc_objective,"
              "uc_gap,nodes,verdict,mtp_objective,max_violation,err_ft,err_tf\n");
  CHECK(fe == "scheme,index,scenario,nn_ft,linear_ft,nn_tf,linear_tf\n");
  CHECK(tally_table(r).find("NN AC-UC") != std::string::npos);
}

TEST_CASE("tables list every scenario") {
  ExperimentReport r = synthetic_report();
  std::string sc = scenario_csv(r);
  CHECK(std::count(sc.begin(), sc.end(), '\n') == 10);
  std::string fe = flow_error_csv(r);
  CHECK(std::count(fe.begin(), fe.end(), '\n') == 4);
  CHECK(fe.find("sinusoidal,0,3,0.1,,0.1,\n") != std::string::npos);
  std::string t = tally_table(r);
  CHECK(t.find("L AC-UC") != std::string::npos);
  CHECK(t.find("DC-UC") != std::string::npos);
  CHECK(t.find("No solution") != std::string::npos);
}

TEST_CASE("report JSON round-trips") {
  ExperimentReport r = synthetic_report();
  ExperimentReport back = report_from_json(report_to_json(r));
  CHECK(back.dataset_size == 42);
  CHECK(back.mean_error_compact == r.mean_error_compact);
  REQUIRE(back.cells.size() == r.cells.size());
  CHECK(back.cells[7].diagnostics == r.cells[7].diagnostics);
  CHECK(back.cells[0].err_tf == r.cells[0].err_tf);
  CHECK(back.stages[0].fixed_off == 1);
  CHECK(scenario_csv(back) == scenario_csv(r));
  CHECK(flow_error_csv(back) == flow_error_csv(r));
  CHECK(tally_table(back) == tally_table(r));
}

TEST_CASE("emitting twice gives identical files") {
  ExperimentReport r = synthetic_report();
  fs::path a = scratch("emit_a"), b = scratch("emit_b");
  emit_reports(r, a);
  emit_reports(r, b);
  emit_reports(r, b);
  for (const char* f : {"report.json", "tally.txt", "scenarios.csv", "flow_error.csv"}) {
    REQUIRE(fs::exists(a / f));
    CHECK(read_file(a / f) == read_file(b / f));
  }
}

TEST_CASE("small sweep end to end") {
  ExperimentConfig c = load_experiment_config(data_path("desk.json"));
  c.periods = {0, 12};
  c.sampler.outage_draws = 1;
  c.train.steps = 2000;
  c.compression.retrain_steps = 500;
  c.compression.bound_mode = BoundMode::kInterval;
  c.schemes = {{LoadSchemeKind::kUniform, 1}};
  c.uc_time_s = 120;
  ExperimentReport r = run_experiment(c);
  CHECK(r.dataset_size > 0);
  CHECK(r.cells.size() == 3);
  CHECK(r.scenario_count() == 1);
  for (const Tally& t : r.tallies) CHECK(t.total() == 1);
  for (const ScenarioCell& cell : r.cells) {
    CHECK(cell.scheme == "uniform");
    CHECK_MESSAGE(cell.verdict != Verdict::kNoSolution, cell.diagnostics);
  }
  CHECK(r.stages.size() >= 2);
}

}
