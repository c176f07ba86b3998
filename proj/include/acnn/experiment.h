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



// Experiment driver: sampling, training, compression, the UC sweep over
// load scenarios and the report files.

#ifndef ACNN_EXPERIMENT_H_
#define ACNN_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "acnn/ac_solver.h"
#include "acnn/case_ingest.h"
#include "acnn/data_factory.h"
#include "acnn/grid_model.h"
#include "acnn/milp_encode.h"
#include "acnn/milp_solve.h"
#include "acnn/pwl_learner.h"
#include "acnn/uc_builder.h"

namespace acnn {

// Ordered steps applied to a freshly trained model.
struct CompressionConfig {
  bool enabled = true;
  double sparsity = 0.25;      // fraction of weights pinned at zero
  long retrain_steps = 25000;
  BoundMode bound_mode = BoundMode::kLp;
  double bound_time_s = 300;
};

struct SchemeSweep {
  LoadSchemeKind kind = LoadSchemeKind::kUniform;
  int count = 10;
};

struct ExperimentConfig {
  std::string case_path;
  std::string uc_path;
  double derate = 0.3;
  std::vector<int> periods{0, 6, 12, 18};  // 0-based; empty keeps all
  int linearization_period = 0;
  SamplerConfig sampler;
  TrainConfig train;
  bool train_direct = true;
  CompressionConfig compression;
  std::vector<SchemeSweep> schemes;  // empty runs the base loads once
  std::vector<FormulationKind> formulations{
      FormulationKind::kNeural, FormulationKind::kLinear,
      FormulationKind::kDc};
  double gap_target = 0.01;
  double uc_time_s = 600;
  SlpOptions mtp;
  std::uint64_t seed = 1;
  int workers = 1;

  // Throws ValidationError on missing paths, empty formulations or bad
  // budgets.
  void validate() const;
};

// Relative paths are resolved against `base_dir`.
ExperimentConfig parse_experiment_config(
    const std::string& json_text, const std::filesystem::path& base_dir = {});
ExperimentConfig load_experiment_config(const std::filesystem::path& path);
std::string experiment_config_to_json(const ExperimentConfig& cfg);

// ACNN_WORKERS overrides `fallback` when set to a positive integer.
int workers_from_env(int fallback);

// Loads are evenly spread across the envelope for the uniform and
// sinusoidal kinds; the per-bus kind draws with seed + index.
std::vector<LoadScheme> scenario_schemes(const SchemeSweep& sweep,
                                         std::uint64_t seed);

struct CaseData {
  RawCase raw;
  Network net;
  UCInstance full;  // every period of the UC document
  UCInstance inst;  // selected periods
};
CaseData load_case_data(const ExperimentConfig& cfg);

struct StageStats {
  std::string stage;
  int free = 0, fixed_on = 0, fixed_off = 0;
  double mean_width = 0;  // mean of mmax - mmin
};

struct TrainedModels {
  PFDataset dataset;
  LinearPFModel linear;
  CompactPWLModel nn;  // compressed, with bounds
  DirectNNModel direct;
  bool has_direct = false;
  BoundBox box;
  ErrorStats test_errors;
  std::vector<StageStats> stages;
};

// Interval bounds, prune, sparsify-retrain, interval and `bound_mode`
// bounds, prune.
CompactPWLModel compress_model(const CompactPWLModel& nn, const BoundBox& box,
                               const PFDataset& train,
                               const CompressionConfig& cc,
                               const TrainConfig& tc,
                               std::vector<StageStats>* stages = nullptr);

// Point used for the affine model: the chosen period's loads with every
// unit ON, solved to minimum cost.
LinearPFModel linearization_for(const CaseData& data, int period);

TrainedModels prepare_models(const ExperimentConfig& cfg,
                             const CaseData& data);

struct ScenarioCell {
  std::string scheme;  // "base" when no schemes were configured
  int index = 0;
  double parameter = 0;  // scale, amplitude or seed
  FormulationKind formulation = FormulationKind::kNeural;
  std::string uc_status;
  double uc_objective = 0, uc_bound = 0, uc_gap = 0;
  long nodes = 0;
  Verdict verdict = Verdict::kNoSolution;
  double mtp_objective = 0;
  double max_violation = 0;
  bool has_flow_error = false;
  double err_ft = 0, err_tf = 0;  // 1-norm over all periods, p.u.
  std::string diagnostics;
  double wall_s = 0;
  // In memory only.
  UCInstance scenario;
  UCSchedule schedule;
  FeasibilityReport mtp;
};

struct Tally {
  FormulationKind formulation;
  int feasible = 0, infeasible = 0, no_solution = 0;
  int total() const { return feasible + infeasible + no_solution; }
};

struct ExperimentReport {
  int dataset_size = 0;
  double mean_error_linear = 0, mean_error_compact = 0, mean_error_direct = 0;
  std::vector<StageStats> stages;
  std::vector<ScenarioCell> cells;  // ordered by (scheme, index, formulation)
  std::vector<Tally> tallies;

  int scenario_count() const;
};

// One scenario through one formulation. Never throws; failures become a
// no_solution cell with diagnostics.
ScenarioCell run_cell(const ExperimentConfig& cfg, const CaseData& data,
                      const TrainedModels& models, const UCInstance& inst,
                      FormulationKind kind);

ExperimentReport run_scenarios(const ExperimentConfig& cfg,
                               const CaseData& data,
                               const TrainedModels& models);
ExperimentReport run_experiment(const ExperimentConfig& cfg);

std::vector<Tally> tally(const std::vector<ScenarioCell>& cells,
                         const std::vector<FormulationKind>& formulations);

// Share of scenarios feasible under both nn and linear where the nn error
// (mean of ft and tf) is not above the linear one; -1 when none qualify.
double nn_flow_win_rate(const ExperimentReport& report, int* mutual = nullptr);

std::string report_to_json(const ExperimentReport& r);
ExperimentReport report_from_json(const std::string& text);

std::string tally_table(const ExperimentReport& r);
// scheme,index,parameter,formulation,uc_status,uc_objective,uc_gap,nodes,
// verdict,mtp_objective,max_violation,err_ft,err_tf
std::string scenario_csv(const ExperimentReport& r);
// scheme,index,scenario,nn_ft,linear_ft,nn_tf,linear_tf; missing values
// are left empty.
std::string flow_error_csv(const ExperimentReport& r);

// Writes report.json, tally.txt, scenarios.csv and flow_error.csv.
void emit_reports(const ExperimentReport& r, const std::filesystem::path& dir);

}  // namespace acnn

#endif  // ACNN_EXPERIMENT_H_
