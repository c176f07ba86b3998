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


// Command-line front end.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "acnn/ac_solver.h"
#include "acnn/data_factory.h"
#include "acnn/errors.h"
#include "acnn/experiment.h"
#include "acnn/jacobian.h"
#include "acnn/milp_encode.h"
#include "acnn/milp_solve.h"
#include "acnn/mps.h"
#include "acnn/pwl_learner.h"
#include "acnn/uc_builder.h"

namespace fs = std::filesystem;
using namespace acnn;

namespace {

struct Common {
  std::string config;
  std::string case_path;
  std::string uc_path;
  double derate = -1;
  std::vector<int> periods;
  bool all_periods = false;

  void attach(CLI::App* app) {
    app->add_option("--config", config, "experiment config (JSON)");
    app->add_option("--case", case_path, "MATPOWER case file");
    app->add_option("--uc", uc_path, "UC instance (JSON)");
    app->add_option("--derate", derate, "thermal limit derate in [0, 1)");
    app->add_option("--periods", periods, "0-based periods to keep");
    app->add_flag("--all-periods", all_periods, "keep the whole horizon");
  }

  ExperimentConfig resolve() const {
    ExperimentConfig cfg;
    if (!config.empty()) {
      cfg = load_experiment_config(config);
    } else {
      cfg.case_path = (fs::path(ACNN_DATA_DIR) / "case14_ieee.m").string();
      cfg.uc_path = (fs::path(ACNN_DATA_DIR) / "uc14_24h.json").string();
    }
    if (!case_path.empty()) cfg.case_path = case_path;
    if (!uc_path.empty()) cfg.uc_path = uc_path;
    if (derate >= 0) cfg.derate = derate;
    if (!periods.empty()) cfg.periods = periods;
    if (all_periods) cfg.periods.clear();
    cfg.validate();
    return cfg;
  }
};

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in = open_in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CompactPWLModel load_model(const std::string& path) {
  std::ifstream in = open_in(path);
  return read_model(in);
}

PFDataset load_dataset(const std::string& path) {
  std::ifstream in = open_in(path);
  return read_dataset(in);
}

UcFormulation build_formulation(FormulationKind kind, const CaseData& data,
                                const std::string& model_path) {
  if (kind == FormulationKind::kDc) return build_dc_uc(data.inst, data.net);
  if (model_path.empty())
    throw ValidationError("--model is required for the nn and linear kinds");
  CompactPWLModel nn = load_model(model_path);
  BoundBox box = make_uc_bound_box(data.net, data.inst);
  if (kind == FormulationKind::kLinear)
    return build_l_ac_uc(data.inst, data.net, nn.linear, box);
  BigMBounds bounds = nn.bounds.empty() ? prune(interval_bounds(nn, box))
                                        : nn.bounds;
  return build_nn_ac_uc(data.inst, data.net, nn, bounds, box);
}

void print_solution(const MilpSolution& s) {
  std::printf("status %s objective %.10g bound %.10g gap %.3g nodes %ld "
              "time %.2fs\n",
              to_string(s.status).c_str(), s.objective, s.bound, s.gap,
              s.nodes, s.wall_time_s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Neural AC unit commitment toolkit"};
  app.require_subcommand(1);

  // sample
  Common sample_c;
  std::string sample_out = "dataset.txt";
  std::uint64_t sample_seed = 0;
  bool sample_seed_set = false;
  CLI::App* sample = app.add_subcommand("sample", "collect power flow samples");
  sample_c.attach(sample);
  sample->add_option("-o,--out", sample_out, "dataset file");
  sample->add_option("--seed", sample_seed, "sampling seed")
      ->each([&](const std::string&) { sample_seed_set = true; });

  // train
  Common train_c;
  std::string train_data, train_out = "model.txt", train_direct_out,
                          train_jac;
  int train_rho = 0;
  long train_steps = 0;
  CLI::App* train = app.add_subcommand("train", "fit the compact model");
  train_c.attach(train);
  train->add_option("--dataset", train_data, "dataset file")->required();
  train->add_option("-o,--out", train_out, "model file");
  train->add_option("--rho", train_rho, "hidden units");
  train->add_option("--steps", train_steps, "optimizer steps");
  train->add_option("--direct", train_direct_out,
                    "also fit a direct network and write it here");
  train->add_option("--dump-jacobian", train_jac,
                    "write the linearization to this file");

  // compress
  Common comp_c;
  std::string comp_model, comp_data, comp_out = "model.txt", comp_mode;
  double comp_sparsity = -1;
  CLI::App* compress = app.add_subcommand(
      "compress", "sparsify, bound and prune a trained model");
  comp_c.attach(compress);
  compress->add_option("--model", comp_model, "model file")->required();
  compress->add_option("--dataset", comp_data, "dataset file")->required();
  compress->add_option("-o,--out", comp_out, "model file");
  compress->add_option("--bound-mode", comp_mode, "interval, lp or milp");
  compress->add_option("--sparsity", comp_sparsity, "target sparsity");

  // build
  Common build_c;
  std::string build_kind = "nn", build_model, build_mps;
  bool build_stats = false;
  CLI::App* build = app.add_subcommand("build", "build a UC model");
  build_c.attach(build);
  build->add_option("--formulation", build_kind, "nn, linear or dc");
  build->add_option("--model", build_model, "model file");
  build->add_option("--mps", build_mps, "write the model as MPS");
  build->add_flag("--stats", build_stats, "print size statistics");

  // solve
  Common solve_c;
  std::string solve_kind = "nn", solve_model, solve_out = "schedule.txt",
              solve_engine = "internal", solve_mps, solve_import;
  double solve_gap = -1, solve_time = -1;
  CLI::App* solve = app.add_subcommand("solve", "solve a UC model");
  solve_c.attach(solve);
  solve->add_option("--formulation", solve_kind, "nn, linear or dc");
  solve->add_option("--model", solve_model, "model file");
  solve->add_option("-o,--out", solve_out, "schedule file");
  solve->add_option("--engine", solve_engine, "internal or export")
      ->check(CLI::IsMember({"internal", "export"}));
  solve->add_option("--mps", solve_mps, "MPS file for the export engine");
  solve->add_option("--solution", solve_import,
                    "external solution (name value lines) to import");
  solve->add_option("--gap", solve_gap, "relative gap target");
  solve->add_option("--time", solve_time, "time budget in seconds");

  // verify-schedule
  Common ver_c;
  std::string ver_schedule, ver_out;
  CLI::App* verify = app.add_subcommand(
      "verify-schedule", "multi-period AC feasibility of a schedule");
  ver_c.attach(verify);
  verify->add_option("--schedule", ver_schedule, "schedule file")->required();
  verify->add_option("-o,--out", ver_out, "write the JSON verdict here");

  // experiment
  std::string exp_config, exp_out = "results";
  CLI::App* experiment =
      app.add_subcommand("experiment", "run the full scenario sweep");
  experiment->add_option("--config", exp_config, "experiment config")
      ->required();
  experiment->add_option("-o,--out", exp_out, "output directory");

  // report
  std::string rep_in, rep_out;
  CLI::App* report = app.add_subcommand(
      "report", "re-emit tables and CSVs from a report.json");
  report->add_option("--in", rep_in, "report.json")->required();
  report->add_option("-o,--out", rep_out, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sample) {
      ExperimentConfig cfg = sample_c.resolve();
      CaseData data = load_case_data(cfg);
      SamplerConfig sc = cfg.sampler;
      sc.workers = workers_from_env(cfg.workers);
      PFDataset ds = collect_dataset(data.net, data.full, sc,
                                     sample_seed_set ? sample_seed : cfg.seed);
      std::ofstream out = open_out(sample_out);
      write_dataset(out, ds);
      std::printf("%d samples (train %d, test %d), consistency %.3g\n",
                  ds.size(), ds.subset(Split::kTrain).size(),
                  ds.subset(Split::kTest).size(),
                  dataset_consistency(data.net, ds));
    } else if (*train) {
      ExperimentConfig cfg = train_c.resolve();
      if (train_rho > 0) cfg.train.rho = train_rho;
      if (train_steps > 0) cfg.train.steps = train_steps;
      CaseData data = load_case_data(cfg);
      PFDataset ds = load_dataset(train_data);
      LinearPFModel lin = linearization_for(data, cfg.linearization_period);
      if (!train_jac.empty()) {
        std::ofstream out = open_out(train_jac);
        write_matrix(out, "jstar", lin.jstar);
        write_matrix(out, "rstar", lin.rstar);
        write_matrix(out, "x0", lin.x0);
      }
      PFDataset tr = ds.subset(Split::kTrain);
      PFDataset te = ds.subset(Split::kTest);
      if (te.size() == 0) te = tr;
      CompactPWLModel nn = train_compact(tr.x, tr.y, lin, cfg.train);
      DirectNNModel direct;
      if (!train_direct_out.empty()) {
        direct = train_direct(tr.x, tr.y, cfg.train);
        std::ofstream out = open_out(train_direct_out);
        write_direct_model(out, direct);
      }
      ErrorStats es = evaluate_model(
          nn, train_direct_out.empty() ? nullptr : &direct, te.x, te.y);
      std::ofstream out = open_out(train_out);
      write_model(out, nn);
      std::printf("test mean L1 error: linear %.6g compact %.6g", 
                  es.mean_linear, es.mean_compact);
      if (!train_direct_out.empty()) std::printf(" direct %.6g", es.mean_direct);
      std::printf("\n");
    } else if (*compress) {
      ExperimentConfig cfg = comp_c.resolve();
      if (!comp_mode.empty())
        cfg.compression.bound_mode = parse_bound_mode(comp_mode);
      if (comp_sparsity >= 0) cfg.compression.sparsity = comp_sparsity;
      cfg.compression.enabled = cfg.compression.sparsity > 0;
      CaseData data = load_case_data(cfg);
      CompactPWLModel nn = load_model(comp_model);
      PFDataset tr = load_dataset(comp_data).subset(Split::kTrain);
      BoundBox box = make_uc_bound_box(data.net, data.inst);
      std::vector<StageStats> stages;
      CompactPWLModel out_model =
          compress_model(nn, box, tr, cfg.compression, cfg.train, &stages);
      for (const StageStats& s : stages)
        std::printf("%-10s free %d on %d off %d mean width %.6g\n",
                    s.stage.c_str(), s.free, s.fixed_on, s.fixed_off,
                    s.mean_width);
      std::ofstream out = open_out(comp_out);
      write_model(out, out_model);
    } else if (*build) {
      ExperimentConfig cfg = build_c.resolve();
      CaseData data = load_case_data(cfg);
      UcFormulation f = build_formulation(parse_formulation(build_kind), data,
                                          build_model);
      for (const std::string& w : f.warnings)
        std::fprintf(stderr, "warning: %s\n", w.c_str());
      if (build_stats || build_mps.empty())
        write_stats(std::cout, model_stats(f.model));
      if (!build_mps.empty()) {
        std::ofstream out = open_out(build_mps);
        out << export_mps(f.model);
      }
    } else if (*solve) {
      ExperimentConfig cfg = solve_c.resolve();
      CaseData data = load_case_data(cfg);
      UcFormulation f = build_formulation(parse_formulation(solve_kind), data,
                                          solve_model);
      MilpSolution sol;
      if (solve_engine == "export") {
        if (solve_mps.empty() && solve_import.empty())
          throw ValidationError("the export engine needs --mps or --solution");
        if (!solve_mps.empty()) {
          std::ofstream out = open_out(solve_mps);
          out << export_mps(f.model);
          std::printf("wrote %s\n", solve_mps.c_str());
        }
        if (solve_import.empty()) return 0;
        sol = import_solution(slurp(solve_import), f.model);
      } else {
        if (f.model.num_binaries() > 100)
          std::fprintf(stderr,
                       "warning: %d binaries; the internal engine targets "
                       "about 100, consider --engine export\n",
                       f.model.num_binaries());
        MilpOptions mo;
        mo.gap_target = solve_gap >= 0 ? solve_gap : cfg.gap_target;
        mo.time_budget_s = solve_time > 0 ? solve_time : cfg.uc_time_s;
        mo.repair = unit_logic_repair(f, data.inst);
        sol = solve_milp(f.model, mo);
      }
      print_solution(sol);
      if (!sol.has_incumbent) return 2;
      UCSchedule s = extract_schedule(f, data.inst, data.net, sol.x,
                                      sol.objective);
      std::ofstream out = open_out(solve_out);
      write_schedule(out, s);
    } else if (*verify) {
      ExperimentConfig cfg = ver_c.resolve();
      CaseData data = load_case_data(cfg);
      std::ifstream in = open_in(ver_schedule);
      UCSchedule s = read_schedule(in);
      FeasibilityReport r = mtp_acopf_check(data.net, data.inst, s, cfg.mtp);
      const std::string j = report_to_json(r);
      if (!ver_out.empty()) {
        std::ofstream out = open_out(ver_out);
        out << j;
      }
      std::printf("verdict %s objective %.10g\n", to_string(r.verdict).c_str(),
                  r.objective);
      return r.verdict == Verdict::kFeasible ? 0 : 3;
    } else if (*experiment) {
      ExperimentConfig cfg = load_experiment_config(exp_config);
      ExperimentReport r = run_experiment(cfg);
      emit_reports(r, exp_out);
      std::cout << tally_table(r);
    } else if (*report) {
      ExperimentReport r = report_from_json(slurp(rep_in));
      emit_reports(r, rep_out);
      std::cout << tally_table(r);
    }
  } catch (const ScheduleLogicError& e) {
    std::fprintf(stderr, "schedule logic error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
