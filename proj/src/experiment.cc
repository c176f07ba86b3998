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


#include "acnn/experiment.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "acnn/errors.h"

namespace acnn {

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw ValidationError("cannot open " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LoadSchemeKind parse_scheme_kind(const std::string& s) {
  if (s == "uniform") return LoadSchemeKind::kUniform;
  if (s == "per_bus_random") return LoadSchemeKind::kPerBusRandom;
  if (s == "sinusoidal") return LoadSchemeKind::kSinusoidal;
  throw ValidationError("unknown load scheme '" + s + "'");
}

Verdict parse_verdict(const std::string& s) {
  if (s == "feasible") return Verdict::kFeasible;
  if (s == "infeasible") return Verdict::kInfeasible;
  if (s == "no_solution") return Verdict::kNoSolution;
  throw ParseError("unknown verdict '" + s + "'", 0);
}

std::string display_name(FormulationKind k) {
  switch (k) {
    case FormulationKind::kNeural: return "NN AC-UC";
    case FormulationKind::kLinear: return "L AC-UC";
    case FormulationKind::kDc: return "DC-UC";
  }
  return "?";
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

StageStats stage_stats(const std::string& name, const BigMBounds& b) {
  StageStats s;
  s.stage = name;
  for (int i = 0; i < b.size(); ++i) {
    switch (b.status[i]) {
      case ReluStatus::kFree: ++s.free; break;
      case ReluStatus::kFixedOn: ++s.fixed_on; break;
      case ReluStatus::kFixedOff: ++s.fixed_off; break;
    }
  }
  if (b.size() > 0) s.mean_width = (b.mmax - b.mmin).mean();
  return s;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

void ExperimentConfig::validate() const {
  if (!fs::exists(case_path))
    throw ValidationError("case file not found: " + case_path);
  if (!fs::exists(uc_path))
    throw ValidationError("UC file not found: " + uc_path);
  if (derate < 0 || derate >= 1)
    throw ValidationError("derate must lie in [0, 1)");
  if (formulations.empty())
    throw ValidationError("no formulations selected");
  if (!(gap_target >= 0) || !(uc_time_s > 0))
    throw ValidationError("bad UC solver budget");
  for (const SchemeSweep& s : schemes)
    if (s.count < 1) throw ValidationError("scheme count must be positive");
  if (train.rho < 1 || train.steps < 1 || train.batch_size < 1)
    throw ValidationError("bad training settings");
  if (compression.sparsity < 0 || compression.sparsity >= 1)
    throw ValidationError("sparsity must lie in [0, 1)");
}

ExperimentConfig parse_experiment_config(const std::string& json_text,
                                         const fs::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("experiment config: ") + e.what(), 0);
  }
  ExperimentConfig c;
  auto path_of = [&](const std::string& key) {
    fs::path p = j.at(key).get<std::string>();
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    return p.lexically_normal().string();
  };
  try {
    c.case_path = path_of("case");
    c.uc_path = path_of("uc");
    c.derate = j.value("derate", c.derate);
    if (j.contains("periods"))
      c.periods = j["periods"].get<std::vector<int>>();
    c.linearization_period =
        j.value("linearization_period", c.linearization_period);
    c.seed = j.value("seed", c.seed);
    c.workers = j.value("workers", c.workers);
    c.train_direct = j.value("train_direct", c.train_direct);
    if (j.contains("sampler")) {
      const json& s = j["sampler"];
      SamplerConfig& d = c.sampler;
      d.outage_draws = s.value("outage_draws", d.outage_draws);
      d.max_extra_off = s.value("max_extra_off", d.max_extra_off);
      d.perturb_voltage = s.value("perturb_voltage", d.perturb_voltage);
      d.voltage_shift = s.value("voltage_shift", d.voltage_shift);
      d.test_fraction = s.value("test_fraction", d.test_fraction);
      d.min_samples = s.value("min_samples", d.min_samples);
    }
    if (j.contains("train")) {
      const json& s = j["train"];
      TrainConfig& d = c.train;
      d.rho = s.value("rho", d.rho);
      d.learning_rate = s.value("learning_rate", d.learning_rate);
      d.batch_size = s.value("batch_size", d.batch_size);
      d.steps = s.value("steps", d.steps);
      d.seed = s.value("seed", d.seed);
      d.eval_interval = s.value("eval_interval", d.eval_interval);
    }
    if (j.contains("compression")) {
      const json& s = j["compression"];
      CompressionConfig& d = c.compression;
      d.enabled = s.value("enabled", d.enabled);
      d.sparsity = s.value("sparsity", d.sparsity);
      d.retrain_steps = s.value("retrain_steps", d.retrain_steps);
      if (s.contains("bound_mode"))
        d.bound_mode = parse_bound_mode(s["bound_mode"].get<std::string>());
      d.bound_time_s = s.value("bound_time_s", d.bound_time_s);
    }
    if (j.contains("schemes")) {
      for (const json& s : j["schemes"])
        c.schemes.push_back({parse_scheme_kind(s.at("kind").get<std::string>()),
                             s.value("count", 10)});
    }
    if (j.contains("formulations")) {
      c.formulations.clear();
      for (const json& f : j["formulations"])
        c.formulations.push_back(parse_formulation(f.get<std::string>()));
    }
    if (j.contains("solver")) {
      const json& s = j["solver"];
      c.gap_target = s.value("gap_target", c.gap_target);
      c.uc_time_s = s.value("uc_time_s", c.uc_time_s);
      c.mtp.time_budget_s = s.value("mtp_time_s", c.mtp.time_budget_s);
      c.mtp.max_iterations = s.value("mtp_iterations", c.mtp.max_iterations);
      c.mtp.tol_feas = s.value("mtp_tol_feas", c.mtp.tol_feas);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("experiment config: ") + e.what(), 0);
  }
  c.train.sparsity = c.compression.sparsity;
  c.sampler.workers = c.workers;
  c.validate();
  return c;
}

ExperimentConfig load_experiment_config(const fs::path& path) {
  return parse_experiment_config(slurp(path), path.parent_path());
}

std::string experiment_config_to_json(const ExperimentConfig& c) {
  json j;
  j["case"] = c.case_path;
  j["uc"] = c.uc_path;
  j["derate"] = c.derate;
  j["periods"] = c.periods;
  j["linearization_period"] = c.linearization_period;
  j["seed"] = c.seed;
  j["workers"] = c.workers;
  j["train_direct"] = c.train_direct;
  j["sampler"] = {{"outage_draws", c.sampler.outage_draws},
                  {"max_extra_off", c.sampler.max_extra_off},
                  {"perturb_voltage", c.sampler.perturb_voltage},
                  {"voltage_shift", c.sampler.voltage_shift},
                  {"test_fraction", c.sampler.test_fraction},
                  {"min_samples", c.sampler.min_samples}};
  j["train"] = {{"rho", c.train.rho},
                {"learning_rate", c.train.learning_rate},
                {"batch_size", c.train.batch_size},
                {"steps", c.train.steps},
                {"seed", c.train.seed},
                {"eval_interval", c.train.eval_interval}};
  j["compression"] = {{"enabled", c.compression.enabled},
                      {"sparsity", c.compression.sparsity},
                      {"retrain_steps", c.compression.retrain_steps},
                      {"bound_mode", to_string(c.compression.bound_mode)},
                      {"bound_time_s", c.compression.bound_time_s}};
  j["schemes"] = json::array();
  for (const SchemeSweep& s : c.schemes)
    j["schemes"].push_back({{"kind", to_string(s.kind)}, {"count", s.count}});
  j["formulations"] = json::array();
  for (FormulationKind f : c.formulations)
    j["formulations"].push_back(to_string(f));
  j["solver"] = {{"gap_target", c.gap_target},
                 {"uc_time_s", c.uc_time_s},
                 {"mtp_time_s", c.mtp.time_budget_s},
                 {"mtp_iterations", c.mtp.max_iterations},
                 {"mtp_tol_feas", c.mtp.tol_feas}};
  return j.dump(2);
}

int workers_from_env(int fallback) {
  if (const char* s = std::getenv("ACNN_WORKERS")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end != s && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return std::max(1, fallback);
}

std::vector<LoadScheme> scenario_schemes(const SchemeSweep& sweep,
                                         std::uint64_t seed) {
  std::vector<LoadScheme> out;
  for (int i = 0; i < sweep.count; ++i) {
    const double frac =
        sweep.count == 1 ? 0.5 : static_cast<double>(i) / (sweep.count - 1);
    const double spread = kLoadEnvelope * (2 * frac - 1);
    LoadScheme s;
    s.kind = sweep.kind;
    switch (sweep.kind) {
      case LoadSchemeKind::kUniform: s.scale = 1 + spread; break;
      case LoadSchemeKind::kSinusoidal: s.amplitude = spread; break;
      case LoadSchemeKind::kPerBusRandom: s.seed = seed + i; break;
    }
    out.push_back(s);
  }
  return out;
}

CaseData load_case_data(const ExperimentConfig& cfg) {
  CaseData d;
  d.raw = derate_thermal_limits(parse_matpower(slurp(cfg.case_path)),
                                cfg.derate);
  d.net = build_network(d.raw);
  d.full = load_uc_instance(slurp(cfg.uc_path), d.raw);
  for (int t : cfg.periods)
    if (t < 0 || t >= d.full.horizon)
      throw ValidationError("period " + std::to_string(t) +
                            " outside the UC horizon");
  d.inst = cfg.periods.empty() ? d.full : subsample_hours(d.full, cfg.periods);
  return d;
}

LinearPFModel linearization_for(const CaseData& data, int period) {
  if (period < 0 || period >= data.full.horizon)
    throw ValidationError("linearization period outside the horizon");
  AcopfResult r = slp_acopf(data.net, dispatch_for_hour(data.net, data.full,
                                                        period),
                            AcObjective::kMinCost);
  if (r.verdict != Verdict::kFeasible)
    throw SolverError(SolverError::Kind::kNoSolution,
                      "no feasible linearization point: " + r.diagnostics);
  return linearize(data.net, r.point, data.raw.name);
}

CompactPWLModel compress_model(const CompactPWLModel& nn, const BoundBox& box,
                               const PFDataset& train,
                               const CompressionConfig& cc,
                               const TrainConfig& tc,
                               std::vector<StageStats>* stages) {
  auto record = [&](const std::string& name, const BigMBounds& b) {
    if (stages) stages->push_back(stage_stats(name, b));
  };
  CompactPWLModel out = nn;
  out.bounds = prune(interval_bounds(out, box));
  record("interval", out.bounds);
  if (cc.enabled && cc.sparsity > 0) {
    TrainConfig rc = tc;
    rc.steps = cc.retrain_steps;
    out = sparsify_retrain(out, train.x, train.y, cc.sparsity, rc);
    out.bounds = prune(interval_bounds(out, box));
    record("sparsified", out.bounds);
  }
  if (cc.bound_mode != BoundMode::kInterval) {
    TightenOptions opt;
    opt.time_budget_s = cc.bound_time_s;
    out.bounds = prune(tighten_bounds(out, box, cc.bound_mode, out.bounds, opt));
    record(to_string(cc.bound_mode), out.bounds);
  }
  return out;
}

TrainedModels prepare_models(const ExperimentConfig& cfg,
                             const CaseData& data) {
  TrainedModels m;
  SamplerConfig sc = cfg.sampler;
  sc.workers = workers_from_env(cfg.workers);
  m.dataset = collect_dataset(data.net, data.full, sc, cfg.seed);
  m.linear = linearization_for(data, cfg.linearization_period);
  PFDataset train = m.dataset.subset(Split::kTrain);
  PFDataset test = m.dataset.subset(Split::kTest);
  if (test.size() == 0) test = train;
  CompactPWLModel nn = train_compact(train.x, train.y, m.linear, cfg.train);
  if (cfg.train_direct) {
    m.direct = train_direct(train.x, train.y, cfg.train);
    m.has_direct = true;
  }
  m.box = make_uc_bound_box(data.net, data.inst);
  m.nn = compress_model(nn, m.box, train, cfg.compression, cfg.train,
                        &m.stages);
  m.test_errors = evaluate_model(m.nn, m.has_direct ? &m.direct : nullptr,
                                 test.x, test.y);
  return m;
}

ScenarioCell run_cell(const ExperimentConfig& cfg, const CaseData& data,
                      const TrainedModels& models, const UCInstance& inst,
                      FormulationKind kind) {
  const auto t0 = std::chrono::steady_clock::now();
  ScenarioCell c;
  c.formulation = kind;
  c.scenario = inst;
  try {
    UcFormulation f =
        kind == FormulationKind::kNeural
            ? build_nn_ac_uc(inst, data.net, models.nn, models.nn.bounds,
                             models.box)
        : kind == FormulationKind::kLinear
            ? build_l_ac_uc(inst, data.net, models.linear, models.box)
            : build_dc_uc(inst, data.net);
    MilpOptions mo;
    mo.gap_target = cfg.gap_target;
    mo.time_budget_s = cfg.uc_time_s;
    mo.repair = unit_logic_repair(f, inst);
    MilpSolution sol = solve_milp(f.model, mo);
    c.uc_status = to_string(sol.status);
    c.nodes = sol.nodes;
    c.uc_bound = sol.bound;
    if (!sol.has_incumbent) {
      c.diagnostics = "UC: " + c.uc_status;
      c.wall_s = seconds_since(t0);
      return c;
    }
    c.uc_objective = sol.objective;
    c.uc_gap = sol.gap;
    c.schedule = extract_schedule(f, inst, data.net, sol.x, sol.objective);
    c.mtp = mtp_acopf_check(data.net, inst, c.schedule, cfg.mtp);
    c.verdict = c.mtp.verdict;
    c.mtp_objective = c.mtp.objective;
    for (double v : c.mtp.violation) c.max_violation = std::max(c.max_violation, v);
    c.diagnostics = c.mtp.diagnostics;
    if (c.verdict == Verdict::kFeasible && kind != FormulationKind::kDc) {
      for (int t = 0; t < inst.horizon; ++t) {
        c.err_ft += (c.schedule.sft[t] - c.mtp.points[t].s_ft).lpNorm<1>();
        c.err_tf += (c.schedule.stf[t] - c.mtp.points[t].s_tf).lpNorm<1>();
      }
      c.has_flow_error = true;
    }
  } catch (const std::exception& e) {
    c.verdict = Verdict::kNoSolution;
    c.has_flow_error = false;
    c.diagnostics = e.what();
  }
  c.wall_s = seconds_since(t0);
  return c;
}

std::vector<Tally> tally(const std::vector<ScenarioCell>& cells,
                         const std::vector<FormulationKind>& formulations) {
  std::vector<Tally> out;
  for (FormulationKind k : formulations) {
    Tally t{k};
    for (const ScenarioCell& c : cells) {
      if (c.formulation != k) continue;
      switch (c.verdict) {
        case Verdict::kFeasible: ++t.feasible; break;
        case Verdict::kInfeasible: ++t.infeasible; break;
        case Verdict::kNoSolution: ++t.no_solution; break;
      }
    }
    out.push_back(t);
  }
  return out;
}

int ExperimentReport::scenario_count() const {
  return tallies.empty() ? 0 : tallies.front().total();
}

ExperimentReport run_scenarios(const ExperimentConfig& cfg,
                               const CaseData& data,
                               const TrainedModels& models) {
  struct Scenario {
    std::string scheme;
    int index;
    double parameter;
    UCInstance inst;
  };
  std::vector<Scenario> scenarios;
  if (cfg.schemes.empty()) {
    scenarios.push_back({"base", 0, 1.0, data.inst});
  } else {
    for (const SchemeSweep& sw : cfg.schemes) {
      std::vector<LoadScheme> list = scenario_schemes(sw, cfg.seed);
      for (int i = 0; i < static_cast<int>(list.size()); ++i) {
        const LoadScheme& s = list[i];
        const double param = s.kind == LoadSchemeKind::kUniform ? s.scale
                             : s.kind == LoadSchemeKind::kSinusoidal
                                 ? s.amplitude
                                 : static_cast<double>(s.seed);
        scenarios.push_back({to_string(s.kind), i, param,
                             apply_load_scheme(data.inst, s)});
      }
    }
  }

  const int nf = static_cast<int>(cfg.formulations.size());
  const int jobs = static_cast<int>(scenarios.size()) * nf;
  std::vector<ScenarioCell> cells(jobs);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int j = next++; j < jobs; j = next++) {
      const Scenario& s = scenarios[j / nf];
      ScenarioCell c = run_cell(cfg, data, models, s.inst,
                                cfg.formulations[j % nf]);
      c.scheme = s.scheme;
      c.index = s.index;
      c.parameter = s.parameter;
      cells[j] = std::move(c);
    }
  };
  const int nw = std::min(workers_from_env(cfg.workers), std::max(jobs, 1));
  if (nw <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < nw; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  ExperimentReport r;
  r.dataset_size = models.dataset.size();
  r.mean_error_linear = models.test_errors.mean_linear;
  r.mean_error_compact = models.test_errors.mean_compact;
  r.mean_error_direct = models.test_errors.mean_direct;
  r.stages = models.stages;
  r.cells = std::move(cells);
  r.tallies = tally(r.cells, cfg.formulations);
  return r;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  CaseData data = load_case_data(cfg);
  TrainedModels models = prepare_models(cfg, data);
  return run_scenarios(cfg, data, models);
}

double nn_flow_win_rate(const ExperimentReport& report, int* mutual) {
  std::map<std::pair<std::string, int>, std::pair<const ScenarioCell*,
                                                  const ScenarioCell*>> by;
  for (const ScenarioCell& c : report.cells) {
    auto& slot = by[{c.scheme, c.index}];
    if (c.formulation == FormulationKind::kNeural) slot.first = &c;
    if (c.formulation == FormulationKind::kLinear) slot.second = &c;
  }
  int both = 0, wins = 0;
  for (const auto& [key, pair] : by) {
    const auto [nn, lin] = pair;
    if (!nn || !lin || !nn->has_flow_error || !lin->has_flow_error) continue;
    ++both;
    if (nn->err_ft + nn->err_tf <= lin->err_ft + lin->err_tf) ++wins;
  }
  if (mutual) *mutual = both;
  return both == 0 ? -1.0 : static_cast<double>(wins) / both;
}

std::string report_to_json(const ExperimentReport& r) {
  json j;
  j["dataset_size"] = r.dataset_size;
  j["test_error"] = {{"linear", r.mean_error_linear},
                     {"compact", r.mean_error_compact},
                     {"direct", r.mean_error_direct}};
  j["compression"] = json::array();
  for (const StageStats& s : r.stages)
    j["compression"].push_back({{"stage", s.stage},
                                {"free", s.free},
                                {"fixed_on", s.fixed_on},
                                {"fixed_off", s.fixed_off},
                                {"mean_width", s.mean_width}});
  j["cells"] = json::array();
  for (const ScenarioCell& c : r.cells) {
    json e = {{"scheme", c.scheme},
              {"index", c.index},
              {"parameter", c.parameter},
              {"formulation", to_string(c.formulation)},
              {"uc_status", c.uc_status},
              {"uc_objective", c.uc_objective},
              {"uc_bound", c.uc_bound},
              {"uc_gap", std::isfinite(c.uc_gap) ? c.uc_gap : -1.0},
              {"nodes", c.nodes},
              {"verdict", to_string(c.verdict)},
              {"mtp_objective", c.mtp_objective},
              {"max_violation", c.max_violation},
              {"diagnostics", c.diagnostics},
              {"wall_s", c.wall_s}};
    if (!std::isfinite(c.uc_bound)) e["uc_bound"] = nullptr;
    if (c.has_flow_error) {
      e["err_ft"] = c.err_ft;
      e["err_tf"] = c.err_tf;
    }
    j["cells"].push_back(e);
  }
  j["tallies"] = json::array();
  for (const Tally& t : r.tallies)
    j["tallies"].push_back({{"formulation", to_string(t.formulation)},
                            {"feasible", t.feasible},
                            {"infeasible", t.infeasible},
                            {"no_solution", t.no_solution}});
  return j.dump(2) + "\n";
}

ExperimentReport report_from_json(const std::string& text) {
  ExperimentReport r;
  try {
    json j = json::parse(text);
    r.dataset_size = j.value("dataset_size", 0);
    if (j.contains("test_error")) {
      r.mean_error_linear = j["test_error"].value("linear", 0.0);
      r.mean_error_compact = j["test_error"].value("compact", 0.0);
      r.mean_error_direct = j["test_error"].value("direct", 0.0);
    }
    for (const json& s : j.value("compression", json::array()))
      r.stages.push_back({s.at("stage").get<std::string>(), s.at("free"),
                          s.at("fixed_on"), s.at("fixed_off"),
                          s.at("mean_width")});
    std::vector<FormulationKind> order;
    for (const json& e : j.at("cells")) {
      ScenarioCell c;
      c.scheme = e.at("scheme");
      c.index = e.at("index");
      c.parameter = e.at("parameter");
      c.formulation = parse_formulation(e.at("formulation"));
      c.uc_status = e.at("uc_status");
      c.uc_objective = e.at("uc_objective");
      c.uc_bound = e.at("uc_bound").is_null() ? -kInfinity
                                              : e.at("uc_bound").get<double>();
      c.uc_gap = e.at("uc_gap");
      if (c.uc_gap < 0) c.uc_gap = kInfinity;
      c.nodes = e.at("nodes");
      c.verdict = parse_verdict(e.at("verdict"));
      c.mtp_objective = e.at("mtp_objective");
      c.max_violation = e.at("max_violation");
      c.diagnostics = e.value("diagnostics", "");
      c.wall_s = e.value("wall_s", 0.0);
      if (e.contains("err_ft")) {
        c.has_flow_error = true;
        c.err_ft = e["err_ft"];
        c.err_tf = e["err_tf"];
      }
      if (std::find(order.begin(), order.end(), c.formulation) == order.end())
        order.push_back(c.formulation);
      r.cells.push_back(std::move(c));
    }
    if (j.contains("tallies")) {
      order.clear();
      for (const json& t : j["tallies"])
        order.push_back(parse_formulation(t.at("formulation")));
    }
    r.tallies = tally(r.cells, order);
  } catch (const json::exception& e) {
    throw ParseError(std::string("report: ") + e.what(), 0);
  }
  return r;
}

std::string tally_table(const ExperimentReport& r) {
  std::vector<std::string> schemes;
  for (const ScenarioCell& c : r.cells)
    if (std::find(schemes.begin(), schemes.end(), c.scheme) == schemes.end())
      schemes.push_back(c.scheme);

  std::ostringstream os;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%-10s %-12s", "", "");
  os << buf;
  for (const std::string& s : schemes) {
    std::snprintf(buf, sizeof buf, " %14s", s.c_str());
    os << buf;
  }
  os << "          total\n";
  const char* labels[] = {"Feasible", "Infeasible", "No solution"};
  const Verdict verdicts[] = {Verdict::kFeasible, Verdict::kInfeasible,
                              Verdict::kNoSolution};
  for (const Tally& t : r.tallies) {
    for (int v = 0; v < 3; ++v) {
      std::snprintf(buf, sizeof buf, "%-10s %-12s",
                    v == 0 ? display_name(t.formulation).c_str() : "",
                    labels[v]);
      os << buf;
      int total = 0;
      for (const std::string& s : schemes) {
        int n = 0;
        for (const ScenarioCell& c : r.cells)
          if (c.formulation == t.formulation && c.scheme == s &&
              c.verdict == verdicts[v])
            ++n;
        total += n;
        std::snprintf(buf, sizeof buf, " %14d", n);
        os << buf;
      }
      std::snprintf(buf, sizeof buf, " %14d\n", total);
      os << buf;
    }
  }
  return os.str();
}

std::string scenario_csv(const ExperimentReport& r) {
  std::ostringstream os;
  os << "scheme,index,parameter,formulation,uc_status,uc_objective,uc_gap,"
        "nodes,verdict,mtp_objective,max_violation,err_ft,err_tf\n";
  for (const ScenarioCell& c : r.cells) {
    os << c.scheme << ',' << c.index << ',' << fmt(c.parameter) << ','
       << to_string(c.formulation) << ',' << c.uc_status << ','
       << fmt(c.uc_objective) << ','
       << (std::isfinite(c.uc_gap) ? fmt(c.uc_gap) : "") << ',' << c.nodes
       << ',' << to_string(c.verdict) << ',' << fmt(c.mtp_objective) << ','
       << fmt(c.max_violation) << ',';
    if (c.has_flow_error) os << fmt(c.err_ft) << ',' << fmt(c.err_tf);
    else os << ',';
    os << '\n';
  }
  return os.str();
}

std::string flow_error_csv(const ExperimentReport& r) {
  std::ostringstream os;
  os << "scheme,index,scenario,nn_ft,linear_ft,nn_tf,linear_tf\n";
  std::vector<std::pair<std::string, int>> keys;
  for (const ScenarioCell& c : r.cells) {
    std::pair<std::string, int> k{c.scheme, c.index};
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
  }
  int scenario = 0;
  for (const auto& k : keys) {
    const ScenarioCell* nn = nullptr;
    const ScenarioCell* lin = nullptr;
    for (const ScenarioCell& c : r.cells) {
      if (c.scheme != k.first || c.index != k.second || !c.has_flow_error)
        continue;
      if (c.formulation == FormulationKind::kNeural) nn = &c;
      if (c.formulation == FormulationKind::kLinear) lin = &c;
    }
    os << k.first << ',' << k.second << ',' << ++scenario << ','
       << (nn ? fmt(nn->err_ft) : "") << ',' << (lin ? fmt(lin->err_ft) : "")
       << ',' << (nn ? fmt(nn->err_tf) : "") << ','
       << (lin ? fmt(lin->err_tf) : "") << '\n';
  }
  return os.str();
}

void emit_reports(const ExperimentReport& r, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  auto put = [&](const char* name, const std::string& text) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw Error("cannot write " + (dir / name).string());
    out << text;
    if (!out) throw Error("write failed for " + (dir / name).string());
  };
  put("report.json", report_to_json(r));
  put("tally.txt", tally_table(r));
  put("scenarios.csv", scenario_csv(r));
  put("flow_error.csv", flow_error_csv(r));
}

}  // namespace acnn
