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


// Newton power flow, sequential-LP AC optimal power flow and the
// multi-period feasibility check of a fixed commitment schedule.

#ifndef ACNN_AC_SOLVER_H_
#define ACNN_AC_SOLVER_H_

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "acnn/case_ingest.h"
#include "acnn/grid_model.h"
#include "acnn/uc_builder.h"

namespace acnn {

struct GenDispatch {
  int bus = 0;
  double p_lo = 0, p_hi = 0, q_lo = 0, q_hi = 0;  // p.u.
  bool on = true;
  double p_set = 0;  // active set point used by newton_power_flow
  double cost = 0;   // linear cost, $ per p.u.-h
};

// Single-period dispatch problem. Empty vmin/vmax mean the network's.
struct DispatchSpec {
  std::vector<GenDispatch> gens;
  Eigen::VectorXd pd, qd;
  Eigen::VectorXd vmin, vmax;

  void validate(const Network& net) const;
};

// PV buses are those with an ON unit; their magnitude is held at v0. The
// reference bus absorbs the active mismatch.
OperatingPoint newton_power_flow(const Network& net, const DispatchSpec& spec,
                                 const Eigen::VectorXd& v0,
                                 const Eigen::VectorXd& theta0);

enum class Verdict { kFeasible, kInfeasible, kNoSolution };
std::string to_string(Verdict v);

enum class AcObjective { kMinCost, kFeasibility };

struct SlpOptions {
  double initial_radius = 0.1;  // p.u. and rad
  double max_radius = 0.1;
  double shrink = 0.5;
  int max_iterations = 60;
  int polish_iterations = 20;
  double tol_feas = 1e-6;
  double step_tol = 1e-7;
  double time_budget_s = 300;
};

struct AcopfResult {
  Verdict verdict = Verdict::kNoSolution;
  OperatingPoint point;
  Eigen::VectorXd p, q;  // per unit of spec.gens
  double objective = 0;
  double max_violation = kInfinity;
  int iterations = 0;
  std::string diagnostics;
};

AcopfResult slp_acopf(const Network& net, const DispatchSpec& spec,
                      AcObjective objective = AcObjective::kMinCost,
                      const SlpOptions& options = {});

struct FeasibilityReport {
  Verdict verdict = Verdict::kNoSolution;
  std::vector<double> violation;       // per period, p.u.
  double objective = 0;
  int iterations = 0;
  std::vector<OperatingPoint> points;  // per period when feasible
  Eigen::MatrixXd p, q;                // gens x horizon
  std::string diagnostics;
};

// Largest AC balance, voltage, angle and thermal violation at `op` for
// the given per-bus net injections.
double ac_violation(const Network& net, const OperatingPoint& op,
                    const Eigen::VectorXd& p_net, const Eigen::VectorXd& q_net,
                    const Eigen::VectorXd& vmin, const Eigen::VectorXd& vmax);

// Throws ScheduleLogicError before any AC work when the binaries are
// inconsistent.
FeasibilityReport mtp_acopf_check(const Network& net, const UCInstance& inst,
                                  const UCSchedule& schedule,
                                  const SlpOptions& options = {});

std::string report_to_json(const FeasibilityReport& r);

}  // namespace acnn

#endif  // ACNN_AC_SOLVER_H_
