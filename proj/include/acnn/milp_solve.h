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


// Branch-and-bound over the dual simplex engine.

#ifndef ACNN_MILP_SOLVE_H_
#define ACNN_MILP_SOLVE_H_

#include <functional>
#include <string>
#include <vector>

#include "acnn/lp_simplex.h"
#include "acnn/milp_model.h"

namespace acnn {

enum class MilpStatus { kOptimal, kInfeasible, kUnbounded, kGapReached,
                        kBudgetExhausted };
std::string to_string(MilpStatus s);

// Repairs a rounded point in place so that its binaries satisfy problem
// logic. Returns false when no repair was possible.
using RoundingRepair =
    std::function<bool(const MILPModel& model, std::vector<double>& x)>;

struct MilpOptions {
  double gap_target = 1e-6;      // relative
  double time_budget_s = 600;
  long node_budget = 1000000;
  int heuristic_interval = 20;   // nodes between rounding attempts
  RoundingRepair repair;
  LpOptions lp;
  double integrality_tol = 1e-6;
};

struct MilpSolution {
  MilpStatus status = MilpStatus::kInfeasible;
  bool has_incumbent = false;
  std::vector<double> x;
  double objective = kInfinity;
  double bound = -kInfinity;
  double gap = kInfinity;
  long nodes = 0;
  long lp_iterations = 0;
  double wall_time_s = 0;
  std::vector<double> bound_trace;  // global lower bound after each node
  std::string diagnostics;
};

// gap = (objective - bound) / max(|objective|, 1e-9).
double relative_gap(double objective, double bound);

MilpSolution solve_milp(const MILPModel& model,
                        const MilpOptions& options = {});

}  // namespace acnn

#endif  // ACNN_MILP_SOLVE_H_
