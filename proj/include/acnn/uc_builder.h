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


// Unit-commitment MILP formulations and schedule handling.

#ifndef ACNN_UC_BUILDER_H_
#define ACNN_UC_BUILDER_H_

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "acnn/case_ingest.h"
#include "acnn/grid_model.h"
#include "acnn/jacobian.h"
#include "acnn/milp_encode.h"
#include "acnn/milp_model.h"
#include "acnn/milp_solve.h"
#include "acnn/pwl_learner.h"

namespace acnn {

// Variable indices of the generator block, [g][t]. Condensers have no
// commitment variables (y, u, w hold -1) and a free-standing q.
struct CoreUc {
  int num_gens = 0;
  int horizon = 0;
  std::vector<std::vector<int>> y, u, w, pdelta, r, q;

  // Active injection of the units at bus b in period t as terms of the
  // model (pmin * y + pdelta summed over the bus's units).
  std::vector<Term> p_terms(const UCInstance& inst, int bus, int t) const;
  std::vector<Term> q_terms(const UCInstance& inst, int bus, int t) const;
};

// Adds commitment logic, reserve, startup/shutdown caps, ramps, reactive
// limits and the cost epigraph of `inst` to `model`. Diagnostics about
// statically infeasible data are appended to `warnings`. Without
// `reactive` no q variables or reactive limits are added (q entries hold -1).
CoreUc build_core_uc(MILPModel& model, const UCInstance& inst,
                     std::vector<std::string>* warnings = nullptr,
                     bool reactive = true);

enum class FormulationKind { kNeural, kLinear, kDc };
std::string to_string(FormulationKind k);
FormulationKind parse_formulation(const std::string& s);

struct UcFormulation {
  FormulationKind kind = FormulationKind::kDc;
  MILPModel model;
  CoreUc core;
  std::vector<NnFragment> periods;            // neural and linear kinds
  std::vector<std::vector<int>> theta, pft;   // dc kind, [t][bus] / [t][line]
  std::vector<std::string> warnings;
};

// One encoded copy of `nn` per period with big-M bounds `bounds` (pruning
// statuses included) and input/output sets `box`.
UcFormulation build_nn_ac_uc(const UCInstance& inst, const Network& net,
                             const CompactPWLModel& nn,
                             const BigMBounds& bounds, const BoundBox& box);
UcFormulation build_l_ac_uc(const UCInstance& inst, const Network& net,
                            const LinearPFModel& lin, const BoundBox& box);
// Flow law p_ft = (theta_f - theta_t) / x with the reference angle fixed at
// zero; |p_ft| <= smax.
UcFormulation build_dc_uc(const UCInstance& inst, const Network& net);

// Binary branching priorities: hidden-unit indicators before commitment.
inline constexpr int kReluPriority = 2;
inline constexpr int kCommitPriority = 1;

// Repair callback for the branch-and-bound rounding heuristic: makes the
// rounded (y, u, w) consistent with transitions and minimum up/down times.
RoundingRepair unit_logic_repair(const UcFormulation& f,
                                 const UCInstance& inst);

struct UCSchedule {
  int num_gens = 0;
  int horizon = 0;
  Eigen::MatrixXi y, u, w;          // gens x horizon
  Eigen::MatrixXd pdelta, r, q;     // p.u.
  // Per period when the formulation carries them (full-length theta).
  std::vector<Eigen::VectorXd> v, theta;
  // Apparent flows predicted by the formulation, per period.
  std::vector<Eigen::VectorXd> sft, stf;
  double objective = 0;
};

// Throws ScheduleLogicError when the binaries break transitions, minimum
// up/down times or the first-period shutdown rule.
void check_schedule_logic(const UCInstance& inst, const UCSchedule& s);

// Production, no-load and startup cost of a schedule.
double schedule_cost(const UCInstance& inst, const UCSchedule& s);

// Rounds binaries (after checking integrality to 1e-6), verifies logic and
// compares the recomputed cost with `solver_objective`.
UCSchedule extract_schedule(const UcFormulation& f, const UCInstance& inst,
                            const Network& net, const std::vector<double>& x,
                            double solver_objective);

void write_schedule(std::ostream& os, const UCSchedule& s);
UCSchedule read_schedule(std::istream& is);

struct ModelStats {
  int variables = 0, binaries = 0, constraints = 0, nonzeros = 0;
  int relu_binaries = 0, commit_binaries = 0;
};
ModelStats model_stats(const MILPModel& model);
void write_stats(std::ostream& os, const ModelStats& s);

}  // namespace acnn

#endif  // ACNN_UC_BUILDER_H_
