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


// Big-M MILP encoding of a compact surrogate, pre-activation bound
// computation (interval, LP, MILP) and pruning.

#ifndef ACNN_MILP_ENCODE_H_
#define ACNN_MILP_ENCODE_H_

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "acnn/case_ingest.h"
#include "acnn/grid_model.h"
#include "acnn/milp_model.h"
#include "acnn/milp_solve.h"
#include "acnn/pwl_learner.h"

namespace acnn {

// Bound on |theta_from - theta_to| for an input pair; an index of -1 stands
// for the reference angle (identically 0).
struct AnglePair {
  int from = -1, to = -1;  // indices into the packed input vector
  double lo = 0, hi = 0;
};

// Input box, angle-difference sets and output sets used to bound the
// pre-activations.
struct BoundBox {
  Eigen::VectorXd x_lo, x_hi;
  std::vector<AnglePair> angle_pairs;
  Eigen::VectorXd y_lo, y_hi;  // may hold infinities

  void validate() const;
  bool contains(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                double tol = 0) const;
};

// Sets derived from the UC engineering limits: voltage bounds, angle bounds
// propagated from the reference bus along shortest paths, line angle
// limits, injection ranges from generator capacity and hourly loads (scaled
// by `load_margin` in both directions) and apparent-flow limits.
BoundBox make_uc_bound_box(const Network& net, const UCInstance& inst,
                           double load_margin = 0.15);

// Variable indices of one encoded copy of the network.
struct NnFragment {
  std::vector<int> x, y, zhat, z, beta;  // -1 where a unit was pruned away
};

// Adds x and y variables bounded by `box`, the affine output rows and one
// big-M block per unit. Fixed-off units get z = 0 and fixed-on units
// z = zhat, both without a binary. `period` is stored in the variable tags.
NnFragment encode_relu_network(MILPModel& model, const CompactPWLModel& nn,
                               const BigMBounds& bounds, const BoundBox& box,
                               const std::string& prefix, int period = -1,
                               int beta_priority = 2);

// Same, for the linear model only (no hidden units).
NnFragment encode_linear_model(MILPModel& model, const LinearPFModel& lin,
                               const BoundBox& box, const std::string& prefix,
                               int period = -1);

// Adds the angle-difference rows of `box` over the fragment's inputs.
void add_angle_rows(MILPModel& model, const NnFragment& frag,
                    const BoundBox& box, const std::string& prefix);

BigMBounds interval_bounds(const CompactPWLModel& nn, const BoundBox& box);

enum class BoundMode { kInterval, kLp, kMilp };
std::string to_string(BoundMode m);
BoundMode parse_bound_mode(const std::string& s);

struct TightenOptions {
  MilpOptions milp;          // per bound problem in kMilp mode
  double time_budget_s = 600;  // across all bound problems
};

// Tightens `start` (typically interval bounds) by optimizing each
// pre-activation over the encoded network and the box. The result is
// intersected with `start`; entries that could not be improved keep their
// provenance.
BigMBounds tighten_bounds(const CompactPWLModel& nn, const BoundBox& box,
                          BoundMode mode, const BigMBounds& start,
                          const TightenOptions& options = {});

// Assigns statuses: fixed_off when mmax <= 0, fixed_on when mmin > 0.
BigMBounds prune(const BigMBounds& bounds);

}  // namespace acnn

#endif  // ACNN_MILP_ENCODE_H_
