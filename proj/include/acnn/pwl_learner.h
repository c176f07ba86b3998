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


// Compact piecewise-linear power flow surrogate and its training.
//
//   y = jstar * x + rstar + w2 * relu(w1' * x + b)
//
// Inputs are used as-is (per-unit magnitudes and radians) with no
// standardization, so the MILP encoding needs no affine unwrapping.

#ifndef ACNN_PWL_LEARNER_H_
#define ACNN_PWL_LEARNER_H_

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "acnn/errors.h"
#include "acnn/jacobian.h"

namespace acnn {

enum class ReluStatus { kFree, kFixedOff, kFixedOn };
enum class BoundProvenance { kNone, kInterval, kLp, kMilp };
std::string to_string(ReluStatus s);
std::string to_string(BoundProvenance p);

// Pre-activation bounds and pruning state per hidden unit.
struct BigMBounds {
  Eigen::VectorXd mmin, mmax;
  std::vector<ReluStatus> status;
  std::vector<BoundProvenance> provenance;

  int size() const { return static_cast<int>(mmin.size()); }
  bool empty() const { return mmin.size() == 0; }
  int num_free() const;
  // Throws ValidationError when mmin > mmax or a status contradicts the
  // bounds.
  void validate() const;
};

using BoolMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

struct CompactPWLModel {
  LinearPFModel linear;
  Eigen::MatrixXd w1;  // input_dim x rho
  Eigen::MatrixXd w2;  // output_dim x rho
  Eigen::VectorXd b;   // rho
  BoolMatrix pinned_w1, pinned_w2;  // true where the weight is fixed at 0
  BigMBounds bounds;                // empty until computed

  int rho() const { return static_cast<int>(b.size()); }
  int input_dim() const { return static_cast<int>(w1.rows()); }
  int output_dim() const { return static_cast<int>(w2.rows()); }

  Eigen::VectorXd preactivation(const Eigen::VectorXd& x) const {
    return w1.transpose() * x + b;
  }
  Eigen::VectorXd predict(const Eigen::VectorXd& x) const;
  // Rows of `x` are samples; returns one prediction per row.
  Eigen::MatrixXd predict_rows(const Eigen::MatrixXd& x) const;
  // Units with no remaining input or output weight.
  std::vector<int> dead_units() const;
};

// y = w2 * relu(w1' x + b), without the physics feedthrough.
struct DirectNNModel {
  Eigen::MatrixXd w1, w2;
  Eigen::VectorXd b;
  Eigen::VectorXd predict(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd predict_rows(const Eigen::MatrixXd& x) const;
};

struct TrainConfig {
  int rho = 8;
  double learning_rate = 2.5e-4;
  int batch_size = 75;
  long steps = 75000;
  std::uint64_t seed = 1;
  double sparsity = 0.25;
  double beta1 = 0.9, beta2 = 0.999, epsilon = 1e-8;
  long eval_interval = 500;  // steps between full-data loss evaluations
};

// Training-set loss recorded every eval_interval steps.
struct TrainingCurve {
  std::vector<long> step;
  std::vector<double> loss;
};

class TrainingError : public Error {
 public:
  using Error::Error;
};

// Mean over samples of the squared 2-norm of the prediction error.
double compact_loss(const CompactPWLModel& model, const Eigen::MatrixXd& x,
                    const Eigen::MatrixXd& y);

// Trains from the w2 = 0 start. The returned parameters are the best seen at
// an evaluation point, so their loss never exceeds the linear model's.
CompactPWLModel train_compact(const Eigen::MatrixXd& x,
                              const Eigen::MatrixXd& y,
                              const LinearPFModel& lin, const TrainConfig& cfg,
                              TrainingCurve* curve = nullptr);

// Continues training an existing model, keeping pinned weights at zero.
CompactPWLModel retrain_compact(const CompactPWLModel& start,
                                const Eigen::MatrixXd& x,
                                const Eigen::MatrixXd& y,
                                const TrainConfig& cfg,
                                TrainingCurve* curve = nullptr);

DirectNNModel train_direct(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                           const TrainConfig& cfg,
                           TrainingCurve* curve = nullptr);

// Analytic gradient of compact_loss with respect to (w1, w2, b), exposed for
// gradient checks.
struct CompactGradient {
  Eigen::MatrixXd w1, w2;
  Eigen::VectorXd b;
};
CompactGradient compact_gradient(const CompactPWLModel& model,
                                 const Eigen::MatrixXd& x,
                                 const Eigen::MatrixXd& y);

// Pins the smallest-magnitude weights (pooled over w1 and w2) so that at
// least `target` of all entries are zero, then retrains with `cfg`.
CompactPWLModel sparsify_retrain(const CompactPWLModel& model,
                                 const Eigen::MatrixXd& x,
                                 const Eigen::MatrixXd& y, double target,
                                 const TrainConfig& cfg);
// The pinning step alone.
CompactPWLModel sparsify(const CompactPWLModel& model, double target);

struct ErrorStats {
  Eigen::VectorXd linear, direct, compact;  // per-sample L1 errors
  double mean_linear = 0, mean_direct = 0, mean_compact = 0;
  double linear_over_compact = 0, direct_over_compact = 0;
};
ErrorStats evaluate_model(const CompactPWLModel& model,
                          const DirectNNModel* direct,
                          const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

struct ActivationRegion {
  std::vector<bool> pattern;
  Eigen::MatrixXd jacobian;  // jstar + w2 diag(pattern) w1'
  long count = 0;
};
std::vector<ActivationRegion> enumerate_activation_patterns(
    const CompactPWLModel& model, const Eigen::MatrixXd& x);
Eigen::MatrixXd region_jacobian(const CompactPWLModel& model,
                                const std::vector<bool>& pattern);

void write_model(std::ostream& os, const CompactPWLModel& model);
CompactPWLModel read_model(std::istream& is);
void write_direct_model(std::ostream& os, const DirectNNModel& model);
DirectNNModel read_direct_model(std::istream& is);

}  // namespace acnn

#endif  // ACNN_PWL_LEARNER_H_
