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


// Jacobians of the AC power flow map and its affine linearization.
//
// Every Jacobian has columns ordered [d/dv (n); d/dtheta (n)].

#ifndef ACNN_JACOBIAN_H_
#define ACNN_JACOBIAN_H_

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "acnn/grid_model.h"

namespace acnn {

enum class FlowDir { kFromTo, kToFrom };

// Denominator floor for the apparent-flow chain rule at zero flow.
inline constexpr double kApparentFlowEps = 1e-8;

// d(p_inj, q_inj)/d(v, theta); 2n x 2n.
Eigen::MatrixXd injection_jacobian(const Network& net, const Eigen::VectorXd& v,
                                   const Eigen::VectorXd& theta);

// d(p, q)/d(v, theta) for the flows of direction `dir`; 2m x 2n.
Eigen::MatrixXd line_flow_jacobian(const Network& net, const Eigen::VectorXd& v,
                                   const Eigen::VectorXd& theta, FlowDir dir);

// d s/d(v, theta); m x 2n. Lines whose flow fell under the floor are
// appended to `regularized` when it is non-null.
Eigen::MatrixXd apparent_flow_jacobian(const Network& net,
                                       const Eigen::VectorXd& v,
                                       const Eigen::VectorXd& theta,
                                       FlowDir dir,
                                       std::vector<int>* regularized = nullptr);

// Affine model y ~ jstar * x + rstar in packed coordinates.
struct LinearPFModel {
  Eigen::MatrixXd jstar;  // (2n + 2m) x (2n - 1)
  Eigen::VectorXd rstar;  // 2n + 2m
  Eigen::VectorXd x0;     // 2n - 1
  std::string net_id;

  Eigen::VectorXd predict(const Eigen::VectorXd& x) const {
    return jstar * x + rstar;
  }
};

// Stacked [J_pq; J_s,ft; J_s,tf] at `point` with the reference-angle column
// removed, and rstar = f(x0) - jstar * x0.
LinearPFModel linearize(const Network& net, const OperatingPoint& point,
                        std::string net_id = "");

// Removes the reference-angle column from a 2n-column Jacobian.
Eigen::MatrixXd drop_reference_column(const Eigen::MatrixXd& j,
                                      const Network& net);

// Central finite-difference Jacobian of pack_output with respect to (v,
// theta), used for testing and diagnostics. Rows follow pack_output.
Eigen::MatrixXd finite_difference_jacobian(const Network& net,
                                           const Eigen::VectorXd& v,
                                           const Eigen::VectorXd& theta,
                                           double step = 1e-5);

// Text dump: a "name rows cols" line followed by one row per line.
void write_matrix(std::ostream& os, const std::string& name,
                  const Eigen::MatrixXd& a);
Eigen::MatrixXd read_matrix(std::istream& is, std::string* name = nullptr);

}  // namespace acnn

#endif  // ACNN_JACOBIAN_H_
