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


// Network model: admittance and incidence matrices and the exact AC power
// flow map from polar voltages to injections and line flows.

#ifndef ACNN_GRID_MODEL_H_
#define ACNN_GRID_MODEL_H_

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "acnn/case_ingest.h"

namespace acnn {

using Complex = std::complex<double>;
using SparseComplex = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;
using SparseReal = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// Immutable electrical model of a case. Branch ℓ runs from bus from[ℓ] to
// bus to[ℓ] (0-based indices).
struct Network {
  int n = 0;
  int m = 0;
  int ref = 0;
  double base_mva = 100.0;
  std::vector<int> bus_ids;
  std::vector<int> from, to;

  SparseComplex yb;   // n x n
  SparseComplex yft;  // m x n, sending-end currents
  SparseComplex ytf;  // m x n, receiving-end currents
  SparseReal e;       // signed incidence, m x n
  SparseReal e1, e2;  // sending / receiving selectors

  Eigen::VectorXd gsh, bsh;      // bus shunts, p.u.
  Eigen::VectorXd smax;          // apparent-flow limits, p.u.
  Eigen::VectorXd vmin, vmax;    // p.u.
  Eigen::VectorXd angmin, angmax;  // angle-difference limits, rad
  Eigen::VectorXd resistance, reactance;  // series r, x per branch
  std::vector<std::vector<int>> lines_from, lines_to;  // per-bus incidence

  int input_dim() const { return 2 * n - 1; }
  int output_dim() const { return 2 * n + 2 * m; }
};

Network build_network(const RawCase& c);

struct OperatingPoint {
  Eigen::VectorXd v, theta;
  Eigen::VectorXd p_inj, q_inj;
  Eigen::VectorXd p_ft, q_ft, p_tf, q_tf;
  Eigen::VectorXd s_ft, s_tf;
};

// Evaluates injections and bidirectional flows at (v, theta).
OperatingPoint eval_power_flow(const Network& net, const Eigen::VectorXd& v,
                               const Eigen::VectorXd& theta);

// x = [v; theta without the reference entry], length 2n - 1.
Eigen::VectorXd pack_input(const Eigen::VectorXd& v,
                           const Eigen::VectorXd& theta, const Network& net);
Eigen::VectorXd pack_input(const OperatingPoint& op, const Network& net);
// y = [p_inj; q_inj; s_ft; s_tf], length 2n + 2m.
Eigen::VectorXd pack_output(const OperatingPoint& op);
// Inverse of pack_input; theta[ref] is set to 0.
void unpack_input(const Eigen::VectorXd& x, const Network& net,
                  Eigen::VectorXd& v, Eigen::VectorXd& theta);

// Offsets of the blocks inside a packed output vector.
struct OutputLayout {
  int n, m;
  int p(int bus) const { return bus; }
  int q(int bus) const { return n + bus; }
  int sft(int line) const { return 2 * n + line; }
  int stf(int line) const { return 2 * n + m + line; }
};

// Offsets inside a packed input vector; theta_index returns -1 for the
// reference bus.
struct InputLayout {
  int n, ref;
  int v(int bus) const { return bus; }
  int theta(int bus) const {
    if (bus == ref) return -1;
    return n + (bus < ref ? bus : bus - 1);
  }
};

}  // namespace acnn

#endif  // ACNN_GRID_MODEL_H_
