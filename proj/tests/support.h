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



// Shared fixtures for the test binaries.

#ifndef ACNN_TESTS_SUPPORT_H_
#define ACNN_TESTS_SUPPORT_H_

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "acnn/case_ingest.h"
#include "acnn/grid_model.h"
#include "acnn/pwl_learner.h"

namespace acnn::testing {

inline std::string data_path(const std::string& name) {
  return std::string(ACNN_DATA_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline RawCase case14(double derate = 0.3) {
  RawCase c = parse_matpower(slurp(data_path("case14_ieee.m")));
  return derate > 0 ? derate_thermal_limits(c, derate) : c;
}

inline UCInstance uc14(const RawCase& c) {
  return load_uc_instance(slurp(data_path("uc14_24h.json")), c);
}

// Slack bus 1 and a 100 MW load at bus 2 over a lossless x = 0.1 line.
inline const char* kTwoBusCase = R"(function mpc = two_bus
mpc.version = '2';
mpc.baseMVA = 100;
mpc.bus = [
  1 3 0   0  0 0 1 1 0 135 1 1.1 0.9;
  2 1 100 20 0 0 1 1 0 135 1 1.1 0.9;
];
mpc.gen = [
  1 0 0 100 -100 1 100 1 200 0 0 0 0 0 0 0 0 0 0 0 0;
];
mpc.branch = [
  1 2 0 0.1 0 100 100 100 0 0 1 -360 360;
];
mpc.gencost = [
  2 0 0 3 0 20 0;
];
)";

// Triangle with two generators and loads at buses 2 and 3.
inline const char* kThreeBusCase = R"(function mpc = three_bus
mpc.version = '2';
mpc.baseMVA = 100;
mpc.bus = [
  1 3 0  0  0 0 1 1.02 0 135 1 1.1 0.9;
  2 2 60 15 0 0 1 1.0  0 135 1 1.1 0.9;
  3 1 80 25 0 0 1 1.0  0 135 1 1.1 0.9;
];
mpc.gen = [
  1 0 0 80 -80 1.02 100 1 150 20 0 0 0 0 0 0 0 0 0 0 0;
  2 0 0 60 -60 1.0  100 1 100 10 0 0 0 0 0 0 0 0 0 0 0;
];
mpc.branch = [
  1 2 0.01 0.08 0.02 150 150 150 0 0 1 -60 60;
  1 3 0.02 0.10 0.02 150 150 150 0 0 1 -60 60;
  2 3 0.01 0.09 0.02 100 100 100 0 0 1 -60 60;
];
mpc.gencost = [
  2 0 0 3 0 20 0;
  2 0 0 3 0 30 0;
];
)";

// Two units over two hours on the three-bus case.
inline const char* kThreeBusUc = R"({
  "horizon": 2,
  "load_profile": [0.9, 1.1],
  "reserve_mw": 5,
  "generators": [
    {"name": "a", "case_gen": 1, "pmin_mw": 20, "pmax_mw": 150,
     "startup_limit_mw": 80, "shutdown_limit_mw": 80,
     "ramp_up_mw": 90, "ramp_down_mw": 90, "min_up_h": 2, "min_down_h": 1,
     "initial_status_h": 3, "initial_power_mw": 60, "no_load_cost": 100,
     "cost_curve": [[60, 20], [70, 25]], "startup_tiers": [[1, 300]]},
    {"name": "b", "case_gen": 2, "pmin_mw": 10, "pmax_mw": 100,
     "min_up_h": 1, "min_down_h": 2, "initial_status_h": -2,
     "no_load_cost": 50, "cost_curve": [[90, 30]],
     "startup_tiers": [[1, 80], [2, 160]]}
  ]
})";

// Dense model with N(0, 1) weights; no bounds attached.
inline CompactPWLModel random_compact_model(int in, int out, int rho,
                                            unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  auto fill = [&](Eigen::MatrixXd& a, int r, int c) {
    a.resize(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) a(i, j) = g(rng);
  };
  CompactPWLModel nn;
  fill(nn.linear.jstar, out, in);
  nn.linear.rstar = Eigen::VectorXd::Zero(out);
  for (int i = 0; i < out; ++i) nn.linear.rstar(i) = g(rng);
  nn.linear.x0 = Eigen::VectorXd::Zero(in);
  fill(nn.w1, in, rho);
  fill(nn.w2, out, rho);
  nn.b = Eigen::VectorXd::Zero(rho);
  for (int i = 0; i < rho; ++i) nn.b(i) = 0.3 * g(rng);
  nn.pinned_w1 = BoolMatrix::Constant(in, rho, false);
  nn.pinned_w2 = BoolMatrix::Constant(out, rho, false);
  return nn;
}

}  // namespace acnn::testing

#endif  // ACNN_TESTS_SUPPORT_H_
