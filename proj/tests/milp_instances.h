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



// Small MILP instances shared by the solver tests and the acceptance run.

#ifndef ACNN_TESTS_MILP_INSTANCES_H_
#define ACNN_TESTS_MILP_INSTANCES_H_

#include <string>
#include <vector>

#include "acnn/milp_model.h"

namespace acnn::testing {

struct NamedModel {
  std::string name;
  MILPModel model;
};

// Knapsacks, set cover, facility location, a random mixed model with free
// variables, a three-unit ReLU fragment, a two-unit UC on the three-bus
// case, a fully fixed model and an infeasible one. All have at most 12
// binaries.
std::vector<NamedModel> bundled_milp_instances();

// True when both models declare the same variables (matched by name) with
// identical bounds, kinds and objective coefficients, and the same rows in
// the same order with identical senses, right-hand sides and coefficient
// sets. `where` receives the first difference.
bool same_coefficients(const MILPModel& a, const MILPModel& b,
                       std::string* where = nullptr);

}  // namespace acnn::testing

#endif  // ACNN_TESTS_MILP_INSTANCES_H_
