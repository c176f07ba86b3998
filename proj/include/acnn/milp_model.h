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


// Solver-agnostic mixed-integer linear model container.

#ifndef ACNN_MILP_MODEL_H_
#define ACNN_MILP_MODEL_H_

#include <limits>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace acnn {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class VarKind { kContinuous, kBinary };
enum class Sense { kLe, kEq, kGe };

// Domain meaning of a variable, e.g. {"y", g, t} or {"beta", i, t}.
struct VarTag {
  std::string group;
  int i = -1;
  int t = -1;
};

struct Variable {
  std::string name;
  VarKind kind = VarKind::kContinuous;
  double lo = 0, hi = kInfinity;
  int branch_priority = 0;  // larger values are branched on first
  VarTag tag;
};

struct Term {
  int var;
  double coef;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Sense sense = Sense::kLe;
  double rhs = 0;
};

// Minimization model. Variable and constraint indices are stable.
class MILPModel {
 public:
  explicit MILPModel(std::string name = "model") : name_(std::move(name)) {}

  int add_variable(std::string name, double lo, double hi,
                   VarKind kind = VarKind::kContinuous, VarTag tag = {},
                   int branch_priority = 0);
  int add_binary(std::string name, VarTag tag = {}, int branch_priority = 0) {
    return add_variable(std::move(name), 0, 1, VarKind::kBinary,
                        std::move(tag), branch_priority);
  }
  int add_constraint(std::string name, std::vector<Term> terms, Sense sense,
                     double rhs);

  void add_objective(int var, double coef);
  void set_objective(int var, double coef);
  void add_objective_constant(double c) { obj_constant_ += c; }

  const std::string& name() const { return name_; }
  int num_variables() const { return static_cast<int>(vars_.size()); }
  int num_constraints() const { return static_cast<int>(rows_.size()); }
  int num_binaries() const;
  const std::vector<Variable>& variables() const { return vars_; }
  Variable& variable(int j) { return vars_.at(j); }
  const Variable& variable(int j) const { return vars_.at(j); }
  const std::vector<Constraint>& constraints() const { return rows_; }
  Constraint& constraint(int i) { return rows_.at(i); }
  const std::vector<double>& objective() const { return obj_; }
  double objective_constant() const { return obj_constant_; }

  // Index of the first variable with this name, or -1.
  int find(const std::string& name) const;
  std::vector<int> find_group(const std::string& group) const;
  // Index of the variable tagged (group, i, t), or -1.
  int find_tagged(const std::string& group, int i, int t) const;

  // Throws ValidationError on dangling references, bad binary bounds or
  // non-finite coefficients.
  void validate() const;

  double objective_value(std::span<const double> x) const;
  double row_activity(int row, std::span<const double> x) const;
  // Largest violation over rows, bounds and integrality. `where` receives a
  // description of the worst entry when non-null.
  double max_violation(std::span<const double> x,
                       std::string* where = nullptr) const;

 private:
  std::string name_;
  std::vector<Variable> vars_;
  std::vector<Constraint> rows_;
  std::vector<double> obj_;
  double obj_constant_ = 0;
  std::unordered_map<std::string, int> by_name_;
};

}  // namespace acnn

#endif  // ACNN_MILP_MODEL_H_
