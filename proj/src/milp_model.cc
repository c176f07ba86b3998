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


#include "acnn/milp_model.h"

#include <algorithm>
#include <cmath>

#include "acnn/errors.h"

namespace acnn {

int MILPModel::add_variable(std::string name, double lo, double hi,
                            VarKind kind, VarTag tag, int branch_priority) {
  const int j = num_variables();
  by_name_.emplace(name, j);
  vars_.push_back({std::move(name), kind, lo, hi, branch_priority,
                   std::move(tag)});
  obj_.push_back(0.0);
  return j;
}

int MILPModel::add_constraint(std::string name, std::vector<Term> terms,
                              Sense sense, double rhs) {
  rows_.push_back({std::move(name), std::move(terms), sense, rhs});
  return num_constraints() - 1;
}

void MILPModel::add_objective(int var, double coef) { obj_.at(var) += coef; }
void MILPModel::set_objective(int var, double coef) { obj_.at(var) = coef; }

int MILPModel::num_binaries() const {
  return static_cast<int>(std::count_if(vars_.begin(), vars_.end(), [](auto& v) {
    return v.kind == VarKind::kBinary;
  }));
}

int MILPModel::find(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? -1 : it->second;
}

std::vector<int> MILPModel::find_group(const std::string& group) const {
  std::vector<int> out;
  for (int j = 0; j < num_variables(); ++j)
    if (vars_[j].tag.group == group) out.push_back(j);
  return out;
}

int MILPModel::find_tagged(const std::string& group, int i, int t) const {
  for (int j = 0; j < num_variables(); ++j) {
    const VarTag& tag = vars_[j].tag;
    if (tag.group == group && tag.i == i && tag.t == t) return j;
  }
  return -1;
}

void MILPModel::validate() const {
  for (const Variable& v : vars_) {
    if (std::isnan(v.lo) || std::isnan(v.hi))
      throw ValidationError("variable " + v.name + " has NaN bounds");
    if (v.kind == VarKind::kBinary && (v.lo < 0 || v.hi > 1))
      throw ValidationError("binary " + v.name + " must have bounds in [0,1]");
  }
  for (double c : obj_)
    if (!std::isfinite(c))
      throw ValidationError("non-finite objective coefficient");
  for (const Constraint& row : rows_) {
    if (!std::isfinite(row.rhs))
      throw ValidationError("constraint " + row.name + " has non-finite rhs");
    for (const Term& t : row.terms) {
      if (t.var < 0 || t.var >= num_variables())
        throw ValidationError("constraint " + row.name +
                              " references an undeclared variable");
      if (!std::isfinite(t.coef))
        throw ValidationError("constraint " + row.name +
                              " has a non-finite coefficient");
    }
  }
}

double MILPModel::objective_value(std::span<const double> x) const {
  double acc = obj_constant_;
  for (int j = 0; j < num_variables(); ++j) acc += obj_[j] * x[j];
  return acc;
}

double MILPModel::row_activity(int row, std::span<const double> x) const {
  double acc = 0;
  for (const Term& t : rows_[row].terms) acc += t.coef * x[t.var];
  return acc;
}

double MILPModel::max_violation(std::span<const double> x,
                                std::string* where) const {
  if (static_cast<int>(x.size()) != num_variables())
    throw DimensionError("solution length does not match the model");
  double worst = 0;
  auto note = [&](double viol, auto&& describe) {
    if (viol > worst) {
      worst = viol;
      if (where) *where = describe();
    }
  };
  for (int j = 0; j < num_variables(); ++j) {
    const Variable& v = vars_[j];
    note(v.lo - x[j], [&] { return "lower bound of " + v.name; });
    note(x[j] - v.hi, [&] { return "upper bound of " + v.name; });
    if (v.kind == VarKind::kBinary)
      note(std::abs(x[j] - std::round(x[j])),
           [&] { return "integrality of " + v.name; });
  }
  for (int i = 0; i < num_constraints(); ++i) {
    const Constraint& row = rows_[i];
    const double a = row_activity(i, x);
    double viol = 0;
    switch (row.sense) {
      case Sense::kLe: viol = a - row.rhs; break;
      case Sense::kGe: viol = row.rhs - a; break;
      case Sense::kEq: viol = std::abs(a - row.rhs); break;
    }
    note(viol, [&] { return "row " + row.name; });
  }
  return worst;
}

}  // namespace acnn
