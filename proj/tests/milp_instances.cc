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


#include "milp_instances.h"

#include <map>
#include <random>

#include "acnn/case_ingest.h"
#include "acnn/grid_model.h"
#include "acnn/milp_encode.h"
#include "acnn/uc_builder.h"
#include "support.h"

namespace acnn::testing {

namespace {

MILPModel knapsack(const std::vector<double>& value,
                   const std::vector<double>& weight, double cap) {
  MILPModel m("knapsack");
  std::vector<Term> row;
  for (size_t i = 0; i < value.size(); ++i) {
    int x = m.add_binary("x" + std::to_string(i));
    m.set_objective(x, -value[i]);
    row.push_back({x, weight[i]});
  }
  m.add_constraint("cap", row, Sense::kLe, cap);
  return m;
}

MILPModel set_cover(std::mt19937_64& rng) {
  MILPModel m("cover");
  const int sets = 12, items = 15;
  std::uniform_real_distribution<double> cost(1, 10);
  std::bernoulli_distribution in(0.3);
  std::vector<std::vector<bool>> has(sets, std::vector<bool>(items));
  for (int s = 0; s < sets; ++s) {
    int x = m.add_binary("s" + std::to_string(s));
    m.set_objective(x, std::round(cost(rng) * 10) / 10);
    for (int i = 0; i < items; ++i) has[s][i] = in(rng);
  }
  for (int i = 0; i < items; ++i) {
    std::vector<Term> row;
    for (int s = 0; s < sets; ++s)
      if (has[s][i]) row.push_back({s, 1.0});
    if (row.empty()) row.push_back({i % sets, 1.0});
    m.add_constraint("item" + std::to_string(i), row, Sense::kGe, 1);
  }
  return m;
}

MILPModel facility() {
  MILPModel m("facility");
  const double open_cost[] = {40, 55, 35};
  const double cap[] = {30, 45, 25};
  const double demand[] = {12, 18, 9, 15};
  const double ship[3][4] = {{2, 4, 5, 3}, {3, 1, 2, 4}, {5, 3, 1, 2}};
  int open[3];
  for (int f = 0; f < 3; ++f) {
    open[f] = m.add_binary("open" + std::to_string(f));
    m.set_objective(open[f], open_cost[f]);
  }
  int flow[3][4];
  for (int f = 0; f < 3; ++f)
    for (int c = 0; c < 4; ++c) {
      flow[f][c] = m.add_variable(
          "ship" + std::to_string(f) + "_" + std::to_string(c), 0, kInfinity);
      m.set_objective(flow[f][c], ship[f][c]);
    }
  for (int c = 0; c < 4; ++c) {
    std::vector<Term> row;
    for (int f = 0; f < 3; ++f) row.push_back({flow[f][c], 1.0});
    m.add_constraint("demand" + std::to_string(c), row, Sense::kEq, demand[c]);
  }
  for (int f = 0; f < 3; ++f) {
    std::vector<Term> row{{open[f], -cap[f]}};
    for (int c = 0; c < 4; ++c) row.push_back({flow[f][c], 1.0});
    m.add_constraint("cap" + std::to_string(f), row, Sense::kLe, 0);
  }
  return m;
}

MILPModel mixed(std::mt19937_64& rng) {
  MILPModel m("mixed");
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<int> vars;
  for (int i = 0; i < 8; ++i) {
    vars.push_back(m.add_binary("b" + std::to_string(i)));
    m.set_objective(vars.back(), std::round(u(rng) * 100) / 10);
  }
  vars.push_back(m.add_variable("c0", -kInfinity, kInfinity));
  vars.push_back(m.add_variable("c1", -2, 3));
  vars.push_back(m.add_variable("c2", -kInfinity, 4));
  vars.push_back(m.add_variable("c3", 0, kInfinity));
  m.set_objective(vars[8], 0.5);
  m.set_objective(vars[9], -1.5);
  m.set_objective(vars[10], -0.7);
  m.set_objective(vars[11], 1.1);
  // Keep the free variable bounded through rows.
  m.add_constraint("free_lo", {{vars[8], 1.0}, {vars[11], 1.0}}, Sense::kGe, -3);
  m.add_constraint("free_hi", {{vars[8], 1.0}}, Sense::kLe, 5);
  for (int r = 0; r < 6; ++r) {
    std::vector<Term> row;
    for (int v : vars) row.push_back({v, std::round(u(rng) * 40) / 10});
    m.add_constraint("r" + std::to_string(r), row,
                     r % 3 == 0 ? Sense::kGe : Sense::kLe,
                     r % 3 == 0 ? -4.0 : 4.0);
  }
  m.add_objective_constant(2.5);
  return m;
}

MILPModel relu_fragment() {
  CompactPWLModel nn;
  const int in = 3, out = 2, rho = 3;
  nn.linear.jstar = Eigen::MatrixXd(out, in);
  nn.linear.jstar << 0.5, -0.2, 0.1, 0.3, 0.4, -0.6;
  nn.linear.rstar = Eigen::Vector2d(0.1, -0.2);
  nn.linear.x0 = Eigen::VectorXd::Zero(in);
  nn.w1 = Eigen::MatrixXd(in, rho);
  nn.w1 << 1.0, -0.5, 0.3, 0.2, 0.8, -1.1, -0.7, 0.4, 0.9;
  nn.w2 = Eigen::MatrixXd(out, rho);
  nn.w2 << 0.6, -0.9, 0.4, -0.3, 0.7, 1.2;
  nn.b = Eigen::Vector3d(0.05, -0.1, 0.2);
  nn.pinned_w1 = BoolMatrix::Constant(in, rho, false);
  nn.pinned_w2 = BoolMatrix::Constant(out, rho, false);
  BoundBox box;
  box.x_lo = Eigen::VectorXd::Constant(in, -1);
  box.x_hi = Eigen::VectorXd::Constant(in, 1);
  box.y_lo = Eigen::VectorXd::Constant(out, -kInfinity);
  box.y_hi = Eigen::VectorXd::Constant(out, kInfinity);
  BigMBounds bounds = interval_bounds(nn, box);
  MILPModel m("relu");
  NnFragment frag = encode_relu_network(m, nn, bounds, box, "nn");
  m.set_objective(frag.y[0], 1.0);
  m.set_objective(frag.y[1], -0.5);
  return m;
}

MILPModel three_bus_uc() {
  RawCase c = parse_matpower(kThreeBusCase);
  Network net = build_network(c);
  UCInstance inst = load_uc_instance(kThreeBusUc, c);
  return build_dc_uc(inst, net).model;
}

}  // namespace

std::vector<NamedModel> bundled_milp_instances() {
  std::mt19937_64 rng(20);
  std::vector<NamedModel> out;
  out.push_back({"knapsack3", knapsack({10, 13, 7}, {5, 7, 4}, 10)});
  out.push_back({"knapsack10",
                 knapsack({12, 9, 15, 7, 11, 8, 14, 6, 10, 5},
                          {6, 5, 8, 4, 7, 4, 9, 3, 6, 2}, 25)});
  out.push_back({"set_cover12", set_cover(rng)});
  out.push_back({"facility3", facility()});
  out.push_back({"mixed8", mixed(rng)});
  out.push_back({"relu3", relu_fragment()});
  out.push_back({"uc_three_bus", three_bus_uc()});
  MILPModel fixed = knapsack({4, 5, 6}, {1, 2, 3}, 4);
  for (int j = 0; j < fixed.num_variables(); ++j)
    fixed.variable(j).lo = fixed.variable(j).hi = (j == 2 ? 1 : 0);
  out.push_back({"all_fixed", std::move(fixed)});
  MILPModel bad = knapsack({1, 1}, {1, 1}, 3);
  bad.add_constraint("need3", {{0, 1.0}, {1, 1.0}}, Sense::kGe, 3);
  out.push_back({"infeasible", std::move(bad)});
  return out;
}

bool same_coefficients(const MILPModel& a, const MILPModel& b,
                       std::string* where) {
  auto differ = [&](const std::string& what) {
    if (where) *where = what;
    return false;
  };
  if (a.num_variables() != b.num_variables()) return differ("variable count");
  if (a.num_constraints() != b.num_constraints()) return differ("row count");
  if (a.objective_constant() != b.objective_constant())
    return differ("objective constant");
  for (int j = 0; j < a.num_variables(); ++j) {
    const Variable& va = a.variable(j);
    const int jb = b.find(va.name);
    if (jb < 0) return differ("missing variable " + va.name);
    const Variable& vb = b.variable(jb);
    if (va.lo != vb.lo || va.hi != vb.hi || va.kind != vb.kind ||
        a.objective()[j] != b.objective()[jb])
      return differ("variable " + va.name);
  }
  for (int i = 0; i < a.num_constraints(); ++i) {
    const Constraint& ca = a.constraints()[i];
    const Constraint& cb = b.constraints()[i];
    if (ca.name != cb.name || ca.sense != cb.sense || ca.rhs != cb.rhs)
      return differ("row " + ca.name);
    std::map<std::string, double> ta, tb;
    for (const Term& t : ca.terms) ta[a.variable(t.var).name] += t.coef;
    for (const Term& t : cb.terms) tb[b.variable(t.var).name] += t.coef;
    if (ta != tb) return differ("coefficients of row " + ca.name);
  }
  return true;
}

}  // namespace acnn::testing
