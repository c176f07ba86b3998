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


#include "acnn/grid_model.h"

#include <cmath>
#include <queue>
#include <string>

#include "acnn/errors.h"

namespace acnn {

Network build_network(const RawCase& c) {
  validate_case(c);
  Network net;
  net.n = static_cast<int>(c.buses.size());
  net.m = static_cast<int>(c.branches.size());
  net.base_mva = c.base_mva;
  const int n = net.n, m = net.m;

  net.gsh.resize(n);
  net.bsh.resize(n);
  net.vmin.resize(n);
  net.vmax.resize(n);
  for (int i = 0; i < n; ++i) {
    const BusRecord& b = c.buses[i];
    net.bus_ids.push_back(b.id);
    net.gsh[i] = b.gs;
    net.bsh[i] = b.bs;
    net.vmin[i] = b.vmin;
    net.vmax[i] = b.vmax;
    if (b.type == BusType::kRef) net.ref = i;
  }

  net.smax.resize(m);
  net.angmin.resize(m);
  net.angmax.resize(m);
  net.resistance.resize(m);
  net.reactance.resize(m);
  net.lines_from.assign(n, {});
  net.lines_to.assign(n, {});

  using CT = Eigen::Triplet<Complex>;
  using RT = Eigen::Triplet<double>;
  std::vector<CT> tf_trip, tt_trip, yb_trip;
  std::vector<RT> e_trip, e1_trip, e2_trip;
  for (int l = 0; l < m; ++l) {
    const BranchRecord& br = c.branches[l];
    int f = c.bus_index(br.from);
    int t = c.bus_index(br.to);
    if (f == t)
      throw ValidationError("branch " + std::to_string(br.from) +
                            " connects a bus to itself");
    if (br.r == 0 && br.x == 0)
      throw ValidationError("branch " + std::to_string(br.from) + "-" +
                            std::to_string(br.to) + " has zero impedance");
    net.from.push_back(f);
    net.to.push_back(t);
    net.lines_from[f].push_back(l);
    net.lines_to[t].push_back(l);
    net.smax[l] = br.rate_a;
    net.angmin[l] = br.angmin;
    net.angmax[l] = br.angmax;
    net.resistance[l] = br.r;
    net.reactance[l] = br.x;

    const Complex ys = 1.0 / Complex(br.r, br.x);
    const double tau = br.tap == 0 ? 1.0 : br.tap;
    const Complex ytt = ys + Complex(0, br.b / 2);
    const Complex yff = ytt / (tau * tau);
    const Complex yft = -ys / (tau * std::polar(1.0, -br.shift));
    const Complex ytf = -ys / (tau * std::polar(1.0, br.shift));
    tf_trip.emplace_back(l, f, yff);
    tf_trip.emplace_back(l, t, yft);
    tt_trip.emplace_back(l, f, ytf);
    tt_trip.emplace_back(l, t, ytt);
    yb_trip.emplace_back(f, f, yff);
    yb_trip.emplace_back(f, t, yft);
    yb_trip.emplace_back(t, f, ytf);
    yb_trip.emplace_back(t, t, ytt);
    e_trip.emplace_back(l, f, 1.0);
    e_trip.emplace_back(l, t, -1.0);
    e1_trip.emplace_back(l, f, 1.0);
    e2_trip.emplace_back(l, t, 1.0);
  }
  for (int i = 0; i < n; ++i) {
    if (net.gsh[i] != 0 || net.bsh[i] != 0)
      yb_trip.emplace_back(i, i, Complex(net.gsh[i], net.bsh[i]));
  }
  net.yb.resize(n, n);
  net.yb.setFromTriplets(yb_trip.begin(), yb_trip.end());
  net.yft.resize(m, n);
  net.yft.setFromTriplets(tf_trip.begin(), tf_trip.end());
  net.ytf.resize(m, n);
  net.ytf.setFromTriplets(tt_trip.begin(), tt_trip.end());
  net.e.resize(m, n);
  net.e.setFromTriplets(e_trip.begin(), e_trip.end());
  net.e1.resize(m, n);
  net.e1.setFromTriplets(e1_trip.begin(), e1_trip.end());
  net.e2.resize(m, n);
  net.e2.setFromTriplets(e2_trip.begin(), e2_trip.end());

  // Connectivity check from the reference bus.
  std::vector<bool> seen(n, false);
  std::queue<int> frontier;
  frontier.push(net.ref);
  seen[net.ref] = true;
  while (!frontier.empty()) {
    int b = frontier.front();
    frontier.pop();
    auto visit = [&](int other) {
      if (!seen[other]) {
        seen[other] = true;
        frontier.push(other);
      }
    };
    for (int l : net.lines_from[b]) visit(net.to[l]);
    for (int l : net.lines_to[b]) visit(net.from[l]);
  }
  std::string island;
  for (int i = 0; i < n; ++i) {
    if (!seen[i]) {
      if (!island.empty()) island += ", ";
      island += std::to_string(net.bus_ids[i]);
    }
  }
  if (!island.empty())
    throw ValidationError(
        "network is disconnected; buses not reachable from the reference "
        "bus: " + island);
  return net;
}

OperatingPoint eval_power_flow(const Network& net, const Eigen::VectorXd& v,
                               const Eigen::VectorXd& theta) {
  if (v.size() != net.n || theta.size() != net.n)
    throw DimensionError("voltage vectors must have length n");
  if ((v.array() <= 0).any())
    throw ValidationError("voltage magnitudes must be positive");
  Eigen::VectorXcd volt(net.n);
  for (int i = 0; i < net.n; ++i) volt[i] = std::polar(v[i], theta[i]);

  OperatingPoint op;
  op.v = v;
  op.theta = theta;
  Eigen::VectorXcd s = volt.cwiseProduct((net.yb * volt).conjugate());
  op.p_inj = s.real();
  op.q_inj = s.imag();
  Eigen::VectorXcd vf = net.e1.cast<Complex>() * volt;
  Eigen::VectorXcd vt = net.e2.cast<Complex>() * volt;
  Eigen::VectorXcd sft = vf.cwiseProduct((net.yft * volt).conjugate());
  Eigen::VectorXcd stf = vt.cwiseProduct((net.ytf * volt).conjugate());
  op.p_ft = sft.real();
  op.q_ft = sft.imag();
  op.p_tf = stf.real();
  op.q_tf = stf.imag();
  op.s_ft = sft.cwiseAbs();
  op.s_tf = stf.cwiseAbs();
  return op;
}

Eigen::VectorXd pack_input(const Eigen::VectorXd& v,
                           const Eigen::VectorXd& theta, const Network& net) {
  if (v.size() != net.n || theta.size() != net.n)
    throw DimensionError("voltage vectors must have length n");
  Eigen::VectorXd x(net.input_dim());
  x.head(net.n) = v;
  int k = net.n;
  for (int i = 0; i < net.n; ++i)
    if (i != net.ref) x[k++] = theta[i];
  return x;
}

Eigen::VectorXd pack_input(const OperatingPoint& op, const Network& net) {
  return pack_input(op.v, op.theta, net);
}

Eigen::VectorXd pack_output(const OperatingPoint& op) {
  const auto n = op.p_inj.size(), m = op.s_ft.size();
  Eigen::VectorXd y(2 * n + 2 * m);
  y << op.p_inj, op.q_inj, op.s_ft, op.s_tf;
  return y;
}

void unpack_input(const Eigen::VectorXd& x, const Network& net,
                  Eigen::VectorXd& v, Eigen::VectorXd& theta) {
  if (x.size() != net.input_dim())
    throw DimensionError("input vector must have length 2n - 1");
  v = x.head(net.n);
  theta.resize(net.n);
  int k = net.n;
  for (int i = 0; i < net.n; ++i) theta[i] = i == net.ref ? 0.0 : x[k++];
}

}  // namespace acnn
