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


#include "acnn/jacobian.h"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

#include "acnn/errors.h"

namespace acnn {
namespace {

Eigen::VectorXcd complex_voltage(const Eigen::VectorXd& v,
                                 const Eigen::VectorXd& theta) {
  Eigen::VectorXcd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = std::polar(v[i], theta[i]);
  return out;
}

void check_dims(const Network& net, const Eigen::VectorXd& v,
                const Eigen::VectorXd& theta) {
  if (v.size() != net.n || theta.size() != net.n)
    throw DimensionError("voltage vectors must have length n");
}

// Splits complex d S / d(v, theta) blocks into a real [dP; dQ] matrix.
Eigen::MatrixXd to_real(const Eigen::MatrixXcd& ds_dv,
                        const Eigen::MatrixXcd& ds_dth) {
  const auto r = ds_dv.rows(), c = ds_dv.cols();
  Eigen::MatrixXd j(2 * r, 2 * c);
  j.topLeftCorner(r, c) = ds_dv.real();
  j.topRightCorner(r, c) = ds_dth.real();
  j.bottomLeftCorner(r, c) = ds_dv.imag();
  j.bottomRightCorner(r, c) = ds_dth.imag();
  return j;
}

}  // namespace

Eigen::MatrixXd injection_jacobian(const Network& net, const Eigen::VectorXd& v,
                                   const Eigen::VectorXd& theta) {
  check_dims(net, v, theta);
  const Eigen::VectorXcd volt = complex_voltage(v, theta);
  const Eigen::MatrixXcd yb = Eigen::MatrixXcd(net.yb);
  const Eigen::VectorXcd cur = yb * volt;
  Eigen::VectorXcd vnorm(net.n);
  for (int i = 0; i < net.n; ++i) vnorm[i] = volt[i] / v[i];

  // dS/dv = diag(V) conj(Yb diag(V/|V|)) + conj(diag(I)) diag(V/|V|)
  // dS/dθ = j diag(V) conj(diag(I) - Yb diag(V))
  Eigen::MatrixXcd ds_dv =
      volt.asDiagonal() * (yb * vnorm.asDiagonal()).conjugate();
  ds_dv.diagonal() += cur.conjugate().cwiseProduct(vnorm);
  Eigen::MatrixXcd inner = -(yb * volt.asDiagonal());
  inner.diagonal() += cur;
  Eigen::MatrixXcd ds_dth = Complex(0, 1) * (volt.asDiagonal() * inner.conjugate());
  return to_real(ds_dv, ds_dth);
}

Eigen::MatrixXd line_flow_jacobian(const Network& net, const Eigen::VectorXd& v,
                                   const Eigen::VectorXd& theta, FlowDir dir) {
  check_dims(net, v, theta);
  if (net.m == 0) return Eigen::MatrixXd(0, 2 * net.n);
  const Eigen::VectorXcd volt = complex_voltage(v, theta);
  const Eigen::MatrixXcd y =
      Eigen::MatrixXcd(dir == FlowDir::kFromTo ? net.yft : net.ytf);
  const Eigen::MatrixXcd sel = Eigen::MatrixXd(
      dir == FlowDir::kFromTo ? net.e1 : net.e2).cast<Complex>();
  const Eigen::VectorXcd cur = y * volt;
  const Eigen::VectorXcd vend = sel * volt;
  Eigen::VectorXcd vnorm(net.n);
  for (int i = 0; i < net.n; ++i) vnorm[i] = volt[i] / v[i];
  const Eigen::VectorXcd jv = Complex(0, 1) * volt;

  // S = diag(sel V) conj(Y V)
  Eigen::MatrixXcd ds_dv = cur.conjugate().asDiagonal() * sel * vnorm.asDiagonal();
  ds_dv += vend.asDiagonal() * (y * vnorm.asDiagonal()).conjugate();
  Eigen::MatrixXcd ds_dth = cur.conjugate().asDiagonal() * sel * jv.asDiagonal();
  ds_dth += vend.asDiagonal() * (y * jv.asDiagonal()).conjugate();
  return to_real(ds_dv, ds_dth);
}

Eigen::MatrixXd apparent_flow_jacobian(const Network& net,
                                       const Eigen::VectorXd& v,
                                       const Eigen::VectorXd& theta,
                                       FlowDir dir,
                                       std::vector<int>* regularized) {
  const Eigen::MatrixXd jpq = line_flow_jacobian(net, v, theta, dir);
  const OperatingPoint op = eval_power_flow(net, v, theta);
  const Eigen::VectorXd& p = dir == FlowDir::kFromTo ? op.p_ft : op.p_tf;
  const Eigen::VectorXd& q = dir == FlowDir::kFromTo ? op.q_ft : op.q_tf;
  const Eigen::VectorXd& s = dir == FlowDir::kFromTo ? op.s_ft : op.s_tf;
  const int m = net.m;
  Eigen::MatrixXd js(m, 2 * net.n);
  for (int l = 0; l < m; ++l) {
    double denom = s[l];
    if (denom < kApparentFlowEps) {
      denom = kApparentFlowEps;
      if (regularized) regularized->push_back(l);
    }
    js.row(l) = (p[l] * jpq.row(l) + q[l] * jpq.row(m + l)) / denom;
  }
  return js;
}

Eigen::MatrixXd drop_reference_column(const Eigen::MatrixXd& j,
                                      const Network& net) {
  if (j.cols() != 2 * net.n)
    throw DimensionError("Jacobian must have 2n columns");
  const int col = net.n + net.ref;
  Eigen::MatrixXd out(j.rows(), j.cols() - 1);
  out.leftCols(col) = j.leftCols(col);
  out.rightCols(j.cols() - col - 1) = j.rightCols(j.cols() - col - 1);
  return out;
}

LinearPFModel linearize(const Network& net, const OperatingPoint& point,
                        std::string net_id) {
  if (point.theta.size() != net.n || point.theta[net.ref] != 0.0)
    throw ValidationError("linearization point needs theta[ref] = 0");
  const Eigen::VectorXd& v = point.v;
  const Eigen::VectorXd& th = point.theta;
  Eigen::MatrixXd full(net.output_dim(), 2 * net.n);
  full << injection_jacobian(net, v, th),
      apparent_flow_jacobian(net, v, th, FlowDir::kFromTo),
      apparent_flow_jacobian(net, v, th, FlowDir::kToFrom);
  if (!full.allFinite())
    throw SolverError(SolverError::Kind::kNumerical,
                      "non-finite entry in the power flow Jacobian");
  LinearPFModel lin;
  lin.jstar = drop_reference_column(full, net);
  lin.x0 = pack_input(v, th, net);
  lin.rstar = pack_output(eval_power_flow(net, v, th)) - lin.jstar * lin.x0;
  lin.net_id = std::move(net_id);
  return lin;
}

Eigen::MatrixXd finite_difference_jacobian(const Network& net,
                                           const Eigen::VectorXd& v,
                                           const Eigen::VectorXd& theta,
                                           double step) {
  check_dims(net, v, theta);
  Eigen::MatrixXd j(net.output_dim(), 2 * net.n);
  for (int k = 0; k < 2 * net.n; ++k) {
    Eigen::VectorXd vp = v, vm = v, tp = theta, tm = theta;
    if (k < net.n) {
      vp[k] += step;
      vm[k] -= step;
    } else {
      tp[k - net.n] += step;
      tm[k - net.n] -= step;
    }
    j.col(k) = (pack_output(eval_power_flow(net, vp, tp)) -
                pack_output(eval_power_flow(net, vm, tm))) /
               (2 * step);
  }
  return j;
}

void write_matrix(std::ostream& os, const std::string& name,
                  const Eigen::MatrixXd& a) {
  os << name << " " << a.rows() << " " << a.cols() << "\n";
  char buf[32];
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", a(i, j));
      os << (j ? " " : "") << buf;
    }
    os << "\n";
  }
}

Eigen::MatrixXd read_matrix(std::istream& is, std::string* name) {
  std::string label;
  Eigen::Index rows = 0, cols = 0;
  if (!(is >> label >> rows >> cols) || rows < 0 || cols < 0)
    throw ParseError("bad matrix header", 0);
  Eigen::MatrixXd a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      if (!(is >> a(i, j))) throw ParseError("truncated matrix " + label, 0);
  if (name) *name = label;
  return a;
}

}  // namespace acnn
