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


#include "acnn/milp_encode.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <queue>

#include "acnn/errors.h"
#include "acnn/lp_simplex.h"

namespace acnn {

namespace {

constexpr double kLooseBound = 1e3;

double finite_or(double v, double fallback) {
  return std::isfinite(v) ? v : fallback;
}

bool limited(double lim) {
  return std::isfinite(lim) && std::abs(lim) < 2 * M_PI - 1e-12;
}

// Adds the input and output variables of one copy.
void add_io(MILPModel& model, const BoundBox& box, int in, int out,
            const std::string& prefix, int period, NnFragment& f) {
  if (box.x_lo.size() != in || box.y_lo.size() != out)
    throw DimensionError("bound box does not match the model dimensions");
  for (int i = 0; i < in; ++i)
    f.x.push_back(model.add_variable(prefix + "x" + std::to_string(i),
                                     box.x_lo[i], box.x_hi[i],
                                     VarKind::kContinuous, {"x", i, period}));
  for (int k = 0; k < out; ++k)
    f.y.push_back(model.add_variable(
        prefix + "y" + std::to_string(k), finite_or(box.y_lo[k], -kLooseBound),
        finite_or(box.y_hi[k], kLooseBound), VarKind::kContinuous,
        {"ypw", k, period}));
}

}  // namespace

void BoundBox::validate() const {
  if (x_lo.size() != x_hi.size() || y_lo.size() != y_hi.size())
    throw DimensionError("bound box sides differ in length");
  for (Eigen::Index i = 0; i < x_lo.size(); ++i)
    if (!(x_lo[i] <= x_hi[i]))
      throw ValidationError("empty input interval at " + std::to_string(i));
  for (Eigen::Index k = 0; k < y_lo.size(); ++k)
    if (!(y_lo[k] <= y_hi[k]))
      throw ValidationError("empty output interval at " + std::to_string(k));
  for (const AnglePair& a : angle_pairs)
    if (!(a.lo <= a.hi)) throw ValidationError("empty angle-difference set");
}

bool BoundBox::contains(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                        double tol) const {
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (x[i] < x_lo[i] - tol || x[i] > x_hi[i] + tol) return false;
  for (const AnglePair& a : angle_pairs) {
    double d = (a.from >= 0 ? x[a.from] : 0.0) - (a.to >= 0 ? x[a.to] : 0.0);
    if (d < a.lo - tol || d > a.hi + tol) return false;
  }
  for (Eigen::Index k = 0; k < y.size(); ++k)
    if (y[k] < y_lo[k] - tol || y[k] > y_hi[k] + tol) return false;
  return true;
}

BoundBox make_uc_bound_box(const Network& net, const UCInstance& inst,
                           double load_margin) {
  if (inst.num_buses() != net.n)
    throw DimensionError("instance bus count differs from network");
  const int n = net.n, m = net.m;
  InputLayout in{n, net.ref};
  OutputLayout out{n, m};
  BoundBox box;
  box.x_lo.resize(2 * n - 1);
  box.x_hi.resize(2 * n - 1);

  // Angle reach from the reference bus along lines, capped at pi.
  std::vector<double> reach(n, kInfinity);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  reach[net.ref] = 0;
  pq.push({0.0, net.ref});
  while (!pq.empty()) {
    auto [d, b] = pq.top();
    pq.pop();
    if (d > reach[b]) continue;
    auto relax = [&](int l, int other) {
      double wgt = std::max(std::abs(net.angmin[l]), std::abs(net.angmax[l]));
      if (!limited(net.angmin[l]) && !limited(net.angmax[l])) wgt = M_PI;
      if (d + wgt < reach[other]) {
        reach[other] = d + wgt;
        pq.push({reach[other], other});
      }
    };
    for (int l : net.lines_from[b]) relax(l, net.to[l]);
    for (int l : net.lines_to[b]) relax(l, net.from[l]);
  }
  for (int b = 0; b < n; ++b) {
    box.x_lo[in.v(b)] = net.vmin[b];
    box.x_hi[in.v(b)] = net.vmax[b];
    if (b == net.ref) continue;
    const double r = std::min(reach[b], M_PI);
    box.x_lo[in.theta(b)] = -r;
    box.x_hi[in.theta(b)] = r;
  }
  for (int l = 0; l < m; ++l) {
    if (!limited(net.angmin[l]) && !limited(net.angmax[l])) continue;
    AnglePair a;
    a.from = in.theta(net.from[l]);
    a.to = in.theta(net.to[l]);
    a.lo = limited(net.angmin[l]) ? net.angmin[l] : -2 * M_PI;
    a.hi = limited(net.angmax[l]) ? net.angmax[l] : 2 * M_PI;
    box.angle_pairs.push_back(a);
  }

  box.y_lo.resize(2 * n + 2 * m);
  box.y_hi.resize(2 * n + 2 * m);
  for (int b = 0; b < n; ++b) {
    double pgen = 0, qlo = 0, qhi = 0;
    for (const UcGenerator& g : inst.gens) {
      if (g.bus != b) continue;
      pgen += g.pmax;
      qlo += std::min(g.qmin, 0.0);
      qhi += std::max(g.qmax, 0.0);
    }
    double pd_lo = kInfinity, pd_hi = -kInfinity;
    double qd_lo = kInfinity, qd_hi = -kInfinity;
    for (int t = 0; t < inst.horizon; ++t) {
      for (double f : {1 - load_margin, 1 + load_margin}) {
        pd_lo = std::min(pd_lo, f * inst.pd(b, t));
        pd_hi = std::max(pd_hi, f * inst.pd(b, t));
        qd_lo = std::min(qd_lo, f * inst.qd(b, t));
        qd_hi = std::max(qd_hi, f * inst.qd(b, t));
      }
    }
    if (inst.horizon == 0) pd_lo = pd_hi = qd_lo = qd_hi = 0;
    box.y_lo[out.p(b)] = -pd_hi;
    box.y_hi[out.p(b)] = pgen - pd_lo;
    box.y_lo[out.q(b)] = qlo - qd_hi;
    box.y_hi[out.q(b)] = qhi - qd_lo;
  }
  for (int l = 0; l < m; ++l) {
    box.y_lo[out.sft(l)] = -kInfinity;
    box.y_hi[out.sft(l)] = net.smax[l];
    box.y_lo[out.stf(l)] = -kInfinity;
    box.y_hi[out.stf(l)] = net.smax[l];
  }
  box.validate();
  return box;
}

NnFragment encode_relu_network(MILPModel& model, const CompactPWLModel& nn,
                               const BigMBounds& bounds, const BoundBox& box,
                               const std::string& prefix, int period,
                               int beta_priority) {
  const int in = nn.input_dim(), out = nn.output_dim(), rho = nn.rho();
  if (bounds.size() != rho)
    throw DimensionError("big-M bounds do not match the hidden width");
  bounds.validate();
  NnFragment f;
  add_io(model, box, in, out, prefix, period, f);
  f.zhat.assign(rho, -1);
  f.z.assign(rho, -1);
  f.beta.assign(rho, -1);
  for (int i = 0; i < rho; ++i) {
    const ReluStatus st = bounds.status[i];
    if (st == ReluStatus::kFixedOff) continue;
    const std::string is = std::to_string(i);
    const double lo = bounds.mmin[i], hi = bounds.mmax[i];
    f.zhat[i] = model.add_variable(prefix + "zhat" + is, lo, hi,
                                   VarKind::kContinuous, {"zhat", i, period});
    std::vector<Term> terms{{f.zhat[i], 1.0}};
    for (int j = 0; j < in; ++j)
      if (nn.w1(j, i) != 0) terms.push_back({f.x[j], -nn.w1(j, i)});
    model.add_constraint(prefix + "pre" + is, terms, Sense::kEq, nn.b[i]);
    if (st == ReluStatus::kFixedOn) {
      f.z[i] = f.zhat[i];
      continue;
    }
    f.z[i] = model.add_variable(prefix + "z" + is, 0, std::max(hi, 0.0),
                                VarKind::kContinuous, {"z", i, period});
    f.beta[i] = model.add_binary(prefix + "beta" + is, {"beta", i, period},
                                 beta_priority);
    const int z = f.z[i], zh = f.zhat[i], bt = f.beta[i];
    model.add_constraint(prefix + "relu_lo" + is, {{z, 1.0}, {zh, -1.0}},
                         Sense::kGe, 0);
    model.add_constraint(prefix + "relu_on" + is,
                         {{z, 1.0}, {zh, -1.0}, {bt, -lo}}, Sense::kLe, -lo);
    model.add_constraint(prefix + "relu_off" + is, {{z, 1.0}, {bt, -hi}},
                         Sense::kLe, 0);
  }
  for (int k = 0; k < out; ++k) {
    std::vector<Term> terms{{f.y[k], 1.0}};
    for (int j = 0; j < in; ++j) {
      const double a = nn.linear.jstar(k, j);
      if (a != 0) terms.push_back({f.x[j], -a});
    }
    for (int i = 0; i < rho; ++i)
      if (f.z[i] >= 0 && nn.w2(k, i) != 0)
        terms.push_back({f.z[i], -nn.w2(k, i)});
    model.add_constraint(prefix + "out" + std::to_string(k), terms,
                         Sense::kEq, nn.linear.rstar[k]);
  }
  return f;
}

NnFragment encode_linear_model(MILPModel& model, const LinearPFModel& lin,
                               const BoundBox& box, const std::string& prefix,
                               int period) {
  const int in = static_cast<int>(lin.jstar.cols());
  const int out = static_cast<int>(lin.jstar.rows());
  NnFragment f;
  add_io(model, box, in, out, prefix, period, f);
  for (int k = 0; k < out; ++k) {
    std::vector<Term> terms{{f.y[k], 1.0}};
    for (int j = 0; j < in; ++j)
      if (lin.jstar(k, j) != 0) terms.push_back({f.x[j], -lin.jstar(k, j)});
    model.add_constraint(prefix + "out" + std::to_string(k), terms,
                         Sense::kEq, lin.rstar[k]);
  }
  return f;
}

void add_angle_rows(MILPModel& model, const NnFragment& frag,
                    const BoundBox& box, const std::string& prefix) {
  int k = 0;
  for (const AnglePair& a : box.angle_pairs) {
    std::vector<Term> terms;
    if (a.from >= 0) terms.push_back({frag.x[a.from], 1.0});
    if (a.to >= 0) terms.push_back({frag.x[a.to], -1.0});
    const std::string ks = std::to_string(k++);
    if (terms.empty()) continue;
    model.add_constraint(prefix + "angmin" + ks, terms, Sense::kGe, a.lo);
    model.add_constraint(prefix + "angmax" + ks, terms, Sense::kLe, a.hi);
  }
}

BigMBounds interval_bounds(const CompactPWLModel& nn, const BoundBox& box) {
  if (box.x_lo.size() != nn.input_dim())
    throw DimensionError("bound box does not match the model input");
  const int rho = nn.rho();
  BigMBounds out;
  out.mmin.resize(rho);
  out.mmax.resize(rho);
  for (int i = 0; i < rho; ++i) {
    double lo = nn.b[i], hi = nn.b[i];
    for (int j = 0; j < nn.input_dim(); ++j) {
      const double a = nn.w1(j, i) * box.x_lo[j];
      const double c = nn.w1(j, i) * box.x_hi[j];
      lo += std::min(a, c);
      hi += std::max(a, c);
    }
    out.mmin[i] = lo;
    out.mmax[i] = hi;
  }
  out.status.assign(rho, ReluStatus::kFree);
  out.provenance.assign(rho, BoundProvenance::kInterval);
  return out;
}

std::string to_string(BoundMode m) {
  switch (m) {
    case BoundMode::kInterval: return "interval";
    case BoundMode::kLp: return "lp";
    case BoundMode::kMilp: return "milp";
  }
  return "?";
}

BoundMode parse_bound_mode(const std::string& s) {
  if (s == "interval") return BoundMode::kInterval;
  if (s == "lp") return BoundMode::kLp;
  if (s == "milp") return BoundMode::kMilp;
  throw ValidationError("unknown bound mode '" + s + "'");
}

BigMBounds tighten_bounds(const CompactPWLModel& nn, const BoundBox& box,
                          BoundMode mode, const BigMBounds& start,
                          const TightenOptions& options) {
  start.validate();
  if (start.size() != nn.rho())
    throw DimensionError("starting bounds do not match the hidden width");
  BigMBounds cur = start;
  if (mode == BoundMode::kInterval) return cur;
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  };
  const BoundProvenance tag =
      mode == BoundMode::kLp ? BoundProvenance::kLp : BoundProvenance::kMilp;

  // Optimum of +/- zhat_i, or nullopt-like NaN when the solve failed.
  auto solve_one = [&](int i, double sign) {
    MILPModel model("bound");
    NnFragment f = encode_relu_network(model, nn, cur, box, "", -1);
    add_angle_rows(model, f, box, "");
    const int zh = f.zhat[i];
    if (zh < 0) return std::nan("");
    model.add_objective(zh, sign);
    if (mode == BoundMode::kLp) {
      LpSolution s = solve_lp(model);
      return s.status == LpStatus::kOptimal ? sign * s.objective : std::nan("");
    }
    MilpOptions mo = options.milp;
    mo.time_budget_s =
        std::min(mo.time_budget_s, std::max(0.0, options.time_budget_s - elapsed()));
    MilpSolution s = solve_milp(model, mo);
    if (s.status == MilpStatus::kInfeasible || s.status == MilpStatus::kUnbounded ||
        !std::isfinite(s.bound))
      return std::nan("");
    return sign * s.bound;
  };

  for (int i = 0; i < cur.size(); ++i) {
    if (cur.status[i] != ReluStatus::kFree) continue;
    if (elapsed() >= options.time_budget_s) break;
    const double lo = solve_one(i, 1.0);
    bool solved = std::isfinite(lo);
    if (solved) {
      const double v = lo - 1e-7 * (1 + std::abs(lo));
      cur.mmin[i] = std::max(cur.mmin[i], v);
    }
    if (elapsed() >= options.time_budget_s) break;
    const double hi = solve_one(i, -1.0);
    if (std::isfinite(hi)) {
      const double v = hi + 1e-7 * (1 + std::abs(hi));
      cur.mmax[i] = std::min(cur.mmax[i], v);
    } else {
      solved = false;
    }
    if (cur.mmin[i] > cur.mmax[i]) {
      // Round-off on a degenerate interval; keep the prior bounds.
      cur.mmin[i] = start.mmin[i];
      cur.mmax[i] = start.mmax[i];
      solved = false;
    }
    if (solved) cur.provenance[i] = tag;
  }
  return cur;
}

BigMBounds prune(const BigMBounds& bounds) {
  BigMBounds out = bounds;
  for (int i = 0; i < out.size(); ++i) {
    if (out.mmax[i] <= 0) out.status[i] = ReluStatus::kFixedOff;
    else if (out.mmin[i] > 0) out.status[i] = ReluStatus::kFixedOn;
    else out.status[i] = ReluStatus::kFree;
  }
  return out;
}

}  // namespace acnn
