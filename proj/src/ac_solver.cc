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


#include "acnn/ac_solver.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include <Eigen/LU>
#include "json.hpp"

#include "acnn/errors.h"
#include "acnn/jacobian.h"
#include "acnn/lp_simplex.h"

namespace acnn {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kFeasible: return "feasible";
    case Verdict::kInfeasible: return "infeasible";
    case Verdict::kNoSolution: return "no_solution";
  }
  return "?";
}

void DispatchSpec::validate(const Network& net) const {
  if (pd.size() != net.n || qd.size() != net.n)
    throw DimensionError("load vectors must have one entry per bus");
  if ((vmin.size() && vmin.size() != net.n) ||
      (vmax.size() && vmax.size() != net.n))
    throw DimensionError("voltage bound overrides must have one entry per bus");
  for (size_t g = 0; g < gens.size(); ++g) {
    const GenDispatch& d = gens[g];
    if (d.bus < 0 || d.bus >= net.n)
      throw ValidationError("unit " + std::to_string(g) + " has no bus");
    if (d.on && (d.p_lo > d.p_hi || d.q_lo > d.q_hi))
      throw ValidationError("unit " + std::to_string(g) + " has empty bounds");
  }
}

OperatingPoint newton_power_flow(const Network& net, const DispatchSpec& spec,
                                 const Eigen::VectorXd& v0,
                                 const Eigen::VectorXd& theta0) {
  spec.validate(net);
  const int n = net.n;
  if (v0.size() != n || theta0.size() != n)
    throw DimensionError("initial point must have one entry per bus");
  std::vector<bool> pv(n, false);
  Eigen::VectorXd p_spec = -spec.pd, q_spec = -spec.qd;
  for (const GenDispatch& g : spec.gens) {
    if (!g.on) continue;
    pv[g.bus] = true;
    p_spec[g.bus] += g.p_set;
  }
  std::vector<int> th_idx, v_idx;  // unknown angles and magnitudes
  for (int b = 0; b < n; ++b) {
    if (b == net.ref) continue;
    th_idx.push_back(b);
    if (!pv[b]) v_idx.push_back(b);
  }
  const int na = static_cast<int>(th_idx.size());
  const int nv = static_cast<int>(v_idx.size());
  Eigen::VectorXd v = v0, th = theta0;
  for (int it = 0;; ++it) {
    OperatingPoint op = eval_power_flow(net, v, th);
    Eigen::VectorXd f(na + nv);
    for (int i = 0; i < na; ++i) f[i] = op.p_inj[th_idx[i]] - p_spec[th_idx[i]];
    for (int i = 0; i < nv; ++i) f[na + i] = op.q_inj[v_idx[i]] - q_spec[v_idx[i]];
    if (!f.allFinite())
      throw SolverError(SolverError::Kind::kNoSolution,
                        "power flow mismatch became non-finite");
    if (f.size() == 0 || f.lpNorm<Eigen::Infinity>() <= 1e-8) return op;
    if (it >= 50)
      throw SolverError(SolverError::Kind::kNoSolution,
                        "power flow did not converge in 50 iterations");
    Eigen::MatrixXd full = injection_jacobian(net, v, th);
    Eigen::MatrixXd j(na + nv, na + nv);
    auto row = [&](int i) { return i < na ? th_idx[i] : n + v_idx[i - na]; };
    auto col = [&](int k) { return k < na ? n + th_idx[k] : v_idx[k - na]; };
    for (int i = 0; i < na + nv; ++i)
      for (int k = 0; k < na + nv; ++k) j(i, k) = full(row(i), col(k));
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(j);
    if (!(lu.rcond() > 1e-14))
      throw SolverError(SolverError::Kind::kSingular,
                        "singular power flow Jacobian");
    Eigen::VectorXd dx = lu.solve(-f);
    for (int i = 0; i < na; ++i) th[th_idx[i]] += dx[i];
    for (int i = 0; i < nv; ++i) v[v_idx[i]] += dx[na + i];
    if ((v.array() <= 0).any())
      throw SolverError(SolverError::Kind::kNoSolution,
                        "voltage magnitude collapsed during power flow");
  }
}

double ac_violation(const Network& net, const OperatingPoint& op,
                    const Eigen::VectorXd& p_net, const Eigen::VectorXd& q_net,
                    const Eigen::VectorXd& vmin, const Eigen::VectorXd& vmax) {
  double worst = 0;
  for (int b = 0; b < net.n; ++b) {
    worst = std::max(worst, std::abs(op.p_inj[b] - p_net[b]));
    worst = std::max(worst, std::abs(op.q_inj[b] - q_net[b]));
    worst = std::max(worst, vmin[b] - op.v[b]);
    worst = std::max(worst, op.v[b] - vmax[b]);
  }
  for (int l = 0; l < net.m; ++l) {
    worst = std::max(worst, op.s_ft[l] - net.smax[l]);
    worst = std::max(worst, op.s_tf[l] - net.smax[l]);
    const double d = op.theta[net.from[l]] - op.theta[net.to[l]];
    worst = std::max(worst, net.angmin[l] - d);
    worst = std::max(worst, d - net.angmax[l]);
  }
  return worst;
}

namespace {

bool limited(double lim) {
  return std::isfinite(lim) && std::abs(lim) < 2 * M_PI - 1e-12;
}

struct PeriodData {
  Eigen::VectorXd pd, qd, vmin, vmax;
  std::vector<std::vector<Term>> p_terms, q_terms;  // per bus
};

// Network-coupled continuous problem: `base` holds every non-network
// variable, row and cost; each period adds an AC network whose injections
// are linear in base variables.
struct SlpProblem {
  const Network* net = nullptr;
  MILPModel base;
  std::vector<PeriodData> periods;
};

struct SlpState {
  std::vector<Eigen::VectorXd> v, theta;
  std::vector<double> z;
};

struct SlpOutcome {
  Verdict verdict = Verdict::kNoSolution;
  SlpState state;
  std::vector<double> violation;
  double cost = 0;
  int iterations = 0;
  std::string diagnostics;
};

double eval_terms(const std::vector<Term>& terms, const std::vector<double>& z) {
  double s = 0;
  for (const Term& t : terms) s += t.coef * z[t.var];
  return s;
}

void net_injections(const PeriodData& pd, const std::vector<double>& z,
                    Eigen::VectorXd& p, Eigen::VectorXd& q) {
  const int n = static_cast<int>(pd.pd.size());
  p.resize(n);
  q.resize(n);
  for (int b = 0; b < n; ++b) {
    p[b] = eval_terms(pd.p_terms[b], z) - pd.pd[b];
    q[b] = eval_terms(pd.q_terms[b], z) - pd.qd[b];
  }
}

// Per-period violations re-evaluated from scratch.
std::vector<double> violations(const SlpProblem& pb, const SlpState& s) {
  std::vector<double> out;
  const double base = pb.base.max_violation(s.z);
  for (size_t t = 0; t < pb.periods.size(); ++t) {
    OperatingPoint op = eval_power_flow(*pb.net, s.v[t], s.theta[t]);
    Eigen::VectorXd p, q;
    net_injections(pb.periods[t], s.z, p, q);
    out.push_back(std::max(base, ac_violation(*pb.net, op, p, q,
                                              pb.periods[t].vmin,
                                              pb.periods[t].vmax)));
  }
  return out;
}

// l1 balance mismatch plus thermal excess over all periods.
double infeasibility(const SlpProblem& pb, const SlpState& s) {
  const Network& net = *pb.net;
  double total = 0;
  for (size_t t = 0; t < pb.periods.size(); ++t) {
    OperatingPoint op = eval_power_flow(net, s.v[t], s.theta[t]);
    Eigen::VectorXd p, q;
    net_injections(pb.periods[t], s.z, p, q);
    total += (op.p_inj - p).lpNorm<1>() + (op.q_inj - q).lpNorm<1>();
    for (int l = 0; l < net.m; ++l) {
      if (!std::isfinite(net.smax[l])) continue;
      total += std::max(0.0, op.s_ft[l] - net.smax[l]);
      total += std::max(0.0, op.s_tf[l] - net.smax[l]);
    }
  }
  return total;
}

double base_cost(const SlpProblem& pb, const std::vector<double>& z) {
  return pb.base.objective_value(z);
}

struct StepResult {
  bool ok = false;
  SlpState next;
  double model_value = 0;  // cost weight * cost + mu * slack sum
  double step = 0;         // largest change in any variable
};

// Builds and solves the trust-region LP around `s`. `z_radius` < 0 leaves
// base variables unrestricted.
StepResult lp_step(const SlpProblem& pb, const SlpState& s, double radius,
                   double z_radius, double cost_weight, double mu,
                   const LpOptions& lp_opt) {
  const Network& net = *pb.net;
  const int n = net.n;
  MILPModel lp = pb.base;
  const int nz = lp.num_variables();
  for (int j = 0; j < nz; ++j) {
    lp.set_objective(j, cost_weight * pb.base.objective()[j]);
    if (z_radius >= 0) {
      Variable& var = lp.variable(j);
      var.lo = std::max(var.lo, s.z[j] - z_radius);
      var.hi = std::min(var.hi, s.z[j] + z_radius);
      if (var.lo > var.hi) var.lo = var.hi = s.z[j];
    }
  }
  struct PeriodVars {
    std::vector<int> dv, dth;
  };
  std::vector<PeriodVars> pv(pb.periods.size());
  std::vector<int> slacks;
  for (size_t t = 0; t < pb.periods.size(); ++t) {
    const PeriodData& pd = pb.periods[t];
    const Eigen::VectorXd& v = s.v[t];
    const Eigen::VectorXd& th = s.theta[t];
    const std::string ts = "_t" + std::to_string(t);
    PeriodVars& vars = pv[t];
    vars.dv.resize(n);
    vars.dth.assign(n, -1);
    for (int b = 0; b < n; ++b) {
      double lo = std::max(-radius, pd.vmin[b] - v[b]);
      double hi = std::min(radius, pd.vmax[b] - v[b]);
      if (lo > hi) lo = hi = std::clamp(0.0, pd.vmin[b] - v[b], pd.vmax[b] - v[b]);
      vars.dv[b] = lp.add_variable("dv" + std::to_string(b) + ts, lo, hi);
      if (b != net.ref)
        vars.dth[b] = lp.add_variable("dth" + std::to_string(b) + ts, -radius,
                                      radius);
    }
    OperatingPoint op = eval_power_flow(net, v, th);
    Eigen::MatrixXd jpq = injection_jacobian(net, v, th);
    Eigen::VectorXd p, q;
    net_injections(pd, s.z, p, q);
    auto grad_terms = [&](const Eigen::MatrixXd& j, int r) {
      std::vector<Term> terms;
      for (int b = 0; b < n; ++b) {
        if (j(r, b) != 0) terms.push_back({vars.dv[b], j(r, b)});
        if (b != net.ref && j(r, n + b) != 0)
          terms.push_back({vars.dth[b], j(r, n + b)});
      }
      return terms;
    };
    for (int b = 0; b < n; ++b) {
      for (int kind = 0; kind < 2; ++kind) {
        const bool is_p = kind == 0;
        std::vector<Term> terms = grad_terms(jpq, is_p ? b : n + b);
        for (const Term& g : is_p ? pd.p_terms[b] : pd.q_terms[b])
          terms.push_back({g.var, -g.coef});
        const std::string nm = (is_p ? "p" : "q") + std::to_string(b) + ts;
        int sp = lp.add_variable("sp_" + nm, 0, 1e3);
        int sn = lp.add_variable("sn_" + nm, 0, 1e3);
        slacks.push_back(sp);
        slacks.push_back(sn);
        terms.push_back({sp, 1.0});
        terms.push_back({sn, -1.0});
        const double own = is_p ? op.p_inj[b] : op.q_inj[b];
        const double load = is_p ? pd.pd[b] : pd.qd[b];
        lp.add_constraint("bal_" + nm, terms, Sense::kEq, -load - own);
      }
    }
    for (FlowDir dir : {FlowDir::kFromTo, FlowDir::kToFrom}) {
      Eigen::MatrixXd js = apparent_flow_jacobian(net, v, th, dir);
      const Eigen::VectorXd& sl = dir == FlowDir::kFromTo ? op.s_ft : op.s_tf;
      for (int l = 0; l < net.m; ++l) {
        if (!std::isfinite(net.smax[l])) continue;
        std::vector<Term> terms = grad_terms(js, l);
        const std::string nm = (dir == FlowDir::kFromTo ? "sft" : "stf") +
                               std::to_string(l) + ts;
        int ss = lp.add_variable("ss_" + nm, 0, 1e3);
        slacks.push_back(ss);
        terms.push_back({ss, -1.0});
        lp.add_constraint("th_" + nm, terms, Sense::kLe, net.smax[l] - sl[l]);
      }
    }
    for (int l = 0; l < net.m; ++l) {
      std::vector<Term> terms;
      if (vars.dth[net.from[l]] >= 0) terms.push_back({vars.dth[net.from[l]], 1.0});
      if (vars.dth[net.to[l]] >= 0) terms.push_back({vars.dth[net.to[l]], -1.0});
      if (terms.empty()) continue;
      const double d = th[net.from[l]] - th[net.to[l]];
      const std::string nm = std::to_string(l) + ts;
      if (limited(net.angmin[l]))
        lp.add_constraint("amin" + nm, terms, Sense::kGe, net.angmin[l] - d);
      if (limited(net.angmax[l]))
        lp.add_constraint("amax" + nm, terms, Sense::kLe, net.angmax[l] - d);
    }
  }
  for (int j : slacks) lp.set_objective(j, mu);

  LpSolution sol = solve_lp(lp, lp_opt);
  StepResult r;
  if (sol.status != LpStatus::kOptimal) return r;
  r.ok = true;
  r.next = s;
  r.next.z.assign(sol.x.begin(), sol.x.begin() + nz);
  for (int j = 0; j < nz; ++j)
    r.step = std::max(r.step, std::abs(r.next.z[j] - s.z[j]));
  for (size_t t = 0; t < pb.periods.size(); ++t) {
    for (int b = 0; b < n; ++b) {
      const double dv = sol.x[pv[t].dv[b]];
      r.next.v[t][b] += dv;
      r.step = std::max(r.step, std::abs(dv));
      if (pv[t].dth[b] >= 0) {
        const double dth = sol.x[pv[t].dth[b]];
        r.next.theta[t][b] += dth;
        r.step = std::max(r.step, std::abs(dth));
      }
    }
  }
  double slack_sum = 0;
  for (int j : slacks) slack_sum += sol.x[j];
  r.model_value = cost_weight * base_cost(pb, r.next.z) + mu * slack_sum;
  return r;
}

// Initial angles from a lossless DC solve of the base-point injections.
Eigen::VectorXd dc_angles(const Network& net, const Eigen::VectorXd& p) {
  const int n = net.n;
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
  for (int l = 0; l < net.m; ++l) {
    const double x = std::abs(net.reactance[l]) > 1e-9 ? net.reactance[l] : 1e-9;
    const int f = net.from[l], t = net.to[l];
    b(f, f) += 1 / x;
    b(t, t) += 1 / x;
    b(f, t) -= 1 / x;
    b(t, f) -= 1 / x;
  }
  std::vector<int> keep;
  for (int i = 0; i < n; ++i)
    if (i != net.ref) keep.push_back(i);
  Eigen::MatrixXd br(keep.size(), keep.size());
  Eigen::VectorXd pr(keep.size());
  for (size_t i = 0; i < keep.size(); ++i) {
    pr[i] = p[keep[i]];
    for (size_t k = 0; k < keep.size(); ++k) br(i, k) = b(keep[i], keep[k]);
  }
  Eigen::VectorXd th = Eigen::VectorXd::Zero(n);
  if (keep.empty()) return th;
  Eigen::VectorXd sol = br.fullPivLu().solve(pr);
  for (size_t i = 0; i < keep.size(); ++i)
    th[keep[i]] = std::clamp(sol[i], -M_PI / 2, M_PI / 2);
  return th;
}

SlpOutcome run_slp(const SlpProblem& pb, bool min_cost,
                   const SlpOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  auto out_of_time = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
               .count() > opt.time_budget_s;
  };
  SlpOutcome out;
  const Network& net = *pb.net;
  LpOptions lp_opt;

  LpSolution start = solve_lp(pb.base, lp_opt);
  if (start.status != LpStatus::kOptimal) {
    out.verdict = start.status == LpStatus::kInfeasible ? Verdict::kInfeasible
                                                        : Verdict::kNoSolution;
    out.diagnostics = "dispatch constraints: " + to_string(start.status);
    return out;
  }
  // Series resistances and shunt conductances only consume active power,
  // so a period whose online capacity is below its demand has no solution.
  if ((net.resistance.array() >= 0).all() && (net.gsh.array() >= 0).all()) {
    for (size_t t = 0; t < pb.periods.size(); ++t) {
      const PeriodData& pd = pb.periods[t];
      MILPModel cap = pb.base;
      for (int j = 0; j < cap.num_variables(); ++j) cap.set_objective(j, 0);
      cap.add_objective_constant(-cap.objective_constant());
      for (const auto& terms : pd.p_terms)
        for (const Term& tm : terms) cap.add_objective(tm.var, -tm.coef);
      LpSolution most = solve_lp(cap, lp_opt);
      if (most.status != LpStatus::kOptimal) continue;
      const double shortfall = pd.pd.sum() + most.objective;
      if (shortfall > opt.tol_feas) {
        out.verdict = Verdict::kInfeasible;
        out.diagnostics = "period " + std::to_string(t) +
                          ": active demand exceeds online capacity by " +
                          std::to_string(shortfall) + " p.u.";
        return out;
      }
    }
  }

  SlpState s;
  s.z = start.x;
  for (const PeriodData& pd : pb.periods) {
    Eigen::VectorXd p, q;
    net_injections(pd, s.z, p, q);
    Eigen::VectorXd v = Eigen::VectorXd::Ones(net.n).cwiseMax(pd.vmin).cwiseMin(pd.vmax);
    s.v.push_back(v);
    s.theta.push_back(dc_angles(net, p));
  }

  double max_slope = 0;
  for (double c : pb.base.objective()) max_slope = std::max(max_slope, std::abs(c));
  const double mu = std::max(1e4, 100 * max_slope);
  const double weight = min_cost ? 1.0 : 0.0;
  auto merit = [&](const SlpState& st) {
    return weight * base_cost(pb, st.z) + mu * infeasibility(pb, st);
  };

  double radius = opt.initial_radius;
  double phi = merit(s);
  bool converged = false, timed_out = false;
  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    if (out_of_time()) {
      timed_out = true;
      break;
    }
    StepResult r = lp_step(pb, s, radius, -1, weight, mu, lp_opt);
    if (!r.ok) {
      radius *= opt.shrink;
      if (radius < 1e-9) break;
      continue;
    }
    const double pred = phi - r.model_value;
    if (pred <= 1e-12 * (1 + std::abs(phi)) || r.step <= opt.step_tol) {
      converged = true;
      break;
    }
    double phi_new = merit(r.next);
    if (phi - phi_new < 0.75 * pred) {
      // Second-order correction: one balance-restoring step from the trial
      // point, sized to its mismatch.
      std::vector<double> tv = violations(pb, r.next);
      const double mis = *std::max_element(tv.begin(), tv.end());
      const double box = std::min(radius, std::max(1e-12, 20 * mis));
      StepResult c = lp_step(pb, r.next, box, box, 0.0, 1.0, lp_opt);
      if (c.ok) {
        const double phi_c = merit(c.next);
        if (phi_c < phi_new) {
          c.step = std::max(c.step, r.step);
          r.next = std::move(c.next);
          phi_new = phi_c;
        }
      }
    }
    const double ratio = (phi - phi_new) / pred;
    if (ratio >= 0.1) {
      s = std::move(r.next);
      phi = phi_new;
      if (ratio < 0.25) radius *= opt.shrink;
      else if (ratio > 0.75 && r.step >= 0.99 * radius)
        radius = std::min(2 * radius, opt.max_radius);
    } else {
      radius *= opt.shrink;
    }
    if (radius < 1e-9) {
      converged = true;
      break;
    }
  }
  out.iterations = it;

  // Drive the remaining balance error down with a feasibility-only
  // Newton-like LP on a small box around the current point.
  std::vector<double> viol = violations(pb, s);
  double worst = *std::max_element(viol.begin(), viol.end());
  for (int k = 0; k < opt.polish_iterations && worst > 1e-10; ++k) {
    if (out_of_time()) {
      timed_out = true;
      break;
    }
    double box = std::min(1e-2, std::max(1e-12, 20 * worst));
    bool improved = false;
    for (int tries = 0; tries < 4 && !improved; ++tries, box *= 0.25) {
      StepResult r = lp_step(pb, s, box, box, 0.0, 1.0, lp_opt);
      if (!r.ok) continue;
      std::vector<double> nv = violations(pb, r.next);
      double nw = *std::max_element(nv.begin(), nv.end());
      if (nw < worst) {
        s = std::move(r.next);
        viol = nv;
        worst = nw;
        improved = true;
      }
    }
    ++out.iterations;
    if (!improved) break;
  }

  out.state = s;
  out.violation = viol;
  out.cost = base_cost(pb, s.z);
  if (worst <= opt.tol_feas) {
    out.verdict = Verdict::kFeasible;
  } else if (converged && !timed_out) {
    out.verdict = Verdict::kInfeasible;
    out.diagnostics = "converged with residual violation " + std::to_string(worst);
  } else {
    out.verdict = Verdict::kNoSolution;
    out.diagnostics = timed_out ? "time budget exhausted"
                                : "iteration budget exhausted";
  }
  return out;
}

}  // namespace

AcopfResult slp_acopf(const Network& net, const DispatchSpec& spec,
                      AcObjective objective, const SlpOptions& options) {
  spec.validate(net);
  SlpProblem pb;
  pb.net = &net;
  pb.base = MILPModel("dispatch");
  const int ng = static_cast<int>(spec.gens.size());
  std::vector<int> pvar(ng), qvar(ng);
  PeriodData pd;
  pd.pd = spec.pd;
  pd.qd = spec.qd;
  pd.vmin = spec.vmin.size() ? spec.vmin : net.vmin;
  pd.vmax = spec.vmax.size() ? spec.vmax : net.vmax;
  pd.p_terms.resize(net.n);
  pd.q_terms.resize(net.n);
  for (int g = 0; g < ng; ++g) {
    const GenDispatch& d = spec.gens[g];
    const std::string gs = std::to_string(g);
    pvar[g] = pb.base.add_variable("p" + gs, d.on ? d.p_lo : 0, d.on ? d.p_hi : 0);
    qvar[g] = pb.base.add_variable("q" + gs, d.on ? d.q_lo : 0, d.on ? d.q_hi : 0);
    pb.base.add_objective(pvar[g], d.cost);
    pd.p_terms[d.bus].push_back({pvar[g], 1.0});
    pd.q_terms[d.bus].push_back({qvar[g], 1.0});
  }
  pb.periods.push_back(std::move(pd));
  SlpOutcome o = run_slp(pb, objective == AcObjective::kMinCost, options);
  AcopfResult r;
  r.verdict = o.verdict;
  r.iterations = o.iterations;
  r.diagnostics = o.diagnostics;
  if (o.state.z.empty()) return r;
  r.objective = o.cost;
  r.max_violation = o.violation.empty() ? kInfinity : o.violation[0];
  r.point = eval_power_flow(net, o.state.v[0], o.state.theta[0]);
  r.p.resize(ng);
  r.q.resize(ng);
  for (int g = 0; g < ng; ++g) {
    r.p[g] = o.state.z[pvar[g]];
    r.q[g] = o.state.z[qvar[g]];
  }
  return r;
}

FeasibilityReport mtp_acopf_check(const Network& net, const UCInstance& inst,
                                  const UCSchedule& schedule,
                                  const SlpOptions& options) {
  check_schedule_logic(inst, schedule);
  if (inst.num_buses() != net.n)
    throw DimensionError("instance bus count differs from network");
  SlpProblem pb;
  pb.net = &net;
  pb.base = MILPModel("mtp");
  CoreUc core = build_core_uc(pb.base, inst);
  auto fix = [&](int j, int value) {
    if (j < 0) return;
    Variable& v = pb.base.variable(j);
    v.kind = VarKind::kContinuous;
    v.lo = v.hi = value;
  };
  for (int g = 0; g < core.num_gens; ++g)
    for (int t = 0; t < core.horizon; ++t) {
      fix(core.y[g][t], schedule.y(g, t));
      fix(core.u[g][t], schedule.u(g, t));
      fix(core.w[g][t], schedule.w(g, t));
    }
  for (int t = 0; t < inst.horizon; ++t) {
    PeriodData pd;
    pd.pd = inst.pd.col(t);
    pd.qd = inst.qd.col(t);
    pd.vmin = net.vmin;
    pd.vmax = net.vmax;
    for (int b = 0; b < net.n; ++b) {
      pd.p_terms.push_back(core.p_terms(inst, b, t));
      pd.q_terms.push_back(core.q_terms(inst, b, t));
    }
    pb.periods.push_back(std::move(pd));
  }
  SlpOutcome o = run_slp(pb, true, options);
  FeasibilityReport r;
  r.verdict = o.verdict;
  r.iterations = o.iterations;
  r.diagnostics = o.diagnostics;
  r.violation = o.violation;
  if (o.state.z.empty()) return r;
  r.objective = o.cost;
  const int ng = core.num_gens;
  r.p = Eigen::MatrixXd::Zero(ng, inst.horizon);
  r.q = r.p;
  for (int g = 0; g < ng; ++g)
    for (int t = 0; t < inst.horizon; ++t) {
      r.q(g, t) = o.state.z[core.q[g][t]];
      if (core.y[g][t] >= 0)
        r.p(g, t) = inst.gens[g].pmin * o.state.z[core.y[g][t]] +
                    o.state.z[core.pdelta[g][t]];
    }
  if (r.verdict == Verdict::kFeasible)
    for (int t = 0; t < inst.horizon; ++t)
      r.points.push_back(eval_power_flow(net, o.state.v[t], o.state.theta[t]));
  return r;
}

std::string report_to_json(const FeasibilityReport& r) {
  nlohmann::ordered_json j;
  j["verdict"] = to_string(r.verdict);
  j["objective"] = r.objective;
  j["iterations"] = r.iterations;
  j["violation"] = r.violation;
  j["diagnostics"] = r.diagnostics;
  nlohmann::ordered_json periods = nlohmann::ordered_json::array();
  for (const OperatingPoint& op : r.points) {
    nlohmann::ordered_json p;
    p["v"] = std::vector<double>(op.v.data(), op.v.data() + op.v.size());
    p["theta"] = std::vector<double>(op.theta.data(), op.theta.data() + op.theta.size());
    p["s_ft"] = std::vector<double>(op.s_ft.data(), op.s_ft.data() + op.s_ft.size());
    p["s_tf"] = std::vector<double>(op.s_tf.data(), op.s_tf.data() + op.s_tf.size());
    periods.push_back(p);
  }
  j["periods"] = periods;
  return j.dump(2);
}

}  // namespace acnn
