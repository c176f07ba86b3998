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


#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace acnn::testing {

namespace {

constexpr double kEps = 1e-9;

// min c'z, A z = b, z >= 0 with b >= 0.
struct StandardForm {
  Eigen::MatrixXd a;
  Eigen::VectorXd b, c;
};

enum class Phase2 { kOptimal, kInfeasible, kUnbounded };

Phase2 tableau_simplex(const StandardForm& sf, Eigen::VectorXd& z) {
  const int m = static_cast<int>(sf.a.rows());
  const int n = static_cast<int>(sf.a.cols());
  // Columns: n structural, m artificial, then rhs.
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
  t.topLeftCorner(m, n) = sf.a;
  t.block(0, n, m, m).setIdentity();
  t.topRightCorner(m, 1) = sf.b;
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  auto pivot = [&](int r, int col) {
    t.row(r) /= t(r, col);
    for (int i = 0; i <= m; ++i)
      if (i != r && t(i, col) != 0) t.row(i) -= t(i, col) * t.row(r);
    basis[r] = col;
  };
  auto run = [&](int ncols) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < ncols; ++j)
        if (t(m, j) < -kEps) { enter = j; break; }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        if (t(i, enter) <= kEps) continue;
        double ratio = t(i, n + m) / t(i, enter);
        if (ratio < best - kEps ||
            (std::abs(ratio - best) <= kEps && basis[i] < basis[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  };

  // Phase 1: minimize the artificial sum.
  t.row(m).setZero();
  for (int i = 0; i < m; ++i) t.row(m) -= t.row(i);
  for (int i = 0; i < m; ++i) t(m, n + i) = 0;
  run(n + m);
  if (-t(m, n + m) > 1e-7) return Phase2::kInfeasible;
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) continue;
    for (int j = 0; j < n; ++j)
      if (std::abs(t(i, j)) > 1e-9) { pivot(i, j); break; }
  }

  // Phase 2 on structural columns; artificials are barred from entering.
  t.row(m).setZero();
  t.row(m).head(n) = sf.c.transpose();
  for (int i = 0; i < m; ++i)
    if (basis[i] < n && sf.c(basis[i]) != 0)
      t.row(m) -= sf.c(basis[i]) * t.row(i);
  if (!run(n)) return Phase2::kUnbounded;
  z = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) z(basis[i]) = t(i, n + m);
  return Phase2::kOptimal;
}

}  // namespace

OracleResult dense_lp(const MILPModel& model) {
  const int nv = model.num_variables();
  // Each variable maps to x = offset + sum(sign * z_k).
  struct Map {
    double offset = 0;
    int pos = -1, neg = -1;  // z indices with +1 / -1 coefficient
  };
  std::vector<Map> map(nv);
  int nz = 0;
  std::vector<std::pair<int, double>> upper;  // (z index, bound) rows z <= u
  for (int j = 0; j < nv; ++j) {
    const Variable& v = model.variable(j);
    if (std::isfinite(v.lo)) {
      map[j].offset = v.lo;
      map[j].pos = nz++;
      if (std::isfinite(v.hi)) upper.push_back({map[j].pos, v.hi - v.lo});
    } else if (std::isfinite(v.hi)) {
      map[j].offset = v.hi;
      map[j].neg = nz++;
    } else {
      map[j].pos = nz++;
      map[j].neg = nz++;
    }
  }
  const int nrows = model.num_constraints() + static_cast<int>(upper.size());
  int nslack = static_cast<int>(upper.size());
  for (const Constraint& c : model.constraints())
    if (c.sense != Sense::kEq) ++nslack;

  StandardForm sf;
  sf.a = Eigen::MatrixXd::Zero(nrows, nz + nslack);
  sf.b = Eigen::VectorXd::Zero(nrows);
  sf.c = Eigen::VectorXd::Zero(nz + nslack);
  double constant = model.objective_constant();
  for (int j = 0; j < nv; ++j) {
    const double cj = model.objective()[j];
    constant += cj * map[j].offset;
    if (map[j].pos >= 0) sf.c(map[j].pos) += cj;
    if (map[j].neg >= 0) sf.c(map[j].neg) -= cj;
  }
  int row = 0, slack = nz;
  for (const Constraint& c : model.constraints()) {
    double rhs = c.rhs;
    for (const Term& t : c.terms) {
      rhs -= t.coef * map[t.var].offset;
      if (map[t.var].pos >= 0) sf.a(row, map[t.var].pos) += t.coef;
      if (map[t.var].neg >= 0) sf.a(row, map[t.var].neg) -= t.coef;
    }
    if (c.sense == Sense::kLe) sf.a(row, slack++) = 1;
    if (c.sense == Sense::kGe) sf.a(row, slack++) = -1;
    sf.b(row) = rhs;
    ++row;
  }
  for (const auto& [k, u] : upper) {
    sf.a(row, k) = 1;
    sf.a(row, slack++) = 1;
    sf.b(row) = u;
    ++row;
  }
  for (int i = 0; i < nrows; ++i)
    if (sf.b(i) < 0) {
      sf.a.row(i) *= -1;
      sf.b(i) *= -1;
    }

  OracleResult res;
  Eigen::VectorXd z;
  switch (tableau_simplex(sf, z)) {
    case Phase2::kInfeasible: res.status = OracleStatus::kInfeasible; return res;
    case Phase2::kUnbounded: res.status = OracleStatus::kUnbounded; return res;
    case Phase2::kOptimal: break;
  }
  res.status = OracleStatus::kOptimal;
  res.x.resize(nv);
  for (int j = 0; j < nv; ++j) {
    double x = map[j].offset;
    if (map[j].pos >= 0) x += z(map[j].pos);
    if (map[j].neg >= 0) x -= z(map[j].neg);
    res.x[j] = x;
  }
  res.objective = model.objective_value(res.x);
  (void)constant;
  return res;
}

OracleResult enumerate_milp(const MILPModel& model) {
  std::vector<int> bins;
  for (int j = 0; j < model.num_variables(); ++j)
    if (model.variable(j).kind == VarKind::kBinary) bins.push_back(j);
  if (bins.size() > 20) throw std::invalid_argument("too many binaries");

  // Rows touching only binaries are screened before any LP.
  std::vector<int> pure;
  for (int i = 0; i < model.num_constraints(); ++i) {
    bool all = true;
    for (const Term& t : model.constraints()[i].terms)
      if (model.variable(t.var).kind != VarKind::kBinary) all = false;
    if (all) pure.push_back(i);
  }

  OracleResult best;
  best.objective = std::numeric_limits<double>::infinity();
  std::vector<double> point(model.num_variables(), 0.0);
  MILPModel fixed = model;
  const long count = 1L << bins.size();
  for (long mask = 0; mask < count; ++mask) {
    bool ok = true;
    for (size_t k = 0; k < bins.size(); ++k) {
      const double v = (mask >> k) & 1;
      const Variable& var = model.variable(bins[k]);
      if (v < var.lo - 1e-12 || v > var.hi + 1e-12) ok = false;
      point[bins[k]] = v;
    }
    if (!ok) continue;
    for (int i : pure) {
      const Constraint& c = model.constraints()[i];
      const double a = model.row_activity(i, point);
      if ((c.sense == Sense::kLe && a > c.rhs + 1e-9) ||
          (c.sense == Sense::kGe && a < c.rhs - 1e-9) ||
          (c.sense == Sense::kEq && std::abs(a - c.rhs) > 1e-9)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    for (size_t k = 0; k < bins.size(); ++k) {
      Variable& var = fixed.variable(bins[k]);
      var.lo = var.hi = point[bins[k]];
    }
    OracleResult r = dense_lp(fixed);
    if (r.status == OracleStatus::kUnbounded) return r;
    if (r.status == OracleStatus::kOptimal &&
        r.objective < best.objective - 1e-12) {
      best = r;
    }
  }
  return best;
}

double kkt_residual(const LpProblem& lp, const std::vector<double>& x,
                    const Eigen::VectorXd& duals,
                    const Eigen::VectorXd& reduced_costs, std::string* where) {
  double worst = 0;
  auto note = [&](double v, const std::string& what) {
    if (v > worst) {
      worst = v;
      if (where) *where = what;
    }
  };
  const Eigen::VectorXd xv =
      Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<int>(x.size()));
  const Eigen::VectorXd act = lp.a * xv;
  const double tol = 1e-7;
  for (int j = 0; j < lp.num_cols; ++j) {
    note(lp.col_lo(j) - xv(j), "col lower " + std::to_string(j));
    note(xv(j) - lp.col_hi(j), "col upper " + std::to_string(j));
  }
  for (int i = 0; i < lp.num_rows; ++i) {
    note(lp.row_lo(i) - act(i), "row lower " + std::to_string(i));
    note(act(i) - lp.row_hi(i), "row upper " + std::to_string(i));
  }
  const Eigen::VectorXd resid =
      lp.cost - Eigen::VectorXd(lp.a.transpose() * duals) - reduced_costs;
  for (int j = 0; j < lp.num_cols; ++j)
    note(std::abs(resid(j)), "dual residual " + std::to_string(j));
  // Minimization: d_j > 0 only at the lower bound, d_j < 0 only at the
  // upper bound; y_i > 0 only at the row lower bound, y_i < 0 at the upper.
  for (int j = 0; j < lp.num_cols; ++j) {
    const double d = reduced_costs(j);
    const bool at_lo = xv(j) <= lp.col_lo(j) + tol;
    const bool at_hi = xv(j) >= lp.col_hi(j) - tol;
    if (d > 0 && !at_lo) note(d * (xv(j) - lp.col_lo(j)), "cs col " + std::to_string(j));
    if (d < 0 && !at_hi) note(-d * (lp.col_hi(j) - xv(j)), "cs col " + std::to_string(j));
  }
  for (int i = 0; i < lp.num_rows; ++i) {
    const double y = duals(i);
    const bool at_lo = act(i) <= lp.row_lo(i) + tol;
    const bool at_hi = act(i) >= lp.row_hi(i) - tol;
    if (y > 0 && !at_lo) note(y * std::min(1.0, act(i) - lp.row_lo(i)), "cs row " + std::to_string(i));
    if (y < 0 && !at_hi) note(-y * std::min(1.0, lp.row_hi(i) - act(i)), "cs row " + std::to_string(i));
  }
  return worst;
}

double uc_violation(const UCInstance& inst, const UCSchedule& s,
                    std::string* where) {
  double worst = 0;
  auto note = [&](double v, const std::string& what, int g, int t) {
    if (v > worst) {
      worst = v;
      if (where)
        *where = what + " g" + std::to_string(g) + " t" + std::to_string(t);
    }
  };
  const int T = inst.horizon;
  for (int g = 0; g < static_cast<int>(inst.gens.size()); ++g) {
    const UcGenerator& u = inst.gens[g];
    if (u.condenser) {
      for (int t = 0; t < T; ++t) {
        note(u.qmin - s.q(g, t), "condenser qmin", g, t);
        note(s.q(g, t) - u.qmax, "condenser qmax", g, t);
      }
      continue;
    }
    const double span = u.pmax - u.pmin;
    // Status over t = -H..T-1 with history from the signed initial count.
    auto y_at = [&](int t) {
      if (t >= 0) return s.y(g, t);
      const int back = -t;  // hours before the horizon start
      if (u.initial_status > 0) return back <= u.initial_status ? 1 : 0;
      return back <= -u.initial_status ? 0 : 1;
    };
    auto start_at = [&](int t) { return y_at(t) == 1 && y_at(t - 1) == 0 ? 1 : 0; };
    auto stop_at = [&](int t) { return y_at(t) == 0 && y_at(t - 1) == 1 ? 1 : 0; };
    const double prev0 =
        u.initially_on() ? std::max(u.p_init - u.pmin, 0.0) : 0.0;
    for (int t = 0; t < T; ++t) {
      note(std::abs(s.u(g, t) - start_at(t)), "startup flag", g, t);
      note(std::abs(s.w(g, t) - stop_at(t)), "shutdown flag", g, t);
      // A unit that started within the last min_up hours must be on.
      for (int k = 0; k < u.min_up; ++k)
        if (start_at(t - k) && !s.y(g, t)) note(1, "min up", g, t);
      for (int k = 0; k < u.min_down; ++k)
        if (stop_at(t - k) && s.y(g, t)) note(1, "min down", g, t);
      const double pd = s.pdelta(g, t), r = s.r(g, t);
      note(-pd, "pdelta sign", g, t);
      note(-r, "reserve sign", g, t);
      if (!s.y(g, t)) {
        note(std::abs(pd) + std::abs(r), "off unit output", g, t);
      } else {
        // Output on the first hour after start is capped by SU; on the
        // last hour before a stop by SD.
        double cap = span;
        if (s.u(g, t)) cap = std::min(cap, u.startup_limit - u.pmin);
        note(pd + r - cap, "startup cap", g, t);
        if (t + 1 < T && s.w(g, t + 1))
          note(pd - (u.shutdown_limit - u.pmin), "shutdown cap", g, t);
        if (u.min_up >= 2 && t + 1 < T && s.w(g, t + 1))
          note(pd + r - (u.shutdown_limit - u.pmin), "shutdown cap", g, t);
      }
      if (t == 0 && u.initially_on() && u.p_init > u.shutdown_limit)
        note(s.w(g, 0), "first-hour shutdown", g, t);
      const double before = t > 0 ? s.pdelta(g, t - 1) : prev0;
      note(pd + r - before - u.ramp_up, "ramp up", g, t);
      note(before - pd - u.ramp_down, "ramp down", g, t);
      note(s.q(g, t) - u.qmax * s.y(g, t), "qmax", g, t);
      note(u.qmin * s.y(g, t) - s.q(g, t), "qmin", g, t);
    }
  }
  for (int t = 0; t < T; ++t) {
    double total = 0;
    for (int g = 0; g < static_cast<int>(inst.gens.size()); ++g)
      if (!inst.gens[g].condenser) total += s.r(g, t);
    note(inst.reserve[t] - total, "reserve", -1, t);
  }
  return worst;
}

}  // namespace acnn::testing
