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


#include "acnn/lp_simplex.h"

#include <algorithm>
#include <cmath>

#include <Eigen/SparseLU>

#include "acnn/errors.h"

namespace acnn {
namespace {

enum : std::int8_t { kBasic = 0, kLower = 1, kUpper = 2, kFree = 3 };

struct Eta {
  int r;
  Eigen::VectorXd col;
};

}  // namespace

std::string to_string(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration_limit";
    case LpStatus::kNumerical: return "numerical";
  }
  return "unknown";
}

LpProblem lp_from_model(const MILPModel& model) {
  LpProblem p;
  p.num_cols = model.num_variables();
  p.num_rows = model.num_constraints();
  p.col_lo.resize(p.num_cols);
  p.col_hi.resize(p.num_cols);
  p.cost.resize(p.num_cols);
  for (int j = 0; j < p.num_cols; ++j) {
    p.col_lo[j] = model.variable(j).lo;
    p.col_hi[j] = model.variable(j).hi;
    p.cost[j] = model.objective()[j];
  }
  p.row_lo.resize(p.num_rows);
  p.row_hi.resize(p.num_rows);
  std::vector<Eigen::Triplet<double>> trip;
  for (int i = 0; i < p.num_rows; ++i) {
    const Constraint& row = model.constraints()[i];
    for (const Term& t : row.terms)
      if (t.coef != 0) trip.emplace_back(i, t.var, t.coef);
    p.row_lo[i] = row.sense == Sense::kLe ? -kInfinity : row.rhs;
    p.row_hi[i] = row.sense == Sense::kGe ? kInfinity : row.rhs;
  }
  p.a.resize(p.num_rows, p.num_cols);
  p.a.setFromTriplets(trip.begin(), trip.end());
  p.a.makeCompressed();
  return p;
}

struct DualSimplex::Impl {
  const LpProblem& p;
  LpOptions opt;
  int n, m, total;
  Eigen::VectorXd lo, hi, cost;
  std::vector<std::int8_t> state;
  std::vector<int> head;
  Eigen::VectorXd x, d, y;
  mutable Eigen::SparseLU<Eigen::SparseMatrix<double>,
                          Eigen::COLAMDOrdering<int>>
      lu;
  std::vector<Eta> etas;
  double cost_scale = 1;
  bool factor_valid = false;

  Impl(const LpProblem& problem, LpOptions options)
      : p(problem), opt(options), n(problem.num_cols), m(problem.num_rows),
        total(n + m) {
    lo.resize(total);
    hi.resize(total);
    cost = Eigen::VectorXd::Zero(total);
    lo.head(n) = p.col_lo;
    hi.head(n) = p.col_hi;
    lo.tail(m) = p.row_lo;
    hi.tail(m) = p.row_hi;
    double cmax = n > 0 ? p.cost.cwiseAbs().maxCoeff() : 0.0;
    cost_scale = 1.0 / std::max(1.0, cmax);
    cost.head(n) = p.cost * cost_scale;
    x = Eigen::VectorXd::Zero(total);
    d = Eigen::VectorXd::Zero(total);
    y = Eigen::VectorXd::Zero(m);
    slack_basis();
  }

  void slack_basis() {
    head.resize(m);
    state.assign(total, kLower);
    for (int i = 0; i < m; ++i) {
      head[i] = n + i;
      state[n + i] = kBasic;
    }
    factor_valid = false;
  }

  double lo_eff(int j) const {
    return std::isfinite(lo[j]) ? lo[j] : -opt.artificial_bound;
  }
  double hi_eff(int j) const {
    return std::isfinite(hi[j]) ? hi[j] : opt.artificial_bound;
  }

  double dot_col(int j, const Eigen::VectorXd& v) const {
    if (j >= n) return -v[j - n];
    double acc = 0;
    for (Eigen::SparseMatrix<double>::InnerIterator it(p.a, j); it; ++it)
      acc += it.value() * v[it.row()];
    return acc;
  }

  void add_col(int j, double scale, Eigen::VectorXd& out) const {
    if (j >= n) {
      out[j - n] -= scale;
      return;
    }
    for (Eigen::SparseMatrix<double>::InnerIterator it(p.a, j); it; ++it)
      out[it.row()] += scale * it.value();
  }

  bool refactor() {
    etas.clear();
    factor_valid = false;
    if (m == 0) {
      factor_valid = true;
      return true;
    }
    std::vector<Eigen::Triplet<double>> trip;
    for (int i = 0; i < m; ++i) {
      int j = head[i];
      if (j >= n) {
        trip.emplace_back(j - n, i, -1.0);
      } else {
        for (Eigen::SparseMatrix<double>::InnerIterator it(p.a, j); it; ++it)
          trip.emplace_back(it.row(), i, it.value());
      }
    }
    Eigen::SparseMatrix<double> b(m, m);
    b.setFromTriplets(trip.begin(), trip.end());
    b.makeCompressed();
    lu.analyzePattern(b);
    lu.factorize(b);
    if (lu.info() != Eigen::Success) return false;
    factor_valid = true;
    return true;
  }

  Eigen::VectorXd ftran(const Eigen::VectorXd& rhs) const {
    if (m == 0) return rhs;
    Eigen::VectorXd v = lu.solve(rhs);
    for (const Eta& e : etas) {
      const double pivot = v[e.r] / e.col[e.r];
      if (pivot != 0) {
        v -= pivot * e.col;
      }
      v[e.r] = pivot;
    }
    return v;
  }

  Eigen::VectorXd btran(Eigen::VectorXd v) const {
    if (m == 0) return v;
    for (auto it = etas.rbegin(); it != etas.rend(); ++it) {
      const Eta& e = *it;
      double acc = v[e.r];
      acc -= e.col.dot(v) - e.col[e.r] * v[e.r];
      v[e.r] = acc / e.col[e.r];
    }
    return lu.transpose().solve(v);
  }

  void compute_primal() {
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
    for (int j = 0; j < total; ++j)
      if (state[j] != kBasic && x[j] != 0) add_col(j, x[j], rhs);
    Eigen::VectorXd xb = ftran(-rhs);
    for (int i = 0; i < m; ++i) x[head[i]] = xb[i];
  }

  void compute_duals() {
    Eigen::VectorXd cb(m);
    for (int i = 0; i < m; ++i) cb[i] = cost[head[i]];
    y = btran(cb);
    for (int j = 0; j < total; ++j)
      d[j] = state[j] == kBasic ? 0.0 : cost[j] - dot_col(j, y);
  }

  // Puts every nonbasic variable on the bound its reduced cost asks for.
  void place_nonbasic() {
    for (int j = 0; j < total; ++j) {
      if (state[j] == kBasic) continue;
      if (lo[j] == hi[j]) {
        state[j] = kLower;
        x[j] = lo[j];
        continue;
      }
      const bool has_lo = std::isfinite(lo[j]), has_hi = std::isfinite(hi[j]);
      std::int8_t s = state[j];
      if (d[j] > opt.dual_tol) {
        s = kLower;
      } else if (d[j] < -opt.dual_tol) {
        s = kUpper;
      } else if (!has_lo && !has_hi) {
        s = kFree;
      } else if (s == kFree || (s == kLower && !has_lo) ||
                 (s == kUpper && !has_hi)) {
        s = has_lo ? kLower : kUpper;
      }
      state[j] = s;
      x[j] = s == kLower ? lo_eff(j) : s == kUpper ? hi_eff(j) : 0.0;
    }
  }

  double infeasibility(int i) const {
    const int j = head[i];
    if (x[j] > hi[j] + opt.primal_tol) return x[j] - hi[j];
    if (x[j] < lo[j] - opt.primal_tol) return lo[j] - x[j];
    return 0;
  }

  bool reset_point() {
    if (!refactor()) {
      slack_basis();
      if (!refactor()) return false;
    }
    compute_duals();
    place_nonbasic();
    compute_primal();
    return true;
  }

  LpStatus run(int& iterations) {
    if (!reset_point()) return LpStatus::kNumerical;
    int degenerate = 0;
    int troubles = 0;
    int verify_rounds = 0;
    bool fresh = true;
    Eigen::VectorXd alpha_row(total);
    while (true) {
      if (iterations >= opt.max_iterations) return LpStatus::kIterationLimit;
      if (static_cast<int>(etas.size()) >= opt.refactor_interval) {
        if (!reset_point()) return LpStatus::kNumerical;
        fresh = true;
      }
      const bool bland = degenerate > 50;

      // Leaving row.
      int r = -1;
      double best = 0;
      for (int i = 0; i < m; ++i) {
        double inf = infeasibility(i);
        if (inf <= 0) continue;
        if (bland) {
          if (r < 0 || head[i] < head[r]) r = i;
        } else if (inf > best) {
          best = inf;
          r = i;
        }
      }
      if (r < 0) {
        if (!fresh && verify_rounds < 5) {
          ++verify_rounds;
          if (!reset_point()) return LpStatus::kNumerical;
          fresh = true;
          continue;
        }
        for (int j = 0; j < total; ++j) {
          if (state[j] == kLower && !std::isfinite(lo[j]) &&
              d[j] > opt.dual_tol)
            return LpStatus::kUnbounded;
          if (state[j] == kUpper && !std::isfinite(hi[j]) &&
              d[j] < -opt.dual_tol)
            return LpStatus::kUnbounded;
        }
        return LpStatus::kOptimal;
      }
      const int leaving = head[r];
      const double sgn = x[leaving] > hi[leaving] ? 1.0 : -1.0;

      Eigen::VectorXd er = Eigen::VectorXd::Zero(m);
      er[r] = 1.0;
      const Eigen::VectorXd rho = btran(er);
      for (int j = 0; j < total; ++j)
        alpha_row[j] = (state[j] == kBasic || lo[j] == hi[j])
                           ? 0.0
                           : dot_col(j, rho);

      // Harris two-pass ratio test.
      auto eligible = [&](int j, double at) {
        switch (state[j]) {
          case kLower: return at > opt.pivot_tol;
          case kUpper: return at < -opt.pivot_tol;
          case kFree: return std::abs(at) > opt.pivot_tol;
          default: return false;
        }
      };
      double tmax = kInfinity;
      for (int j = 0; j < total; ++j) {
        const double at = sgn * alpha_row[j];
        if (!eligible(j, at)) continue;
        const double slack = at > 0 ? opt.dual_tol : -opt.dual_tol;
        tmax = std::min(tmax, (d[j] + slack) / at);
      }
      int q = -1;
      if (std::isfinite(tmax)) {
        double best_alpha = 0;
        double rmin = kInfinity;
        if (bland) {
          for (int j = 0; j < total; ++j) {
            const double at = sgn * alpha_row[j];
            if (eligible(j, at)) rmin = std::min(rmin, d[j] / at);
          }
        }
        for (int j = 0; j < total; ++j) {
          const double at = sgn * alpha_row[j];
          if (!eligible(j, at)) continue;
          const double ratio = d[j] / at;
          if (bland) {
            if (ratio <= rmin + 1e-12) {
              q = j;
              break;
            }
          } else if (ratio <= tmax && std::abs(at) > best_alpha) {
            best_alpha = std::abs(at);
            q = j;
          }
        }
      }
      if (q < 0) {
        if (!fresh) {
          if (!reset_point()) return LpStatus::kNumerical;
          fresh = true;
          continue;
        }
        return LpStatus::kInfeasible;
      }

      Eigen::VectorXd aq = Eigen::VectorXd::Zero(m);
      add_col(q, 1.0, aq);
      const Eigen::VectorXd alpha_col = ftran(aq);
      const double arq = alpha_col[r];
      if (std::abs(arq - alpha_row[q]) > 1e-7 * (1 + std::abs(arq)) ||
          std::abs(arq) < opt.pivot_tol) {
        if (++troubles > 20) return LpStatus::kNumerical;
        if (!reset_point()) return LpStatus::kNumerical;
        fresh = true;
        continue;
      }

      double theta_d = d[q] / arq;
      if (sgn * theta_d < 0) theta_d = 0;
      degenerate = std::abs(theta_d) < 1e-12 ? degenerate + 1 : 0;
      for (int j = 0; j < total; ++j)
        if (state[j] != kBasic && alpha_row[j] != 0)
          d[j] -= theta_d * alpha_row[j];
      d[q] = 0;
      d[leaving] = -theta_d;

      const double target = sgn > 0 ? hi[leaving] : lo[leaving];
      const double theta_p = (x[leaving] - target) / arq;
      for (int i = 0; i < m; ++i) x[head[i]] -= theta_p * alpha_col[i];
      x[q] += theta_p;
      x[leaving] = target;
      state[leaving] = (sgn > 0 && lo[leaving] != hi[leaving]) ? kUpper : kLower;
      state[q] = kBasic;
      head[r] = q;
      etas.push_back({r, alpha_col});
      ++iterations;
      fresh = false;
    }
  }
};

DualSimplex::DualSimplex(LpProblem problem, LpOptions options)
    : problem_(std::move(problem)) {
  if (problem_.a.rows() != problem_.num_rows ||
      problem_.a.cols() != problem_.num_cols)
    throw DimensionError("LP matrix dimensions do not match");
  impl_ = std::make_unique<Impl>(problem_, options);
}

DualSimplex::~DualSimplex() = default;

void DualSimplex::set_col_bounds(int j, double lo, double hi) {
  impl_->lo[j] = lo;
  impl_->hi[j] = hi;
}

double DualSimplex::col_lo(int j) const { return impl_->lo[j]; }
double DualSimplex::col_hi(int j) const { return impl_->hi[j]; }

LpStatus DualSimplex::solve() {
  for (int j = 0; j < impl_->total; ++j)
    if (impl_->lo[j] > impl_->hi[j] + impl_->opt.primal_tol)
      return LpStatus::kInfeasible;
  return impl_->run(iterations_);
}

std::vector<double> DualSimplex::col_values() const {
  std::vector<double> out(impl_->n);
  for (int j = 0; j < impl_->n; ++j) out[j] = impl_->x[j];
  return out;
}

double DualSimplex::objective() const {
  double acc = 0;
  for (int j = 0; j < impl_->n; ++j) acc += problem_.cost[j] * impl_->x[j];
  return acc;
}

Eigen::VectorXd DualSimplex::row_duals() const {
  return impl_->y / impl_->cost_scale;
}

Eigen::VectorXd DualSimplex::reduced_costs() const {
  return impl_->d.head(impl_->n) / impl_->cost_scale;
}

LpBasis DualSimplex::basis() const { return {impl_->head, impl_->state}; }

void DualSimplex::set_basis(const LpBasis& basis) {
  if (static_cast<int>(basis.head.size()) != impl_->m ||
      static_cast<int>(basis.state.size()) != impl_->total)
    throw DimensionError("basis does not match the LP dimensions");
  impl_->head = basis.head;
  impl_->state = basis.state;
  impl_->factor_valid = false;
}

LpSolution solve_lp(const MILPModel& model, const LpOptions& options) {
  DualSimplex lp(lp_from_model(model), options);
  LpSolution sol;
  sol.status = lp.solve();
  sol.iterations = lp.iterations();
  if (sol.status == LpStatus::kOptimal) {
    sol.x = lp.col_values();
    sol.objective = lp.objective() + model.objective_constant();
    sol.duals = lp.row_duals();
    sol.reduced_costs = lp.reduced_costs();
  }
  return sol;
}

}  // namespace acnn
