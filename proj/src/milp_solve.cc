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


#include "acnn/milp_solve.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <queue>

namespace acnn {
namespace {

struct Fixing {
  int var;
  double lo, hi;
};

struct Node {
  double bound;
  long id;
  int depth;
  std::vector<Fixing> fixings;
  std::shared_ptr<const LpBasis> basis;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

class BranchAndBound {
 public:
  BranchAndBound(const MILPModel& model, const MilpOptions& options)
      : model_(model), opt_(options), lp_(lp_from_model(model), options.lp) {
    for (int j = 0; j < model.num_variables(); ++j) {
      if (model.variable(j).kind == VarKind::kBinary) binaries_.push_back(j);
    }
  }

  MilpSolution run() {
    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
      return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                           start).count();
    };
    model_.validate();
    MilpSolution out;
    std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
    long next_id = 0;
    std::unique_ptr<Node> dive =
        std::make_unique<Node>(Node{-kInfinity, next_id++, 0, {}, nullptr});
    double side_min = kInfinity;  // bounds of nodes dropped without closing
    bool gap_pruned = false;
    bool budget_hit = false;

    auto global_bound = [&] {
      double lb = side_min;
      if (!open.empty()) lb = std::min(lb, open.top().bound);
      if (dive) lb = std::min(lb, dive->bound);
      return std::min(lb, incumbent_obj_);
    };
    auto prune_threshold = [&] {
      if (!std::isfinite(incumbent_obj_)) return kInfinity;
      return incumbent_obj_ -
             std::max(1e-9, opt_.gap_target * std::max(std::abs(incumbent_obj_), 1e-9));
    };

    while (dive || !open.empty()) {
      if (out.nodes >= opt_.node_budget || elapsed() > opt_.time_budget_s) {
        budget_hit = true;
        break;
      }
      Node node;
      if (dive) {
        node = std::move(*dive);
        dive.reset();
      } else {
        node = open.top();
        open.pop();
      }
      if (node.bound >= prune_threshold()) {
        if (node.bound < incumbent_obj_) {
          gap_pruned = true;
          side_min = std::min(side_min, node.bound);
        }
        out.bound_trace.push_back(global_bound());
        continue;
      }
      ++out.nodes;
      apply(node.fixings);
      if (node.basis) lp_.set_basis(*node.basis);
      const LpStatus st = lp_.solve();
      lp_iterations_ += lp_.iterations();
      if (st == LpStatus::kInfeasible) {
        out.bound_trace.push_back(global_bound());
        continue;
      }
      if (st == LpStatus::kUnbounded) {
        if (node.depth == 0) {
          out.status = MilpStatus::kUnbounded;
          out.diagnostics = "LP relaxation is unbounded";
          return finish(out, elapsed());
        }
        out.bound_trace.push_back(global_bound());
        continue;
      }
      if (st != LpStatus::kOptimal) {
        out.diagnostics += "node " + std::to_string(node.id) + ": LP " +
                           to_string(st) + "; ";
        side_min = std::min(side_min, node.bound);
        out.bound_trace.push_back(global_bound());
        continue;
      }
      std::vector<double> x = lp_.col_values();
      const double obj = lp_.objective() + model_.objective_constant();
      node.bound = std::max(node.bound, obj);
      if (node.bound >= prune_threshold()) {
        if (node.bound < incumbent_obj_) {
          gap_pruned = true;
          side_min = std::min(side_min, node.bound);
        }
        out.bound_trace.push_back(global_bound());
        continue;
      }
      auto basis = std::make_shared<const LpBasis>(lp_.basis());

      const int branch = pick_branch(x);
      if (branch < 0) {
        try_incumbent(x, node.fixings, basis);
      } else if (node.depth == 0 ||
                 out.nodes % std::max(1, opt_.heuristic_interval) == 0) {
        rounding_heuristic(x, basis);
      }
      if (branch >= 0) {
        const double val = x[branch];
        Node down{node.bound, next_id++, node.depth + 1, node.fixings, basis};
        down.fixings.push_back({branch, model_.variable(branch).lo, 0.0});
        Node up{node.bound, next_id++, node.depth + 1, node.fixings, basis};
        up.fixings.push_back({branch, 1.0, model_.variable(branch).hi});
        if (val >= 0.5) {
          dive = std::make_unique<Node>(std::move(up));
          open.push(std::move(down));
        } else {
          dive = std::make_unique<Node>(std::move(down));
          open.push(std::move(up));
        }
      }
      const double lb = global_bound();
      out.bound_trace.push_back(lb);
      if (std::isfinite(incumbent_obj_) &&
          relative_gap(incumbent_obj_, lb) <= opt_.gap_target) {
        if (dive || !open.empty()) gap_pruned = true;
        break;
      }
    }

    out.bound = global_bound();
    if (!std::isfinite(incumbent_obj_)) {
      out.status = budget_hit ? MilpStatus::kBudgetExhausted
                              : MilpStatus::kInfeasible;
      if (!budget_hit && std::isfinite(side_min))
        out.status = MilpStatus::kBudgetExhausted;
      return finish(out, elapsed());
    }
    out.gap = relative_gap(incumbent_obj_, out.bound);
    if (budget_hit && out.gap > opt_.gap_target) {
      out.status = MilpStatus::kBudgetExhausted;
    } else if (gap_pruned && out.gap > 1e-9) {
      out.status = MilpStatus::kGapReached;
    } else {
      out.status = MilpStatus::kOptimal;
    }
    return finish(out, elapsed());
  }

 private:
  MilpSolution finish(MilpSolution& out, double wall) {
    out.has_incumbent = std::isfinite(incumbent_obj_);
    if (out.has_incumbent) {
      out.x = incumbent_;
      out.objective = incumbent_obj_;
      out.bound = std::min(out.bound, incumbent_obj_);
      out.gap = relative_gap(incumbent_obj_, out.bound);
    }
    out.lp_iterations = lp_iterations_;
    out.wall_time_s = wall;
    return std::move(out);
  }

  void apply(const std::vector<Fixing>& fixings) {
    for (int j : binaries_)
      lp_.set_col_bounds(j, model_.variable(j).lo, model_.variable(j).hi);
    for (const Fixing& f : fixings) lp_.set_col_bounds(f.var, f.lo, f.hi);
  }

  int pick_branch(const std::vector<double>& x) const {
    int best = -1;
    double best_frac = 0;
    int best_pri = 0;
    for (int j : binaries_) {
      const double frac = std::abs(x[j] - std::round(x[j]));
      if (frac <= opt_.integrality_tol) continue;
      const double score = std::min(x[j] - std::floor(x[j]),
                                    std::ceil(x[j]) - x[j]);
      const int pri = model_.variable(j).branch_priority;
      if (best < 0 || pri > best_pri ||
          (pri == best_pri && score > best_frac + 1e-12)) {
        best = j;
        best_frac = score;
        best_pri = pri;
      }
    }
    return best;
  }

  // Fixes every binary at its rounded value and re-solves the LP so the
  // reported point is exactly integral.
  void try_incumbent(const std::vector<double>& x,
                     const std::vector<Fixing>& fixings,
                     const std::shared_ptr<const LpBasis>& basis) {
    apply(fixings);
    for (int j : binaries_) {
      const double v = std::round(x[j]);
      lp_.set_col_bounds(j, v, v);
    }
    lp_.set_basis(*basis);
    const LpStatus st = lp_.solve();
    lp_iterations_ += lp_.iterations();
    if (st != LpStatus::kOptimal) return;
    std::vector<double> polished = lp_.col_values();
    for (int j : binaries_) polished[j] = std::round(polished[j]);
    const double obj = model_.objective_value(polished);
    if (obj < incumbent_obj_ && model_.max_violation(polished) <= 1e-6) {
      incumbent_obj_ = obj;
      incumbent_ = std::move(polished);
    }
  }

  void rounding_heuristic(const std::vector<double>& x,
                          const std::shared_ptr<const LpBasis>& basis) {
    std::vector<double> rounded = x;
    for (int j : binaries_) rounded[j] = std::round(x[j]);
    if (opt_.repair && !opt_.repair(model_, rounded)) return;
    std::vector<Fixing> fix;
    for (int j : binaries_) {
      const double v = std::clamp(std::round(rounded[j]),
                                  model_.variable(j).lo, model_.variable(j).hi);
      fix.push_back({j, v, v});
    }
    std::vector<double> point = rounded;
    try_incumbent(point, fix, basis);
  }

  const MILPModel& model_;
  MilpOptions opt_;
  DualSimplex lp_;
  std::vector<int> binaries_;
  std::vector<double> incumbent_;
  double incumbent_obj_ = kInfinity;
  long lp_iterations_ = 0;
};

}  // namespace

std::string to_string(MilpStatus s) {
  switch (s) {
    case MilpStatus::kOptimal: return "optimal";
    case MilpStatus::kInfeasible: return "infeasible";
    case MilpStatus::kUnbounded: return "unbounded";
    case MilpStatus::kGapReached: return "gap_reached";
    case MilpStatus::kBudgetExhausted: return "budget_exhausted";
  }
  return "unknown";
}

double relative_gap(double objective, double bound) {
  if (!std::isfinite(objective)) return kInfinity;
  return std::max(0.0, objective - bound) /
         std::max(std::abs(objective), 1e-9);
}

MilpSolution solve_milp(const MILPModel& model, const MilpOptions& options) {
  BranchAndBound bb(model, options);
  return bb.run();
}

}  // namespace acnn
