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


// Bounded dual simplex for linear programs in the form
//   min c'x  s.t.  row_lo <= A x <= row_hi,  col_lo <= x <= col_hi.
//
// The basis is held as a sparse LU factorization plus product-form updates.
// Infinite bounds on nonbasic columns are replaced by a large artificial box
// during the solve; a final nonbasic column sitting on that box with a
// nonzero reduced cost signals an unbounded problem.

#ifndef ACNN_LP_SIMPLEX_H_
#define ACNN_LP_SIMPLEX_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "acnn/milp_model.h"

namespace acnn {

struct LpProblem {
  int num_cols = 0;
  int num_rows = 0;
  Eigen::SparseMatrix<double> a;  // num_rows x num_cols, column major
  Eigen::VectorXd col_lo, col_hi, row_lo, row_hi, cost;
};

// Binaries are relaxed to [lo, hi]. The objective constant is dropped.
LpProblem lp_from_model(const MILPModel& model);

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit,
                      kNumerical };
std::string to_string(LpStatus s);

struct LpOptions {
  int max_iterations = 200000;
  double primal_tol = 1e-9;
  double dual_tol = 1e-9;
  double pivot_tol = 1e-9;
  double artificial_bound = 1e6;
  int refactor_interval = 64;
};

struct LpBasis {
  std::vector<int> head;           // basic variable per row position
  std::vector<std::int8_t> state;  // per variable (columns then logicals)
};

class DualSimplex {
 public:
  explicit DualSimplex(LpProblem problem, LpOptions options = {});
  ~DualSimplex();
  DualSimplex(const DualSimplex&) = delete;
  DualSimplex& operator=(const DualSimplex&) = delete;

  void set_col_bounds(int j, double lo, double hi);
  double col_lo(int j) const;
  double col_hi(int j) const;

  LpStatus solve();

  // Valid after solve() returned kOptimal.
  std::vector<double> col_values() const;
  double objective() const;           // c'x, without any model constant
  Eigen::VectorXd row_duals() const;   // y with c - A'y = reduced costs
  Eigen::VectorXd reduced_costs() const;
  int iterations() const { return iterations_; }

  LpBasis basis() const;
  void set_basis(const LpBasis& basis);

  const LpProblem& problem() const { return problem_; }

 private:
  struct Impl;
  LpProblem problem_;
  std::unique_ptr<Impl> impl_;
  int iterations_ = 0;
};

struct LpSolution {
  LpStatus status = LpStatus::kNumerical;
  std::vector<double> x;
  double objective = 0;  // includes the model's objective constant
  Eigen::VectorXd duals;
  Eigen::VectorXd reduced_costs;
  int iterations = 0;
};

// Solves the continuous relaxation of `model`.
LpSolution solve_lp(const MILPModel& model, const LpOptions& options = {});

}  // namespace acnn

#endif  // ACNN_LP_SIMPLEX_H_
