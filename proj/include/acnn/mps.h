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


// MPS export/import and external solution import.
//
// Export writes the fixed-format section layout (NAME, ROWS, COLUMNS, RHS,
// RANGES, BOUNDS, ENDATA) with numbers printed to 17 significant digits.
// Fields keep the classic column positions when they fit; longer names and
// numbers widen their field, so files should be read with whitespace
// tokenization (as read_mps does).

#ifndef ACNN_MPS_H_
#define ACNN_MPS_H_

#include <string>
#include <string_view>

#include "acnn/milp_model.h"
#include "acnn/milp_solve.h"

namespace acnn {

// Throws ValidationError on empty, whitespace-containing or colliding names.
std::string export_mps(const MILPModel& model);

MILPModel read_mps(std::string_view text);

// Parses "name value" lines (blank lines and lines starting with '#' are
// skipped; missing variables default to 0) and accepts the point only when
// its worst violation of `model` is at most `tol`.
MilpSolution import_solution(std::string_view text, const MILPModel& model,
                             double tol = 1e-6);

}  // namespace acnn

#endif  // ACNN_MPS_H_
