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


// Power flow sample collection and load-alteration schemes.

#ifndef ACNN_DATA_FACTORY_H_
#define ACNN_DATA_FACTORY_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "acnn/ac_solver.h"
#include "acnn/case_ingest.h"
#include "acnn/grid_model.h"

namespace acnn {

enum class Split { kTrain, kTest };

struct SampleMeta {
  int hour = 0;                 // period index into the instance
  std::vector<int> off_gens;    // indices into UCInstance::gens
  double vmin_shift = 0, vmax_shift = 0;  // largest perturbation applied
  Split split = Split::kTrain;
};

struct PFDataset {
  int n = 0, m = 0, ref = 0;
  Eigen::MatrixXd x;  // samples x (2n - 1)
  Eigen::MatrixXd y;  // samples x (2n + 2m)
  std::vector<SampleMeta> meta;

  int size() const { return static_cast<int>(x.rows()); }
  PFDataset subset(Split s) const;
  PFDataset rows(const std::vector<int>& idx) const;
};

struct SamplerConfig {
  int outage_draws = 3;     // samples per (hour, forced-off unit)
  int max_extra_off = 3;    // additional random outages per sample
  bool perturb_voltage = true;
  double voltage_shift = 0.03;  // p.u.
  double test_fraction = 0.2;
  int min_samples = 1;
  int workers = 1;
  SlpOptions slp;
};

// One base sample per hour plus outage samples, each solved with
// slp_acopf; candidates without a feasible verdict are dropped.
PFDataset collect_dataset(const Network& net, const UCInstance& inst,
                          const SamplerConfig& cfg, std::uint64_t seed);

// Dispatch problem of period `t` with every unit ON except `off`.
DispatchSpec dispatch_for_hour(const Network& net, const UCInstance& inst,
                               int t, const std::vector<int>& off = {});

// Largest |y_row - pack_output(eval(x_row))| over the dataset.
double dataset_consistency(const Network& net, const PFDataset& ds);

void write_dataset(std::ostream& os, const PFDataset& ds);
PFDataset read_dataset(std::istream& is);

enum class LoadSchemeKind { kUniform, kPerBusRandom, kSinusoidal };
std::string to_string(LoadSchemeKind k);

struct LoadScheme {
  LoadSchemeKind kind = LoadSchemeKind::kUniform;
  double scale = 1.0;      // uniform
  double amplitude = 0.0;  // sinusoidal
  std::uint64_t seed = 0;  // per-bus random draws in [0.85, 1.15]

  // Factor applied at bus `bus` in clock hour `hour` (1-based); the
  // sinusoid has a 24-hour period.
  double factor(int bus, int hour, int num_buses) const;
};

inline constexpr double kLoadEnvelope = 0.15;

UCInstance apply_load_scheme(const UCInstance& inst, const LoadScheme& s);

}  // namespace acnn

#endif  // ACNN_DATA_FACTORY_H_
