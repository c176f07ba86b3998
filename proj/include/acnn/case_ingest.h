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

// Ingestion of MATPOWER case text and unit-commitment instance documents.
//
// All quantities are converted to per-unit on the case base at parse time.
// Angles are stored in radians. A thermal rating of 0 in the case text means
// "unlimited" and is stored as +infinity.

#ifndef ACNN_CASE_INGEST_H_
#define ACNN_CASE_INGEST_H_

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace acnn {

enum class BusType { kPQ = 1, kPV = 2, kRef = 3 };

struct BusRecord {
  int id = 0;
  BusType type = BusType::kPQ;
  double pd = 0, qd = 0;  // p.u.
  double gs = 0, bs = 0;  // p.u. at 1.0 p.u. voltage
  int area = 1;
  double vm = 1.0;        // initial magnitude, p.u.
  double va = 0.0;        // initial angle, rad
  double base_kv = 0.0;
  int zone = 1;
  double vmax = 1.1, vmin = 0.9;
};

struct BranchRecord {
  int from = 0, to = 0;  // bus ids
  double r = 0, x = 0, b = 0;
  double rate_a = 0;     // p.u., +inf when unlimited
  double rate_b = 0, rate_c = 0;
  double tap = 0;        // 0 means nominal (1.0)
  double shift = 0;      // rad
  double angmin = 0, angmax = 0;  // rad
};

// Raw MATPOWER generator cost row. Units are those of the case file
// (MW and $/h), not per-unit.
struct GenCost {
  int model = 2;  // 1 = piecewise linear points, 2 = polynomial
  double startup = 0, shutdown = 0;
  std::vector<double> coeffs;
};

struct GenRecord {
  int bus = 0;  // bus id
  double pg = 0, qg = 0;
  double qmax = 0, qmin = 0;
  double vg = 1.0;
  double mbase = 100.0;
  double pmax = 0, pmin = 0;
  GenCost cost;
};

struct RawCase {
  std::string name;
  double base_mva = 100.0;
  std::vector<BusRecord> buses;
  std::vector<BranchRecord> branches;
  std::vector<GenRecord> gens;
  int ref_index = -1;  // index into `buses`

  int bus_index(int id) const;  // -1 when absent
};

// Parses the bus/branch/gen/gencost subset of a MATPOWER case. Out-of-service
// branches and generators are dropped.
RawCase parse_matpower(std::string_view text);

// Serializes a case back to MATPOWER text with 17 significant digits.
std::string write_matpower(const RawCase& c);

// Scales every rateA by (1 - factor). Requires 0 <= factor < 1.
RawCase derate_thermal_limits(const RawCase& c, double factor);

// Re-checks the invariants enforced by parse_matpower.
void validate_case(const RawCase& c);

// ---------------------------------------------------------------------------
// Unit-commitment instance

struct CostSegment {
  double width = 0;  // p.u.
  double slope = 0;  // $ per p.u.-h
};

// A startup costs `cost` when the unit has been off for at least `lag` hours
// (and less than the next tier's lag).
struct StartupTier {
  int lag = 1;
  double cost = 0;
};

struct UcGenerator {
  std::string name;
  int case_gen = -1;   // index into RawCase::gens
  int bus = -1;        // index into RawCase::buses
  double pmin = 0, pmax = 0, qmin = 0, qmax = 0;  // p.u.
  double startup_limit = 0, shutdown_limit = 0;   // p.u.
  double ramp_up = 0, ramp_down = 0;              // p.u./h
  int min_up = 1, min_down = 1;                   // h
  double p_init = 0;                              // p.u.
  int initial_status = -1;  // > 0: on for that many hours, < 0: off
  double no_load_cost = 0;  // $/h while committed
  std::vector<CostSegment> cost;
  std::vector<StartupTier> startup;
  bool condenser = false;   // Pmin = Pmax = 0: always-on reactive source

  bool initially_on() const { return initial_status > 0; }
  // Status history for periods t < 1 (t = 0 is the hour before the horizon).
  int y_hist(int t) const;
  int u_hist(int t) const;
  int w_hist(int t) const;
  // Convex production cost of p^delta = p - pmin (excludes no-load cost).
  double production_cost(double p_delta) const;
  // Cost of a startup after `downtime` hours offline.
  double startup_cost(int downtime) const;
};

struct UCInstance {
  int horizon = 0;
  std::vector<int> hour_labels;  // 1-based clock hour for each period
  std::vector<UcGenerator> gens;
  Eigen::MatrixXd pd, qd;        // buses x horizon, p.u.
  std::vector<double> reserve;   // per period, p.u.
  double base_mva = 100.0;

  int num_buses() const { return static_cast<int>(pd.rows()); }
};

// Loads the JSON unit-commitment document described in README.md. Reactive
// demand follows the case's base power factor per bus (zero where the base
// active load is zero).
UCInstance load_uc_instance(std::string_view text, const RawCase& c);

// Checks the UCInstance invariants; throws ValidationError.
void validate_uc_instance(const UCInstance& inst);

// Keeps only the periods listed (0-based indices into the horizon).
UCInstance subsample_hours(const UCInstance& inst,
                           const std::vector<int>& periods);

}  // namespace acnn

#endif  // ACNN_CASE_INGEST_H_
