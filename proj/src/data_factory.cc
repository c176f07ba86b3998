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


#include "acnn/data_factory.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "acnn/errors.h"

namespace acnn {

PFDataset PFDataset::rows(const std::vector<int>& idx) const {
  PFDataset d;
  d.n = n;
  d.m = m;
  d.ref = ref;
  d.x.resize(static_cast<Eigen::Index>(idx.size()), x.cols());
  d.y.resize(static_cast<Eigen::Index>(idx.size()), y.cols());
  for (size_t r = 0; r < idx.size(); ++r) {
    d.x.row(r) = x.row(idx[r]);
    d.y.row(r) = y.row(idx[r]);
    d.meta.push_back(meta[idx[r]]);
  }
  return d;
}

PFDataset PFDataset::subset(Split s) const {
  std::vector<int> idx;
  for (int r = 0; r < size(); ++r)
    if (meta[r].split == s) idx.push_back(r);
  return rows(idx);
}

DispatchSpec dispatch_for_hour(const Network& net, const UCInstance& inst,
                               int t, const std::vector<int>& off) {
  if (t < 0 || t >= inst.horizon) throw ValidationError("hour out of range");
  DispatchSpec spec;
  spec.pd = inst.pd.col(t);
  spec.qd = inst.qd.col(t);
  spec.vmin = net.vmin;
  spec.vmax = net.vmax;
  for (size_t g = 0; g < inst.gens.size(); ++g) {
    const UcGenerator& u = inst.gens[g];
    GenDispatch d;
    d.bus = u.bus;
    d.p_lo = u.pmin;
    d.p_hi = u.pmax;
    d.q_lo = u.qmin;
    d.q_hi = u.qmax;
    d.on = u.condenser ||
           std::find(off.begin(), off.end(), static_cast<int>(g)) == off.end();
    d.p_set = 0.5 * (u.pmin + u.pmax);
    double width = 0, weighted = 0;
    for (const CostSegment& s : u.cost) {
      width += s.width;
      weighted += s.width * s.slope;
    }
    d.cost = width > 0 ? weighted / width : 0.0;
    spec.gens.push_back(d);
  }
  return spec;
}

namespace {

struct Task {
  int hour = 0;
  int forced = -1;  // unit forced off, -1 for the base sample
  int draw = 0;
};

struct TaskResult {
  bool ok = false;
  Eigen::VectorXd x, y;
  SampleMeta meta;
};

TaskResult run_task(const Network& net, const UCInstance& inst,
                    const SamplerConfig& cfg, std::uint64_t seed, int id,
                    const Task& task) {
  std::seed_seq seq{static_cast<std::uint64_t>(seed),
                    static_cast<std::uint64_t>(id)};
  std::mt19937_64 rng(seq);
  TaskResult r;
  r.meta.hour = task.hour;
  if (task.forced >= 0) {
    r.meta.off_gens.push_back(task.forced);
    std::vector<int> others;
    for (size_t g = 0; g < inst.gens.size(); ++g)
      if (static_cast<int>(g) != task.forced && !inst.gens[g].condenser)
        others.push_back(static_cast<int>(g));
    const int cap = std::min<int>(cfg.max_extra_off, static_cast<int>(others.size()));
    std::uniform_int_distribution<int> size_dist(0, std::max(cap, 0));
    const int k = size_dist(rng);
    std::shuffle(others.begin(), others.end(), rng);
    r.meta.off_gens.insert(r.meta.off_gens.end(), others.begin(), others.begin() + k);
    std::sort(r.meta.off_gens.begin(), r.meta.off_gens.end());
  }
  DispatchSpec spec = dispatch_for_hour(net, inst, task.hour, r.meta.off_gens);
  if (cfg.perturb_voltage) {
    std::uniform_real_distribution<double> shift(0.0, cfg.voltage_shift);
    for (const GenDispatch& g : spec.gens) {
      if (!g.on) continue;
      const double up = shift(rng), down = shift(rng);
      double lo = spec.vmin[g.bus] + up, hi = spec.vmax[g.bus] - down;
      if (lo > hi) lo = hi = 0.5 * (lo + hi);
      r.meta.vmin_shift = std::max(r.meta.vmin_shift, lo - spec.vmin[g.bus]);
      r.meta.vmax_shift = std::max(r.meta.vmax_shift, spec.vmax[g.bus] - hi);
      spec.vmin[g.bus] = lo;
      spec.vmax[g.bus] = hi;
    }
  }
  AcopfResult res;
  try {
    res = slp_acopf(net, spec, AcObjective::kMinCost, cfg.slp);
  } catch (const SolverError&) {
    return r;
  }
  if (res.verdict != Verdict::kFeasible) return r;
  r.ok = true;
  r.x = pack_input(res.point, net);
  r.y = pack_output(res.point);
  return r;
}

}  // namespace

PFDataset collect_dataset(const Network& net, const UCInstance& inst,
                          const SamplerConfig& cfg, std::uint64_t seed) {
  if (inst.num_buses() != net.n)
    throw DimensionError("instance bus count differs from network");
  std::vector<Task> tasks;
  for (int t = 0; t < inst.horizon; ++t) {
    tasks.push_back({t, -1, 0});
    for (size_t g = 0; g < inst.gens.size(); ++g) {
      if (inst.gens[g].condenser) continue;
      for (int d = 0; d < cfg.outage_draws; ++d)
        tasks.push_back({t, static_cast<int>(g), d});
    }
  }
  std::vector<TaskResult> results(tasks.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i; (i = next++) < tasks.size();)
      results[i] = run_task(net, inst, cfg, seed, static_cast<int>(i), tasks[i]);
  };
  const int workers = std::max(1, cfg.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  PFDataset ds;
  ds.n = net.n;
  ds.m = net.m;
  ds.ref = net.ref;
  int kept = 0;
  for (const TaskResult& r : results) kept += r.ok;
  if (kept < cfg.min_samples)
    throw ValidationError("collected " + std::to_string(kept) + " of " +
                          std::to_string(tasks.size()) +
                          " candidate samples; " +
                          std::to_string(tasks.size() - kept) +
                          " were rejected, " +
                          std::to_string(cfg.min_samples) + " required");
  ds.x.resize(kept, net.input_dim());
  ds.y.resize(kept, net.output_dim());
  int row = 0;
  for (const TaskResult& r : results) {
    if (!r.ok) continue;
    ds.x.row(row) = r.x.transpose();
    ds.y.row(row) = r.y.transpose();
    ds.meta.push_back(r.meta);
    ++row;
  }
  std::vector<int> perm(kept);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  const int n_test = static_cast<int>(std::lround(cfg.test_fraction * kept));
  for (int i = 0; i < n_test; ++i) ds.meta[perm[i]].split = Split::kTest;
  return ds;
}

double dataset_consistency(const Network& net, const PFDataset& ds) {
  double worst = 0;
  for (int r = 0; r < ds.size(); ++r) {
    Eigen::VectorXd v, th;
    unpack_input(ds.x.row(r).transpose(), net, v, th);
    Eigen::VectorXd y = pack_output(eval_power_flow(net, v, th));
    worst = std::max(worst, (y - ds.y.row(r).transpose()).lpNorm<Eigen::Infinity>());
  }
  return worst;
}

void write_dataset(std::ostream& os, const PFDataset& ds) {
  os << "acnn-dataset 1\n";
  os << "n " << ds.n << " m " << ds.m << " ref " << ds.ref << " samples "
     << ds.size() << "\n";
  os << "# hour split n_off off... vmin_shift vmax_shift x[" << ds.x.cols()
     << "] y[" << ds.y.cols() << "]\n";
  char buf[32];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  for (int r = 0; r < ds.size(); ++r) {
    const SampleMeta& mt = ds.meta[r];
    os << mt.hour << " " << (mt.split == Split::kTrain ? "train" : "test")
       << " " << mt.off_gens.size();
    for (int g : mt.off_gens) os << " " << g;
    os << " " << num(mt.vmin_shift) << " " << num(mt.vmax_shift);
    for (Eigen::Index k = 0; k < ds.x.cols(); ++k) os << " " << num(ds.x(r, k));
    for (Eigen::Index k = 0; k < ds.y.cols(); ++k) os << " " << num(ds.y(r, k));
    os << "\n";
  }
}

PFDataset read_dataset(std::istream& is) {
  std::string line;
  int lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(is, line)) {
      ++lineno;
      if (!line.empty() && line[0] != '#') return true;
    }
    return false;
  };
  if (!next_line() || line.rfind("acnn-dataset 1", 0) != 0)
    throw ParseError("not an acnn-dataset 1 document", lineno);
  PFDataset ds;
  int samples = 0;
  {
    if (!next_line()) throw ParseError("missing dimensions", lineno);
    std::istringstream ss(line);
    std::string a, b, c, d;
    if (!(ss >> a >> ds.n >> b >> ds.m >> c >> ds.ref >> d >> samples) ||
        a != "n" || b != "m" || c != "ref" || d != "samples")
      throw ParseError("bad dimensions line", lineno);
  }
  const int in = 2 * ds.n - 1, out = 2 * ds.n + 2 * ds.m;
  ds.x.resize(samples, in);
  ds.y.resize(samples, out);
  for (int r = 0; r < samples; ++r) {
    if (!next_line()) throw ParseError("truncated dataset", lineno);
    std::istringstream ss(line);
    SampleMeta mt;
    std::string split;
    size_t noff = 0;
    if (!(ss >> mt.hour >> split >> noff)) throw ParseError("bad sample", lineno);
    if (split != "train" && split != "test")
      throw ParseError("unknown split '" + split + "'", lineno);
    mt.split = split == "train" ? Split::kTrain : Split::kTest;
    mt.off_gens.resize(noff);
    for (int& g : mt.off_gens)
      if (!(ss >> g)) throw ParseError("bad outage list", lineno);
    if (!(ss >> mt.vmin_shift >> mt.vmax_shift))
      throw ParseError("bad voltage shifts", lineno);
    for (int k = 0; k < in; ++k)
      if (!(ss >> ds.x(r, k))) throw ParseError("short input row", lineno);
    for (int k = 0; k < out; ++k)
      if (!(ss >> ds.y(r, k))) throw ParseError("short output row", lineno);
    ds.meta.push_back(mt);
  }
  return ds;
}

std::string to_string(LoadSchemeKind k) {
  switch (k) {
    case LoadSchemeKind::kUniform: return "uniform";
    case LoadSchemeKind::kPerBusRandom: return "per_bus_random";
    case LoadSchemeKind::kSinusoidal: return "sinusoidal";
  }
  return "?";
}

double LoadScheme::factor(int bus, int hour, int num_buses) const {
  switch (kind) {
    case LoadSchemeKind::kUniform:
      return scale;
    case LoadSchemeKind::kSinusoidal:
      return 1 + amplitude * std::sin(2 * M_PI * hour / 24.0);
    case LoadSchemeKind::kPerBusRandom: {
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> u(1 - kLoadEnvelope, 1 + kLoadEnvelope);
      double f = 1;
      for (int b = 0; b <= bus && b < num_buses; ++b) f = u(rng);
      return f;
    }
  }
  return 1;
}

UCInstance apply_load_scheme(const UCInstance& inst, const LoadScheme& s) {
  constexpr double kSlack = 1e-12;
  if (s.kind == LoadSchemeKind::kUniform &&
      std::abs(s.scale - 1) > kLoadEnvelope + kSlack)
    throw ValidationError("uniform scale outside the +/-15% envelope");
  if (s.kind == LoadSchemeKind::kSinusoidal &&
      std::abs(s.amplitude) > kLoadEnvelope + kSlack)
    throw ValidationError("sinusoid amplitude outside the +/-15% envelope");
  UCInstance out = inst;
  const int n = inst.num_buses();
  for (int t = 0; t < inst.horizon; ++t) {
    const int hour = t < static_cast<int>(inst.hour_labels.size())
                         ? inst.hour_labels[t]
                         : t + 1;
    for (int b = 0; b < n; ++b) {
      const double f = s.factor(b, hour, n);
      out.pd(b, t) *= f;
      out.qd(b, t) *= f;
    }
  }
  return out;
}

}  // namespace acnn
