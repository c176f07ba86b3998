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


#include <cmath>
#include <sstream>

#include "doctest.h"

#include "acnn/data_factory.h"
#include "acnn/errors.h"
#include "support.h"

using namespace acnn;
using namespace acnn::testing;

namespace {

struct Fixture {
  RawCase raw = case14();
  Network net = build_network(raw);
  UCInstance inst = uc14(raw);
};

SamplerConfig quick_config() {
  SamplerConfig cfg;
  cfg.outage_draws = 1;
  cfg.max_extra_off = 1;
  return cfg;
}

}  // namespace

TEST_SUITE("data_factory") {

TEST_CASE("base samples only gives one row per hour") {
  Fixture f;
  SamplerConfig cfg;
  cfg.outage_draws = 0;
  cfg.perturb_voltage = false;
  PFDataset ds = collect_dataset(f.net, f.inst, cfg, 1);
  CHECK(ds.size() == 24);
  for (int r = 0; r < ds.size(); ++r) {
    CHECK(ds.meta[r].hour == r);
    CHECK(ds.meta[r].off_gens.empty());
  }
  CHECK(dataset_consistency(f.net, ds) <= 1e-8);
}

TEST_CASE("samples satisfy the network limits") {
  Fixture f;
  UCInstance sub = subsample_hours(f.inst, {0, 11});
  PFDataset ds = collect_dataset(f.net, sub, quick_config(), 5);
  REQUIRE(ds.size() > 2);
  CHECK(dataset_consistency(f.net, ds) <= 1e-8);
  for (int r = 0; r < ds.size(); ++r) {
    Eigen::VectorXd v, th;
    unpack_input(ds.x.row(r).transpose(), f.net, v, th);
    OperatingPoint op = eval_power_flow(f.net, v, th);
    for (int b = 0; b < f.net.n; ++b) {
      CHECK(v(b) >= f.net.vmin(b) - 1e-6);
      CHECK(v(b) <= f.net.vmax(b) + 1e-6);
    }
    for (int l = 0; l < f.net.m; ++l) {
      if (!std::isfinite(f.net.smax(l))) continue;
      CHECK(op.s_ft(l) <= f.net.smax(l) + 1e-6);
      CHECK(op.s_tf(l) <= f.net.smax(l) + 1e-6);
    }
  }
}

TEST_CASE("outage samples record the forced unit") {
  Fixture f;
  UCInstance sub = subsample_hours(f.inst, {5});
  SamplerConfig cfg = quick_config();
  cfg.max_extra_off = 0;
  PFDataset ds = collect_dataset(f.net, sub, cfg, 2);
  int with_outage = 0;
  for (const SampleMeta& m : ds.meta) with_outage += !m.off_gens.empty();
  CHECK(with_outage >= 1);
  for (const SampleMeta& m : ds.meta) CHECK(m.off_gens.size() <= 1);
}

TEST_CASE("collection is deterministic across worker counts") {
  Fixture f;
  UCInstance sub = subsample_hours(f.inst, {3, 17});
  SamplerConfig cfg = quick_config();
  PFDataset a = collect_dataset(f.net, sub, cfg, 9);
  PFDataset b = collect_dataset(f.net, sub, cfg, 9);
  cfg.workers = 2;
  PFDataset c = collect_dataset(f.net, sub, cfg, 9);
  CHECK(a.x == b.x);
  CHECK(a.y == b.y);
  CHECK(a.x == c.x);
  CHECK(a.y == c.y);
  for (int r = 0; r < a.size(); ++r) CHECK(a.meta[r].split == c.meta[r].split);
}

TEST_CASE("test split holds the configured fraction") {
  Fixture f;
  UCInstance sub = subsample_hours(f.inst, {0, 8, 16});
  SamplerConfig cfg = quick_config();
  cfg.test_fraction = 0.25;
  PFDataset ds = collect_dataset(f.net, sub, cfg, 4);
  PFDataset test = ds.subset(Split::kTest), train = ds.subset(Split::kTrain);
  CHECK(test.size() == std::lround(0.25 * ds.size()));
  CHECK(test.size() + train.size() == ds.size());
}

TEST_CASE("too few samples is an error") {
  Fixture f;
  UCInstance sub = subsample_hours(f.inst, {0});
  SamplerConfig cfg;
  cfg.outage_draws = 0;
  cfg.min_samples = 5;
  CHECK_THROWS_AS(collect_dataset(f.net, sub, cfg, 1), ValidationError);
}

TEST_CASE("dataset files round-trip") {
  PFDataset ds;
  ds.n = 2;
  ds.m = 1;
  ds.ref = 0;
  ds.x = Eigen::MatrixXd::Random(3, 3);
  ds.y = Eigen::MatrixXd::Random(3, 6);
  ds.meta.resize(3);
  ds.meta[1].hour = 4;
  ds.meta[1].off_gens = {0, 2};
  ds.meta[1].vmin_shift = 0.01;
  ds.meta[2].split = Split::kTest;
  std::stringstream ss;
  write_dataset(ss, ds);
  PFDataset r = read_dataset(ss);
  CHECK(r.x == ds.x);
  CHECK(r.y == ds.y);
  CHECK(r.meta[1].hour == 4);
  CHECK(r.meta[1].off_gens == std::vector<int>{0, 2});
  CHECK(r.meta[1].vmin_shift == 0.01);
  CHECK(r.meta[2].split == Split::kTest);

  std::stringstream bad("acnn-dataset 1\n2 1 0 3\n");
  CHECK_THROWS_AS(read_dataset(bad), ParseError);
}

TEST_CASE("uniform scheme scales every load") {
  Fixture f;
  UCInstance s = apply_load_scheme(f.inst, {LoadSchemeKind::kUniform, 1.10});
  CHECK((s.pd - 1.10 * f.inst.pd).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((s.qd - 1.10 * f.inst.qd).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("sinusoid peaks at hour six") {
  LoadScheme s{LoadSchemeKind::kSinusoidal, 1.0, 0.15};
  CHECK(s.factor(0, 6, 14) == doctest::Approx(1.15).epsilon(1e-12));
  CHECK(s.factor(3, 18, 14) == doctest::Approx(0.85).epsilon(1e-12));
  Fixture f;
  UCInstance flat = apply_load_scheme(f.inst, {LoadSchemeKind::kSinusoidal, 1.0, 0.0});
  CHECK(flat.pd == f.inst.pd);
}

TEST_CASE("per-bus draws stay in the envelope and keep power factor") {
  Fixture f;
  LoadScheme s{LoadSchemeKind::kPerBusRandom, 1.0, 0.0, 77};
  UCInstance out = apply_load_scheme(f.inst, s);
  for (int b = 0; b < f.net.n; ++b) {
    const double k = s.factor(b, 1, f.net.n);
    CHECK(k >= 0.85);
    CHECK(k <= 1.15);
    for (int t = 0; t < f.inst.horizon; ++t) {
      CHECK(out.pd(b, t) == doctest::Approx(k * f.inst.pd(b, t)).epsilon(1e-12));
      if (f.inst.pd(b, t) != 0)
        CHECK(out.qd(b, t) / out.pd(b, t) ==
              doctest::Approx(f.inst.qd(b, t) / f.inst.pd(b, t)).epsilon(1e-12));
    }
  }
  CHECK(s.factor(4, 1, 14) == s.factor(4, 20, 14));
}

TEST_CASE("schemes outside the envelope are rejected") {
  Fixture f;
  CHECK_THROWS_AS(apply_load_scheme(f.inst, {LoadSchemeKind::kUniform, 1.2}),
                  ValidationError);
  CHECK_THROWS_AS(
      apply_load_scheme(f.inst, {LoadSchemeKind::kSinusoidal, 1.0, -0.2}),
      ValidationError);
}

TEST_CASE("dispatch for an hour turns off the listed units") {
  Fixture f;
  DispatchSpec d = dispatch_for_hour(f.net, f.inst, 2, {1});
  CHECK_FALSE(d.gens[1].on);
  CHECK(d.gens[0].on);
  CHECK(d.pd == f.inst.pd.col(2));
  CHECK_THROWS_AS(dispatch_for_hour(f.net, f.inst, 24), ValidationError);
}

}
