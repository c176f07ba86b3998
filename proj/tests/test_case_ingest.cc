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

#include "doctest.h"

#include "acnn/case_ingest.h"
#include "acnn/errors.h"
#include "support.h"

using namespace acnn;
using namespace acnn::testing;

TEST_SUITE("case_ingest") {

TEST_CASE("two-bus case converts to per unit") {
  RawCase c = parse_matpower(kTwoBusCase);
  CHECK(c.buses.size() == 2);
  CHECK(c.branches.size() == 1);
  CHECK(c.ref_index == 0);
  CHECK(c.branches[0].rate_a == doctest::Approx(1.0));
  CHECK(c.buses[1].pd == doctest::Approx(1.0));
  CHECK(c.buses[1].qd == doctest::Approx(0.2));
}

TEST_CASE("bundled 14-bus case matches its table row counts") {
  const std::string text = slurp(data_path("case14_ieee.m"));
  auto rows_in = [&](const std::string& table) {
    size_t at = text.find(table + " = [");
    size_t end = text.find("];", at);
    int rows = 0;
    size_t pos = text.find('\n', at) + 1;
    while (pos < end) {
      size_t nl = text.find('\n', pos);
      std::string line = text.substr(pos, nl - pos);
      if (line.find_first_of("0123456789") != std::string::npos &&
          line.find('%') == std::string::npos)
        ++rows;
      pos = nl + 1;
    }
    return rows;
  };
  RawCase c = parse_matpower(text);
  CHECK(c.buses.size() == 14);
  CHECK(static_cast<int>(c.branches.size()) == rows_in("mpc.branch"));
  CHECK(static_cast<int>(c.gens.size()) == rows_in("mpc.gen"));
}

TEST_CASE("missing or duplicate reference bus is rejected") {
  std::string text = kTwoBusCase;
  std::string no_ref = text;
  no_ref.replace(no_ref.find("1 3 0"), 5, "1 1 0");
  CHECK_THROWS_AS(parse_matpower(no_ref), ValidationError);
  std::string two_ref = text;
  two_ref.replace(two_ref.find("2 1 100"), 7, "2 3 100");
  CHECK_THROWS_AS(parse_matpower(two_ref), ValidationError);
}

TEST_CASE("nonpositive base and malformed rows are reported") {
  std::string text = kTwoBusCase;
  std::string bad_base = text;
  bad_base.replace(bad_base.find("= 100;"), 6, "= 0;");
  CHECK_THROWS_AS(parse_matpower(bad_base), ValidationError);
  std::string bad_row = text;
  bad_row.replace(bad_row.find("2 1 100 20"), 10, "2 1 abc 20");
  try {
    parse_matpower(bad_row);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 6);
  }
}

TEST_CASE("derating scales rateA only") {
  RawCase c = parse_matpower(kTwoBusCase);
  RawCase d = derate_thermal_limits(c, 0.30);
  CHECK(d.branches[0].rate_a == doctest::Approx(0.70));
  CHECK(d.branches[0].x == c.branches[0].x);
  RawCase same = derate_thermal_limits(c, 0.0);
  CHECK(same.branches[0].rate_a == c.branches[0].rate_a);
  CHECK_THROWS_AS(derate_thermal_limits(c, 1.0), ValidationError);
  CHECK_THROWS_AS(derate_thermal_limits(c, -0.1), ValidationError);
}

TEST_CASE("MATPOWER round trip is field identical") {
  RawCase c = case14(0.0);
  RawCase r = parse_matpower(write_matpower(c));
  REQUIRE(r.buses.size() == c.buses.size());
  REQUIRE(r.branches.size() == c.branches.size());
  REQUIRE(r.gens.size() == c.gens.size());
  CHECK(r.base_mva == c.base_mva);
  for (size_t i = 0; i < c.buses.size(); ++i) {
    CHECK(r.buses[i].pd == c.buses[i].pd);
    CHECK(r.buses[i].qd == c.buses[i].qd);
    CHECK(r.buses[i].bs == c.buses[i].bs);
    CHECK(r.buses[i].vmax == c.buses[i].vmax);
  }
  for (size_t i = 0; i < c.branches.size(); ++i) {
    CHECK(r.branches[i].x == c.branches[i].x);
    CHECK(r.branches[i].b == c.branches[i].b);
    CHECK(r.branches[i].tap == c.branches[i].tap);
    CHECK(r.branches[i].rate_a == c.branches[i].rate_a);
    CHECK(r.branches[i].angmin == c.branches[i].angmin);
  }
  for (size_t i = 0; i < c.gens.size(); ++i) {
    CHECK(r.gens[i].pmax == c.gens[i].pmax);
    CHECK(r.gens[i].cost.coeffs == c.gens[i].cost.coeffs);
  }
}

TEST_CASE("UC instance on the 14-bus case") {
  RawCase c = case14();
  UCInstance inst = uc14(c);
  CHECK(inst.horizon == 24);
  CHECK(inst.gens.size() == 5);
  CHECK(inst.pd.rows() == 14);
  CHECK(inst.pd.cols() == 24);
  // Constant power factor at every loaded bus.
  for (int b = 0; b < inst.num_buses(); ++b) {
    if (c.buses[b].pd == 0) {
      CHECK(inst.qd.row(b).cwiseAbs().maxCoeff() == 0);
      continue;
    }
    const double ratio = c.buses[b].qd / c.buses[b].pd;
    for (int t = 0; t < inst.horizon; ++t)
      CHECK(inst.qd(b, t) == doctest::Approx(inst.pd(b, t) * ratio));
  }
}

TEST_CASE("hourly load override keeps the power factor") {
  RawCase c = parse_matpower(kTwoBusCase);
  c.buses[1].pd = 0.5;
  c.buses[1].qd = 0.1;
  UCInstance inst = load_uc_instance(R"({
    "horizon": 1,
    "loads": [{"bus": 2, "p_mw": [100]}],
    "generators": [{"case_gen": 1}]
  })", c);
  CHECK(inst.pd(1, 0) == doctest::Approx(1.0));
  CHECK(inst.qd(1, 0) == doctest::Approx(0.2));
}

TEST_CASE("defaults fill absent unit parameters") {
  RawCase c = parse_matpower(kTwoBusCase);
  UCInstance inst = load_uc_instance(
      R"({"horizon": 2, "generators": [{"case_gen": 1}]})", c);
  const UcGenerator& g = inst.gens[0];
  CHECK(g.min_up == 1);
  CHECK(g.min_down == 1);
  CHECK(g.startup_limit == doctest::Approx(g.pmax));
  CHECK(g.shutdown_limit == doctest::Approx(g.pmax));
  CHECK(g.ramp_up == doctest::Approx(g.pmax));
  CHECK(g.p_init == 0);
  CHECK_FALSE(g.initially_on());
  CHECK(inst.reserve[0] == 0);
}

TEST_CASE("invalid UC documents are rejected") {
  RawCase c = parse_matpower(kTwoBusCase);
  CHECK_THROWS_AS(load_uc_instance(R"({"horizon": 1, "generators": [
      {"case_gen": 1, "cost_curve": [[50, 30], [50, 20]]}]})", c),
                  ValidationError);
  CHECK_THROWS_AS(load_uc_instance(R"({"horizon": 1, "generators": [
      {"case_gen": 7}]})", c),
                  ValidationError);
  CHECK_THROWS_AS(load_uc_instance(R"({"horizon": 1, "generators": [
      {"case_gen": 1, "ramp_up_mw": -5}]})", c),
                  ValidationError);
  CHECK_THROWS_AS(load_uc_instance(R"({"horizon": 1, "generators": [
      {"case_gen": 1, "min_up_h": 0}]})", c),
                  ValidationError);
  CHECK_THROWS_AS(load_uc_instance(R"({"horizon": 1, "loads": [
      {"bus": 9, "p_mw": [1]}], "generators": [{"case_gen": 1}]})", c),
                  ValidationError);
  CHECK_THROWS_AS(load_uc_instance("{ not json", c), ParseError);
}

TEST_CASE("status history and costs") {
  RawCase c = case14();
  UCInstance inst = uc14(c);
  const UcGenerator& g1 = inst.gens[0];  // on for 8 hours
  CHECK(g1.y_hist(0) == 1);
  CHECK(g1.y_hist(-7) == 1);
  CHECK(g1.y_hist(-8) == 0);
  CHECK(g1.u_hist(-7) == 1);
  const UcGenerator& g3 = inst.gens[2];  // off for 4 hours
  CHECK(g3.y_hist(0) == 0);
  CHECK(g3.w_hist(-3) == 1);
  CHECK(g1.startup_cost(1) == 1000);
  CHECK(g1.startup_cost(4) == 2000);
  CHECK(g1.startup_cost(10) == 2000);
  const double first = g1.cost[0].width;
  CHECK(g1.production_cost(first) ==
        doctest::Approx(first * g1.cost[0].slope));
  CHECK(g1.production_cost(first + 0.1) ==
        doctest::Approx(first * g1.cost[0].slope + 0.1 * g1.cost[1].slope));
}

TEST_CASE("subsampling keeps the chosen periods") {
  RawCase c = case14();
  UCInstance inst = uc14(c);
  UCInstance sub = subsample_hours(inst, {0, 6, 12, 18});
  CHECK(sub.horizon == 4);
  CHECK(sub.hour_labels == std::vector<int>{1, 7, 13, 19});
  CHECK(sub.pd.col(2).isApprox(inst.pd.col(12)));
}

}
