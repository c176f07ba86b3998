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


#include "acnn/uc_builder.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "acnn/errors.h"

namespace acnn {

namespace {

constexpr double kLooseBound = 1e3;

std::string idx(const char* base, int g, int t) {
  return std::string(base) + "_g" + std::to_string(g) + "_t" +
         std::to_string(t);
}

bool limited(double lim) { return std::isfinite(lim) && std::abs(lim) < 2 * M_PI - 1e-12; }

}  // namespace

std::vector<Term> CoreUc::p_terms(const UCInstance& inst, int bus,
                                  int t) const {
  std::vector<Term> terms;
  for (int g = 0; g < num_gens; ++g) {
    const UcGenerator& gen = inst.gens[g];
    if (gen.bus != bus || gen.condenser) continue;
    if (gen.pmin != 0) terms.push_back({y[g][t], gen.pmin});
    terms.push_back({pdelta[g][t], 1.0});
  }
  return terms;
}

std::vector<Term> CoreUc::q_terms(const UCInstance& inst, int bus,
                                  int t) const {
  std::vector<Term> terms;
  for (int g = 0; g < num_gens; ++g)
    if (inst.gens[g].bus == bus && q[g][t] >= 0) terms.push_back({q[g][t], 1.0});
  return terms;
}

CoreUc build_core_uc(MILPModel& model, const UCInstance& inst,
                     std::vector<std::string>* warnings, bool reactive) {
  validate_uc_instance(inst);
  const int ng = static_cast<int>(inst.gens.size());
  const int nt = inst.horizon;
  CoreUc c;
  c.num_gens = ng;
  c.horizon = nt;
  auto grid = [&] { return std::vector<std::vector<int>>(ng, std::vector<int>(nt, -1)); };
  c.y = grid();
  c.u = grid();
  c.w = grid();
  c.pdelta = grid();
  c.r = grid();
  c.q = grid();

  for (int g = 0; g < ng; ++g) {
    const UcGenerator& gen = inst.gens[g];
    for (int t = 0; t < nt; ++t) {
      if (gen.condenser) {
        if (!reactive) continue;
        c.q[g][t] = model.add_variable(idx("q", g, t), gen.qmin, gen.qmax,
                                       VarKind::kContinuous, {"q", g, t});
        continue;
      }
      c.y[g][t] = model.add_binary(idx("y", g, t), {"y", g, t}, kCommitPriority);
      c.u[g][t] = model.add_binary(idx("u", g, t), {"u", g, t}, kCommitPriority);
      c.w[g][t] = model.add_binary(idx("w", g, t), {"w", g, t}, kCommitPriority);
      const double span = gen.pmax - gen.pmin;
      c.pdelta[g][t] = model.add_variable(idx("pd", g, t), 0, span,
                                          VarKind::kContinuous, {"pdelta", g, t});
      c.r[g][t] = model.add_variable(idx("r", g, t), 0, span,
                                     VarKind::kContinuous, {"r", g, t});
      if (!reactive) continue;
      c.q[g][t] = model.add_variable(idx("q", g, t), std::min(gen.qmin, 0.0),
                                     std::max(gen.qmax, 0.0),
                                     VarKind::kContinuous, {"q", g, t});
    }
  }

  for (int g = 0; g < ng; ++g) {
    const UcGenerator& gen = inst.gens[g];
    if (gen.condenser) continue;
    const double span = gen.pmax - gen.pmin;
    // History value of w (or u) at period t' given as 0-based t'.
    auto w_at = [&](int t) { return t >= 0 ? -1 : gen.w_hist(t + 1); };
    auto u_at = [&](int t) { return t >= 0 ? -1 : gen.u_hist(t + 1); };

    for (int t = 0; t < nt; ++t) {
      // Minimum up time.
      std::vector<Term> terms{{c.y[g][t], -1.0}};
      double rhs = 0;
      for (int s = t - gen.min_up + 1; s <= t; ++s) {
        if (s >= 0) terms.push_back({c.u[g][s], 1.0});
        else rhs -= u_at(s);
      }
      model.add_constraint(idx("minup", g, t), terms, Sense::kLe, rhs);

      // Minimum down time.
      terms = {{c.y[g][t], 1.0}};
      rhs = 1;
      for (int s = t - gen.min_down + 1; s <= t; ++s) {
        if (s >= 0) terms.push_back({c.w[g][s], 1.0});
        else rhs -= w_at(s);
      }
      model.add_constraint(idx("mindown", g, t), terms, Sense::kLe, rhs);

      // Status transitions.
      terms = {{c.y[g][t], 1.0}, {c.u[g][t], -1.0}, {c.w[g][t], 1.0}};
      rhs = 0;
      if (t > 0) terms.push_back({c.y[g][t - 1], -1.0});
      else rhs = gen.y_hist(0);
      model.add_constraint(idx("status", g, t), terms, Sense::kEq, rhs);

      // Startup and shutdown capability.
      const bool has_next = t + 1 < nt;
      terms = {{c.pdelta[g][t], 1.0}, {c.r[g][t], 1.0},
               {c.y[g][t], -span},
               {c.u[g][t], gen.pmax - gen.startup_limit}};
      if (gen.min_up >= 2) {
        if (has_next)
          terms.push_back({c.w[g][t + 1], gen.pmax - gen.shutdown_limit});
        model.add_constraint(idx("sucap", g, t), terms, Sense::kLe, 0);
      } else {
        model.add_constraint(idx("sucap", g, t), terms, Sense::kLe, 0);
        terms = {{c.pdelta[g][t], 1.0}, {c.y[g][t], -span}};
        if (has_next)
          terms.push_back({c.w[g][t + 1], gen.pmax - gen.shutdown_limit});
        model.add_constraint(idx("sdcap", g, t), terms, Sense::kLe, 0);
      }

      // Ramping.
      const double prev0 =
          gen.initially_on() ? std::max(gen.p_init - gen.pmin, 0.0) : 0.0;
      terms = {{c.pdelta[g][t], 1.0}, {c.r[g][t], 1.0}};
      rhs = gen.ramp_up;
      if (t > 0) terms.push_back({c.pdelta[g][t - 1], -1.0});
      else rhs += prev0;
      model.add_constraint(idx("rampup", g, t), terms, Sense::kLe, rhs);
      terms = {{c.pdelta[g][t], -1.0}};
      rhs = gen.ramp_down;
      if (t > 0) terms.push_back({c.pdelta[g][t - 1], 1.0});
      else rhs -= prev0;
      model.add_constraint(idx("rampdown", g, t), terms, Sense::kLe, rhs);

      if (reactive) {
        model.add_constraint(idx("qmax", g, t),
                             {{c.q[g][t], 1.0}, {c.y[g][t], -gen.qmax}},
                             Sense::kLe, 0);
        model.add_constraint(idx("qmin", g, t),
                             {{c.q[g][t], 1.0}, {c.y[g][t], -gen.qmin}},
                             Sense::kGe, 0);
      }

      // Production cost epigraph.
      model.add_objective(c.y[g][t], gen.no_load_cost);
      if (gen.cost.size() == 1) {
        model.add_objective(c.pdelta[g][t], gen.cost[0].slope);
      } else if (!gen.cost.empty()) {
        double covered = 0;
        for (const CostSegment& s : gen.cost) covered += s.width;
        terms = {{c.pdelta[g][t], -1.0}};
        for (size_t k = 0; k < gen.cost.size(); ++k) {
          double width = gen.cost[k].width;
          if (k + 1 == gen.cost.size() && covered < span)
            width += span - covered;
          int d = model.add_variable(
              idx(("seg" + std::to_string(k)).c_str(), g, t), 0, width,
              VarKind::kContinuous, {"seg", g, t});
          model.add_objective(d, gen.cost[k].slope);
          terms.push_back({d, 1.0});
        }
        model.add_constraint(idx("segsum", g, t), terms, Sense::kEq, 0);
      }

      // Startup cost tiers.
      const int tiers = static_cast<int>(gen.startup.size());
      if (tiers == 1) {
        model.add_objective(c.u[g][t], gen.startup[0].cost);
      } else if (tiers > 1) {
        std::vector<Term> pick{{c.u[g][t], -1.0}};
        for (int s = 0; s < tiers; ++s) {
          int d = model.add_variable(
              idx(("su" + std::to_string(s)).c_str(), g, t), 0, 1,
              VarKind::kContinuous, {"su_tier", g, t});
          model.add_objective(d, gen.startup[s].cost);
          pick.push_back({d, 1.0});
          if (s + 1 == tiers) continue;
          std::vector<Term> window{{d, 1.0}};
          double wrhs = 0;
          for (int i = gen.startup[s].lag; i < gen.startup[s + 1].lag; ++i) {
            int tt = t - i;
            if (tt >= 0) window.push_back({c.w[g][tt], -1.0});
            else wrhs += w_at(tt);
          }
          model.add_constraint(
              idx(("sutier" + std::to_string(s)).c_str(), g, t), window,
              Sense::kLe, wrhs);
        }
        model.add_constraint(idx("supick", g, t), pick, Sense::kEq, 0);
      }
    }
    if (gen.initially_on() && gen.p_init > gen.shutdown_limit && nt > 0)
      model.add_constraint(idx("sdinit", g, 0), {{c.w[g][0], 1.0}},
                           Sense::kLe, 0);
  }

  double headroom = 0;
  for (const UcGenerator& gen : inst.gens) headroom += gen.pmax - gen.pmin;
  for (int t = 0; t < nt; ++t) {
    std::vector<Term> terms;
    for (int g = 0; g < ng; ++g)
      if (c.r[g][t] >= 0) terms.push_back({c.r[g][t], 1.0});
    const double need = inst.reserve.empty() ? 0.0 : inst.reserve[t];
    model.add_constraint("reserve_t" + std::to_string(t), terms, Sense::kGe,
                         need);
    if (need > headroom + 1e-12 && warnings)
      warnings->push_back("period " + std::to_string(t) +
                          ": reserve exceeds total committable headroom");
  }
  return c;
}

std::string to_string(FormulationKind k) {
  switch (k) {
    case FormulationKind::kNeural: return "nn";
    case FormulationKind::kLinear: return "linear";
    case FormulationKind::kDc: return "dc";
  }
  return "?";
}

FormulationKind parse_formulation(const std::string& s) {
  if (s == "nn") return FormulationKind::kNeural;
  if (s == "linear") return FormulationKind::kLinear;
  if (s == "dc") return FormulationKind::kDc;
  throw ValidationError("unknown formulation '" + s + "'");
}

namespace {

// Ties the fragment's injection outputs to the generator variables.
void add_balance(UcFormulation& f, const UCInstance& inst, const Network& net,
                 int t) {
  const NnFragment& frag = f.periods[t];
  OutputLayout out{net.n, net.m};
  for (int b = 0; b < net.n; ++b) {
    std::vector<Term> terms{{frag.y[out.p(b)], 1.0}};
    for (Term tm : f.core.p_terms(inst, b, t)) terms.push_back({tm.var, -tm.coef});
    f.model.add_constraint("pbal_b" + std::to_string(b) + "_t" + std::to_string(t),
                           terms, Sense::kEq, -inst.pd(b, t));
    terms = {{frag.y[out.q(b)], 1.0}};
    for (Term tm : f.core.q_terms(inst, b, t)) terms.push_back({tm.var, -tm.coef});
    f.model.add_constraint("qbal_b" + std::to_string(b) + "_t" + std::to_string(t),
                           terms, Sense::kEq, -inst.qd(b, t));
  }
}

void check_dims(const UCInstance& inst, const Network& net, int in, int out) {
  if (inst.num_buses() != net.n)
    throw DimensionError("instance bus count differs from network");
  if (in != net.input_dim() || out != net.output_dim())
    throw DimensionError("surrogate dimensions do not match the network");
}

}  // namespace

UcFormulation build_nn_ac_uc(const UCInstance& inst, const Network& net,
                             const CompactPWLModel& nn,
                             const BigMBounds& bounds, const BoundBox& box) {
  check_dims(inst, net, nn.input_dim(), nn.output_dim());
  UcFormulation f;
  f.kind = FormulationKind::kNeural;
  f.model = MILPModel("nn_ac_uc");
  f.core = build_core_uc(f.model, inst, &f.warnings);
  for (int t = 0; t < inst.horizon; ++t) {
    std::string prefix = "t" + std::to_string(t) + "_";
    f.periods.push_back(encode_relu_network(f.model, nn, bounds, box, prefix,
                                            t, kReluPriority));
    add_angle_rows(f.model, f.periods.back(), box, prefix);
    add_balance(f, inst, net, t);
  }
  return f;
}

UcFormulation build_l_ac_uc(const UCInstance& inst, const Network& net,
                            const LinearPFModel& lin, const BoundBox& box) {
  check_dims(inst, net, static_cast<int>(lin.jstar.cols()),
             static_cast<int>(lin.jstar.rows()));
  UcFormulation f;
  f.kind = FormulationKind::kLinear;
  f.model = MILPModel("l_ac_uc");
  f.core = build_core_uc(f.model, inst, &f.warnings);
  for (int t = 0; t < inst.horizon; ++t) {
    std::string prefix = "t" + std::to_string(t) + "_";
    f.periods.push_back(encode_linear_model(f.model, lin, box, prefix, t));
    add_angle_rows(f.model, f.periods.back(), box, prefix);
    add_balance(f, inst, net, t);
  }
  return f;
}

UcFormulation build_dc_uc(const UCInstance& inst, const Network& net) {
  if (inst.num_buses() != net.n)
    throw DimensionError("instance bus count differs from network");
  for (int l = 0; l < net.m; ++l)
    if (!(net.reactance[l] > 0))
      throw ValidationError("branch " + std::to_string(l) +
                            " has nonpositive reactance");
  UcFormulation f;
  f.kind = FormulationKind::kDc;
  f.model = MILPModel("dc_uc");
  f.core = build_core_uc(f.model, inst, &f.warnings, false);
  MILPModel& model = f.model;
  for (int t = 0; t < inst.horizon; ++t) {
    const std::string ts = "_t" + std::to_string(t);
    std::vector<int> th(net.n), pf(net.m);
    for (int b = 0; b < net.n; ++b) {
      const double lim = b == net.ref ? 0.0 : 2 * M_PI;
      th[b] = model.add_variable("theta_b" + std::to_string(b) + ts, -lim, lim,
                                 VarKind::kContinuous, {"theta", b, t});
    }
    for (int l = 0; l < net.m; ++l) {
      const double cap = std::isfinite(net.smax[l]) ? net.smax[l] : kLooseBound;
      pf[l] = model.add_variable("pft_l" + std::to_string(l) + ts, -cap, cap,
                                 VarKind::kContinuous, {"pft", l, t});
      const double bl = 1.0 / net.reactance[l];
      const std::string ls = "_l" + std::to_string(l) + ts;
      model.add_constraint("dcflow" + ls,
                           {{pf[l], 1.0}, {th[net.from[l]], -bl},
                            {th[net.to[l]], bl}},
                           Sense::kEq, 0);
      const std::vector<Term> diff{{th[net.from[l]], 1.0}, {th[net.to[l]], -1.0}};
      if (limited(net.angmin[l]))
        model.add_constraint("angmin" + ls, diff, Sense::kGe, net.angmin[l]);
      if (limited(net.angmax[l]))
        model.add_constraint("angmax" + ls, diff, Sense::kLe, net.angmax[l]);
    }
    for (int b = 0; b < net.n; ++b) {
      std::vector<Term> terms;
      for (int l : net.lines_from[b]) terms.push_back({pf[l], 1.0});
      for (int l : net.lines_to[b]) terms.push_back({pf[l], -1.0});
      for (Term tm : f.core.p_terms(inst, b, t))
        terms.push_back({tm.var, -tm.coef});
      model.add_constraint("pbal_b" + std::to_string(b) + ts, terms,
                           Sense::kEq, -inst.pd(b, t));
    }
    f.theta.push_back(std::move(th));
    f.pft.push_back(std::move(pf));
  }
  return f;
}

namespace {

// Forward pass that keeps each unit in its current state until its minimum
// up/down time has elapsed.
void repair_unit(const UcGenerator& gen, int horizon, std::vector<int>& y) {
  bool on = gen.initially_on();
  int held = std::abs(gen.initial_status);
  for (int t = 0; t < horizon; ++t) {
    bool want = y[t] != 0;
    if (want != on) {
      const int need = on ? gen.min_up : gen.min_down;
      const bool blocked_sd =
          t == 0 && on && gen.p_init > gen.shutdown_limit;
      if (held < need || blocked_sd) want = on;
    }
    if (want == on) {
      ++held;
    } else {
      on = want;
      held = 1;
    }
    y[t] = on ? 1 : 0;
  }
}

}  // namespace

RoundingRepair unit_logic_repair(const UcFormulation& f,
                                 const UCInstance& inst) {
  CoreUc core = f.core;
  std::vector<NnFragment> frags = f.periods;
  std::vector<UcGenerator> gens = inst.gens;
  return [core, frags, gens](const MILPModel&, std::vector<double>& x) {
    for (int g = 0; g < core.num_gens; ++g) {
      if (gens[g].condenser) continue;
      std::vector<int> y(core.horizon);
      for (int t = 0; t < core.horizon; ++t)
        y[t] = x[core.y[g][t]] > 0.5 ? 1 : 0;
      repair_unit(gens[g], core.horizon, y);
      int prev = gens[g].y_hist(0);
      for (int t = 0; t < core.horizon; ++t) {
        x[core.y[g][t]] = y[t];
        x[core.u[g][t]] = y[t] > prev ? 1 : 0;
        x[core.w[g][t]] = y[t] < prev ? 1 : 0;
        prev = y[t];
      }
    }
    for (const NnFragment& frag : frags)
      for (size_t i = 0; i < frag.beta.size(); ++i)
        if (frag.beta[i] >= 0 && frag.zhat[i] >= 0)
          x[frag.beta[i]] = x[frag.zhat[i]] > 0 ? 1 : 0;
    return true;
  };
}

void check_schedule_logic(const UCInstance& inst, const UCSchedule& s) {
  const int ng = static_cast<int>(inst.gens.size());
  if (s.num_gens != ng || s.horizon != inst.horizon)
    throw DimensionError("schedule dimensions do not match the instance");
  auto fail = [](int g, int t, const std::string& what) {
    throw ScheduleLogicError("unit " + std::to_string(g) + ", period " +
                             std::to_string(t) + ": " + what);
  };
  for (int g = 0; g < ng; ++g) {
    const UcGenerator& gen = inst.gens[g];
    if (gen.condenser) continue;
    auto u_at = [&](int t) { return t >= 0 ? s.u(g, t) : gen.u_hist(t + 1); };
    auto w_at = [&](int t) { return t >= 0 ? s.w(g, t) : gen.w_hist(t + 1); };
    for (int t = 0; t < s.horizon; ++t) {
      for (int v : {s.y(g, t), s.u(g, t), s.w(g, t)})
        if (v != 0 && v != 1) fail(g, t, "non-binary status");
      const int prev = t > 0 ? s.y(g, t - 1) : gen.y_hist(0);
      if (s.y(g, t) - prev != s.u(g, t) - s.w(g, t))
        fail(g, t, "status change inconsistent with startup/shutdown");
      if (s.u(g, t) + s.w(g, t) > 1) fail(g, t, "startup and shutdown together");
      int ups = 0, downs = 0;
      for (int k = t - gen.min_up + 1; k <= t; ++k) ups += u_at(k);
      for (int k = t - gen.min_down + 1; k <= t; ++k) downs += w_at(k);
      if (ups > s.y(g, t)) fail(g, t, "minimum up time violated");
      if (downs > 1 - s.y(g, t)) fail(g, t, "minimum down time violated");
    }
    if (s.horizon > 0 && gen.initially_on() &&
        gen.p_init > gen.shutdown_limit && s.w(g, 0) != 0)
      fail(g, 0, "shutdown from above the shutdown limit");
  }
}

double schedule_cost(const UCInstance& inst, const UCSchedule& s) {
  double total = 0;
  for (int g = 0; g < s.num_gens; ++g) {
    const UcGenerator& gen = inst.gens[g];
    if (gen.condenser) continue;
    for (int t = 0; t < s.horizon; ++t) {
      if (s.y(g, t)) total += gen.no_load_cost;
      total += gen.production_cost(s.pdelta(g, t));
      if (!s.u(g, t)) continue;
      int down = 0;
      int k = t - 1;
      while (k >= 0 && s.y(g, k) == 0) {
        ++down;
        --k;
      }
      if (k < 0 && !gen.initially_on()) down += std::abs(gen.initial_status);
      total += gen.startup_cost(down);
    }
  }
  return total;
}

UCSchedule extract_schedule(const UcFormulation& f, const UCInstance& inst,
                            const Network& net, const std::vector<double>& x,
                            double solver_objective) {
  const CoreUc& c = f.core;
  UCSchedule s;
  s.num_gens = c.num_gens;
  s.horizon = c.horizon;
  s.y.setZero(c.num_gens, c.horizon);
  s.u = s.y;
  s.w = s.y;
  s.pdelta.setZero(c.num_gens, c.horizon);
  s.r = s.pdelta;
  s.q = s.pdelta;
  auto binary = [&](int j, int g, int t) {
    const double v = x.at(j);
    if (std::abs(v - std::round(v)) > 1e-6)
      throw SolverError(SolverError::Kind::kNumerical,
                        "fractional commitment value for unit " +
                            std::to_string(g) + " at period " +
                            std::to_string(t));
    return static_cast<int>(std::round(v));
  };
  for (int g = 0; g < c.num_gens; ++g) {
    for (int t = 0; t < c.horizon; ++t) {
      if (c.q[g][t] >= 0) s.q(g, t) = x.at(c.q[g][t]);
      if (inst.gens[g].condenser) {
        s.y(g, t) = 1;
        continue;
      }
      s.y(g, t) = binary(c.y[g][t], g, t);
      s.u(g, t) = binary(c.u[g][t], g, t);
      s.w(g, t) = binary(c.w[g][t], g, t);
      s.pdelta(g, t) = std::max(0.0, x.at(c.pdelta[g][t]));
      s.r(g, t) = std::max(0.0, x.at(c.r[g][t]));
    }
  }
  OutputLayout out{net.n, net.m};
  for (int t = 0; t < c.horizon; ++t) {
    Eigen::VectorXd sft(net.m), stf(net.m);
    if (f.kind == FormulationKind::kDc) {
      Eigen::VectorXd th(net.n);
      for (int b = 0; b < net.n; ++b) th[b] = x.at(f.theta[t][b]);
      for (int l = 0; l < net.m; ++l) {
        sft[l] = x.at(f.pft[t][l]);
        stf[l] = -sft[l];
      }
      s.theta.push_back(th);
      s.v.push_back(Eigen::VectorXd::Ones(net.n));
    } else {
      const NnFragment& frag = f.periods[t];
      Eigen::VectorXd xin(frag.x.size());
      for (size_t i = 0; i < frag.x.size(); ++i) xin[i] = x.at(frag.x[i]);
      Eigen::VectorXd v, th;
      unpack_input(xin, net, v, th);
      s.v.push_back(v);
      s.theta.push_back(th);
      for (int l = 0; l < net.m; ++l) {
        sft[l] = x.at(frag.y[out.sft(l)]);
        stf[l] = x.at(frag.y[out.stf(l)]);
      }
    }
    s.sft.push_back(sft);
    s.stf.push_back(stf);
  }
  check_schedule_logic(inst, s);
  s.objective = schedule_cost(inst, s);
  if (std::abs(s.objective - solver_objective) >
      1e-6 * std::max(1.0, std::abs(solver_objective)))
    throw ValidationError("recomputed schedule cost " +
                          std::to_string(s.objective) +
                          " differs from solver objective " +
                          std::to_string(solver_objective));
  return s;
}

void write_schedule(std::ostream& os, const UCSchedule& s) {
  os << "acnn-schedule 1\n";
  os << "gens " << s.num_gens << " horizon " << s.horizon << " periods "
     << s.v.size() << "\n";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", s.objective);
  os << "objective " << buf << "\n";
  write_matrix(os, "y", s.y.cast<double>());
  write_matrix(os, "u", s.u.cast<double>());
  write_matrix(os, "w", s.w.cast<double>());
  write_matrix(os, "pdelta", s.pdelta);
  write_matrix(os, "r", s.r);
  write_matrix(os, "q", s.q);
  for (size_t t = 0; t < s.v.size(); ++t) {
    write_matrix(os, "v", s.v[t].transpose());
    write_matrix(os, "theta", s.theta[t].transpose());
    write_matrix(os, "sft", s.sft[t].transpose());
    write_matrix(os, "stf", s.stf[t].transpose());
  }
}

UCSchedule read_schedule(std::istream& is) {
  std::string tag, key;
  int version = 0;
  if (!(is >> tag >> version) || tag != "acnn-schedule" || version != 1)
    throw ParseError("not an acnn-schedule 1 document", 1);
  UCSchedule s;
  size_t periods = 0;
  std::string k1, k2, k3;
  if (!(is >> k1 >> s.num_gens >> k2 >> s.horizon >> k3 >> periods) ||
      k1 != "gens" || k2 != "horizon" || k3 != "periods")
    throw ParseError("bad schedule dimensions line", 2);
  if (!(is >> key >> s.objective) || key != "objective")
    throw ParseError("missing objective", 3);
  auto expect = [&](const char* name, int rows, int cols) {
    std::string got;
    Eigen::MatrixXd a = read_matrix(is, &got);
    if (got != name || a.rows() != rows || a.cols() != cols)
      throw ParseError(std::string("expected matrix ") + name, 0);
    return a;
  };
  auto binary = [](const Eigen::MatrixXd& a) {
    Eigen::MatrixXi out = a.array().round().cast<int>();
    return out;
  };
  s.y = binary(expect("y", s.num_gens, s.horizon));
  s.u = binary(expect("u", s.num_gens, s.horizon));
  s.w = binary(expect("w", s.num_gens, s.horizon));
  s.pdelta = expect("pdelta", s.num_gens, s.horizon);
  s.r = expect("r", s.num_gens, s.horizon);
  s.q = expect("q", s.num_gens, s.horizon);
  for (size_t t = 0; t < periods; ++t) {
    std::string got;
    Eigen::MatrixXd v = read_matrix(is, &got);
    if (got != "v" || v.rows() != 1) throw ParseError("expected matrix v", 0);
    const int n = static_cast<int>(v.cols());
    s.v.push_back(v.row(0).transpose());
    s.theta.push_back(expect("theta", 1, n).row(0).transpose());
    Eigen::MatrixXd sft = read_matrix(is, &got);
    if (got != "sft" || sft.rows() != 1) throw ParseError("expected matrix sft", 0);
    s.sft.push_back(sft.row(0).transpose());
    s.stf.push_back(expect("stf", 1, static_cast<int>(sft.cols())).row(0).transpose());
  }
  return s;
}

ModelStats model_stats(const MILPModel& model) {
  ModelStats st;
  st.variables = model.num_variables();
  st.constraints = model.num_constraints();
  for (const Variable& v : model.variables()) {
    if (v.kind != VarKind::kBinary) continue;
    ++st.binaries;
    if (v.tag.group == "beta") ++st.relu_binaries;
    if (v.tag.group == "y" || v.tag.group == "u" || v.tag.group == "w")
      ++st.commit_binaries;
  }
  for (const Constraint& c : model.constraints())
    st.nonzeros += static_cast<int>(c.terms.size());
  return st;
}

void write_stats(std::ostream& os, const ModelStats& s) {
  os << "variables " << s.variables << "\n"
     << "binaries " << s.binaries << "\n"
     << "relu_binaries " << s.relu_binaries << "\n"
     << "commit_binaries " << s.commit_binaries << "\n"
     << "constraints " << s.constraints << "\n"
     << "nonzeros " << s.nonzeros << "\n";
}

}  // namespace acnn
