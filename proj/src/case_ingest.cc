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

#include "acnn/case_ingest.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "acnn/errors.h"
#include "json.hpp"

namespace acnn {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDeg = std::numbers::pi / 180.0;

struct TableRow {
  int line;
  std::vector<double> values;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view tok, int line) {
  if (tok == "Inf" || tok == "inf") return kInf;
  if (tok == "-Inf" || tok == "-inf") return -kInf;
  double v = 0;
  const char* first = tok.data();
  if (!tok.empty() && tok.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError("malformed number '" + std::string(tok) + "'", line);
  }
  return v;
}

// Splits a table body fragment into rows. Rows end at ';' or end of line.
void split_rows(std::string_view body, int line, std::vector<TableRow>& out) {
  size_t start = 0;
  while (start <= body.size()) {
    size_t semi = body.find(';', start);
    std::string_view chunk = body.substr(
        start, semi == std::string_view::npos ? std::string_view::npos
                                              : semi - start);
    chunk = trim(chunk);
    if (!chunk.empty()) {
      TableRow row{line, {}};
      size_t i = 0;
      while (i < chunk.size()) {
        while (i < chunk.size() &&
               (std::isspace(static_cast<unsigned char>(chunk[i])) ||
                chunk[i] == ','))
          ++i;
        size_t j = i;
        while (j < chunk.size() &&
               !std::isspace(static_cast<unsigned char>(chunk[j])) &&
               chunk[j] != ',')
          ++j;
        if (j > i) row.values.push_back(parse_number(chunk.substr(i, j - i), line));
        i = j;
      }
      out.push_back(std::move(row));
    }
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
}

struct CaseTables {
  std::string name;
  double base_mva = -1;
  int base_line = 0;
  std::map<std::string, std::vector<TableRow>> tables;
};

CaseTables tokenize_case(std::string_view text) {
  CaseTables out;
  std::string current;  // table being read, empty outside tables
  int line_no = 0;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                       : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    ++line_no;
    if (size_t pct = line.find('%'); pct != std::string_view::npos)
      line = line.substr(0, pct);
    line = trim(line);
    if (line.empty()) continue;

    if (!current.empty()) {
      size_t close = line.find(']');
      std::string_view body = line.substr(0, close);
      split_rows(body, line_no, out.tables[current]);
      if (close != std::string_view::npos) current.clear();
      continue;
    }
    if (line.starts_with("function")) {
      size_t eq = line.find('=');
      if (eq != std::string_view::npos)
        out.name = std::string(trim(line.substr(eq + 1)));
      continue;
    }
    if (!line.starts_with("mpc.")) continue;
    size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("expected '=' in assignment", line_no);
    std::string key(trim(line.substr(4, eq - 4)));
    std::string_view rhs = trim(line.substr(eq + 1));
    if (key == "baseMVA") {
      if (!rhs.empty() && rhs.back() == ';') rhs.remove_suffix(1);
      out.base_mva = parse_number(trim(rhs), line_no);
      out.base_line = line_no;
    } else if (rhs.starts_with("[")) {
      out.tables[key];  // present even when empty
      rhs.remove_prefix(1);
      size_t close = rhs.find(']');
      split_rows(rhs.substr(0, close), line_no, out.tables[key]);
      if (close == std::string_view::npos) current = key;
    }
  }
  if (!current.empty())
    throw ParseError("unterminated table mpc." + current, line_no);
  return out;
}

void require_columns(const TableRow& row, size_t n, const char* table) {
  if (row.values.size() < n) {
    throw ParseError(std::string("mpc.") + table + " row has " +
                         std::to_string(row.values.size()) +
                         " columns, expected at least " + std::to_string(n),
                     row.line);
  }
}

int as_int(double v, int line, const char* what) {
  if (v != std::floor(v))
    throw ParseError(std::string(what) + " must be an integer", line);
  return static_cast<int>(v);
}

double angle_limit(double deg, bool upper) {
  if (upper ? deg >= 360.0 : deg <= -360.0) return upper ? 2 * std::numbers::pi
                                                         : -2 * std::numbers::pi;
  return deg * kDeg;
}

std::string fmt17(double v) {
  if (std::isinf(v)) return v > 0 ? "Inf" : "-Inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

int RawCase::bus_index(int id) const {
  for (size_t i = 0; i < buses.size(); ++i)
    if (buses[i].id == id) return static_cast<int>(i);
  return -1;
}

RawCase parse_matpower(std::string_view text) {
  CaseTables t = tokenize_case(text);
  RawCase c;
  c.name = t.name.empty() ? "case" : t.name;
  if (t.base_line == 0) throw ParseError("missing mpc.baseMVA", 0);
  if (!(t.base_mva > 0))
    throw ValidationError("baseMVA must be positive");
  c.base_mva = t.base_mva;
  const double base = c.base_mva;

  for (const char* required : {"bus", "branch", "gen"}) {
    if (!t.tables.count(required))
      throw ParseError(std::string("missing table mpc.") + required, 0);
  }

  for (const TableRow& row : t.tables["bus"]) {
    require_columns(row, 13, "bus");
    const auto& v = row.values;
    BusRecord b;
    b.id = as_int(v[0], row.line, "bus id");
    int type = as_int(v[1], row.line, "bus type");
    if (type == 4)
      throw ValidationError("bus " + std::to_string(b.id) +
                            " is isolated (type 4), which is not supported");
    if (type < 1 || type > 3)
      throw ParseError("unknown bus type " + std::to_string(type), row.line);
    b.type = static_cast<BusType>(type);
    b.pd = v[2] / base;
    b.qd = v[3] / base;
    b.gs = v[4] / base;
    b.bs = v[5] / base;
    b.area = as_int(v[6], row.line, "area");
    b.vm = v[7];
    b.va = v[8] * kDeg;
    b.base_kv = v[9];
    b.zone = as_int(v[10], row.line, "zone");
    b.vmax = v[11];
    b.vmin = v[12];
    c.buses.push_back(b);
  }

  std::vector<bool> gen_in_service;
  for (const TableRow& row : t.tables["gen"]) {
    require_columns(row, 10, "gen");
    const auto& v = row.values;
    gen_in_service.push_back(v[7] > 0);
    if (v[7] <= 0) continue;
    GenRecord g;
    g.bus = as_int(v[0], row.line, "generator bus");
    g.pg = v[1] / base;
    g.qg = v[2] / base;
    g.qmax = v[3] / base;
    g.qmin = v[4] / base;
    g.vg = v[5];
    g.mbase = v[6];
    g.pmax = v[8] / base;
    g.pmin = v[9] / base;
    c.gens.push_back(g);
  }

  if (auto it = t.tables.find("gencost"); it != t.tables.end()) {
    const auto& rows = it->second;
    if (!rows.empty() && rows.size() < gen_in_service.size())
      throw ParseError("mpc.gencost has fewer rows than mpc.gen",
                       rows.back().line);
    size_t k = 0;
    for (size_t i = 0; i < gen_in_service.size() && i < rows.size(); ++i) {
      const TableRow& row = rows[i];
      require_columns(row, 4, "gencost");
      const auto& v = row.values;
      GenCost gc;
      gc.model = as_int(v[0], row.line, "cost model");
      gc.startup = v[1];
      gc.shutdown = v[2];
      int n = as_int(v[3], row.line, "cost point count");
      size_t need = 4 + static_cast<size_t>(gc.model == 1 ? 2 * n : n);
      if (gc.model != 1 && gc.model != 2)
        throw ParseError("unknown cost model " + std::to_string(gc.model),
                         row.line);
      require_columns(row, need, "gencost");
      gc.coeffs.assign(v.begin() + 4, v.begin() + static_cast<long>(need));
      if (gen_in_service[i]) c.gens[k++].cost = std::move(gc);
    }
  }

  for (const TableRow& row : t.tables["branch"]) {
    require_columns(row, 11, "branch");
    const auto& v = row.values;
    if (v[10] <= 0) continue;
    BranchRecord br;
    br.from = as_int(v[0], row.line, "from bus");
    br.to = as_int(v[1], row.line, "to bus");
    br.r = v[2];
    br.x = v[3];
    br.b = v[4];
    if (v[5] < 0 || v[6] < 0 || v[7] < 0)
      throw ValidationError("negative thermal rating on branch " +
                            std::to_string(br.from) + "-" +
                            std::to_string(br.to));
    br.rate_a = v[5] == 0 ? kInf : v[5] / base;
    br.rate_b = v[6] == 0 ? kInf : v[6] / base;
    br.rate_c = v[7] == 0 ? kInf : v[7] / base;
    br.tap = v[8];
    br.shift = v[9] * kDeg;
    double amin = v.size() > 11 ? v[11] : -360.0;
    double amax = v.size() > 12 ? v[12] : 360.0;
    if (amin == 0 && amax == 0) {
      amin = -360.0;
      amax = 360.0;
    }
    br.angmin = angle_limit(amin, false);
    br.angmax = angle_limit(amax, true);
    c.branches.push_back(br);
  }

  for (size_t i = 0; i < c.buses.size(); ++i)
    if (c.buses[i].type == BusType::kRef) c.ref_index = static_cast<int>(i);
  validate_case(c);
  return c;
}

void validate_case(const RawCase& c) {
  if (!(c.base_mva > 0)) throw ValidationError("baseMVA must be positive");
  if (c.buses.empty()) throw ValidationError("case has no buses");
  int refs = 0;
  int ref = -1;
  std::map<int, int> seen;
  for (size_t i = 0; i < c.buses.size(); ++i) {
    const BusRecord& b = c.buses[i];
    if (!seen.emplace(b.id, static_cast<int>(i)).second)
      throw ValidationError("duplicate bus id " + std::to_string(b.id));
    if (b.type == BusType::kRef) {
      ++refs;
      ref = static_cast<int>(i);
    }
    if (b.vmin > b.vmax)
      throw ValidationError("bus " + std::to_string(b.id) + " has Vmin > Vmax");
  }
  if (refs != 1)
    throw ValidationError("case must have exactly one reference bus, found " +
                          std::to_string(refs));
  if (c.ref_index >= 0 && c.ref_index != ref)
    throw ValidationError("reference index does not match bus types");
  for (const BranchRecord& br : c.branches) {
    if (!seen.count(br.from) || !seen.count(br.to))
      throw ValidationError("branch " + std::to_string(br.from) + "-" +
                            std::to_string(br.to) +
                            " references an unknown bus");
    if (!(br.rate_a > 0))
      throw ValidationError("branch " + std::to_string(br.from) + "-" +
                            std::to_string(br.to) +
                            " has a nonpositive thermal limit");
  }
  for (const GenRecord& g : c.gens) {
    if (!seen.count(g.bus))
      throw ValidationError("generator at unknown bus " +
                            std::to_string(g.bus));
  }
}

std::string write_matpower(const RawCase& c) {
  const double base = c.base_mva;
  std::ostringstream os;
  auto mw = [&](double pu) { return fmt17(pu * base); };
  auto deg = [](double rad) { return fmt17(rad / kDeg); };
  os << "function mpc = " << c.name << "\n";
  os << "mpc.version = '2';\n";
  os << "mpc.baseMVA = " << fmt17(base) << ";\n\n";
  os << "%% bus_i type Pd Qd Gs Bs area Vm Va baseKV zone Vmax Vmin\n";
  os << "mpc.bus = [\n";
  for (const BusRecord& b : c.buses) {
    os << "\t" << b.id << "\t" << static_cast<int>(b.type) << "\t" << mw(b.pd)
       << "\t" << mw(b.qd) << "\t" << mw(b.gs) << "\t" << mw(b.bs) << "\t"
       << b.area << "\t" << fmt17(b.vm) << "\t" << deg(b.va) << "\t"
       << fmt17(b.base_kv) << "\t" << b.zone << "\t" << fmt17(b.vmax) << "\t"
       << fmt17(b.vmin) << ";\n";
  }
  os << "];\n\n";
  os << "%% bus Pg Qg Qmax Qmin Vg mBase status Pmax Pmin\n";
  os << "mpc.gen = [\n";
  for (const GenRecord& g : c.gens) {
    os << "\t" << g.bus << "\t" << mw(g.pg) << "\t" << mw(g.qg) << "\t"
       << mw(g.qmax) << "\t" << mw(g.qmin) << "\t" << fmt17(g.vg) << "\t"
       << fmt17(g.mbase) << "\t1\t" << mw(g.pmax) << "\t" << mw(g.pmin)
       << ";\n";
  }
  os << "];\n\n";
  os << "%% fbus tbus r x b rateA rateB rateC ratio angle status angmin "
        "angmax\n";
  os << "mpc.branch = [\n";
  auto rate = [&](double pu) { return std::isinf(pu) ? std::string("0") : mw(pu); };
  for (const BranchRecord& br : c.branches) {
    os << "\t" << br.from << "\t" << br.to << "\t" << fmt17(br.r) << "\t"
       << fmt17(br.x) << "\t" << fmt17(br.b) << "\t" << rate(br.rate_a) << "\t"
       << rate(br.rate_b) << "\t" << rate(br.rate_c) << "\t" << fmt17(br.tap)
       << "\t" << deg(br.shift) << "\t1\t"
       << (br.angmin <= -2 * std::numbers::pi ? "-360" : deg(br.angmin))
       << "\t" << (br.angmax >= 2 * std::numbers::pi ? "360" : deg(br.angmax))
       << ";\n";
  }
  os << "];\n\n";
  os << "mpc.gencost = [\n";
  for (const GenRecord& g : c.gens) {
    const GenCost& gc = g.cost;
    size_t n = gc.model == 1 ? gc.coeffs.size() / 2 : gc.coeffs.size();
    os << "\t" << gc.model << "\t" << fmt17(gc.startup) << "\t"
       << fmt17(gc.shutdown) << "\t" << n;
    for (double v : gc.coeffs) os << "\t" << fmt17(v);
    os << ";\n";
  }
  os << "];\n";
  return os.str();
}

RawCase derate_thermal_limits(const RawCase& c, double factor) {
  if (!(factor >= 0.0) || factor >= 1.0)
    throw ValidationError("derate factor must lie in [0, 1)");
  RawCase out = c;
  for (BranchRecord& br : out.branches) br.rate_a *= (1.0 - factor);
  if (out.ref_index < 0) out.ref_index = c.ref_index;
  validate_case(out);
  return out;
}

// ---------------------------------------------------------------------------
// UC instance

int UcGenerator::y_hist(int t) const {
  // t <= 0. The unit has held its initial status for |initial_status| hours.
  int held = std::abs(initial_status);
  bool in_window = t > -held;
  bool on = initially_on();
  return (in_window ? on : !on) ? 1 : 0;
}

int UcGenerator::u_hist(int t) const {
  return initially_on() && t == 1 - initial_status ? 1 : 0;
}

int UcGenerator::w_hist(int t) const {
  return !initially_on() && t == 1 + initial_status ? 1 : 0;
}

double UcGenerator::production_cost(double p_delta) const {
  double total = 0;
  double rest = std::max(p_delta, 0.0);
  for (const CostSegment& s : cost) {
    double take = std::min(rest, s.width);
    total += take * s.slope;
    rest -= take;
    if (rest <= 0) break;
  }
  if (rest > 0 && !cost.empty()) total += rest * cost.back().slope;
  return total;
}

double UcGenerator::startup_cost(int downtime) const {
  if (startup.empty()) return 0.0;
  double c = startup.back().cost;
  for (size_t s = 0; s + 1 < startup.size(); ++s) {
    if (downtime >= startup[s].lag && downtime < startup[s + 1].lag)
      return startup[s].cost;
  }
  if (downtime < startup.front().lag) c = startup.front().cost;
  return c;
}

namespace {

using nlohmann::json;

double get_or(const json& j, const char* key, double fallback) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  if (!it->is_number())
    throw ValidationError(std::string("field '") + key + "' must be numeric");
  return it->get<double>();
}

// Piecewise-linear secant approximation of a MATPOWER cost row over
// [pmin, pmax] (MW). Returns no-load cost and per-unit segments.
void cost_from_case(const GenCost& gc, double pmin_mw, double pmax_mw,
                    double base, UcGenerator& g) {
  auto eval = [&](double p) {
    if (gc.model == 2) {
      double acc = 0;
      for (double c : gc.coeffs) acc = acc * p + c;
      return acc;
    }
    size_t n = gc.coeffs.size() / 2;
    if (n == 0) return 0.0;
    if (p <= gc.coeffs[0]) return gc.coeffs[1];
    for (size_t i = 0; i + 1 < n; ++i) {
      double x0 = gc.coeffs[2 * i], y0 = gc.coeffs[2 * i + 1];
      double x1 = gc.coeffs[2 * i + 2], y1 = gc.coeffs[2 * i + 3];
      if (p <= x1) return y0 + (y1 - y0) * (p - x0) / (x1 - x0);
    }
    return gc.coeffs[2 * n - 1];
  };
  g.no_load_cost = eval(pmin_mw);
  g.cost.clear();
  if (pmax_mw <= pmin_mw) return;
  std::vector<double> breaks;
  if (gc.model == 1) {
    breaks.push_back(pmin_mw);
    for (size_t i = 0; i < gc.coeffs.size() / 2; ++i) {
      double x = gc.coeffs[2 * i];
      if (x > pmin_mw && x < pmax_mw) breaks.push_back(x);
    }
    breaks.push_back(pmax_mw);
  } else {
    constexpr int kSegments = 3;
    for (int k = 0; k <= kSegments; ++k)
      breaks.push_back(pmin_mw + (pmax_mw - pmin_mw) * k / kSegments);
  }
  for (size_t k = 0; k + 1 < breaks.size(); ++k) {
    double w = breaks[k + 1] - breaks[k];
    double slope = (eval(breaks[k + 1]) - eval(breaks[k])) / w;
    g.cost.push_back({w / base, slope * base});
  }
}

std::vector<double> number_array(const json& j, const char* what) {
  if (!j.is_array())
    throw ValidationError(std::string(what) + " must be an array");
  std::vector<double> out;
  for (const json& v : j) {
    if (!v.is_number())
      throw ValidationError(std::string(what) + " must contain numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

UCInstance load_uc_instance(std::string_view text, const RawCase& c) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    size_t byte = std::min<size_t>(e.byte, text.size());
    int line = 1 + static_cast<int>(std::count(text.begin(),
                                               text.begin() + byte, '\n'));
    throw ParseError(std::string("UC document: ") + e.what(), line);
  }
  const double base = c.base_mva;
  const int n = static_cast<int>(c.buses.size());

  UCInstance inst;
  inst.base_mva = base;
  inst.horizon = static_cast<int>(get_or(doc, "horizon", 0));
  if (inst.horizon < 1) throw ValidationError("horizon must be at least 1");
  const int T = inst.horizon;

  if (doc.contains("hour_labels")) {
    for (double h : number_array(doc["hour_labels"], "hour_labels"))
      inst.hour_labels.push_back(static_cast<int>(h));
    if (static_cast<int>(inst.hour_labels.size()) != T)
      throw ValidationError("hour_labels length must equal horizon");
  } else {
    for (int t = 0; t < T; ++t) inst.hour_labels.push_back(t + 1);
  }

  // Loads: base case loads scaled by a profile, optionally overridden per bus.
  inst.pd = Eigen::MatrixXd::Zero(n, T);
  std::vector<double> profile(T, 1.0);
  if (doc.contains("load_profile")) {
    profile = number_array(doc["load_profile"], "load_profile");
    if (static_cast<int>(profile.size()) != T)
      throw ValidationError("load_profile length must equal horizon");
  }
  for (int b = 0; b < n; ++b)
    for (int t = 0; t < T; ++t) inst.pd(b, t) = c.buses[b].pd * profile[t];
  if (doc.contains("loads")) {
    for (const json& entry : doc["loads"]) {
      int id = static_cast<int>(get_or(entry, "bus", -1));
      int b = c.bus_index(id);
      if (b < 0) throw ValidationError("load references unknown bus " +
                                       std::to_string(id));
      auto p = number_array(entry.at("p_mw"), "p_mw");
      if (static_cast<int>(p.size()) != T)
        throw ValidationError("p_mw length must equal horizon");
      for (int t = 0; t < T; ++t) inst.pd(b, t) = p[t] / base;
    }
  }
  inst.qd = Eigen::MatrixXd::Zero(n, T);
  for (int b = 0; b < n; ++b) {
    const BusRecord& bus = c.buses[b];
    if (bus.pd == 0) continue;
    double ratio = bus.qd / bus.pd;
    for (int t = 0; t < T; ++t) inst.qd(b, t) = inst.pd(b, t) * ratio;
  }

  inst.reserve.assign(T, 0.0);
  if (doc.contains("reserve_mw")) {
    const json& r = doc["reserve_mw"];
    if (r.is_number()) {
      inst.reserve.assign(T, r.get<double>() / base);
    } else {
      auto v = number_array(r, "reserve_mw");
      if (static_cast<int>(v.size()) != T)
        throw ValidationError("reserve_mw length must equal horizon");
      for (int t = 0; t < T; ++t) inst.reserve[t] = v[t] / base;
    }
  }

  if (!doc.contains("generators") || !doc["generators"].is_array())
    throw ValidationError("UC document needs a 'generators' array");
  int idx = 0;
  for (const json& jg : doc["generators"]) {
    UcGenerator g;
    g.name = jg.value("name", "g" + std::to_string(idx + 1));
    int row = static_cast<int>(get_or(jg, "case_gen", idx + 1));
    if (row < 1 || row > static_cast<int>(c.gens.size()))
      throw ValidationError("generator '" + g.name +
                            "' references unknown case generator " +
                            std::to_string(row));
    g.case_gen = row - 1;
    const GenRecord& cg = c.gens[g.case_gen];
    if (jg.contains("bus")) {
      int id = static_cast<int>(get_or(jg, "bus", -1));
      if (id != cg.bus)
        throw ValidationError("generator '" + g.name + "' bus " +
                              std::to_string(id) +
                              " does not match the case generator bus");
    }
    g.bus = c.bus_index(cg.bus);
    g.pmin = get_or(jg, "pmin_mw", cg.pmin * base) / base;
    g.pmax = get_or(jg, "pmax_mw", cg.pmax * base) / base;
    g.qmin = get_or(jg, "qmin_mvar", cg.qmin * base) / base;
    g.qmax = get_or(jg, "qmax_mvar", cg.qmax * base) / base;
    g.startup_limit = get_or(jg, "startup_limit_mw", g.pmax * base) / base;
    g.shutdown_limit = get_or(jg, "shutdown_limit_mw", g.pmax * base) / base;
    g.ramp_up = get_or(jg, "ramp_up_mw", g.pmax * base) / base;
    g.ramp_down = get_or(jg, "ramp_down_mw", g.pmax * base) / base;
    double min_up = get_or(jg, "min_up_h", 1);
    double min_down = get_or(jg, "min_down_h", 1);
    if (g.ramp_up < 0 || g.ramp_down < 0)
      throw ValidationError("generator '" + g.name + "' has a negative ramp");
    if (min_up < 1 || min_down < 1)
      throw ValidationError("generator '" + g.name +
                            "' needs minimum up/down times of at least 1 h");
    g.min_up = static_cast<int>(min_up);
    g.min_down = static_cast<int>(min_down);
    g.condenser = g.pmax == 0 && g.pmin == 0;
    if (jg.contains("initial_status_h")) {
      g.initial_status = static_cast<int>(get_or(jg, "initial_status_h", 0));
      if (g.initial_status == 0)
        throw ValidationError("generator '" + g.name +
                              "' initial status cannot be zero hours");
      g.p_init = get_or(jg, "initial_power_mw",
                        g.initially_on() ? g.pmin * base : 0.0) / base;
    } else {
      g.initial_status = -g.min_down;
      g.p_init = get_or(jg, "initial_power_mw", 0.0) / base;
    }
    if (g.condenser) g.initial_status = std::max(g.initial_status, 1);

    if (jg.contains("cost_curve")) {
      for (const json& seg : jg["cost_curve"]) {
        auto v = number_array(seg, "cost_curve segment");
        if (v.size() != 2)
          throw ValidationError("cost_curve segments are [width_mw, $/MWh]");
        g.cost.push_back({v[0] / base, v[1] * base});
      }
      g.no_load_cost = get_or(jg, "no_load_cost", 0.0);
    } else {
      cost_from_case(cg.cost, g.pmin * base, g.pmax * base, base, g);
      if (jg.contains("no_load_cost"))
        g.no_load_cost = get_or(jg, "no_load_cost", 0.0);
    }
    if (jg.contains("startup_tiers")) {
      for (const json& tier : jg["startup_tiers"]) {
        auto v = number_array(tier, "startup tier");
        if (v.size() != 2)
          throw ValidationError("startup tiers are [lag_h, cost]");
        g.startup.push_back({static_cast<int>(v[0]), v[1]});
      }
    } else if (cg.cost.startup > 0) {
      g.startup.push_back({g.min_down, cg.cost.startup});
    }
    inst.gens.push_back(std::move(g));
    ++idx;
  }
  validate_uc_instance(inst);
  return inst;
}

void validate_uc_instance(const UCInstance& inst) {
  const int T = inst.horizon;
  if (inst.pd.cols() != T || inst.qd.cols() != T ||
      static_cast<int>(inst.reserve.size()) != T ||
      static_cast<int>(inst.hour_labels.size()) != T)
    throw ValidationError("UC instance arrays do not match the horizon");
  if (!inst.pd.allFinite() || !inst.qd.allFinite())
    throw ValidationError("UC loads must be finite");
  constexpr double kTol = 1e-12;
  for (const UcGenerator& g : inst.gens) {
    const std::string who = "generator '" + g.name + "'";
    if (g.pmin > g.pmax + kTol) throw ValidationError(who + " has Pmin > Pmax");
    if (g.qmin > g.qmax + kTol) throw ValidationError(who + " has Qmin > Qmax");
    if (!g.condenser) {
      if (g.startup_limit < g.pmin - kTol || g.startup_limit > g.pmax + kTol ||
          g.shutdown_limit < g.pmin - kTol || g.shutdown_limit > g.pmax + kTol)
        throw ValidationError(who + " needs Pmin <= SU, SD <= Pmax");
    }
    if (g.ramp_up < 0 || g.ramp_down < 0)
      throw ValidationError(who + " has a negative ramp limit");
    if (g.min_up < 1 || g.min_down < 1)
      throw ValidationError(who + " has a minimum up/down time below 1 h");
    for (size_t k = 0; k < g.cost.size(); ++k) {
      if (!(g.cost[k].width > 0))
        throw ValidationError(who + " has a nonpositive cost segment width");
      if (k > 0 && g.cost[k].slope < g.cost[k - 1].slope - kTol)
        throw ValidationError(who + " has a non-convex cost curve");
    }
    for (size_t s = 1; s < g.startup.size(); ++s) {
      if (g.startup[s].lag <= g.startup[s - 1].lag)
        throw ValidationError(who + " startup tiers must have increasing lags");
      if (g.startup[s].cost < g.startup[s - 1].cost)
        throw ValidationError(who + " startup costs must not decrease with "
                                    "downtime");
    }
  }
}

UCInstance subsample_hours(const UCInstance& inst,
                           const std::vector<int>& periods) {
  if (periods.empty()) throw ValidationError("no periods selected");
  UCInstance out = inst;
  const int T = static_cast<int>(periods.size());
  out.horizon = T;
  out.hour_labels.clear();
  out.reserve.clear();
  out.pd.resize(inst.pd.rows(), T);
  out.qd.resize(inst.qd.rows(), T);
  for (int k = 0; k < T; ++k) {
    int t = periods[k];
    if (t < 0 || t >= inst.horizon)
      throw ValidationError("period index out of range");
    out.hour_labels.push_back(inst.hour_labels[t]);
    out.reserve.push_back(inst.reserve[t]);
    out.pd.col(k) = inst.pd.col(t);
    out.qd.col(k) = inst.qd.col(t);
  }
  return out;
}

}  // namespace acnn
