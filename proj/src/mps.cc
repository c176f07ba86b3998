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


#include "acnn/mps.h"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <unordered_set>
#include <vector>

#include "acnn/errors.h"

namespace acnn {
namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string pad(const std::string& s, size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

// Classic layout: fields start at columns 2, 5, 15, 25, 40, 50.
std::string line(const std::string& type, const std::string& n1,
                 const std::string& n2 = "", const std::string& v1 = "",
                 const std::string& n3 = "", const std::string& v2 = "") {
  std::string out = " " + pad(type, 2) + " ";
  out += pad(n1, 8);
  if (n2.empty()) return out.substr(0, out.find_last_not_of(' ') + 1);
  out += "  " + pad(n2, 8) + "  " + pad(v1, 12);
  if (!n3.empty()) out += "   " + pad(n3, 8) + "  " + v2;
  return out.substr(0, out.find_last_not_of(' ') + 1);
}

void check_name(const std::string& name, const char* what) {
  if (name.empty())
    throw ValidationError(std::string("empty ") + what + " name in MPS export");
  for (char c : name)
    if (std::isspace(static_cast<unsigned char>(c)))
      throw ValidationError(std::string(what) + " name '" + name +
                            "' contains whitespace");
}

constexpr const char* kObjRow = "OBJ";

}  // namespace

std::string export_mps(const MILPModel& model) {
  model.validate();
  std::unordered_set<std::string> row_names{kObjRow};
  for (const Constraint& c : model.constraints()) {
    check_name(c.name, "row");
    if (!row_names.insert(c.name).second)
      throw ValidationError("row name collision: " + c.name);
  }
  std::unordered_set<std::string> col_names;
  for (const Variable& v : model.variables()) {
    check_name(v.name, "column");
    if (!col_names.insert(v.name).second)
      throw ValidationError("column name collision: " + v.name);
  }
  check_name(model.name(), "model");

  // Column-major view of the constraint matrix.
  const int n = model.num_variables();
  std::vector<std::vector<std::pair<int, double>>> cols(n);
  for (int i = 0; i < model.num_constraints(); ++i)
    for (const Term& t : model.constraints()[i].terms)
      cols[t.var].push_back({i, t.coef});

  std::ostringstream os;
  os << "NAME          " << model.name() << "\n";
  os << "ROWS\n";
  os << line("N", kObjRow) << "\n";
  for (const Constraint& c : model.constraints()) {
    const char* s = c.sense == Sense::kLe ? "L" : c.sense == Sense::kGe ? "G" : "E";
    os << line(s, c.name) << "\n";
  }
  os << "COLUMNS\n";
  for (int j = 0; j < n; ++j) {
    const std::string& name = model.variable(j).name;
    const double c = model.objective()[j];
    if (c != 0 || cols[j].empty()) os << line("", name, kObjRow, num(c)) << "\n";
    for (auto [row, coef] : cols[j])
      os << line("", name, model.constraints()[row].name, num(coef)) << "\n";
  }
  os << "RHS\n";
  for (const Constraint& c : model.constraints())
    if (c.rhs != 0) os << line("", "RHS", c.name, num(c.rhs)) << "\n";
  if (model.objective_constant() != 0)
    os << line("", "RHS", kObjRow, num(-model.objective_constant())) << "\n";
  os << "RANGES\n";
  os << "BOUNDS\n";
  for (const Variable& v : model.variables()) {
    if (v.kind == VarKind::kBinary) {
      os << line("BV", "BND", v.name) << "\n";
      if (v.lo != 0) os << line("LO", "BND", v.name, num(v.lo)) << "\n";
      if (v.hi != 1) os << line("UP", "BND", v.name, num(v.hi)) << "\n";
      continue;
    }
    if (v.lo == v.hi) {
      os << line("FX", "BND", v.name, num(v.lo)) << "\n";
      continue;
    }
    if (std::isinf(v.lo) && std::isinf(v.hi)) {
      os << line("FR", "BND", v.name) << "\n";
      continue;
    }
    if (std::isinf(v.lo)) {
      os << line("MI", "BND", v.name) << "\n";
    } else if (v.lo != 0 || v.hi < 0) {
      os << line("LO", "BND", v.name, num(v.lo)) << "\n";
    }
    if (!std::isinf(v.hi)) os << line("UP", "BND", v.name, num(v.hi)) << "\n";
  }
  os << "ENDATA\n";
  return os.str();
}

MILPModel read_mps(std::string_view text) {
  enum class Section { kNone, kName, kRows, kColumns, kRhs, kRanges, kBounds };
  Section sec = Section::kNone;
  std::string model_name = "model";
  struct RowDef {
    std::string name;
    Sense sense;
    double rhs = 0;
    std::vector<Term> terms;
  };
  std::vector<RowDef> rows;
  std::map<std::string, int> row_index;
  std::string obj_name;
  struct ColDef {
    std::string name;
    double obj = 0;
    double lo = 0, hi = kInfinity;
    bool binary = false;
  };
  std::vector<ColDef> cols;
  std::map<std::string, int> col_index;
  double obj_constant = 0;

  auto number = [](const std::string& tok, int ln) {
    char* end = nullptr;
    double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0')
      throw ParseError("malformed number '" + tok + "'", ln);
    return v;
  };
  auto column = [&](const std::string& name, int ln) -> int {
    auto it = col_index.find(name);
    if (it == col_index.end()) throw ParseError("unknown column " + name, ln);
    return it->second;
  };

  std::istringstream is{std::string(text)};
  std::string raw;
  int ln = 0;
  bool ended = false;
  while (std::getline(is, raw)) {
    ++ln;
    if (raw.empty() || raw[0] == '*') continue;
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (!std::isspace(static_cast<unsigned char>(raw[0]))) {
      const std::string& h = tok[0];
      if (h == "NAME") {
        sec = Section::kName;
        if (tok.size() > 1) model_name = tok[1];
      } else if (h == "ROWS") {
        sec = Section::kRows;
      } else if (h == "COLUMNS") {
        sec = Section::kColumns;
      } else if (h == "RHS") {
        sec = Section::kRhs;
      } else if (h == "RANGES") {
        sec = Section::kRanges;
      } else if (h == "BOUNDS") {
        sec = Section::kBounds;
      } else if (h == "ENDATA") {
        ended = true;
        break;
      } else {
        throw ParseError("unknown MPS section " + h, ln);
      }
      continue;
    }
    switch (sec) {
      case Section::kRows: {
        if (tok.size() != 2) throw ParseError("bad ROWS entry", ln);
        if (tok[0] == "N") {
          if (obj_name.empty()) obj_name = tok[1];
          continue;
        }
        Sense s;
        if (tok[0] == "L") s = Sense::kLe;
        else if (tok[0] == "G") s = Sense::kGe;
        else if (tok[0] == "E") s = Sense::kEq;
        else throw ParseError("bad row type " + tok[0], ln);
        row_index[tok[1]] = static_cast<int>(rows.size());
        rows.push_back({tok[1], s, 0, {}});
        break;
      }
      case Section::kColumns: {
        if (tok.size() != 3 && tok.size() != 5)
          throw ParseError("bad COLUMNS entry", ln);
        auto [it, fresh] =
            col_index.emplace(tok[0], static_cast<int>(cols.size()));
        if (fresh) cols.push_back({tok[0]});
        const int j = it->second;
        for (size_t k = 1; k + 1 < tok.size(); k += 2) {
          const double v = number(tok[k + 1], ln);
          if (tok[k] == obj_name) {
            cols[j].obj = v;
          } else {
            auto r = row_index.find(tok[k]);
            if (r == row_index.end())
              throw ParseError("unknown row " + tok[k], ln);
            rows[r->second].terms.push_back({j, v});
          }
        }
        break;
      }
      case Section::kRhs: {
        if (tok.size() != 3 && tok.size() != 5)
          throw ParseError("bad RHS entry", ln);
        for (size_t k = 1; k + 1 < tok.size(); k += 2) {
          const double v = number(tok[k + 1], ln);
          if (tok[k] == obj_name) {
            obj_constant = -v;
          } else {
            auto r = row_index.find(tok[k]);
            if (r == row_index.end())
              throw ParseError("unknown row " + tok[k], ln);
            rows[r->second].rhs = v;
          }
        }
        break;
      }
      case Section::kRanges:
        throw ParseError("RANGES entries are not supported", ln);
      case Section::kBounds: {
        if (tok.size() < 3) throw ParseError("bad BOUNDS entry", ln);
        ColDef& c = cols[column(tok[2], ln)];
        const std::string& t = tok[0];
        auto val = [&] {
          if (tok.size() < 4) throw ParseError("bound needs a value", ln);
          return number(tok[3], ln);
        };
        if (t == "UP") c.hi = val();
        else if (t == "LO") c.lo = val();
        else if (t == "FX") c.lo = c.hi = val();
        else if (t == "FR") { c.lo = -kInfinity; c.hi = kInfinity; }
        else if (t == "MI") c.lo = -kInfinity;
        else if (t == "PL") c.hi = kInfinity;
        else if (t == "BV") { c.binary = true; c.lo = 0; c.hi = 1; }
        else throw ParseError("unknown bound type " + t, ln);
        break;
      }
      default:
        throw ParseError("data outside a section", ln);
    }
  }
  if (!ended) throw ParseError("missing ENDATA", ln);

  MILPModel model(model_name);
  for (const ColDef& c : cols) {
    const int j = model.add_variable(
        c.name, c.lo, c.hi, c.binary ? VarKind::kBinary : VarKind::kContinuous);
    model.set_objective(j, c.obj);
  }
  for (RowDef& r : rows)
    model.add_constraint(r.name, std::move(r.terms), r.sense, r.rhs);
  model.add_objective_constant(obj_constant);
  return model;
}

MilpSolution import_solution(std::string_view text, const MILPModel& model,
                             double tol) {
  std::vector<double> x(model.num_variables(), 0.0);
  std::istringstream is{std::string(text)};
  std::string raw;
  int ln = 0;
  while (std::getline(is, raw)) {
    ++ln;
    std::istringstream ls(raw);
    std::string name, value, extra;
    if (!(ls >> name) || name[0] == '#') continue;
    if (!(ls >> value) || (ls >> extra))
      throw ParseError("expected 'name value'", ln);
    const int j = model.find(name);
    if (j < 0) throw ParseError("unknown variable " + name, ln);
    char* end = nullptr;
    x[j] = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0')
      throw ParseError("malformed value '" + value + "'", ln);
  }
  std::string where;
  const double viol = model.max_violation(x, &where);
  if (viol > tol)
    throw ValidationError("imported solution rejected: max violation " +
                          num(viol) + " at " + where);
  MilpSolution sol;
  sol.status = MilpStatus::kOptimal;
  sol.has_incumbent = true;
  sol.objective = model.objective_value(x);
  sol.x = std::move(x);
  sol.diagnostics = "imported; max violation " + num(viol);
  return sol;
}

}  // namespace acnn
