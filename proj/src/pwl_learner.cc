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


#include "acnn/pwl_learner.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <random>

namespace acnn {

std::string to_string(ReluStatus s) {
  switch (s) {
    case ReluStatus::kFree: return "free";
    case ReluStatus::kFixedOff: return "fixed_off";
    case ReluStatus::kFixedOn: return "fixed_on";
  }
  return "?";
}

std::string to_string(BoundProvenance p) {
  switch (p) {
    case BoundProvenance::kNone: return "none";
    case BoundProvenance::kInterval: return "interval";
    case BoundProvenance::kLp: return "lp";
    case BoundProvenance::kMilp: return "milp";
  }
  return "?";
}

int BigMBounds::num_free() const {
  return static_cast<int>(
      std::count(status.begin(), status.end(), ReluStatus::kFree));
}

void BigMBounds::validate() const {
  const size_t k = static_cast<size_t>(mmin.size());
  if (static_cast<size_t>(mmax.size()) != k || status.size() != k ||
      provenance.size() != k)
    throw DimensionError("big-M bound vectors differ in length");
  for (size_t i = 0; i < k; ++i) {
    if (!(mmin[i] <= mmax[i]))
      throw ValidationError("unit " + std::to_string(i) + ": mmin > mmax");
    if (status[i] == ReluStatus::kFixedOff && mmax[i] > 0)
      throw ValidationError("unit " + std::to_string(i) +
                            ": fixed_off with positive upper bound");
    if (status[i] == ReluStatus::kFixedOn && mmin[i] <= 0)
      throw ValidationError("unit " + std::to_string(i) +
                            ": fixed_on with nonpositive lower bound");
  }
}

Eigen::VectorXd CompactPWLModel::predict(const Eigen::VectorXd& x) const {
  Eigen::VectorXd h = preactivation(x).cwiseMax(0.0);
  return linear.predict(x) + w2 * h;
}

Eigen::MatrixXd CompactPWLModel::predict_rows(const Eigen::MatrixXd& x) const {
  Eigen::MatrixXd h = ((x * w1).rowwise() + b.transpose()).cwiseMax(0.0);
  Eigen::MatrixXd lin = (x * linear.jstar.transpose()).rowwise() +
                        linear.rstar.transpose();
  return lin + h * w2.transpose();
}

std::vector<int> CompactPWLModel::dead_units() const {
  std::vector<int> dead;
  for (int i = 0; i < rho(); ++i)
    if (w1.col(i).isZero(0) || w2.col(i).isZero(0)) dead.push_back(i);
  return dead;
}

Eigen::VectorXd DirectNNModel::predict(const Eigen::VectorXd& x) const {
  return w2 * (w1.transpose() * x + b).cwiseMax(0.0);
}

Eigen::MatrixXd DirectNNModel::predict_rows(const Eigen::MatrixXd& x) const {
  return ((x * w1).rowwise() + b.transpose()).cwiseMax(0.0) * w2.transpose();
}

namespace {

// Hidden layer y = w2 relu(w1' x + b) fitted to a residual target.
struct Layer {
  Eigen::MatrixXd w1, w2;
  Eigen::VectorXd b;
  BoolMatrix pin1, pin2;
};

double layer_loss(const Layer& p, const Eigen::MatrixXd& x,
                  const Eigen::MatrixXd& target) {
  if (x.rows() == 0) return 0;
  Eigen::MatrixXd h = ((x * p.w1).rowwise() + p.b.transpose()).cwiseMax(0.0);
  return (h * p.w2.transpose() - target).squaredNorm() /
         static_cast<double>(x.rows());
}

void layer_gradient(const Layer& p, const Eigen::MatrixXd& x,
                    const Eigen::MatrixXd& target, Layer& g) {
  const double scale = 2.0 / static_cast<double>(x.rows());
  Eigen::MatrixXd pre = (x * p.w1).rowwise() + p.b.transpose();
  Eigen::MatrixXd act = pre.cwiseMax(0.0);
  Eigen::MatrixXd err = (act * p.w2.transpose() - target) * scale;
  g.w2 = err.transpose() * act;
  Eigen::MatrixXd dpre = (err * p.w2).array() * (pre.array() > 0).cast<double>();
  g.w1 = x.transpose() * dpre;
  g.b = dpre.colwise().sum().transpose();
  if (p.pin1.size()) g.w1 = p.pin1.select(0.0, g.w1);
  if (p.pin2.size()) g.w2 = p.pin2.select(0.0, g.w2);
}

struct Adam {
  Eigen::MatrixXd m1, v1, m2, v2;
  Eigen::VectorXd mb, vb;
  long t = 0;

  explicit Adam(const Layer& p)
      : m1(Eigen::MatrixXd::Zero(p.w1.rows(), p.w1.cols())), v1(m1),
        m2(Eigen::MatrixXd::Zero(p.w2.rows(), p.w2.cols())), v2(m2),
        mb(Eigen::VectorXd::Zero(p.b.size())), vb(mb) {}

  template <typename P, typename G, typename M>
  static void apply(P& param, const G& grad, M& m, M& v, const TrainConfig& c,
                    double c1, double c2) {
    m = c.beta1 * m + (1 - c.beta1) * grad;
    v = c.beta2 * v + (1 - c.beta2) * grad.cwiseProduct(grad);
    param.array() -= c.learning_rate * (m.array() / c1) /
                     ((v.array() / c2).sqrt() + c.epsilon);
  }

  void step(Layer& p, const Layer& g, const TrainConfig& c) {
    ++t;
    const double c1 = 1 - std::pow(c.beta1, static_cast<double>(t));
    const double c2 = 1 - std::pow(c.beta2, static_cast<double>(t));
    apply(p.w1, g.w1, m1, v1, c, c1, c2);
    apply(p.w2, g.w2, m2, v2, c, c1, c2);
    apply(p.b, g.b, mb, vb, c, c1, c2);
    if (p.pin1.size()) p.w1 = p.pin1.select(0.0, p.w1);
    if (p.pin2.size()) p.w2 = p.pin2.select(0.0, p.w2);
  }
};

void check_data(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  if (x.rows() != y.rows())
    throw DimensionError("input and output sample counts differ");
  if (x.rows() == 0) throw ValidationError("empty training set");
}

// Mini-batched ADAM from `p`; returns the best parameters seen at an
// evaluation point (the start included).
Layer fit(Layer p, const Eigen::MatrixXd& x, const Eigen::MatrixXd& target,
          const TrainConfig& cfg, TrainingCurve* curve) {
  if (!(cfg.learning_rate > 0)) throw ValidationError("learning rate must be positive");
  if (cfg.batch_size < 1) throw ValidationError("batch size must be positive");
  const int n = static_cast<int>(x.rows());
  const int batch = std::min(cfg.batch_size, n);
  const long every = std::max(1L, cfg.eval_interval);
  std::mt19937_64 rng(cfg.seed);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  int cursor = 0;

  Adam adam(p);
  Layer best = p, grad;
  double best_loss = layer_loss(p, x, target);
  if (curve) {
    curve->step.push_back(0);
    curve->loss.push_back(best_loss);
  }
  Eigen::MatrixXd xb(batch, x.cols()), tb(batch, target.cols());
  for (long s = 1; s <= cfg.steps; ++s) {
    if (cursor + batch > n) {
      std::shuffle(order.begin(), order.end(), rng);
      cursor = 0;
    }
    for (int r = 0; r < batch; ++r) {
      xb.row(r) = x.row(order[cursor + r]);
      tb.row(r) = target.row(order[cursor + r]);
    }
    cursor += batch;
    layer_gradient(p, xb, tb, grad);
    adam.step(p, grad, cfg);
    if (s % every == 0 || s == cfg.steps) {
      const double loss = layer_loss(p, x, target);
      if (!std::isfinite(loss))
        throw TrainingError("non-finite loss at step " + std::to_string(s));
      if (curve) {
        curve->step.push_back(s);
        curve->loss.push_back(loss);
      }
      if (loss < best_loss) {
        best_loss = loss;
        best = p;
      }
    }
  }
  return best;
}

Eigen::MatrixXd residual_target(const LinearPFModel& lin,
                                const Eigen::MatrixXd& x,
                                const Eigen::MatrixXd& y) {
  if (x.cols() != lin.jstar.cols() || y.cols() != lin.jstar.rows())
    throw DimensionError("data dimensions do not match the linear model");
  return y - ((x * lin.jstar.transpose()).rowwise() + lin.rstar.transpose());
}

Layer layer_of(const CompactPWLModel& m) {
  return {m.w1, m.w2, m.b, m.pinned_w1, m.pinned_w2};
}

CompactPWLModel with_layer(CompactPWLModel m, const Layer& p) {
  m.w1 = p.w1;
  m.w2 = p.w2;
  m.b = p.b;
  m.bounds = {};
  return m;
}

Eigen::MatrixXd gaussian(int rows, int cols, double scale, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Eigen::MatrixXd a(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) a(i, j) = scale * nd(rng);
  return a;
}

}  // namespace

double compact_loss(const CompactPWLModel& model, const Eigen::MatrixXd& x,
                    const Eigen::MatrixXd& y) {
  check_data(x, y);
  return layer_loss(layer_of(model), x, residual_target(model.linear, x, y));
}

CompactPWLModel train_compact(const Eigen::MatrixXd& x,
                              const Eigen::MatrixXd& y,
                              const LinearPFModel& lin, const TrainConfig& cfg,
                              TrainingCurve* curve) {
  check_data(x, y);
  if (cfg.rho < 1) throw ValidationError("rho must be at least 1");
  const int in = static_cast<int>(x.cols()), out = static_cast<int>(y.cols());
  CompactPWLModel m;
  m.linear = lin;
  std::mt19937_64 rng(cfg.seed);
  m.w1 = gaussian(in, cfg.rho, 1.0 / std::sqrt(static_cast<double>(in)), rng);
  m.w2 = Eigen::MatrixXd::Zero(out, cfg.rho);
  m.b = Eigen::VectorXd::Zero(cfg.rho);
  m.pinned_w1 = BoolMatrix::Constant(in, cfg.rho, false);
  m.pinned_w2 = BoolMatrix::Constant(out, cfg.rho, false);
  return retrain_compact(m, x, y, cfg, curve);
}

CompactPWLModel retrain_compact(const CompactPWLModel& start,
                                const Eigen::MatrixXd& x,
                                const Eigen::MatrixXd& y,
                                const TrainConfig& cfg, TrainingCurve* curve) {
  check_data(x, y);
  Layer p = fit(layer_of(start), x, residual_target(start.linear, x, y), cfg,
                curve);
  return with_layer(start, p);
}

DirectNNModel train_direct(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                           const TrainConfig& cfg, TrainingCurve* curve) {
  check_data(x, y);
  if (cfg.rho < 1) throw ValidationError("rho must be at least 1");
  const int in = static_cast<int>(x.cols()), out = static_cast<int>(y.cols());
  std::mt19937_64 rng(cfg.seed);
  Layer p;
  p.w1 = gaussian(in, cfg.rho, 1.0 / std::sqrt(static_cast<double>(in)), rng);
  p.w2 = Eigen::MatrixXd::Zero(out, cfg.rho);
  p.b = Eigen::VectorXd::Zero(cfg.rho);
  p = fit(p, x, y, cfg, curve);
  return {p.w1, p.w2, p.b};
}

CompactGradient compact_gradient(const CompactPWLModel& model,
                                 const Eigen::MatrixXd& x,
                                 const Eigen::MatrixXd& y) {
  check_data(x, y);
  Layer g;
  Layer p = layer_of(model);
  p.pin1.resize(0, 0);
  p.pin2.resize(0, 0);
  layer_gradient(p, x, residual_target(model.linear, x, y), g);
  return {g.w1, g.w2, g.b};
}

CompactPWLModel sparsify(const CompactPWLModel& model, double target) {
  if (!(target >= 0 && target < 1))
    throw ValidationError("sparsity target must lie in [0, 1)");
  CompactPWLModel m = model;
  const Eigen::Index n1 = m.w1.size(), n2 = m.w2.size();
  if (m.pinned_w1.size() != n1)
    m.pinned_w1 = BoolMatrix::Constant(m.w1.rows(), m.w1.cols(), false);
  if (m.pinned_w2.size() != n2)
    m.pinned_w2 = BoolMatrix::Constant(m.w2.rows(), m.w2.cols(), false);
  const Eigen::Index total = n1 + n2;
  const auto k = static_cast<Eigen::Index>(
      std::ceil(target * static_cast<double>(total) - 1e-9));
  auto mag = [&](Eigen::Index e) {
    if (e < n1) return m.pinned_w1.data()[e] ? -1.0 : std::abs(m.w1.data()[e]);
    return m.pinned_w2.data()[e - n1] ? -1.0 : std::abs(m.w2.data()[e - n1]);
  };
  std::vector<Eigen::Index> order(total);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return mag(a) < mag(b); });
  for (Eigen::Index r = 0; r < k && r < total; ++r) {
    const Eigen::Index e = order[r];
    if (e < n1) {
      m.pinned_w1.data()[e] = true;
      m.w1.data()[e] = 0;
    } else {
      m.pinned_w2.data()[e - n1] = true;
      m.w2.data()[e - n1] = 0;
    }
  }
  m.bounds = {};
  return m;
}

CompactPWLModel sparsify_retrain(const CompactPWLModel& model,
                                 const Eigen::MatrixXd& x,
                                 const Eigen::MatrixXd& y, double target,
                                 const TrainConfig& cfg) {
  return retrain_compact(sparsify(model, target), x, y, cfg);
}

ErrorStats evaluate_model(const CompactPWLModel& model,
                          const DirectNNModel* direct,
                          const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  check_data(x, y);
  ErrorStats s;
  Eigen::MatrixXd lin = (x * model.linear.jstar.transpose()).rowwise() +
                        model.linear.rstar.transpose();
  s.linear = (y - lin).cwiseAbs().rowwise().sum();
  s.compact = (y - model.predict_rows(x)).cwiseAbs().rowwise().sum();
  s.direct = direct ? Eigen::VectorXd((y - direct->predict_rows(x)).cwiseAbs().rowwise().sum())
                    : Eigen::VectorXd::Zero(x.rows());
  s.mean_linear = s.linear.mean();
  s.mean_compact = s.compact.mean();
  s.mean_direct = s.direct.mean();
  s.linear_over_compact = s.mean_linear / s.mean_compact;
  s.direct_over_compact = s.mean_direct / s.mean_compact;
  return s;
}

Eigen::MatrixXd region_jacobian(const CompactPWLModel& model,
                                const std::vector<bool>& pattern) {
  if (static_cast<int>(pattern.size()) != model.rho())
    throw DimensionError("pattern length differs from the hidden width");
  Eigen::MatrixXd j = model.linear.jstar;
  for (int i = 0; i < model.rho(); ++i)
    if (pattern[i]) j += model.w2.col(i) * model.w1.col(i).transpose();
  return j;
}

std::vector<ActivationRegion> enumerate_activation_patterns(
    const CompactPWLModel& model, const Eigen::MatrixXd& x) {
  std::map<std::vector<bool>, long> seen;
  Eigen::MatrixXd pre = (x * model.w1).rowwise() + model.b.transpose();
  for (Eigen::Index r = 0; r < pre.rows(); ++r) {
    std::vector<bool> p(model.rho());
    for (int i = 0; i < model.rho(); ++i) p[i] = pre(r, i) > 0;
    ++seen[p];
  }
  std::vector<ActivationRegion> out;
  for (const auto& [p, count] : seen)
    out.push_back({p, region_jacobian(model, p), count});
  return out;
}

void write_model(std::ostream& os, const CompactPWLModel& m) {
  os << "acnn-model 1\n";
  os << "net_id " << (m.linear.net_id.empty() ? "-" : m.linear.net_id) << "\n";
  write_matrix(os, "jstar", m.linear.jstar);
  write_matrix(os, "rstar", m.linear.rstar.transpose());
  write_matrix(os, "x0", m.linear.x0.transpose());
  write_matrix(os, "w1", m.w1);
  write_matrix(os, "w2", m.w2);
  write_matrix(os, "b", m.b.transpose());
  write_matrix(os, "pinned_w1", m.pinned_w1.cast<double>());
  write_matrix(os, "pinned_w2", m.pinned_w2.cast<double>());
  os << "bounds " << m.bounds.size() << "\n";
  char buf[96];
  for (int i = 0; i < m.bounds.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g", m.bounds.mmin[i],
                  m.bounds.mmax[i]);
    os << buf << " " << to_string(m.bounds.status[i]) << " "
       << to_string(m.bounds.provenance[i]) << "\n";
  }
}

namespace {

Eigen::MatrixXd expect_matrix(std::istream& is, const char* name) {
  std::string got;
  Eigen::MatrixXd a = read_matrix(is, &got);
  if (got != name) throw ParseError(std::string("expected matrix ") + name, 0);
  return a;
}

Eigen::VectorXd expect_row(std::istream& is, const char* name) {
  Eigen::MatrixXd a = expect_matrix(is, name);
  if (a.rows() != 1) throw ParseError(std::string(name) + " must be one row", 0);
  return a.row(0).transpose();
}

ReluStatus parse_status(const std::string& s) {
  if (s == "free") return ReluStatus::kFree;
  if (s == "fixed_off") return ReluStatus::kFixedOff;
  if (s == "fixed_on") return ReluStatus::kFixedOn;
  throw ParseError("unknown unit status '" + s + "'", 0);
}

BoundProvenance parse_provenance(const std::string& s) {
  if (s == "none") return BoundProvenance::kNone;
  if (s == "interval") return BoundProvenance::kInterval;
  if (s == "lp") return BoundProvenance::kLp;
  if (s == "milp") return BoundProvenance::kMilp;
  throw ParseError("unknown bound provenance '" + s + "'", 0);
}

void expect_header(std::istream& is, const char* tag) {
  std::string got;
  int version = 0;
  if (!(is >> got >> version) || got != tag || version != 1)
    throw ParseError(std::string("not an ") + tag + " 1 document", 1);
}

}  // namespace

CompactPWLModel read_model(std::istream& is) {
  expect_header(is, "acnn-model");
  CompactPWLModel m;
  std::string key, id;
  if (!(is >> key >> id) || key != "net_id") throw ParseError("missing net_id", 2);
  m.linear.net_id = id == "-" ? "" : id;
  m.linear.jstar = expect_matrix(is, "jstar");
  m.linear.rstar = expect_row(is, "rstar");
  m.linear.x0 = expect_row(is, "x0");
  m.w1 = expect_matrix(is, "w1");
  m.w2 = expect_matrix(is, "w2");
  m.b = expect_row(is, "b");
  m.pinned_w1 = expect_matrix(is, "pinned_w1").array() != 0;
  m.pinned_w2 = expect_matrix(is, "pinned_w2").array() != 0;
  const int in = static_cast<int>(m.linear.jstar.cols());
  const int out = static_cast<int>(m.linear.jstar.rows());
  const int rho = static_cast<int>(m.b.size());
  if (m.linear.rstar.size() != out || m.linear.x0.size() != in ||
      m.w1.rows() != in || m.w1.cols() != rho || m.w2.rows() != out ||
      m.w2.cols() != rho || m.pinned_w1.rows() != in ||
      m.pinned_w2.rows() != out)
    throw DimensionError("model file matrices have inconsistent shapes");
  int nb = 0;
  if (!(is >> key >> nb) || key != "bounds") throw ParseError("missing bounds", 0);
  if (nb != 0 && nb != rho) throw DimensionError("bound count differs from rho");
  m.bounds.mmin.resize(nb);
  m.bounds.mmax.resize(nb);
  for (int i = 0; i < nb; ++i) {
    std::string st, pv;
    if (!(is >> m.bounds.mmin[i] >> m.bounds.mmax[i] >> st >> pv))
      throw ParseError("truncated bounds", 0);
    m.bounds.status.push_back(parse_status(st));
    m.bounds.provenance.push_back(parse_provenance(pv));
  }
  if (nb) m.bounds.validate();
  return m;
}

void write_direct_model(std::ostream& os, const DirectNNModel& m) {
  os << "acnn-direct 1\n";
  write_matrix(os, "w1", m.w1);
  write_matrix(os, "w2", m.w2);
  write_matrix(os, "b", m.b.transpose());
}

DirectNNModel read_direct_model(std::istream& is) {
  expect_header(is, "acnn-direct");
  DirectNNModel m;
  m.w1 = expect_matrix(is, "w1");
  m.w2 = expect_matrix(is, "w2");
  m.b = expect_row(is, "b");
  if (m.w1.cols() != m.b.size() || m.w2.cols() != m.b.size())
    throw DimensionError("direct model matrices have inconsistent shapes");
  return m;
}

}  // namespace acnn
