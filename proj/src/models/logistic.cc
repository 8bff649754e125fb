/*
 * Copyright 2026 The hkdrisk Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "hkdrisk/models/logistic.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "hkdrisk/common/error.h"
#include "hkdrisk/common/log.h"

namespace hkdrisk {
namespace {

// log(1 + exp(-z)) without overflow.
double LogLoss(double margin, int y) {
  const double z = y == 1 ? margin : -margin;
  return z > 0 ? std::log1p(std::exp(-z)) : -z + std::log1p(std::exp(z));
}

struct Problem {
  const Dataset& data;
  Penalty penalty;
  double C;

  double Objective(const std::vector<double>& w, double b) const {
    double loss = 0.0;
    for (std::size_t r = 0; r < data.rows; ++r) loss += LogLoss(Margin(w, b, r), data.y[r]);
    return PenaltyValue(w) + C * loss;
  }
  double PenaltyValue(const std::vector<double>& w) const {
    double s = 0.0;
    for (double v : w) s += penalty == Penalty::kL1 ? std::abs(v) : 0.5 * v * v;
    return s;
  }
  double Margin(const std::vector<double>& w, double b, std::size_t r) const {
    double m = b;
    const auto x = data.row(r);
    for (std::size_t j = 0; j < w.size(); ++j) m += w[j] * x[j];
    return m;
  }
};

double SoftThreshold(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}

}  // namespace

LinearModel::LinearModel(std::vector<double> weights, double intercept, Penalty penalty, double C)
    : weights_(std::move(weights)), intercept_(intercept), penalty_(penalty), C_(C) {
  for (double w : weights_) {
    if (!std::isfinite(w)) throw Error(ErrorCode::kNumeric, "non-finite logistic weight", "weights");
  }
  if (!std::isfinite(intercept_)) throw Error(ErrorCode::kNumeric, "non-finite intercept", "intercept");
}

double LinearModel::Margin(std::span<const double> x) const {
  double m = intercept_;
  for (std::size_t j = 0; j < weights_.size(); ++j) m += weights_[j] * x[j];
  return m;
}

std::size_t LinearModel::CountZeroWeights() const {
  return static_cast<std::size_t>(std::count(weights_.begin(), weights_.end(), 0.0));
}

Json LinearModel::ToJson() const {
  return {{"family", "logistic"},
          {"weights", EncodeDoubles(weights_)},
          {"intercept", EncodeDouble(intercept_)},
          {"penalty", penalty_ == Penalty::kL1 ? "l1" : "l2"},
          {"C", EncodeDouble(C_)}};
}

LinearModel LinearModel::FromJson(const Json& json) {
  const std::string pen = json.value("penalty", std::string("l2"));
  if (pen != "l1" && pen != "l2") throw Error(ErrorCode::kSchema, "unknown penalty '" + pen + "'", "penalty");
  return LinearModel(DecodeDoubles(RequireMember(json, "weights")),
                     DecodeDouble(RequireMember(json, "intercept")),
                     pen == "l1" ? Penalty::kL1 : Penalty::kL2,
                     json.contains("C") ? DecodeDouble(json.at("C")) : 1.0);
}

LinearModel FitLogistic(const LogisticParams& params, const Dataset& data) {
  ClassifierSpec{"logistic", params, 0}.Validate();
  data.Validate();
  const std::size_t n = data.rows, d = data.cols;
  const bool l1 = params.penalty == Penalty::kL1;
  const Problem problem{data, params.penalty, params.C};

  std::vector<double> w(d, 0.0), grad(d), hdiag(d), dir(d), trial(d);
  std::vector<double> margin(n, 0.0), p(n), curv(n), xd(n);
  double b = 0.0;
  double objective = problem.Objective(w, b);

  // Loss gradient and minimum-norm subgradient violation at (w, b).
  auto evaluate = [&](double& grad_b) {
    grad_b = 0.0;
    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      p[r] = Sigmoid(margin[r]);
      curv[r] = params.C * std::max(p[r] * (1.0 - p[r]), 1e-12);
      const double resid = params.C * (p[r] - data.y[r]);
      grad_b += resid;
      const auto x = data.row(r);
      for (std::size_t j = 0; j < d; ++j) grad[j] += resid * x[j];
    }
    double viol = std::abs(grad_b);
    for (std::size_t j = 0; j < d; ++j) {
      double v;
      if (!l1) {
        v = std::abs(grad[j] + w[j]);
      } else if (w[j] != 0.0) {
        v = std::abs(grad[j] + (w[j] > 0 ? 1.0 : -1.0));
      } else {
        v = std::max(0.0, std::abs(grad[j]) - 1.0);
      }
      viol = std::max(viol, v);
    }
    return viol;
  };

  double grad_b = 0.0;
  double violation = evaluate(grad_b);
  const double stop = params.tolerance * std::max(1.0, violation);
  int iter = 0;
  for (; iter < params.max_iter && violation > stop; ++iter) {
    // Quadratic model: loss gradient + 1/2 dirᵀ(XᵀDX)dir, penalty exact.
    for (std::size_t j = 0; j < d; ++j) {
      double s = 0.0;
      for (std::size_t r = 0; r < n; ++r) {
        const double x = data.at(r, j);
        s += curv[r] * x * x;
      }
      hdiag[j] = s + 1e-12;
    }
    double hb = 1e-12;
    for (std::size_t r = 0; r < n; ++r) hb += curv[r];

    std::fill(dir.begin(), dir.end(), 0.0);
    double dir_b = 0.0;
    std::fill(xd.begin(), xd.end(), 0.0);  // X·dir + dir_b
    for (int sweep = 0; sweep < 50; ++sweep) {
      double max_step = 0.0;
      // Intercept coordinate.
      {
        double gq = grad_b;
        for (std::size_t r = 0; r < n; ++r) gq += curv[r] * xd[r];
        const double step = -gq / hb;
        dir_b += step;
        for (std::size_t r = 0; r < n; ++r) xd[r] += step;
        max_step = std::max(max_step, std::abs(step));
      }
      for (std::size_t j = 0; j < d; ++j) {
        double gq = grad[j];
        for (std::size_t r = 0; r < n; ++r) gq += curv[r] * xd[r] * data.at(r, j);
        const double cur = w[j] + dir[j];
        double next;
        if (l1) {
          next = SoftThreshold(hdiag[j] * cur - gq, 1.0) / hdiag[j];
        } else {
          // Minimize gq*t + hdiag/2 t^2 + 1/2 (cur + t)^2.
          next = cur - (gq + cur) / (hdiag[j] + 1.0);
        }
        const double step = next - cur;
        if (step == 0.0) continue;
        dir[j] += step;
        for (std::size_t r = 0; r < n; ++r) xd[r] += step * data.at(r, j);
        max_step = std::max(max_step, std::abs(step));
      }
      if (max_step <= 1e-12) break;
    }

    // Backtracking on the exact objective.
    double descent = grad_b * dir_b;
    for (std::size_t j = 0; j < d; ++j) descent += grad[j] * dir[j];
    for (std::size_t j = 0; j < d; ++j) trial[j] = w[j] + dir[j];
    descent += problem.PenaltyValue(trial) - problem.PenaltyValue(w);
    double alpha = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 40; ++ls) {
      for (std::size_t j = 0; j < d; ++j) trial[j] = w[j] + alpha * dir[j];
      const double trial_b = b + alpha * dir_b;
      const double f = problem.Objective(trial, trial_b);
      if (f <= objective + 1e-4 * alpha * std::min(descent, 0.0)) {
        w = trial;
        b = trial_b;
        objective = f;
        moved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!moved) break;
    for (std::size_t r = 0; r < n; ++r) margin[r] = problem.Margin(w, b, r);
    violation = evaluate(grad_b);
  }
  if (violation > stop) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "logistic regression stopped after %d iterations with optimality violation %.3g "
                  "(target %.3g)",
                  iter, violation, stop);
    LogWarning(buf);
  }
  LinearModel model(std::move(w), b, params.penalty, params.C);
  model.iterations_ = iter;
  model.violation_ = violation;
  return model;
}

}  // namespace hkdrisk
