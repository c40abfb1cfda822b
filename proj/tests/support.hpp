// SPDX-License-Identifier: Apache-2.0
// Test-side helpers: random tensors and an independent central-difference
// gradient of a graph builder.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include <listal/autodiff/autodiff.hpp>

namespace testsupport {

using listal::ad::Tape;
using listal::ad::Tensor;
using listal::ad::Var;
using Builder = std::function<Var(Tape&, std::span<const Var>)>;

inline Tensor random_tensor(listal::ad::Shape shape, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  Tensor t(std::move(shape));
  std::uniform_real_distribution<double> u(lo, hi);
  for (double& v : t.values()) v = u(rng);
  return t;
}

inline double evaluate(const Builder& f, const std::vector<Tensor>& point) {
  Tape tape;
  std::vector<Var> vars;
  for (const auto& t : point) vars.push_back(tape.constant(t));
  return f(tape, vars).value().item();
}

inline std::vector<Tensor> analytic_gradient(const Builder& f, const std::vector<Tensor>& point) {
  Tape tape;
  std::vector<Var> vars;
  for (const auto& t : point) vars.push_back(tape.input(t));
  tape.backward(f(tape, vars));
  std::vector<Tensor> out;
  for (const auto& v : vars) out.push_back(tape.grad(v));
  return out;
}

inline std::vector<Tensor> numeric_gradient(const Builder& f, std::vector<Tensor> point, double h = 1e-5) {
  std::vector<Tensor> out;
  for (std::size_t k = 0; k < point.size(); ++k) {
    Tensor g(point[k].shape());
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double keep = point[k][i];
      point[k][i] = keep + h;
      const double up = evaluate(f, point);
      point[k][i] = keep - h;
      const double down = evaluate(f, point);
      point[k][i] = keep;
      g[i] = (up - down) / (2.0 * h);
    }
    out.push_back(std::move(g));
  }
  return out;
}

/// max |a - n| / max(|n|, 1e-6) across all elements.
inline double gradient_error(const Builder& f, const std::vector<Tensor>& point) {
  const auto a = analytic_gradient(f, point);
  const auto n = numeric_gradient(f, point);
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    for (std::size_t i = 0; i < a[k].size(); ++i)
      worst = std::max(worst, std::abs(a[k][i] - n[k][i]) / std::max(std::abs(n[k][i]), 1e-6));
  return worst;
}

/// Contracts any output to a scalar with position-dependent weights.
inline Var contract(Tape& tape, Var v) {
  Tensor w(v.shape());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = 0.25 + 0.125 * static_cast<double>(i % 5);
  return listal::ad::sum(listal::ad::mul(v, tape.constant(w)));
}

}  // namespace testsupport
