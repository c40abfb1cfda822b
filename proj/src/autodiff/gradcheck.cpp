// SPDX-License-Identifier: Apache-2.0
#include <listal/autodiff/gradcheck.hpp>

#include <algorithm>
#include <cmath>

#include <listal/autodiff/optim.hpp>

namespace listal::ad {

namespace {

double relative_error(double analytic, double numeric) {
  return std::abs(analytic - numeric) / std::max(std::abs(numeric), 1e-8);
}

double evaluate_inputs(const GraphFn& graph, std::span<const Tensor> point) {
  Tape tape;
  std::vector<Var> vars;
  for (const Tensor& t : point) vars.push_back(tape.constant(t));
  return graph(tape, vars).value().item();
}

double evaluate_params(const ParamGraphFn& graph) {
  Tape tape;
  return graph(tape).value().item();
}

}  // namespace

double finite_difference_check(const GraphFn& graph, std::span<const Tensor> point, double step) {
  std::vector<Tensor> analytic;
  {
    Tape tape;
    std::vector<Var> vars;
    for (const Tensor& t : point) vars.push_back(tape.input(t));
    tape.backward(graph(tape, vars));
    for (Var v : vars) analytic.push_back(tape.grad(v));
  }
  std::vector<Tensor> probe(point.begin(), point.end());
  double worst = 0.0;
  for (std::size_t k = 0; k < probe.size(); ++k) {
    for (std::size_t i = 0; i < probe[k].size(); ++i) {
      const double x0 = probe[k][i];
      probe[k][i] = x0 + step;
      const double up = evaluate_inputs(graph, probe);
      probe[k][i] = x0 - step;
      const double down = evaluate_inputs(graph, probe);
      probe[k][i] = x0;
      worst = std::max(worst, relative_error(analytic[k][i], (up - down) / (2.0 * step)));
    }
  }
  return worst;
}

double finite_difference_check(const ParamGraphFn& graph, std::span<Parameter* const> params,
                               double step) {
  zero_grad(params);
  {
    Tape tape;
    tape.backward(graph(tape));
  }
  double worst = 0.0;
  for (Parameter* p : params) {
    for (std::size_t i = 0; i < p->value.size(); ++i) {
      const double x0 = p->value[i];
      p->value[i] = x0 + step;
      const double up = evaluate_params(graph);
      p->value[i] = x0 - step;
      const double down = evaluate_params(graph);
      p->value[i] = x0;
      worst = std::max(worst, relative_error(p->grad[i], (up - down) / (2.0 * step)));
    }
  }
  return worst;
}

}  // namespace listal::ad
