// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <span>
#include <vector>

#include <listal/autodiff/tape.hpp>

namespace listal::ad {

/// Builds a scalar-valued graph from the given input nodes.
using GraphFn = std::function<Var(Tape&, std::span<const Var>)>;
/// Builds a scalar-valued graph over externally owned parameters.
using ParamGraphFn = std::function<Var(Tape&)>;

/// Central-difference check of d graph / d inputs at `point`.
/// Returns max |analytic - numeric| / max(|numeric|, 1e-8) over every
/// input element.
double finite_difference_check(const GraphFn& graph, std::span<const Tensor> point,
                               double step = 1e-5);

/// Same check over the values of `params`, which the graph binds itself.
double finite_difference_check(const ParamGraphFn& graph, std::span<Parameter* const> params,
                               double step = 1e-5);

}  // namespace listal::ad
