// SPDX-License-Identifier: Apache-2.0
/**
 * @file   ops.hpp
 * @brief  Differentiable primitives recorded on a Tape.
 *
 * Rank-2 tensors are [rows, cols]; convolutional activations are
 * [batch, channels, height, width]. Shape violations throw ShapeError naming
 * the primitive and the ids of its operand nodes.
 */
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <listal/autodiff/tape.hpp>

namespace listal::ad {

/// [m,k] x [k,n] -> [m,n]
Var matmul(Var a, Var b);

/// Elementwise a + b. `b` may match `a`, be a [1,n] row broadcast over the
/// rows of a [m,n] `a`, or hold a single element.
Var add(Var a, Var b);
Var sub(Var a, Var b);
/// Elementwise product; same broadcasting rules as add().
Var mul(Var a, Var b);

Var scale(Var a, double factor);
Var add_scalar(Var a, double offset);

Var leaky_relu(Var a, double alpha);
Var sigmoid(Var a);
Var tanh(Var a);
/// Natural log with inputs clamped at 1e-12 (zero gradient where clamped).
Var log(Var a);

/// Row-wise softmax of a rank-2 tensor.
Var softmax(Var a);

/// Mean / sum of all elements -> [1].
Var mean(Var a);
Var sum(Var a);

/// Concatenate rank-2 tensors along axis 0 (rows) or 1 (columns).
Var concat(std::span<const Var> parts, std::size_t axis);
/// Same values viewed under a new shape with equal element count.
Var reshape(Var a, Shape shape);

/// Half-open range [begin, end) of a rank-2 tensor along `axis`.
Var slice(Var a, std::size_t axis, std::size_t begin, std::size_t end);

/// Stride-1 convolution with zero "same" padding.
/// x: [N,C,H,W], weight: [O,C,K,K] with odd K, bias: [O].
Var conv2d(Var x, Var weight, Var bias);

/// [N,C,H,W] -> [N,C] spatial mean per channel. Rank-2 inputs pass through.
Var global_average_pool(Var x);

/// Per-sample squared error summed over columns: [N,k] -> [N,1].
Var squared_error(Var prediction, const Tensor& target);

/// Per-sample cross-entropy from logits [N,C] via a max-shifted
/// log-softmax -> [N,1].
Var cross_entropy(Var logits, std::span<const int> labels);

/// Row-wise min-max normalization to [0,1]. Rows whose range is below
/// 1e-12 map to zeros with zero gradient.
Var minmax_normalize(Var a);

}  // namespace listal::ad
