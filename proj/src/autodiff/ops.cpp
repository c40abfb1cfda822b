// SPDX-License-Identifier: Apache-2.0
#include <listal/autodiff/ops.hpp>

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Core>

namespace listal::ad {

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapMatrix = Eigen::Map<RowMatrix>;
using ConstMapMatrix = Eigen::Map<const RowMatrix>;

constexpr double kLogClamp = 1e-12;

Tape& same_tape(const char* op, Var a, Var b) {
  if (!a.tape() || a.tape() != b.tape())
    throw std::invalid_argument(std::string(op) + ": operands live on different tapes");
  return *a.tape();
}

[[noreturn]] void shape_fail(const char* op, const Tape& tape, std::initializer_list<Var> operands,
                             const std::string& detail) {
  std::string msg = std::string(op) + " (node " + std::to_string(tape.size()) + "): " + detail +
                    "; operands";
  for (Var v : operands)
    msg += " #" + std::to_string(v.id()) + shape_string(tape.value(v).shape());
  throw ShapeError(msg);
}

void require_rank2(const char* op, const Tape& tape, Var a) {
  if (tape.value(a).rank() != 2) shape_fail(op, tape, {a}, "expected a rank-2 tensor");
}

enum class Broadcast { Same, Row, Scalar };

Broadcast broadcast_kind(const char* op, const Tape& tape, Var a, Var b) {
  const Tensor& x = tape.value(a);
  const Tensor& y = tape.value(b);
  if (x.shape() == y.shape()) return Broadcast::Same;
  if (y.size() == 1) return Broadcast::Scalar;
  if (x.rank() == 2 && y.rank() == 2 && y.dim(0) == 1 && y.dim(1) == x.dim(1)) return Broadcast::Row;
  shape_fail(op, tape, {a, b}, "incompatible shapes");
}

// Elementwise unary op where the derivative is expressed from input x and output y.
template <class Forward, class Derivative>
Var unary(const char* op, Var a, Forward forward, Derivative derivative) {
  Tape& tape = *a.tape();
  const Tensor& x = tape.value(a);
  Tensor out(x.shape());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = forward(x[i]);
  const std::size_t ia = a.id();
  return tape.record(op, std::move(out), {ia}, [ia, derivative](Tape& t, std::size_t self) {
    if (!t.requires_grad(ia)) return;
    const Tensor& x = t.value(ia);
    const Tensor& y = t.value(self);
    const Tensor& g = t.grad_buffer(self);
    Tensor& gx = t.grad_buffer(ia);
    for (std::size_t i = 0; i < x.size(); ++i) gx[i] += g[i] * derivative(x[i], y[i]);
  });
}

}  // namespace

Var matmul(Var a, Var b) {
  Tape& tape = same_tape("matmul", a, b);
  const Tensor& x = tape.value(a);
  const Tensor& y = tape.value(b);
  if (x.rank() != 2 || y.rank() != 2 || x.dim(1) != y.dim(0))
    shape_fail("matmul", tape, {a, b}, "inner dimensions differ");
  const std::size_t m = x.dim(0), k = x.dim(1), n = y.dim(1);
  Tensor out({m, n});
  MapMatrix(out.data(), m, n).noalias() =
      ConstMapMatrix(x.data(), m, k) * ConstMapMatrix(y.data(), k, n);
  const std::size_t ia = a.id(), ib = b.id();
  return tape.record("matmul", std::move(out), {ia, ib}, [=](Tape& t, std::size_t self) {
    ConstMapMatrix g(t.grad_buffer(self).data(), m, n);
    if (t.requires_grad(ia)) {
      MapMatrix(t.grad_buffer(ia).data(), m, k).noalias() +=
          g * ConstMapMatrix(t.value(ib).data(), k, n).transpose();
    }
    if (t.requires_grad(ib)) {
      MapMatrix(t.grad_buffer(ib).data(), k, n).noalias() +=
          ConstMapMatrix(t.value(ia).data(), m, k).transpose() * g;
    }
  });
}

namespace {

// out[i] op= y[broadcast(i)] for each element, dispatched once per call.
template <class Body>
void for_each_broadcast(Broadcast kind, std::size_t n, std::size_t cols, Body body) {
  switch (kind) {
    case Broadcast::Same:
      for (std::size_t i = 0; i < n; ++i) body(i, i);
      break;
    case Broadcast::Row:
      for (std::size_t r = 0; r < n; r += cols)
        for (std::size_t c = 0; c < cols; ++c) body(r + c, c);
      break;
    case Broadcast::Scalar:
      for (std::size_t i = 0; i < n; ++i) body(i, 0);
      break;
  }
}

template <int Sign>
Var add_like(const char* op, Var a, Var b) {
  Tape& tape = same_tape(op, a, b);
  const Broadcast kind = broadcast_kind(op, tape, a, b);
  const Tensor& y = tape.value(b);
  Tensor out = tape.value(a);
  const std::size_t cols = out.shape().back();
  double* o = out.data();
  const double* yv = y.data();
  for_each_broadcast(kind, out.size(), cols, [&](std::size_t i, std::size_t j) { o[i] += Sign * yv[j]; });
  const std::size_t ia = a.id(), ib = b.id();
  return tape.record(op, std::move(out), {ia, ib}, [=](Tape& t, std::size_t self) {
    const Tensor& g = t.grad_buffer(self);
    const double* gv = g.data();
    if (t.requires_grad(ia)) {
      double* ga = t.grad_buffer(ia).data();
      for (std::size_t i = 0; i < g.size(); ++i) ga[i] += gv[i];
    }
    if (t.requires_grad(ib)) {
      double* gb = t.grad_buffer(ib).data();
      for_each_broadcast(kind, g.size(), cols,
                         [&](std::size_t i, std::size_t j) { gb[j] += Sign * gv[i]; });
    }
  });
}

}  // namespace

Var add(Var a, Var b) { return add_like<1>("add", a, b); }
Var sub(Var a, Var b) { return add_like<-1>("sub", a, b); }

Var mul(Var a, Var b) {
  Tape& tape = same_tape("mul", a, b);
  const Broadcast kind = broadcast_kind("mul", tape, a, b);
  const Tensor& y = tape.value(b);
  Tensor out = tape.value(a);
  const std::size_t cols = out.shape().back();
  double* o = out.data();
  const double* yv = y.data();
  for_each_broadcast(kind, out.size(), cols, [&](std::size_t i, std::size_t j) { o[i] *= yv[j]; });
  const std::size_t ia = a.id(), ib = b.id();
  return tape.record("mul", std::move(out), {ia, ib}, [=](Tape& t, std::size_t self) {
    const Tensor& g = t.grad_buffer(self);
    const double* gv = g.data();
    const double* xv = t.value(ia).data();
    const double* yv = t.value(ib).data();
    if (t.requires_grad(ia)) {
      double* ga = t.grad_buffer(ia).data();
      for_each_broadcast(kind, g.size(), cols,
                         [&](std::size_t i, std::size_t j) { ga[i] += gv[i] * yv[j]; });
    }
    if (t.requires_grad(ib)) {
      double* gb = t.grad_buffer(ib).data();
      for_each_broadcast(kind, g.size(), cols,
                         [&](std::size_t i, std::size_t j) { gb[j] += gv[i] * xv[i]; });
    }
  });
}

Var scale(Var a, double factor) {
  return unary("scale", a, [factor](double x) { return factor * x; },
               [factor](double, double) { return factor; });
}

Var add_scalar(Var a, double offset) {
  return unary("add_scalar", a, [offset](double x) { return x + offset; },
               [](double, double) { return 1.0; });
}

Var leaky_relu(Var a, double alpha) {
  return unary("leaky_relu", a, [alpha](double x) { return x > 0.0 ? x : alpha * x; },
               [alpha](double x, double) { return x > 0.0 ? 1.0 : alpha; });
}

Var sigmoid(Var a) {
  return unary("sigmoid", a,
               [](double x) {
                 if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
                 const double e = std::exp(x);
                 return e / (1.0 + e);
               },
               [](double, double y) { return y * (1.0 - y); });
}

Var tanh(Var a) {
  return unary("tanh", a, [](double x) { return std::tanh(x); },
               [](double, double y) { return 1.0 - y * y; });
}

Var log(Var a) {
  return unary("log", a, [](double x) { return std::log(std::max(x, kLogClamp)); },
               [](double x, double) { return x > kLogClamp ? 1.0 / x : 0.0; });
}

Var softmax(Var a) {
  Tape& tape = *a.tape();
  require_rank2("softmax", tape, a);
  const Tensor& x = tape.value(a);
  const std::size_t rows = x.dim(0), cols = x.dim(1);
  Tensor out(x.shape());
  for (std::size_t r = 0; r < rows; ++r) {
    double peak = x.at(r, 0);
    for (std::size_t c = 1; c < cols; ++c) peak = std::max(peak, x.at(r, c));
    double total = 0.0;
    for (std::size_t c = 0; c < cols; ++c) total += out.at(r, c) = std::exp(x.at(r, c) - peak);
    for (std::size_t c = 0; c < cols; ++c) out.at(r, c) /= total;
  }
  const std::size_t ia = a.id();
  return tape.record("softmax", std::move(out), {ia}, [=](Tape& t, std::size_t self) {
    const Tensor& y = t.value(self);
    const Tensor& g = t.grad_buffer(self);
    Tensor& gx = t.grad_buffer(ia);
    for (std::size_t r = 0; r < rows; ++r) {
      double dot = 0.0;
      for (std::size_t c = 0; c < cols; ++c) dot += g.at(r, c) * y.at(r, c);
      for (std::size_t c = 0; c < cols; ++c) gx.at(r, c) += y.at(r, c) * (g.at(r, c) - dot);
    }
  });
}

Var sum(Var a) {
  Tape& tape = *a.tape();
  const Tensor& x = tape.value(a);
  double total = 0.0;
  for (double v : x.values()) total += v;
  const std::size_t ia = a.id();
  return tape.record("sum", Tensor::scalar(total), {ia}, [ia](Tape& t, std::size_t self) {
    const double g = t.grad_buffer(self)[0];
    for (double& v : t.grad_buffer(ia).values()) v += g;
  });
}

Var mean(Var a) {
  Tape& tape = *a.tape();
  const Tensor& x = tape.value(a);
  double total = 0.0;
  for (double v : x.values()) total += v;
  const double n = static_cast<double>(x.size());
  const std::size_t ia = a.id();
  return tape.record("mean", Tensor::scalar(total / n), {ia}, [ia, n](Tape& t, std::size_t self) {
    const double g = t.grad_buffer(self)[0] / n;
    for (double& v : t.grad_buffer(ia).values()) v += g;
  });
}

Var concat(std::span<const Var> parts, std::size_t axis) {
  if (parts.empty()) throw ShapeError("concat: no operands");
  if (axis > 1) throw ShapeError("concat: axis must be 0 or 1");
  Tape& tape = *parts.front().tape();
  std::vector<std::size_t> ids;
  std::size_t rows = 0, cols = 0;
  for (Var p : parts) {
    if (p.tape() != &tape) throw std::invalid_argument("concat: operands live on different tapes");
    require_rank2("concat", tape, p);
    const Tensor& x = tape.value(p);
    if (axis == 0) {
      if (ids.empty()) cols = x.dim(1);
      if (x.dim(1) != cols) shape_fail("concat", tape, {parts.front(), p}, "column counts differ");
      rows += x.dim(0);
    } else {
      if (ids.empty()) rows = x.dim(0);
      if (x.dim(0) != rows) shape_fail("concat", tape, {parts.front(), p}, "row counts differ");
      cols += x.dim(1);
    }
    ids.push_back(p.id());
  }
  Tensor out({rows, cols});
  std::size_t offset = 0;
  for (auto id : ids) {
    const Tensor& x = tape.value(id);
    for (std::size_t r = 0; r < x.dim(0); ++r)
      for (std::size_t c = 0; c < x.dim(1); ++c) {
        if (axis == 0) out.at(offset + r, c) = x.at(r, c);
        else out.at(r, offset + c) = x.at(r, c);
      }
    offset += axis == 0 ? x.dim(0) : x.dim(1);
  }
  return tape.record("concat", std::move(out), ids, [ids, axis](Tape& t, std::size_t self) {
    const Tensor& g = t.grad_buffer(self);
    std::size_t offset = 0;
    for (auto id : ids) {
      const Shape& s = t.value(id).shape();
      if (t.requires_grad(id)) {
        Tensor& gx = t.grad_buffer(id);
        for (std::size_t r = 0; r < s[0]; ++r)
          for (std::size_t c = 0; c < s[1]; ++c)
            gx.at(r, c) += axis == 0 ? g.at(offset + r, c) : g.at(r, offset + c);
      }
      offset += axis == 0 ? s[0] : s[1];
    }
  });
}

Var reshape(Var a, Shape shape) {
  Tape& tape = *a.tape();
  const Tensor& x = tape.value(a);
  if (shape_numel(shape) != x.size())
    shape_fail("reshape", tape, {a}, "cannot view as " + shape_string(shape));
  const std::size_t ia = a.id();
  return tape.record("reshape", x.reshaped(std::move(shape)), {ia}, [ia](Tape& t, std::size_t self) {
    const Tensor& g = t.grad_buffer(self);
    Tensor& gx = t.grad_buffer(ia);
    for (std::size_t i = 0; i < g.size(); ++i) gx[i] += g[i];
  });
}

Var slice(Var a, std::size_t axis, std::size_t begin, std::size_t end) {
  Tape& tape = *a.tape();
  require_rank2("slice", tape, a);
  const Tensor& x = tape.value(a);
  if (axis > 1 || begin >= end || end > x.dim(axis))
    shape_fail("slice", tape, {a},
               "range [" + std::to_string(begin) + "," + std::to_string(end) + ") on axis " +
                   std::to_string(axis) + " out of bounds");
  const std::size_t rows = axis == 0 ? end - begin : x.dim(0);
  const std::size_t cols = axis == 1 ? end - begin : x.dim(1);
  const std::size_t r0 = axis == 0 ? begin : 0, c0 = axis == 1 ? begin : 0;
  Tensor out({rows, cols});
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) out.at(r, c) = x.at(r0 + r, c0 + c);
  const std::size_t ia = a.id();
  return tape.record("slice", std::move(out), {ia}, [=](Tape& t, std::size_t self) {
    const Tensor& g = t.grad_buffer(self);
    Tensor& gx = t.grad_buffer(ia);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) gx.at(r0 + r, c0 + c) += g.at(r, c);
  });
}

Var conv2d(Var x, Var weight, Var bias) {
  Tape& tape = same_tape("conv2d", x, weight);
  if (bias.tape() != &tape) throw std::invalid_argument("conv2d: operands live on different tapes");
  const Tensor& in = tape.value(x);
  const Tensor& w = tape.value(weight);
  const Tensor& b = tape.value(bias);
  if (in.rank() != 4 || w.rank() != 4 || w.dim(1) != in.dim(1) || w.dim(2) != w.dim(3) ||
      w.dim(2) % 2 == 0 || b.size() != w.dim(0))
    shape_fail("conv2d", tape, {x, weight, bias}, "expected x[N,C,H,W], w[O,C,K,K] (odd K), b[O]");
  const std::size_t N = in.dim(0), C = in.dim(1), H = in.dim(2), W = in.dim(3);
  const std::size_t O = w.dim(0), K = w.dim(2);
  const long pad = static_cast<long>(K / 2);

  auto xi = [=](std::size_t n, std::size_t c, std::size_t h, std::size_t ww) {
    return ((n * C + c) * H + h) * W + ww;
  };
  auto wi = [=](std::size_t o, std::size_t c, std::size_t kh, std::size_t kw) {
    return ((o * C + c) * K + kh) * K + kw;
  };
  auto yi = [=](std::size_t n, std::size_t o, std::size_t h, std::size_t ww) {
    return ((n * O + o) * H + h) * W + ww;
  };
  // Visits every (output, input, weight) index triple inside the padded window.
  auto for_each_tap = [=](auto&& body) {
    for (std::size_t n = 0; n < N; ++n)
      for (std::size_t o = 0; o < O; ++o)
        for (std::size_t h = 0; h < H; ++h)
          for (std::size_t ww = 0; ww < W; ++ww)
            for (std::size_t c = 0; c < C; ++c)
              for (std::size_t kh = 0; kh < K; ++kh) {
                const long ih = static_cast<long>(h) + static_cast<long>(kh) - pad;
                if (ih < 0 || ih >= static_cast<long>(H)) continue;
                for (std::size_t kw = 0; kw < K; ++kw) {
                  const long iw = static_cast<long>(ww) + static_cast<long>(kw) - pad;
                  if (iw < 0 || iw >= static_cast<long>(W)) continue;
                  body(yi(n, o, h, ww), xi(n, c, ih, iw), wi(o, c, kh, kw));
                }
              }
  };

  Tensor out({N, O, H, W});
  for (std::size_t n = 0; n < N; ++n)
    for (std::size_t o = 0; o < O; ++o)
      for (std::size_t p = 0; p < H * W; ++p) out[(n * O + o) * H * W + p] = b[o];
  for_each_tap([&](std::size_t y, std::size_t xin, std::size_t wk) { out[y] += in[xin] * w[wk]; });

  const std::size_t ix = x.id(), iw = weight.id(), ib = bias.id();
  return tape.record("conv2d", std::move(out), {ix, iw, ib},
                     [=](Tape& t, std::size_t self) {
                       const Tensor& g = t.grad_buffer(self);
                       const Tensor& inv = t.value(ix);
                       const Tensor& wv = t.value(iw);
                       if (t.requires_grad(ix)) {
                         Tensor& gx = t.grad_buffer(ix);
                         for_each_tap([&](std::size_t y, std::size_t xin, std::size_t wk) {
                           gx[xin] += g[y] * wv[wk];
                         });
                       }
                       if (t.requires_grad(iw)) {
                         Tensor& gw = t.grad_buffer(iw);
                         for_each_tap([&](std::size_t y, std::size_t xin, std::size_t wk) {
                           gw[wk] += g[y] * inv[xin];
                         });
                       }
                       if (t.requires_grad(ib)) {
                         Tensor& gb = t.grad_buffer(ib);
                         for (std::size_t n = 0; n < N; ++n)
                           for (std::size_t o = 0; o < O; ++o)
                             for (std::size_t p = 0; p < H * W; ++p)
                               gb[o] += g[(n * O + o) * H * W + p];
                       }
                     });
}

Var global_average_pool(Var x) {
  Tape& tape = *x.tape();
  const Tensor& in = tape.value(x);
  if (in.rank() == 2) return x;
  if (in.rank() != 4) shape_fail("global_average_pool", tape, {x}, "expected [N,C,H,W] or [N,F]");
  const std::size_t N = in.dim(0), C = in.dim(1), area = in.dim(2) * in.dim(3);
  Tensor out({N, C});
  for (std::size_t nc = 0; nc < N * C; ++nc) {
    double total = 0.0;
    for (std::size_t p = 0; p < area; ++p) total += in[nc * area + p];
    out[nc] = total / static_cast<double>(area);
  }
  const std::size_t ix = x.id();
  return tape.record("global_average_pool", std::move(out), {ix}, [=](Tape& t, std::size_t self) {
    const Tensor& g = t.grad_buffer(self);
    Tensor& gx = t.grad_buffer(ix);
    for (std::size_t nc = 0; nc < N * C; ++nc) {
      const double share = g[nc] / static_cast<double>(area);
      for (std::size_t p = 0; p < area; ++p) gx[nc * area + p] += share;
    }
  });
}

Var squared_error(Var prediction, const Tensor& target) {
  Tape& tape = *prediction.tape();
  const Tensor& p = tape.value(prediction);
  if (p.rank() != 2 || p.shape() != target.shape())
    shape_fail("squared_error", tape, {prediction},
               "target shape " + shape_string(target.shape()) + " differs");
  const std::size_t rows = p.dim(0), cols = p.dim(1);
  Tensor out({rows, 1});
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const double e = p.at(r, c) - target.at(r, c);
      out[r] += e * e;
    }
  const std::size_t ip = prediction.id();
  return tape.record("squared_error", std::move(out), {ip},
                     [=, target = target](Tape& t, std::size_t self) {
                       const Tensor& g = t.grad_buffer(self);
                       const Tensor& pv = t.value(ip);
                       Tensor& gp = t.grad_buffer(ip);
                       for (std::size_t r = 0; r < rows; ++r)
                         for (std::size_t c = 0; c < cols; ++c)
                           gp.at(r, c) += 2.0 * g[r] * (pv.at(r, c) - target.at(r, c));
                     });
}

Var cross_entropy(Var logits, std::span<const int> labels) {
  Tape& tape = *logits.tape();
  require_rank2("cross_entropy", tape, logits);
  const Tensor& z = tape.value(logits);
  const std::size_t rows = z.dim(0), cols = z.dim(1);
  if (labels.size() != rows)
    shape_fail("cross_entropy", tape, {logits},
               std::to_string(labels.size()) + " labels for " + std::to_string(rows) + " rows");
  for (std::size_t r = 0; r < rows; ++r)
    if (labels[r] < 0 || static_cast<std::size_t>(labels[r]) >= cols)
      throw std::out_of_range("cross_entropy: label " + std::to_string(labels[r]) + " at row " +
                              std::to_string(r) + " outside [0," + std::to_string(cols) + ")");
  Tensor probs({rows, cols});
  Tensor out({rows, 1});
  for (std::size_t r = 0; r < rows; ++r) {
    double peak = z.at(r, 0);
    for (std::size_t c = 1; c < cols; ++c) peak = std::max(peak, z.at(r, c));
    double total = 0.0;
    for (std::size_t c = 0; c < cols; ++c) total += probs.at(r, c) = std::exp(z.at(r, c) - peak);
    for (std::size_t c = 0; c < cols; ++c) probs.at(r, c) /= total;
    out[r] = std::log(total) + peak - z.at(r, static_cast<std::size_t>(labels[r]));
  }
  const std::size_t iz = logits.id();
  std::vector<int> owned(labels.begin(), labels.end());
  return tape.record("cross_entropy", std::move(out), {iz},
                     [=, probs = std::move(probs), owned = std::move(owned)](Tape& t,
                                                                             std::size_t self) {
                       const Tensor& g = t.grad_buffer(self);
                       Tensor& gz = t.grad_buffer(iz);
                       for (std::size_t r = 0; r < rows; ++r)
                         for (std::size_t c = 0; c < cols; ++c) {
                           const double onehot =
                               static_cast<std::size_t>(owned[r]) == c ? 1.0 : 0.0;
                           gz.at(r, c) += g[r] * (probs.at(r, c) - onehot);
                         }
                     });
}

Var minmax_normalize(Var a) {
  Tape& tape = *a.tape();
  require_rank2("minmax_normalize", tape, a);
  const Tensor& x = tape.value(a);
  const std::size_t rows = x.dim(0), cols = x.dim(1);
  Tensor out({rows, cols});
  std::vector<std::size_t> lo(rows), hi(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 1; c < cols; ++c) {
      if (x.at(r, c) < x.at(r, lo[r])) lo[r] = c;
      if (x.at(r, c) > x.at(r, hi[r])) hi[r] = c;
    }
    const double range = x.at(r, hi[r]) - x.at(r, lo[r]);
    if (range < 1e-12) continue;
    for (std::size_t c = 0; c < cols; ++c) out.at(r, c) = (x.at(r, c) - x.at(r, lo[r])) / range;
  }
  const std::size_t ia = a.id();
  return tape.record("minmax_normalize", std::move(out), {ia},
                     [=](Tape& t, std::size_t self) {
                       const Tensor& xv = t.value(ia);
                       const Tensor& y = t.value(self);
                       const Tensor& g = t.grad_buffer(self);
                       Tensor& gx = t.grad_buffer(ia);
                       for (std::size_t r = 0; r < rows; ++r) {
                         const double range = xv.at(r, hi[r]) - xv.at(r, lo[r]);
                         if (range < 1e-12) continue;
                         double g_sum = 0.0, gy_sum = 0.0;
                         for (std::size_t c = 0; c < cols; ++c) {
                           g_sum += g.at(r, c);
                           gy_sum += g.at(r, c) * y.at(r, c);
                           gx.at(r, c) += g.at(r, c) / range;
                         }
                         gx.at(r, lo[r]) += (gy_sum - g_sum) / range;
                         gx.at(r, hi[r]) -= gy_sum / range;
                       }
                     });
}

}  // namespace listal::ad
