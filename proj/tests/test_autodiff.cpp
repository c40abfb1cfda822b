// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include <listal/autodiff/autodiff.hpp>

#include "support.hpp"

using namespace listal::ad;
using testsupport::contract;
using testsupport::gradient_error;
using testsupport::random_tensor;

namespace {
constexpr double kTol = 1e-4;
std::mt19937_64& rng() {
  static std::mt19937_64 r(20240517);
  return r;
}
}  // namespace

TEST_CASE("tensor construction checks shape and values") {
  CHECK_THROWS_AS(Tensor({2, 0}), ShapeError);
  CHECK_THROWS_AS(Tensor(Shape{}), ShapeError);
  CHECK_THROWS_AS(Tensor({2, 2}, std::vector<double>{1, 2, 3}), ShapeError);
  Tensor t({2, 3}, {1, 2, 3, 4, 5, 6});
  CHECK(t.at(1, 2) == 6);
  CHECK(t.reshaped({3, 2}).at(2, 0) == 5);
  CHECK_THROWS_AS(t.reshaped({4, 2}), ShapeError);
  CHECK_THROWS(t.item());
  CHECK(Tensor::scalar(2.5).item() == 2.5);
  t[0] = std::numeric_limits<double>::quiet_NaN();
  CHECK_FALSE(t.all_finite());
}

TEST_CASE("matmul forward matches a triple loop and its gradient matches finite differences") {
  const Tensor a = random_tensor({3, 4}, rng()), b = random_tensor({4, 5}, rng());
  Tape tape;
  const Tensor c = matmul(tape.constant(a), tape.constant(b)).value();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 5; ++j) {
      double s = 0;
      for (std::size_t k = 0; k < 4; ++k) s += a.at(i, k) * b.at(k, j);
      CHECK(c.at(i, j) == doctest::Approx(s).epsilon(1e-14));
    }
  CHECK(gradient_error([](Tape& t, std::span<const Var> x) { return contract(t, matmul(x[0], x[1])); }, {a, b}) < kTol);
}

TEST_CASE("matmul shape mismatch names the op and operand shapes") {
  Tape tape;
  Var a = tape.constant(Tensor({2, 3})), b = tape.constant(Tensor({2, 3}));
  try {
    matmul(a, b);
    FAIL("expected ShapeError");
  } catch (const ShapeError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("matmul") != std::string::npos);
    CHECK(msg.find("[2,3]") != std::string::npos);
  }
}

TEST_CASE("broadcast add/sub/mul: same, row and scalar operands") {
  const Tensor a = random_tensor({3, 4}, rng()), row = random_tensor({1, 4}, rng()), s = random_tensor({1}, rng());
  Tape tape;
  const Tensor sum = add(tape.constant(a), tape.constant(row)).value();
  const Tensor prod = mul(tape.constant(a), tape.constant(s)).value();
  const Tensor diff = sub(tape.constant(a), tape.constant(a)).value();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(sum.at(i, j) == a.at(i, j) + row[j]);
      CHECK(prod.at(i, j) == a.at(i, j) * s[0]);
      CHECK(diff.at(i, j) == 0.0);
    }
  CHECK_THROWS_AS(add(tape.constant(a), tape.constant(Tensor({4, 3}))), ShapeError);
  CHECK(gradient_error([](Tape& t, std::span<const Var> x) { return contract(t, add(x[0], x[1])); }, {a, row}) < kTol);
  CHECK(gradient_error([](Tape& t, std::span<const Var> x) { return contract(t, sub(x[0], x[1])); }, {a, s}) < kTol);
  CHECK(gradient_error([](Tape& t, std::span<const Var> x) { return contract(t, mul(x[0], x[1])); }, {a, row}) < kTol);
  CHECK(gradient_error([](Tape& t, std::span<const Var> x) { return contract(t, mul(x[0], x[1])); }, {a, a}) < kTol);
}

TEST_CASE("elementwise primitives: values and gradients") {
  const Tensor x = random_tensor({2, 6}, rng(), -2.0, 2.0);
  Tape tape;
  Var v = tape.constant(x);
  const Tensor lr = leaky_relu(v, 0.01).value(), sg = sigmoid(v).value(), th = tanh(v).value();
  const Tensor sc = scale(v, -3.0).value(), as = add_scalar(v, 0.5).value();
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(lr[i] == (x[i] > 0 ? x[i] : 0.01 * x[i]));
    CHECK(sg[i] == doctest::Approx(1.0 / (1.0 + std::exp(-x[i]))).epsilon(1e-14));
    CHECK(th[i] == doctest::Approx(std::tanh(x[i])).epsilon(1e-14));
    CHECK(sc[i] == -3.0 * x[i]);
    CHECK(as[i] == x[i] + 0.5);
  }
  using F = Var (*)(Var);
  for (F f : {F(sigmoid), F(tanh)})
    CHECK(gradient_error([f](Tape& t, std::span<const Var> in) { return contract(t, f(in[0])); }, {x}) < kTol);
  CHECK(gradient_error([](Tape& t, std::span<const Var> in) { return contract(t, leaky_relu(in[0], 0.01)); }, {x}) < kTol);
  CHECK(gradient_error([](Tape& t, std::span<const Var> in) { return contract(t, scale(in[0], 2.5)); }, {x}) < kTol);
  CHECK(gradient_error([](Tape& t, std::span<const Var> in) { return contract(t, add_scalar(in[0], 2.5)); }, {x}) < kTol);
  const Tensor pos = random_tensor({2, 3}, rng(), 0.2, 3.0);
  CHECK(gradient_error([](Tape& t, std::span<const Var> in) { return contract(t, log(in[0])); }, {pos}) < kTol);
}

TEST_CASE("sigmoid stays finite for large magnitudes") {
  Tape tape;
  const Tensor y = sigmoid(tape.constant(Tensor({1, 2}, {-800.0, 800.0}))).value();
  CHECK(y[0] == doctest::Approx(0.0));
  CHECK(y[1] == 1.0);
}

TEST_CASE("softmax rows sum to one, reductions and gradients") {
  const Tensor x = random_tensor({3, 5}, rng(), -3.0, 3.0);
  Tape tape;
  const Tensor p = softmax(tape.constant(x)).value();
  for (std::size_t i = 0; i < 3; ++i) {
    double s = 0;
    for (std::size_t j = 0; j < 5; ++j) s += p.at(i, j);
    CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
  }
  double total = 0;
  for (double v : x.values()) total += v;
  CHECK(sum(tape.constant(x)).value().item() == doctest::Approx(total));
  CHECK(mean(tape.constant(x)).value().item() == doctest::Approx(total / 15.0));
  CHECK(gradient_error([](Tape& t, std::span<const Var> in) { return contract(t, softmax(in[0])); }, {x}) < kTol);
  CHECK(gradient_error([](Tape&, std::span<const Var> in) { return mean(in[0]); }, {x}) < kTol);
}

TEST_CASE("concat, reshape and slice move values and gradients") {
  const Tensor a = random_tensor({2, 3}, rng()), b = random_tensor({2, 2}, rng()), c = random_tensor({1, 3}, rng());
  Tape tape;
  const Var cols[2] = {tape.constant(a), tape.constant(b)};
  const Tensor joined = concat(cols, 1).value();
  CHECK(joined.shape() == Shape{2, 5});
  CHECK(joined.at(1, 3) == b.at(1, 0));
  const Var rows[2] = {tape.constant(a), tape.constant(c)};
  CHECK(concat(rows, 0).value().at(2, 1) == c[1]);
  CHECK(slice(tape.constant(a), 1, 1, 3).value().at(1, 0) == a.at(1, 1));
  CHECK_THROWS_AS(slice(tape.constant(a), 1, 2, 4), ShapeError);
  CHECK_THROWS_AS(reshape(tape.constant(a), {4, 2}), ShapeError);
  CHECK(gradient_error(
            [](Tape& t, std::span<const Var> in) {
              const Var parts[2] = {in[0], in[1]};
              return contract(t, slice(reshape(concat(parts, 1), {5, 2}), 0, 1, 4));
            },
            {a, b}) < kTol);
  CHECK(gradient_error(
            [](Tape& t, std::span<const Var> in) {
              const Var parts[2] = {in[0], in[1]};
              return contract(t, slice(concat(parts, 0), 1, 0, 2));
            },
            {a, c}) < kTol);
}

TEST_CASE("conv2d with same padding matches a direct loop") {
  const Tensor x = random_tensor({2, 2, 4, 5}, rng()), w = random_tensor({3, 2, 3, 3}, rng()), b = random_tensor({3}, rng());
  Tape tape;
  const Tensor y = conv2d(tape.constant(x), tape.constant(w), tape.constant(b)).value();
  CHECK(y.shape() == Shape{2, 3, 4, 5});
  auto X = [&](std::size_t n, std::size_t c, long r, long q) {
    if (r < 0 || q < 0 || r >= 4 || q >= 5) return 0.0;
    return x[((n * 2 + c) * 4 + static_cast<std::size_t>(r)) * 5 + static_cast<std::size_t>(q)];
  };
  for (std::size_t n = 0; n < 2; ++n)
    for (std::size_t o = 0; o < 3; ++o)
      for (long r = 0; r < 4; ++r)
        for (long q = 0; q < 5; ++q) {
          double s = b[o];
          for (std::size_t c = 0; c < 2; ++c)
            for (long i = 0; i < 3; ++i)
              for (long j = 0; j < 3; ++j)
                s += w[((o * 2 + c) * 3 + static_cast<std::size_t>(i)) * 3 + static_cast<std::size_t>(j)] *
                     X(n, c, r + i - 1, q + j - 1);
          CHECK(y[((n * 3 + o) * 4 + static_cast<std::size_t>(r)) * 5 + static_cast<std::size_t>(q)] ==
                doctest::Approx(s).epsilon(1e-13));
        }
  CHECK(gradient_error([](Tape& t, std::span<const Var> in) { return contract(t, conv2d(in[0], in[1], in[2])); },
                       {x, w, b}) < kTol);
  CHECK_THROWS_AS(conv2d(tape.constant(x), tape.constant(Tensor({3, 2, 2, 2})), tape.constant(b)), ShapeError);
}

TEST_CASE("global average pool averages each channel") {
  const Tensor x = random_tensor({2, 3, 2, 2}, rng());
  Tape tape;
  const Tensor y = global_average_pool(tape.constant(x)).value();
  CHECK(y.shape() == Shape{2, 3});
  CHECK(y.at(1, 2) == doctest::Approx((x[20] + x[21] + x[22] + x[23]) / 4.0));
  CHECK(gradient_error([](Tape& t, std::span<const Var> in) { return contract(t, global_average_pool(in[0])); }, {x}) < kTol);
  const Tensor flat = random_tensor({2, 3}, rng());
  CHECK(global_average_pool(tape.constant(flat)).value() == flat);
}

TEST_CASE("squared error and cross entropy per sample") {
  const Tensor pred = random_tensor({3, 2}, rng()), target = random_tensor({3, 2}, rng());
  const Tensor logits = random_tensor({3, 4}, rng(), -2.0, 2.0);
  const std::vector<int> labels = {3, 0, 2};
  Tape tape;
  const Tensor se = squared_error(tape.constant(pred), target).value();
  const Tensor ce = cross_entropy(tape.constant(logits), labels).value();
  CHECK(se.shape() == Shape{3, 1});
  for (std::size_t i = 0; i < 3; ++i) {
    const double e0 = pred.at(i, 0) - target.at(i, 0), e1 = pred.at(i, 1) - target.at(i, 1);
    CHECK(se[i] == doctest::Approx(e0 * e0 + e1 * e1).epsilon(1e-14));
    double z = 0;
    for (std::size_t j = 0; j < 4; ++j) z += std::exp(logits.at(i, j));
    CHECK(ce[i] == doctest::Approx(std::log(z) - logits.at(i, static_cast<std::size_t>(labels[i]))).epsilon(1e-13));
  }
  CHECK(gradient_error([target](Tape& t, std::span<const Var> in) { return contract(t, squared_error(in[0], target)); }, {pred}) < kTol);
  CHECK(gradient_error([labels](Tape& t, std::span<const Var> in) { return contract(t, cross_entropy(in[0], labels)); }, {logits}) < kTol);
  const std::vector<int> bad = {0, 4, 1};
  CHECK_THROWS_AS(cross_entropy(tape.constant(logits), bad), std::out_of_range);
}

TEST_CASE("minmax normalize maps rows onto [0,1] and handles constant rows") {
  const Tensor x = random_tensor({3, 7}, rng(), -5.0, 5.0);
  Tape tape;
  const Tensor y = minmax_normalize(tape.constant(x)).value();
  for (std::size_t i = 0; i < 3; ++i) {
    double lo = x.at(i, 0), hi = x.at(i, 0);
    for (std::size_t j = 0; j < 7; ++j) { lo = std::min(lo, x.at(i, j)); hi = std::max(hi, x.at(i, j)); }
    for (std::size_t j = 0; j < 7; ++j) CHECK(y.at(i, j) == doctest::Approx((x.at(i, j) - lo) / (hi - lo)).epsilon(1e-14));
  }
  CHECK(gradient_error([](Tape& t, std::span<const Var> in) { return contract(t, minmax_normalize(in[0])); }, {x}) < kTol);
  Tape flat;
  Var c = flat.input(Tensor({1, 4}, 2.0));
  Var out = minmax_normalize(c);
  for (double v : out.value().values()) CHECK(v == 0.0);
  flat.backward(contract(flat, out));
  const Tensor grad = flat.grad(c);
  for (double g : grad.values()) CHECK(g == 0.0);
}

TEST_CASE("tape: constants stop gradients, parameters accumulate, seeds must be scalar") {
  Parameter p("p", Tensor({1, 2}, {1.0, -2.0}));
  Tape tape;
  Var a = tape.parameter(p);
  Var stopped = tape.constant(mul(a, a).value());
  Var loss = sum(add(mul(a, a), stopped));
  tape.backward(loss);
  CHECK(p.grad[0] == 2.0);
  CHECK(p.grad[1] == -4.0);
  Tape again;
  Var b = again.parameter(p);
  again.backward(sum(b));
  CHECK(p.grad[0] == 3.0);
  CHECK_THROWS_AS(tape.backward(a), ShapeError);
  Tape other;
  CHECK_THROWS_AS(other.backward(loss), std::invalid_argument);
  CHECK(tape.grad(stopped).values()[0] == 0.0);
}

TEST_CASE("library finite-difference checker agrees with a hand-derived gradient") {
  const Tensor x({1, 3}, {0.5, -1.0, 2.0});
  const double err = finite_difference_check(
      [](Tape& t, std::span<const Var> in) { return sum(mul(in[0], in[0])); }, std::span<const Tensor>(&x, 1));
  CHECK(err < 1e-8);
}

TEST_CASE("SGD with momentum and weight decay follows the update rule") {
  Parameter p("w", Tensor({2}, {1.0, -0.5}));
  Parameter* params[] = {&p};
  Optimizer opt(OptimizerConfig::sgd(0.1, 0.9, 0.01));
  double buf[2] = {0, 0}, theta[2] = {1.0, -0.5};
  const double grads[3][2] = {{0.3, -0.2}, {0.1, 0.4}, {-0.5, 0.05}};
  for (const auto& g : grads) {
    p.grad = Tensor({2}, {g[0], g[1]});
    opt.step(params);
    for (int i = 0; i < 2; ++i) {
      const double gi = g[i] + 0.01 * theta[i];
      buf[i] = 0.9 * buf[i] + gi;
      theta[i] -= 0.1 * buf[i];
      CHECK(p.value[static_cast<std::size_t>(i)] == doctest::Approx(theta[i]).epsilon(1e-15));
    }
  }
  CHECK(opt.steps() == 3);
}

TEST_CASE("Adam follows the bias-corrected update rule") {
  Parameter p("w", Tensor({1}, {0.0}));
  Parameter* params[] = {&p};
  Optimizer opt(OptimizerConfig::adam(0.01));
  double m = 0, v = 0, theta = 0;
  for (int t = 1; t <= 5; ++t) {
    const double g = 0.3 * t - 0.7;
    p.grad = Tensor({1}, {g});
    opt.step(params);
    m = 0.9 * m + 0.1 * g;
    v = 0.999 * v + 0.001 * g * g;
    theta -= 0.01 * (m / (1 - std::pow(0.9, t))) / (std::sqrt(v / (1 - std::pow(0.999, t))) + 1e-8);
    CHECK(p.value[0] == doctest::Approx(theta).epsilon(1e-13));
  }
}

TEST_CASE("non-finite gradient aborts the step and names the parameter") {
  Parameter a("good", Tensor({1}, {1.0})), b("bad", Tensor({1}, {2.0}));
  Parameter* params[] = {&a, &b};
  Optimizer opt(OptimizerConfig::sgd());
  a.grad[0] = 1.0;
  b.grad[0] = std::numeric_limits<double>::infinity();
  try {
    opt.step(params);
    FAIL("expected NonFiniteGradient");
  } catch (const NonFiniteGradient& e) {
    CHECK(e.parameter() == "bad");
  }
  CHECK(a.value[0] == 1.0);
  CHECK(b.value[0] == 2.0);
  CHECK_THROWS(opt.set_learning_rate(0.0));
}

TEST_CASE("parameter files round-trip bit for bit and reject bad input") {
  const auto dir = std::filesystem::temp_directory_path() / "listal_param_io";
  std::filesystem::create_directories(dir);
  Parameter a("layer.weight", random_tensor({3, 2}, rng())), b("layer.bias", random_tensor({1, 2}, rng()));
  const Parameter* saved[] = {&a, &b};
  save_parameters(dir / "p.bin", saved);
  const auto loaded = load_parameters(dir / "p.bin");
  REQUIRE(loaded.size() == 2);
  CHECK(loaded[0].name == "layer.weight");
  CHECK(loaded[0].value == a.value);
  Parameter c("layer.weight", Tensor({3, 2})), d("layer.bias", Tensor({1, 2}));
  Parameter* targets[] = {&d, &c};
  assign_parameters(targets, loaded);
  CHECK(c.value == a.value);
  CHECK(d.value == b.value);
  Parameter wrong("layer.weight", Tensor({2, 3}));
  Parameter* mismatched[] = {&wrong};
  CHECK_THROWS(assign_parameters(mismatched, loaded));
  std::ofstream(dir / "junk.bin") << "not a parameter file";
  CHECK_THROWS(load_parameters(dir / "junk.bin"));
  CHECK_THROWS(load_parameters(dir / "missing.bin"));
}
