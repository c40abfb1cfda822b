// SPDX-License-Identifier: Apache-2.0
#include <listal/bench/selfcheck.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>

#include <listal/autodiff/autodiff.hpp>
#include <listal/models/loss_predictor.hpp>
#include <listal/models/sorter.hpp>
#include <listal/ranking/losses.hpp>
#include <listal/ranking/ranks.hpp>
#include <listal/seed.hpp>
#include <listal/strategies/strategies.hpp>

namespace listal::bench {

namespace {

using ad::Tape;
using ad::Tensor;
using ad::Var;

constexpr double kGradTolerance = 1e-4;

Tensor random_tensor(ad::Shape shape, Rng& rng, double lo = -1.0, double hi = 1.0) {
  Tensor t(std::move(shape));
  std::uniform_real_distribution<double> u(lo, hi);
  for (double& v : t.values()) v = u(rng);
  return t;
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

CheckResult grad_check(const std::string& name, const ad::GraphFn& fn, std::vector<Tensor> point) {
  const double err = ad::finite_difference_check(fn, point);
  return {"gradient " + name, err < kGradTolerance, "max relative error " + fmt(err)};
}

// Weighted sum so every output element carries a distinct upstream gradient.
Var weighted_sum(Tape& tape, Var v) {
  Tensor w(v.shape());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = 0.3 + 0.1 * static_cast<double>(i % 7);
  return ad::sum(ad::mul(v, tape.constant(w)));
}

double brute_spearman(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t d = a.size();
  auto ranks = [d](const std::vector<double>& v) {
    std::vector<double> r(d);
    for (std::size_t i = 0; i < d; ++i) {
      std::size_t below = 0;
      for (std::size_t j = 0; j < d; ++j)
        if (v[j] < v[i] || (v[j] == v[i] && j < i)) ++below;
      r[i] = static_cast<double>(below);
    }
    return r;
  };
  const auto ra = ranks(a), rb = ranks(b);
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < d; ++i) sum_sq += (ra[i] - rb[i]) * (ra[i] - rb[i]);
  const double n = static_cast<double>(d);
  return 1.0 - 6.0 * sum_sq / (n * (n * n - 1.0));
}

}  // namespace

std::vector<CheckResult> run_self_checks(std::uint64_t seed) {
  std::vector<CheckResult> out;
  Rng rng(derive_seed(seed, {1}));

  out.push_back(grad_check("matmul", [](Tape& t, std::span<const Var> x) { return weighted_sum(t, ad::matmul(x[0], x[1])); },
                           {random_tensor({3, 4}, rng), random_tensor({4, 2}, rng)}));
  out.push_back(grad_check("add/sub/mul broadcast",
                           [](Tape& t, std::span<const Var> x) {
                             return weighted_sum(t, ad::mul(ad::sub(ad::add(x[0], x[1]), x[2]), x[0]));
                           },
                           {random_tensor({3, 4}, rng), random_tensor({1, 4}, rng), random_tensor({1}, rng)}));
  out.push_back(grad_check("elementwise",
                           [](Tape& t, std::span<const Var> x) {
                             Var a = ad::leaky_relu(x[0], 0.01);
                             Var b = ad::sigmoid(ad::scale(x[0], 1.5));
                             Var c = ad::log(ad::add_scalar(ad::tanh(x[0]), 2.0));
                             return weighted_sum(t, ad::add(ad::add(a, b), c));
                           },
                           {random_tensor({2, 5}, rng)}));
  out.push_back(grad_check("softmax/mean",
                           [](Tape& t, std::span<const Var> x) { return ad::add(weighted_sum(t, ad::softmax(x[0])), ad::mean(x[0])); },
                           {random_tensor({3, 4}, rng)}));
  out.push_back(grad_check("concat/reshape/slice",
                           [](Tape& t, std::span<const Var> x) {
                             const Var parts[2] = {x[0], x[1]};
                             Var c = ad::concat(parts, 1);
                             return weighted_sum(t, ad::slice(ad::reshape(c, {5, 2}), 0, 1, 4));
                           },
                           {random_tensor({2, 3}, rng), random_tensor({2, 2}, rng)}));
  out.push_back(grad_check("conv2d/global pool",
                           [](Tape& t, std::span<const Var> x) {
                             return weighted_sum(t, ad::global_average_pool(ad::conv2d(x[0], x[1], x[2])));
                           },
                           {random_tensor({2, 2, 4, 4}, rng), random_tensor({3, 2, 3, 3}, rng), random_tensor({3}, rng)}));
  {
    const Tensor target = random_tensor({3, 2}, rng);
    const std::vector<int> labels = {2, 0, 1};
    out.push_back(grad_check("squared error/cross entropy",
                             [target, labels](Tape& t, std::span<const Var> x) {
                               return ad::add(weighted_sum(t, ad::squared_error(x[0], target)),
                                              weighted_sum(t, ad::cross_entropy(x[1], labels)));
                             },
                             {random_tensor({3, 2}, rng), random_tensor({3, 3}, rng)}));
  }
  out.push_back(grad_check("minmax normalize",
                           [](Tape& t, std::span<const Var> x) { return weighted_sum(t, ad::minmax_normalize(x[0])); },
                           {random_tensor({2, 6}, rng)}));
  {
    models::LossPredictor lpm({4, 6}, derive_seed(seed, {2}));
    const Tensor features = random_tensor({5, 4, 2, 2}, rng);
    auto params = lpm.parameters();
    const double err = ad::finite_difference_check(
        [&](Tape& t) { return weighted_sum(t, lpm.forward(t, t.constant(features))); }, params);
    out.push_back({"gradient loss-prediction head", err < kGradTolerance, "max relative error " + fmt(err)});
  }
  {
    models::Sorter sorter({6, 8}, derive_seed(seed, {3}));
    sorter.set_frozen(true);
    const Tensor truth = random_tensor({6}, rng, 0.0, 3.0);
    const std::vector<double> gt(truth.values().begin(), truth.values().end());
    out.push_back(grad_check("listwise ranking loss",
                             [&](Tape& t, std::span<const Var> x) { return ranking::listwise_ranking_loss(t, x[0], gt, sorter); },
                             {random_tensor({6, 1}, rng)}));
  }

  {
    Rng r(derive_seed(seed, {4}));
    std::uniform_int_distribution<std::size_t> len(2, 64);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> a(len(r)), b(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) { a[i] = u(r); b[i] = u(r); }
      worst = std::max(worst, std::abs(ranking::spearman(a, b) - brute_spearman(a, b)));
    }
    std::vector<double> up(10), down(10);
    std::iota(up.begin(), up.end(), 0.0);
    std::reverse_copy(up.begin(), up.end(), down.begin());
    const bool exact = ranking::spearman(up, up) == 1.0 && ranking::spearman(up, down) == -1.0;
    out.push_back({"spearman oracle", worst <= 1e-12 && exact, "max deviation " + fmt(worst)});
  }
  {
    Rng r(derive_seed(seed, {5}));
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t d = 2 * (1 + trial % 16);
      std::vector<double> pred(d), gt(d);
      for (std::size_t i = 0; i < d; ++i) { pred[i] = u(r); gt[i] = std::round(u(r) * 2.0) / 2.0; }
      Tape t;
      const double got = ranking::pairwise_ranking_loss(t, t.constant(Tensor::column(pred)), gt).value().item();
      double want = 0.0;
      for (std::size_t p = 0; p < d; p += 2) {
        const double diff = gt[p] - gt[p + 1];
        const double sign = diff > 0 ? 1.0 : (diff < 0 ? -1.0 : 0.0);
        want += std::max(0.0, -sign * (pred[p] - pred[p + 1]) + 1.0);
      }
      worst = std::max(worst, std::abs(got - want / static_cast<double>(d / 2)));
    }
    bool rejects_odd = false;
    try {
      Tape t;
      const std::vector<double> three = {1, 2, 3};
      ranking::pairwise_ranking_loss(t, t.constant(Tensor::column(three)), three);
    } catch (const std::invalid_argument&) {
      rejects_odd = true;
    }
    out.push_back({"pairwise hinge oracle", worst <= 1e-12 && rejects_odd, "max deviation " + fmt(worst)});
  }
  {
    Rng r(derive_seed(seed, {6}));
    std::uniform_int_distribution<int> grid(0, 4);
    std::size_t mismatches = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 2 + static_cast<std::size_t>(trial % 7), m = static_cast<std::size_t>(trial % 4);
      strategies::QueryContext ctx;
      ctx.features = Tensor({n, 2});
      for (double& v : ctx.features.values()) v = grid(r);
      ctx.candidates.resize(n);
      std::iota(ctx.candidates.begin(), ctx.candidates.end(), 10);
      if (m > 0) {
        ctx.labeled_features = Tensor({m, 2});
        for (double& v : ctx.labeled_features->values()) v = grid(r);
      }
      ctx.budget = 1 + static_cast<std::size_t>(trial) % n;
      const auto got = strategies::select_kcenter_greedy(ctx).chosen;

      std::vector<std::vector<double>> centers;
      for (std::size_t j = 0; j < m; ++j)
        centers.push_back({ctx.labeled_features->at(j, 0), ctx.labeled_features->at(j, 1)});
      std::vector<std::size_t> want;
      for (std::size_t step = 0; step < ctx.budget; ++step) {
        double best_d = -1.0;
        std::size_t best = 0;
        for (std::size_t i = 0; i < n; ++i) {
          if (std::find(want.begin(), want.end(), ctx.candidates[i]) != want.end()) continue;
          double dmin = std::numeric_limits<double>::infinity();
          for (const auto& c : centers)
          {
            const double dx = ctx.features.at(i, 0) - c[0], dy = ctx.features.at(i, 1) - c[1];
            dmin = std::min(dmin, dx * dx + dy * dy);
          }
          if (dmin > best_d) { best_d = dmin; best = i; }
        }
        want.push_back(ctx.candidates[best]);
        centers.push_back({ctx.features.at(best, 0), ctx.features.at(best, 1)});
      }
      if (got != want) ++mismatches;
    }
    out.push_back({"k-center greedy oracle", mismatches == 0, std::to_string(mismatches) + " mismatches"});
  }
  return out;
}

}  // namespace listal::bench
