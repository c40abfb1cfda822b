// SPDX-License-Identifier: Apache-2.0
// Acceptance run: one PASS/FAIL line per criterion. Pass criterion numbers
// as arguments to run a subset.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include <listal/alsim/experiment.hpp>
#include <listal/bench/cli.hpp>
#include <listal/models/loss_predictor.hpp>
#include <listal/models/sorter.hpp>
#include <listal/ranking/losses.hpp>
#include <listal/ranking/ranks.hpp>
#include <listal/ranking/sorter_training.hpp>
#include <listal/strategies/strategies.hpp>

#include "support.hpp"

using namespace listal;
using ad::Tape;
using ad::Tensor;
using ad::Var;
using strategies::StrategyKind;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

fs::path workdir() {
  const auto dir = fs::temp_directory_path() / "listal_acceptance";
  fs::create_directories(dir);
  return dir;
}

// Sorters are shared between criteria 4, 6, 7 and 9.
std::map<std::size_t, ranking::SorterTrainingResult>& sorter_cache() {
  static std::map<std::size_t, ranking::SorterTrainingResult> cache;
  return cache;
}

constexpr std::size_t kSorterEpochs = 150;

ranking::SorterTrainingResult& trained_sorter(std::size_t length) {
  auto& cache = sorter_cache();
  if (auto it = cache.find(length); it != cache.end()) return it->second;
  ranking::SorterTrainingConfig cfg;
  cfg.length = length;
  cfg.epochs = kSorterEpochs;
  cfg.corpus_size = 100000;
  cfg.seed = 0;
  return cache.emplace(length, ranking::train_sorter(cfg)).first->second;
}

fs::path saved_sorter(std::size_t length) {
  const auto path = workdir() / ("sorter" + std::to_string(length) + ".bin");
  auto& r = trained_sorter(length);
  ranking::save_sorter(path, r.sorter, {length, r.sorter.config().hidden, 0, r.epochs, r.heldout_spearman});
  return path;
}

// Rank by counting smaller elements (index breaks ties), then the closed form.
double brute_spearman(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t d = a.size();
  auto ranks = [d](const std::vector<double>& v) {
    std::vector<double> r(d, 0.0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (v[j] < v[i] || (v[j] == v[i] && j < i)) r[i] += 1.0;
    return r;
  };
  const auto ra = ranks(a), rb = ranks(b);
  double s = 0.0;
  for (std::size_t i = 0; i < d; ++i) s += (ra[i] - rb[i]) * (ra[i] - rb[i]);
  const double n = static_cast<double>(d);
  return 1.0 - 6.0 * s / (n * (n * n - 1.0));
}

Outcome spearman_oracle() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<std::size_t> len(2, 64);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  double worst = 0.0;
  bool exact = true;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> a(len(rng)), b(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = u(rng);
      b[i] = u(rng);
    }
    worst = std::max(worst, std::abs(ranking::spearman(a, b) - brute_spearman(a, b)));
    std::vector<double> rev(a.rbegin(), a.rend()), sorted = a;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> down(sorted.rbegin(), sorted.rend());
    exact = exact && ranking::spearman(a, a) == 1.0 && ranking::spearman(sorted, down) == -1.0;
  }
  const double t = seconds_since(start);
  return {worst <= 1e-12 && exact && t < 1.0,
          "max deviation " + fmt("%.2e", worst) + (exact ? ", identity/reversal exact" : ", identity/reversal NOT exact") +
              ", " + fmt("%.2f s", t)};
}

// Central differences over every parameter element, independent of the library's checker.
double parameter_gradient_error(const std::function<Var(Tape&)>& graph, std::vector<ad::Parameter*> params) {
  {
    Tape tape;
    ad::zero_grad(params);
    tape.backward(graph(tape));
  }
  double worst = 0.0;
  const double h = 1e-5;
  for (auto* p : params) {
    const Tensor analytic = p->grad;
    for (std::size_t i = 0; i < p->value.size(); ++i) {
      const double keep = p->value[i];
      p->value[i] = keep + h;
      double up, down;
      {
        Tape t;
        up = graph(t).value().item();
      }
      p->value[i] = keep - h;
      {
        Tape t;
        down = graph(t).value().item();
      }
      p->value[i] = keep;
      const double numeric = (up - down) / (2 * h);
      worst = std::max(worst, std::abs(analytic[i] - numeric) / std::max(std::abs(numeric), 1e-6));
    }
  }
  return worst;
}

Outcome gradient_suite() {
  using testsupport::contract;
  using testsupport::gradient_error;
  using testsupport::random_tensor;
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(202);
  std::vector<std::pair<std::string, double>> errors;
  auto unary = [&](const std::string& name, std::function<Var(Var)> op, ad::Shape shape, double lo = -1.0,
                   double hi = 1.0) {
    errors.emplace_back(name, gradient_error([op](Tape& t, std::span<const Var> x) { return contract(t, op(x[0])); },
                                             {random_tensor(shape, rng, lo, hi)}));
  };
  errors.emplace_back("matmul", gradient_error([](Tape& t, std::span<const Var> x) { return contract(t, ad::matmul(x[0], x[1])); },
                                               {random_tensor({3, 5}, rng), random_tensor({5, 2}, rng)}));
  errors.emplace_back("add", gradient_error([](Tape& t, std::span<const Var> x) { return contract(t, ad::add(x[0], x[1])); },
                                            {random_tensor({4, 3}, rng), random_tensor({1, 3}, rng)}));
  errors.emplace_back("sub", gradient_error([](Tape& t, std::span<const Var> x) { return contract(t, ad::sub(x[0], x[1])); },
                                            {random_tensor({4, 3}, rng), random_tensor({1}, rng)}));
  errors.emplace_back("mul", gradient_error([](Tape& t, std::span<const Var> x) { return contract(t, ad::mul(x[0], x[1])); },
                                            {random_tensor({4, 3}, rng), random_tensor({1, 3}, rng)}));
  unary("scale", [](Var a) { return ad::scale(a, -2.5); }, {3, 3});
  unary("add_scalar", [](Var a) { return ad::mul(ad::add_scalar(a, 0.7), a); }, {3, 3});
  unary("leaky_relu", [](Var a) { return ad::leaky_relu(a, 0.01); }, {4, 4});
  unary("sigmoid", [](Var a) { return ad::sigmoid(a); }, {4, 4}, -3, 3);
  unary("tanh", [](Var a) { return ad::tanh(a); }, {4, 4}, -3, 3);
  unary("log", [](Var a) { return ad::log(a); }, {4, 4}, 0.2, 3);
  unary("softmax", [](Var a) { return ad::softmax(a); }, {3, 5}, -2, 2);
  unary("mean", [](Var a) { return ad::mul(ad::mean(a), ad::mean(a)); }, {3, 4});
  unary("sum", [](Var a) { return ad::mul(ad::sum(a), ad::sum(a)); }, {3, 4});
  unary("reshape", [](Var a) { return ad::reshape(a, {2, 6}); }, {3, 4});
  unary("slice", [](Var a) { return ad::slice(a, 1, 1, 3); }, {3, 4});
  unary("minmax_normalize", [](Var a) { return ad::minmax_normalize(a); }, {2, 7});
  unary("global_average_pool", [](Var a) { return ad::global_average_pool(a); }, {2, 3, 4, 4});
  errors.emplace_back("concat", gradient_error(
                                    [](Tape& t, std::span<const Var> x) {
                                      const Var parts[2] = {x[0], x[1]};
                                      return contract(t, ad::concat(parts, 0));
                                    },
                                    {random_tensor({2, 3}, rng), random_tensor({4, 3}, rng)}));
  errors.emplace_back("conv2d", gradient_error(
                                    [](Tape& t, std::span<const Var> x) { return contract(t, ad::conv2d(x[0], x[1], x[2])); },
                                    {random_tensor({2, 2, 5, 5}, rng), random_tensor({3, 2, 3, 3}, rng), random_tensor({3}, rng)}));
  const Tensor target = random_tensor({4, 2}, rng);
  errors.emplace_back("squared_error", gradient_error(
                                           [target](Tape& t, std::span<const Var> x) { return contract(t, ad::squared_error(x[0], target)); },
                                           {random_tensor({4, 2}, rng)}));
  const std::vector<int> labels = {0, 3, 1, 2, 2};
  errors.emplace_back("cross_entropy", gradient_error(
                                           [labels](Tape& t, std::span<const Var> x) { return contract(t, ad::cross_entropy(x[0], labels)); },
                                           {random_tensor({5, 4}, rng, -2, 2)}));

  models::LossPredictor lpm({12, 16}, 5);
  const Tensor features = random_tensor({6, 12}, rng);
  errors.emplace_back("loss-prediction head",
                      parameter_gradient_error([&](Tape& t) { return contract(t, lpm.forward(t, t.constant(features))); },
                                               lpm.parameters()));

  models::Sorter sorter({8, 16}, 6);
  sorter.set_frozen(true);
  const Tensor truth = random_tensor({8}, rng, 0.0, 2.0);
  const std::vector<double> gt(truth.values().begin(), truth.values().end());
  errors.emplace_back("listwise loss wrt predicted losses",
                      gradient_error([&](Tape& t, std::span<const Var> x) { return ranking::listwise_ranking_loss(t, x[0], gt, sorter); },
                                     {random_tensor({8, 1}, rng, 0.0, 2.0)}));

  double worst = 0.0;
  std::string worst_name, failing;
  for (const auto& [name, err] : errors) {
    if (err > worst) {
      worst = err;
      worst_name = name;
    }
    if (!(err < 1e-4)) failing += " " + name;
  }
  const double t = seconds_since(start);
  return {failing.empty() && t < 60.0,
          std::to_string(errors.size()) + " checks, worst " + fmt("%.2e", worst) + " (" + worst_name + ")" +
              (failing.empty() ? "" : ", failing:" + failing) + ", " + fmt("%.1f s", t)};
}

Outcome gradient_stop() {
  const auto start = std::chrono::steady_clock::now();
  std::size_t compared = 0, differing = 0;
  for (auto kind : {StrategyKind::Listwise, StrategyKind::Pairwise}) {
    for (auto dataset : {bench::DatasetKind::Blobs, bench::DatasetKind::HardRegression}) {
      alsim::ExperimentConfig config;
      config.strategy = kind;
      config.dataset.kind = dataset;
      if (dataset == bench::DatasetKind::HardRegression) config.batch_size = 4;
      const auto data = bench::make_dataset(config.dataset);
      std::vector<std::size_t> labeled(config.initial_size + config.cycles * config.budget);
      std::iota(labeled.begin(), labeled.end(), 0);
      alsim::PoolState pool(data.train.labels, labeled);
      models::Sorter sorter({config.batch_size, 32}, 9);
      sorter.set_frozen(true);
      alsim::TrainOptions on, off;
      on.ranker = off.ranker = &sorter;
      off.attach_lpm = false;
      const auto a = alsim::train_cycle(pool, data.train, config, alsim::RunSeeds{17}, on);
      const auto b = alsim::train_cycle(pool, data.train, config, alsim::RunSeeds{17}, off);
      if (!a.lpm || b.lpm) ++differing;
      const auto pa = a.target->parameters(), pb = b.target->parameters();
      for (std::size_t i = 0; i < pa.size(); ++i)
        for (std::size_t j = 0; j < pa[i]->value.size(); ++j) {
          ++compared;
          if (std::memcmp(&pa[i]->value[j], &pb[i]->value[j], sizeof(double)) != 0) ++differing;
        }
    }
  }
  const double t = seconds_since(start);
  return {differing == 0 && t < 300.0, std::to_string(compared) + " parameters compared bitwise, " +
                                           std::to_string(differing) + " differ, " + fmt("%.1f s", t)};
}

Outcome sorter_fidelity() {
  const auto start = std::chrono::steady_clock::now();
  const double s4 = trained_sorter(4).heldout_spearman;
  const double s64 = trained_sorter(64).heldout_spearman;
  const double t = seconds_since(start);
  return {s4 >= 0.95 && s64 >= 0.90 && t <= 1800.0,
          "held-out Spearman d=4 " + fmt("%.4f", s4) + ", d=64 " + fmt("%.4f", s64) + " after " +
              std::to_string(kSorterEpochs) + " epochs on 100k sequences, " + fmt("%.0f s", t)};
}

// Exhaustive greedy rule with Euclidean distances recomputed from scratch.
std::vector<std::size_t> kcenter_oracle(const std::vector<std::vector<double>>& cand,
                                        const std::vector<std::vector<double>>& labeled, std::size_t budget) {
  std::vector<std::size_t> picked;
  while (picked.size() < budget) {
    std::size_t best = 0;
    double best_d = -1.0;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (std::find(picked.begin(), picked.end(), i) != picked.end()) continue;
      double dmin = std::numeric_limits<double>::infinity();
      auto visit = [&](const std::vector<double>& c) {
        double s = 0.0;
        for (std::size_t k = 0; k < c.size(); ++k) s += (cand[i][k] - c[k]) * (cand[i][k] - c[k]);
        dmin = std::min(dmin, std::sqrt(s));
      };
      for (const auto& l : labeled) visit(l);
      for (std::size_t p : picked) visit(cand[p]);
      if (dmin > best_d) {
        best_d = dmin;
        best = i;
      }
    }
    picked.push_back(best);
  }
  return picked;
}

Outcome kcenter() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(505);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> ncand(1, 8), nlab(0, 3), ndim(1, 4);
  std::size_t mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = ncand(rng), m = nlab(rng), dim = ndim(rng);
    std::vector<std::vector<double>> cand(n, std::vector<double>(dim)), lab(m, std::vector<double>(dim));
    strategies::QueryContext ctx;
    ctx.features = Tensor({n, dim});
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < dim; ++k) ctx.features.at(i, k) = cand[i][k] = g(rng);
    if (m > 0) {
      ctx.labeled_features = Tensor({m, dim});
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < dim; ++k) ctx.labeled_features->at(j, k) = lab[j][k] = g(rng);
    }
    for (std::size_t i = 0; i < n; ++i) ctx.candidates.push_back(1000 + 7 * i);
    ctx.budget = 1 + rng() % n;
    std::vector<std::size_t> want;
    for (std::size_t i : kcenter_oracle(cand, lab, ctx.budget)) want.push_back(ctx.candidates[i]);
    if (strategies::select_kcenter_greedy(ctx).chosen != want) ++mismatches;
  }
  const double t = seconds_since(start);
  return {mismatches == 0 && t < 10.0, "200 instances, " + std::to_string(mismatches) + " mismatches, " + fmt("%.2f s", t)};
}

struct CurveStats {
  double first = 0.0, last = 0.0;
  bool has = false;
};

// Mean over seeds of a metric at cycle 0 and at the final cycle.
CurveStats curve(const std::vector<alsim::RunResult>& runs, StrategyKind kind, bool spearman) {
  CurveStats s;
  std::size_t n = 0;
  for (const auto& run : runs) {
    if (run.strategy != kind || run.error || run.records.empty()) continue;
    const auto& a = run.records.front().evaluation;
    const auto& b = run.records.back().evaluation;
    if (spearman) {
      if (!a.spearman || !b.spearman) continue;
      s.first += *a.spearman;
      s.last += *b.spearman;
    } else {
      s.first += a.metric;
      s.last += b.metric;
    }
    ++n;
  }
  if (n > 0) {
    s.first /= static_cast<double>(n);
    s.last /= static_cast<double>(n);
    s.has = true;
  }
  return s;
}

std::string run_errors(const std::vector<alsim::RunResult>& runs) {
  std::string out;
  for (const auto& r : runs)
    if (r.error) out += " [" + strategies::to_string(r.strategy) + " seed " + std::to_string(r.seed) + ": " + *r.error + "]";
  return out;
}

Outcome blobs_benchmark() {
  const auto start = std::chrono::steady_clock::now();
  alsim::ExperimentConfig config;
  const StrategyKind kinds[] = {StrategyKind::Random, StrategyKind::Listwise};
  const std::uint64_t seeds[] = {0, 1, 2, 3, 4};
  const auto& sorter = trained_sorter(config.batch_size).sorter;
  const auto runs = alsim::run_experiment(config, kinds, seeds, 0, &sorter);
  const auto rnd = curve(runs, StrategyKind::Random, false), lw = curve(runs, StrategyKind::Listwise, false);
  const auto sp = curve(runs, StrategyKind::Listwise, true);
  const auto errors = run_errors(runs);
  const double t = seconds_since(start);
  const bool pass = errors.empty() && rnd.has && lw.has && sp.has && lw.last >= rnd.last && sp.last >= 0.4 &&
                    sp.last >= sp.first && t <= 3600.0;
  return {pass, "final accuracy listwise " + fmt("%.4f", lw.last) + " vs random " + fmt("%.4f", rnd.last) +
                    ", listwise Spearman cycle 0 " + fmt("%.3f", sp.first) + " -> final " + fmt("%.3f", sp.last) +
                    errors + ", " + fmt("%.0f s", t)};
}

Outcome regression_benchmark() {
  const auto start = std::chrono::steady_clock::now();
  alsim::ExperimentConfig config;
  config.dataset.kind = bench::DatasetKind::HardRegression;
  config.batch_size = 4;
  const StrategyKind kinds[] = {StrategyKind::Random, StrategyKind::Listwise};
  const std::uint64_t seeds[] = {0, 1, 2, 3, 4};
  const auto& sorter = trained_sorter(4).sorter;
  const auto runs = alsim::run_experiment(config, kinds, seeds, 0, &sorter);
  const auto rnd = curve(runs, StrategyKind::Random, false), lw = curve(runs, StrategyKind::Listwise, false);
  const auto sp = curve(runs, StrategyKind::Listwise, true);

  std::string entropy_error;
  try {
    config.strategy = StrategyKind::Entropy;
    const StrategyKind entropy[] = {StrategyKind::Entropy};
    alsim::run_experiment(config, entropy, seeds, 0);
  } catch (const std::invalid_argument& e) {
    entropy_error = e.what();
  }
  const bool entropy_ok = entropy_error.find("entropy strategy requires class posteriors") != std::string::npos;
  const auto errors = run_errors(runs);
  const double t = seconds_since(start);
  const bool pass = errors.empty() && rnd.has && lw.has && lw.last <= rnd.last && entropy_ok && t <= 1800.0;
  return {pass, "final MAE listwise " + fmt("%.4f", lw.last) + " vs random " + fmt("%.4f", rnd.last) +
                    ", listwise Spearman final " + fmt("%.3f", sp.last) +
                    (entropy_ok ? ", entropy rejected" : ", entropy NOT rejected") + errors + ", " + fmt("%.0f s", t)};
}

double brute_pairwise(const std::vector<double>& pred, const std::vector<double>& gt, double margin) {
  double total = 0.0;
  for (std::size_t p = 0; p < pred.size() / 2; ++p) {
    const std::size_t i = 2 * p, j = 2 * p + 1;
    const double sign = gt[i] > gt[j] ? 1.0 : (gt[i] < gt[j] ? -1.0 : 0.0);
    total += std::max(0.0, margin - sign * (pred[i] - pred[j]));
  }
  return total / static_cast<double>(pred.size() / 2);
}

Outcome pairwise_oracle() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(808);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_int_distribution<std::size_t> half(1, 32);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t d = 2 * half(rng);
    std::vector<double> pred(d), gt(d);
    for (std::size_t i = 0; i < d; ++i) {
      pred[i] = u(rng);
      gt[i] = trial % 4 == 0 ? std::round(u(rng)) : u(rng);
    }
    const double margin = trial % 2 ? 1.0 : 0.25 + std::abs(u(rng));
    Tape tape;
    const double got =
        ranking::pairwise_ranking_loss(tape, tape.constant(Tensor::column(pred)), gt, margin).value().item();
    worst = std::max(worst, std::abs(got - brute_pairwise(pred, gt, margin)));
  }
  std::size_t odd_rejected = 0;
  for (std::size_t d = 1; d <= 63; d += 2) {
    std::vector<double> v(d, 0.5);
    try {
      Tape tape;
      ranking::pairwise_ranking_loss(tape, tape.constant(Tensor::column(v)), v);
    } catch (const std::invalid_argument&) {
      ++odd_rejected;
    }
  }
  const double t = seconds_since(start);
  return {worst <= 1e-12 && odd_rejected == 32 && t < 10.0,
          "max deviation " + fmt("%.2e", worst) + ", odd d rejected " + std::to_string(odd_rejected) + "/32, " +
              fmt("%.2f s", t)};
}

std::optional<std::string> slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome reproducibility() {
  const auto start = std::chrono::steady_clock::now();
  const auto sorter = saved_sorter(32);
  std::vector<std::optional<std::string>> files;
  std::string failures;
  for (const char* name : {"repro_a", "repro_b"}) {
    const auto dir = workdir() / name;
    fs::remove_all(dir);
    std::ostringstream out, err;
    const int code = bench::cli_main({"run", "--strategy", "random,entropy,coreset,pairwise,listwise", "--seeds",
                                      "0,1,2,3,4", "--sorter", sorter.string(), "--out", dir.string()},
                                     out, err);
    if (code != 0) failures += " exit " + std::to_string(code) + ": " + err.str();
    files.push_back(slurp(dir / "metrics.csv"));
  }
  const bool same = files[0] && files[1] && *files[0] == *files[1];
  const double t = seconds_since(start);
  return {failures.empty() && same,
          std::string(same ? "metrics.csv byte-identical" : "metrics.csv differs") + " (" +
              std::to_string(files[0] ? files[0]->size() : 0) + " bytes, 5 strategies x 5 seeds)" + failures + ", " +
              fmt("%.0f s", t)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Spearman oracle", spearman_oracle},
      {"gradient suite", gradient_suite},
      {"gradient-stop isolation", gradient_stop},
      {"sorter fidelity", sorter_fidelity},
      {"k-center greedy oracle", kcenter},
      {"blobs classification benchmark", blobs_benchmark},
      {"hard-regression benchmark", regression_benchmark},
      {"pairwise hinge oracle", pairwise_oracle},
      {"reproducibility", reproducibility},
  };
  std::set<std::size_t> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::stoul(argv[i]));
  bool all = true;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    if (!wanted.empty() && !wanted.count(k + 1)) continue;
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << k + 1 << "] " << criteria[k].first << ": " << o.detail
              << std::endl;
  }
  return all ? 0 : 1;
}
