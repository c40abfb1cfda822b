// SPDX-License-Identifier: Apache-2.0
#include <listal/alsim/experiment.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include <listal/autodiff/ops.hpp>
#include <listal/ranking/losses.hpp>
#include <listal/ranking/ranks.hpp>
#include <listal/ranking/sorter_training.hpp>
#include <listal/seed.hpp>

namespace listal::alsim {

using strategies::StrategyKind;

std::string to_string(RetrainMode mode) { return mode == RetrainMode::Fresh ? "fresh" : "warm"; }

RetrainMode parse_retrain_mode(const std::string& text) {
  if (text == "fresh") return RetrainMode::Fresh;
  if (text == "warm") return RetrainMode::Warm;
  throw std::invalid_argument("unknown retrain mode '" + text + "' (expected fresh|warm)");
}

ad::OptimizerConfig ExperimentConfig::target_optimizer(models::TaskKind task) const {
  const auto kind = target_optimizer_kind.value_or(task == models::TaskKind::Regression
                                                       ? ad::OptimizerKind::Adam
                                                       : ad::OptimizerKind::SgdMomentum);
  ad::OptimizerConfig cfg = kind == ad::OptimizerKind::Adam ? ad::OptimizerConfig::adam(1e-3)
                                                            : ad::OptimizerConfig::sgd(0.05, 0.9, 5e-4);
  if (target_lr) cfg.learning_rate = *target_lr;
  if (target_momentum) cfg.momentum = *target_momentum;
  if (target_weight_decay) cfg.weight_decay = *target_weight_decay;
  return cfg;
}

void ExperimentConfig::validate(const bench::Dataset& train) const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
  if (initial_size == 0) fail("initial labeled size must be positive");
  if (budget == 0 && cycles > 0) fail("per-cycle budget must be positive");
  if (batch_size == 0) fail("batch size must be positive");
  if (epochs == 0) fail("epochs per cycle must be positive");
  if (subset_size < budget) fail("subset size must be at least the budget");
  if (initial_size + budget * cycles > train.size())
    fail("initial + budget * cycles = " + std::to_string(initial_size + budget * cycles) +
         " exceeds the pool of " + std::to_string(train.size()));
  if (!(lr_drop_fraction > 0.0 && lr_drop_fraction <= 1.0)) fail("lr drop fraction must lie in (0,1]");
  if (strategy == StrategyKind::Entropy && train.task == models::TaskKind::Regression)
    fail("entropy strategy requires class posteriors; it is not applicable to regression");
  if (strategy == StrategyKind::Pairwise && batch_size % 2 != 0)
    fail("pairwise ranking loss requires an even batch size, got " + std::to_string(batch_size));
  if (strategy == StrategyKind::Listwise && batch_size < 2) fail("listwise ranking needs batch size >= 2");
}

namespace {

enum : std::uint64_t {
  kInitialSet = 101,
  kSubset = 102,
  kRandomPick = 103,
  kTargetInit = 104,
  kLpmInit = 105,
  kBatchOrder = 106,
};

std::uint64_t kind_tag(StrategyKind kind) { return static_cast<std::uint64_t>(kind) + 1; }

}  // namespace

std::uint64_t RunSeeds::initial_set() const { return derive_seed(run, {kInitialSet}); }
std::uint64_t RunSeeds::subset(std::size_t cycle) const { return derive_seed(run, {kSubset, cycle}); }
std::uint64_t RunSeeds::random_strategy(std::size_t cycle) const {
  return derive_seed(run, {kRandomPick, cycle});
}
std::uint64_t RunSeeds::target_init(StrategyKind kind, std::size_t cycle) const {
  return derive_seed(run, {kTargetInit, kind_tag(kind), cycle});
}
std::uint64_t RunSeeds::lpm_init(StrategyKind kind, std::size_t cycle) const {
  return derive_seed(run, {kLpmInit, kind_tag(kind), cycle});
}
std::uint64_t RunSeeds::batch_order(StrategyKind kind, std::size_t cycle) const {
  return derive_seed(run, {kBatchOrder, kind_tag(kind), cycle});
}

namespace {

models::TargetConfig target_config_for(const bench::Dataset& train, const ExperimentConfig& config) {
  models::TargetConfig cfg = bench::default_target_config(train);
  if (cfg.kind != models::TargetKind::TinyCnnClassifier) cfg.hidden = config.target_hidden;
  return cfg;
}

ad::Var per_sample_training_loss(ad::Var prediction, std::span<const double> labels,
                                 const models::TargetModel& target) {
  if (target.task() == models::TaskKind::Classification) {
    const auto ints = models::class_labels(labels, target.config().num_classes);
    return ad::cross_entropy(prediction, ints);
  }
  return ad::squared_error(prediction, ad::Tensor::column(labels));
}

}  // namespace

TrainedModels train_cycle(const PoolState& pool, const bench::Dataset& train,
                          const ExperimentConfig& config, const RunSeeds& seeds,
                          const TrainOptions& options) {
  const auto& labeled = pool.labeled();
  if (labeled.empty()) throw std::invalid_argument("cannot train on an empty labeled set");
  const std::size_t cycle = pool.cycle();
  const StrategyKind kind = config.strategy;
  const std::size_t d = config.batch_size;

  TrainedModels out;
  if (options.warm && options.warm->target) out.target = std::move(options.warm->target);
  else out.target = std::make_unique<models::TargetModel>(target_config_for(train, config),
                                                         seeds.target_init(kind, cycle));

  const bool train_lpm = strategies::uses_loss_predictor(kind) && options.attach_lpm;
  if (train_lpm) {
    if (kind == StrategyKind::Listwise) {
      if (!options.ranker) throw std::invalid_argument("listwise training needs a sorter");
      if (options.ranker->length() != d)
        throw std::invalid_argument("sorter sequence length " + std::to_string(options.ranker->length()) +
                                    " differs from batch size " + std::to_string(d));
    }
    if (options.warm && options.warm->lpm) out.lpm = std::move(options.warm->lpm);
    else out.lpm = std::make_unique<models::LossPredictor>(
        models::LossPredictorConfig{out.target->feature_dim(), config.lpm_hidden}, seeds.lpm_init(kind, cycle));
  }

  auto target_params = out.target->parameters();
  std::vector<ad::Parameter*> lpm_params;
  if (out.lpm) lpm_params = out.lpm->parameters();
  const ad::OptimizerConfig target_cfg = config.target_optimizer(out.target->task());
  ad::Optimizer target_opt(target_cfg);
  ad::Optimizer lpm_opt(config.lpm_optimizer);

  const auto drop_epoch = static_cast<std::size_t>(std::floor(config.lr_drop_fraction * config.epochs));
  std::vector<std::size_t> order(labeled.begin(), labeled.end());
  Rng rng(seeds.batch_order(kind, cycle));
  std::vector<std::size_t> batch;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    if (epoch == drop_epoch && drop_epoch > 0)
      target_opt.set_learning_rate(target_cfg.learning_rate * 0.1);
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t start = 0; start < order.size(); start += d) {
      const std::size_t end = std::min(order.size(), start + d);
      batch.assign(order.begin() + static_cast<std::ptrdiff_t>(start),
                   order.begin() + static_cast<std::ptrdiff_t>(end));
      const auto labels = pool.labels(batch);

      ad::Tape tape;
      auto fwd = out.target->forward(tape, train.rows(batch));
      ad::Var per_sample = per_sample_training_loss(fwd.prediction, labels, *out.target);
      ad::zero_grad(target_params);
      tape.backward(ad::mean(per_sample));
      target_opt.step(target_params);

      if (!out.lpm || batch.size() != d) continue;
      const auto& losses = per_sample.value().values();
      ad::Tape lpm_tape;
      ad::Var predicted = out.lpm->forward(lpm_tape, lpm_tape.constant(fwd.features.value()));
      ad::Var rank_loss = kind == StrategyKind::Listwise
                              ? ranking::listwise_ranking_loss(lpm_tape, predicted, losses, *options.ranker)
                              : ranking::pairwise_ranking_loss(lpm_tape, predicted, losses, config.pairwise_margin);
      ad::zero_grad(lpm_params);
      lpm_tape.backward(rank_loss);
      lpm_opt.step(lpm_params);
    }
    if (options.hooks.on_epoch) options.hooks.on_epoch(epoch, *out.target);
  }
  return out;
}

CycleResult run_cycle(PoolState& pool, const bench::Dataset& train, const ExperimentConfig& config,
                      const RunSeeds& seeds, TrainedModels& models) {
  if (!models.target) throw std::invalid_argument("run_cycle needs a trained target model");
  if (pool.unlabeled().size() < config.budget)
    throw std::invalid_argument("budget " + std::to_string(config.budget) + " exceeds the " +
                                std::to_string(pool.unlabeled().size()) + " unlabeled samples left");
  const std::size_t cycle = pool.cycle();
  CycleResult result;
  result.candidates = strategies::draw_subset(pool.unlabeled(), config.subset_size, seeds.subset(cycle));

  strategies::QueryContext ctx;
  ctx.candidates = result.candidates;
  ctx.budget = config.budget;
  ctx.task = models.target->task();
  auto batch = models::target_forward(*models.target, train.rows(ctx.candidates), ctx.candidates);
  if (ctx.task == models::TaskKind::Classification) ctx.probabilities = batch.predictions;
  const StrategyKind kind = config.strategy;
  if (kind == StrategyKind::Coreset && !pool.labeled().empty())
    ctx.labeled_features = models::target_forward(*models.target, train.rows(pool.labeled())).features;
  if (strategies::uses_loss_predictor(kind)) {
    if (!models.lpm) throw std::invalid_argument(strategies::to_string(kind) + " strategy needs a trained loss predictor");
    ctx.predicted_losses = models::predict_losses(*models.lpm, batch.features);
  }
  ctx.features = std::move(batch.features);

  switch (kind) {
    case StrategyKind::Random: result.selection = strategies::select_random(ctx, seeds.random_strategy(cycle)); break;
    case StrategyKind::Entropy: result.selection = strategies::select_entropy(ctx); break;
    case StrategyKind::Coreset: result.selection = strategies::select_kcenter_greedy(ctx); break;
    case StrategyKind::Pairwise: result.selection = strategies::select_top_predicted_loss(ctx, "pairwise"); break;
    case StrategyKind::Listwise: result.selection = strategies::select_top_predicted_loss(ctx, "listwise"); break;
  }
  pool.reveal(result.selection.chosen);
  return result;
}

std::pair<double, bool> test_spearman(std::span<const double> predicted, std::span<const double> truth) {
  auto constant = [](std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
  };
  if (predicted.size() != truth.size()) throw std::invalid_argument("loss lists differ in length");
  if (predicted.size() < 2 || constant(predicted) || constant(truth)) return {0.0, true};
  return {ranking::spearman(predicted, truth), false};
}

Evaluation evaluate(models::TargetModel& target, models::LossPredictor* lpm, const bench::Dataset& test) {
  const std::size_t n = test.size();
  if (n == 0) throw std::invalid_argument("empty test set");
  const bool classify = target.task() == models::TaskKind::Classification;
  constexpr std::size_t kChunk = 500;
  double metric_sum = 0.0;
  std::vector<double> truth, predicted;
  truth.reserve(n);
  std::vector<std::size_t> idx;
  for (std::size_t start = 0; start < n; start += kChunk) {
    idx.resize(std::min(n, start + kChunk) - start);
    std::iota(idx.begin(), idx.end(), start);
    auto batch = models::target_forward(target, test.rows(idx));
    const auto labels = test.labels_at(idx);
    const auto& p = batch.predictions;
    for (std::size_t r = 0; r < idx.size(); ++r) {
      if (classify) {
        std::size_t best = 0;
        for (std::size_t c = 1; c < p.dim(1); ++c)
          if (p.at(r, c) > p.at(r, best)) best = c;
        metric_sum += static_cast<double>(best) == labels[r] ? 1.0 : 0.0;
      } else {
        metric_sum += std::abs(p.at(r, 0) - labels[r]);
      }
    }
    const auto losses = models::per_sample_loss(p, labels, target.task());
    truth.insert(truth.end(), losses.begin(), losses.end());
    if (lpm) {
      const auto pred = models::predict_losses(*lpm, batch.features);
      predicted.insert(predicted.end(), pred.begin(), pred.end());
    }
  }
  Evaluation ev;
  ev.metric_name = classify ? "accuracy" : "mae";
  ev.metric = metric_sum / static_cast<double>(n);
  if (lpm) {
    auto [rho, degenerate] = test_spearman(predicted, truth);
    ev.spearman = rho;
    ev.spearman_degenerate = degenerate;
  }
  return ev;
}

models::Sorter load_sorter_for(const ExperimentConfig& config) {
  if (config.sorter_path.empty() || !std::filesystem::exists(config.sorter_path))
    throw std::runtime_error(
        "listwise strategy needs a trained sorter artifact" +
        (config.sorter_path.empty() ? std::string() : " at '" + config.sorter_path.string() + "'") +
        "; create one with `train-sorter --length " + std::to_string(config.batch_size) +
        " --out <path>` and pass it with --sorter <path>");
  auto loaded = ranking::load_sorter(config.sorter_path);
  if (loaded.sorter.length() != config.batch_size)
    throw std::invalid_argument("sorter at '" + config.sorter_path.string() + "' was trained for length " +
                                std::to_string(loaded.sorter.length()) + " but batch size is " +
                                std::to_string(config.batch_size) + "; rerun train-sorter with --length " +
                                std::to_string(config.batch_size));
  return std::move(loaded.sorter);
}

RunResult run_single(const ExperimentConfig& config, const bench::DatasetSplit& data, std::uint64_t seed,
                     const models::Sorter* sorter) {
  config.validate(data.train);
  std::optional<models::Sorter> local;
  if (config.strategy == StrategyKind::Listwise) {
    local = sorter ? *sorter : load_sorter_for(config);
    if (local->length() != config.batch_size)
      throw std::invalid_argument("sorter length " + std::to_string(local->length()) +
                                  " differs from batch size " + std::to_string(config.batch_size));
    local->set_frozen(true);
  }

  RunResult result;
  result.strategy = config.strategy;
  result.seed = seed;
  const RunSeeds seeds{seed};
  std::vector<std::size_t> all(data.train.size());
  std::iota(all.begin(), all.end(), 0);
  result.initial = strategies::draw_subset(all, config.initial_size, seeds.initial_set());
  PoolState pool(data.train.labels, result.initial);

  try {
    TrainedModels models;
    for (std::size_t c = 0; c <= config.cycles; ++c) {
      const auto t0 = std::chrono::steady_clock::now();
      TrainOptions options;
      options.ranker = local ? &*local : nullptr;
      TrainedModels previous = std::move(models);
      if (config.retrain == RetrainMode::Warm) options.warm = &previous;
      models = train_cycle(pool, data.train, config, seeds, options);

      CycleRecord record;
      record.cycle = c;
      record.labeled = pool.labeled().size();
      record.evaluation = evaluate(*models.target, models.lpm.get(), data.test);
      if (c < config.cycles) {
        auto step = run_cycle(pool, data.train, config, seeds, models);
        result.queried.push_back(std::move(step.selection.chosen));
        pool.check_partition();
      }
      record.wall_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      result.records.push_back(std::move(record));
    }
  } catch (const std::exception& e) {
    result.error = e.what();
  }
  return result;
}

std::vector<RunResult> run_experiment(const ExperimentConfig& config,
                                      std::span<const StrategyKind> strategy_list,
                                      std::span<const std::uint64_t> seeds, unsigned threads,
                                      const models::Sorter* sorter) {
  const auto data = bench::make_dataset(config.dataset);
  std::optional<models::Sorter> shared;
  std::vector<ExperimentConfig> configs;
  for (StrategyKind kind : strategy_list) {
    ExperimentConfig c = config;
    c.strategy = kind;
    c.validate(data.train);
    configs.push_back(std::move(c));
    if (kind == StrategyKind::Listwise && !sorter && !shared) shared = load_sorter_for(config);
  }
  const models::Sorter* use = sorter ? sorter : (shared ? &*shared : nullptr);

  const std::size_t jobs = configs.size() * seeds.size();
  std::vector<RunResult> results(jobs);
  std::vector<std::string> failures(jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs; j = next++) {
      try {
        results[j] = run_single(configs[j / seeds.size()], data, seeds[j % seeds.size()], use);
      } catch (const std::exception& e) {
        failures[j] = e.what();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(jobs, 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& f : failures)
    if (!f.empty()) throw std::runtime_error(f);
  return results;
}

}  // namespace listal::alsim
