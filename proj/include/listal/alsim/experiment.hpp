// SPDX-License-Identifier: Apache-2.0
/**
 * @file   experiment.hpp
 * @brief  Active-learning cycle: train target + loss predictor, evaluate,
 *         query, reveal.
 *
 * The target model and the loss predictor live on separate tapes with
 * separate optimizers. The loss predictor only ever sees the target's
 * features and per-sample losses as constants, so its training cannot
 * perturb the target's trajectory.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <listal/alsim/pool.hpp>
#include <listal/autodiff/optim.hpp>
#include <listal/bench/datasets.hpp>
#include <listal/models/loss_predictor.hpp>
#include <listal/models/sorter.hpp>
#include <listal/models/target_model.hpp>
#include <listal/strategies/strategies.hpp>

namespace listal::alsim {

enum class RetrainMode { Fresh, Warm };

std::string to_string(RetrainMode mode);
RetrainMode parse_retrain_mode(const std::string& text);

struct ExperimentConfig {
  bench::DatasetSpec dataset;
  strategies::StrategyKind strategy = strategies::StrategyKind::Random;
  std::size_t initial_size = 100;
  std::size_t budget = 100;
  std::size_t cycles = 10;
  std::size_t subset_size = 1000;
  /// Mini-batch size d; the sorter's sequence length for listwise.
  std::size_t batch_size = 32;
  std::size_t epochs = 60;
  /// Target learning rate is multiplied by 0.1 once this fraction of the
  /// epochs has elapsed.
  double lr_drop_fraction = 0.8;
  /// Target optimizer: SGD(lr 0.05, momentum 0.9, wd 5e-4) for
  /// classification, Adam(lr 1e-3) for regression unless overridden.
  std::optional<ad::OptimizerKind> target_optimizer_kind;
  std::optional<double> target_lr;
  std::optional<double> target_momentum;
  std::optional<double> target_weight_decay;
  ad::OptimizerConfig lpm_optimizer = ad::OptimizerConfig::adam(1e-3);
  std::vector<std::size_t> target_hidden = {64, 64};
  std::size_t lpm_hidden = 128;
  double pairwise_margin = 1.0;
  RetrainMode retrain = RetrainMode::Fresh;
  std::filesystem::path sorter_path;

  ad::OptimizerConfig target_optimizer(models::TaskKind task) const;

  /// Throws std::invalid_argument on inconsistent settings for `train`.
  void validate(const bench::Dataset& train) const;
};

/// Where the per-run random streams come from. Draw seeds (initial set,
/// candidate subsets) depend only on the run seed; model seeds also depend
/// on the strategy.
struct RunSeeds {
  std::uint64_t run = 0;
  std::uint64_t initial_set() const;
  std::uint64_t subset(std::size_t cycle) const;
  std::uint64_t random_strategy(std::size_t cycle) const;
  std::uint64_t target_init(strategies::StrategyKind kind, std::size_t cycle) const;
  std::uint64_t lpm_init(strategies::StrategyKind kind, std::size_t cycle) const;
  std::uint64_t batch_order(strategies::StrategyKind kind, std::size_t cycle) const;
};

struct TrainedModels {
  std::unique_ptr<models::TargetModel> target;
  /// Absent for strategies without a loss predictor.
  std::unique_ptr<models::LossPredictor> lpm;
};

struct TrainHooks {
  /// Called after every epoch with the 0-based epoch index.
  std::function<void(std::size_t epoch, models::TargetModel& target)> on_epoch;
};

struct TrainOptions {
  /// Rank surrogate for the listwise loss (required for listwise).
  models::Ranker* ranker = nullptr;
  /// Train the loss predictor when the strategy calls for one. Switching it
  /// off must leave the target trajectory unchanged.
  bool attach_lpm = true;
  /// Models from the previous cycle for warm retraining; consumed.
  TrainedModels* warm = nullptr;
  TrainHooks hooks;
};

/// Trains a target model (and the loss predictor when the strategy uses one)
/// on the labeled part of `pool`.
TrainedModels train_cycle(const PoolState& pool, const bench::Dataset& train,
                          const ExperimentConfig& config, const RunSeeds& seeds,
                          const TrainOptions& options);

struct CycleResult {
  strategies::Selection selection;
  std::vector<std::size_t> candidates;
};

/// Draws the candidate subset, scores it with the strategy and reveals the
/// chosen samples' labels.
CycleResult run_cycle(PoolState& pool, const bench::Dataset& train, const ExperimentConfig& config,
                      const RunSeeds& seeds, TrainedModels& models);

struct Evaluation {
  std::string metric_name;  ///< "accuracy" or "mae"
  double metric = 0.0;
  /// Spearman between predicted and true per-sample test losses; absent
  /// without a loss predictor.
  std::optional<double> spearman;
  /// Either loss list was constant; spearman is then reported as 0.
  bool spearman_degenerate = false;
};

Evaluation evaluate(models::TargetModel& target, models::LossPredictor* lpm, const bench::Dataset& test);

/// Spearman with the tie convention used by evaluate(): 0 and degenerate
/// when either list is constant.
std::pair<double, bool> test_spearman(std::span<const double> predicted, std::span<const double> truth);

struct CycleRecord {
  std::size_t cycle = 0;
  std::size_t labeled = 0;
  Evaluation evaluation;
  double wall_seconds = 0.0;
};

struct RunResult {
  strategies::StrategyKind strategy = strategies::StrategyKind::Random;
  std::uint64_t seed = 0;
  std::vector<CycleRecord> records;
  std::vector<std::size_t> initial;
  /// Chosen indices per query, in pick order.
  std::vector<std::vector<std::size_t>> queried;
  /// Set when the run aborted; records hold what completed.
  std::optional<std::string> error;
};

/// One seed, one strategy. A non-null `sorter` overrides loading it from
/// config.sorter_path. Invalid configs throw; failures inside a cycle are
/// captured in RunResult::error.
RunResult run_single(const ExperimentConfig& config, const bench::DatasetSplit& data, std::uint64_t seed,
                     const models::Sorter* sorter = nullptr);

/// Every (strategy, seed) combination. Runs execute on up to `threads`
/// worker threads (0 = hardware concurrency); results are ordered by
/// strategy list order then seed list order regardless of scheduling.
std::vector<RunResult> run_experiment(const ExperimentConfig& config,
                                      std::span<const strategies::StrategyKind> strategy_list,
                                      std::span<const std::uint64_t> seeds, unsigned threads = 0,
                                      const models::Sorter* sorter = nullptr);

/// Loads and checks the sorter for a listwise config. Throws with a message
/// naming `train-sorter` when the artifact is missing.
models::Sorter load_sorter_for(const ExperimentConfig& config);

}  // namespace listal::alsim
