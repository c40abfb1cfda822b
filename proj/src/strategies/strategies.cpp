// SPDX-License-Identifier: Apache-2.0
#include <listal/strategies/strategies.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <listal/seed.hpp>

namespace listal::strategies {

std::string to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::Random: return "random";
    case StrategyKind::Entropy: return "entropy";
    case StrategyKind::Coreset: return "coreset";
    case StrategyKind::Pairwise: return "pairwise";
    case StrategyKind::Listwise: return "listwise";
  }
  return "?";
}

StrategyKind parse_strategy(const std::string& text) {
  for (auto kind : {StrategyKind::Random, StrategyKind::Entropy, StrategyKind::Coreset,
                    StrategyKind::Pairwise, StrategyKind::Listwise})
    if (to_string(kind) == text) return kind;
  throw std::invalid_argument("unknown strategy '" + text +
                              "' (expected random|entropy|coreset|pairwise|listwise)");
}

bool uses_loss_predictor(StrategyKind kind) {
  return kind == StrategyKind::Pairwise || kind == StrategyKind::Listwise;
}

namespace {

std::size_t row_width(const ad::Tensor& t) { return t.size() / t.dim(0); }

/// Positions of the `budget` best scores, higher first, ties by pool index.
Selection top_k(const QueryContext& ctx, std::span<const double> scores, std::string name) {
  std::vector<std::size_t> order(ctx.candidates.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return ctx.candidates[a] < ctx.candidates[b];
  });
  Selection sel;
  sel.strategy = std::move(name);
  for (std::size_t k = 0; k < ctx.budget; ++k) {
    sel.chosen.push_back(ctx.candidates[order[k]]);
    sel.scores.push_back(scores[order[k]]);
  }
  return sel;
}

}  // namespace

void QueryContext::validate() const {
  if (budget > candidates.size())
    throw std::invalid_argument("budget " + std::to_string(budget) + " exceeds " +
                                std::to_string(candidates.size()) + " candidates");
  std::vector<std::size_t> sorted = candidates;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("candidate indices contain duplicates");
  if (!features.empty() && features.dim(0) != candidates.size())
    throw std::invalid_argument("feature rows do not match candidate count");
  if (probabilities && probabilities->dim(0) != candidates.size())
    throw std::invalid_argument("probability rows do not match candidate count");
  if (!predicted_losses.empty() && predicted_losses.size() != candidates.size())
    throw std::invalid_argument("predicted losses do not match candidate count");
}

std::vector<std::size_t> draw_subset(std::span<const std::size_t> unlabeled, std::size_t size,
                                     std::uint64_t seed) {
  std::vector<std::size_t> pool(unlabeled.begin(), unlabeled.end());
  std::sort(pool.begin(), pool.end());
  if (size >= pool.size()) return pool;
  Rng rng(seed);
  for (std::size_t i = 0; i < size; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(size);
  std::sort(pool.begin(), pool.end());
  return pool;
}

Selection select_random(const QueryContext& ctx, std::uint64_t seed) {
  ctx.validate();
  auto chosen = draw_subset(ctx.candidates, ctx.budget, seed);
  Selection sel;
  sel.strategy = "random";
  sel.chosen = std::move(chosen);
  sel.scores.assign(sel.chosen.size(), 0.0);
  return sel;
}

double entropy(std::span<const double> probabilities) {
  double h = 0.0;
  for (double p : probabilities)
    if (p > 0.0) h -= p * std::log(p);
  return h;
}

Selection select_entropy(const QueryContext& ctx) {
  ctx.validate();
  if (ctx.task != models::TaskKind::Classification || !ctx.probabilities)
    throw std::invalid_argument("entropy strategy requires class posteriors");
  const ad::Tensor& probs = *ctx.probabilities;
  const std::size_t classes = probs.dim(1);
  std::vector<double> scores(ctx.candidates.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const auto row = probs.values().subspan(i * classes, classes);
    const double total = std::accumulate(row.begin(), row.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-6)
      throw std::invalid_argument("class posteriors of candidate " +
                                  std::to_string(ctx.candidates[i]) + " sum to " +
                                  std::to_string(total));
    scores[i] = entropy(row);
  }
  return top_k(ctx, scores, "entropy");
}

Selection select_kcenter_greedy(const QueryContext& ctx) {
  ctx.validate();
  const std::size_t n = ctx.candidates.size();
  Selection sel;
  sel.strategy = "coreset";
  if (ctx.budget == 0) return sel;
  const std::size_t dim = row_width(ctx.features);
  const double* cand = ctx.features.data();

  auto squared_distance = [dim](const double* a, const double* b) {
    double s = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      const double e = a[k] - b[k];
      s += e * e;
    }
    return s;
  };

  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  if (ctx.labeled_features && !ctx.labeled_features->empty()) {
    const ad::Tensor& labeled = *ctx.labeled_features;
    if (row_width(labeled) != dim)
      throw std::invalid_argument("labeled and candidate features differ in width");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < labeled.dim(0); ++j)
        nearest[i] = std::min(nearest[i], squared_distance(cand + i * dim, labeled.data() + j * dim));
  }

  std::vector<bool> taken(n, false);
  for (std::size_t step = 0; step < ctx.budget; ++step) {
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (taken[i]) continue;
      if (best == n || nearest[i] > nearest[best] ||
          (nearest[i] == nearest[best] && ctx.candidates[i] < ctx.candidates[best]))
        best = i;
    }
    taken[best] = true;
    sel.chosen.push_back(ctx.candidates[best]);
    sel.scores.push_back(std::sqrt(nearest[best]));
    for (std::size_t i = 0; i < n; ++i)
      if (!taken[i])
        nearest[i] = std::min(nearest[i], squared_distance(cand + i * dim, cand + best * dim));
  }
  return sel;
}

Selection select_top_predicted_loss(const QueryContext& ctx, const std::string& name) {
  ctx.validate();
  if (ctx.predicted_losses.size() != ctx.candidates.size())
    throw std::invalid_argument("learned-loss strategy needs a predicted loss per candidate");
  for (std::size_t i = 0; i < ctx.predicted_losses.size(); ++i)
    if (!std::isfinite(ctx.predicted_losses[i]))
      throw std::invalid_argument("non-finite predicted loss for candidate " +
                                  std::to_string(ctx.candidates[i]));
  return top_k(ctx, ctx.predicted_losses, name);
}

}  // namespace listal::strategies
