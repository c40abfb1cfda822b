// SPDX-License-Identifier: Apache-2.0
#include <listal/ranking/sorter_training.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include <listal/autodiff/optim.hpp>
#include <listal/autodiff/param_io.hpp>
#include <listal/seed.hpp>

namespace listal::ranking {

namespace {

enum : std::uint64_t { kInitStream = 1, kCorpusStream = 2, kHeldoutStream = 3, kShuffleStream = 4 };

constexpr std::size_t kEvalChunk = 128;

void draw_raw(std::vector<double>& v, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double pick = unit(rng);
  if (pick < 0.5) {
    for (double& x : v) x = unit(rng);
  } else if (pick < 0.8) {
    const double mu = 0.3 + 0.4 * unit(rng);
    const double sd = 0.05 + 0.15 * unit(rng);
    std::normal_distribution<double> gauss(mu, sd);
    for (double& x : v) x = std::clamp(gauss(rng), 0.0, 1.0);
  } else {
    std::uniform_int_distribution<std::size_t> levels(2, 6);
    const std::size_t k = std::min(levels(rng), v.size());
    std::vector<std::size_t> cuts(k - 1);
    std::uniform_int_distribution<std::size_t> at(1, v.size() - 1);
    for (auto& c : cuts) c = at(rng);
    std::sort(cuts.begin(), cuts.end());
    std::normal_distribution<double> noise(0.0, 0.02);
    std::size_t segment = 0;
    double level = unit(rng);
    for (std::size_t i = 0; i < v.size(); ++i) {
      while (segment < cuts.size() && i >= cuts[segment]) {
        level = unit(rng);
        ++segment;
      }
      v[i] = level + noise(rng);
    }
  }
}

ad::Tensor stack_rows(std::span<const SyntheticSequence> corpus, std::span<const std::size_t> rows,
                      bool ranks) {
  const std::size_t d = corpus.front().values.size();
  ad::Tensor out({rows.size(), d});
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& src = ranks ? corpus[rows[r]].true_ranks.ranks : corpus[rows[r]].values;
    std::copy(src.begin(), src.end(), out.data() + r * d);
  }
  return out;
}

}  // namespace

std::vector<SyntheticSequence> generate_synthetic_sequences(std::size_t count, std::size_t length,
                                                            std::uint64_t seed) {
  if (length < 2) throw std::invalid_argument("synthetic sequences need length >= 2");
  std::vector<SyntheticSequence> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng(derive_seed(seed, {i}));
    std::vector<double> v(length);
    for (;;) {
      draw_raw(v, rng);
      const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
      const double low = *lo, range = *hi - *lo;
      // all-equal draws are discarded
      if (range < 1e-12) continue;
      for (double& x : v) x = (x - low) / range;
      break;
    }
    out[i].true_ranks = true_ranks(v);
    out[i].values = std::move(v);
  }
  return out;
}

double heldout_spearman(models::Sorter& sorter, std::span<const SyntheticSequence> sequences) {
  if (sequences.empty()) return 0.0;
  const std::size_t d = sorter.length();
  double total = 0.0;
  for (std::size_t begin = 0; begin < sequences.size(); begin += kEvalChunk) {
    const std::size_t end = std::min(sequences.size(), begin + kEvalChunk);
    std::vector<std::size_t> rows(end - begin);
    std::iota(rows.begin(), rows.end(), begin);
    ad::Tape tape;
    const ad::Tensor& out =
        sorter.forward(tape, tape.constant(stack_rows(sequences, rows, false))).value();
    for (std::size_t r = 0; r < rows.size(); ++r)
      total += spearman(out.values().subspan(r * d, d), sequences[rows[r]].values);
  }
  return total / static_cast<double>(sequences.size());
}

std::uint64_t sorter_init_seed(std::uint64_t training_seed) {
  return derive_seed(training_seed, {kInitStream});
}

SorterTrainingResult train_sorter(const SorterTrainingConfig& config) {
  if (config.batch_size == 0 || config.corpus_size < config.batch_size)
    throw std::invalid_argument("sorter corpus must hold at least one batch");
  SorterTrainingResult result{
      models::Sorter({config.length, config.hidden}, sorter_init_seed(config.seed)), 0.0,
      0.0, 0};
  const auto corpus = generate_synthetic_sequences(config.corpus_size, config.length,
                                                   derive_seed(config.seed, {kCorpusStream}));
  const auto heldout = generate_synthetic_sequences(config.heldout_size, config.length,
                                                    derive_seed(config.seed, {kHeldoutStream}));

  auto params = result.sorter.parameters();
  ad::Optimizer optimizer(ad::OptimizerConfig::adam(config.learning_rate));
  Rng shuffle_rng(derive_seed(config.seed, {kShuffleStream}));
  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), shuffle_rng);
  std::size_t cursor = 0;
  const double per_element = 1.0 / static_cast<double>(config.length);

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    double epoch_loss = 0.0;
    for (std::size_t b = 0; b < config.batches_per_epoch; ++b) {
      if (cursor + config.batch_size > order.size()) {
        std::shuffle(order.begin(), order.end(), shuffle_rng);
        cursor = 0;
      }
      const std::span<const std::size_t> rows(order.data() + cursor, config.batch_size);
      cursor += config.batch_size;

      ad::zero_grad(params);
      ad::Tape tape;
      ad::Var out = result.sorter.forward(tape, tape.constant(stack_rows(corpus, rows, false)));
      ad::Var loss = ad::scale(ad::mean(ad::squared_error(out, stack_rows(corpus, rows, true))),
                           per_element);
      const double value = loss.value().item();
      if (!std::isfinite(value)) {
        std::ostringstream msg;
        msg << "sorter training diverged at epoch " << epoch << ", batch " << b
            << " (loss " << value << ", lr " << config.learning_rate << ")";
        throw SorterDivergence(msg.str());
      }
      tape.backward(loss);
      optimizer.step(params);
      epoch_loss += value;
    }
    result.final_loss = epoch_loss / static_cast<double>(std::max<std::size_t>(1, config.batches_per_epoch));
    result.epochs = epoch + 1;
    if (config.on_epoch) config.on_epoch(epoch, result.final_loss);
  }
  result.heldout_spearman = heldout_spearman(result.sorter, heldout);
  return result;
}

std::filesystem::path sorter_meta_path(const std::filesystem::path& path) {
  auto meta = path;
  meta += ".meta";
  return meta;
}

void save_sorter(const std::filesystem::path& path, models::Sorter& sorter, const SorterMeta& meta) {
  auto params = sorter.parameters();
  std::vector<const ad::Parameter*> view(params.begin(), params.end());
  ad::save_parameters(path, view);
  std::ofstream out(sorter_meta_path(path), std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write sorter metadata next to '" + path.string() + "'");
  out << "length = " << meta.length << '\n'
      << "hidden = " << meta.hidden << '\n'
      << "seed = " << meta.seed << '\n'
      << "epochs = " << meta.epochs << '\n';
  out.precision(6);
  out << "heldout_spearman = " << meta.heldout_spearman << '\n';
}

LoadedSorter load_sorter(const std::filesystem::path& path) {
  std::ifstream in(sorter_meta_path(path));
  if (!in)
    throw std::runtime_error("sorter metadata '" + sorter_meta_path(path).string() + "' not found");
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
      return s;
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  auto field = [&](const char* key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end())
      throw std::runtime_error(std::string("sorter metadata lacks '") + key + "'");
    return it->second;
  };
  SorterMeta meta;
  meta.length = std::stoull(field("length"));
  meta.hidden = std::stoull(field("hidden"));
  meta.seed = std::stoull(field("seed"));
  meta.epochs = std::stoull(field("epochs"));
  meta.heldout_spearman = std::stod(field("heldout_spearman"));
  LoadedSorter loaded{models::Sorter({meta.length, meta.hidden}, 0), meta};
  auto params = loaded.sorter.parameters();
  ad::assign_parameters(params, ad::load_parameters(path));
  return loaded;
}

}  // namespace listal::ranking
