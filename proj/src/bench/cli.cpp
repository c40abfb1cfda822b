// SPDX-License-Identifier: Apache-2.0
#include <listal/bench/cli.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <ostream>

#include <listal/alsim/experiment.hpp>
#include <listal/alsim/report.hpp>
#include <listal/bench/config.hpp>
#include <listal/bench/metrics.hpp>
#include <listal/bench/plot.hpp>
#include <listal/bench/selfcheck.hpp>
#include <listal/ranking/sorter_training.hpp>

namespace listal::bench {

namespace {

std::string fixed(double v, int digits = 4) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

void print_summary(std::ostream& out, std::span<const ReportRow> rows) {
  out << "strategy      metric       cycle  labeled   mean      stddev    seeds\n";
  for (const auto& s : summarize(rows)) {
    char line[160];
    std::snprintf(line, sizeof line, "%-13s %-12s %5zu  %7.0f  %-9s %-9s %zu\n", s.strategy.c_str(),
                  s.metric.c_str(), s.cycle, s.labeled, fixed(s.mean).c_str(), fixed(s.stddev).c_str(), s.seeds);
    out << line;
  }
}

struct TrainSorterArgs {
  ranking::SorterTrainingConfig config;
  std::string out;
  bool quiet = false;
};

int do_train_sorter(const TrainSorterArgs& a, std::ostream& out) {
  auto config = a.config;
  const auto t0 = std::chrono::steady_clock::now();
  if (!a.quiet)
    config.on_epoch = [&out](std::size_t epoch, double loss) {
      if (epoch % 10 == 0) out << "epoch " << epoch << " loss " << fixed(loss, 6) << std::endl;
    };
  auto result = ranking::train_sorter(config);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ranking::SorterMeta meta{config.length, config.hidden, config.seed, result.epochs, result.heldout_spearman};
  std::filesystem::path path(a.out);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  ranking::save_sorter(path, result.sorter, meta);
  out << "sorter length " << config.length << " held-out spearman " << fixed(result.heldout_spearman)
      << " after " << result.epochs << " epochs (" << fixed(secs, 1) << " s), saved to " << path.string() << '\n';
  return 0;
}

int do_run(RunSettings settings, std::ostream& out, std::ostream& err) {
  auto& config = settings.experiment;
  std::filesystem::create_directories(settings.out);
  const auto t0 = std::chrono::steady_clock::now();
  auto results = alsim::run_experiment(config, settings.strategies, settings.seeds, settings.threads);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  int status = 0;
  for (const auto& r : results)
    if (r.error) {
      err << "run " << strategies::to_string(r.strategy) << " seed " << r.seed << " aborted after "
          << r.records.size() << " cycle(s): " << *r.error << '\n';
      status = 3;
    }
  const auto rows = alsim::to_report_rows(results);
  if (rows.empty()) {
    err << "no cycle completed; nothing written\n";
    return 3;
  }
  const auto metrics = settings.out / "metrics.csv";
  write_metrics_csv(rows, metrics);
  print_summary(out, rows);
  out << "wrote " << metrics.string() << " (" << fixed(secs, 1) << " s)\n";
  return status;
}

int do_report(const std::string& metrics, const std::string& output, const std::string& metric, std::ostream& out) {
  const auto rows = read_metrics_csv(metrics);
  if (rows.empty()) throw std::invalid_argument("metrics file '" + metrics + "' has no rows");
  const std::string chosen = metric.empty() ? primary_metric(rows) : metric;
  std::filesystem::path path = output.empty() ? std::filesystem::path(metrics).replace_filename(chosen + ".svg")
                                              : std::filesystem::path(output);
  render_curves(metrics, path, chosen);
  print_summary(out, rows);
  out << "wrote " << path.string() << '\n';
  return 0;
}

int do_check(std::ostream& out) {
  bool all = true;
  for (const auto& c : run_self_checks()) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.detail << ")\n";
    all = all && c.passed;
  }
  out << (all ? "all checks passed\n" : "some checks failed\n");
  return all ? 0 : 1;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Listwise loss-prediction active learning at desk scale", "listal"};
  app.require_subcommand(1);

  TrainSorterArgs ts;
  ts.out = "sorter.bin";
  auto* train = app.add_subcommand("train-sorter", "Train the bidirectional-GRU sorter on synthetic sequences");
  train->add_option("--length", ts.config.length, "Sequence length d")->capture_default_str();
  train->add_option("--hidden", ts.config.hidden, "GRU hidden size")->capture_default_str();
  train->add_option("--epochs", ts.config.epochs, "Training epochs")->capture_default_str();
  train->add_option("--corpus", ts.config.corpus_size, "Training sequences")->capture_default_str();
  train->add_option("--heldout", ts.config.heldout_size, "Held-out sequences")->capture_default_str();
  train->add_option("--batch", ts.config.batch_size, "Sequences per mini-batch")->capture_default_str();
  train->add_option("--batches-per-epoch", ts.config.batches_per_epoch, "Mini-batches per epoch")->capture_default_str();
  train->add_option("--lr", ts.config.learning_rate, "Adam learning rate")->capture_default_str();
  train->add_option("--seed", ts.config.seed, "Random seed")->capture_default_str();
  train->add_option("--out", ts.out, "Artifact path")->capture_default_str();
  train->add_flag("--quiet", ts.quiet, "No per-epoch progress");

  std::string config_path, strategy, seeds, out_dir, sorter, dataset;
  std::optional<std::size_t> cycles, budget, init_size, subset_size, batch_size, epochs;
  std::optional<unsigned> threads;
  std::vector<std::string> overrides;
  auto* run = app.add_subcommand("run", "Run the active-learning experiment and write metrics.csv");
  run->add_option("--config", config_path, "key = value settings file")->check(CLI::ExistingFile);
  run->add_option("--strategy", strategy, "random|entropy|coreset|pairwise|listwise, comma separated");
  run->add_option("--dataset", dataset, "blobs|hard-regression|csv|grid-image");
  run->add_option("--cycles", cycles, "Query cycles");
  run->add_option("--budget", budget, "Samples labeled per cycle");
  run->add_option("--init-size", init_size, "Initial labeled samples");
  run->add_option("--subset-size", subset_size, "Candidates scored per cycle");
  run->add_option("--batch-size", batch_size, "Mini-batch size d");
  run->add_option("--epochs", epochs, "Training epochs per cycle");
  run->add_option("--seeds", seeds, "Run seeds a,b,c");
  run->add_option("--threads", threads, "Worker threads (0 = all cores)");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--sorter", sorter, "Sorter artifact from train-sorter");
  run->add_option("--set", overrides, "Extra key=value setting, repeatable");

  std::string metrics, plot, metric;
  auto* report = app.add_subcommand("report", "Render learning curves from a metrics file");
  report->add_option("--metrics", metrics, "metrics.csv written by run")->required()->check(CLI::ExistingFile);
  report->add_option("--out", plot, "SVG path (default: next to the metrics file)");
  report->add_option("--metric", metric, "Metric to plot (default accuracy or mae)");

  auto* check = app.add_subcommand("check", "Gradient and oracle self-tests");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*train) return do_train_sorter(ts, out);
    if (*run) {
      RunSettings settings = config_path.empty() ? RunSettings{} : load_run_settings(config_path);
      auto set = [&](const std::string& key, const std::string& value) { apply_setting(settings, key, value); };
      if (!dataset.empty()) set("dataset", dataset);
      if (!strategy.empty()) set("strategy", strategy);
      if (cycles) set("cycles", std::to_string(*cycles));
      if (budget) set("budget", std::to_string(*budget));
      if (init_size) set("initial_size", std::to_string(*init_size));
      if (subset_size) set("subset_size", std::to_string(*subset_size));
      if (batch_size) set("batch_size", std::to_string(*batch_size));
      if (epochs) set("epochs", std::to_string(*epochs));
      if (!seeds.empty()) set("seeds", seeds);
      if (threads) set("threads", std::to_string(*threads));
      if (!out_dir.empty()) set("out", out_dir);
      if (!sorter.empty()) set("sorter", sorter);
      for (const auto& kv : overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
        set(kv.substr(0, eq), kv.substr(eq + 1));
      }
      return do_run(std::move(settings), out, err);
    }
    if (*report) return do_report(metrics, plot, metric, out);
    if (*check) return do_check(out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace listal::bench
