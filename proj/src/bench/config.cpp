// SPDX-License-Identifier: Apache-2.0
#include <listal/bench/config.hpp>

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace listal::bench {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

template <typename T>
T number(const std::string& key, const std::string& value) {
  T v{};
  const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
  if (value.empty() || res.ec != std::errc() || res.ptr != value.data() + value.size())
    throw std::invalid_argument("setting '" + key + "': cannot parse '" + value + "'");
  return v;
}

ad::OptimizerKind optimizer_kind(const std::string& key, const std::string& value) {
  if (value == "sgd") return ad::OptimizerKind::SgdMomentum;
  if (value == "adam") return ad::OptimizerKind::Adam;
  throw std::invalid_argument("setting '" + key + "': expected sgd|adam, got '" + value + "'");
}

}  // namespace

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in(text);
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw std::invalid_argument("config line " + std::to_string(line_no) + ": empty key");
    out.emplace_back(std::move(key), trim(line.substr(eq + 1)));
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str());
}

void apply_setting(RunSettings& s, const std::string& key, const std::string& value) {
  auto& e = s.experiment;
  auto& d = e.dataset;
  using Setter = std::function<void(const std::string&)>;
  auto size = [&](std::size_t& field) -> Setter {
    return [&field, &key](const std::string& v) { field = number<std::size_t>(key, v); };
  };
  auto real = [&](double& field) -> Setter {
    return [&field, &key](const std::string& v) { field = number<double>(key, v); };
  };
  auto maybe = [&](std::optional<double>& field) -> Setter {
    return [&field, &key](const std::string& v) { field = number<double>(key, v); };
  };
  const std::map<std::string, Setter> setters = {
      {"dataset", [&](const std::string& v) { d.kind = parse_dataset_kind(v); }},
      {"train_size", size(d.train_size)},
      {"test_size", size(d.test_size)},
      {"input_dim", size(d.input_dim)},
      {"num_classes", size(d.num_classes)},
      {"clusters_per_class", size(d.clusters_per_class)},
      {"cluster_std", real(d.cluster_std)},
      {"center_range", real(d.center_range)},
      {"noise", real(d.noise)},
      {"marked_fraction", real(d.marked_fraction)},
      {"marked_noise_scale", real(d.marked_noise_scale)},
      {"grid", size(d.grid)},
      {"csv_path", [&](const std::string& v) { d.csv_path = v; }},
      {"label_column", [&](const std::string& v) { d.label_column = v; }},
      {"data_seed", [&](const std::string& v) { d.seed = number<std::uint64_t>(key, v); }},
      {"strategy",
       [&](const std::string& v) {
         s.strategies.clear();
         for (const auto& name : split_list(v)) s.strategies.push_back(strategies::parse_strategy(name));
         if (s.strategies.empty()) throw std::invalid_argument("setting 'strategy' is empty");
         e.strategy = s.strategies.front();
       }},
      {"initial_size", size(e.initial_size)},
      {"budget", size(e.budget)},
      {"cycles", size(e.cycles)},
      {"subset_size", size(e.subset_size)},
      {"batch_size", size(e.batch_size)},
      {"epochs", size(e.epochs)},
      {"lr_drop_fraction", real(e.lr_drop_fraction)},
      {"target_optimizer", [&](const std::string& v) { e.target_optimizer_kind = optimizer_kind(key, v); }},
      {"target_lr", maybe(e.target_lr)},
      {"target_momentum", maybe(e.target_momentum)},
      {"target_weight_decay", maybe(e.target_weight_decay)},
      {"lpm_optimizer", [&](const std::string& v) { e.lpm_optimizer.kind = optimizer_kind(key, v); }},
      {"lpm_lr", real(e.lpm_optimizer.learning_rate)},
      {"lpm_weight_decay", real(e.lpm_optimizer.weight_decay)},
      {"target_hidden",
       [&](const std::string& v) {
         e.target_hidden.clear();
         for (const auto& w : split_list(v)) e.target_hidden.push_back(number<std::size_t>(key, w));
       }},
      {"lpm_hidden", size(e.lpm_hidden)},
      {"pairwise_margin", real(e.pairwise_margin)},
      {"retrain", [&](const std::string& v) { e.retrain = alsim::parse_retrain_mode(v); }},
      {"sorter", [&](const std::string& v) { e.sorter_path = v; }},
      {"seeds",
       [&](const std::string& v) {
         s.seeds.clear();
         for (const auto& item : split_list(v)) s.seeds.push_back(number<std::uint64_t>(key, item));
         if (s.seeds.empty()) throw std::invalid_argument("setting 'seeds' is empty");
       }},
      {"threads", [&](const std::string& v) { s.threads = number<unsigned>(key, v); }},
      {"out", [&](const std::string& v) { s.out = v; }},
  };
  const auto it = setters.find(key);
  if (it == setters.end()) throw std::invalid_argument("unknown setting '" + key + "'");
  it->second(value);
}

RunSettings load_run_settings(const std::filesystem::path& path) {
  RunSettings settings;
  for (const auto& [key, value] : parse_config_file(path)) apply_setting(settings, key, value);
  return settings;
}

}  // namespace listal::bench
