// SPDX-License-Identifier: Apache-2.0
#include <listal/bench/datasets.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <listal/seed.hpp>

namespace listal::bench {

ad::Tensor Dataset::rows(std::span<const std::size_t> indices) const {
  const std::size_t d = dim();
  ad::Tensor out({indices.size(), d});
  for (std::size_t r = 0; r < indices.size(); ++r) {
    const double* src = features.data() + indices[r] * d;
    std::copy(src, src + d, out.data() + r * d);
  }
  return out;
}

std::vector<double> Dataset::labels_at(std::span<const std::size_t> indices) const {
  std::vector<double> out(indices.size());
  for (std::size_t r = 0; r < indices.size(); ++r) out[r] = labels[indices[r]];
  return out;
}

std::string to_string(DatasetKind kind) {
  switch (kind) {
    case DatasetKind::Blobs: return "blobs";
    case DatasetKind::HardRegression: return "hard-regression";
    case DatasetKind::CsvTabular: return "csv";
    case DatasetKind::GridImage: return "grid-image";
  }
  return "?";
}

DatasetKind parse_dataset_kind(const std::string& text) {
  for (auto kind : {DatasetKind::Blobs, DatasetKind::HardRegression, DatasetKind::CsvTabular,
                    DatasetKind::GridImage})
    if (to_string(kind) == text) return kind;
  throw std::invalid_argument("unknown dataset kind '" + text +
                              "' (expected blobs|hard-regression|csv|grid-image)");
}

namespace {

enum : std::uint64_t { kLayoutStream = 11, kTrainStream = 12, kTestStream = 13 };

Dataset empty_like(const DatasetSpec& spec, std::size_t n, std::size_t dim, models::TaskKind task) {
  Dataset data;
  data.features = ad::Tensor({n, dim});
  data.labels.resize(n);
  data.marked.assign(n, 0);
  data.task = task;
  return data;
  (void)spec;
}

void require_sizes(const DatasetSpec& spec) {
  if (spec.train_size == 0 || spec.test_size == 0)
    throw std::invalid_argument("dataset train and test sizes must be positive");
  if (spec.input_dim == 0) throw std::invalid_argument("dataset input dimension must be positive");
}

}  // namespace

DatasetSplit generate_blobs(const DatasetSpec& spec) {
  require_sizes(spec);
  if (spec.num_classes < 2) throw std::invalid_argument("blobs need at least 2 classes");
  const std::size_t k = std::max<std::size_t>(1, spec.clusters_per_class);
  const std::size_t dim = spec.input_dim;

  Rng layout(derive_seed(spec.seed, {kLayoutStream}));
  std::uniform_real_distribution<double> cube(-spec.center_range, spec.center_range);
  std::vector<double> centers(spec.num_classes * k * dim);
  for (double& c : centers) c = cube(layout);

  auto draw = [&](std::size_t n, std::uint64_t stream) {
    Dataset data = empty_like(spec, n, dim, models::TaskKind::Classification);
    data.num_classes = spec.num_classes;
    Rng rng(derive_seed(spec.seed, {stream}));
    std::uniform_int_distribution<std::size_t> cls(0, spec.num_classes - 1);
    std::uniform_int_distribution<std::size_t> sub(0, k - 1);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t c = cls(rng);
      const double* center = centers.data() + (c * k + sub(rng)) * dim;
      for (std::size_t j = 0; j < dim; ++j)
        data.features.at(i, j) = center[j] + spec.cluster_std * gauss(rng);
      data.labels[i] = static_cast<double>(c);
    }
    return data;
  };
  return {draw(spec.train_size, kTrainStream), draw(spec.test_size, kTestStream)};
}

DatasetSplit generate_hard_regression(const DatasetSpec& spec) {
  require_sizes(spec);
  if (!(spec.marked_fraction >= 0.0 && spec.marked_fraction < 1.0))
    throw std::invalid_argument("marked fraction must lie in [0,1)");
  const std::size_t dim = spec.input_dim;
  const double threshold = 1.0 - 2.0 * spec.marked_fraction;

  auto draw = [&](std::size_t n, std::uint64_t stream) {
    Dataset data = empty_like(spec, n, dim, models::TaskKind::Regression);
    Rng rng(derive_seed(spec.seed, {stream}));
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      double* x = data.features.data() + i * dim;
      for (std::size_t j = 0; j < dim; ++j) x[j] = unit(rng);
      double f = std::sin(3.0 * x[0]);
      if (dim > 1) f += 0.5 * x[1] * x[1];
      if (dim > 2) f -= 0.3 * x[2];
      for (std::size_t j = 3; j < dim; ++j) f += 0.2 * std::sin(2.0 * x[j]);
      const bool marked = spec.marked_fraction > 0.0 && x[0] > threshold;
      const double sd = spec.noise * (1.0 + 0.5 * std::abs(x[0])) *
                        (marked ? spec.marked_noise_scale : 1.0);
      data.labels[i] = f + sd * gauss(rng);
      data.marked[i] = marked ? 1 : 0;
    }
    return data;
  };
  return {draw(spec.train_size, kTrainStream), draw(spec.test_size, kTestStream)};
}

DatasetSplit generate_grid_images(const DatasetSpec& spec) {
  require_sizes(spec);
  if (spec.num_classes < 2 || spec.num_classes > 4)
    throw std::invalid_argument("grid images support 2 to 4 classes");
  const std::size_t g = spec.grid;
  if (g < 2) throw std::invalid_argument("grid side must be at least 2");

  auto draw = [&](std::size_t n, std::uint64_t stream) {
    Dataset data = empty_like(spec, n, g * g, models::TaskKind::Classification);
    data.num_classes = spec.num_classes;
    data.grid = g;
    Rng rng(derive_seed(spec.seed, {stream}));
    std::uniform_int_distribution<std::size_t> cls(0, spec.num_classes - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double center = (static_cast<double>(g) - 1.0) / 2.0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t c = cls(rng);
      const double amp = 0.5 + 0.5 * unit(rng);
      const double phase = 2.0 * std::numbers::pi * unit(rng);
      double* px = data.features.data() + i * g * g;
      for (std::size_t r = 0; r < g; ++r)
        for (std::size_t q = 0; q < g; ++q) {
          const double rr = static_cast<double>(r), qq = static_cast<double>(q);
          double v = 0.0;
          switch (c) {
            case 0: v = std::sin(std::numbers::pi * rr + phase); break;
            case 1: v = std::sin(std::numbers::pi * qq + phase); break;
            case 2: v = ((r + q) % 2 == 0) ? 1.0 : -1.0; break;
            default: {
              const double dist2 = (rr - center) * (rr - center) + (qq - center) * (qq - center);
              v = 2.0 * std::exp(-dist2 / (0.15 * static_cast<double>(g * g))) - 1.0;
            }
          }
          px[r * g + q] = amp * v + spec.noise * gauss(rng);
        }
      data.labels[i] = static_cast<double>(c);
    }
    return data;
  };
  return {draw(spec.train_size, kTrainStream), draw(spec.test_size, kTestStream)};
}

namespace {

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    cell.erase(0, cell.find_first_not_of(" \t"));
    cell.erase(cell.find_last_not_of(" \t\r") + 1);
    cells.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

DatasetSplit load_csv_dataset(const std::filesystem::path& path, const std::string& label_column,
                              models::TaskKind task) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open CSV '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("CSV '" + path.string() + "' has no header row");
  const auto header = split_cells(line);
  const auto label_it = std::find(header.begin(), header.end(), label_column);
  if (label_it == header.end())
    throw std::runtime_error("CSV '" + path.string() + "' has no label column '" + label_column + "'");
  const std::size_t label_pos = static_cast<std::size_t>(label_it - header.begin());
  const std::size_t width = header.size();
  if (width < 2) throw std::runtime_error("CSV needs at least one feature column and a label");

  std::vector<double> features;
  std::vector<double> labels;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_cells(line);
    if (cells.size() != width)
      throw std::runtime_error("CSV line " + std::to_string(line_no) + " has " +
                               std::to_string(cells.size()) + " cells, expected " +
                               std::to_string(width));
    for (std::size_t c = 0; c < width; ++c) {
      double v = 0.0;
      const auto& s = cells[c];
      const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
      if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v))
        throw std::runtime_error("CSV line " + std::to_string(line_no) + ", column '" + header[c] +
                                 "': non-numeric cell '" + s + "'");
      if (c == label_pos) labels.push_back(v);
      else features.push_back(v);
    }
  }
  const std::size_t n = labels.size();
  if (n < 2) throw std::runtime_error("CSV '" + path.string() + "' needs at least 2 data rows");
  const std::size_t dim = width - 1;
  std::size_t classes = 0;
  if (task == models::TaskKind::Classification) {
    for (std::size_t i = 0; i < n; ++i) {
      if (labels[i] < 0.0 || labels[i] != std::floor(labels[i]))
        throw std::runtime_error("CSV label '" + label_column + "' must be a non-negative integer (data row " +
                                 std::to_string(i + 1) + ")");
      classes = std::max(classes, static_cast<std::size_t>(labels[i]) + 1);
    }
  }
  const std::size_t n_test = std::max<std::size_t>(1, n / 5);
  const std::size_t n_train = n - n_test;
  auto slice_rows = [&](std::size_t begin, std::size_t count) {
    Dataset d;
    d.features = ad::Tensor({count, dim}, std::vector<double>(features.begin() + begin * dim,
                                                              features.begin() + (begin + count) * dim));
    d.labels.assign(labels.begin() + begin, labels.begin() + begin + count);
    d.marked.assign(count, 0);
    d.task = task;
    d.num_classes = classes;
    return d;
  };
  return {slice_rows(0, n_train), slice_rows(n_train, n_test)};
}

void write_csv_dataset(const std::filesystem::path& path, const Dataset& data,
                       const std::string& label_column) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write CSV '" + path.string() + "'");
  const std::size_t dim = data.dim();
  for (std::size_t j = 0; j < dim; ++j) out << 'x' << j << ',';
  out << label_column << '\n';
  out.precision(17);
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t j = 0; j < dim; ++j) out << data.features.at(i, j) << ',';
    out << data.labels[i] << '\n';
  }
}

DatasetSplit make_dataset(const DatasetSpec& spec) {
  switch (spec.kind) {
    case DatasetKind::Blobs: return generate_blobs(spec);
    case DatasetKind::HardRegression: return generate_hard_regression(spec);
    case DatasetKind::GridImage: return generate_grid_images(spec);
    case DatasetKind::CsvTabular:
      return load_csv_dataset(spec.csv_path, spec.label_column,
                              spec.num_classes == 0 ? models::TaskKind::Regression
                                                    : models::TaskKind::Classification);
  }
  throw std::invalid_argument("unhandled dataset kind");
}

models::TargetConfig default_target_config(const Dataset& data) {
  models::TargetConfig cfg;
  cfg.input_dim = data.dim();
  cfg.num_classes = data.num_classes;
  if (data.task == models::TaskKind::Regression) {
    cfg.kind = models::TargetKind::MlpRegressor;
  } else if (data.grid > 0) {
    cfg.kind = models::TargetKind::TinyCnnClassifier;
    cfg.grid = data.grid;
    cfg.in_channels = 1;
  } else {
    cfg.kind = models::TargetKind::MlpClassifier;
  }
  return cfg;
}

}  // namespace listal::bench
