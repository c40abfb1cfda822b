// SPDX-License-Identifier: Apache-2.0
#include <listal/autodiff/param_io.hpp>

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <stdexcept>

namespace listal::ad {

namespace {

constexpr char kMagic[8] = {'L', 'S', 'T', 'L', 'P', 'A', 'R', '1'};

template <class U>
void put(std::ostream& out, U value) {
  unsigned char bytes[sizeof(U)];
  for (std::size_t i = 0; i < sizeof(U); ++i) bytes[i] = static_cast<unsigned char>(value >> (8 * i));
  out.write(reinterpret_cast<const char*>(bytes), sizeof(U));
}

template <class U>
U get(std::istream& in) {
  unsigned char bytes[sizeof(U)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(U)))
    throw std::runtime_error("parameter file truncated");
  U value = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) value |= static_cast<U>(bytes[i]) << (8 * i);
  return value;
}

}  // namespace

void save_parameters(const std::filesystem::path& path, std::span<const Parameter* const> params) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out.write(kMagic, sizeof(kMagic));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(params.size()));
  for (const Parameter* p : params) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(p->name.size()));
    out.write(p->name.data(), static_cast<std::streamsize>(p->name.size()));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(p->value.rank()));
    for (auto extent : p->value.shape()) put<std::uint64_t>(out, extent);
    for (double v : p->value.values()) put<std::uint64_t>(out, std::bit_cast<std::uint64_t>(v));
  }
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::vector<Parameter> load_parameters(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open parameter file '" + path.string() + "'");
  char magic[sizeof(kMagic)];
  if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error("'" + path.string() + "' is not a parameter dump");
  const auto count = get<std::uint32_t>(in);
  std::vector<Parameter> params;
  params.reserve(count);
  for (std::uint32_t k = 0; k < count; ++k) {
    std::string name(get<std::uint32_t>(in), '\0');
    if (!in.read(name.data(), static_cast<std::streamsize>(name.size())))
      throw std::runtime_error("parameter file truncated");
    Shape shape(get<std::uint32_t>(in));
    for (auto& extent : shape) extent = static_cast<std::size_t>(get<std::uint64_t>(in));
    Tensor value(shape);
    for (double& v : value.values()) v = std::bit_cast<double>(get<std::uint64_t>(in));
    params.emplace_back(std::move(name), std::move(value));
  }
  return params;
}

void assign_parameters(std::span<Parameter* const> params, std::span<const Parameter> loaded) {
  std::map<std::string, const Parameter*> by_name;
  for (const Parameter& p : loaded) by_name[p.name] = &p;
  if (by_name.size() != params.size())
    throw std::runtime_error("parameter count mismatch: model has " +
                             std::to_string(params.size()) + ", file has " +
                             std::to_string(by_name.size()));
  for (Parameter* p : params) {
    auto it = by_name.find(p->name);
    if (it == by_name.end()) throw std::runtime_error("parameter '" + p->name + "' missing from file");
    if (it->second->value.shape() != p->value.shape())
      throw ShapeError("parameter '" + p->name + "' has shape " +
                       shape_string(it->second->value.shape()) + " in file, expected " +
                       shape_string(p->value.shape()));
    p->value = it->second->value;
  }
}

}  // namespace listal::ad
