// SPDX-License-Identifier: Apache-2.0
/**
 * @file   param_io.hpp
 * @brief  Flat binary dump of named parameters.
 *
 * Layout (all integers little-endian, values IEEE-754 binary64 LE):
 *
 *   char[8]  magic "LSTLPAR1"
 *   u32      parameter count
 *   repeated:
 *     u32    name length, then name bytes (UTF-8, no terminator)
 *     u32    rank, then rank x u64 extents
 *     f64    values in row-major order
 */
#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include <listal/autodiff/tape.hpp>

namespace listal::ad {

void save_parameters(const std::filesystem::path& path, std::span<const Parameter* const> params);

std::vector<Parameter> load_parameters(const std::filesystem::path& path);

/// Copy loaded values into `params` by name; names and shapes must match
/// exactly.
void assign_parameters(std::span<Parameter* const> params, std::span<const Parameter> loaded);

}  // namespace listal::ad
