// SPDX-License-Identifier: Apache-2.0
/**
 * @file   cli.hpp
 * @brief  `listal` command line: train-sorter, run, report, check.
 */
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace listal::bench {

/// Parses `args` (without the program name) and runs the subcommand.
/// Returns the process exit status.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace listal::bench
