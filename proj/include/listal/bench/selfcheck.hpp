// SPDX-License-Identifier: Apache-2.0
/**
 * @file   selfcheck.hpp
 * @brief  Quick gradient and oracle checks behind the `check` subcommand.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace listal::bench {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Finite-difference checks of every primitive, the loss-prediction head
/// and the listwise loss; Spearman, pairwise-hinge and k-center oracles.
std::vector<CheckResult> run_self_checks(std::uint64_t seed = 7);

}  // namespace listal::bench
