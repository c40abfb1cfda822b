// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <listal/autodiff/gradcheck.hpp>
#include <listal/autodiff/ops.hpp>
#include <listal/autodiff/optim.hpp>
#include <listal/autodiff/param_io.hpp>
#include <listal/autodiff/tape.hpp>
#include <listal/autodiff/tensor.hpp>
