// SPDX-License-Identifier: Apache-2.0
#include <listal/ranking/losses.hpp>

#include <stdexcept>
#include <string>

#include <listal/ranking/ranks.hpp>

namespace listal::ranking {

namespace {

std::size_t flat_length(Var predicted) {
  const auto& s = predicted.shape();
  if (s.size() != 2 || (s[0] != 1 && s[1] != 1))
    throw ad::ShapeError("predicted losses must be [d,1] or [1,d], got " + ad::shape_string(s));
  return s[0] * s[1];
}

}  // namespace

Var ExactRanker::rank(Tape& tape, Var values) {
  const ad::Tensor& v = values.value();
  if (v.rank() != 2 || v.dim(1) != length_)
    throw ad::ShapeError("exact ranker configured for length " + std::to_string(length_));
  ad::Tensor out(v.shape());
  for (std::size_t r = 0; r < v.dim(0); ++r) {
    const auto rk = true_ranks(v.values().subspan(r * length_, length_));
    for (std::size_t c = 0; c < length_; ++c) out.at(r, c) = rk.ranks[c];
  }
  return tape.constant(std::move(out));
}

Var listwise_ranking_loss(Tape& tape, Var predicted, std::span<const double> ground_truth,
                          models::Ranker& ranker) {
  const std::size_t d = flat_length(predicted);
  if (d != ground_truth.size() || d != ranker.length())
    throw std::invalid_argument("listwise loss: batch of " + std::to_string(d) + " predictions, " +
                                std::to_string(ground_truth.size()) +
                                " ground-truth losses, sorter length " +
                                std::to_string(ranker.length()));
  Var ranked = ranker.rank(tape, ad::reshape(predicted, {1, d}));
  const auto target = true_ranks(ground_truth);
  Var err = ad::squared_error(ranked, ad::Tensor({1, d}, target.ranks));
  return ad::scale(err, 1.0 / static_cast<double>(d));
}

Var pairwise_ranking_loss(Tape& tape, Var predicted, std::span<const double> ground_truth,
                          double margin) {
  const std::size_t d = flat_length(predicted);
  if (d != ground_truth.size())
    throw std::invalid_argument("pairwise loss: " + std::to_string(d) + " predictions vs " +
                                std::to_string(ground_truth.size()) + " ground-truth losses");
  if (d % 2 != 0)
    throw std::invalid_argument("pairwise loss requires an even batch size, got " +
                                std::to_string(d));
  if (!(margin > 0.0)) throw std::invalid_argument("pairwise loss margin must be positive");
  const std::size_t pairs = d / 2;
  ad::Tensor sign({pairs, 1});
  for (std::size_t p = 0; p < pairs; ++p) {
    const double diff = ground_truth[2 * p] - ground_truth[2 * p + 1];
    sign[p] = diff > 0.0 ? 1.0 : (diff < 0.0 ? -1.0 : 0.0);
  }
  Var paired = ad::reshape(predicted, {pairs, 2});
  Var diff = ad::sub(ad::slice(paired, 1, 0, 1), ad::slice(paired, 1, 1, 2));
  Var hinge = ad::add_scalar(ad::scale(ad::mul(diff, tape.constant(std::move(sign))), -1.0), margin);
  return ad::mean(ad::leaky_relu(hinge, 0.0));
}

}  // namespace listal::ranking
