// SPDX-License-Identifier: Apache-2.0
#include <listal/models/layers.hpp>

#include <cmath>

namespace listal::models {

ad::Tensor uniform_tensor(ad::Shape shape, double bound, Rng& rng) {
  ad::Tensor t(std::move(shape));
  std::uniform_real_distribution<double> dist(-bound, bound);
  for (double& v : t.values()) v = dist(rng);
  return t;
}

Linear::Linear(const std::string& name, std::size_t in, std::size_t out, Rng& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(in));
  weight = Parameter(name + ".weight", uniform_tensor({in, out}, bound, rng));
  bias = Parameter(name + ".bias", uniform_tensor({1, out}, bound, rng));
}

Var Linear::operator()(Tape& tape, Var x) {
  return ad::add(ad::matmul(x, tape.parameter(weight)), tape.parameter(bias));
}

void Linear::collect(std::vector<Parameter*>& out) {
  out.push_back(&weight);
  out.push_back(&bias);
}

Conv2d::Conv2d(const std::string& name, std::size_t in_channels, std::size_t out_channels,
               std::size_t kernel, Rng& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(in_channels * kernel * kernel));
  weight = Parameter(name + ".weight",
                     uniform_tensor({out_channels, in_channels, kernel, kernel}, bound, rng));
  bias = Parameter(name + ".bias", uniform_tensor({out_channels}, bound, rng));
}

Var Conv2d::operator()(Tape& tape, Var x) {
  return ad::conv2d(x, tape.parameter(weight), tape.parameter(bias));
}

void Conv2d::collect(std::vector<Parameter*>& out) {
  out.push_back(&weight);
  out.push_back(&bias);
}

GruCell::GruCell(const std::string& name, std::size_t input, std::size_t hidden, Rng& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(hidden));
  w_input = Parameter(name + ".w_input", uniform_tensor({input, 3 * hidden}, bound, rng));
  w_hidden = Parameter(name + ".w_hidden", uniform_tensor({hidden, 3 * hidden}, bound, rng));
  b_input = Parameter(name + ".b_input", uniform_tensor({1, 3 * hidden}, bound, rng));
  b_hidden = Parameter(name + ".b_hidden", uniform_tensor({1, 3 * hidden}, bound, rng));
}

GruCell::Bound GruCell::bind(Tape& tape, bool frozen) {
  auto use = [&](Parameter& p) { return frozen ? tape.constant(p.value) : tape.parameter(p); };
  return {use(w_input), use(w_hidden), use(b_input), use(b_hidden)};
}

Var GruCell::step(const Bound& cell, Var x, Var h) const {
  const std::size_t H = hidden_size();
  Var gx = ad::add(ad::matmul(x, cell.w_input), cell.b_input);
  Var gh = ad::add(ad::matmul(h, cell.w_hidden), cell.b_hidden);
  Var r = ad::sigmoid(ad::add(ad::slice(gx, 1, 0, H), ad::slice(gh, 1, 0, H)));
  Var z = ad::sigmoid(ad::add(ad::slice(gx, 1, H, 2 * H), ad::slice(gh, 1, H, 2 * H)));
  Var n = ad::tanh(ad::add(ad::slice(gx, 1, 2 * H, 3 * H), ad::mul(r, ad::slice(gh, 1, 2 * H, 3 * H))));
  return ad::add(n, ad::mul(z, ad::sub(h, n)));
}

void GruCell::collect(std::vector<Parameter*>& out) {
  out.push_back(&w_input);
  out.push_back(&w_hidden);
  out.push_back(&b_input);
  out.push_back(&b_hidden);
}

}  // namespace listal::models
