#include "elsa/optim.hpp"

#include <cmath>

#include "elsa/error.hpp"

namespace elsa {

void adam_step(ParamTensor& param, AdamState& state, const AdamConfig& cfg) {
  require_same_shape(param.value, param.grad, "adam_step");
  if (state.m.empty()) {
    state.m = Matrix(param.value.rows(), param.value.cols());
    state.v = Matrix(param.value.rows(), param.value.cols());
  }
  require_same_shape(param.value, state.m, "adam_step");

  state.step_count += 1;
  const double b1 = cfg.beta1, b2 = cfg.beta2;
  const double bias1 = 1.0 - std::pow(b1, static_cast<double>(state.step_count));
  const double bias2 = 1.0 - std::pow(b2, static_cast<double>(state.step_count));

  for (std::size_t i = 0; i < param.value.size(); ++i) {
    const double g = param.grad[i];
    state.m[i] = b1 * state.m[i] + (1.0 - b1) * g;
    state.v[i] = b2 * state.v[i] + (1.0 - b2) * g * g;
    const double mhat = state.m[i] / bias1;
    const double vhat = state.v[i] / bias2;
    param.value[i] -= cfg.lr * mhat / (std::sqrt(vhat) + cfg.eps);
  }
  param.zero_grad();
}

void Adam::step(std::span<ParamTensor* const> params) {
  for (ParamTensor* p : params) adam_step(*p, state_for(*p), cfg_);
}

AdamState& Adam::state_for(ParamTensor& p) { return states_[&p]; }

double clip_global_norm(std::span<ParamTensor* const> params,
                        double threshold) {
  double sq = 0.0;
  for (const ParamTensor* p : params)
    for (std::size_t i = 0; i < p->grad.size(); ++i)
      sq += p->grad[i] * p->grad[i];
  const double norm = std::sqrt(sq);
  if (threshold > 0.0 && norm > threshold) {
    const double scale = threshold / norm;
    for (ParamTensor* p : params)
      for (std::size_t i = 0; i < p->grad.size(); ++i) p->grad[i] *= scale;
  }
  return norm;
}

void glorot_init(Matrix& w, std::size_t fan_in, std::size_t fan_out,
                 Prng& rng) {
  const double limit =
      std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  for (std::size_t i = 0; i < w.size(); ++i)
    w[i] = rng.uniform(-limit, limit);
}

}  // namespace elsa
