#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "elsa/matrix.hpp"
#include "elsa/prng.hpp"

namespace elsa {

// A named parameter with its gradient buffer. l2_coeff carries the
// per-tensor weight-decay coefficient; callers fold l2_coeff * value into
// grad before calling adam_step.
struct ParamTensor {
  std::string name;
  Matrix value;
  Matrix grad;
  double l2_coeff = 0.0;

  ParamTensor() = default;
  ParamTensor(std::string n, std::size_t rows, std::size_t cols,
              double l2 = 0.0)
      : name(std::move(n)),
        value(rows, cols),
        grad(rows, cols),
        l2_coeff(l2) {}

  void zero_grad() { grad.fill(0.0); }
  void add_l2_to_grad() {
    if (l2_coeff <= 0.0) return;
    for (std::size_t i = 0; i < value.size(); ++i)
      grad[i] += l2_coeff * value[i];
  }
};

struct AdamState {
  Matrix m;
  Matrix v;
  std::int64_t step_count = 0;
};

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// One Adam update with bias correction. Increments state.step_count and
// zeroes param.grad after applying it.
void adam_step(ParamTensor& param, AdamState& state, const AdamConfig& cfg);

// Per-parameter state bookkeeping for a training loop. States are created
// lazily, keyed by tensor address; the update order is the caller's span
// order, so runs are deterministic.
class Adam {
 public:
  explicit Adam(AdamConfig cfg) : cfg_(cfg) {}

  void step(std::span<ParamTensor* const> params);
  const AdamConfig& config() const { return cfg_; }
  AdamState& state_for(ParamTensor& p);

 private:
  AdamConfig cfg_;
  std::unordered_map<const ParamTensor*, AdamState> states_;
};

// Rescales all gradients so their global L2 norm is at most `threshold`.
// No-op when threshold <= 0. Returns the pre-clip norm.
double clip_global_norm(std::span<ParamTensor* const> params, double threshold);

// Uniform init in [-sqrt(6/(fan_in+fan_out)), +sqrt(6/(fan_in+fan_out))].
void glorot_init(Matrix& w, std::size_t fan_in, std::size_t fan_out, Prng& rng);

}  // namespace elsa
