#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>

#include "elsa/optim.hpp"

namespace elsa {

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::string worst_param;
  std::size_t worst_index = 0;
  std::size_t checked_coords = 0;
};

// Central-difference gradient verifier. The caller runs forward+backward
// once so every param's .grad holds the analytic gradient, then passes a
// pure forward-only loss closure here. Each checked coordinate is perturbed
// by +/-epsilon and the relative error
//   |analytic - numeric| / max(|analytic|, |numeric|, 1e-8)
// is accumulated. sample_per_tensor = 0 checks every coordinate; otherwise
// that many coordinates are sampled per tensor from the given seed.
GradCheckResult grad_check(const std::function<double()>& loss_fn,
                           std::span<ParamTensor* const> params,
                           double epsilon,
                           std::size_t sample_per_tensor = 0,
                           std::uint64_t seed = 1);

}  // namespace elsa
