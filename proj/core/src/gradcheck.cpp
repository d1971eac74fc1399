#include "elsa/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "elsa/error.hpp"
#include "elsa/prng.hpp"

namespace elsa {

GradCheckResult grad_check(const std::function<double()>& loss_fn,
                           std::span<ParamTensor* const> params,
                           double epsilon, std::size_t sample_per_tensor,
                           std::uint64_t seed) {
  if (!(epsilon > 0.0)) throw ValueError("grad_check: epsilon must be > 0");
  Prng rng(seed);
  GradCheckResult result;

  for (ParamTensor* p : params) {
    const std::size_t n = p->value.size();
    if (n == 0) continue;

    std::vector<std::size_t> coords;
    if (sample_per_tensor == 0 || sample_per_tensor >= n) {
      coords.resize(n);
      for (std::size_t i = 0; i < n; ++i) coords[i] = i;
    } else {
      coords.reserve(sample_per_tensor);
      for (std::size_t i = 0; i < sample_per_tensor; ++i)
        coords.push_back(static_cast<std::size_t>(rng.below(n)));
    }

    for (std::size_t idx : coords) {
      const double saved = p->value[idx];
      p->value[idx] = saved + epsilon;
      const double lp = loss_fn();
      p->value[idx] = saved - epsilon;
      const double lm = loss_fn();
      p->value[idx] = saved;
      if (!std::isfinite(lp) || !std::isfinite(lm))
        throw ValueError("grad_check: non-finite loss at " + p->name);

      const double numeric = (lp - lm) / (2.0 * epsilon);
      const double analytic = p->grad[idx];
      const double denom =
          std::max({std::fabs(analytic), std::fabs(numeric), 1e-8});
      const double rel = std::fabs(analytic - numeric) / denom;
      ++result.checked_coords;
      if (rel > result.max_rel_error) {
        result.max_rel_error = rel;
        result.worst_param = p->name;
        result.worst_index = idx;
      }
    }
  }
  return result;
}

}  // namespace elsa
