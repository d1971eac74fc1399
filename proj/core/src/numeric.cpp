#include "elsa/numeric.hpp"

#include <algorithm>
#include <cmath>

#include "elsa/error.hpp"

namespace elsa {

double sigmoid(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

void softmax_inplace(std::vector<double>& logits) {
  if (logits.empty()) throw ShapeError("softmax: empty input");
  double mx = logits[0];
  for (double v : logits) {
    if (!std::isfinite(v)) throw ValueError("softmax: non-finite input");
    mx = std::max(mx, v);
  }
  double sum = 0.0;
  for (double& v : logits) {
    v = std::exp(v - mx);
    sum += v;
  }
  for (double& v : logits) v /= sum;
}

std::vector<double> softmax(std::span<const double> logits) {
  std::vector<double> out(logits.begin(), logits.end());
  softmax_inplace(out);
  return out;
}

}  // namespace elsa
