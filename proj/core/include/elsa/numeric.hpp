#pragma once

#include <span>
#include <vector>

namespace elsa {

// Numerically stable sigmoid.
double sigmoid(double x);

// Stable softmax with max-subtraction. Throws ShapeError on empty input and
// ValueError on non-finite input.
std::vector<double> softmax(std::span<const double> logits);
void softmax_inplace(std::vector<double>& logits);

}  // namespace elsa
