#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "elsa/error.hpp"

namespace elsa {

// Row-major dense matrix of doubles. All training and checking runs at
// 64-bit precision; checkpoints can down-convert to f32 on request.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  std::span<double> row(std::size_t r) {
    return std::span<double>(data_.data() + r * cols_, cols_);
  }
  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(data_.data() + r * cols_, cols_);
  }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::vector<double>& raw() { return data_; }
  const std::vector<double>& raw() const { return data_; }

  bool same_shape(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_;
  }

  void fill(double v) { data_.assign(data_.size(), v); }

  bool all_finite() const {
    for (double v : data_)
      if (!std::isfinite(v)) return false;
    return true;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

inline void require_same_shape(const Matrix& a, const Matrix& b,
                               const char* what) {
  if (!a.same_shape(b))
    throw ShapeError(std::string(what) + ": shape mismatch (" +
                     std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                     " vs " + std::to_string(b.rows()) + "x" +
                     std::to_string(b.cols()) + ")");
}

// ---- vector kernels used by every layer ----

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// out = W x, W is (m x n), x has length n.
inline void matvec(const Matrix& w, std::span<const double> x,
                   std::span<double> out) {
  for (std::size_t r = 0; r < w.rows(); ++r) out[r] = dot(w.row(r), x);
}

// out += W x
inline void matvec_add(const Matrix& w, std::span<const double> x,
                       std::span<double> out) {
  for (std::size_t r = 0; r < w.rows(); ++r) out[r] += dot(w.row(r), x);
}

// out += W^T y, y has length rows(W), out has length cols(W).
inline void matvec_t_add(const Matrix& w, std::span<const double> y,
                         std::span<double> out) {
  for (std::size_t r = 0; r < w.rows(); ++r) {
    const double yr = y[r];
    if (yr == 0.0) continue;
    std::span<const double> wr = w.row(r);
    for (std::size_t c = 0; c < w.cols(); ++c) out[c] += yr * wr[c];
  }
}

// G += a b^T, a has length rows(G), b has length cols(G).
inline void add_outer(Matrix& g, std::span<const double> a,
                      std::span<const double> b) {
  for (std::size_t r = 0; r < g.rows(); ++r) {
    const double ar = a[r];
    if (ar == 0.0) continue;
    std::span<double> gr = g.row(r);
    for (std::size_t c = 0; c < g.cols(); ++c) gr[c] += ar * b[c];
  }
}

// y += alpha * x
inline void axpy(double alpha, std::span<const double> x,
                 std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline double squared_norm(std::span<const double> x) { return dot(x, x); }

}  // namespace elsa
