#pragma once

#include <stdexcept>
#include <vector>

namespace coalbranch {

// Dense square matrix of doubles, row-major. Sized for the small (d <= ~10)
// systems this library works with.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(int n, double fill = 0.0)
      : n_(n), a_(static_cast<std::size_t>(n) * n, fill) {
    if (n < 0) throw std::invalid_argument("SquareMatrix: negative size");
  }

  int size() const { return n_; }
  double& operator()(int i, int j) { return a_[idx(i, j)]; }
  double operator()(int i, int j) const { return a_[idx(i, j)]; }

  const std::vector<double>& data() const { return a_; }

  bool operator==(const SquareMatrix&) const = default;

 private:
  std::size_t idx(int i, int j) const {
    if (i < 0 || i >= n_ || j < 0 || j >= n_)
      throw std::out_of_range("SquareMatrix: index out of range");
    return static_cast<std::size_t>(i) * n_ + j;
  }
  int n_ = 0;
  std::vector<double> a_;
};

std::vector<double> matvec(const SquareMatrix& m, const std::vector<double>& x);

// exp(t*m) via a scaling-and-squaring Pade evaluation.
SquareMatrix expm(const SquareMatrix& m, double t = 1.0);

}  // namespace coalbranch
