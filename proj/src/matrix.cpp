#include "coalbranch/matrix.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <Eigen/Core>

namespace coalbranch {

std::vector<double> matvec(const SquareMatrix& m, const std::vector<double>& x) {
  const int n = m.size();
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument("matvec: dimension mismatch");
  std::vector<double> out(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i] += m(i, j) * x[j];
  return out;
}

SquareMatrix expm(const SquareMatrix& m, double t) {
  const int n = m.size();
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = t * m(i, j);
  const Eigen::MatrixXd e = a.exp();
  SquareMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = e(i, j);
  return out;
}

}  // namespace coalbranch
