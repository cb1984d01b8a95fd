#pragma once

#include "vis/exact.hpp"

#include <Eigen/Dense>

#include <random>

namespace testing_support {

inline vis::QMatrix random_rational(int rows, int cols, std::mt19937_64& rng, int range = 4, int den = 3) {
  std::uniform_int_distribution<int> num(-range, range), d(1, den);
  vis::QMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      m(i, j) = vis::Rational(num(rng), d(rng));
      m(i, j).canonicalize();
    }
  return m;
}

inline Eigen::MatrixXd to_double(const vis::QMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).get_d();
  return out;
}

}  // namespace testing_support
