#pragma once

#include <Eigen/Dense>

#include "core/matrix.hpp"

namespace latq {

using TransformMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

struct LllResult {
  Eigen::MatrixXd basis;      // = transform * input
  TransformMatrix transform;  // unimodular
};

// Textbook LLL with delta = 0.75 on row bases; the returned transform maps
// coordinates of the reduced basis back to the input basis.
LllResult lll_reduce_with_transform(const Eigen::MatrixXd& basis, double delta = 0.75);

GeneratorMatrix lll_reduce(const GeneratorMatrix& b, double delta = 0.75);

}  // namespace latq
