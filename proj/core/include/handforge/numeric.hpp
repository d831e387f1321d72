#pragma once

#include <Eigen/Dense>

namespace handforge {

/// Moore-Penrose pseudoinverse via SVD. Singular values below
/// rel_threshold times the largest one are treated as zero, so
/// rank-deficient inputs stay bounded.
Eigen::MatrixXd pseudoinverse(const Eigen::MatrixXd& m, double rel_threshold = 1e-8);

}  // namespace handforge
