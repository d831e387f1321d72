#include "handforge/numeric.hpp"

namespace handforge {

Eigen::MatrixXd pseudoinverse(const Eigen::MatrixXd& m, double rel_threshold) {
  if (m.size() == 0) return m.transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cutoff = sv.size() > 0 ? rel_threshold * sv[0] : 0.0;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > cutoff && sv[i] > 0.0) inv[i] = 1.0 / sv[i];
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

}  // namespace handforge
