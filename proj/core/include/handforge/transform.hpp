#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

namespace handforge {

inline constexpr double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline constexpr double rad2deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Rigid transform: orthonormal rotation plus translation (mm).
struct Transform {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  static Transform identity() { return {}; }

  static Transform from_translation(const Eigen::Vector3d& t) {
    return {Eigen::Matrix3d::Identity(), t};
  }

  static Transform from_axis_angle(const Eigen::Vector3d& axis, double angle_rad) {
    return {Eigen::AngleAxisd(angle_rad, axis).toRotationMatrix(), Eigen::Vector3d::Zero()};
  }

  static Transform rotation_z(double angle_rad) {
    return from_axis_angle(Eigen::Vector3d::UnitZ(), angle_rad);
  }

  Transform operator*(const Transform& rhs) const {
    return {rotation * rhs.rotation, rotation * rhs.translation + translation};
  }

  /// Apply to a point.
  Eigen::Vector3d operator*(const Eigen::Vector3d& p) const {
    return rotation * p + translation;
  }

  Transform inverse() const {
    const Eigen::Matrix3d rt = rotation.transpose();
    return {rt, -(rt * translation)};
  }

  bool is_orthonormal(double tol = 1e-9) const {
    const Eigen::Matrix3d gram_err =
        rotation.transpose() * rotation - Eigen::Matrix3d::Identity();
    return gram_err.cwiseAbs().maxCoeff() <= tol &&
           std::abs(rotation.determinant() - 1.0) <= tol;
  }
};

}  // namespace handforge
