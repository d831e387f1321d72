#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "handforge/transform.hpp"

namespace handforge {

/// Named end-effector locations on a chain.
enum class Site { Mcp, Pip, Dip, Tip, Pulp };

const char* to_string(Site s);
Site site_from_string(const std::string& name);

/// One revolute hinge. The axis lives in the frame of the preceding link
/// (the chain base for joint 0). The joint angle is coupling_ratio times
/// the independent variable selected by driver_index, clamped to the range.
struct JointSpec {
  Eigen::Vector3d axis = Eigen::Vector3d::UnitY();
  double min_rad = 0.0;
  double max_rad = deg2rad(90.0);
  double coupling_ratio = 1.0;
  int driver_index = 0;
};

/// A link as a capsule: length along the local x axis, width = diameter.
struct LinkSpec {
  double length_mm = 0.0;
  double width_mm = 0.0;

  double radius_mm() const { return 0.5 * width_mm; }
};

/// A site is an offset transform attached to one link frame. Link frame k
/// has its origin at joint k's center, x along link k.
struct SiteSpec {
  int link_index = 0;
  Transform offset;
};

/// Serial kinematic chain rooted in the hand frame. One link per joint;
/// the number of independent variables is the number of distinct driver
/// indices across the joints.
struct SerialChain {
  Transform base;
  std::vector<JointSpec> joints;
  std::vector<LinkSpec> links;
  std::map<Site, SiteSpec> sites;

  int joint_count() const { return static_cast<int>(joints.size()); }
  int dof() const;
  bool has_site(Site s) const { return sites.count(s) != 0; }

  /// Total link length (mm); zero-length connector links contribute nothing.
  double total_length_mm() const;

  /// Throws InvalidInput on malformed axes, ranges, link dims, driver
  /// indices, or site link references.
  void validate() const;
};

/// Independent joint variables, radians. Degrees everywhere outside the
/// library boundary.
using JointVector = Eigen::VectorXd;

/// Per-joint angles from the independent variables: coupling ratio times
/// the driver value, clamped into the joint range.
std::vector<double> expand_coupling(const SerialChain& chain, const JointVector& q);

/// Pose of a named site in the hand frame.
Transform forward_transform(const SerialChain& chain, const JointVector& q, Site site);

/// 3 x dof position Jacobian of a site (mm/rad). Column v sums, over the
/// joints driven by variable v, ratio_k * (axis_k x (p_site - p_joint_k)).
Eigen::Matrix3Xd linear_jacobian(const SerialChain& chain, const JointVector& q, Site site);

/// Box bounds on the independent variables implied by the joint ranges and
/// coupling ratios.
struct DriverBounds {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
};
DriverBounds driver_bounds(const SerialChain& chain);

JointVector clamp_to_bounds(const JointVector& q, const DriverBounds& bounds);

/// Fully evaluated chain state, shared by collision checks and the solvers.
struct ChainPose {
  std::vector<Eigen::Vector3d> joint_positions;   // world, one per joint
  std::vector<Eigen::Vector3d> joint_axes_world;  // world, unit
  std::vector<Transform> link_frames;             // origin at joint k, x along link k
};
ChainPose evaluate_chain(const SerialChain& chain, const JointVector& q);

/// World-frame pose of one site given an evaluated chain.
Transform site_pose(const SerialChain& chain, const ChainPose& pose, Site site);

}  // namespace handforge
