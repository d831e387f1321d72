#include "handforge/chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "handforge/errors.hpp"

namespace handforge {

const char* to_string(Site s) {
  switch (s) {
    case Site::Mcp: return "MCP";
    case Site::Pip: return "PIP";
    case Site::Dip: return "DIP";
    case Site::Tip: return "TIP";
    case Site::Pulp: return "PULP";
  }
  return "?";
}

Site site_from_string(const std::string& name) {
  if (name == "MCP") return Site::Mcp;
  if (name == "PIP") return Site::Pip;
  if (name == "DIP") return Site::Dip;
  if (name == "TIP") return Site::Tip;
  if (name == "PULP") return Site::Pulp;
  throw InvalidInput("unknown site name: " + name);
}

int SerialChain::dof() const {
  std::set<int> drivers;
  for (const auto& j : joints) drivers.insert(j.driver_index);
  return static_cast<int>(drivers.size());
}

double SerialChain::total_length_mm() const {
  double sum = 0.0;
  for (const auto& l : links) sum += l.length_mm;
  return sum;
}

void SerialChain::validate() const {
  if (joints.size() != links.size())
    throw InvalidInput("chain: joint count != link count");
  if (joints.empty()) throw InvalidInput("chain: empty");
  if (!base.is_orthonormal())
    throw InvalidInput("chain: base rotation not orthonormal");
  for (const auto& j : joints) {
    if (std::abs(j.axis.norm() - 1.0) > 1e-12)
      throw InvalidInput("joint axis not unit length");
    if (j.min_rad > j.max_rad) throw InvalidInput("joint range min > max");
  }
  for (const auto& l : links) {
    if (l.length_mm < 0.0 || l.width_mm <= 0.0)
      throw InvalidInput("link with negative length or non-positive width");
  }
  const int n = dof();
  for (const auto& j : joints) {
    if (j.driver_index < 0 || j.driver_index >= n)
      throw InvalidInput("driver index out of range");
  }
  for (const auto& [site, spec] : sites) {
    if (spec.link_index < 0 || spec.link_index >= joint_count()) {
      std::ostringstream os;
      os << "site " << to_string(site) << " references link " << spec.link_index;
      throw InvalidInput(os.str());
    }
  }
}

std::vector<double> expand_coupling(const SerialChain& chain, const JointVector& q) {
  if (q.size() != chain.dof())
    throw InvalidInput("joint vector size does not match chain dof");
  std::vector<double> angles(chain.joints.size());
  for (std::size_t k = 0; k < chain.joints.size(); ++k) {
    const JointSpec& j = chain.joints[k];
    const double raw = j.coupling_ratio * q[j.driver_index];
    angles[k] = std::clamp(raw, j.min_rad, j.max_rad);
  }
  return angles;
}

ChainPose evaluate_chain(const SerialChain& chain, const JointVector& q) {
  const std::vector<double> angles = expand_coupling(chain, q);
  ChainPose pose;
  const std::size_t n = chain.joints.size();
  pose.joint_positions.reserve(n);
  pose.joint_axes_world.reserve(n);
  pose.link_frames.reserve(n);

  Transform t = chain.base;
  for (std::size_t k = 0; k < n; ++k) {
    pose.joint_positions.push_back(t.translation);
    pose.joint_axes_world.push_back(t.rotation * chain.joints[k].axis);
    t = t * Transform::from_axis_angle(chain.joints[k].axis, angles[k]);
    pose.link_frames.push_back(t);
    t = t * Transform::from_translation(
                Eigen::Vector3d(chain.links[k].length_mm, 0.0, 0.0));
  }
  return pose;
}

Transform site_pose(const SerialChain& chain, const ChainPose& pose, Site site) {
  auto it = chain.sites.find(site);
  if (it == chain.sites.end())
    throw InvalidInput(std::string("chain has no site ") + to_string(site));
  return pose.link_frames[it->second.link_index] * it->second.offset;
}

Transform forward_transform(const SerialChain& chain, const JointVector& q, Site site) {
  return site_pose(chain, evaluate_chain(chain, q), site);
}

Eigen::Matrix3Xd linear_jacobian(const SerialChain& chain, const JointVector& q, Site site) {
  const ChainPose pose = evaluate_chain(chain, q);
  const Eigen::Vector3d p_site = site_pose(chain, pose, site).translation;
  const auto it = chain.sites.find(site);
  const int site_link = it->second.link_index;

  Eigen::Matrix3Xd jac = Eigen::Matrix3Xd::Zero(3, chain.dof());
  for (int k = 0; k <= site_link; ++k) {
    const JointSpec& j = chain.joints[k];
    const Eigen::Vector3d lever = p_site - pose.joint_positions[k];
    jac.col(j.driver_index) +=
        j.coupling_ratio * pose.joint_axes_world[k].cross(lever);
  }
  return jac;
}

DriverBounds driver_bounds(const SerialChain& chain) {
  const int n = chain.dof();
  DriverBounds b;
  b.lower = Eigen::VectorXd::Constant(n, -std::numeric_limits<double>::infinity());
  b.upper = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::infinity());
  for (const auto& j : chain.joints) {
    if (j.coupling_ratio == 0.0) continue;
    double lo = j.min_rad / j.coupling_ratio;
    double hi = j.max_rad / j.coupling_ratio;
    if (lo > hi) std::swap(lo, hi);
    b.lower[j.driver_index] = std::max(b.lower[j.driver_index], lo);
    b.upper[j.driver_index] = std::min(b.upper[j.driver_index], hi);
  }
  for (int v = 0; v < n; ++v) {
    if (!std::isfinite(b.lower[v])) b.lower[v] = 0.0;
    if (!std::isfinite(b.upper[v])) b.upper[v] = deg2rad(90.0);
  }
  return b;
}

JointVector clamp_to_bounds(const JointVector& q, const DriverBounds& bounds) {
  JointVector out = q;
  for (int i = 0; i < out.size(); ++i)
    out[i] = std::clamp(out[i], bounds.lower[i], bounds.upper[i]);
  return out;
}

}  // namespace handforge
