#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "handforge/hand.hpp"

namespace handforge {

/// A named joint configuration, driver values in degrees.
struct GesturePose {
  std::string name;
  std::map<ChainId, Eigen::VectorXd> drivers_deg;  // thumb: 3 values, fingers: 1
};

std::vector<std::string> gesture_names();

/// Shipped preset by name; throws InvalidInput for unknown names.
GesturePose gesture_pose(const std::string& name);

}  // namespace handforge
