#include "handforge/gestures.hpp"

#include "handforge/errors.hpp"

namespace handforge {

namespace {

GesturePose make_pose(const std::string& name, std::array<double, 3> thumb,
                      double index, double middle, double ring, double little) {
  GesturePose pose;
  pose.name = name;
  pose.drivers_deg[ChainId::Thumb] =
      (Eigen::VectorXd(3) << thumb[0], thumb[1], thumb[2]).finished();
  pose.drivers_deg[ChainId::Index] = Eigen::VectorXd::Constant(1, index);
  pose.drivers_deg[ChainId::Middle] = Eigen::VectorXd::Constant(1, middle);
  pose.drivers_deg[ChainId::Ring] = Eigen::VectorXd::Constant(1, ring);
  pose.drivers_deg[ChainId::Little] = Eigen::VectorXd::Constant(1, little);
  return pose;
}

}  // namespace

std::vector<std::string> gesture_names() {
  return {"open-hand", "fist",    "pointing", "thumb-up", "ok",
          "count-1",   "count-2", "count-3",  "count-4",  "count-5"};
}

GesturePose gesture_pose(const std::string& name) {
  // Thumb drivers: roll, base flexion, coupled MCP/IP flexion.
  if (name == "open-hand") return make_pose(name, {0, 0, 0}, 0, 0, 0, 0);
  if (name == "fist") return make_pose(name, {45, 60, 90}, 90, 90, 90, 90);
  if (name == "pointing") return make_pose(name, {45, 45, 90}, 0, 90, 90, 90);
  if (name == "thumb-up") return make_pose(name, {0, 0, 0}, 90, 90, 90, 90);
  if (name == "ok") return make_pose(name, {60, 30, 60}, 60, 0, 0, 0);
  // European counting: thumb first, then one finger per number.
  if (name == "count-1") return make_pose(name, {0, 0, 0}, 90, 90, 90, 90);
  if (name == "count-2") return make_pose(name, {0, 0, 0}, 0, 90, 90, 90);
  if (name == "count-3") return make_pose(name, {0, 0, 0}, 0, 0, 90, 90);
  if (name == "count-4") return make_pose(name, {0, 0, 0}, 0, 0, 0, 90);
  if (name == "count-5") return make_pose(name, {0, 0, 0}, 0, 0, 0, 0);
  throw InvalidInput("unknown gesture: " + name);
}

}  // namespace handforge
