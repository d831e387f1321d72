#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "handforge/chain.hpp"
#include "handforge/hand.hpp"

namespace handforge {

struct IkSettings {
  double dx_mm = 1.0;       // step length cap for the position error
  double tol_mm = 0.5;      // convergence tolerance
  int max_iters = 500;
  double epsilon_mm = 0.5;  // sphere intersection acceptance
  int restarts = 8;         // total initial points (first one is the given q0)
  std::uint64_t seed = 0;

  void validate() const;
};

enum class IkStatus { Converged, NotConverged, CollisionBlocked };

const char* to_string(IkStatus s);

struct IkResult {
  JointVector q_thumb;
  JointVector q_finger;
  double residual_mm = 0.0;
  int iterations = 0;
  IkStatus status = IkStatus::NotConverged;
};

/// Collision spheres of one chain at one configuration: one per joint
/// center plus one at the distal axis endpoint, radii equal to the local
/// link half-widths. Sphere surfaces coincide with the capsule surfaces.
struct SphereSet {
  std::vector<Eigen::Vector3d> centers;
  std::vector<double> radii;
  std::vector<int> moved_by;  // sphere i moves with joints [0, moved_by[i])
};

SphereSet chain_spheres(const SerialChain& chain, const ChainPose& pose);

/// Index into a chain's SphereSet of the sphere sitting at a named site's
/// joint (MCP/PIP/DIP) or at the distal end (TIP/PULP).
int sphere_index_for_site(const SerialChain& chain, Site site);

/// True iff every thumb-sphere/finger-sphere pair keeps
/// d >= r_t + r_f - epsilon (inclusive). The pair formed by the thumb's
/// distal sphere and the sphere at exempt_finger_site is skipped so pulp
/// contact at the target is permitted.
bool collision_free(const HandModel& hand, ChainId finger,
                    const JointVector& q_thumb, const JointVector& q_finger,
                    double epsilon_mm,
                    std::optional<Site> exempt_finger_site = std::nullopt);

/// Iterative dual-chain convergence: drive the thumb pulp and the finger
/// site to a common point with pseudoinverse steps split between the two
/// chains, clamping into the joint box each iteration. No collision
/// handling.
IkResult solve_convergence(const HandModel& hand, ChainId finger, Site site,
                           const IkSettings& settings,
                           const JointVector& q0_thumb,
                           const JointVector& q0_finger);

/// Same objective under the sphere clearance constraints, multi-start.
/// Returns the feasible converged attempt with the smallest residual (ties
/// broken by start index). When no start converges feasibly the status
/// distinguishes CollisionBlocked (position reachable ignoring spheres)
/// from NotConverged.
IkResult solve_constrained(const HandModel& hand, ChainId finger, Site site,
                           const IkSettings& settings,
                           const JointVector& q0_thumb,
                           const JointVector& q0_finger);

/// Midpoint of a chain's driver box; the default start configuration.
JointVector mid_configuration(const SerialChain& chain);

}  // namespace handforge
