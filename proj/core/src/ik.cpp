#include "handforge/ik.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "handforge/errors.hpp"
#include "handforge/numeric.hpp"

namespace handforge {

void IkSettings::validate() const {
  if (dx_mm <= 0.0) throw InvalidInput("dx must be positive");
  if (tol_mm <= 0.0) throw InvalidInput("tol must be positive");
  if (epsilon_mm < 0.0) throw InvalidInput("epsilon must be non-negative");
  if (max_iters < 1) throw InvalidInput("max_iters must be at least 1");
  if (restarts < 1) throw InvalidInput("restarts must be at least 1");
}

const char* to_string(IkStatus s) {
  switch (s) {
    case IkStatus::Converged: return "converged";
    case IkStatus::NotConverged: return "not_converged";
    case IkStatus::CollisionBlocked: return "collision_blocked";
  }
  return "?";
}

SphereSet chain_spheres(const SerialChain& chain, const ChainPose& pose) {
  SphereSet set;
  const int n = chain.joint_count();
  set.centers.reserve(static_cast<std::size_t>(n) + 1);
  set.radii.reserve(static_cast<std::size_t>(n) + 1);
  set.moved_by.reserve(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k < n; ++k) {
    set.centers.push_back(pose.joint_positions[static_cast<std::size_t>(k)]);
    set.radii.push_back(chain.links[static_cast<std::size_t>(k)].radius_mm());
    set.moved_by.push_back(k);
  }
  const auto& last_frame = pose.link_frames.back();
  set.centers.push_back(
      last_frame * Eigen::Vector3d(chain.links.back().length_mm, 0.0, 0.0));
  set.radii.push_back(chain.links.back().radius_mm());
  set.moved_by.push_back(n);
  return set;
}

int sphere_index_for_site(const SerialChain& chain, Site site) {
  switch (site) {
    case Site::Mcp:
    case Site::Pip:
    case Site::Dip: {
      auto it = chain.sites.find(site);
      if (it == chain.sites.end())
        throw InvalidInput(std::string("chain has no site ") + to_string(site));
      return it->second.link_index;
    }
    case Site::Tip:
    case Site::Pulp:
      return chain.joint_count();  // distal end sphere
  }
  throw InvalidInput("unknown site");
}

namespace {

// Position Jacobian of a point rigidly attached after `scope` joints.
Eigen::Matrix3Xd point_jacobian(const SerialChain& chain, const ChainPose& pose,
                                const Eigen::Vector3d& point, int scope) {
  Eigen::Matrix3Xd jac = Eigen::Matrix3Xd::Zero(3, chain.dof());
  for (int k = 0; k < scope; ++k) {
    const JointSpec& j = chain.joints[static_cast<std::size_t>(k)];
    jac.col(j.driver_index) +=
        j.coupling_ratio *
        pose.joint_axes_world[static_cast<std::size_t>(k)].cross(
            point - pose.joint_positions[static_cast<std::size_t>(k)]);
  }
  return jac;
}

struct PairViolation {
  int thumb_sphere;
  int finger_sphere;
  double violation_mm;       // (r_t + r_f - eps) - d, positive when violated
  Eigen::Vector3d direction; // unit, from finger sphere center toward thumb's
};

std::vector<PairViolation> violated_pairs(const SerialChain& thumb,
                                          const SphereSet& ts,
                                          const SerialChain& finger,
                                          const SphereSet& fs, double epsilon_mm,
                                          std::optional<int> exempt_finger_sphere) {
  std::vector<PairViolation> out;
  const int pulp_sphere = thumb.joint_count();
  for (std::size_t i = 0; i < ts.centers.size(); ++i) {
    for (std::size_t j = 0; j < fs.centers.size(); ++j) {
      if (exempt_finger_sphere && static_cast<int>(i) == pulp_sphere &&
          static_cast<int>(j) == *exempt_finger_sphere)
        continue;
      const Eigen::Vector3d diff = ts.centers[i] - fs.centers[j];
      const double d = diff.norm();
      const double limit = ts.radii[i] + fs.radii[j] - epsilon_mm;
      if (d < limit) {
        const Eigen::Vector3d dir =
            d > 1e-12 ? Eigen::Vector3d(diff / d) : Eigen::Vector3d::UnitZ();
        out.push_back({static_cast<int>(i), static_cast<int>(j), limit - d, dir});
      }
    }
  }
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d649bb133111ebULL;
  return x ^ (x >> 31);
}

JointVector random_configuration(const DriverBounds& bounds, std::mt19937_64& rng) {
  JointVector q(bounds.lower.size());
  for (int i = 0; i < q.size(); ++i) {
    std::uniform_real_distribution<double> dist(bounds.lower[i], bounds.upper[i]);
    q[i] = dist(rng);
  }
  return q;
}

struct IterationSetup {
  const SerialChain* thumb;
  const SerialChain* finger;
  Site site;
  DriverBounds thumb_bounds;
  DriverBounds finger_bounds;
};

// One run of the iterative scheme. With constraints disabled this is
// exactly the plain convergence algorithm.
IkResult iterate(const IterationSetup& setup, const IkSettings& settings,
                 JointVector q_t, JointVector q_f, bool with_constraints,
                 std::optional<int> exempt_finger_sphere) {
  q_t = clamp_to_bounds(q_t, setup.thumb_bounds);
  q_f = clamp_to_bounds(q_f, setup.finger_bounds);

  IkResult result;
  result.status = IkStatus::NotConverged;
  for (int iter = 0; iter <= settings.max_iters; ++iter) {
    const ChainPose pose_t = evaluate_chain(*setup.thumb, q_t);
    const ChainPose pose_f = evaluate_chain(*setup.finger, q_f);
    const Eigen::Vector3d p_t = site_pose(*setup.thumb, pose_t, Site::Pulp).translation;
    const Eigen::Vector3d p_f = site_pose(*setup.finger, pose_f, setup.site).translation;
    Eigen::Vector3d dp = p_t - p_f;
    const double residual = dp.norm();

    result.q_thumb = q_t;
    result.q_finger = q_f;
    result.residual_mm = residual;
    result.iterations = iter;

    if (residual <= settings.tol_mm) {
      if (!with_constraints) {
        result.status = IkStatus::Converged;
        return result;
      }
      const SphereSet ts = chain_spheres(*setup.thumb, pose_t);
      const SphereSet fs = chain_spheres(*setup.finger, pose_f);
      if (violated_pairs(*setup.thumb, ts, *setup.finger, fs,
                         settings.epsilon_mm, exempt_finger_sphere)
              .empty()) {
        result.status = IkStatus::Converged;
        return result;
      }
      // converged in position but penetrating: keep iterating, the
      // separation correction below pushes the chains apart
    }
    if (iter == settings.max_iters) break;

    if (residual > settings.dx_mm) dp *= settings.dx_mm / residual;

    const Eigen::Matrix3Xd jac_t = linear_jacobian(*setup.thumb, q_t, Site::Pulp);
    const Eigen::Matrix3Xd jac_f = linear_jacobian(*setup.finger, q_f, setup.site);
    JointVector dq_t = pseudoinverse(jac_t) * (-0.5 * dp);
    JointVector dq_f = pseudoinverse(jac_f) * (0.5 * dp);

    if (with_constraints) {
      const SphereSet ts = chain_spheres(*setup.thumb, pose_t);
      const SphereSet fs = chain_spheres(*setup.finger, pose_f);
      const auto violations =
          violated_pairs(*setup.thumb, ts, *setup.finger, fs,
                         settings.epsilon_mm, exempt_finger_sphere);
      for (const PairViolation& v : violations) {
        // Separate the offending sphere pair along its center line,
        // weight 10 on the violation, capped like the main step.
        const double push = std::min(10.0 * v.violation_mm, settings.dx_mm);
        const Eigen::Vector3d correction = 0.5 * push * v.direction;
        const Eigen::Matrix3Xd jac_ct = point_jacobian(
            *setup.thumb, pose_t,
            ts.centers[static_cast<std::size_t>(v.thumb_sphere)],
            ts.moved_by[static_cast<std::size_t>(v.thumb_sphere)]);
        const Eigen::Matrix3Xd jac_cf = point_jacobian(
            *setup.finger, pose_f,
            fs.centers[static_cast<std::size_t>(v.finger_sphere)],
            fs.moved_by[static_cast<std::size_t>(v.finger_sphere)]);
        dq_t += pseudoinverse(jac_ct) * correction;
        dq_f += pseudoinverse(jac_cf) * (-correction);
      }
    }

    q_t = clamp_to_bounds(q_t + dq_t, setup.thumb_bounds);
    q_f = clamp_to_bounds(q_f + dq_f, setup.finger_bounds);
  }
  return result;
}

IterationSetup make_setup(const HandModel& hand, ChainId finger, Site site) {
  hand.validate();
  if (!is_finger(finger))
    throw InvalidInput("the opposed chain must be a finger");
  if (site == Site::Pulp)
    throw InvalidInput("finger target site must be MCP, PIP, DIP or TIP");
  const SerialChain& f = hand.chain(finger);
  if (!f.has_site(site))
    throw InvalidInput(std::string("finger has no site ") + to_string(site));
  const SerialChain& t = hand.chain(ChainId::Thumb);
  return {&t, &f, site, driver_bounds(t), driver_bounds(f)};
}

void check_q0(const IterationSetup& setup, const JointVector& q0_thumb,
              const JointVector& q0_finger) {
  if (q0_thumb.size() != setup.thumb->dof() ||
      q0_finger.size() != setup.finger->dof())
    throw InvalidInput("initial joint vector size mismatch");
}

}  // namespace

JointVector mid_configuration(const SerialChain& chain) {
  const DriverBounds b = driver_bounds(chain);
  return 0.5 * (b.lower + b.upper);
}

bool collision_free(const HandModel& hand, ChainId finger,
                    const JointVector& q_thumb, const JointVector& q_finger,
                    double epsilon_mm, std::optional<Site> exempt_finger_site) {
  hand.validate();
  if (!is_finger(finger)) throw InvalidInput("expected a finger chain");
  const SerialChain& t = hand.chain(ChainId::Thumb);
  const SerialChain& f = hand.chain(finger);
  const SphereSet ts = chain_spheres(t, evaluate_chain(t, q_thumb));
  const SphereSet fs = chain_spheres(f, evaluate_chain(f, q_finger));
  std::optional<int> exempt;
  if (exempt_finger_site) exempt = sphere_index_for_site(f, *exempt_finger_site);
  return violated_pairs(t, ts, f, fs, epsilon_mm, exempt).empty();
}

IkResult solve_convergence(const HandModel& hand, ChainId finger, Site site,
                           const IkSettings& settings,
                           const JointVector& q0_thumb,
                           const JointVector& q0_finger) {
  settings.validate();
  const IterationSetup setup = make_setup(hand, finger, site);
  check_q0(setup, q0_thumb, q0_finger);
  return iterate(setup, settings, q0_thumb, q0_finger, false, std::nullopt);
}

IkResult solve_constrained(const HandModel& hand, ChainId finger, Site site,
                           const IkSettings& settings,
                           const JointVector& q0_thumb,
                           const JointVector& q0_finger) {
  settings.validate();
  const IterationSetup setup = make_setup(hand, finger, site);
  check_q0(setup, q0_thumb, q0_finger);
  const int exempt = sphere_index_for_site(*setup.finger, site);

  std::vector<std::pair<JointVector, JointVector>> starts;
  starts.reserve(static_cast<std::size_t>(settings.restarts));
  starts.emplace_back(q0_thumb, q0_finger);
  for (int s = 1; s < settings.restarts; ++s) {
    std::mt19937_64 rng(splitmix64(settings.seed + static_cast<std::uint64_t>(s)));
    JointVector qt = random_configuration(setup.thumb_bounds, rng);
    JointVector qf = random_configuration(setup.finger_bounds, rng);
    starts.emplace_back(std::move(qt), std::move(qf));
  }

  std::optional<IkResult> best_feasible;
  std::optional<IkResult> best_attempt;
  for (const auto& [qt, qf] : starts) {
    IkResult r = iterate(setup, settings, qt, qf, true, exempt);
    if (!best_attempt || r.residual_mm < best_attempt->residual_mm)
      best_attempt = r;
    if (r.status == IkStatus::Converged &&
        (!best_feasible || r.residual_mm < best_feasible->residual_mm))
      best_feasible = r;
  }
  if (best_feasible) return *best_feasible;

  // Nothing feasible: reachable when ignoring the spheres means blocked.
  bool reachable = false;
  for (const auto& [qt, qf] : starts) {
    const IkResult r = iterate(setup, settings, qt, qf, false, std::nullopt);
    if (r.status == IkStatus::Converged) {
      reachable = true;
      break;
    }
  }
  IkResult out = *best_attempt;
  out.status = reachable ? IkStatus::CollisionBlocked : IkStatus::NotConverged;
  return out;
}

}  // namespace handforge
