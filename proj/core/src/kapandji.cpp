#include "handforge/kapandji.hpp"

namespace handforge {

std::vector<KapandjiTarget> generate_targets(const HandModel& hand) {
  hand.validate();
  std::vector<KapandjiTarget> targets;
  targets.reserve(16);
  for (ChainId finger : kFingerOrder) {
    const SerialChain& chain = hand.chain(finger);
    const JointVector q = JointVector::Zero(chain.dof());
    for (Site site : kKapandjiSites) {
      // MCP/PIP/DIP site frames already sit on the palmar surface; the TIP
      // surface point is the finger pulp.
      const Site surface = site == Site::Tip ? Site::Pulp : site;
      targets.push_back({finger, site, forward_transform(chain, q, surface)});
    }
  }
  return targets;
}

KapandjiReport run_kapandji(const HandModel& hand, const IkSettings& settings) {
  settings.validate();
  const std::vector<KapandjiTarget> targets = generate_targets(hand);
  const JointVector q0_thumb = mid_configuration(hand.chain(ChainId::Thumb));

  KapandjiReport report;
  report.entries.reserve(targets.size());
  bool all = true;
  for (const KapandjiTarget& t : targets) {
    const JointVector q0_finger = mid_configuration(hand.chain(t.finger));
    IkResult r =
        solve_constrained(hand, t.finger, t.site, settings, q0_thumb, q0_finger);
    const bool reached = r.status == IkStatus::Converged;
    all = all && reached;
    report.entries.push_back({t.finger, t.site, reached, std::move(r)});
  }
  report.pass = all;
  return report;
}

}  // namespace handforge
